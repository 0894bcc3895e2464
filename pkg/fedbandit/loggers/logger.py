"""
Result Logger Wrapper
======================
"""


from abc import ABC


class Logger(ABC):
    """An abstract class for different methods of logging experiment results."""

    def __init__(self):
        pass

    def log_frame(self, table, frame):
        pass

    def log_summary_rows(self, rows, title):
        pass

    def flush(self):
        pass

    def close(self):
        pass
