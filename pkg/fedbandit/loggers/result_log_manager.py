"""
Managing Result Logs.
======================
"""

import os

from . import CSVLogger, FileLogger, JsonSummaryLogger


class ResultLogManager:
    """Logs experiment tables and summaries to all attached loggers and
    keeps the manifest of every file written."""

    def __init__(self):
        self.loggers = []
        self.files = {}

    def enable_stdout(self):
        self.loggers.append(FileLogger(stdout=True))

    def add_output_csv(self, filename, table, columns=None, description=""):
        self.loggers.append(CSVLogger(filename=filename, table=table, columns=columns))
        self.files[os.path.basename(filename)] = {
            "table": table,
            "columns": columns,
            "description": description,
        }

    def add_output_summary_json(self, filename, description=""):
        self.loggers.append(JsonSummaryLogger(filename=filename))
        self.files[os.path.basename(filename)] = {"description": description}

    def log_frame(self, table, frame):
        for logger in self.loggers:
            logger.log_frame(table, frame)

    def log_summary_rows(self, rows, title):
        for logger in self.loggers:
            logger.log_summary_rows(rows, title)

    def flush(self):
        for logger in self.loggers:
            logger.flush()

    def close(self):
        for logger in self.loggers:
            logger.close()

    def write_manifest(self, filename, metrics, details=None):
        """Writes ``manifest.json`` listing every file this manager wrote and
        the meaning of every metric name."""
        manifest = JsonSummaryLogger(filename=filename)
        manifest.log_summary_rows(
            [(path, entry) for path, entry in sorted(self.files.items())], "files"
        )
        manifest.log_summary_rows(sorted(metrics.items()), "metrics")
        if details:
            manifest.log_summary_rows(list(details.items()), "experiment")
        manifest.flush()
