"""
Result Tables to CSV
=====================
"""

import os

import pandas as pd

from fedbandit.shared.utils import logger

from .logger import Logger

FLOAT_FORMAT = "%.17g"


def write_csv(frame, filename):
    """Comma-separated, header row, LF line endings, floats with 17
    significant digits."""
    directory = os.path.dirname(filename)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(filename, "w", newline="\n", encoding="utf8") as f:
        frame.to_csv(f, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


class CSVLogger(Logger):
    """Collects the frames of one named table and writes them to a CSV."""

    def __init__(self, filename="results.csv", table=None, columns=None):
        logger.info(f"Logging to CSV at path {filename}")
        self.filename = filename
        self.table = table
        self.columns = columns
        self.frames = []
        self._flushed = True

    def log_frame(self, table, frame):
        if self.table is not None and table != self.table:
            return
        self.frames.append(frame)
        self._flushed = False

    def flush(self):
        if self.frames:
            self.df = pd.concat(self.frames, ignore_index=True)
        else:
            self.df = pd.DataFrame(columns=self.columns)
        if self.columns is not None:
            self.df = self.df[self.columns]
        write_csv(self.df, self.filename)
        self._flushed = True

    def __del__(self):
        if not self._flushed:
            logger.warning("CSVLogger exiting without calling flush().")
