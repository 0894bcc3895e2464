"""
Result Summaries to file
=========================
"""

import os
import sys

import terminaltables

from fedbandit.shared.utils import logger

from .logger import Logger


class FileLogger(Logger):
    """Logs summary tables to a file, or `stdout`."""

    def __init__(self, filename="", stdout=False):
        self.stdout = stdout
        self.filename = filename
        if stdout:
            self.fout = sys.stdout
        elif isinstance(filename, str):
            directory = os.path.dirname(filename)
            directory = directory if directory else "."
            if not os.path.exists(directory):
                os.makedirs(directory)
            self.fout = open(filename, "w")
            logger.info(f"Logging to text file at path {filename}")
        else:
            self.fout = filename

    def log_summary_rows(self, rows, title):
        if self.stdout:
            table_rows = [[title, ""]] + [[str(k), _fmt(v)] for k, v in rows]
            table = terminaltables.AsciiTable(table_rows)
            self.fout.write(table.table + "\n")
        else:
            for row in rows:
                self.fout.write(f"{row[0]} {_fmt(row[1])}\n")

    def flush(self):
        self.fout.flush()

    def close(self):
        if not self.stdout:
            self.fout.close()


def _fmt(value):
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)
