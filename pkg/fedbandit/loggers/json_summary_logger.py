"""
Result Summaries to JSON
=========================
"""

import json
import os

import numpy as np

from fedbandit.shared.utils import logger

from .logger import Logger


def _jsonable(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


class JsonSummaryLogger(Logger):
    def __init__(self, filename="summary.json"):
        logger.info(f"Logging Summary to JSON at path {filename}")
        self.filename = filename
        self.json_dictionary = {}
        self._flushed = True

    def log_summary_rows(self, rows, title):
        section = self.json_dictionary.setdefault(title, {})
        for metric, summary in rows:
            section[metric] = _jsonable(summary)
        self._flushed = False

    def flush(self):
        directory = os.path.dirname(self.filename)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(self.filename, "w", newline="\n", encoding="utf8") as f:
            json.dump(self.json_dictionary, f, indent=4)
            f.write("\n")

        self._flushed = True
