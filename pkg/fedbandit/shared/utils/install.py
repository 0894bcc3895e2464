import logging.config
import os
import sys


def _default_dir(env_var, fallback):
    path = os.environ.get(env_var, fallback)
    return os.path.abspath(os.path.expanduser(path))


def output_dir():
    """Default directory for result files.

    Overridden with the ``FEDBANDIT_OUTPUT_DIR`` environment variable.
    """
    return _default_dir("FEDBANDIT_OUTPUT_DIR", "outputs")


def cache_dir():
    return _default_dir("FEDBANDIT_CACHE_DIR", "~/.cache/fedbandit")


def path_in_cache(file_path):
    os.makedirs(cache_dir(), exist_ok=True)
    return os.path.join(cache_dir(), file_path)


if sys.stdout.isatty():
    LOG_STRING = "\033[34;1mfedbandit\033[0m"
else:
    LOG_STRING = "fedbandit"
logger = logging.getLogger(__name__)
logging.config.dictConfig(
    {
        "version": 1,
        "disable_existing_loggers": False,
        "loggers": {__name__: {"level": logging.INFO}},
    }
)
formatter = logging.Formatter(f"{LOG_STRING}: %(message)s")
stream_handler = logging.StreamHandler()
stream_handler.setFormatter(formatter)
logger.addHandler(stream_handler)
logger.propagate = False
