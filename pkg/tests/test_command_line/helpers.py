import shlex
import subprocess


def run_command_and_get_result(command):
    """Runs a command in the console and gets the result.

    The result carries ``stdout``, ``stderr`` (both bytes) and
    ``returncode``.
    """
    from subprocess import PIPE

    return subprocess.run(shlex.split(command), stdout=PIPE, stderr=PIPE)


def last_error_line(result):
    """The final stderr line, where a failing command reports ``error[CODE]``."""
    lines = result.stderr.decode().strip().splitlines()
    return lines[-1] if lines else ""
