"""
Colored status lines for the command-line tools. Status goes to stderr so
that stdout carries only pipe-able results.
"""

import sys


# Colors for output
class Colors:
    RED = '\033[0;31m'
    GREEN = '\033[0;32m'
    YELLOW = '\033[1;33m'
    BLUE = '\033[0;34m'
    NC = '\033[0m'  # No Color


def _emit(color: str, tag: str, message: str):
    stream = sys.stderr
    if stream.isatty():
        print(f"{color}[{tag}]{Colors.NC} {message}", file=stream)
    else:
        print(f"[{tag}] {message}", file=stream)


def print_status(message: str):
    _emit(Colors.BLUE, "INFO", message)


def print_success(message: str):
    _emit(Colors.GREEN, "SUCCESS", message)


def print_warning(message: str):
    _emit(Colors.YELLOW, "WARNING", message)


def print_error(message: str):
    _emit(Colors.RED, "ERROR", message)
