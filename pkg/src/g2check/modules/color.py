"""
ANSI colors for check statuses and the banner.
"""
import os

from enum import Enum

RESET = "\033[0;0m"


class Color(Enum):
    GREEN = "\033[1;32m"
    RED = "\033[1;31m"
    CYAN = "\033[1;36m"


def paint(message: str, selected: Color) -> str:
    # https://no-color.org
    if os.getenv("NO_COLOR"):
        return message
    return f"{selected.value}{message}{RESET}"


def status(passed: bool) -> str:
    return paint("PASS", Color.GREEN) if passed else paint("FAIL", Color.RED)
