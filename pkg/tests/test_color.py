import os

from unittest import mock

from g2check.modules.color import RESET, Color, paint, status


def test_paint() -> None:
    with mock.patch.dict(os.environ, {}, clear=True):
        assert paint("ok", Color.GREEN) == f"{Color.GREEN.value}ok{RESET}"
        assert status(False) == f"{Color.RED.value}FAIL{RESET}"


def test_no_color() -> None:
    with mock.patch.dict(os.environ, {"NO_COLOR": "1"}):
        assert paint("banner", Color.CYAN) == "banner"
        assert status(True) == "PASS"
