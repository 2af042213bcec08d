"""Unit tests for flat config files and their default maps."""

from pathlib import Path

import pytest

from goodgradings.cli import cli
from goodgradings.config import default_map, read_config
from goodgradings.errors import InputError


def _write(tmp_path: Path, text: str) -> Path:
    path = tmp_path / "goodgradings.cfg"
    path.write_text(text, encoding="utf-8")
    return path


def test_comments_and_blank_lines_are_skipped(tmp_path: Path) -> None:
    path = _write(tmp_path, "# E7 example\n\ntype = E7\nJ = 3,4,5,6,7  # Levi A3+A2\nbudget=5000\n")
    assert read_config(path) == {"type": "E7", "J": "3,4,5,6,7", "budget": "5000"}


def test_missing_file_is_an_input_error(tmp_path: Path) -> None:
    with pytest.raises(InputError, match="cannot read"):
        read_config(tmp_path / "absent.cfg")


def test_repeated_key_is_an_input_error(tmp_path: Path) -> None:
    with pytest.raises(InputError, match="malformed"):
        read_config(_write(tmp_path, "type = G2\ntype = F4\n"))


def test_default_map_targets_every_command_with_the_option() -> None:
    mapping = default_map({"type": "G2", "J": "2", "samples": "4"}, cli.commands.values())
    assert mapping["restrict"] == {"cartan_type": "G2", "subset": "2"}
    assert mapping["grading"] == {"cartan_type": "G2", "subset": "2", "samples": "4"}
    assert mapping["render"] == {}


def test_unknown_key_is_rejected() -> None:
    with pytest.raises(InputError, match="unknown config key 'colour'"):
        default_map({"colour": "red"}, cli.commands.values())
