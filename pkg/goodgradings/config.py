"""Flat ``key = value`` config files mapped onto click's ``default_map``."""

from __future__ import annotations

import configparser
from collections.abc import Iterable, Mapping
from pathlib import Path

import click

from goodgradings.errors import InputError

_SECTION = "goodgradings"


class _CaseSensitiveParser(configparser.ConfigParser):
    def optionxform(self, optionstr: str) -> str:
        return optionstr


def read_config(path: str | Path) -> dict[str, str]:
    """
    Read a flat config file.

    Blank lines and ``#`` comments are skipped; keys keep their case so ``J``
    stays distinct from any lower-case key.

    Raises:
        InputError: If the file cannot be read, repeats a key or is not ``key = value`` lines.
    """
    parser = _CaseSensitiveParser(
        interpolation=None, comment_prefixes=("#",), inline_comment_prefixes=("#",)
    )
    try:
        text = Path(path).read_text(encoding="utf-8")
        parser.read_string(f"[{_SECTION}]\n{text}", source=str(path))
    except OSError as exc:
        raise InputError(f"cannot read config file {path}: {exc}") from exc
    except configparser.Error as exc:
        raise InputError(f"malformed config file {path}: {exc.message}") from exc
    return {key: value.strip() for key, value in parser.items(_SECTION)}


def _option_names(command: click.Command) -> dict[str, str]:
    """Option spelling without dashes (``J``, ``budget``) to click parameter name."""
    out: dict[str, str] = {}
    for param in command.params:
        if not isinstance(param, click.Option) or param.name is None:
            continue
        for opt in param.opts:
            if opt.startswith("--"):
                out[opt[2:]] = param.name
    return out


def default_map(values: Mapping[str, str], commands: Iterable[click.Command]) -> dict[str, dict[str, str]]:
    """
    Per-subcommand defaults for every subcommand that declares a matching option.

    Raises:
        InputError: If a key matches no option of any subcommand.
    """
    commands = list(commands)
    names = {cmd.name: _option_names(cmd) for cmd in commands if cmd.name is not None}
    known = {key for options in names.values() for key in options}
    unknown = sorted(set(values) - known)
    if unknown:
        raise InputError(f"unknown config key '{unknown[0]}'")
    return {
        cmd: {options[key]: value for key, value in values.items() if key in options}
        for cmd, options in names.items()
    }
