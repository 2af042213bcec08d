"""Unit tests for ResultExporter."""

from pathlib import Path

import pytest

from goodgradings.errors import InputError
from goodgradings.exporter import ResultExporter
from goodgradings.models import JobSpec, ResultDocument


def _document() -> ResultDocument:
    return ResultDocument(JobSpec("arrange", "G", 2), {"chambers": 12})


def test_unsupported_format_is_rejected() -> None:
    with pytest.raises(ValueError, match="Unsupported output format 'png'"):
        ResultExporter("png")


def test_format_is_normalized() -> None:
    assert ResultExporter(" JSON ").output_format == "json"


def test_export_writes_the_file_and_no_temporaries(tmp_path: Path) -> None:
    target = tmp_path / "result.json"
    ResultExporter("json").export(_document(), target)
    assert '"chambers": 12' in target.read_text(encoding="utf-8")
    assert [p.name for p in tmp_path.iterdir()] == ["result.json"]


def test_export_replaces_an_existing_file(tmp_path: Path) -> None:
    target = tmp_path / "result.json"
    target.write_text("old", encoding="utf-8")
    ResultExporter("json").export(_document(), target)
    assert target.read_text(encoding="utf-8").startswith("{")


def test_failed_render_leaves_nothing_behind(tmp_path: Path) -> None:
    target = tmp_path / "graph.dot"
    with pytest.raises(InputError):
        ResultExporter("dot").export(_document(), target)
    assert list(tmp_path.iterdir()) == []
