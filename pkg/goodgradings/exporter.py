"""ResultExporter: writes a result document as JSON, DOT or SVG."""

from __future__ import annotations

import os
import tempfile
from pathlib import Path
from typing import Final

from goodgradings.models import ResultDocument
from goodgradings.renderers import DotRenderer, JsonRenderer, ResultRenderer, SvgRenderer

SUPPORTED_FORMATS: Final[set[str]] = {"json", "dot", "svg"}


class ResultExporter:
    """
    Render a result document through a pluggable renderer.

    Supported formats:
    - ``json``: the full document, fractions as ``"num/den"`` strings.
    - ``dot``: the adjacency graph of integral good gradings.
    - ``svg``: a drawing of a 2-dimensional good grading polytope.
    """

    def __init__(self, output_format: str = "json", hyperplanes: bool = True) -> None:
        normalized = output_format.strip().lower()
        if normalized not in SUPPORTED_FORMATS:
            supported = ", ".join(sorted(SUPPORTED_FORMATS))
            raise ValueError(f"Unsupported output format '{output_format}'. Use one of: {supported}.")
        self.output_format = normalized
        self.renderer = self._build_renderer(normalized, hyperplanes)

    def _build_renderer(self, output_format: str, hyperplanes: bool) -> ResultRenderer:
        if output_format == "json":
            return JsonRenderer()
        if output_format == "dot":
            return DotRenderer()
        return SvgRenderer(hyperplanes)

    def render(self, document: ResultDocument) -> str:
        return self.renderer.render(document)

    def export(self, document: ResultDocument, output_path: str | Path) -> None:
        """
        Render ``document`` and replace ``output_path`` with the result in one step.

        Raises:
            InputError: If the document lacks what the format draws.
            OSError: If the output file cannot be written.
        """
        content = self.render(document)
        target = Path(output_path)
        fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(content)
            os.replace(tmp, target)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
