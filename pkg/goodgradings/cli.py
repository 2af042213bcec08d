"""goodgradings CLI entry point."""

from __future__ import annotations

import logging
import re
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any, NoReturn, TypeVar

import click

from goodgradings import __version__
from goodgradings.config import default_map, read_config
from goodgradings.errors import InputError
from goodgradings.exporter import ResultExporter
from goodgradings.jobs import failures, run
from goodgradings.models import JobSpec, ResultDocument
from goodgradings.pyramids import CLASSICAL_TYPES
from goodgradings.restrict import DEFAULT_BUDGET
from goodgradings.rootsys import CARTAN_TYPES

F = TypeVar("F", bound=Callable[..., Any])

_FIXED_RANK = {"F": 4, "G": 2}
_TYPE_PATTERN = re.compile(r"^\s*([A-Ga-g])\s*(\d*)\s*$")


def _int_list(ctx: click.Context, param: click.Parameter, value: str | None) -> tuple[int, ...]:
    """Parse ``3,4,5`` (or the empty string) into a tuple of ints."""
    if value is None:
        return ()
    try:
        return tuple(int(x) for x in value.replace(" ", "").split(",") if x)
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {value!r}") from None


def _split_type(text: str, rank: int | None) -> tuple[str, int]:
    """``E7`` or ``E`` with ``--rank 7`` into ("E", 7); F and G default their rank."""
    match = _TYPE_PATTERN.match(text)
    if match is None:
        raise click.BadParameter(
            f"unknown Cartan type '{text}'; use one of {', '.join(CARTAN_TYPES)}", param_hint="--type"
        )
    letter, digits = match.group(1).upper(), match.group(2)
    if digits:
        if rank is not None and rank != int(digits):
            raise click.BadParameter(f"{text} disagrees with --rank {rank}", param_hint="--rank")
        return letter, int(digits)
    if rank is not None:
        return letter, rank
    if letter in _FIXED_RANK:
        return letter, _FIXED_RANK[letter]
    raise click.BadParameter(f"type {letter} needs --rank", param_hint="--rank")


def _fail(message: str) -> NoReturn:
    click.echo(f"  ERROR: {message}", err=True)
    sys.exit(1)


# ── Shared options ─────────────────────────────────────────────────────────────


def _root_options(f: F) -> F:
    options = [
        click.option(
            "--type",
            "cartan_type",
            required=True,
            metavar="TYPE",
            help="Cartan type A-G, optionally with its rank (E7).",
        ),
        click.option("--rank", type=click.IntRange(1), default=None, help="Rank; fixed for F and G."),
        click.option(
            "--order",
            callback=_int_list,
            default=None,
            metavar="LIST",
            help="User label of each node in display order (E: 1,3,4,...,r then 2).",
        ),
        click.option(
            "--J",
            "subset",
            callback=_int_list,
            default="",
            metavar="LIST",
            help="Node subset J in user labels, e.g. 3,4,5,6,7. Empty for J = ∅.",
        ),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def _run_options(f: F) -> F:
    options = [
        click.option(
            "--budget",
            type=click.IntRange(1),
            default=DEFAULT_BUDGET,
            show_default=True,
            metavar="N",
            help="Step budget for every enumeration.",
        ),
        click.option(
            "--json", "json_path", default=None, metavar="OUT", help="Write the result document as JSON."
        ),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def _grading_options(f: F) -> F:
    options = [
        click.option("--integral", is_flag=True, help="Enumerate integral good gradings and their classes."),
        click.option("--graph", is_flag=True, help="Build the adjacency graph of integral gradings."),
        click.option(
            "--samples",
            type=click.IntRange(0),
            default=0,
            show_default=True,
            metavar="N",
            help="Check N seeded rational points against the direct good grading test.",
        ),
        click.option("--seed", type=int, default=0, show_default=True, metavar="N", help="Sampling seed."),
        click.option("--svg", "svg_path", default=None, metavar="OUT", help="Draw a 2-dimensional polytope."),
        click.option("--dot", "dot_path", default=None, metavar="OUT", help="Write the adjacency graph."),
        click.option(
            "--hyperplanes/--no-hyperplanes",
            default=True,
            show_default=True,
            help="Draw the affine hyperplanes in SVG output.",
        ),
    ]
    for option in reversed(options):
        f = option(f)
    return f


# ── Output ─────────────────────────────────────────────────────────────────────


def _fractions(values: Sequence[Any]) -> str:
    return ", ".join(str(v) for v in values)


def _matrix(rows: Sequence[Sequence[Any]]) -> str:
    return "[" + ", ".join("[" + _fractions(r) + "]" for r in rows) + "]"


def _summary(document: ResultDocument) -> list[str]:
    r = document.results
    mode = document.job.mode
    lines: list[str] = []
    if mode in ("restrict", "arrange") and "system" in r:
        lines.append(f"      System       : {r['system']}  J = {{{_fractions(r['J'])}}} (Bourbaki)")
    if mode == "restrict" and "restricted_roots" in r:
        lines.append(f"      Positive Φ^J : {len(r['restricted_roots'])}   θ^J = ({_fractions(r['highest'])})")
        lines.append(f"      Cartan       : {_matrix(r['cartan'])}")
    if "characteristic_polynomial" in r:
        lines.append(f"      χ(t)         : {_fractions(r['characteristic_polynomial'])} (highest degree first)")
    if "exponents" in r:
        lines.append(
            f"      Chambers {r['chambers']}  |  W^J {r['weyl_order']}  |  𝒦_J {r['levi_size']}"
            f"  |  h^J {r['h']}  |  exponents {_fractions(r['exponents'])}"
        )
    if mode == "grading" and "h_text" in r:
        lines.append(f"      h            : {r['h_text']}")
    if mode == "pyramid" and "pyramid" in r:
        lines.extend(f"      {row}" for row in r["pyramid"])
    if "polytope" in r:
        poly = r["polytope"]
        kept = poly["irredundant"]
        lines.append(
            f"      Polytope     : dim {poly['dim'] - len(poly['equalities'])}, "
            f"{len(poly['bounds'])} weights, {len(kept) if kept is not None else '?'} irredundant"
        )
    if "components" in r and mode in ("grading", "pyramid"):
        c = r["components"]
        lines.append(
            f"      |W_e| {c['weyl_order']}  |  |W_e°| {c['identity_component_order']}"
            f"  |  |Z_e| {c['component_order']}"
        )
    for i, cls in enumerate(r.get("classes", ())):
        point = "(" + _fractions(cls["points"][0]) + ")"
        lines.append(f"        {i:>3}  {cls['text']:<16} {len(cls['points'])} point(s), e.g. {point}")
    if "graph" in r:
        lines.append(f"      Graph        : {len(r['graph']['nodes'])} nodes, {len(r['graph']['edges'])} edges")
    if "alcoves" in r:
        lines.append(f"      Alcoves      : {r['alcoves']}")
    if "samples" in r:
        s = r["samples"]
        lines.append(f"      Samples      : {s['count']} checked, {s['inside']} inside, {len(s['mismatches'])} mismatches")
    for row in r.get("rows", ()):
        lines.append(f"        {row['levi']:<10} {row['status']}")
    if "total" in r:
        lines.append(f"      Rows passed  : {r['passed']}/{r['total']}")
    for item in r.get("adjacency", ()):
        lines.append(f"        graph {item['levi']:<10} {item['status']}")
    if mode == "tables":
        for item in r.get("components", ()):
            lines.append(f"        Z_e {item['label']:<10} {item['status']}")
    return lines


def _write(document: ResultDocument, outputs: Sequence[tuple[str, str | None]], hyperplanes: bool) -> None:
    for output_format, path in outputs:
        if path is None:
            continue
        try:
            ResultExporter(output_format, hyperplanes).export(document, path)
        except InputError as exc:
            _fail(f"Could not write {output_format.upper()} — {exc}")
        except OSError as exc:
            _fail(f"Could not write '{path}' — {exc}")
        click.echo(f"      Wrote {output_format.upper():<4} → '{path}'")


def _execute(
    spec: JobSpec,
    headline: str,
    json_path: str | None,
    svg_path: str | None = None,
    dot_path: str | None = None,
    hyperplanes: bool = True,
) -> None:
    click.echo(f"goodgradings v{__version__}")
    click.echo(f"  {headline}")
    click.echo(f"  Budget : {spec.budget}  |  Seed: {spec.seed}")
    click.echo()

    try:
        document = run(spec, click.echo)
    except InputError as exc:
        _fail(str(exc))

    for line in _summary(document):
        click.echo(line)
    for note in document.provenance.fallbacks:
        click.echo(f"      Note: {note}")
    if spec.mode == "tables" and failures(document):
        click.echo(f"  WARNING: {failures(document)} check(s) did not pass.", err=True)

    if document.provenance.budget_exceeded:
        click.echo(
            f"  WARNING: Budget of {spec.budget} exceeded after {document.provenance.partial} states; "
            "results are partial.",
            err=True,
        )
        _write(document, [("json", json_path)], hyperplanes)
        sys.exit(2)

    _write(document, [("json", json_path), ("svg", svg_path), ("dot", dot_path)], hyperplanes)
    click.echo()
    click.echo("Done!")


# ── CLI group ──────────────────────────────────────────────────────────────────


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(version=__version__, prog_name="goodgradings")
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False, readable=True),
    default=None,
    metavar="FILE",
    help="Flat key = value file of option defaults; command-line flags win.",
)
@click.option("-v", "--verbose", count=True, help="Log fallbacks (-v) or every step (-vv).")
@click.pass_context
def cli(ctx: click.Context, config_path: str | None, verbose: int) -> None:
    """Good gradings of nilpotent elements, restricted root systems and Dynkin pyramids."""
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    if config_path is not None:
        try:
            ctx.default_map = default_map(read_config(config_path), cli.commands.values())
        except InputError as exc:
            _fail(str(exc))


# ── restrict subcommand ────────────────────────────────────────────────────────


@cli.command()
@_root_options
@_run_options
def restrict(
    cartan_type: str,
    rank: int | None,
    order: tuple[int, ...],
    subset: tuple[int, ...],
    budget: int,
    json_path: str | None,
) -> None:
    """
    Restricted root system Φ^J: roots, Cartan matrix, W^J, 𝒦_J and h^J.

    \b
    Examples:
      goodgradings restrict --type G2 --J ""
      goodgradings restrict --type E --rank 7 --order 3,4,2,5,6,7,1 --J 3,4,5,6,7
    """
    letter, n = _split_type(cartan_type, rank)
    spec = JobSpec("restrict", letter, n, J=subset, order=order, budget=budget)
    _execute(spec, f"System : {letter}{n}  |  J: {{{_fractions(subset)}}}", json_path)


# ── arrange subcommand ─────────────────────────────────────────────────────────


@cli.command()
@_root_options
@_run_options
def arrange(
    cartan_type: str,
    rank: int | None,
    order: tuple[int, ...],
    subset: tuple[int, ...],
    budget: int,
    json_path: str | None,
) -> None:
    """
    Arrangement 𝒜^J: characteristic polynomial, exponents, chambers and h^J.

    \b
    Examples:
      goodgradings arrange --type F --rank 4 --J 2,3
    """
    letter, n = _split_type(cartan_type, rank)
    spec = JobSpec("arrange", letter, n, J=subset, order=order, budget=budget)
    _execute(spec, f"System : {letter}{n}  |  J: {{{_fractions(subset)}}}", json_path)


# ── grading subcommand ─────────────────────────────────────────────────────────


@cli.command()
@_root_options
@click.option(
    "--labels",
    callback=_int_list,
    default=None,
    metavar="LIST",
    help="Labels (0 or 2) on the nodes of J, in the order of --J. Defaults to 2 everywhere.",
)
@_grading_options
@_run_options
def grading(
    cartan_type: str,
    rank: int | None,
    order: tuple[int, ...],
    subset: tuple[int, ...],
    labels: tuple[int, ...],
    integral: bool,
    graph: bool,
    samples: int,
    seed: int,
    svg_path: str | None,
    dot_path: str | None,
    hyperplanes: bool,
    budget: int,
    json_path: str | None,
) -> None:
    """
    Good grading polytope of the nilpotent given by J and its labels.

    \b
    Examples:
      goodgradings grading --type E --rank 6 --J 1,3,4 --integral --graph --dot a3.dot
      goodgradings grading --type E7 --order 3,4,2,5,6,7,1 --J 3,4,5,6,7 --svg eg.svg
    """
    letter, n = _split_type(cartan_type, rank)
    spec = JobSpec(
        "grading",
        letter,
        n,
        J=subset,
        labels=labels,
        order=order,
        integral=integral or graph,
        graph=graph,
        samples=samples,
        budget=budget,
        seed=seed,
    )
    _execute(
        spec,
        f"System : {letter}{n}  |  J: {{{_fractions(subset)}}}  |  labels: {_fractions(labels) or 'all 2'}",
        json_path,
        svg_path,
        dot_path,
        hyperplanes,
    )


# ── pyramid subcommand ─────────────────────────────────────────────────────────


@cli.command()
@click.option(
    "--type",
    "cartan_type",
    type=click.Choice(list(CLASSICAL_TYPES), case_sensitive=False),
    required=True,
    help="Classical Lie algebra of the natural module.",
)
@click.option(
    "--partition",
    callback=_int_list,
    required=True,
    metavar="LIST",
    help="Jordan type of e, e.g. 3,3,2.",
)
@_grading_options
@_run_options
def pyramid(
    cartan_type: str,
    partition: tuple[int, ...],
    integral: bool,
    graph: bool,
    samples: int,
    seed: int,
    svg_path: str | None,
    dot_path: str | None,
    hyperplanes: bool,
    budget: int,
    json_path: str | None,
) -> None:
    """
    Dynkin pyramid, good grading polytope and integral gradings of a classical nilpotent.

    \b
    Examples:
      goodgradings pyramid --type sl --partition 3,3,2 --integral --svg sl8.svg
      goodgradings pyramid --type sp --partition 2,2,1,1 --integral --samples 50 --seed 7
    """
    kind = cartan_type.lower()
    spec = JobSpec(
        "pyramid",
        kind,
        partition=partition,
        integral=integral or graph,
        graph=graph,
        samples=samples,
        budget=budget,
        seed=seed,
    )
    _execute(
        spec,
        f"Algebra: {kind}_{sum(partition)}  |  partition: {_fractions(partition)}",
        json_path,
        svg_path,
        dot_path,
        hyperplanes,
    )


# ── tables subcommand ──────────────────────────────────────────────────────────


@cli.command()
@click.option("--type", "cartan_type", required=True, metavar="TYPE", help="G, F or E, optionally with rank.")
@click.option("--rank", type=click.IntRange(1), default=None, help="Rank; fixed for F and G.")
@click.option(
    "--J",
    "subset",
    callback=_int_list,
    default="",
    metavar="LIST",
    help="Only the bundled row with this Bourbaki subset.",
)
@click.option("--graph", is_flag=True, help="Also check the bundled E6 adjacency graphs.")
@_run_options
def tables(
    cartan_type: str,
    rank: int | None,
    subset: tuple[int, ...],
    graph: bool,
    budget: int,
    json_path: str | None,
) -> None:
    """
    Reproduce the bundled table rows and report pass/fail per row.

    \b
    Examples:
      goodgradings tables --type G2
      goodgradings tables --type E --rank 7 --J 1,3,5,6,7
    """
    letter, n = _split_type(cartan_type, rank)
    spec = JobSpec("tables", letter, n, J=subset, graph=graph, budget=budget)
    _execute(spec, f"Tables : {letter}{n}", json_path)


# ── render subcommand ──────────────────────────────────────────────────────────


@cli.command()
@click.argument("result_file", type=click.Path(exists=True, dir_okay=False, readable=True))
@click.option("--svg", "svg_path", default=None, metavar="OUT", help="Draw the 2-dimensional polytope.")
@click.option("--dot", "dot_path", default=None, metavar="OUT", help="Write the adjacency graph.")
@click.option(
    "--hyperplanes/--no-hyperplanes",
    default=True,
    show_default=True,
    help="Draw the affine hyperplanes in SVG output.",
)
def render(result_file: str, svg_path: str | None, dot_path: str | None, hyperplanes: bool) -> None:
    """
    Render a result document written with --json as SVG and/or DOT.

    RESULT_FILE is the path to an existing .json result document.

    \b
    Examples:
      goodgradings render result.json --svg out.svg --dot out.dot
    """
    click.echo(f"goodgradings v{__version__}")
    click.echo(f"  Result : {result_file}")
    click.echo()
    if svg_path is None and dot_path is None:
        _fail("Nothing to do; pass --svg and/or --dot.")

    click.echo("[1/2] Reading result document...")
    try:
        document = ResultDocument.from_json(Path(result_file).read_text(encoding="utf-8"))
    except InputError as exc:
        _fail(str(exc))

    click.echo("[2/2] Rendering...")
    _write(document, [("svg", svg_path), ("dot", dot_path)], hyperplanes)
    click.echo()
    click.echo("Done!")


# ── Entry point ────────────────────────────────────────────────────────────────


def main(argv: Sequence[str] | None = None) -> None:
    """Console entry point: usage errors exit 1, budget overruns exit 2."""
    try:
        cli.main(args=list(argv) if argv is not None else None, prog_name="goodgradings", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        sys.exit(1)
    except InputError as exc:
        click.echo(f"  ERROR: {exc}", err=True)
        sys.exit(1)
    except click.Abort:
        click.echo("Aborted!", err=True)
        sys.exit(1)
