"""Run one JobSpec end to end and collect its results into a ResultDocument.

Each mode fills a results dict step by step, so a BudgetExceeded partway
through still leaves everything computed before it in the document.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import Any

import networkx as nx

from goodgradings.arrange import (
    Arrangement,
    ArrangementStats,
    alcove_count,
    char_poly,
    chamber_count,
    coxeter_h,
    exponents,
    sommers_check,
)
from goodgradings.errors import BudgetExceeded, InputError
from goodgradings.exact import QVector
from goodgradings.fixtures import COMPONENT_ORDERS, E6_ADJACENCY, table_rows
from goodgradings.grading import (
    GradingCase,
    GoodGradingPolytope,
    NilpotentDatum,
    RestrictedAction,
    adjacency_graph,
    component_data,
    exceptional_case,
    format_point,
    grading_oracle,
    integral_points,
    is_good,
    restricted_name,
    sample_points,
    solve_h,
    sl2_multiplicities,
)
from goodgradings.models import JobSpec, Provenance, ResultDocument, graph_payload, polytope_payload
from goodgradings.pyramids import (
    ClassicalNilpotent,
    Partition,
    classical_rank_report,
    component_orders,
    coordinate_bounds,
    restricted_data,
)
from goodgradings.restrict import (
    LeviClass,
    RestrictedRootSystem,
    RestrictedWeylGroup,
    base_from_regular,
    levi_class,
    restrict,
    restricted_cartan,
    restricted_weyl,
    verify_closure_properties,
)
from goodgradings.rootsys import NodeOrder, RootSystem, build, format_labels

logger = logging.getLogger(__name__)

Echo = Callable[[str], None]


@dataclass
class Progress:
    """Numbered step lines in the ``[1/3] Doing something...`` style."""

    total: int
    echo: Echo
    done: int = 0

    def step(self, text: str) -> None:
        self.done += 1
        self.echo(f"[{self.done}/{self.total}] {text}...")


@dataclass
class _Run:
    spec: JobSpec
    progress: Progress
    results: dict[str, Any] = field(default_factory=dict)
    fallbacks: list[str] = field(default_factory=list)


def run(spec: JobSpec, echo: Echo | None = None) -> ResultDocument:
    """
    Compute everything ``spec`` asks for.

    Budget overruns are not raised: the document comes back with
    ``provenance.budget_exceeded`` set and the results gathered so far.

    Raises:
        InputError: If the job names an invalid system, subset or partition.
    """
    modes: dict[str, tuple[int, Callable[[_Run], None]]] = {
        "restrict": (3, _restrict),
        "arrange": (3, _arrange),
        "grading": (4, _grading),
        "pyramid": (4, _pyramid),
        "tables": (2, _tables),
    }
    steps, body = modes[spec.mode]
    state = _Run(spec, Progress(steps, echo or (lambda _: None)))
    try:
        body(state)
    except BudgetExceeded as exc:
        logger.warning("budget exceeded: %s", exc)
        return ResultDocument(spec, state.results, Provenance(True, exc.partial, tuple(state.fallbacks)))
    return ResultDocument(spec, state.results, Provenance(False, None, tuple(state.fallbacks)))


# ── Shared pieces ──────────────────────────────────────────────────────────────


def _system(spec: JobSpec) -> tuple[RootSystem, NodeOrder]:
    if spec.rank is None:
        raise InputError(f"type {spec.cartan_type} needs a rank")
    rs = build(spec.cartan_type, spec.rank)
    return rs, NodeOrder.parse(rs, spec.order or None)


def _subset(spec: JobSpec, rs: RootSystem, order: NodeOrder) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """J as sorted Bourbaki indices, with the labels carried along."""
    nodes = order.nodes(spec.J)
    if len(set(nodes)) != len(nodes):
        raise InputError("J lists a node twice")
    labels = spec.labels or (2,) * len(nodes)
    if len(labels) != len(nodes):
        raise InputError(f"{len(labels)} labels given for {len(nodes)} nodes of J")
    pairs = sorted(zip(nodes, labels))
    return tuple(k for k, _ in pairs), tuple(x for _, x in pairs)


def _one_based(nodes: Sequence[int]) -> list[int]:
    return [k + 1 for k in nodes]


def arrangement_stats(
    rrs: RestrictedRootSystem,
    budget: int,
    fallbacks: list[str] | None = None,
    levi: LeviClass | None = None,
    group: RestrictedWeylGroup | None = None,
) -> ArrangementStats:
    """|𝒜^J|, |𝒞^J|, exponents, h^J, |𝒦_J| and |W^J|, checked against each other."""
    rs, J = rrs.rs, rrs.J
    notes: list[str] = [] if fallbacks is None else fallbacks
    arr = Arrangement.of_restricted(rrs)
    if levi is None:
        levi = levi_class(rs, J, budget=budget)
        _note_levi(notes, levi)
    if group is None:
        group = restricted_weyl(rrs, budget=budget)
        _note_weyl(notes, group)
    h, best = coxeter_h(rs, J, levi)
    stats = ArrangementStats(
        len(arr.normals),
        chamber_count(arr, budget),
        tuple(exponents(arr, budget)),
        h,
        best,
        len(levi.members),
        group.order,
    )
    stats.check()
    return stats


def _note_levi(fallbacks: list[str], levi: LeviClass) -> None:
    if levi.method == "exhaustive":
        fallbacks.append("Levi class found by exhaustive search of W")


def _note_weyl(fallbacks: list[str], group: RestrictedWeylGroup) -> None:
    if group.method == "chambers":
        fallbacks.append("restricted Weyl group read off chamber lifts")


def _stats_payload(stats: ArrangementStats) -> dict[str, Any]:
    return {
        "hyperplanes": stats.hyperplanes,
        "chambers": stats.chambers,
        "exponents": list(stats.exponents),
        "h": stats.h,
        "h_subset": _one_based(stats.h_subset),
        "levi_size": stats.levi_size,
        "weyl_order": stats.weyl_order,
    }


def _restricted_roots(rrs: RestrictedRootSystem) -> list[dict[str, Any]]:
    return [
        {"name": restricted_name(rrs, a), "coefficients": list(rrs.vectors[a])}
        for a in rrs.positive()
    ]


# ── restrict / arrange ─────────────────────────────────────────────────────────


def _restrict(state: _Run) -> None:
    spec, out = state.spec, state.results
    state.progress.step("Building restricted root system")
    rs, order = _system(spec)
    J, _ = _subset(spec, rs, order)
    rrs = restrict(rs, J)
    verify_closure_properties(rrs)
    base = base_from_regular(rrs, [1] * rrs.dim)
    out.update(
        system=rs.name,
        J=_one_based(J),
        I=_one_based(rrs.I),
        restricted_roots=_restricted_roots(rrs),
        highest=list(rrs.highest()),
        gram=[list(r) for r in rrs.gram.rows],
        cartan=[list(r) for r in restricted_cartan(base).rows],
    )

    state.progress.step("Finding W^J and the Levi class 𝒦_J")
    levi = levi_class(rs, J, budget=spec.budget)
    _note_levi(state.fallbacks, levi)
    out["levi_class"] = [_one_based(K) for K in levi.members]
    group = restricted_weyl(rrs, budget=spec.budget)
    _note_weyl(state.fallbacks, group)
    out["weyl_order"] = group.order

    state.progress.step("Counting chambers, exponents and h^J")
    stats = arrangement_stats(rrs, spec.budget, levi=levi, group=group)
    out.update(_stats_payload(stats))


def _arrange(state: _Run) -> None:
    spec, out = state.spec, state.results
    state.progress.step("Building the arrangement")
    rs, order = _system(spec)
    J, _ = _subset(spec, rs, order)
    rrs = restrict(rs, J)
    arr = Arrangement.of_restricted(rrs)
    out.update(system=rs.name, J=_one_based(J), hyperplanes=len(arr.normals))

    state.progress.step("Computing the characteristic polynomial")
    out["characteristic_polynomial"] = char_poly(arr, spec.budget)

    state.progress.step("Checking chamber counts and the Coxeter number")
    stats = arrangement_stats(rrs, spec.budget, state.fallbacks)
    out.update(_stats_payload(stats))
    report = sommers_check(rs, J, stats.h, stats.exponents)
    out["sommers_candidates"] = list(report.candidates)


# ── grading / pyramid ──────────────────────────────────────────────────────────


def _integral(state: _Run, case: GradingCase) -> list[QVector]:
    out = state.results
    points = integral_points(case.poly)
    classes = case.classes(points)
    out["integral_points"] = [list(p) for p in points]
    out["classes"] = [
        {
            "points": [list(p) for p in cls.points],
            "characteristic": list(cls.characteristic),
            "text": cls.text,
        }
        for cls in classes
    ]
    if state.spec.graph:
        graph = adjacency_graph(case, classes)
        out["graph"] = graph_payload(graph)
        out["graph_is_connected"] = bool(graph.number_of_nodes() == 0 or nx.is_connected(graph))
    return points


def _drawing(state: _Run, poly: GoodGradingPolytope, points: Sequence[QVector]) -> None:
    if poly.intrinsic_dim != 2:
        return
    state.results["drawing"] = polytope_payload(poly, points)
    _, region = poly.chart()
    state.results["alcoves"] = alcove_count(region)


def _check_samples(
    state: _Run, poly: GoodGradingPolytope, good: Callable[[QVector], bool]
) -> None:
    spec = state.spec
    points = sample_points(poly, spec.samples, spec.seed)
    mismatches = [format_point(p) for p in points if poly.contains(p) != good(p)]
    state.results["samples"] = {
        "count": len(points),
        "inside": sum(1 for p in points if poly.contains(p)),
        "mismatches": mismatches,
    }


def _grading(state: _Run) -> None:
    spec, out = state.spec, state.results
    state.progress.step("Solving for h and the sl2 multiplicities")
    rs, order = _system(spec)
    J, labels = _subset(spec, rs, order)
    datum = NilpotentDatum(rs, J, labels)
    rrs = restrict(rs, J)
    h = solve_h(datum)
    dec = sl2_multiplicities(rrs, h)
    out.update(
        system=rs.name,
        J=_one_based(J),
        labels=list(labels),
        h=list(h),
        h_text=format_labels(rs, h),
        multiplicities=[
            {"name": restricted_name(rrs, a), "highest_weights": list(dec.highest[a]), "d": dec.d(a)}
            for a in rrs.positive()
        ],
        centralizer_dim=dec.centralizer_dim,
    )

    state.progress.step("Building the good grading polytope")
    case, _ = exceptional_case(datum, budget=spec.budget)
    poly = case.poly
    out["polytope"] = polytope_payload(poly)
    assert isinstance(case.group, RestrictedAction)
    group = case.group.group
    _note_weyl(state.fallbacks, group)
    data = component_data(dec, group)
    out["components"] = {
        "simple_roots": [restricted_name(rrs, a) for a in data.simple_roots],
        "weyl_order": data.weyl_order,
        "identity_component_order": data.identity_component_order,
        "component_order": data.component_order,
    }

    state.progress.step("Enumerating integral good gradings")
    points = _integral(state, case) if spec.integral else []
    _drawing(state, poly, points)

    state.progress.step("Checking sampled points")
    if spec.samples:
        if all(x == 2 for x in labels):
            _check_samples(state, poly, lambda p: grading_oracle(datum, p).good)
        else:
            state.fallbacks.append("sampled points checked by the dimension criterion")
            _check_samples(state, poly, lambda p: is_good(dec, p))


def _pyramid_payload(nil: ClassicalNilpotent) -> dict[str, Any]:
    pyr = nil.pyramid
    return {
        "kind": nil.kind,
        "partition": list(nil.partition.parts),
        "pyramid": pyr.text(),
        "row_lengths": list(nil.row_lengths),
        "e": sorted([i, j, c] for (i, j), c in nil.e.items()),
        "h": sorted([i, c] for (i, j), c in nil.h.items() if i == j),
        "roots": [{"name": r.name, "d": r.d} for r in nil.roots],
    }


def _pyramid(state: _Run) -> None:
    spec, out = state.spec, state.results
    state.progress.step("Building the Dynkin pyramid")
    nil = restricted_data(spec.cartan_type, Partition.of(spec.partition))
    out.update(_pyramid_payload(nil))

    state.progress.step("Building the good grading polytope")
    case = nil.case()
    poly = case.poly
    out["polytope"] = polytope_payload(poly)
    if nil.kind != "sl":
        out["coordinate_bounds"] = list(coordinate_bounds(nil))
    comp = component_orders(nil)
    out["components"] = {
        "weyl_order": comp.weyl_order,
        "identity_component_order": comp.identity_component_order,
        "component_order": comp.component_order,
    }

    state.progress.step("Enumerating integral good gradings")
    points = _integral(state, case) if spec.integral else []
    _drawing(state, poly, points)

    state.progress.step("Checking sampled points")
    if spec.samples:
        _check_samples(state, poly, lambda p: classical_rank_report(nil, p).good)


# ── tables ─────────────────────────────────────────────────────────────────────


def _adjacency_status(rs: RootSystem, J: Sequence[int], path: Sequence[str], dynkin: str) -> tuple[str, list[str]]:
    case, _ = exceptional_case(NilpotentDatum.principal(rs, J))
    graph = adjacency_graph(case)
    found = nx.relabel_nodes(graph, {n: data["label"] for n, data in graph.nodes(data=True)})
    expected = nx.path_graph(path)
    bold = [data["label"] for _, data in graph.nodes(data=True) if data["dynkin"]]
    same = set(found.nodes) == set(expected.nodes) and {frozenset(e) for e in found.edges} == {
        frozenset(e) for e in expected.edges
    }
    return ("pass" if same and bold == [dynkin] else "fail"), sorted(found.nodes)


def _tables(state: _Run) -> None:
    spec, out = state.spec, state.results
    state.progress.step("Reproducing table rows")
    if spec.rank is None:
        raise InputError(f"type {spec.cartan_type} needs a rank")
    rows = table_rows(spec.cartan_type, spec.rank)
    if spec.J:
        rows = tuple(r for r in rows if r.J == tuple(sorted(spec.J)))
    if not rows:
        raise InputError(f"no bundled table rows for {spec.cartan_type}{spec.rank}")
    rs = build(spec.cartan_type, spec.rank)
    report: list[dict[str, Any]] = []
    out["rows"] = report
    for row in rows:
        entry: dict[str, Any] = {"levi": row.levi, "J": list(row.J), "expected": list(row.expected)}
        report.append(entry)
        try:
            stats = arrangement_stats(restrict(rs, [k - 1 for k in row.J]), spec.budget, state.fallbacks)
        except BudgetExceeded as exc:
            entry["status"] = "budget exceeded"
            entry["partial"] = exc.partial
            continue
        found = (stats.hyperplanes, stats.chambers, stats.weyl_order, stats.levi_size, stats.h, stats.exponents)
        entry["found"] = list(found)
        entry["status"] = "pass" if found == row.expected else "fail"
    out["passed"] = sum(1 for e in report if e["status"] == "pass")
    out["total"] = len(report)

    state.progress.step("Checking adjacency graphs and component groups")
    if spec.graph and rs.name == "E6":
        out["adjacency"] = []
        for fixture in E6_ADJACENCY:
            status, nodes = _adjacency_status(rs, [k - 1 for k in fixture.J], fixture.path, fixture.dynkin)
            out["adjacency"].append({"levi": fixture.levi, "status": status, "nodes": nodes})
    components = []
    for fixture in COMPONENT_ORDERS:
        if (fixture.cartan_type, fixture.rank) != (rs.cartan_type, rs.rank):
            continue
        datum = NilpotentDatum(rs, tuple(k - 1 for k in fixture.J), fixture.labels)
        case, dec = exceptional_case(datum, budget=state.spec.budget)
        assert isinstance(case.group, RestrictedAction)
        found_order = component_data(dec, case.group.group).component_order
        components.append(
            {
                "label": fixture.label,
                "expected": fixture.component_order,
                "found": found_order,
                "status": "pass" if found_order == fixture.component_order else "fail",
            }
        )
    out["components"] = components


def failures(document: ResultDocument) -> int:
    """Number of rows, graphs or component checks of a tables document that did not pass."""
    results = document.results
    checks = [*results.get("rows", ()), *results.get("adjacency", ()), *results.get("components", ())]
    return sum(1 for c in checks if isinstance(c, dict) and c.get("status") not in (None, "pass"))
