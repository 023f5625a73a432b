"""Per-instance drivers and the batch runner.

Each driver takes one instance (a ``.pdg`` path or a generator spec) and
returns an :class:`Outcome`: the records to emit plus the exit code the
instance contributes. Library exceptions stop at this layer, so one bad
instance never aborts a batch:

    InvalidInstance (unreadable, parse, Euler)    -> status error,   code 2
    GuardExceeded, Infeasible spec                -> status skipped, code 0
    any other PlanarFvsError                      -> status error,   code 1
    a failed inequality                           -> status fail,    code 1

:func:`run_batch` fans the drivers out over a process pool and returns the
outcomes in input order.
"""

from __future__ import annotations

import asyncio
import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import TypeVar

from src.const import (
    EXIT_CHECK_FAILED,
    EXIT_OK,
    EXIT_USAGE,
    MIN_BOUND_GIRTH,
    STATUS_ERROR,
    STATUS_FAIL,
    STATUS_PASS,
    STATUS_SKIPPED,
    Guards,
)
from src.cycle_machinery import OUTER, max_dicycle_packing, packing_bound, verify_component
from src.embed_core import INFINITY, PlanarDigraph, check_declared_digirth, components
from src.errors import (
    GuardExceeded,
    Infeasible,
    InvalidInstance,
    PlanarFvsError,
    RetriesExhausted,
)
from src.instances import (
    GeneratorSpec,
    brute_force_packing,
    brute_force_tau,
    generate,
)
from src.pdg import read_pdg
from src.report import (
    OracleRecord,
    ProofRecord,
    Record,
    RegionRecord,
    SolveRecord,
    SweepRecord,
    status_of,
)
from src.solvers import (
    cover_arcs_greedy,
    fractional_tau_star,
    min_feedback_arc_set,
    min_feedback_vertex_set,
    min_vertex_cover_of_arcs,
    reference_bounds,
    tau_ratio,
    theorem_bound,
)

_LOGGER = logging.getLogger(__name__)

T = TypeVar("T")
U = TypeVar("U")


@dataclass(frozen=True)
class Outcome:
    records: tuple[Record, ...]
    code: int = EXIT_OK
    # Raw values the sweep aggregates; not part of the record stream.
    values: dict[str, int | Fraction | None] = field(default_factory=dict)


def _digirth_value(graph: PlanarDigraph) -> int | None:
    return None if graph.digirth == INFINITY else int(graph.digirth)


def _code_for(status: str) -> int:
    return EXIT_CHECK_FAILED if status in (STATUS_FAIL, STATUS_ERROR) else EXIT_OK


def exit_code(outcomes: Sequence[Outcome]) -> int:
    return max((o.code for o in outcomes), default=EXIT_OK)


def load_instance(path: Path | str) -> tuple[str, PlanarDigraph]:
    try:
        return Path(path).stem, read_pdg(path)
    except (OSError, UnicodeDecodeError) as err:
        raise InvalidInstance(f"cannot read {path}: {err}") from err


# --- solve --------------------------------------------------------------------


def solve_graph(instance: str, graph: PlanarDigraph, guards: Guards) -> Outcome:
    """Every exact quantity and every bound verdict for one instance."""
    check_declared_digirth(graph)
    g = _digirth_value(graph)
    n = graph.n
    if n > guards.n:
        raise GuardExceeded("n", guards.n)

    nu = len(max_dicycle_packing(graph, guards))
    fas = min_feedback_arc_set(graph, guards, nu=nu)
    fvs = min_feedback_vertex_set(graph, guards)
    frac = fractional_tau_star(graph, guards)
    x_greedy = cover_arcs_greedy(graph, fas.arcs)
    x_exact = min_vertex_cover_of_arcs(graph, fas.arcs, guards)
    tau, tau_star = fvs.size, frac.objective

    verdicts: dict[str, bool] = {
        "fvs_certificate": fvs.certifies(graph),
        "ly_identity": fas.size == nu,
        "cover_covers": all(
            graph.arcs[a][0] in x_greedy or graph.arcs[a][1] in x_greedy for a in fas.arcs
        ),
        "cover_size": 3 * len(x_greedy) <= n + fas.size,
        "tau_le_cover": tau <= len(x_exact) <= len(x_greedy),
        "tau_le_fas": tau <= fas.size,
        "tau_star_le_tau": tau_star <= tau,
        "lp_certified": frac.min_cycle_weight is None or frac.min_cycle_weight >= 1,
    }
    bounds: dict[str, Fraction] = {}
    if g is not None:
        verdicts["tau_star_le_n_over_g"] = tau_star <= Fraction(n, g)
    if g is not None and g >= MIN_BOUND_GIRTH and n >= 3:
        bounds["theorem"] = theorem_bound(n, g)
        bounds["packing"] = packing_bound(n, g)
        bounds["cover"] = Fraction(n + fas.size, 3)
        bounds.update(reference_bounds(n, g))
        verdicts["tau_le_theorem"] = tau <= bounds["theorem"]
        verdicts["nu_le_packing"] = nu <= bounds["packing"]
        if g == 4:
            verdicts["cover_chain_g4"] = bounds["cover"] <= bounds["theorem"]
        if tau > bounds["gw_implied"]:
            _LOGGER.warning(
                "candidate counterexample %s: τ = %d exceeds 3n/(2g) = %s",
                instance,
                tau,
                bounds["gw_implied"],
            )

    ratio = None
    if tau_star > 0:
        ratio = tau_ratio(tau, tau_star, instance)
        verdicts["gw_ratio"] = ratio <= Fraction(3, 2)

    status = status_of(verdicts)
    record = SolveRecord(
        instance=instance,
        status=status,
        n=n,
        m=graph.m,
        g=g,
        nu=nu,
        fas=fas.size,
        tau=tau,
        tau_star=tau_star,
        x_greedy=tuple(sorted(x_greedy)),
        x_exact=tuple(sorted(x_exact)),
        gw_ratio=ratio,
        bounds=bounds,
        verdicts=verdicts,
    )
    if status == STATUS_FAIL:
        failed = [k for k, ok in verdicts.items() if not ok]
        _LOGGER.warning("%s: inequality failed: %s", instance, ", ".join(failed))
    else:
        _LOGGER.info("%s: n=%d g=%s ν=%d τ=%d τ*=%s", instance, n, g, nu, tau, tau_star)
    return Outcome(
        (record,),
        _code_for(status),
        {"tau": tau, "nu": nu, "ratio": ratio, "g": g},
    )


def _failure(instance: str, err: Exception, make: Callable[..., Record]) -> Outcome:
    if isinstance(err, GuardExceeded | Infeasible | RetriesExhausted):
        _LOGGER.warning("%s skipped: %s", instance, err)
        return Outcome((make(instance=instance, status=STATUS_SKIPPED, message=str(err)),))
    code = EXIT_USAGE if isinstance(err, InvalidInstance) else EXIT_CHECK_FAILED
    _LOGGER.warning("%s failed: %s", instance, err)
    return Outcome((make(instance=instance, status=STATUS_ERROR, message=str(err)),), code)


def solve_path(task: tuple[str, Guards]) -> Outcome:
    path, guards = task
    instance = Path(path).stem
    try:
        instance, graph = load_instance(path)
        return solve_graph(instance, graph, guards)
    except PlanarFvsError as err:
        return _failure(instance, err, SolveRecord)


def solve_spec(task: tuple[GeneratorSpec, Guards]) -> Outcome:
    spec, guards = task
    try:
        return solve_graph(spec.entry_id, generate(spec), guards)
    except PlanarFvsError as err:
        return _failure(spec.entry_id, err, SolveRecord)


# --- verify-proof -------------------------------------------------------------


def verify_graph(instance: str, graph: PlanarDigraph, guards: Guards) -> Outcome:
    """Run the packing / uncrossing / forest / region checks component by component."""
    check_declared_digirth(graph)
    g = _digirth_value(graph)
    if g is None:
        record = ProofRecord(instance, STATUS_PASS, n=graph.n, g=None, nu=0)
        return Outcome((record,))
    if g < MIN_BOUND_GIRTH:
        message = f"digirth {g} < {MIN_BOUND_GIRTH}; the region argument does not apply"
        return Outcome((ProofRecord(instance, STATUS_SKIPPED, n=graph.n, g=g, message=message),))

    parts = components(graph)
    records: list[Record] = []
    verdicts: dict[str, bool] = {}
    nu = 0
    for index, part in enumerate(parts):
        sub = part.graph
        if sub.digirth == INFINITY:
            continue
        if sub.n > guards.n:
            raise GuardExceeded("n", guards.n)
        label = instance if len(parts) == 1 else f"{instance}#c{index}"
        trace = verify_component(sub, int(sub.digirth), guards)
        nu += trace.nu
        for key, ok in trace.checks.items():
            verdicts[key] = verdicts.get(key, True) and ok
        for region in trace.regions:
            checks = dict(region.checks)
            checks["claim"] = region.claim_holds
            records.append(
                RegionRecord(
                    instance=label,
                    node=region.node,
                    k=region.k,
                    phi=region.phi,
                    claim_bound=region.claim_bound,
                    tight=region.claim_tight,
                    pieces=(region.count(1), region.count(2), region.count(3)),
                    checks=checks,
                    status=status_of(checks),
                )
            )
            if region.claim_tight and region.node != OUTER:
                _LOGGER.debug("%s node %s meets its claim bound with equality", label, region.node)
        verdicts["regions"] = verdicts.get("regions", True) and all(
            r.all_hold for r in trace.regions
        )
    status = status_of(verdicts)
    proof = ProofRecord(instance, status, n=graph.n, g=g, nu=nu, verdicts=verdicts)
    if status == STATUS_FAIL:
        _LOGGER.warning("%s: proof trace check failed", instance)
    else:
        _LOGGER.info("%s: proof trace holds (ν=%d, %d regions)", instance, nu, len(records))
    return Outcome((proof, *records), _code_for(status))


def verify_path(task: tuple[str, Guards]) -> Outcome:
    path, guards = task
    instance = Path(path).stem
    try:
        instance, graph = load_instance(path)
        return verify_graph(instance, graph, guards)
    except PlanarFvsError as err:
        return _failure(instance, err, ProofRecord)


# --- oracle -------------------------------------------------------------------


def oracle_graph(instance: str, graph: PlanarDigraph, guards: Guards) -> Outcome:
    tau = min_feedback_vertex_set(graph, guards).size
    brute_tau = brute_force_tau(graph)
    nu = len(max_dicycle_packing(graph, guards))
    try:
        brute_nu: int | None = brute_force_packing(graph)
    except GuardExceeded as err:
        _LOGGER.info("%s: packing oracle skipped (%s)", instance, err)
        brute_nu = None
    agree = tau == brute_tau and (brute_nu is None or nu == brute_nu)
    status = STATUS_PASS if agree else STATUS_FAIL
    if not agree:
        _LOGGER.warning(
            "%s: oracle mismatch (τ %d vs %d, ν %d vs %s)", instance, tau, brute_tau, nu, brute_nu
        )
    record = OracleRecord(instance, status, tau=tau, brute_tau=brute_tau, nu=nu, brute_nu=brute_nu)
    return Outcome((record,), _code_for(status))


def oracle_path(task: tuple[str, Guards]) -> Outcome:
    path, guards = task
    instance = Path(path).stem
    try:
        instance, graph = load_instance(path)
        return oracle_graph(instance, graph, guards)
    except PlanarFvsError as err:
        return _failure(instance, err, OracleRecord)


# --- sweep --------------------------------------------------------------------


def sweep_specs(
    families: Sequence[str],
    n_values: Sequence[int],
    g_values: Sequence[int],
    per_cell: int,
    seed: int,
) -> list[GeneratorSpec]:
    return [
        GeneratorSpec(family, n, g, seed + i)
        for family in families
        for n in n_values
        for g in g_values
        for i in range(per_cell)
    ]


def summarize_sweep(
    specs: Sequence[GeneratorSpec], outcomes: Sequence[Outcome]
) -> list[SweepRecord]:
    """One row per (family, n, g) cell, in first-seen order."""
    cells: dict[tuple[str, int, int], list[Outcome]] = {}
    for spec, outcome in zip(specs, outcomes, strict=True):
        cells.setdefault((spec.family, spec.n_target, spec.g_target), []).append(outcome)
    rows = []
    for (family, n, g), members in cells.items():
        statuses = [o.records[0].status for o in members]
        ran = [o for o, s in zip(members, statuses, strict=True) if s in (STATUS_PASS, STATUS_FAIL)]
        taus = [int(v) for o in ran if (v := o.values.get("tau")) is not None]
        nus = [int(v) for o in ran if (v := o.values.get("nu")) is not None]
        ratios = [Fraction(v) for o in ran if (v := o.values.get("ratio")) is not None]
        errors = statuses.count(STATUS_ERROR)
        if STATUS_FAIL in statuses or errors:
            status = STATUS_FAIL if STATUS_FAIL in statuses else STATUS_ERROR
        elif ran:
            status = STATUS_PASS
        else:
            status = STATUS_SKIPPED
        bounded = g >= MIN_BOUND_GIRTH and n >= 3
        rows.append(
            SweepRecord(
                family=family,
                n=n,
                g=g,
                status=status,
                instances=len(ran),
                skipped=statuses.count(STATUS_SKIPPED),
                errors=errors,
                max_tau=max(taus, default=None),
                theorem_bound=theorem_bound(n, g) if bounded else None,
                max_nu=max(nus, default=None),
                packing_bound=packing_bound(n, g) if bounded else None,
                max_gw_ratio=max(ratios, default=None),
            )
        )
    return rows


def sweep_code(rows: Sequence[SweepRecord]) -> int:
    return max((_code_for(r.status) for r in rows), default=EXIT_OK)


# --- batch runner ---------------------------------------------------------------


async def run_batch(func: Callable[[T], U], items: Sequence[T], jobs: int = 1) -> list[U]:
    """Apply ``func`` to every item; results come back in input order.

    With ``jobs > 1`` items run in a process pool; ``func`` and the items must
    be picklable.
    """
    _LOGGER.info("Batch of %d item(s), %d job(s)", len(items), jobs)
    if jobs <= 1 or len(items) <= 1:
        results = []
        for item in items:
            results.append(func(item))
            await asyncio.sleep(0)
        return results
    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [loop.run_in_executor(pool, func, item) for item in items]
        return list(await asyncio.gather(*futures))
