"""Corpus-scale suites over every generated family, n 6..24 and g 4..8.

Deselected by default; run with ``pytest -m slow``.
"""

from __future__ import annotations

import pytest

from src.const import EXIT_OK, FAMILIES, GW_RATIO, STATUS_PASS, Guards
from src.embed_core import INFINITY, PlanarDigraph
from src.errors import GuardExceeded, Infeasible, RetriesExhausted
from src.instances import GeneratorSpec, generate
from src.pipeline import Outcome, oracle_graph, solve_graph, sweep_specs, verify_graph
from src.report import ProofRecord, SolveRecord

pytestmark = pytest.mark.slow

GUARDS = Guards(n=24)
ORACLE_MAX_N = 14


@pytest.fixture(scope="module")
def corpus() -> list[tuple[GeneratorSpec, PlanarDigraph]]:
    built = []
    for spec in sweep_specs(FAMILIES, range(6, 25), range(4, 9), per_cell=1, seed=0):
        try:
            built.append((spec, generate(spec)))
        except (Infeasible, RetriesExhausted):
            continue
    return built


@pytest.fixture(scope="module")
def solved(corpus) -> list[SolveRecord]:
    records = []
    for spec, graph in corpus:
        try:
            (record,) = solve_graph(spec.entry_id, graph, GUARDS).records
        except GuardExceeded:
            continue
        records.append(record)
    return records


def _with(records: list[SolveRecord], *verdicts: str) -> list[SolveRecord]:
    return [r for r in records if all(v in r.verdicts for v in verdicts)]


def _failed(records: list[SolveRecord], *verdicts: str) -> list[str]:
    return [r.instance for r in records for v in verdicts if not r.verdicts[v]]


def test_theorem_bound_holds_on_two_hundred_instances(solved):
    checked = _with(solved, "tau_le_theorem", "nu_le_packing")
    assert len(checked) >= 200
    assert not _failed(checked, "tau_le_theorem", "nu_le_packing")


def test_feedback_arc_set_equals_packing(solved):
    checked = _with(solved, "ly_identity")
    assert len(checked) >= 150
    assert all(r.fas == r.nu for r in checked)


def test_greedy_cover_bound(solved):
    checked = _with(solved, "cover_covers", "cover_size", "tau_le_cover")
    assert len(checked) >= 200
    assert not _failed(checked, "cover_covers", "cover_size", "tau_le_cover")
    assert not _failed(_with(checked, "cover_chain_g4"), "cover_chain_g4")


def test_fractional_suite(solved):
    checked = _with(solved, "tau_star_le_tau", "lp_certified", "tau_star_le_n_over_g")
    assert len(checked) >= 200
    assert not _failed(checked, "tau_star_le_tau", "lp_certified", "tau_star_le_n_over_g")
    ratios = [r.gw_ratio for r in solved if r.gw_ratio is not None]
    assert ratios
    assert max(ratios) <= GW_RATIO


def test_oracles_agree_on_small_instances(corpus):
    small = [(spec, graph) for spec, graph in corpus if graph.n <= ORACLE_MAX_N]
    outcomes = [oracle_graph(spec.entry_id, graph, GUARDS) for spec, graph in small]
    assert len(outcomes) >= 50
    assert all(o.code == EXIT_OK for o in outcomes)
    assert sum(1 for o in outcomes if o.records[0].brute_nu is not None) >= 1


def test_region_accounting_on_the_corpus(corpus):
    outcomes: list[Outcome] = []
    for spec, graph in corpus:
        if graph.digirth == INFINITY:
            continue
        try:
            outcomes.append(verify_graph(spec.entry_id, graph, GUARDS))
        except GuardExceeded:
            continue
    assert len(outcomes) >= 100
    for outcome in outcomes:
        proof, *regions = outcome.records
        assert isinstance(proof, ProofRecord)
        assert regions
        assert [r.status for r in outcome.records] == [STATUS_PASS] * len(outcome.records)
