"""Tests for the per-instance drivers, sweep aggregation and the batch runner."""

from __future__ import annotations

from fractions import Fraction

from src.const import (
    EXIT_CHECK_FAILED,
    EXIT_OK,
    EXIT_USAGE,
    FAMILY_GRID,
    FAMILY_STACKED_CYCLES,
    STATUS_ERROR,
    STATUS_FAIL,
    STATUS_PASS,
    STATUS_SKIPPED,
    Guards,
)
from src.embed_core import build_planar_digraph
from src.instances import GeneratorSpec, _rotation_from_drawing
from src.pipeline import (
    Outcome,
    exit_code,
    oracle_graph,
    run_batch,
    solve_graph,
    solve_path,
    solve_spec,
    summarize_sweep,
    sweep_code,
    sweep_specs,
    verify_graph,
    verify_path,
)
from src.report import OracleRecord, ProofRecord, RegionRecord, SolveRecord


def _side_by_side_squares():
    points = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
    points += [(x + 3.0, y) for x, y in points]
    arcs = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4)]
    return build_planar_digraph(8, arcs, _rotation_from_drawing(8, arcs, points), g_declared=4)


def _solved(status, tau=None, nu=None, ratio=None):
    record = SolveRecord(instance="x", status=status)
    return Outcome((record,), values={"tau": tau, "nu": nu, "ratio": ratio})


# --- solve --------------------------------------------------------------------


def test_solve_square(square, small_guards):
    outcome = solve_graph("square", square, small_guards)
    assert outcome.code == EXIT_OK
    (record,) = outcome.records
    assert isinstance(record, SolveRecord)
    assert record.status == STATUS_PASS
    assert (record.nu, record.fas, record.tau, record.tau_star) == (1, 1, 1, 1)
    assert record.x_exact == (0,)
    assert record.x_greedy == (1,)
    assert record.bounds["theorem"] == Fraction(5, 3)
    assert record.bounds["cover"] == Fraction(5, 3)
    assert record.bounds["gw_implied"] == Fraction(3, 2)
    assert record.verdicts["cover_chain_g4"]
    assert all(record.verdicts.values())
    assert outcome.values["ratio"] == 1


def test_solve_two_squares(two_squares, small_guards):
    (record,) = solve_graph("two_squares", two_squares, small_guards).records
    assert (record.tau, record.nu, record.tau_star) == (1, 2, 1)
    assert record.bounds["theorem"] == Fraction(10, 3)
    assert record.bounds["packing"] == 3
    assert record.status == STATUS_PASS


def test_triangle_gets_no_bounds(triangle, small_guards):
    (record,) = solve_graph("triangle", triangle, small_guards).records
    assert record.g == 3
    assert record.bounds == {}
    assert "tau_le_theorem" not in record.verdicts
    assert record.verdicts["tau_star_le_n_over_g"]


def test_acyclic_has_no_ratio(acyclic, small_guards):
    outcome = solve_graph("acyclic", acyclic, small_guards)
    (record,) = outcome.records
    assert record.g is None
    assert record.tau == record.nu == 0
    assert record.gw_ratio is None
    assert record.status == STATUS_PASS


def test_malformed_file_is_a_usage_error(fixtures_dir, small_guards):
    outcome = solve_path((str(fixtures_dir / "malformed.pdg"), small_guards))
    assert outcome.code == EXIT_USAGE
    (record,) = outcome.records
    assert record.status == STATUS_ERROR
    assert "line 5" in record.message


def test_missing_file_is_a_usage_error(tmp_path, small_guards):
    outcome = solve_path((str(tmp_path / "nowhere.pdg"), small_guards))
    assert outcome.code == EXIT_USAGE
    assert outcome.records[0].instance == "nowhere"


def test_overstated_digirth_is_an_error(fixtures_dir, small_guards):
    outcome = solve_path((str(fixtures_dir / "square_declared_g5.pdg"), small_guards))
    assert outcome.code == EXIT_CHECK_FAILED
    assert outcome.records[0].status == STATUS_ERROR


def test_guard_skips_without_failing(fixtures_dir):
    outcome = solve_path((str(fixtures_dir / "square.pdg"), Guards(n=3)))
    assert outcome.code == EXIT_OK
    (record,) = outcome.records
    assert record.status == STATUS_SKIPPED
    assert "n guard" in record.message


def test_infeasible_spec_is_skipped(small_guards):
    outcome = solve_spec((GeneratorSpec(FAMILY_GRID, 3, 4), small_guards))
    assert outcome.code == EXIT_OK
    assert outcome.records[0].status == STATUS_SKIPPED


# --- verify-proof -------------------------------------------------------------


def test_verify_two_squares(two_squares, small_guards):
    outcome = verify_graph("two_squares", two_squares, small_guards)
    proof, *regions = outcome.records
    assert isinstance(proof, ProofRecord)
    assert proof.status == STATUS_PASS
    assert proof.nu == 2
    assert proof.verdicts["regions"]
    assert len(regions) == 3
    outer = regions[-1]
    assert isinstance(outer, RegionRecord)
    assert (outer.node, outer.k, outer.phi, outer.claim_bound) == ("outer", 2, 18, 9)
    assert outer.pieces == (1, 0, 0)
    assert all(r.status == STATUS_PASS for r in regions)


def test_verify_labels_each_component(small_guards):
    outcome = verify_graph("pair", _side_by_side_squares(), small_guards)
    proof, *regions = outcome.records
    assert proof.nu == 2
    assert proof.status == STATUS_PASS
    assert sorted({r.instance for r in regions}) == ["pair#c0", "pair#c1"]
    assert all(r.tight for r in regions)


def test_verify_skips_low_digirth(triangle, small_guards):
    outcome = verify_graph("triangle", triangle, small_guards)
    assert outcome.code == EXIT_OK
    assert outcome.records[0].status == STATUS_SKIPPED


def test_verify_acyclic_passes_trivially(acyclic, small_guards):
    (proof,) = verify_graph("acyclic", acyclic, small_guards).records
    assert proof.status == STATUS_PASS
    assert proof.nu == 0


def test_verify_path_reports_parse_errors(fixtures_dir, small_guards):
    outcome = verify_path((str(fixtures_dir / "malformed.pdg"), small_guards))
    assert outcome.code == EXIT_USAGE
    assert isinstance(outcome.records[0], ProofRecord)


# --- oracle -------------------------------------------------------------------


def test_oracle_agrees_on_bidirected_triangle(load_pdg, small_guards):
    (record,) = oracle_graph("bidirected", load_pdg("bidirected_triangle"), small_guards).records
    assert isinstance(record, OracleRecord)
    assert record.status == STATUS_PASS
    assert (record.tau, record.brute_tau, record.nu, record.brute_nu) == (2, 2, 3, 3)


# --- sweep --------------------------------------------------------------------


def test_sweep_specs_vary_the_seed_per_instance():
    specs = sweep_specs([FAMILY_GRID, FAMILY_STACKED_CYCLES], [8, 9], [4], 2, seed=10)
    assert len(specs) == 8
    assert [s.seed for s in specs[:2]] == [10, 11]
    assert specs[0].family == FAMILY_GRID and specs[-1].family == FAMILY_STACKED_CYCLES


def test_sweep_specs_with_empty_range():
    assert sweep_specs([FAMILY_GRID], [], [4], 1, 0) == []


def test_summarize_sweep_cells():
    specs = [
        GeneratorSpec(FAMILY_GRID, 9, 4, 0),
        GeneratorSpec(FAMILY_GRID, 9, 4, 1),
        GeneratorSpec(FAMILY_GRID, 12, 4, 0),
        GeneratorSpec(FAMILY_GRID, 16, 3, 0),
    ]
    outcomes = [
        _solved(STATUS_PASS, tau=1, nu=1, ratio=Fraction(1)),
        _solved(STATUS_SKIPPED),
        _solved(STATUS_ERROR),
        _solved(STATUS_PASS, tau=2, nu=2, ratio=Fraction(4, 3)),
    ]
    rows = summarize_sweep(specs, outcomes)
    assert [(r.n, r.g) for r in rows] == [(9, 4), (12, 4), (16, 3)]
    first, second, third = rows
    assert (first.status, first.instances, first.skipped, first.max_tau) == (STATUS_PASS, 1, 1, 1)
    assert first.theorem_bound == Fraction(40, 9)
    assert (second.status, second.errors, second.max_tau) == (STATUS_ERROR, 1, None)
    assert third.theorem_bound is None
    assert third.max_gw_ratio == Fraction(4, 3)
    assert sweep_code(rows) == EXIT_CHECK_FAILED
    assert sweep_code([first, third]) == EXIT_OK


def test_sweep_cell_with_only_skips_is_skipped():
    (row,) = summarize_sweep([GeneratorSpec(FAMILY_GRID, 9, 4)], [_solved(STATUS_SKIPPED)])
    assert row.status == STATUS_SKIPPED
    assert row.instances == 0


def test_failed_inequality_wins_over_error():
    specs = [GeneratorSpec(FAMILY_GRID, 9, 4, s) for s in range(2)]
    (row,) = summarize_sweep(specs, [_solved(STATUS_ERROR), _solved(STATUS_FAIL, tau=9)])
    assert row.status == STATUS_FAIL
    assert row.max_tau == 9


# --- exit codes and the batch runner ------------------------------------------


def test_exit_code_is_the_worst_outcome():
    assert exit_code([]) == EXIT_OK
    assert exit_code([Outcome((), EXIT_OK), Outcome((), EXIT_USAGE), Outcome((), 1)]) == EXIT_USAGE


async def test_run_batch_in_process_keeps_order():
    assert await run_batch(abs, [-3, 1, -2], jobs=1) == [3, 1, 2]


async def test_run_batch_in_a_pool_keeps_order():
    assert await run_batch(abs, [-3, 1, -2, 5], jobs=2) == [3, 1, 2, 5]


async def test_run_batch_of_nothing():
    assert await run_batch(abs, [], jobs=4) == []
