"""Tests for generated families, the brute-force oracles and corpus files."""

from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest

from src.const import (
    FAMILY_CYLINDER_GRID,
    FAMILY_GRID,
    FAMILY_RANDOM_PLANAR,
    FAMILY_STACKED_CYCLES,
    FAMILY_TOUCHING_CYCLES,
)
from src.cycle_machinery import (
    is_non_crossing,
    make_collection,
    max_dicycle_packing,
    uncross,
    verify_component,
)
from src.embed_core import INFINITY, enumerate_dicycles
from src.errors import GuardExceeded, Infeasible
from src.instances import (
    INDEX_FILE,
    GeneratorSpec,
    _along_long_cycle,
    brute_force_packing,
    brute_force_tau,
    build_corpus,
    generate,
    grid_digraph,
    load_corpus,
    write_corpus,
)
from src.pdg import serialize_pdg
from src.solvers import min_feedback_vertex_set

# --- Specs --------------------------------------------------------------------


def test_unknown_family_is_rejected():
    with pytest.raises(ValueError, match="unknown family"):
        GeneratorSpec("hexagons", 10, 4)


def test_entry_id():
    assert GeneratorSpec(FAMILY_GRID, 9, 4, seed=2).entry_id == "grid-n9-g4-s2"


@pytest.mark.parametrize(
    "family", [FAMILY_GRID, FAMILY_STACKED_CYCLES, FAMILY_RANDOM_PLANAR, FAMILY_TOUCHING_CYCLES]
)
def test_generation_is_deterministic(family):
    spec = GeneratorSpec(family, 12, 4, seed=7)
    assert serialize_pdg(generate(spec)) == serialize_pdg(generate(spec))


# --- Families -----------------------------------------------------------------


def test_plain_grid_is_acyclic():
    g = grid_digraph(3, 3)
    assert (g.n, g.m) == (9, 12)
    assert g.digirth == INFINITY
    assert min_feedback_vertex_set(g).size == 0


def test_flipped_grid_square_is_a_dicycle():
    # Flip the bottom arc and the left arc of the 2 x 2 grid.
    g = grid_digraph(2, 2, flipped=[1, 2])
    assert g.digirth == 4
    assert len(max_dicycle_packing(g)) == 1


@pytest.mark.parametrize("seed", range(4))
def test_grid_family_meets_the_target(seed):
    g = generate(GeneratorSpec(FAMILY_GRID, 12, 4, seed=seed))
    assert g.n == 12
    assert g.digirth >= 4
    assert g.g_declared == 4


def test_stacked_cycles_pack_one_cycle_per_ring():
    g = generate(GeneratorSpec(FAMILY_STACKED_CYCLES, 12, 4, seed=1))
    assert g.n == 12
    assert g.digirth == 4
    assert len(max_dicycle_packing(g)) == 3


def test_stacked_cycles_hub_and_pendant_fill_up_n():
    g = generate(GeneratorSpec(FAMILY_STACKED_CYCLES, 14, 4, seed=1))
    assert g.n == 14
    assert g.is_connected
    assert g.digirth == 4


def test_cylinder_outer_face_is_the_outer_ring():
    g = generate(GeneratorSpec(FAMILY_CYLINDER_GRID, 8, 4, seed=0))
    assert g.digirth == 4
    assert [g.faces[f].degree for f in g.outer_faces] == [4]
    assert sorted(f.degree for f in g.faces) == [4] * 6


def test_cylinder_pendant_keeps_n_exact():
    g = generate(GeneratorSpec(FAMILY_CYLINDER_GRID, 10, 4, seed=0))
    assert g.n == 10
    assert g.is_connected


@pytest.mark.parametrize("seed", range(3))
def test_random_planar_meets_the_target(seed):
    g = generate(GeneratorSpec(FAMILY_RANDOM_PLANAR, 10, 4, seed=seed))
    assert g.n == 10
    assert g.is_connected
    assert g.digirth >= 4
    assert g.digirth != INFINITY


@pytest.mark.parametrize("n, g", [(17, 6), (20, 6), (24, 7)])
@pytest.mark.parametrize("seed", range(3))
def test_random_planar_keeps_a_dicycle_at_high_digirth(n, g, seed):
    graph = generate(GeneratorSpec(FAMILY_RANDOM_PLANAR, n, g, seed=seed))
    assert graph.n == n
    assert graph.digirth != INFINITY
    assert graph.digirth >= g


def test_orienting_along_a_chordless_cycle():
    wheel = nx.wheel_graph(7)
    arcs = _along_long_cycle(wheel, 6, random.Random(0))
    assert arcs is not None
    graph = nx.DiGraph(arcs)
    (cycle,) = nx.simple_cycles(graph)
    assert len(cycle) == 6
    assert 0 not in cycle
    assert _along_long_cycle(wheel, 7, random.Random(0)) is None


def test_touching_cycles_faces():
    g = generate(GeneratorSpec(FAMILY_TOUCHING_CYCLES, 12, 4, seed=0))
    assert (g.n, g.m) == (12, 17)
    assert g.digirth == 4
    assert sorted(f.degree for f in g.faces) == [3, 3, 4, 4, 5, 6, 9]


@pytest.mark.parametrize(
    "n, g, seed", [(12, 4, 0), (12, 4, 1), (15, 4, 2), (16, 5, 0), (21, 6, 3)]
)
def test_touching_cycles_reach_type_two_and_three_pieces(n, g, seed):
    graph = generate(GeneratorSpec(FAMILY_TOUCHING_CYCLES, n, g, seed=seed))
    assert graph.n == n
    assert graph.is_connected
    assert graph.digirth == g
    trace = verify_component(graph, g)
    assert trace.nu == 4
    assert sum(r.count(2) for r in trace.regions) == 1
    assert sum(r.count(3) for r in trace.regions) == 1
    assert sum(1 for r in trace.regions if r.intersecting) >= 2
    assert trace.all_hold


def test_touching_cycles_have_exactly_one_crossing_packing():
    graph = generate(GeneratorSpec(FAMILY_TOUCHING_CYCLES, 12, 4, seed=5))
    cycles = enumerate_dicycles(graph)
    packings = [
        make_collection(graph, list(combo))
        for combo in itertools.combinations(cycles, 4)
        if all(not a.arc_set & b.arc_set for a, b in itertools.combinations(combo, 2))
    ]
    assert len(packings) == 2
    crossing = [p for p in packings if not p.non_crossing]
    nested = [p for p in packings if p.non_crossing]
    assert len(crossing) == len(nested) == 1
    rebuilt = uncross(graph, crossing[0])
    assert is_non_crossing(graph, rebuilt.cycles)
    assert {c.arc_set for c in rebuilt.cycles} == {c.arc_set for c in nested[0].cycles}


@pytest.mark.parametrize(
    "spec",
    [
        GeneratorSpec(FAMILY_GRID, 3, 4),
        GeneratorSpec(FAMILY_STACKED_CYCLES, 3, 4),
        GeneratorSpec(FAMILY_CYLINDER_GRID, 8, 2),
        GeneratorSpec(FAMILY_RANDOM_PLANAR, 2, 4),
        GeneratorSpec(FAMILY_TOUCHING_CYCLES, 11, 4),
        GeneratorSpec(FAMILY_TOUCHING_CYCLES, 20, 3),
    ],
)
def test_infeasible_targets(spec):
    with pytest.raises(Infeasible):
        generate(spec)


# --- Oracles ------------------------------------------------------------------


def test_oracles_agree_with_fixture_values(load_pdg):
    graph = load_pdg("bidirected_triangle")
    assert brute_force_tau(graph) == 2
    assert brute_force_packing(graph) == 3
    assert brute_force_tau(load_pdg("acyclic_tournament")) == 0
    assert brute_force_packing(load_pdg("bowtie")) == 2


def test_oracle_guards(load_pdg):
    with pytest.raises(GuardExceeded):
        brute_force_tau(load_pdg("bowtie"), limit=4)
    with pytest.raises(GuardExceeded):
        brute_force_packing(load_pdg("bidirected_triangle"), limit=3)


# --- Corpus -------------------------------------------------------------------


def test_corpus_write_then_load(tmp_path, small_guards):
    specs = [GeneratorSpec(FAMILY_STACKED_CYCLES, 8, 4, seed=s) for s in range(2)]
    entries = build_corpus(specs, small_guards)
    assert entries[0].metrics["tau"] == 2
    assert entries[0].metrics["nu"] == 2
    assert entries[0].metrics["fas"] == 2
    assert entries[0].metrics["tau_star"] == 2

    write_corpus(tmp_path, entries)
    assert (tmp_path / INDEX_FILE).exists()
    assert (tmp_path / f"{specs[0].entry_id}.pdg").exists()

    loaded = load_corpus(tmp_path)
    assert [e.id for e in loaded] == [e.id for e in entries]
    assert [e.metrics for e in loaded] == [e.metrics for e in entries]
    assert loaded[1].graph == entries[1].graph
    assert loaded[1].spec == specs[1]
