"""Exact feedback sets, arc covers and the fractional relaxation.

All minimum-size searches share one decision procedure,
:meth:`_HittingSetSearch.feasible`: find a set not yet hit (a dicycle, or an
uncovered arc), then branch on its elements, forcing the i-th and forbidding
the ones before it. Iterative deepening finds the optimum size, and a second
pass picks the lexicographically smallest optimal set.
"""

from __future__ import annotations

import heapq
import logging
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx

from src.const import GW_RATIO, MIN_BOUND_GIRTH, Guards
from src.cycle_machinery import max_dicycle_packing
from src.embed_core import (
    DiCycle,
    PlanarDigraph,
    is_acyclic,
    make_dicycle,
    shortest_dicycle,
    to_networkx,
)
from src.errors import GuardExceeded, LYViolation, Undefined, UnsupportedGirth
from src.simplex import maximize

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class FvsResult:
    vertices: tuple[int, ...]
    optimal: bool
    certificate: tuple[int, ...]  # topological order of G − X

    @property
    def size(self) -> int:
        return len(self.vertices)

    def certifies(self, graph: PlanarDigraph) -> bool:
        """Independent check that ``certificate`` orders G − X topologically."""
        removed = set(self.vertices)
        if sorted(self.certificate) != [v for v in range(graph.n) if v not in removed]:
            return False
        rank = {v: i for i, v in enumerate(self.certificate)}
        return all(
            rank[t] < rank[h]
            for t, h in graph.arcs
            if t not in removed and h not in removed
        )


@dataclass(frozen=True)
class FasResult:
    arcs: tuple[int, ...]
    optimal: bool

    @property
    def size(self) -> int:
        return len(self.arcs)


@dataclass(frozen=True)
class FractionalFvs:
    weights: tuple[Fraction, ...]
    objective: Fraction
    active_cycles: tuple[DiCycle, ...]
    rounds: int
    min_cycle_weight: Fraction | None  # from the final separation pass; None when acyclic


# --- Branch and bound for hitting sets --------------------------------------


class _HittingSetSearch:
    def __init__(
        self,
        unhit: Callable[[frozenset[int]], Sequence[int] | None],
        lower_bound: Callable[[frozenset[int]], int],
        node_limit: int,
    ) -> None:
        self._unhit = unhit
        self._lower_bound = lower_bound
        self._node_limit = node_limit
        self.nodes = 0

    def feasible(self, forced: frozenset[int], forbidden: frozenset[int], budget: int) -> bool:
        """Is there a hitting set ⊇ forced, disjoint from forbidden, with ≤ budget more elements?"""
        self.nodes += 1
        if self.nodes > self._node_limit:
            raise GuardExceeded("nodes", self._node_limit)
        target = self._unhit(forced)
        if target is None:
            return True
        if budget <= 0 or self._lower_bound(forced) > budget:
            return False
        choices = [x for x in target if x not in forbidden]
        for i, x in enumerate(choices):
            if self.feasible(forced | {x}, forbidden | frozenset(choices[:i]), budget - 1):
                return True
        return False

    def minimum(self, universe: Iterable[int]) -> tuple[int, ...]:
        size = 0
        while not self.feasible(frozenset(), frozenset(), size):
            size += 1
        _LOGGER.debug("Optimum %d found after %d nodes", size, self.nodes)
        return self._canonical(sorted(universe), size)

    def _canonical(self, universe: list[int], size: int) -> tuple[int, ...]:
        chosen: list[int] = []
        forbidden: set[int] = set()
        for x in universe:
            if len(chosen) == size:
                break
            if self.feasible(frozenset([*chosen, x]), frozenset(forbidden), size - len(chosen) - 1):
                chosen.append(x)
            else:
                forbidden.add(x)
        return tuple(chosen)


def _greedy_disjoint_cycles(graph: PlanarDigraph, removed: frozenset[int], by_vertex: bool) -> int:
    count = 0
    used: set[int] = set(removed)
    while True:
        if by_vertex:
            cycle = shortest_dicycle(graph, removed_vertices=used)
        else:
            cycle = shortest_dicycle(graph, removed_arcs=used)
        if cycle is None:
            return count
        count += 1
        used.update(cycle.vertices if by_vertex else cycle.arcs)


def _check_n_guard(graph: PlanarDigraph, guards: Guards) -> None:
    if graph.n > guards.n:
        raise GuardExceeded("n", guards.n)


def min_feedback_vertex_set(graph: PlanarDigraph, guards: Guards | None = None) -> FvsResult:
    """Minimum X with G − X acyclic; the lexicographically smallest among optima."""
    guards = guards or Guards()
    _check_n_guard(graph, guards)

    def unhit(forced: frozenset[int]) -> Sequence[int] | None:
        cycle = shortest_dicycle(graph, removed_vertices=forced)
        return None if cycle is None else sorted(cycle.vertices)

    search = _HittingSetSearch(
        unhit, lambda forced: _greedy_disjoint_cycles(graph, forced, True), guards.nodes
    )
    chosen = search.minimum(range(graph.n))
    g = to_networkx(graph)
    g.remove_nodes_from(chosen)
    order = tuple(nx.topological_sort(nx.DiGraph(g)))
    _LOGGER.debug("FVS of size %d: %s", len(chosen), chosen)
    return FvsResult(vertices=chosen, optimal=True, certificate=order)


def min_feedback_arc_set(
    graph: PlanarDigraph, guards: Guards | None = None, nu: int | None = None
) -> FasResult:
    """Minimum arc set A with G − A acyclic, checked against the packing number."""
    guards = guards or Guards()
    _check_n_guard(graph, guards)

    def unhit(forced: frozenset[int]) -> Sequence[int] | None:
        cycle = shortest_dicycle(graph, removed_arcs=forced)
        return None if cycle is None else sorted(cycle.arcs)

    search = _HittingSetSearch(
        unhit, lambda forced: _greedy_disjoint_cycles(graph, forced, False), guards.nodes
    )
    chosen = search.minimum(range(graph.m))
    if nu is None:
        nu = len(max_dicycle_packing(graph, guards))
    if len(chosen) != nu:
        raise LYViolation(f"minimum feedback arc set has {len(chosen)} arcs but ν = {nu}")
    return FasResult(arcs=chosen, optimal=True)


def is_feedback_vertex_set(graph: PlanarDigraph, vertices: Iterable[int]) -> bool:
    return is_acyclic(graph, removed_vertices=vertices)


def is_feedback_arc_set(graph: PlanarDigraph, arcs: Iterable[int]) -> bool:
    return is_acyclic(graph, removed_arcs=arcs)


# --- Covering an arc set by vertices ----------------------------------------


def _edge_pairs(graph: PlanarDigraph, arcs: Iterable[int]) -> list[tuple[int, int]]:
    pairs = (graph.arcs[a] for a in arcs)
    return sorted({(min(t, h), max(t, h)) for t, h in pairs})


def cover_arcs_greedy(graph: PlanarDigraph, arcs: Iterable[int]) -> frozenset[int]:
    """Vertex cover of ``arcs`` with at most (n + |A|)/3 vertices.

    Deleting a vertex of degree ≥ 2 never lowers 2n − m, and what survives
    is a matching plus isolated vertices, whose independent set meets the bound.
    """
    chosen = sorted(set(arcs))
    h = nx.MultiGraph()
    h.add_nodes_from(range(graph.n))
    h.add_edges_from(graph.arcs[a] for a in chosen)
    while True:
        heavy = [v for v in sorted(h.nodes) if h.degree(v) >= 2]
        if not heavy:
            break
        h.remove_node(heavy[0])
    independent = {v for v in h.nodes if h.degree(v) == 0}
    independent |= {min(u, v) for u, v in h.edges()}

    cover = {v for a in chosen for v in graph.arcs[a] if v not in independent}
    for v in sorted(cover, reverse=True):
        others = cover - {v}
        if all(
            graph.arcs[a][0] in others or graph.arcs[a][1] in others
            for a in chosen
            if v in graph.arcs[a]
        ):
            cover.discard(v)
    return frozenset(cover)


def min_vertex_cover_of_arcs(
    graph: PlanarDigraph, arcs: Iterable[int], guards: Guards | None = None
) -> frozenset[int]:
    """Exact minimum vertex cover of the undirected graph (V, A).

    Only the branch-node guard applies; the edge count is at most m.
    """
    guards = guards or Guards()
    edges = _edge_pairs(graph, arcs)

    def uncovered(forced: frozenset[int]) -> list[tuple[int, int]]:
        return [(u, v) for u, v in edges if u not in forced and v not in forced]

    def unhit(forced: frozenset[int]) -> Sequence[int] | None:
        left = uncovered(forced)
        return list(left[0]) if left else None

    def matching_bound(forced: frozenset[int]) -> int:
        matched: set[int] = set()
        size = 0
        for u, v in uncovered(forced):
            if u not in matched and v not in matched:
                matched.update((u, v))
                size += 1
        return size

    search = _HittingSetSearch(unhit, matching_bound, guards.nodes)
    return frozenset(search.minimum({v for e in edges for v in e}))


# --- Fractional relaxation --------------------------------------------------


def _lightest_cycle(
    graph: PlanarDigraph, weights: Sequence[Fraction]
) -> tuple[Fraction, DiCycle] | None:
    """Minimum-weight dicycle under vertex weights.

    For every start s, a label-setting search charges each vertex on entry
    and closes back into s without charging it again. Labels compare as
    (weight, arcs used, arc ids), which makes the answer unique.
    """
    best: tuple[Fraction, int, tuple[int, ...]] | None = None
    for s in range(graph.n):
        start = (weights[s], 0, ())
        labels: dict[int, tuple[Fraction, int, tuple[int, ...]]] = {s: start}
        heap: list[tuple[Fraction, int, tuple[int, ...], int]] = [(*start, s)]
        settled: set[int] = set()
        while heap:
            w, hops, path, u = heapq.heappop(heap)
            if u in settled:
                continue
            settled.add(u)
            if best is not None and (w, hops) > best[:2]:
                break
            for arc in graph.out_arcs[u]:
                x = graph.arcs[arc][1]
                if x == s:
                    cand = (w, hops + 1, (*path, arc))
                    if best is None or cand < best:
                        best = cand
                    continue
                if x in settled:
                    continue
                label = (w + weights[x], hops + 1, (*path, arc))
                if x not in labels or label < labels[x]:
                    labels[x] = label
                    heapq.heappush(heap, (*label, x))
    if best is None:
        return None
    return best[0], make_dicycle(graph, best[2])


def fractional_tau_star(graph: PlanarDigraph, guards: Guards | None = None) -> FractionalFvs:
    """τ*: min Σ w_v over w ≥ 0 with every dicycle weighing at least 1.

    Solved on the dual side (a fractional cycle packing over the active
    cycles) with exact simplex; the vertex weights are its row duals.
    Separation adds the lightest violated dicycle until none weighs < 1.
    """
    guards = guards or Guards()
    weights = [Fraction(0)] * graph.n
    objective = Fraction(0)
    active: list[DiCycle] = []
    rounds = 0
    while True:
        found = _lightest_cycle(graph, weights)
        if found is None or found[0] >= 1:
            break
        rounds += 1
        if len(active) >= guards.cycles:
            raise GuardExceeded("cycles", guards.cycles)
        active.append(found[1])
        matrix = [[1 if v in c.vertices else 0 for c in active] for v in range(graph.n)]
        solution = maximize(matrix, [1] * graph.n, [1] * len(active))
        weights = list(solution.dual)
        objective = solution.value
        if sum(weights) != objective:
            raise ArithmeticError("LP duality gap on an exact solve")
        _LOGGER.debug(
            "Separation round %d: added cycle of weight %s, objective now %s",
            rounds,
            found[0],
            objective,
        )
    return FractionalFvs(
        weights=tuple(weights),
        objective=objective,
        active_cycles=tuple(active),
        rounds=rounds,
        min_cycle_weight=None if found is None else found[0],
    )


def tau_ratio(tau: int, tau_star: Fraction, instance: str = "") -> Fraction:
    """τ / τ*; a value above 3/2 is logged as a candidate counterexample."""
    if tau_star == 0:
        raise Undefined("τ* = 0, ratio undefined")
    ratio = Fraction(tau) / tau_star
    if ratio > GW_RATIO:
        _LOGGER.warning(
            "candidate counterexample %s: τ/τ* = %s exceeds 3/2", instance or "", ratio
        )
    return ratio


def gw_ratio(graph: PlanarDigraph, guards: Guards | None = None) -> Fraction:
    tau = min_feedback_vertex_set(graph, guards).size
    return tau_ratio(tau, fractional_tau_star(graph, guards).objective)


# --- Bound formulas ---------------------------------------------------------


def theorem_bound(n: int, g: int) -> Fraction:
    """Upper bound on τ for planar digraphs on n vertices of digirth g."""
    if g < MIN_BOUND_GIRTH:
        raise UnsupportedGirth(f"no bound for digirth {g} < {MIN_BOUND_GIRTH}")
    if g == 4:
        return Fraction(5 * n - 5, 9)
    if g == 5:
        return Fraction(2 * n - 5, 4)
    return Fraction(2 * n - 6, g)


def reference_bounds(n: int, g: int) -> dict[str, Fraction]:
    """Context only: the bounds improved upon, and 3n/(2g), implied by τ ≤ (3/2)τ*."""
    if g < MIN_BOUND_GIRTH:
        raise UnsupportedGirth(f"no bound for digirth {g} < {MIN_BOUND_GIRTH}")
    if g == 4:
        previous = Fraction(7 * n, 12)
    elif g == 5:
        previous = Fraction(8 * n, 15)
    else:
        previous = Fraction(3 * n - 6, g)
    return {
        "previous": previous,
        "acyclic_partition": Fraction(n, 2),
        "gw_implied": Fraction(3 * n, 2 * g),
    }
