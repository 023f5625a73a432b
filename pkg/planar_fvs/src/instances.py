"""Instance generators, brute-force oracles and the on-disk corpus.

Every generator is a pure function of its :class:`GeneratorSpec`: the seed
drives a private :class:`random.Random`, so the same spec always serializes to
the same ``.pdg`` bytes. Families:

  grid                    r×c grid, random orientation, repaired to digirth ≥ g
  cylinder-grid           concentric directed g-rings joined by outward spokes
  stacked-cycles          concentric directed g-rings, each vertex joined to two
                          vertices of the next ring (a triangulated annulus)
  random-planar-filtered  random tree plus edges kept while planar, random
                          orientation, repaired to digirth ≥ g; when the repair
                          leaves it acyclic, oriented along one long chordless cycle
  touching-cycles         four dicycles meeting pairwise at shared vertices
                          around a type-3 and a type-2 triangle, digirth g

Vertices beyond what the base shape uses become a hub inside the innermost
ring (stacked-cycles) or a pendant path hanging off the shape, so ``n`` always
equals ``n_target``. All extra arcs point away from the base shape and create
no dicycle. In the drawn families vertex 0 is the rightmost point, so the face
of its first dart is the unbounded face of the drawing.
"""

from __future__ import annotations

import itertools
import logging
import math
import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from pathlib import Path

import networkx as nx

from src.const import (
    BRUTE_FORCE_MAX_CYCLES,
    BRUTE_FORCE_MAX_N,
    FAMILIES,
    FAMILY_CYLINDER_GRID,
    FAMILY_GRID,
    FAMILY_RANDOM_PLANAR,
    FAMILY_STACKED_CYCLES,
    FAMILY_TOUCHING_CYCLES,
    RANDOM_PLANAR_RETRIES,
    Guards,
)
from src.cycle_machinery import IncidenceBipartite, bipartite_from_embedding, max_dicycle_packing
from src.embed_core import (
    INFINITY,
    PlanarDigraph,
    build_planar_digraph,
    enumerate_dicycles,
    shortest_dicycle,
    to_networkx,
)
from src.errors import GuardExceeded, Infeasible, RetriesExhausted
from src.pdg import parse_pdg, serialize_pdg
from src.report import format_fraction, parse_fraction
from src.solvers import fractional_tau_star, min_feedback_arc_set, min_feedback_vertex_set

_LOGGER = logging.getLogger(__name__)

INDEX_FILE = "index.txt"

Point = tuple[float, float]


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    n_target: int
    g_target: int
    seed: int = 0

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")

    @property
    def entry_id(self) -> str:
        return f"{self.family}-n{self.n_target}-g{self.g_target}-s{self.seed}"


# --- Drawings to rotation systems -------------------------------------------


def _rotation_from_drawing(
    n: int, arcs: Sequence[tuple[int, int]], points: Sequence[Point]
) -> list[list[int]]:
    """Counter-clockwise rotation at every vertex of a crossing-free straight-line drawing."""
    around: list[list[tuple[float, int]]] = [[] for _ in range(n)]
    for arc, (tail, head) in enumerate(arcs):
        for dart, here, there in ((2 * arc, tail, head), (2 * arc + 1, head, tail)):
            dx = points[there][0] - points[here][0]
            dy = points[there][1] - points[here][1]
            around[here].append((math.atan2(dy, dx), dart))
    return [[d for _, d in sorted(r)] for r in around]


def _embed_drawing(
    arcs: list[tuple[int, int]], points: Sequence[Point]
) -> tuple[list[tuple[int, int]], list[list[int]]]:
    """Rotation system of a drawing, relabelled so vertex 0's first dart faces outward.

    The rightmost point (highest on ties) becomes vertex 0; nothing of the
    drawing lies to its right, so the corner facing +x is on the outer face.
    A dart's face is the corner just before it, which makes the first dart
    at or above angle 0 the one to start with.
    """
    v = max(range(len(points)), key=lambda u: points[u])

    def angle(dart: int) -> float:
        tail, head = arcs[dart >> 1]
        other = tail if dart & 1 else head
        return math.atan2(points[other][1] - points[v][1], points[other][0] - points[v][0])

    rotation = _rotation_from_drawing(len(points), arcs, points)
    ring = rotation[v]
    start = next((i for i, d in enumerate(ring) if angle(d) >= 0), 0)
    rotation[v] = ring[start:] + ring[:start]
    if v == 0:
        return arcs, rotation
    swap = {0: v, v: 0}
    rotation[0], rotation[v] = rotation[v], rotation[0]
    return [(swap.get(t, t), swap.get(h, h)) for t, h in arcs], rotation


def _flip(arcs: list[tuple[int, int]], rotation: list[list[int]], arc: int) -> None:
    tail, head = arcs[arc]
    arcs[arc] = (head, tail)
    for v in (tail, head):
        rotation[v] = [d ^ 1 if d >> 1 == arc else d for d in rotation[v]]


def _extend_pendant(
    arcs: list[tuple[int, int]], points: list[Point], extra: int, anchor: int, step: Point
) -> None:
    """Hang a directed path of ``extra`` new vertices off ``anchor``."""
    prev = anchor
    for k in range(extra):
        v = len(points)
        ax, ay = points[anchor]
        points.append((ax + step[0] * (k + 1), ay + step[1] * (k + 1)))
        arcs.append((prev, v))
        prev = v


def _repair_digirth(
    n: int,
    arcs: list[tuple[int, int]],
    rotation: list[list[int]],
    g_target: int,
    rng: random.Random,
) -> PlanarDigraph:
    """Flip arcs of too-short dicycles until the digirth reaches ``g_target``.

    Only arcs pointing backwards in a seeded vertex order are flipped, and a
    flipped arc is never touched again. Each round fixes at least one arc, so
    the loop ends after at most m rounds (an all-forward orientation is acyclic).
    """
    order = list(range(n))
    rng.shuffle(order)
    rank = {v: i for i, v in enumerate(order)}
    fixed: set[int] = set()
    flips = 0
    while True:
        graph = build_planar_digraph(n, arcs, rotation)
        cycle = shortest_dicycle(graph)
        if cycle is None or len(cycle) >= g_target:
            _LOGGER.debug("Digirth repair done after %d flips", flips)
            return graph
        backward = [a for a in cycle.arcs if rank[arcs[a][0]] > rank[arcs[a][1]]]
        if not backward or fixed.intersection(backward):
            raise Infeasible(f"cannot repair dicycle {cycle.arcs}")
        for arc in backward:
            _flip(arcs, rotation, arc)
            fixed.add(arc)
            flips += 1


# --- Families ----------------------------------------------------------------


def grid_digraph(rows: int, cols: int, flipped: Iterable[int] = ()) -> PlanarDigraph:
    """rows × cols grid; arcs point right and down unless listed in ``flipped``.

    Arc ids: all horizontal arcs row by row, then all vertical arcs. With no
    flips the grid is acyclic.
    """
    points: list[Point] = [(float(j), float(-i)) for i in range(rows) for j in range(cols)]
    arcs: list[tuple[int, int]] = []
    for i in range(rows):
        for j in range(cols - 1):
            arcs.append((i * cols + j, i * cols + j + 1))
    for i in range(rows - 1):
        for j in range(cols):
            arcs.append((i * cols + j, (i + 1) * cols + j))
    arcs, rotation = _embed_drawing(arcs, points)
    for arc in sorted(set(flipped)):
        _flip(arcs, rotation, arc)
    return build_planar_digraph(len(points), arcs, rotation)


def _grid(spec: GeneratorSpec, rng: random.Random) -> PlanarDigraph:
    if spec.n_target < 4:
        raise Infeasible("grid needs at least 4 vertices")
    rows = max(2, isqrt(spec.n_target))
    cols = max(2, spec.n_target // rows)
    points: list[Point] = [(float(j), float(-i)) for i in range(rows) for j in range(cols)]
    arcs: list[tuple[int, int]] = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                arcs.append((v, v + 1) if rng.random() < 0.5 else (v + 1, v))
            if i + 1 < rows:
                arcs.append((v, v + cols) if rng.random() < 0.5 else (v + cols, v))
    _extend_pendant(arcs, points, spec.n_target - rows * cols, 0, (-1.0, 0.0))
    arcs, rotation = _embed_drawing(arcs, points)
    return _repair_digirth(len(points), arcs, rotation, spec.g_target, rng)


def _rings(
    spec: GeneratorSpec, rng: random.Random, staggered: bool
) -> tuple[list[tuple[int, int]], list[Point], int]:
    """Concentric directed g-rings with outward spokes; returns arcs, points, ring count."""
    g = spec.g_target
    if g < 3:
        raise Infeasible(f"{spec.family} needs g ≥ 3, got {g}")
    if spec.n_target < g:
        raise Infeasible(f"{spec.family} needs n ≥ g ({spec.n_target} < {g})")
    count = spec.n_target // g
    points: list[Point] = []
    arcs: list[tuple[int, int]] = []
    for r in range(count):
        # Radii grow by 3x so every ring clears the chords of the next one.
        radius = 3.0**r
        shift = -r / 2 if staggered else 0.0
        for j in range(g):
            angle = 2 * math.pi * (j + shift) / g
            points.append((radius * math.cos(angle), radius * math.sin(angle)))
        base = r * g
        ccw = rng.random() < 0.5
        for j in range(g):
            a, b = base + j, base + (j + 1) % g
            arcs.append((a, b) if ccw else (b, a))
    for r in range(count - 1):
        for j in range(g):
            inner, outer = r * g + j, (r + 1) * g + j
            arcs.append((inner, outer))
            if staggered:
                arcs.append((inner, (r + 1) * g + (j + 1) % g))
    return arcs, points, count


def _cylinder_grid(spec: GeneratorSpec, rng: random.Random) -> PlanarDigraph:
    arcs, points, count = _rings(spec, rng, staggered=False)
    outer0 = (count - 1) * spec.g_target
    _extend_pendant(arcs, points, spec.n_target - len(points), outer0, (3.0**count, 0.0))
    arcs, rotation = _embed_drawing(arcs, points)
    return build_planar_digraph(len(points), arcs, rotation)


def _stacked_cycles(spec: GeneratorSpec, rng: random.Random) -> PlanarDigraph:
    arcs, points, count = _rings(spec, rng, staggered=True)
    extra = spec.n_target - len(points)
    if extra:
        hub = len(points)
        points.append((0.0, 0.0))
        arcs.extend((hub, j) for j in range(spec.g_target))
        outer0 = (count - 1) * spec.g_target
        direction = points[outer0]
        _extend_pendant(arcs, points, extra - 1, outer0, direction)
    arcs, rotation = _embed_drawing(arcs, points)
    return build_planar_digraph(len(points), arcs, rotation)


def _path_through(
    arcs: list[tuple[int, int]], points: list[Point], start: int, end: int, inner: list[Point]
) -> list[int]:
    """Directed path start → inner points → end; returns the new vertex ids."""
    ids = list(range(len(points), len(points) + len(inner)))
    points.extend(inner)
    for tail, head in itertools.pairwise([start, *ids, end]):
        arcs.append((tail, head))
    return ids


def _touching_cycles(spec: GeneratorSpec, rng: random.Random) -> PlanarDigraph:
    """Four dicycles sharing vertices around two triangular faces.

    p, q, r form a triangle with one arc on each of D (p→q), C1 (q→r) and
    C2 (p→r); C1 and C2 bulge out of it inside D. C0 runs p→y→q below the
    axis and wraps around D, so p y q is a triangle spanned by D's arc.
    D, C1 and C2 have length g and C0 has length g + 1, which makes this
    the only non-crossing decomposition of the cycle arcs into four
    dicycles. The seed reverses every arc or not and picks where the
    pendant path hangs.
    """
    g = spec.g_target
    if g < 4:
        raise Infeasible(f"{spec.family} needs g ≥ 4, got {g}")
    base = 4 * g - 4
    if spec.n_target < base:
        raise Infeasible(f"{spec.family} needs n ≥ {base} at g = {g}, got {spec.n_target}")
    k = g - 2
    p, q, r, y = 0, 1, 2, 3
    points: list[Point] = [(-1.0, 0.0), (1.0, 0.0), (0.0, 1.0), (0.0, -1.0)]
    arcs: list[tuple[int, int]] = [(p, y), (y, q), (p, q), (q, r), (p, r)]

    def top(half: float, low: float, rise: float) -> list[Point]:
        xs = [half - 2 * half * i / (k - 1) for i in range(k)]
        return [(x, low + rise * (half * half - x * x) / (half * half)) for x in xs]

    def bulge(sign: float) -> list[Point]:
        out = []
        for i in range(1, k + 1):
            psi = math.pi * i / (k + 1)
            c, s = math.cos(psi), math.sin(psi)
            out.append((sign * (0.5 - 0.5 * c + 0.5 * s), 0.5 + 0.5 * c + 0.5 * s))
        return out

    outer = _path_through(arcs, points, q, p, top(5.0, 2.5, 2.0))
    _path_through(arcs, points, q, p, top(3.0, 1.5, 1.0))
    _path_through(arcs, points, r, q, bulge(1.0))
    _path_through(arcs, points, r, p, bulge(-1.0))
    if rng.random() < 0.5:
        arcs = [(head, tail) for tail, head in arcs]
    anchor = outer[rng.randrange(k)]
    _extend_pendant(arcs, points, spec.n_target - base, anchor, (0.0, 1.0))
    arcs, rotation = _embed_drawing(arcs, points)
    return build_planar_digraph(len(points), arcs, rotation)


def random_planar_graph(n: int, rng: random.Random, density: float = 1.6) -> nx.Graph:
    """Random tree plus random edges kept whenever the graph stays planar."""
    g = nx.Graph()
    g.add_nodes_from(range(n))
    for v in range(1, n):
        g.add_edge(v, rng.randrange(v))
    for _ in range(int((density - 1.0) * n) * 3):
        if n < 2:
            break
        u, v = rng.sample(range(n), 2)
        if g.has_edge(u, v):
            continue
        g.add_edge(u, v)
        if not nx.check_planarity(g)[0]:
            g.remove_edge(u, v)
    return g


def _embedded_rotation(g: nx.Graph, arcs: Sequence[tuple[int, int]]) -> list[list[int]]:
    planar, embedding = nx.check_planarity(g)
    if not planar:
        raise Infeasible("graph is not planar")
    dart_to: dict[tuple[int, int], int] = {}
    for arc, (tail, head) in enumerate(arcs):
        dart_to[(tail, head)] = 2 * arc
        dart_to[(head, tail)] = 2 * arc + 1
    # networkx lists neighbours clockwise.
    return [
        [dart_to[(v, w)] for w in reversed(list(embedding.neighbors_cw_order(v)))]
        for v in range(g.number_of_nodes())
    ]


def _along_long_cycle(
    g: nx.Graph, g_target: int, rng: random.Random
) -> list[tuple[int, int]] | None:
    """Orient ``g`` so its only dicycle is a chordless cycle of length ≥ ``g_target``.

    The cycle's vertices get the lowest ranks in cycle order and every other
    edge points up the ranking, so the closing arc is the only backward one
    and, the cycle being chordless, it closes exactly one dicycle.
    """
    cycle = next((c for c in nx.chordless_cycles(g) if len(c) >= g_target), None)
    if cycle is None:
        return None
    on_cycle = set(cycle)
    rest = [v for v in sorted(g.nodes()) if v not in on_cycle]
    rng.shuffle(rest)
    rank = {v: i for i, v in enumerate([*cycle, *rest])}
    arcs = [(u, v) if rank[u] < rank[v] else (v, u) for u, v in sorted(g.edges())]
    closing = arcs.index((cycle[0], cycle[-1]))
    arcs[closing] = (cycle[-1], cycle[0])
    return arcs


def _random_planar(spec: GeneratorSpec, rng: random.Random) -> PlanarDigraph:
    if spec.n_target < 3:
        raise Infeasible("random-planar-filtered needs at least 3 vertices")
    # Samples left acyclic by the repair are rejected once n leaves room for cycles.
    want_cycle = spec.n_target >= 2 * spec.g_target
    for attempt in range(RANDOM_PLANAR_RETRIES):
        g = random_planar_graph(spec.n_target, rng)
        arcs = [(u, v) if rng.random() < 0.5 else (v, u) for u, v in sorted(g.edges())]
        rotation = _embedded_rotation(g, arcs)
        graph = _repair_digirth(spec.n_target, arcs, rotation, spec.g_target, rng)
        if not want_cycle or graph.digirth != INFINITY:
            return graph
        arcs_along = _along_long_cycle(g, spec.g_target, rng)
        if arcs_along is not None:
            _LOGGER.debug("Random planar attempt %d oriented along a long cycle", attempt)
            return build_planar_digraph(
                spec.n_target, arcs_along, _embedded_rotation(g, arcs_along)
            )
        _LOGGER.debug("Random planar attempt %d rejected: acyclic after repair", attempt)
    raise RetriesExhausted(f"no instance with a dicycle after {RANDOM_PLANAR_RETRIES} tries")


_GENERATORS = {
    FAMILY_GRID: _grid,
    FAMILY_CYLINDER_GRID: _cylinder_grid,
    FAMILY_STACKED_CYCLES: _stacked_cycles,
    FAMILY_RANDOM_PLANAR: _random_planar,
    FAMILY_TOUCHING_CYCLES: _touching_cycles,
}


def generate(spec: GeneratorSpec) -> PlanarDigraph:
    """Build the instance for ``spec``; its digirth is at least ``g_target``."""
    rng = random.Random(spec.seed)
    graph = _GENERATORS[spec.family](spec, rng)
    if graph.digirth < spec.g_target:
        raise Infeasible(f"{spec.entry_id}: digirth {graph.digirth} below target")
    graph = build_planar_digraph(graph.n, graph.arcs, graph.rotation, g_declared=spec.g_target)
    _LOGGER.debug(
        "Generated %s: n=%d m=%d digirth=%s", spec.entry_id, graph.n, graph.m, graph.digirth
    )
    return graph


# --- Incidence graphs and face sets ------------------------------------------


def random_incidence_bipartite(seed: int, u_size: int) -> IncidenceBipartite:
    """Subdivide every edge of a random connected planar graph on ``u_size`` nodes.

    The original nodes form U and the subdivision nodes form V. About half of
    the faces whose boundary has three or more distinct nodes also get a V
    star joined to all of them, so V degrees range from 2 up to the face size.
    Every face of the result has even degree at least 4.
    """
    if u_size < 2:
        raise Infeasible("need at least two U nodes")
    rng = random.Random(seed)
    g = random_planar_graph(u_size, rng)
    _, embedding = nx.check_planarity(g)
    h = nx.Graph()
    h.add_nodes_from(range(u_size))
    for a, b in sorted(g.edges()):
        x = h.number_of_nodes()
        h.add_edges_from([(a, x), (b, x)])
    seen: set[tuple[int, int]] = set()
    for half in sorted(embedding.edges()):
        if half in seen:
            continue
        corners = sorted(set(embedding.traverse_face(*half, mark_half_edges=seen)))
        if len(corners) >= 3 and rng.random() < 0.5:
            x = h.number_of_nodes()
            h.add_edges_from((u, x) for u in corners)
    arcs = sorted((min(e), max(e)) for e in h.edges())
    graph = build_planar_digraph(h.number_of_nodes(), arcs, _embedded_rotation(h, arcs))
    return bipartite_from_embedding(graph, u_size)


def random_lemma2_instance(seed: int, n: int) -> tuple[PlanarDigraph, tuple[int, ...]]:
    """A connected plane graph and a set of vertex-disjoint, cycle-bounded faces."""
    rng = random.Random(seed)
    g = random_planar_graph(n, rng)
    arcs = sorted(g.edges())
    graph = build_planar_digraph(n, arcs, _embedded_rotation(g, arcs))
    candidates = []
    for face in graph.faces:
        verts = [graph.origin(d) for d in face.boundary]
        if len(set(verts)) == len(verts) and len(set(face.arcs)) == len(face.arcs):
            candidates.append((face.index, frozenset(verts)))
    rng.shuffle(candidates)
    chosen: list[int] = []
    used: set[int] = set()
    for index, verts in candidates:
        if not used & verts and rng.random() < 0.7:
            chosen.append(index)
            used |= verts
    return graph, tuple(sorted(chosen))


# --- Oracles -----------------------------------------------------------------


def brute_force_tau(graph: PlanarDigraph, limit: int = BRUTE_FORCE_MAX_N) -> int:
    """Minimum |X| with G − X acyclic, by trying every subset in size order."""
    if graph.n > limit:
        raise GuardExceeded("n", limit)
    g = nx.DiGraph(to_networkx(graph))
    for size in range(graph.n + 1):
        for removed in itertools.combinations(range(graph.n), size):
            keep = set(range(graph.n)).difference(removed)
            if nx.is_directed_acyclic_graph(g.subgraph(keep)):
                return size
    return graph.n


def brute_force_packing(graph: PlanarDigraph, limit: int = BRUTE_FORCE_MAX_CYCLES) -> int:
    """Largest arc-disjoint family of dicycles, by exhaustive search."""
    cycles = enumerate_dicycles(graph, limit)
    masks = [sum(1 << a for a in c.arcs) for c in cycles]

    def best(i: int, used: int) -> int:
        if i == len(masks):
            return 0
        skip = best(i + 1, used)
        if masks[i] & used:
            return skip
        return max(skip, 1 + best(i + 1, used | masks[i]))

    return best(0, 0)


# --- Corpus ------------------------------------------------------------------


Metric = int | Fraction


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    spec: GeneratorSpec
    pdg: str
    metrics: dict[str, Metric] = field(default_factory=dict)

    @property
    def graph(self) -> PlanarDigraph:
        return parse_pdg(self.pdg)


def _index_line(entry: CorpusEntry, graph: PlanarDigraph) -> str:
    head = [
        entry.id,
        entry.spec.family,
        str(graph.n),
        str(graph.m),
        str(entry.spec.g_target),
        str(entry.spec.seed),
    ]
    tail = [f"{k}={format_fraction(v)}" for k, v in sorted(entry.metrics.items())]
    return " ".join(head + tail)


def write_corpus(directory: Path | str, entries: Iterable[CorpusEntry]) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    lines = []
    for entry in entries:
        (directory / f"{entry.id}.pdg").write_text(entry.pdg, encoding="utf-8")
        lines.append(_index_line(entry, entry.graph))
    (directory / INDEX_FILE).write_text("\n".join(lines) + "\n", encoding="utf-8")
    _LOGGER.info("Wrote %d corpus entries to %s", len(lines), directory)


def load_corpus(directory: Path | str) -> list[CorpusEntry]:
    directory = Path(directory)
    entries = []
    for line in (directory / INDEX_FILE).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        entry_id, family, n, _m, g, seed, *pairs = line.split()
        metrics: dict[str, Metric] = {}
        for pair in pairs:
            key, _, value = pair.partition("=")
            metrics[key] = parse_fraction(value)
        entries.append(
            CorpusEntry(
                id=entry_id,
                spec=GeneratorSpec(family, int(n), int(g), int(seed)),
                pdg=(directory / f"{entry_id}.pdg").read_text(encoding="utf-8"),
                metrics=metrics,
            )
        )
    return entries


def build_corpus(specs: Iterable[GeneratorSpec], guards: Guards | None = None) -> list[CorpusEntry]:
    """Generate each spec and fill in the metrics that finish within the guards.

    Oracles are used where they apply, solvers otherwise; a metric that hits a
    guard is left out rather than failing the entry.
    """
    guards = guards or Guards()
    entries = []
    for spec in specs:
        graph = generate(spec)
        metrics: dict[str, Metric] = {}
        try:
            metrics["tau"] = (
                brute_force_tau(graph)
                if graph.n <= BRUTE_FORCE_MAX_N
                else min_feedback_vertex_set(graph, guards).size
            )
        except GuardExceeded as err:
            _LOGGER.warning("%s: tau skipped (%s)", spec.entry_id, err)
        try:
            nu = len(max_dicycle_packing(graph, guards))
            metrics["nu"] = nu
            metrics["fas"] = min_feedback_arc_set(graph, guards, nu=nu).size
        except GuardExceeded as err:
            _LOGGER.warning("%s: nu / fas skipped (%s)", spec.entry_id, err)
        try:
            metrics["tau_star"] = fractional_tau_star(graph, guards).objective
        except GuardExceeded as err:
            _LOGGER.warning("%s: tau_star skipped (%s)", spec.entry_id, err)
        entries.append(
            CorpusEntry(spec.entry_id, spec, serialize_pdg(graph, spec.entry_id), metrics)
        )
    return entries
