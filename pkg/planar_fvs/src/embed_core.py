"""Embedded planar digraphs.

A :class:`PlanarDigraph` is a list of arcs plus a rotation system: for every
vertex, the cyclic (counter-clockwise) order of the arc-ends incident to it.
Arc-ends are called *darts* and encoded as integers:

    dart = 2 * arc + end      end 0 = tail-end, end 1 = head-end

so ``dart >> 1`` is the arc, ``dart ^ 1`` is the other end of the same arc, and
a dart doubles as an *arc-side*: the face traced through dart ``d`` is the
face on the left of ``d`` when walking away from its vertex.

Faces are the orbits of ``d -> succ(d ^ 1)`` where ``succ`` is the rotation
successor. They are computed once at construction and checked against Euler's
formula component by component, so every instance that exists is a genuine
plane embedding.

Nothing here depends on the proof machinery; :mod:`src.cycle_machinery`,
:mod:`src.solvers` and :mod:`src.instances` all build on it.
"""

from __future__ import annotations

import logging
import math
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property
from itertools import product

import networkx as nx

from src.const import DEFAULT_GUARD_CYCLES, MIN_BOUND_GIRTH
from src.errors import (
    DanglingEnd,
    DigirthViolation,
    EulerViolation,
    GuardExceeded,
    InvalidInstance,
    MultiArcViolation,
    NotConnected,
)

_LOGGER = logging.getLogger(__name__)

INFINITY = math.inf


def dart_arc(dart: int) -> int:
    return dart >> 1


def is_head_end(dart: int) -> bool:
    return bool(dart & 1)


def tail_dart(arc: int) -> int:
    return 2 * arc


def head_dart(arc: int) -> int:
    return 2 * arc + 1


@dataclass(frozen=True)
class Face:
    """One face: its boundary as a cyclic sequence of darts (arc-sides)."""

    index: int
    boundary: tuple[int, ...]

    @property
    def degree(self) -> int:
        # Bridges show up on both sides of the same face and count twice.
        return len(self.boundary)

    @property
    def arcs(self) -> tuple[int, ...]:
        return tuple(d >> 1 for d in self.boundary)


@dataclass(frozen=True)
class DiCycle:
    """A simple directed cycle, arcs in traversal order starting at the lowest arc id."""

    arcs: tuple[int, ...]
    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.arcs)

    @property
    def arc_set(self) -> frozenset[int]:
        return frozenset(self.arcs)


@dataclass(frozen=True)
class Component:
    """A connected component re-indexed as its own embedded digraph."""

    graph: PlanarDigraph
    vertices: tuple[int, ...]  # original vertex id of each new vertex
    arcs: tuple[int, ...]  # original arc id of each new arc


@dataclass(frozen=True)
class PlanarDigraph:
    """Validated embedded digraph. Build it with :func:`build_planar_digraph`."""

    n: int
    arcs: tuple[tuple[int, int], ...]
    rotation: tuple[tuple[int, ...], ...]
    g_declared: int
    faces: tuple[Face, ...]
    face_of: tuple[int, ...]  # dart -> face index

    @property
    def m(self) -> int:
        return len(self.arcs)

    def origin(self, dart: int) -> int:
        tail, head = self.arcs[dart >> 1]
        return head if dart & 1 else tail

    @cached_property
    def out_arcs(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for arc, (tail, _) in enumerate(self.arcs):
            out[tail].append(arc)
        return tuple(tuple(a) for a in out)

    @cached_property
    def in_arcs(self) -> tuple[tuple[int, ...], ...]:
        ins: list[list[int]] = [[] for _ in range(self.n)]
        for arc, (_, head) in enumerate(self.arcs):
            ins[head].append(arc)
        return tuple(tuple(a) for a in ins)

    @cached_property
    def vertex_component(self) -> tuple[int, ...]:
        return _label_components(self.n, self.arcs)

    @cached_property
    def component_count(self) -> int:
        return len(set(self.vertex_component))

    @property
    def is_connected(self) -> bool:
        return self.component_count <= 1

    @cached_property
    def outer_faces(self) -> frozenset[int]:
        """One outer face per component: the face of the first dart of its lowest vertex."""
        outer: dict[int, int] = {}
        for v in range(self.n):
            comp = self.vertex_component[v]
            if comp not in outer and self.rotation[v]:
                outer[comp] = self.face_of[self.rotation[v][0]]
        return frozenset(outer.values())

    @cached_property
    def face_component(self) -> tuple[int, ...]:
        return tuple(self.vertex_component[self.origin(f.boundary[0])] for f in self.faces)

    @cached_property
    def digirth(self) -> float:
        return digirth(self)

    def outer_face_of(self, component: int) -> int:
        for face in self.outer_faces:
            if self.face_component[face] == component:
                return face
        raise ValueError(f"component {component} has no faces")


def _label_components(n: int, arcs: Sequence[tuple[int, int]]) -> tuple[int, ...]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for tail, head in arcs:
        a, b = find(tail), find(head)
        if a != b:
            parent[max(a, b)] = min(a, b)
    # Label components by their lowest vertex, renumbered densely in vertex order.
    labels: dict[int, int] = {}
    out = []
    for v in range(n):
        root = find(v)
        if root not in labels:
            labels[root] = len(labels)
        out.append(labels[root])
    return tuple(out)


def build_planar_digraph(
    n: int,
    arcs: Iterable[tuple[int, int]],
    rotation: Iterable[Iterable[int]],
    g_declared: int = 0,
) -> PlanarDigraph:
    """Validate an arc list plus rotation system and precompute its faces.

    ``rotation[v]`` lists the darts at ``v`` in counter-clockwise order.
    ``g_declared`` is the digirth the instance claims (0 = not declared).
    """
    arc_list = tuple((int(t), int(h)) for t, h in arcs)
    rot = tuple(tuple(int(d) for d in r) for r in rotation)
    m = len(arc_list)

    if n < 0:
        raise InvalidInstance("vertex count must be non-negative")
    for arc, (tail, head) in enumerate(arc_list):
        if not (0 <= tail < n and 0 <= head < n):
            raise InvalidInstance(f"arc {arc} has an endpoint outside 0..{n - 1}")
        if tail == head:
            raise InvalidInstance(f"arc {arc} is a loop at vertex {tail}")
    if len(rot) != n:
        raise DanglingEnd(f"rotation lists {len(rot)} vertices, expected {n}")

    seen: set[int] = set()
    for v, darts in enumerate(rot):
        for dart in darts:
            if not 0 <= dart < 2 * m:
                raise DanglingEnd(f"vertex {v} lists unknown arc-end {dart}")
            if dart in seen:
                raise DanglingEnd(f"arc-end {dart} appears twice in the rotation")
            seen.add(dart)
            tail, head = arc_list[dart >> 1]
            if (head if dart & 1 else tail) != v:
                raise DanglingEnd(f"arc-end {dart} of arc {dart >> 1} is listed at vertex {v}")
    if len(seen) != 2 * m:
        missing = min(set(range(2 * m)) - seen)
        raise DanglingEnd(f"arc-end {missing} of arc {missing >> 1} is missing from the rotation")

    if g_declared >= MIN_BOUND_GIRTH:
        pairs: set[tuple[int, int]] = set()
        for arc, pair in enumerate(arc_list):
            if pair in pairs:
                raise MultiArcViolation(
                    f"arc {arc} repeats {pair[0]}->{pair[1]} but declared digirth is {g_declared}"
                )
            pairs.add(pair)

    faces, face_of = _trace_faces(m, rot)
    _check_euler(n, arc_list, rot, faces)

    return PlanarDigraph(
        n=n,
        arcs=arc_list,
        rotation=rot,
        g_declared=g_declared,
        faces=faces,
        face_of=face_of,
    )


def _trace_faces(
    m: int, rotation: tuple[tuple[int, ...], ...]
) -> tuple[tuple[Face, ...], tuple[int, ...]]:
    succ = [0] * (2 * m)
    for darts in rotation:
        for i, dart in enumerate(darts):
            succ[dart] = darts[(i + 1) % len(darts)]

    face_of = [-1] * (2 * m)
    faces: list[Face] = []
    for start in range(2 * m):
        if face_of[start] != -1:
            continue
        boundary = []
        dart = start
        while face_of[dart] == -1:
            face_of[dart] = len(faces)
            boundary.append(dart)
            dart = succ[dart ^ 1]
        faces.append(Face(index=len(faces), boundary=tuple(boundary)))
    return tuple(faces), tuple(face_of)


def _check_euler(
    n: int,
    arcs: tuple[tuple[int, int], ...],
    rotation: tuple[tuple[int, ...], ...],
    faces: tuple[Face, ...],
) -> None:
    labels = _label_components(n, arcs)
    verts: dict[int, int] = {}
    edges: dict[int, int] = {}
    face_count: dict[int, int] = {}
    for v in range(n):
        verts[labels[v]] = verts.get(labels[v], 0) + 1
    for tail, _ in arcs:
        edges[labels[tail]] = edges.get(labels[tail], 0) + 1
    for face in faces:
        tail, head = arcs[face.boundary[0] >> 1]
        comp = labels[tail]
        face_count[comp] = face_count.get(comp, 0) + 1
    for comp, nv in verts.items():
        if comp not in edges:
            continue
        chi = nv - edges[comp] + face_count.get(comp, 0)
        if chi != 2:
            raise EulerViolation(
                f"component {comp}: n - m + F = {nv} - {edges[comp]} + "
                f"{face_count.get(comp, 0)} = {chi}, expected 2"
            )


def faces(graph: PlanarDigraph) -> tuple[Face, ...]:
    """All faces; every dart (arc-side) is on exactly one of them."""
    return graph.faces


def face_degree_total(graph: PlanarDigraph) -> int:
    return sum(f.degree for f in graph.faces)


def euler_phi_total(graph: PlanarDigraph) -> int:
    """Σ (3·d(F) − 6) over all faces. Equals 6n − 12 on connected inputs."""
    if not graph.is_connected:
        raise NotConnected(f"graph has {graph.component_count} components")
    if graph.m == 0:
        # A lone vertex has a single face of degree 0.
        return -6
    return sum(3 * f.degree - 6 for f in graph.faces)


# --- Directed cycles -------------------------------------------------------


def _bfs_shortest_cycle_through(
    graph: PlanarDigraph,
    source: int,
    removed_vertices: frozenset[int],
    removed_arcs: frozenset[int],
) -> tuple[int, int] | None:
    """Shortest dicycle through ``source``: (length, closing arc), or None."""
    dist = {source: 0}
    parent: dict[int, int] = {}
    queue = deque([source])
    best: tuple[int, int] | None = None
    while queue:
        u = queue.popleft()
        if best is not None and dist[u] + 1 >= best[0]:
            break
        for arc in graph.out_arcs[u]:
            if arc in removed_arcs:
                continue
            w = graph.arcs[arc][1]
            if w in removed_vertices:
                continue
            if w == source:
                cand = (dist[u] + 1, arc)
                if best is None or cand < best:
                    best = cand
                continue
            if w not in dist:
                dist[w] = dist[u] + 1
                parent[w] = arc
                queue.append(w)
    if best is None:
        return None
    return best


def shortest_dicycle(
    graph: PlanarDigraph,
    removed_vertices: Iterable[int] = (),
    removed_arcs: Iterable[int] = (),
) -> DiCycle | None:
    """A shortest dicycle of ``graph`` minus the given vertices and arcs.

    Ties go to the lowest start vertex, then the lowest closing arc, so the
    answer is deterministic.
    """
    rv = frozenset(removed_vertices)
    ra = frozenset(removed_arcs)
    best: tuple[int, int, int] | None = None
    for s in range(graph.n):
        if s in rv:
            continue
        found = _bfs_shortest_cycle_through(graph, s, rv, ra)
        if found is None:
            continue
        cand = (found[0], s, found[1])
        if best is None or cand[0] < best[0]:
            best = cand
            if best[0] == 2:
                break
    if best is None:
        return None
    return _rebuild_cycle(graph, best[1], best[2], rv, ra)


def _rebuild_cycle(
    graph: PlanarDigraph,
    source: int,
    closing_arc: int,
    removed_vertices: frozenset[int],
    removed_arcs: frozenset[int],
) -> DiCycle:
    # Re-run the BFS recording parents; same traversal order, same tree.
    parent: dict[int, int] = {}
    seen = {source}
    queue = deque([source])
    target = graph.arcs[closing_arc][0]
    while queue and target not in seen:
        u = queue.popleft()
        for arc in graph.out_arcs[u]:
            if arc in removed_arcs:
                continue
            w = graph.arcs[arc][1]
            if w in removed_vertices or w in seen:
                continue
            seen.add(w)
            parent[w] = arc
            queue.append(w)
    path: list[int] = []
    v = target
    while v != source:
        arc = parent[v]
        path.append(arc)
        v = graph.arcs[arc][0]
    path.reverse()
    path.append(closing_arc)
    return make_dicycle(graph, path)


def make_dicycle(graph: PlanarDigraph, arcs: Sequence[int]) -> DiCycle:
    """Canonical DiCycle from arcs in traversal order (validated)."""
    if not arcs:
        raise ValueError("a dicycle needs at least one arc")
    seq = list(arcs)
    for i, arc in enumerate(seq):
        nxt = seq[(i + 1) % len(seq)]
        if graph.arcs[arc][1] != graph.arcs[nxt][0]:
            raise ValueError(f"arcs {arc} and {nxt} do not compose head-to-tail")
    start = seq.index(min(seq))
    seq = seq[start:] + seq[:start]
    vertices = tuple(graph.arcs[a][0] for a in seq)
    if len(set(vertices)) != len(vertices):
        raise ValueError("closed walk repeats a vertex; not a simple dicycle")
    return DiCycle(arcs=tuple(seq), vertices=vertices)


def digirth(graph: PlanarDigraph) -> float:
    """Length of a shortest dicycle, ``math.inf`` when the graph is acyclic."""
    best = INFINITY
    for s in range(graph.n):
        found = _bfs_shortest_cycle_through(graph, s, frozenset(), frozenset())
        if found is not None and found[0] < best:
            best = found[0]
            if best == 2:
                break
    return best


def check_declared_digirth(graph: PlanarDigraph) -> None:
    """Raise :class:`DigirthViolation` when the declared digirth is not met."""
    actual = graph.digirth
    if graph.g_declared and actual < graph.g_declared:
        raise DigirthViolation(
            f"declared digirth {graph.g_declared} but a dicycle of length {actual} exists"
        )


def to_networkx(graph: PlanarDigraph) -> nx.MultiDiGraph:
    """Arc ids become edge keys."""
    g = nx.MultiDiGraph()
    g.add_nodes_from(range(graph.n))
    for arc, (tail, head) in enumerate(graph.arcs):
        g.add_edge(tail, head, key=arc)
    return g


def is_acyclic(
    graph: PlanarDigraph,
    removed_vertices: Iterable[int] = (),
    removed_arcs: Iterable[int] = (),
) -> bool:
    g = to_networkx(graph)
    g.remove_nodes_from(list(removed_vertices))
    g.remove_edges_from(
        [(*graph.arcs[a], a) for a in removed_arcs if g.has_edge(*graph.arcs[a], a)]
    )
    return nx.is_directed_acyclic_graph(g)


def enumerate_dicycles(
    graph: PlanarDigraph, max_count_guard: int = DEFAULT_GUARD_CYCLES
) -> tuple[DiCycle, ...]:
    """All simple dicycles, sorted by (length, arc sequence).

    Parallel arcs give distinct dicycles through the same vertices.
    """
    by_pair: dict[tuple[int, int], list[int]] = {}
    for arc, pair in enumerate(graph.arcs):
        by_pair.setdefault(pair, []).append(arc)
    simple = nx.DiGraph()
    simple.add_nodes_from(range(graph.n))
    simple.add_edges_from(by_pair)

    cycles: list[DiCycle] = []
    for node_cycle in nx.simple_cycles(simple):
        steps = [
            by_pair[(node_cycle[i], node_cycle[(i + 1) % len(node_cycle)])]
            for i in range(len(node_cycle))
        ]
        for choice in product(*steps):
            cycles.append(make_dicycle(graph, choice))
            if len(cycles) > max_count_guard:
                raise GuardExceeded("cycles", max_count_guard)
    cycles.sort(key=lambda c: (len(c), c.arcs))
    _LOGGER.debug("Enumerated %d dicycles on n=%d m=%d", len(cycles), graph.n, graph.m)
    return tuple(cycles)


# --- Interiors and components ---------------------------------------------


def interior_faces(graph: PlanarDigraph, cycle: DiCycle) -> frozenset[int]:
    """Faces strictly inside a simple dicycle.

    Flood fill from the outer face of the cycle's component without crossing
    cycle arcs; whatever is not reached is inside.
    """
    on_cycle = cycle.arc_set
    comp = graph.vertex_component[cycle.vertices[0]]
    start = graph.outer_face_of(comp)
    outside = {start}
    queue = deque([start])
    while queue:
        face = queue.popleft()
        for dart in graph.faces[face].boundary:
            if dart >> 1 in on_cycle:
                continue
            other = graph.face_of[dart ^ 1]
            if other not in outside:
                outside.add(other)
                queue.append(other)
    return frozenset(
        f.index
        for f in graph.faces
        if graph.face_component[f.index] == comp and f.index not in outside
    )


def components(graph: PlanarDigraph) -> list[Component]:
    """Split into connected components, each embedded on its own."""
    groups: dict[int, list[int]] = {}
    for v in range(graph.n):
        groups.setdefault(graph.vertex_component[v], []).append(v)
    out = []
    for comp in sorted(groups):
        verts = groups[comp]
        new_vertex = {v: i for i, v in enumerate(verts)}
        arcs = [a for a in range(graph.m) if graph.vertex_component[graph.arcs[a][0]] == comp]
        new_arc = {a: i for i, a in enumerate(arcs)}
        sub = build_planar_digraph(
            len(verts),
            [(new_vertex[graph.arcs[a][0]], new_vertex[graph.arcs[a][1]]) for a in arcs],
            [[2 * new_arc[d >> 1] + (d & 1) for d in graph.rotation[v]] for v in verts],
            g_declared=graph.g_declared,
        )
        out.append(Component(graph=sub, vertices=tuple(verts), arcs=tuple(arcs)))
    return out
