"""Dicycle packings, uncrossing, the nesting forest and the region accounting.

The pipeline mirrors the upper-bound argument for feedback vertex sets in
planar digraphs of digirth ``g``:

    max_dicycle_packing -> uncross -> nesting_forest -> classify_pieces
                                                      -> check_claim1 / check_lemma1

Every quantity is an ``int`` or a :class:`fractions.Fraction`; verifiers
compare exactly. Interiors are face sets (see
:func:`src.embed_core.interior_faces`), so no coordinates are involved.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from src.const import MIN_BOUND_GIRTH, Guards
from src.embed_core import (
    DiCycle,
    PlanarDigraph,
    build_planar_digraph,
    enumerate_dicycles,
    euler_phi_total,
    head_dart,
    interior_faces,
    make_dicycle,
    tail_dart,
)
from src.errors import (
    CrossingInput,
    DigirthViolation,
    GuardExceeded,
    PreconditionViolated,
    UncrossingFailed,
    UnsupportedGirth,
)

_LOGGER = logging.getLogger(__name__)

OUTER: Literal["outer"] = "outer"
Node = int | Literal["outer"]


@dataclass(frozen=True)
class CycleCollection:
    cycles: tuple[DiCycle, ...]
    arc_disjoint: bool
    non_crossing: bool

    def __len__(self) -> int:
        return len(self.cycles)


def make_collection(graph: PlanarDigraph, cycles: Sequence[DiCycle]) -> CycleCollection:
    """Wrap cycles, computing both flags independently of how they were produced."""
    cycles = tuple(cycles)
    seen: set[int] = set()
    disjoint = True
    for c in cycles:
        if seen & c.arc_set:
            disjoint = False
        seen |= c.arc_set
    return CycleCollection(cycles, disjoint, is_non_crossing(graph, cycles))


def is_non_crossing(graph: PlanarDigraph, cycles: Sequence[DiCycle]) -> bool:
    """True iff every pair of interiors is disjoint or nested."""
    interiors = [interior_faces(graph, c) for c in cycles]
    return _first_crossing(interiors) is None


def _first_crossing(interiors: Sequence[frozenset[int]]) -> tuple[int, int] | None:
    for i in range(len(interiors)):
        for j in range(i + 1, len(interiors)):
            a, b = interiors[i], interiors[j]
            if a & b and not (a <= b or b <= a):
                return i, j
    return None


# --- Maximum packing --------------------------------------------------------


class _FamilySearch:
    """Branch and bound for a largest pairwise-compatible family of cycles.

    Candidates stay sorted shortest-first; we branch on the first one,
    include before exclude, so ties resolve to the lowest cycle ids.
    """

    def __init__(
        self,
        cycles: Sequence[DiCycle],
        node_limit: int,
        compatible: Callable[[int, int], bool] | None = None,
        target: int | None = None,
    ) -> None:
        self._masks = [_arc_mask(c) for c in cycles]
        self._lengths = [len(c) for c in cycles]
        self._node_limit = node_limit
        self._compatible = compatible
        self._target = target
        self._nodes = 0
        self._best: list[int] = []

    @property
    def nodes(self) -> int:
        return self._nodes

    def run(self) -> list[int]:
        order = sorted(range(len(self._masks)), key=lambda i: (self._lengths[i], i))
        self._visit(order, [])
        return list(self._best)

    def _done(self) -> bool:
        return self._target is not None and len(self._best) >= self._target

    def _visit(self, cands: list[int], chosen: list[int]) -> None:
        if len(chosen) > len(self._best):
            self._best = list(chosen)
        while cands and not self._done():
            self._nodes += 1
            if self._nodes > self._node_limit:
                raise GuardExceeded("nodes", self._node_limit)
            free = 0
            for c in cands:
                free |= self._masks[c]
            room = free.bit_count() // self._lengths[cands[0]]
            if len(chosen) + min(len(cands), room) <= len(self._best):
                return
            head, rest = cands[0], cands[1:]
            mask = self._masks[head]
            included = [
                d
                for d in rest
                if not mask & self._masks[d]
                and (self._compatible is None or self._compatible(head, d))
            ]
            chosen.append(head)
            self._visit(included, chosen)
            chosen.pop()
            cands = rest


def _arc_mask(cycle: DiCycle) -> int:
    mask = 0
    for arc in cycle.arcs:
        mask |= 1 << arc
    return mask


def max_dicycle_packing(graph: PlanarDigraph, guards: Guards | None = None) -> CycleCollection:
    """Maximum collection of arc-disjoint dicycles (exact)."""
    guards = guards or Guards()
    cycles = enumerate_dicycles(graph, guards.cycles)
    search = _FamilySearch(cycles, guards.nodes)
    picked = search.run()
    _LOGGER.debug(
        "Packing: %d of %d cycles chosen after %d nodes", len(picked), len(cycles), search.nodes
    )
    return make_collection(graph, [cycles[i] for i in sorted(picked)])


# --- Uncrossing -------------------------------------------------------------


def _strictly_between(x: int, a: int, b: int, size: int) -> bool:
    return 0 < (x - a) % size < (b - a) % size


def _chords_cross(p: tuple[int, int], q: tuple[int, int], size: int) -> bool:
    a, b = p
    return _strictly_between(q[0], a, b, size) != _strictly_between(q[1], a, b, size)


class _Redecomposer:
    """Re-split a balanced arc set into simple cycles with non-crossing transitions.

    Each vertex pairs incoming with outgoing union arcs by repeatedly matching
    rotation-adjacent in/out ends, which is a non-crossing matching. Closed
    trails that revisit a vertex are split there when swapping the two
    passages keeps every transition at that vertex non-crossing.
    """

    def __init__(self, graph: PlanarDigraph, union: frozenset[int]) -> None:
        self._graph = graph
        self._union = union
        self._pos: dict[int, int] = {}
        self._incoming: dict[int, list[int]] = {}
        self.transition: dict[int, int] = {}

    def run(self) -> list[DiCycle] | None:
        if not self._match_vertices():
            return None
        pending = self._trails()
        cycles: list[DiCycle] = []
        while pending:
            trail = pending.pop()
            split = self._split(trail)
            if split is not None:
                pending.extend(split)
                continue
            heads = [self._graph.arcs[a][1] for a in trail]
            if len(set(heads)) != len(heads):
                return None
            cycles.append(make_dicycle(self._graph, trail))
        return sorted(cycles, key=lambda c: (len(c), c.arcs))

    def _match_vertices(self) -> bool:
        graph = self._graph
        for v in range(graph.n):
            rotation = graph.rotation[v]
            for i, dart in enumerate(rotation):
                self._pos[dart] = i
            pending = [d for d in rotation if d >> 1 in self._union]
            self._incoming[v] = [d for d in pending if d & 1]
            while pending:
                for i in range(len(pending)):
                    a, b = pending[i], pending[(i + 1) % len(pending)]
                    if (a & 1) != (b & 1):
                        break
                else:
                    return False
                incoming, outgoing = (a, b) if a & 1 else (b, a)
                self.transition[incoming] = outgoing
                pending.remove(a)
                pending.remove(b)
        return True

    def _trails(self) -> list[list[int]]:
        seen: set[int] = set()
        trails = []
        for start in sorted(self._union):
            if start in seen:
                continue
            trail = []
            arc = start
            while arc not in seen:
                seen.add(arc)
                trail.append(arc)
                arc = self.transition[head_dart(arc)] >> 1
            trails.append(trail)
        return trails

    def _split(self, trail: list[int]) -> tuple[list[int], list[int]] | None:
        graph = self._graph
        visits: dict[int, list[int]] = {}
        for i, arc in enumerate(trail):
            visits.setdefault(graph.arcs[arc][1], []).append(i)
        length = len(trail)
        for v in sorted(visits):
            idx = visits[v]
            for x in range(len(idx)):
                for y in range(x + 1, len(idx)):
                    i, j = idx[x], idx[y]
                    in_i, out_i = head_dart(trail[i]), tail_dart(trail[(i + 1) % length])
                    in_j, out_j = head_dart(trail[j]), tail_dart(trail[(j + 1) % length])
                    if not self._swap_is_planar(v, (in_i, out_j), (in_j, out_i)):
                        continue
                    self.transition[in_i] = out_j
                    self.transition[in_j] = out_i
                    return trail[i + 1 : j + 1], trail[j + 1 :] + trail[: i + 1]
        return None

    def _swap_is_planar(self, v: int, first: tuple[int, int], second: tuple[int, int]) -> bool:
        size = len(self._graph.rotation[v])
        pos = self._pos
        chords = [(pos[first[0]], pos[first[1]]), (pos[second[0]], pos[second[1]])]
        for incoming in self._incoming[v]:
            if incoming in (first[0], second[0]):
                continue
            chords.append((pos[incoming], pos[self.transition[incoming]]))
        for p in range(2):
            for q in range(p + 1, len(chords)):
                if _chords_cross(chords[p], chords[q], size):
                    return False
        return True


def uncross(
    graph: PlanarDigraph, coll: CycleCollection, guards: Guards | None = None
) -> CycleCollection:
    """Non-crossing collection of the same cardinality built from ``coll``'s arcs."""
    guards = guards or Guards()
    if coll.non_crossing and is_non_crossing(graph, coll.cycles):
        return coll
    if is_non_crossing(graph, coll.cycles):
        return CycleCollection(coll.cycles, coll.arc_disjoint, True)

    union = frozenset(a for c in coll.cycles for a in c.arcs)
    cycles = _Redecomposer(graph, union).run()
    if cycles is not None and len(cycles) > len(coll):
        raise UncrossingFailed(
            f"re-decomposition found {len(cycles)} cycles from a packing of {len(coll)}; "
            "the input packing was not maximum"
        )
    if cycles is not None and len(cycles) == len(coll) and is_non_crossing(graph, cycles):
        _LOGGER.debug("Uncrossed %d cycles by re-decomposition", len(cycles))
        return make_collection(graph, cycles)

    _LOGGER.debug("Re-decomposition gave %s; searching the union arcs", cycles and len(cycles))
    candidates = [c for c in enumerate_dicycles(graph, guards.cycles) if c.arc_set <= union]
    interiors = [interior_faces(graph, c) for c in candidates]

    def compatible(i: int, j: int) -> bool:
        a, b = interiors[i], interiors[j]
        return not a & b or a <= b or b <= a

    picked = _FamilySearch(candidates, guards.nodes, compatible, target=len(coll)).run()
    if len(picked) != len(coll):
        raise UncrossingFailed(
            f"no non-crossing family of {len(coll)} cycles inside the union "
            f"(best {len(picked)})"
        )
    return make_collection(graph, [candidates[i] for i in sorted(picked)])


# --- Nesting forest ---------------------------------------------------------


@dataclass(frozen=True)
class CycleForest:
    cycles: tuple[DiCycle, ...]
    interiors: tuple[frozenset[int], ...]
    parent: tuple[int | None, ...]
    children: tuple[tuple[int, ...], ...]
    roots: tuple[int, ...]

    @property
    def k_infinity(self) -> int:
        return len(self.roots)

    def depth(self, node: int) -> int:
        d = 0
        p = self.parent[node]
        while p is not None:
            d += 1
            p = self.parent[p]
        return d


def nesting_forest(graph: PlanarDigraph, coll: CycleCollection) -> CycleForest:
    """Parent of a cycle = the smallest cycle whose interior strictly contains its own."""
    interiors = tuple(interior_faces(graph, c) for c in coll.cycles)
    crossing = _first_crossing(interiors)
    if crossing is not None:
        raise CrossingInput(f"cycles {crossing[0]} and {crossing[1]} cross")
    parent: list[int | None] = []
    for i, inner in enumerate(interiors):
        above = [j for j, outer in enumerate(interiors) if j != i and inner < outer]
        parent.append(min(above, key=lambda j: (len(interiors[j]), j)) if above else None)
    children: list[list[int]] = [[] for _ in interiors]
    for i, p in enumerate(parent):
        if p is not None:
            children[p].append(i)
    roots = tuple(i for i, p in enumerate(parent) if p is None)
    return CycleForest(
        cycles=coll.cycles,
        interiors=interiors,
        parent=tuple(parent),
        children=tuple(tuple(c) for c in children),
        roots=roots,
    )


def _family(forest: CycleForest, node: Node) -> tuple[int | None, tuple[int, ...]]:
    """(C_0, the cycles bounding the region from inside) for a node."""
    if node == OUTER:
        return None, forest.roots
    return node, forest.children[node]


def region_faces(graph: PlanarDigraph, forest: CycleForest, node: Node) -> frozenset[int]:
    top, inner = _family(forest, node)
    if top is None:
        base = frozenset(range(len(graph.faces)))
    else:
        base = forest.interiors[top]
    removed: set[int] = set()
    for child in inner:
        removed |= forest.interiors[child]
    return base - removed


def _phi(graph: PlanarDigraph, face_ids: frozenset[int] | set[int]) -> int:
    return sum(3 * graph.faces[f].degree - 6 for f in face_ids)


def region_phi(graph: PlanarDigraph, forest: CycleForest, node: Node) -> int:
    """Σ (3d(F) − 6) over the faces of the region of ``node`` (or the outer region)."""
    return _phi(graph, region_faces(graph, forest, node))


# --- Pieces and the incidence graph H --------------------------------------


@dataclass(frozen=True)
class Piece:
    faces: frozenset[int]
    boundary: tuple[int, ...]  # boundary arcs, ℓ = len(boundary)
    owners: tuple[int, ...]  # forest node owning each boundary arc
    kind: int  # 1, 2 or 3
    phi: int

    @property
    def length(self) -> int:
        return len(self.boundary)


def _pieces_of(
    graph: PlanarDigraph, forest: CycleForest, node: Node
) -> tuple[list[frozenset[int]], dict[int, int]]:
    """Maximal connected parts of the region, and arc -> owning cycle for its boundary."""
    top, inner = _family(forest, node)
    family = ([top] if top is not None else []) + list(inner)
    owner = {arc: c for c in family for arc in forest.cycles[c].arcs}
    region = region_faces(graph, forest, node)
    pieces = []
    seen: set[int] = set()
    for start in sorted(region):
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            face = queue.popleft()
            for dart in graph.faces[face].boundary:
                if dart >> 1 in owner:
                    continue
                other = graph.face_of[dart ^ 1]
                if other not in comp:
                    comp.add(other)
                    queue.append(other)
        seen |= comp
        pieces.append(frozenset(comp))
    return pieces, owner


@dataclass(frozen=True)
class IncidenceBipartite:
    """Planar bipartite graph H: cycles (U) versus vertices shared by two of them (V).

    ``embedding`` numbers U nodes ``0..|U|-1`` then V nodes; every arc goes from
    a U node to a V node. ``face_degrees`` are the degrees of the faces of H in
    the plane (components merged where they share a face).
    """

    cycles: tuple[int, ...]
    shared: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    embedding: PlanarDigraph
    face_degrees: tuple[int, ...]

    @property
    def u_size(self) -> int:
        return len(self.cycles)

    def v_degree(self, vertex: int) -> int:
        return sum(1 for _, v in self.edges if v == vertex)


def _corner_face(graph: PlanarDigraph, vertex: int, corner: int) -> int:
    rot = graph.rotation[vertex]
    return graph.face_of[rot[(corner + 1) % len(rot)]]


def build_incidence_bipartite(
    graph: PlanarDigraph, forest: CycleForest, node: Node
) -> IncidenceBipartite:
    """H for the region of ``node``: U = C_0 (unless outer) and the cycles directly inside."""
    top, inner = _family(forest, node)
    family = ([top] if top is not None else []) + list(inner)
    on_cycles: dict[int, list[int]] = {}
    for c in family:
        for v in forest.cycles[c].vertices:
            on_cycles.setdefault(v, []).append(c)
    shared = tuple(sorted(v for v, cs in on_cycles.items() if len(cs) >= 2))
    shared_set = set(shared)
    u_index = {c: i for i, c in enumerate(family)}
    v_index = {v: len(family) + i for i, v in enumerate(shared)}
    all_faces = frozenset(range(len(graph.faces)))

    def side(c: int) -> frozenset[int]:
        # Where the node for cycle c sits: outside C_0, inside every other cycle.
        inside = forest.interiors[c]
        return all_faces - inside if c == top else inside

    # Rotation at a cycle node: shared vertices in the order met while walking
    # the cycle with the node's side on the left.
    cycle_order: dict[int, list[int]] = {}
    for c in family:
        cyc = forest.cycles[c]
        forward = graph.face_of[tail_dart(cyc.arcs[0])] in side(c)
        verts = list(cyc.vertices) if forward else list(reversed(cyc.vertices))
        cycle_order[c] = [v for v in verts if v in shared_set]

    edges: list[tuple[int, int]] = []
    arc_of: dict[tuple[int, int], int] = {}
    for c in family:
        for v in cycle_order[c]:
            arc_of[(c, v)] = len(edges)
            edges.append((c, v))

    # Rotation at a shared vertex: one edge per cycle through it, placed in the
    # sector of corners lying on that cycle's node side.
    vertex_order: dict[int, list[int]] = {}
    for v in shared:
        placed = []
        for c in on_cycles[v]:
            s = side(c)
            corners = [p for p in range(len(graph.rotation[v])) if _corner_face(graph, v, p) in s]
            placed.append((min(corners), c))
        vertex_order[v] = [c for _, c in sorted(placed)]

    rotation: list[list[int]] = []
    for c in family:
        rotation.append([2 * arc_of[(c, v)] for v in cycle_order[c]])
    for v in shared:
        rotation.append([2 * arc_of[(c, v)] + 1 for c in vertex_order[v]])
    embedding = build_planar_digraph(
        len(family) + len(shared),
        [(u_index[c], v_index[v]) for c, v in edges],
        rotation,
    )

    # Faces of H correspond to pieces of the region; orbits of a disconnected H
    # that land in the same piece are one face of the plane.
    pieces, _ = _pieces_of(graph, forest, node)
    piece_of_face = {f: i for i, piece in enumerate(pieces) for f in piece}
    degree_by_piece = [0] * len(pieces)
    for face in embedding.faces:
        # The face holds the corner just before its dart at a shared vertex,
        # i.e. the region corner just before that cycle's sector in G.
        v_dart = next(d for d in face.boundary if d & 1)
        g_vertex = shared[embedding.origin(v_dart) - len(family)]
        cycle = family[embedding.arcs[v_dart >> 1][0]]
        corner = _corner_before_sector(graph, g_vertex, side(cycle))
        degree_by_piece[piece_of_face[_corner_face(graph, g_vertex, corner)]] += face.degree

    return IncidenceBipartite(
        cycles=tuple(family),
        shared=shared,
        edges=tuple(edges),
        embedding=embedding,
        face_degrees=tuple(degree_by_piece),
    )


def _corner_before_sector(graph: PlanarDigraph, vertex: int, sector: frozenset[int]) -> int:
    size = len(graph.rotation[vertex])
    in_sector = [_corner_face(graph, vertex, p) in sector for p in range(size)]
    start = next(p for p in range(size) if in_sector[p] and not in_sector[p - 1])
    return (start - 1) % size


def bipartite_from_embedding(embedding: PlanarDigraph, u_size: int) -> IncidenceBipartite:
    """Wrap an arbitrary connected bipartite embedding (arcs U -> V) for :func:`check_lemma1`."""
    if not embedding.is_connected:
        raise PreconditionViolated("H must be connected when built from a bare embedding")
    for tail, head in embedding.arcs:
        if not (tail < u_size <= head):
            raise PreconditionViolated("every edge must join a U node to a V node")
    return IncidenceBipartite(
        cycles=tuple(range(u_size)),
        shared=tuple(range(u_size, embedding.n)),
        edges=tuple(embedding.arcs),
        embedding=embedding,
        face_degrees=tuple(f.degree for f in embedding.faces) or (0,),
    )


def check_lemma1(h: IncidenceBipartite) -> bool:
    """At most 2|U| − 4 faces of degree ≥ 6, given faces ≥ 4 and V-degrees ≥ 2."""
    for v in h.shared:
        if h.v_degree(v) < 2:
            raise PreconditionViolated(f"V vertex {v} has degree {h.v_degree(v)} < 2")
    for i, d in enumerate(h.face_degrees):
        if d < 4:
            raise PreconditionViolated(f"face {i} of H has degree {d} < 4")
    big = sum(1 for d in h.face_degrees if d >= 6)
    return big <= 2 * h.u_size - 4


# --- Region classification and the per-region claim -------------------------


def claim1_bound(k: int, g: int, outer: bool = False) -> Fraction:
    """Lower bound on φ for a node with k children (or the outer region with k roots)."""
    half = Fraction(3, 2)
    if outer:
        return half * k * (g - 2) + (6 if g >= 6 else 3)
    return half * (g - 2) * k + half * g + (3 if g >= 6 else 0)


@dataclass(frozen=True)
class RegionReport:
    node: Node
    k: int
    phi: int
    pieces: tuple[Piece, ...]
    cycle_lengths: tuple[int, ...]
    intersecting: bool
    g: int
    claim_bound: Fraction
    claim_holds: bool
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def claim_tight(self) -> bool:
        return self.phi == self.claim_bound

    def count(self, kind: int) -> int:
        return sum(1 for p in self.pieces if p.kind == kind)

    @property
    def all_hold(self) -> bool:
        return self.claim_holds and all(self.checks.values())


def classify_pieces(
    graph: PlanarDigraph, forest: CycleForest, node: Node, g: int | None = None
) -> RegionReport:
    """Type every piece of the region of ``node`` and evaluate the claim at that node."""
    if g is None:
        g = graph.g_declared or int(graph.digirth)
    if g < MIN_BOUND_GIRTH:
        raise UnsupportedGirth(f"region accounting needs digirth ≥ {MIN_BOUND_GIRTH}, got {g}")
    top, inner = _family(forest, node)
    family = ([top] if top is not None else []) + list(inner)
    pieces_faces, owner = _pieces_of(graph, forest, node)

    pieces: list[Piece] = []
    for faces_ in pieces_faces:
        boundary = tuple(
            sorted(
                {d >> 1 for f in faces_ for d in graph.faces[f].boundary if d >> 1 in owner}
            )
        )
        owners = tuple(owner[a] for a in boundary)
        kind = _piece_kind(graph, forest, boundary, owners, g)
        pieces.append(Piece(faces_, boundary, owners, kind, _phi(graph, faces_)))

    phi = sum(p.phi for p in pieces)
    lengths = tuple(len(forest.cycles[c]) for c in family)
    touching: dict[int, int] = {}
    for c in family:
        for v in forest.cycles[c].vertices:
            touching[v] = touching.get(v, 0) + 1
    intersecting = any(count >= 2 for count in touching.values())
    k = len(inner)
    outer = top is None

    checks: dict[str, bool] = {
        "phi_is_sum_of_pieces": phi == region_phi(graph, forest, node),
        "boundary_length_sum": sum(p.length for p in pieces) == sum(lengths),
        "pieces_lemma2": all(p.phi >= 3 * p.length - 6 for p in pieces),
        "type2_length_budget": sum(lengths) >= len(family) * g + sum(
            1 for p in pieces if p.kind == 2
        ),
    }
    if not intersecting and family:
        checks["disjoint_case"] = phi >= sum(3 * n + 6 for n in lengths) - 12
    if intersecting:
        h = build_incidence_bipartite(graph, forest, node)
        checks["pieces_match_h_faces"] = len(h.face_degrees) == len(pieces)
        checks["lemma1"] = check_lemma1(h)
        checks["type3_count"] = sum(1 for p in pieces if p.kind == 3) <= 2 * len(family) - 4

    bound = claim1_bound(k, g, outer=outer)
    report = RegionReport(
        node=node,
        k=k,
        phi=phi,
        pieces=tuple(pieces),
        cycle_lengths=lengths,
        intersecting=intersecting,
        g=g,
        claim_bound=bound,
        claim_holds=phi >= bound,
        checks=checks,
    )
    _LOGGER.debug(
        "Node %s: k=%d phi=%d bound=%s pieces=%d (T2=%d, T3=%d)",
        node,
        k,
        phi,
        bound,
        len(pieces),
        report.count(2),
        report.count(3),
    )
    return report


def _piece_kind(
    graph: PlanarDigraph,
    forest: CycleForest,
    boundary: tuple[int, ...],
    owners: tuple[int, ...],
    g: int,
) -> int:
    if len(boundary) >= 4:
        return 1
    if len(boundary) < 3:
        raise PreconditionViolated(f"piece bounded by {len(boundary)} arcs; graph is not simple")
    distinct = set(owners)
    if len(distinct) == 3:
        return 3
    if len(distinct) == 1:
        raise DigirthViolation("piece bounded by a directed triangle; digirth < 4")

    plus = next(c for c in distinct if owners.count(c) == 2)
    e3 = next(a for a, c in zip(boundary, owners, strict=True) if c != plus)
    cycle = forest.cycles[plus]
    pair = [a for a in boundary if a != e3]
    i, j = cycle.arcs.index(pair[0]), cycle.arcs.index(pair[1])
    if (i + 1) % len(cycle) == j:
        first, second = pair
    elif (j + 1) % len(cycle) == i:
        second, first = pair
    else:
        raise PreconditionViolated("type-2 piece whose two arcs of C+ are not consecutive")
    start, end = graph.arcs[first][0], graph.arcs[second][1]
    if graph.arcs[e3] == (end, start):
        raise DigirthViolation(f"arcs {first}, {second}, {e3} form a directed triangle")
    if graph.arcs[e3] != (start, end):
        raise PreconditionViolated("type-2 piece whose third arc does not span the other two")
    if len(cycle) - 1 < g:
        raise DigirthViolation(
            f"arc {e3} shortcuts cycle {plus} to a dicycle of length {len(cycle) - 1} < {g}"
        )
    return 2


def check_claim1(report: RegionReport, g: int) -> bool:
    """φ against the claim bound (outer variant for the outer region), exactly."""
    return report.phi >= claim1_bound(report.k, g, outer=report.node == OUTER)


def check_lemma2(graph: PlanarDigraph, face_set: Sequence[int]) -> bool:
    """Σ_{F∉S}(3d(F) − 6) ≥ Σ_{F∈S}(3d(F) + 6) − 12 for cycle-bounded, vertex-disjoint S."""
    if not graph.is_connected:
        raise PreconditionViolated("G must be connected")
    chosen = set(face_set)
    used: set[int] = set()
    for f in sorted(chosen):
        boundary = graph.faces[f].boundary
        verts = [graph.origin(d) for d in boundary]
        arcs = [d >> 1 for d in boundary]
        if len(set(verts)) != len(verts) or len(set(arcs)) != len(arcs) or len(verts) < 2:
            raise PreconditionViolated(f"face {f} is not bounded by a cycle")
        if used & set(verts):
            raise PreconditionViolated(f"face {f} shares a vertex with another face of S")
        used |= set(verts)
    lhs = sum(3 * face.degree - 6 for face in graph.faces if face.index not in chosen)
    rhs = sum(3 * graph.faces[f].degree + 6 for f in chosen) - 12
    return lhs >= rhs


def packing_bound(n: int, g: int) -> Fraction:
    """Upper bound on a non-crossing dicycle packing: (2n−5)/(g−1), or (2n−6)/g for g ≥ 6."""
    if g < MIN_BOUND_GIRTH:
        raise UnsupportedGirth(f"packing bound needs g ≥ {MIN_BOUND_GIRTH}, got {g}")
    if n < 3:
        raise PreconditionViolated("packing bound needs n ≥ 3")
    if g >= 6:
        return Fraction(2 * n - 6, g)
    return Fraction(2 * n - 5, g - 1)


# --- Whole-component proof trace --------------------------------------------


@dataclass(frozen=True)
class ProofTrace:
    n: int
    m: int
    g: int
    nu: int
    forest: CycleForest | None
    regions: tuple[RegionReport, ...]
    checks: dict[str, bool]

    @property
    def all_hold(self) -> bool:
        return all(self.checks.values()) and all(r.all_hold for r in self.regions)


def verify_component(graph: PlanarDigraph, g: int, guards: Guards | None = None) -> ProofTrace:
    """Run packing → uncross → forest → per-node claims on one connected component."""
    guards = guards or Guards()
    if not graph.is_connected:
        raise PreconditionViolated("verify_component needs a connected graph")
    packing = max_dicycle_packing(graph, guards)
    if not packing.cycles:
        return ProofTrace(graph.n, graph.m, g, 0, None, (), {})
    uncrossed = uncross(graph, packing, guards)
    forest = nesting_forest(graph, uncrossed)
    nodes: list[Node] = [*range(len(forest.cycles)), OUTER]
    regions = tuple(classify_pieces(graph, forest, node, g) for node in nodes)
    total = euler_phi_total(graph)
    nu = len(uncrossed)
    checks = {
        "uncross_cardinality": nu == len(packing),
        "uncross_non_crossing": is_non_crossing(graph, uncrossed.cycles),
        "phi_partition": sum(r.phi for r in regions) == total == 6 * graph.n - 12,
        "aggregate": total >= (3 * g - 3) * nu + 3,
        "packing_bound": nu <= packing_bound(graph.n, g),
    }
    if g >= 6:
        checks["aggregate_g6"] = total >= 3 * g * nu + 6
    return ProofTrace(graph.n, graph.m, g, nu, forest, regions, checks)
