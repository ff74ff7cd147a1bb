"""Embedded multigraphs on closed orientable surfaces, as combinatorial maps.

A map is stored as a pair of permutations acting on darts (edge-ends).
Edge k owns darts 2k and 2k+1; the involution alpha swaps the two darts
of an edge, and sigma rotates the darts around their origin vertex in
anti-clockwise order.

Orientation convention: with anti-clockwise vertex rotations, the face
permutation phi = sigma o alpha traces every facial walk clockwise, so
each face lies to the right of its boundary walk.  A dart is read as
"traverse the edge away from its origin"; the walk step after dart d
continues with sigma(alpha(d)).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence


class MapStructureError(ValueError):
    """Raised when an operation receives a structurally invalid map."""


class WalkGluingError(ValueError):
    """Raised when a set of facial walks cannot be glued into an oriented map."""

    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


@dataclass(frozen=True)
class Dart:
    id: int
    edge: object
    origin: object

    @property
    def partner_id(self) -> int:
        return self.id ^ 1


@dataclass(frozen=True)
class Defect:
    code: str
    message: str
    advisory: bool = False


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    defects: tuple[Defect, ...] = ()

    def advisories(self) -> tuple[Defect, ...]:
        return tuple(d for d in self.defects if d.advisory)


@dataclass(frozen=True)
class FacialWalk:
    """One face boundary, traced clockwise (face on the right).

    darts[i] starts at vertices[i] and runs along edges[i]; the dart list
    is rotated so that it begins at its smallest dart id.
    """

    darts: tuple[int, ...]
    vertices: tuple
    edges: tuple

    @property
    def length(self) -> int:
        return len(self.darts)


@dataclass(frozen=True)
class EmbeddedMap:
    """Combinatorial map: vertex rotation sigma and edge pairing alpha on darts.

    vertices and edges are identifier tuples in display order; dart_origin
    maps each dart to the vertex it emanates from.
    """

    vertices: tuple
    edges: tuple
    sigma: tuple[int, ...]
    alpha: tuple[int, ...]
    dart_origin: tuple

    @property
    def n_darts(self) -> int:
        return len(self.sigma)

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def edge_of(self, dart: int):
        return self.edges[dart // 2]

    def origin_of(self, dart: int):
        return self.dart_origin[dart]

    def dart(self, dart: int) -> Dart:
        return Dart(dart, self.edge_of(dart), self.dart_origin[dart])

    def endpoints(self, edge_index: int) -> tuple:
        return (self.dart_origin[2 * edge_index], self.dart_origin[2 * edge_index + 1])

    def darts_at(self, vertex) -> tuple[int, ...]:
        return tuple(d for d in range(self.n_darts) if self.dart_origin[d] == vertex)

    def degree(self, vertex) -> int:
        return sum(1 for v in self.dart_origin if v == vertex)

    def rotation_at(self, vertex) -> tuple[int, ...]:
        """The sigma-cycle at vertex, rotated to start at its smallest dart."""
        anchor = min(self.darts_at(vertex))
        cyc = [anchor]
        d = self.sigma[anchor]
        while d != anchor:
            cyc.append(d)
            d = self.sigma[d]
        return tuple(cyc)


def make_map(edges: Sequence[tuple], rotations: Mapping) -> EmbeddedMap:
    """Build a map from edge declarations and per-vertex rotation lists.

    edges: ordered (name, (u, v)) pairs; edge k receives darts 2k (at u)
    and 2k+1 (at v).  rotations: vertex -> anti-clockwise list of tokens,
    each an edge name or a (name, end) pair; the explicit end is required
    exactly when the edge is a loop.
    """
    edge_names = []
    ends = {}
    for name, (u, v) in edges:
        if name in ends:
            raise MapStructureError(f"duplicate edge name {name!r}")
        ends[name] = (u, v)
        edge_names.append(name)
    index = {name: k for k, name in enumerate(edge_names)}

    n = 2 * len(edge_names)
    sigma = [-1] * n
    origin: list = [None] * n
    used = set()
    for vertex, tokens in rotations.items():
        darts = []
        for tok in tokens:
            if isinstance(tok, tuple):
                name, end = tok
                if name not in index:
                    raise MapStructureError(f"unknown edge {name!r} at vertex {vertex!r}")
                if end not in (0, 1):
                    raise MapStructureError(f"bad end selector {end!r} for edge {name!r}")
                if ends[name][end] != vertex:
                    raise MapStructureError(
                        f"edge {name!r} end {end} is not incident to vertex {vertex!r}")
                d = 2 * index[name] + end
            else:
                name = tok
                if name not in index:
                    raise MapStructureError(f"unknown edge {name!r} at vertex {vertex!r}")
                u, v = ends[name]
                if u == v:
                    raise MapStructureError(
                        f"loop {name!r} needs an end selector in the rotation at {vertex!r}")
                if vertex == u:
                    d = 2 * index[name]
                elif vertex == v:
                    d = 2 * index[name] + 1
                else:
                    raise MapStructureError(
                        f"edge {name!r} is not incident to vertex {vertex!r}")
            if d in used:
                raise MapStructureError(
                    f"dart of edge {name!r} listed twice (vertex {vertex!r})")
            used.add(d)
            darts.append(d)
        for i, d in enumerate(darts):
            sigma[d] = darts[(i + 1) % len(darts)]
            origin[d] = vertex
    if len(used) != n:
        missing = sorted(set(range(n)) - used)
        raise MapStructureError(f"darts never placed in a rotation: {missing}")
    return EmbeddedMap(
        vertices=tuple(rotations.keys()),
        edges=tuple(edge_names),
        sigma=tuple(sigma),
        alpha=tuple(d ^ 1 for d in range(n)),
        dart_origin=tuple(origin),
    )


def validate(m: EmbeddedMap) -> ValidationReport:
    defects: list[Defect] = []
    n = m.n_darts

    if n == 0:
        return ValidationReport(False, (Defect("empty-map", "map has no darts"),))
    if len(m.alpha) != n or len(m.dart_origin) != n or n != 2 * len(m.edges):
        defects.append(Defect("length-mismatch",
                              "sigma/alpha/dart_origin/edge lengths disagree"))
        return ValidationReport(False, tuple(defects))

    if sorted(m.sigma) != list(range(n)):
        defects.append(Defect("sigma-not-permutation", "sigma is not a permutation"))
    if any(m.alpha[d] != (d ^ 1) for d in range(n)):
        defects.append(Defect("alpha-not-edge-pairing",
                              "alpha must swap darts 2k and 2k+1"))
    vset = set(m.vertices)
    if len(vset) != len(m.vertices):
        defects.append(Defect("duplicate-vertex", "vertex listed twice"))
    if any(v not in vset for v in m.dart_origin):
        defects.append(Defect("origin-out-of-range",
                              "dart origin is not a listed vertex"))
    if defects:
        return ValidationReport(False, tuple(defects))

    if any(m.dart_origin[m.sigma[d]] != m.dart_origin[d] for d in range(n)):
        defects.append(Defect("sigma-mixes-vertices",
                              "a sigma cycle crosses between vertices"))
    present = set(m.dart_origin)
    for v in m.vertices:
        if v not in present:
            defects.append(Defect("isolated-vertex", f"vertex {v!r} has no darts"))

    # transitivity of <sigma, alpha> on darts
    seen = {0}
    stack = [0]
    while stack:
        d = stack.pop()
        for e in (m.sigma[d], d ^ 1):
            if e not in seen:
                seen.add(e)
                stack.append(e)
    if len(seen) != n:
        defects.append(Defect("disconnected", "underlying surface is disconnected"))

    ok = not defects

    for k in range(len(m.edges)):
        if m.dart_origin[2 * k] == m.dart_origin[2 * k + 1]:
            defects.append(Defect("loop-present",
                                  f"edge {m.edges[k]!r} is a loop", advisory=True))
            break
    if any(m.degree(v) == 1 for v in m.vertices):
        defects.append(Defect("degree-one-vertex",
                              "a vertex has degree 1", advisory=True))
    return ValidationReport(ok, tuple(defects))


def _checked(m: EmbeddedMap) -> EmbeddedMap:
    report = validate(m)
    if not report.ok:
        codes = ", ".join(d.code for d in report.defects if not d.advisory)
        raise MapStructureError(f"invalid map: {codes}")
    return m


def facial_walks(m: EmbeddedMap) -> tuple[FacialWalk, ...]:
    """All face boundaries as clockwise closed walks, one per phi-orbit.

    Walks are listed by their smallest dart; each walk's dart list starts
    at that dart, so the output is fully determined by (sigma, alpha).
    """
    _checked(m)
    walks = []
    seen = [False] * m.n_darts
    for d0 in range(m.n_darts):
        if seen[d0]:
            continue
        orbit = []
        d = d0
        while not seen[d]:
            seen[d] = True
            orbit.append(d)
            d = m.sigma[d ^ 1]
        walks.append(FacialWalk(
            darts=tuple(orbit),
            vertices=tuple(m.dart_origin[x] for x in orbit),
            edges=tuple(m.edge_of(x) for x in orbit),
        ))
    return tuple(walks)


def euler_characteristic(m: EmbeddedMap) -> int:
    return m.order - m.n_edges + len(facial_walks(m))


def genus(m: EmbeddedMap) -> int:
    chi = euler_characteristic(m)
    if chi % 2 != 0 or chi > 2:
        raise MapStructureError(f"characteristic {chi} is not that of a closed "
                                "orientable surface")
    return (2 - chi) // 2


def degree_sequence(m: EmbeddedMap) -> tuple[int, ...]:
    return tuple(sorted((m.degree(v) for v in m.vertices), reverse=True))


def face_degree_sequence(m: EmbeddedMap) -> tuple[int, ...]:
    return tuple(sorted((w.length for w in facial_walks(m)), reverse=True))


def mirror(m: EmbeddedMap) -> EmbeddedMap:
    """The reflected map: every vertex rotation reversed."""
    inv = [0] * m.n_darts
    for d in range(m.n_darts):
        inv[m.sigma[d]] = d
    return EmbeddedMap(m.vertices, m.edges, tuple(inv), m.alpha, m.dart_origin)


def relabel(m: EmbeddedMap,
            edge_order: Optional[Sequence[int]] = None,
            flips: Optional[Sequence[int]] = None,
            rng: Optional[random.Random] = None) -> EmbeddedMap:
    """An isomorphic copy of m with edges renumbered and ends optionally swapped.

    edge_order is a permutation of range(n_edges) giving the new edge
    sequence; flips[k] = 1 swaps the two darts of (old) edge k.  With rng
    set and the explicit arguments omitted, both are drawn at random.
    """
    ne = m.n_edges
    if rng is not None:
        if edge_order is None:
            edge_order = list(range(ne))
            rng.shuffle(edge_order)
        if flips is None:
            flips = [rng.randrange(2) for _ in range(ne)]
    if edge_order is None:
        edge_order = list(range(ne))
    if flips is None:
        flips = [0] * ne
    pos = {old: new for new, old in enumerate(edge_order)}
    perm = [0] * m.n_darts  # old dart -> new dart
    for k in range(ne):
        for j in (0, 1):
            perm[2 * k + j] = 2 * pos[k] + (j ^ flips[k])
    n = m.n_darts
    sigma = [0] * n
    origin: list = [None] * n
    for d in range(n):
        sigma[perm[d]] = perm[m.sigma[d]]
        origin[perm[d]] = m.dart_origin[d]
    return EmbeddedMap(
        vertices=m.vertices,
        edges=tuple(m.edges[k] for k in edge_order),
        sigma=tuple(sigma),
        alpha=tuple(d ^ 1 for d in range(n)),
        dart_origin=tuple(origin),
    )


def _walk_steps(walk) -> list[tuple]:
    if isinstance(walk, FacialWalk):
        return list(zip(walk.vertices, walk.edges))
    steps = [tuple(step) for step in walk]
    if any(len(s) != 2 for s in steps):
        raise WalkGluingError("malformed", "walk steps must be (vertex, edge) pairs")
    return steps


def map_from_facial_walks(walks: Iterable) -> EmbeddedMap:
    """Glue closed walks into the unique oriented map having them as faces.

    Each walk is a FacialWalk or a cyclic sequence of (vertex, edge) steps,
    read clockwise around its face.  Every edge must appear exactly twice
    over all walks; the two occurrences of a non-loop edge must run in
    opposite directions, otherwise the gluing would be non-orientable.
    The two sides of a loop are paired in encounter order.
    """
    polys = [_walk_steps(w) for w in walks]
    if not polys or any(not p for p in polys):
        raise WalkGluingError("empty", "no walks, or an empty walk")

    occurrences: dict = {}
    edge_order: list = []
    for wi, steps in enumerate(polys):
        for pos, (v, e) in enumerate(steps):
            head = steps[(pos + 1) % len(steps)][0]
            if e not in occurrences:
                occurrences[e] = []
                edge_order.append(e)
            occurrences[e].append((wi, pos, v, head))

    for e, occ in occurrences.items():
        if len(occ) != 2:
            raise WalkGluingError(
                "edge-occurrence-count",
                f"edge {e!r} occurs {len(occ)} time(s); need exactly 2")

    dart_of = {}
    origin = {}
    for k, e in enumerate(edge_order):
        (w1, p1, u1, h1), (w2, p2, u2, h2) = occurrences[e]
        if u1 == h1 or u2 == h2:  # loop side(s)
            if {u1, h1} != {u2, h2}:
                raise WalkGluingError(
                    "endpoint-conflict", f"edge {e!r} glued at differing vertices")
        elif (u1, h1) == (u2, h2):
            raise WalkGluingError(
                "same-direction",
                f"edge {e!r} traversed twice in the same direction; "
                "gluing would not be orientable")
        elif (u1, h1) != (h2, u2):
            raise WalkGluingError(
                "endpoint-conflict", f"edge {e!r} glued at differing vertices")
        dart_of[(w1, p1)] = 2 * k
        dart_of[(w2, p2)] = 2 * k + 1
        origin[2 * k] = u1
        origin[2 * k + 1] = u2

    n = 2 * len(edge_order)
    phi = [0] * n
    for wi, steps in enumerate(polys):
        for pos in range(len(steps)):
            phi[dart_of[(wi, pos)]] = dart_of[(wi, (pos + 1) % len(steps))]
    sigma = [0] * n
    for d in range(n):
        sigma[d ^ 1] = phi[d]  # sigma = phi o alpha

    # each sigma cycle must carry one vertex label, and distinct cycles
    # distinct labels, else the walks do not come from a single map
    cycle_of = {}
    seen = set()
    n_cycles = 0
    order_of_vertex = []
    for d0 in range(n):
        if d0 in seen:
            continue
        n_cycles += 1
        label = origin[d0]
        if label in cycle_of:
            raise WalkGluingError(
                "vertex-conflict",
                f"vertex {label!r} appears in two unrelated rotations")
        cycle_of[label] = d0
        order_of_vertex.append(label)
        d = d0
        while d not in seen:
            seen.add(d)
            if origin[d] != label:
                raise WalkGluingError(
                    "vertex-conflict",
                    f"rotation at {label!r} mixes in vertex {origin[d]!r}")
            d = sigma[d]

    result = EmbeddedMap(
        vertices=tuple(order_of_vertex),
        edges=tuple(edge_order),
        sigma=tuple(sigma),
        alpha=tuple(d ^ 1 for d in range(n)),
        dart_origin=tuple(origin[d] for d in range(n)),
    )
    report = validate(result)
    if any(d.code == "disconnected" for d in report.defects):
        raise WalkGluingError("disconnected", "walks glue into a disconnected surface")
    if not report.ok:
        codes = ", ".join(d.code for d in report.defects if not d.advisory)
        raise WalkGluingError("inconsistent", f"glued map invalid: {codes}")
    return result
