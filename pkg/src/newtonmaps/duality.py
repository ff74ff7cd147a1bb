"""Dual maps, the common refinement, and its abstract three-level digraph.

The dual lives on the same darts: its vertex rotation is the face
permutation phi of the primal, and the edge pairing is unchanged, so
dualizing twice returns the original map exactly.  With the clockwise
facial-walk convention this realizes the orientation-reversed geometric
dual, which is the sense in which self-duality is usually asked.
"""

from __future__ import annotations

from dataclasses import dataclass

from .embedded_map import (EmbeddedMap, FacialWalk, MapStructureError, _checked,
                           facial_walks, make_map)


def _face_labels(walks) -> tuple[str, ...]:
    return tuple(f"f{i + 1}" for i in range(len(walks)))


def dual(m: EmbeddedMap) -> EmbeddedMap:
    """The dual map on the same dart set; dual(dual(m)) == m up to face names.

    Dual vertices are the faces of m, labeled f1, f2, ... in facial-walk
    order; every edge e is identified with its crossing dual edge, so the
    edge tuple is carried over unchanged.
    """
    walks = facial_walks(m)
    labels = _face_labels(walks)
    n = m.n_darts
    origin: list = [None] * n
    for lab, w in zip(labels, walks):
        for d in w.darts:
            origin[d] = lab
    sigma_star = tuple(m.sigma[d ^ 1] for d in range(n))  # phi
    return EmbeddedMap(
        vertices=labels,
        edges=m.edges,
        sigma=sigma_star,
        alpha=m.alpha,
        dart_origin=tuple(origin),
    )


def _require_no_repeated_edge(walks: tuple[FacialWalk, ...]) -> None:
    for w in walks:
        if len(set(w.edges)) != len(w.edges):
            raise MapStructureError(
                "refinement needs every facial walk to use each edge at most once")


@dataclass(frozen=True)
class RefinedMap:
    """The common refinement of a map and its dual, as a map in its own right.

    map: the refinement; base: the original map.  Vertices of the
    refinement are tagged tuples: ("v", vertex) at level 1, ("s", edge)
    at level 2 for the crossing point of e and its dual edge, and
    ("f", i) at level 3 for face i.  intersection_of recovers which edge
    pair each level-2 vertex subdivides.
    """

    map: EmbeddedMap
    base: EmbeddedMap
    level_of_vertex: dict
    intersection_of: dict


def refinement(m: EmbeddedMap) -> RefinedMap:
    """Subdivide every edge at its dual crossing and join crossings to faces.

    Each dart d contributes a primal half-edge ("h", d) from d's origin to
    the crossing on d's edge, and a dual half-edge ("g", d) from that
    crossing to the face on the right of d.  Rotations: the level-2
    rotation at a crossing interleaves the four halves anti-clockwise as
    (h d, g d, h alpha d, g alpha d); level 3 inherits the reversed facial
    walk, which is the dual's anti-clockwise rotation.  For an order-r
    toroidal map with r faces this yields 4r vertices, 8r edges and 4r
    quadrilateral faces, one per corner of the base map.
    """
    _checked(m)
    walks = facial_walks(m)
    _require_no_repeated_edge(walks)
    face_of = {}
    for i, w in enumerate(walks):
        for d in w.darts:
            face_of[d] = i + 1

    edge_decls = []
    for d in range(m.n_darts):
        k = d // 2
        edge_decls.append((("h", d), (("v", m.dart_origin[d]), ("s", m.edges[k]))))
    for d in range(m.n_darts):
        k = d // 2
        edge_decls.append((("g", d), (("s", m.edges[k]), ("f", face_of[d]))))

    rotations = {}
    for v in m.vertices:
        rotations[("v", v)] = [(("h", d), 0) for d in m.rotation_at(v)]
    for k, e in enumerate(m.edges):
        d0, d1 = 2 * k, 2 * k + 1
        rotations[("s", e)] = [(("h", d0), 1), (("g", d0), 0),
                               (("h", d1), 1), (("g", d1), 0)]
    for i, w in enumerate(walks):
        rotations[("f", i + 1)] = [(("g", d), 1) for d in reversed(w.darts)]

    refined = make_map(edge_decls, rotations)
    level = {}
    for v in refined.vertices:
        level[v] = {"v": 1, "s": 2, "f": 3}[v[0]]
    crossing = {("s", e): e for e in m.edges}
    return RefinedMap(map=refined, base=m, level_of_vertex=level,
                      intersection_of=crossing)


@dataclass(frozen=True)
class PGraph:
    """Abstract three-level digraph of a refinement: vertices, crossings, faces.

    Arcs run level 1 -> 2 (one per dart, vertex to crossing) and
    level 2 -> 3 (one per dart, crossing to the face right of the dart).
    """

    level1: tuple
    level2: tuple
    level3: tuple
    arcs: tuple  # ((level, id), (level, id)) pairs

    def out_degree(self, level: int, node) -> int:
        return sum(1 for (a, _) in self.arcs if a == (level, node))

    def to_dot(self) -> str:
        """DOT rendering: level 1 as open circles, level 2 as points,
        level 3 as filled circles."""
        lines = ["digraph pgraph {", "  rankdir=TB;", '  node [fontsize=11];']
        for v in self.level1:
            lines.append(f'  "v:{v}" [label="{v}", shape=circle];')
        for e in self.level2:
            lines.append(f'  "s:{e}" [label="", shape=point];')
        for f in self.level3:
            lines.append(f'  "f:{f}" [label="{f}", shape=circle, style=filled, '
                         'fillcolor=black, fontcolor=white];')
        tag = {1: "v", 2: "s", 3: "f"}
        for (la, a), (lb, b) in self.arcs:
            lines.append(f'  "{tag[la]}:{a}" -> "{tag[lb]}:{b}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def abstract_p_graph(m: EmbeddedMap) -> PGraph:
    _checked(m)
    walks = facial_walks(m)
    _require_no_repeated_edge(walks)
    labels = _face_labels(walks)
    face_of = {}
    for lab, w in zip(labels, walks):
        for d in w.darts:
            face_of[d] = lab
    arcs = []
    for d in range(m.n_darts):
        arcs.append(((1, m.dart_origin[d]), (2, m.edge_of(d))))
    for d in range(m.n_darts):
        arcs.append(((2, m.edge_of(d)), (3, face_of[d])))
    return PGraph(level1=tuple(m.vertices), level2=tuple(m.edges),
                  level3=labels, arcs=tuple(arcs))
