"""Newton-graph predicates for cellularly embedded toroidal multigraphs.

An order-r Newton graph has r vertices, 2r edges and r faces on the
torus, no loops, and satisfies two conditions on its facial walks: the
boundary condition checked here (no facial walk repeats an edge, so each
walk is an Eulerian circuit of its own boundary subgraph and every edge
separates two distinct faces), and an angle condition at the vertices.
The angle condition needs no separate check at small orders: it always
holds at order 2 and follows from the boundary condition at order 3, and
no finite criterion for it is implemented beyond that, so larger orders
can only ever be certified "e-only".
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional

from .canon import canonical_key
from .duality import dual
from .embedded_map import EmbeddedMap, euler_characteristic, facial_walks, validate


@dataclass(frozen=True)
class EWitness:
    walk_index: int
    repeated_edge: object


@dataclass(frozen=True)
class EPropertyReport:
    holds: bool
    witness: Optional[EWitness] = None

    def __bool__(self) -> bool:
        return self.holds


def check_e_property(m: EmbeddedMap) -> EPropertyReport:
    """No facial walk may traverse any edge twice.

    Equivalently: every edge lies on two distinct faces, and the dual is
    loopless.  A closed walk visits every vertex of the subgraph formed
    by its own edges, so once no edge repeats, each walk is an Eulerian
    circuit of its boundary.
    """
    for i, w in enumerate(facial_walks(m)):
        counts = Counter(w.edges)
        for e, c in counts.items():
            if c > 1:
                return EPropertyReport(False, EWitness(i, e))
    return EPropertyReport(True)


def check_degree_bounds(m: EmbeddedMap, order: int) -> bool:
    """Vertex and face degrees must lie in (1, 2r], with both sums 4r."""
    hi = 2 * order
    degs = [m.degree(v) for v in m.vertices]
    fdegs = [w.length for w in facial_walks(m)]
    return (all(1 < d <= hi for d in degs) and all(1 < d <= hi for d in fdegs)
            and sum(degs) == 4 * order and sum(fdegs) == 4 * order)


def _a_property_status(order: int) -> str:
    if order == 2:
        return "always-holds"
    if order == 3:
        return "implied-by-E"
    return "unavailable"


@dataclass(frozen=True)
class NewtonReport:
    order: int
    connected: bool
    cellular_toroidal: bool
    loopless: bool
    e_property: EPropertyReport
    degree_bounds: bool
    a_property_status: str
    verdict: str  # newton | e-only | not-newton


def is_newton(m: EmbeddedMap, order: int) -> NewtonReport:
    status = _a_property_status(order)
    report = validate(m)
    if not report.ok:
        return NewtonReport(order, False, False, False,
                            EPropertyReport(False), False, status, "not-newton")
    loopless = all(m.dart_origin[2 * k] != m.dart_origin[2 * k + 1]
                   for k in range(m.n_edges))
    faces = facial_walks(m)
    toroidal = (euler_characteristic(m) == 0
                and m.order == order
                and m.n_edges == 2 * order
                and len(faces) == order)
    e_rep = check_e_property(m)
    bounds = check_degree_bounds(m, order)
    if toroidal and loopless and e_rep.holds and bounds:
        verdict = "newton" if status != "unavailable" else "e-only"
    else:
        verdict = "not-newton"
    return NewtonReport(order, True, toroidal, loopless, e_rep, bounds,
                        status, verdict)


@dataclass(frozen=True)
class SelfDuality:
    reflective: bool
    orientation_preserving: bool


def _require_newton(m: EmbeddedMap) -> None:
    rep = is_newton(m, m.order)
    if rep.verdict != "newton":
        raise ValueError(f"self-duality is defined for Newton graphs; "
                         f"verdict here is {rep.verdict!r}")


def is_self_dual(m: EmbeddedMap, allow_reflection: bool = True) -> bool:
    """Whether m is equivalent to its dual.

    The default allows reflection, matching the usual reading in which a
    map is compared with the orientation-reversed dual; pass
    allow_reflection=False for the strict oriented sense.
    """
    _require_newton(m)
    return (canonical_key(m, allow_reflection)
            == canonical_key(dual(m), allow_reflection))


def self_duality(m: EmbeddedMap) -> SelfDuality:
    _require_newton(m)
    d = dual(m)
    return SelfDuality(
        reflective=canonical_key(m, True) == canonical_key(d, True),
        orientation_preserving=canonical_key(m, False) == canonical_key(d, False),
    )
