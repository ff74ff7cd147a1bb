"""Canonical labeling and isomorphism of oriented maps.

Two maps are orientation-preserving equivalent when a dart bijection
conjugates sigma to sigma and alpha to alpha; allowing reflection also
admits conjugating sigma to its inverse.  The canonical key is the
lexicographically least breadth-first trace over all root darts (and,
in the reflection-allowed sense, over both chiralities), so equal keys
mean equivalent maps and the key is independent of labeling.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .embedded_map import EmbeddedMap, MapStructureError, make_map, validate


class SizeGuardError(ValueError):
    """Brute-force search refused: the map is too large for it to be honest."""


_BRUTE_FORCE_DART_LIMIT = 16


@dataclass(frozen=True)
class CanonicalKey:
    trace: tuple[int, ...]
    allow_reflection: bool

    def hex(self) -> str:
        # one byte per entry; dart counts beyond 255 are out of scope here
        if any(x > 0xFF for x in self.trace):
            raise ValueError("trace entries exceed one byte")
        return bytes(self.trace).hex()

    def __lt__(self, other: "CanonicalKey") -> bool:
        if self.allow_reflection != other.allow_reflection:
            raise TypeError("keys of different senses are not comparable")
        return self.trace < other.trace

    def __str__(self) -> str:
        return self.hex()


@dataclass(frozen=True)
class IsoResult:
    equivalent: bool
    dart_map: Optional[tuple[int, ...]] = None  # dart of a -> dart of b
    reflected: Optional[bool] = None

    def __bool__(self) -> bool:
        return self.equivalent


def _invert(p: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def _trace_from(sigma, root: int):
    """Breadth-first relabeling from root; returns (trace, visit order)."""
    n = len(sigma)
    idx = {root: 0}
    order = [root]
    for d in order:
        for nxt in (sigma[d], d ^ 1):
            if nxt not in idx:
                idx[nxt] = len(order)
                order.append(nxt)
    trace = []
    for d in order:
        trace.append(idx[sigma[d]])
        trace.append(idx[d ^ 1])
    return tuple(trace), order


def _best_trace(sigma):
    """Least trace over all roots for a fixed chirality."""
    best = None
    best_order = None
    for root in range(len(sigma)):
        trace, order = _trace_from(sigma, root)
        if best is None or trace < best:
            best, best_order = trace, order
    return best, best_order


def _best_trace_sided(m: EmbeddedMap, allow_reflection: bool):
    """Returns (trace, order, mirrored) minimizing over permitted chiralities."""
    trace, order = _best_trace(m.sigma)
    mirrored = False
    if allow_reflection:
        trace2, order2 = _best_trace(_invert(m.sigma))
        if trace2 < trace:
            trace, order, mirrored = trace2, order2, True
    return trace, order, mirrored


def canonical_key(m: EmbeddedMap, allow_reflection: bool = True) -> CanonicalKey:
    if not validate(m).ok:
        raise MapStructureError("cannot key an invalid map")
    trace, _, _ = _best_trace_sided(m, allow_reflection)
    return CanonicalKey(trace, allow_reflection)


def canonical_form(m: EmbeddedMap, allow_reflection: bool = True) -> EmbeddedMap:
    """The canonical representative of m's equivalence class.

    Darts are renumbered into the canonical breadth-first order, vertices
    become v1, v2, ... by first appearance and edges a, b, ... likewise,
    so every member of the class yields the identical map object.  In the
    reflection-allowed sense the representative may be the mirror of m.
    """
    if not validate(m).ok:
        raise MapStructureError("cannot canonicalize an invalid map")
    trace, _, _ = _best_trace_sided(m, allow_reflection)
    n = m.n_darts
    sigma = tuple(trace[2 * i] for i in range(n))
    alpha = tuple(trace[2 * i + 1] for i in range(n))

    cycles = []
    seen = set()
    for d0 in range(n):
        if d0 in seen:
            continue
        cyc = [d0]
        seen.add(d0)
        d = sigma[d0]
        while d != d0:
            seen.add(d)
            cyc.append(d)
            d = sigma[d]
        cycles.append(cyc)
    vertex_of = {}
    vertex_names = []
    for i, cyc in enumerate(cycles):
        name = f"v{i + 1}"
        vertex_names.append(name)
        for d in cyc:
            vertex_of[d] = name

    edge_name = {}
    edge_decls = []
    for d in range(n):
        p = alpha[d]
        if d < p:
            name = _edge_label(len(edge_decls))
            edge_name[d] = edge_name[p] = name
            edge_decls.append((name, (vertex_of[d], vertex_of[p])))

    rotations = {}
    for name, cyc in zip(vertex_names, cycles):
        toks = []
        for d in cyc:
            e = edge_name[d]
            if vertex_of[d] == vertex_of[alpha[d]]:
                toks.append((e, 0 if d < alpha[d] else 1))
            else:
                toks.append(e)
        rotations[name] = toks
    return make_map(edge_decls, rotations)


def _edge_label(k: int) -> str:
    if k < 26:
        return chr(ord("a") + k)
    return f"e{k + 1}"


def are_equivalent(a: EmbeddedMap, b: EmbeddedMap,
                   allow_reflection: bool = True) -> IsoResult:
    """Equivalence test returning an explicit dart bijection when it holds.

    The witness f satisfies f(alpha(d)) = alpha(f(d)) and either
    f(sigma(d)) = sigma_b(f(d)) or, when reflected, f(sigma(d)) =
    sigma_b^{-1}(f(d)).
    """
    if a.n_darts != b.n_darts:
        return IsoResult(False)
    ta, order_a, mir_a = _best_trace_sided(a, allow_reflection)
    tb, order_b, mir_b = _best_trace_sided(b, allow_reflection)
    if ta != tb:
        return IsoResult(False)
    pos_a = {d: i for i, d in enumerate(order_a)}
    f = tuple(order_b[pos_a[d]] for d in range(a.n_darts))
    reflected = mir_a != mir_b
    target = _invert(b.sigma) if reflected else b.sigma
    for d in range(a.n_darts):
        assert f[a.sigma[d]] == target[f[d]]
        assert f[d ^ 1] == f[d] ^ 1
    return IsoResult(True, f, reflected)


def _propagate(sigma_a, sigma_b, anchor_image: int) -> bool:
    n = len(sigma_a)
    inv_a = _invert(tuple(sigma_a))
    inv_b = _invert(tuple(sigma_b))
    f = [-1] * n
    f[0] = anchor_image
    stack = [0]
    while stack:
        d = stack.pop()
        for src, dst in ((sigma_a[d], sigma_b[f[d]]),
                         (inv_a[d], inv_b[f[d]]),
                         (d ^ 1, f[d] ^ 1)):
            if f[src] == -1:
                f[src] = dst
                stack.append(src)
            elif f[src] != dst:
                return False
    if -1 in f or len(set(f)) != n:
        return False
    return all(f[sigma_a[d]] == sigma_b[f[d]] and f[d ^ 1] == f[d] ^ 1
               for d in range(n))


def brute_force_iso(a: EmbeddedMap, b: EmbeddedMap,
                    allow_reflection: bool = True) -> bool:
    """Reference equivalence test by anchored exhaustive propagation.

    Independent of the canonical key machinery; guarded to small maps so
    it stays an oracle rather than an attractive nuisance.
    """
    if max(a.n_darts, b.n_darts) > _BRUTE_FORCE_DART_LIMIT:
        raise SizeGuardError(
            f"brute force limited to {_BRUTE_FORCE_DART_LIMIT} darts")
    if a.n_darts != b.n_darts:
        return False
    targets = [b.sigma]
    if allow_reflection:
        targets.append(_invert(b.sigma))
    for sb in targets:
        for t in range(b.n_darts):
            if _propagate(a.sigma, sb, t):
                return True
    return False
