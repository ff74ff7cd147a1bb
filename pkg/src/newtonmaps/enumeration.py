"""Exhaustive enumeration and classification of toroidal Newton graphs.

The search frame: loopless multigraphs on r labeled vertices with 2r
edges, described by edge-multiplicity vectors over the unordered vertex
pairs, with every degree at least 2 (a degree-1 vertex forces a facial
walk through its pendant edge twice, so the pruning loses nothing); for
each multigraph, all rotation systems with the first dart of every
vertex rotation fixed (global canonical deduplication absorbs the
rotational redundancy).  Kept maps are those whose Newton verdict
passes; classes are formed under reflection-allowed equivalence, with
the orientation-preserving refinement recorded per class.

Everything downstream of the candidate stream is deterministic: class
representatives are canonical forms, so the atlas bytes do not depend on
enumeration order or worker count.
"""

from __future__ import annotations

import json
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from collections import Counter
from dataclasses import dataclass, replace
from itertools import permutations
from typing import Iterator, Optional, Sequence

from .canon import CanonicalKey, canonical_form, canonical_key, _edge_label
from .duality import dual
from .embedded_map import EmbeddedMap, facial_walks, validate
from .mapdoc import parse, serialize
from .newton import is_newton


class UnsupportedOrderError(ValueError):
    pass


class ClassificationMismatchError(RuntimeError):
    """The computed classification contradicts its own invariants."""


@dataclass(frozen=True)
class AtlasEntry:
    order: int
    key: CanonicalKey            # reflection-allowed
    key_op: CanonicalKey         # orientation-preserving key of the representative
    representative: EmbeddedMap  # canonical form
    representative_doc: str
    delta: tuple[int, ...]
    delta_star: tuple[int, ...]
    max_face: int
    vertex_pattern_on_max_face: tuple[int, ...]
    self_dual: bool
    self_dual_op: bool
    dual_key: CanonicalKey
    op_forms: int                # orientation-preserving classes inside this class
    verdict: str                 # newton | e-only
    paper_label: Optional[str] = None
    label_ambiguous: bool = False


@dataclass(frozen=True)
class Stratum:
    max_face: int
    vertex_pattern: tuple[int, ...]
    classes: int


@dataclass(frozen=True)
class ClassificationReport:
    order: int
    count_op: int
    count_refl: int
    count_dual: int
    self_dual_count: int
    dual_pairs: tuple[tuple[str, str], ...]  # key hex pairs, lexicographic
    strata: tuple[Stratum, ...]


@dataclass(frozen=True)
class LabelAssignment:
    key: str  # hex
    label: str
    ambiguous: bool
    shares_label_with: tuple[str, ...] = ()


def _pairs(order: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(order) for j in range(i + 1, order)]


def _multiplicity_vectors(order: int, min_degree: int) -> list[tuple[int, ...]]:
    pairs = _pairs(order)
    target = 2 * order
    out: list[tuple[int, ...]] = []

    def rec(pos: int, left: int, acc: list[int]) -> None:
        if pos == len(pairs):
            if left == 0:
                deg = [0] * order
                for (i, j), c in zip(pairs, acc):
                    deg[i] += c
                    deg[j] += c
                if all(d >= min_degree for d in deg):
                    out.append(tuple(acc))
            return
        for c in range(left + 1):
            acc.append(c)
            rec(pos + 1, left - c, acc)
            acc.pop()

    rec(0, target, [])
    return out


def _vector_candidates(order: int, mult: tuple[int, ...]) -> Iterator[EmbeddedMap]:
    pairs = _pairs(order)
    ends: list[tuple[int, int]] = []
    for (i, j), c in zip(pairs, mult):
        ends.extend([(i, j)] * c)
    n = 4 * order
    vertices = tuple(f"v{i + 1}" for i in range(order))
    edges = tuple(_edge_label(k) for k in range(2 * order))
    origin = [""] * n
    darts_at: list[list[int]] = [[] for _ in range(order)]
    for k, (i, j) in enumerate(ends):
        darts_at[i].append(2 * k)
        darts_at[j].append(2 * k + 1)
        origin[2 * k] = vertices[i]
        origin[2 * k + 1] = vertices[j]
    origin_t = tuple(origin)
    alpha = tuple(d ^ 1 for d in range(n))
    # first dart of each rotation pinned; permute the rest
    choices = [list(permutations(lst[1:])) for lst in darts_at]

    def rec(vi: int, sigma: list[int]) -> Iterator[EmbeddedMap]:
        if vi == order:
            yield EmbeddedMap(vertices, edges, tuple(sigma), alpha, origin_t)
            return
        anchor = darts_at[vi][0]
        for tail in choices[vi]:
            cyc = (anchor,) + tail
            for i, d in enumerate(cyc):
                sigma[d] = cyc[(i + 1) % len(cyc)]
            yield from rec(vi + 1, sigma)

    yield from rec(0, [0] * n)


def iter_candidates(order: int, min_degree: int = 2,
                    require_connected: bool = True) -> Iterator[EmbeddedMap]:
    """The raw candidate stream the classifier filters.

    Yields every rotation system over every admissible multiplicity
    vector; with require_connected (the default) maps whose surface
    would be disconnected are skipped, since they embed in no single
    closed surface.
    """
    if order < 2:
        raise UnsupportedOrderError(f"order {order} < 2 has no Newton graphs")
    for mult in _multiplicity_vectors(order, min_degree):
        for m in _vector_candidates(order, mult):
            if require_connected and not validate(m).ok:
                continue
            yield m


def _accepted_verdicts(order: int) -> frozenset[str]:
    return frozenset({"newton"}) if order <= 3 else frozenset({"e-only"})


def _scan_vector(args) -> dict:
    """Worker: classes found in one multiplicity vector's rotation systems.

    Returns refl-key-hex -> (sorted op key hexes, canonical document).
    Both components are label-free functions of the class, so merging
    results from any partition of the vectors is associative.
    """
    order, mult, min_degree = args
    accept = _accepted_verdicts(order)
    found: dict[str, tuple[set, Optional[str]]] = {}
    for m in _vector_candidates(order, mult):
        if not validate(m).ok:
            continue
        if is_newton(m, order).verdict not in accept:
            continue
        kr = canonical_key(m, True).hex()
        ko = canonical_key(m, False).hex()
        if kr not in found:
            found[kr] = (set(), serialize(canonical_form(m, True)))
        found[kr][0].add(ko)
    return {k: (sorted(ops), doc) for k, (ops, doc) in found.items()}


def _resolve_jobs(jobs: Optional[int]) -> int:
    if jobs is None:
        jobs = int(os.environ.get("NEWTON_ATLAS_JOBS", "1") or 1)
    return max(1, jobs)


def enumerate_newton(order: int, jobs: Optional[int] = None,
                     min_degree: int = 2) -> tuple[AtlasEntry, ...]:
    """All Newton maps of the given order, one atlas entry per class.

    Orders 2 and 3 are fully certified; for order >= 4 the angle
    condition has no implemented criterion, so enumeration proceeds in
    e-only mode behind a warning and entries carry verdict "e-only".
    Entries are sorted by key and independent of job count.
    """
    if order < 2:
        raise UnsupportedOrderError(f"order {order} < 2 has no Newton graphs")
    if order >= 4:
        warnings.warn(f"order {order}: angle condition unavailable; "
                      "running in e-only mode", stacklevel=2)
    jobs = _resolve_jobs(jobs)
    tasks = [(order, mult, min_degree)
             for mult in _multiplicity_vectors(order, min_degree)]
    merged: dict[str, tuple[set, str]] = {}
    if jobs == 1:
        results = map(_scan_vector, tasks)
    else:
        pool = ProcessPoolExecutor(max_workers=jobs)
        try:
            results = list(pool.map(_scan_vector, tasks))
        finally:
            pool.shutdown()
    for part in results:
        for kr, (ops, doc) in part.items():
            if kr in merged:
                merged[kr][0].update(ops)
            else:
                merged[kr] = (set(ops), doc)

    verdict = "newton" if order <= 3 else "e-only"
    entries = []
    for kr_hex in sorted(merged):
        ops, doc = merged[kr_hex]
        rep = parse(doc)
        key = canonical_key(rep, True)
        if key.hex() != kr_hex:
            raise ClassificationMismatchError("canonical representative drifted")
        walks = facial_walks(rep)
        delta = tuple(sorted((rep.degree(v) for v in rep.vertices), reverse=True))
        delta_star = tuple(sorted((w.length for w in walks), reverse=True))
        max_face = delta_star[0]
        pattern = max(
            tuple(sorted(Counter(w.vertices).values(), reverse=True))
            for w in walks if w.length == max_face)
        if order == 3 and max_face not in (4, 5, 6):
            raise ClassificationMismatchError(
                f"order-3 maximum face {max_face} outside 4..6")
        d = dual(rep)
        dual_key = canonical_key(d, True)
        entries.append(AtlasEntry(
            order=order,
            key=key,
            key_op=canonical_key(rep, False),
            representative=rep,
            representative_doc=doc,
            delta=delta,
            delta_star=delta_star,
            max_face=max_face,
            vertex_pattern_on_max_face=pattern,
            self_dual=(dual_key == key),
            self_dual_op=(canonical_key(d, False) == canonical_key(rep, False)),
            dual_key=dual_key,
            op_forms=len(ops),
            verdict=verdict,
        ))
    return tuple(entries)


def _pairing(entries: Sequence[AtlasEntry]):
    by_key = {e.key.hex(): e for e in entries}
    self_dual = []
    pairs = []
    for e in entries:
        dk = e.dual_key.hex()
        if dk not in by_key:
            raise ClassificationMismatchError(
                f"dual of class {e.key.hex()[:12]} missing from atlas")
        if dk == e.key.hex():
            self_dual.append(e)
        elif e.key.hex() < dk:
            pairs.append((e.key.hex(), dk))
    return by_key, self_dual, sorted(pairs)


def strata_check(entries: Sequence[AtlasEntry]) -> dict:
    """Per-(max_face, vertex_pattern) class counts, not counting duals-of.

    A class is counted in its own stratum iff its maximum face is at
    least its dual partner's, so each dual pair contributes one class
    (or both, when tied) and self-dual classes always count.
    """
    by_key, _, _ = _pairing(entries)
    tally: dict = {}
    for e in entries:
        partner = by_key[e.dual_key.hex()]
        if e.max_face >= partner.max_face:
            stratum = (e.max_face, e.vertex_pattern_on_max_face)
            tally[stratum] = tally.get(stratum, 0) + 1
    return tally


def classify(entries: Sequence[AtlasEntry]) -> ClassificationReport:
    if not entries:
        raise ClassificationMismatchError("empty atlas")
    order = entries[0].order
    if any(e.order != order for e in entries):
        raise ClassificationMismatchError("mixed orders in atlas")
    _, self_dual, pairs = _pairing(entries)
    strata = tuple(
        Stratum(mf, pat, count)
        for (mf, pat), count in sorted(strata_check(entries).items(), reverse=True))
    return ClassificationReport(
        order=order,
        count_op=sum(e.op_forms for e in entries),
        count_refl=len(entries),
        count_dual=len(self_dual) + len(pairs),
        self_dual_count=len(self_dual),
        dual_pairs=tuple(pairs),
        strata=strata,
    )


def _base_label(e: AtlasEntry) -> str:
    case = {6: "case1", 5: "case2", 4: "case3"}[e.max_face]
    faces = "".join(str(x) for x in e.delta_star)
    degs = "".join(str(x) for x in e.delta)
    label = f"{case}-f{faces}-d{degs}"
    if e.self_dual:
        label += "-selfdual"
    if e.op_forms == 2:
        label += "-chiral"
    return label


def match_paper_atlas(entries: Sequence[AtlasEntry]) -> tuple[LabelAssignment, ...]:
    """Label the order-3 classes against the published case taxonomy.

    Labels are built from the invariant vector (max face, face and degree
    multisets, self-duality, chirality); a class whose maximum face is
    smaller than its dual partner's is labeled as that partner's dual.
    Classes an invariant vector cannot separate share a label and are
    flagged ambiguous instead of being matched to individual drawings.
    Counts inconsistent with the established classification (12 classes,
    9 up to duality) are a hard failure.
    """
    if any(e.order != 3 for e in entries):
        raise ClassificationMismatchError("paper matching is defined for order 3")
    by_key, self_dual, pairs = _pairing(entries)
    if len(entries) != 12 or len(self_dual) + len(pairs) != 9:
        raise ClassificationMismatchError(
            f"expected 12 classes with 9 duality classes, got {len(entries)} "
            f"with {len(self_dual) + len(pairs)}")

    labels: dict[str, str] = {}
    for e in entries:
        partner = by_key[e.dual_key.hex()]
        if e.max_face < partner.max_face:
            labels[e.key.hex()] = _base_label(partner) + "-dual"
        else:
            labels[e.key.hex()] = _base_label(e)

    groups: dict[str, list[str]] = {}
    for kh, lab in labels.items():
        groups.setdefault(lab, []).append(kh)
    out = []
    for e in entries:
        kh = e.key.hex()
        lab = labels[kh]
        mates = tuple(sorted(k for k in groups[lab] if k != kh))
        out.append(LabelAssignment(kh, lab, bool(mates), mates))
    return tuple(out)


def label_atlas(entries: Sequence[AtlasEntry]) -> tuple[AtlasEntry, ...]:
    """Entries with paper_label/label_ambiguous filled in (order 3 only)."""
    assignments = {a.key: a for a in match_paper_atlas(entries)}
    return tuple(
        replace(e, paper_label=assignments[e.key.hex()].label,
                label_ambiguous=assignments[e.key.hex()].ambiguous)
        for e in entries)


# ---------------------------------------------------------------------------
# atlas and report serialization

def entry_to_json_dict(e: AtlasEntry) -> dict:
    return {
        "order": e.order,
        "key": e.key.hex(),
        "key_op": e.key_op.hex(),
        "dual_key": e.dual_key.hex(),
        "representative": e.representative_doc,
        "delta": list(e.delta),
        "delta_star": list(e.delta_star),
        "max_face": e.max_face,
        "vertex_pattern_on_max_face": list(e.vertex_pattern_on_max_face),
        "self_dual": e.self_dual,
        "self_dual_op": e.self_dual_op,
        "op_forms": e.op_forms,
        "verdict": e.verdict,
        "paper_label": e.paper_label,
        "label_ambiguous": e.label_ambiguous,
    }


def atlas_to_jsonl(entries: Sequence[AtlasEntry]) -> str:
    lines = [json.dumps(entry_to_json_dict(e), sort_keys=True,
                        separators=(",", ":"))
             for e in sorted(entries, key=lambda e: e.key.hex())]
    return "\n".join(lines) + "\n"


def _key_from_hex(hexstr: str, allow_reflection: bool) -> CanonicalKey:
    return CanonicalKey(tuple(bytes.fromhex(hexstr)), allow_reflection)


def atlas_from_jsonl(text: str) -> tuple[AtlasEntry, ...]:
    entries = []
    for line in text.splitlines():
        if not line.strip():
            continue
        rec = json.loads(line)
        entries.append(AtlasEntry(
            order=rec["order"],
            key=_key_from_hex(rec["key"], True),
            key_op=_key_from_hex(rec["key_op"], False),
            representative=parse(rec["representative"]),
            representative_doc=rec["representative"],
            delta=tuple(rec["delta"]),
            delta_star=tuple(rec["delta_star"]),
            max_face=rec["max_face"],
            vertex_pattern_on_max_face=tuple(rec["vertex_pattern_on_max_face"]),
            self_dual=rec["self_dual"],
            self_dual_op=rec["self_dual_op"],
            dual_key=_key_from_hex(rec["dual_key"], True),
            op_forms=rec["op_forms"],
            verdict=rec["verdict"],
            paper_label=rec.get("paper_label"),
            label_ambiguous=rec.get("label_ambiguous", False),
        ))
    return tuple(entries)


def verify_atlas(entries: Sequence[AtlasEntry]) -> None:
    """Internal-consistency audit of a (possibly re-read) atlas."""
    for e in entries:
        if canonical_key(e.representative, True) != e.key:
            raise ClassificationMismatchError(
                f"entry {e.key.hex()[:12]}: representative does not match key")
        if canonical_key(e.representative, False) != e.key_op:
            raise ClassificationMismatchError(
                f"entry {e.key.hex()[:12]}: orientation-preserving key drifted")
        if (e.self_dual) != (e.dual_key == e.key):
            raise ClassificationMismatchError(
                f"entry {e.key.hex()[:12]}: self_dual flag inconsistent")
        if serialize(e.representative) != e.representative_doc:
            raise ClassificationMismatchError(
                f"entry {e.key.hex()[:12]}: representative not canonical")
    _pairing(entries)


def report_to_json_dict(r: ClassificationReport) -> dict:
    return {
        "order": r.order,
        "count_op": r.count_op,
        "count_refl": r.count_refl,
        "count_dual": r.count_dual,
        "self_dual_count": r.self_dual_count,
        "dual_pairs": [list(p) for p in r.dual_pairs],
        "strata": [
            {"max_face": s.max_face,
             "vertex_pattern": list(s.vertex_pattern),
             "classes": s.classes}
            for s in r.strata
        ],
    }


def report_to_json(r: ClassificationReport) -> str:
    return json.dumps(report_to_json_dict(r), sort_keys=True, indent=2) + "\n"
