"""Command-line interface.

Exit codes: 0 success (or predicate true), 1 predicate false, 2 usage
error, 3 input error (missing file, malformed document, unsuitable
map), 4 internal consistency failure.  Results go to stdout,
diagnostics to stderr; `--format json` output has sorted keys and a
fixed layout.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .canon import are_equivalent, canonical_key
from .duality import abstract_p_graph, dual, refinement
from .embedded_map import (EmbeddedMap, MapStructureError, euler_characteristic,
                           facial_walks, genus, validate)
from .enumeration import (ClassificationMismatchError, UnsupportedOrderError,
                          atlas_from_jsonl, atlas_to_jsonl, classify,
                          enumerate_newton, label_atlas, report_to_json,
                          report_to_json_dict, verify_atlas)
from .mapdoc import ParseError, map_to_dot, map_to_json_dict, parse, serialize
from .newton import is_newton, self_duality


def _load(path: str) -> EmbeddedMap:
    return parse(Path(path).read_text())


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


def _sense(args) -> bool:
    return not args.orientation_preserving


def _add_sense_flags(sub) -> None:
    g = sub.add_mutually_exclusive_group()
    g.add_argument("--reflect", action="store_true", default=True,
                   help="allow reflection (default)")
    g.add_argument("--orientation-preserving", "--op", dest="orientation_preserving",
                   action="store_true",
                   help="strict oriented sense, no reflection")


def _add_format(sub) -> None:
    sub.add_argument("--format", choices=("text", "json"), default="text")


def cmd_validate(args) -> int:
    m = _load(args.file)
    report = validate(m)
    if args.format == "json":
        _emit_json({"ok": report.ok,
                    "defects": [{"code": d.code, "message": d.message,
                                 "advisory": d.advisory}
                                for d in report.defects]})
    else:
        print("ok" if report.ok else "invalid")
        for d in report.defects:
            kind = "advisory" if d.advisory else "defect"
            print(f"{kind}: {d.code}: {d.message}")
    return 0 if report.ok else 1


def _walk_text(w) -> str:
    return " ".join(f"{v} {e}" for v, e in zip(w.vertices, w.edges))


def cmd_faces(args) -> int:
    m = _load(args.file)
    walks = facial_walks(m)
    if args.format == "json":
        _emit_json({
            "euler_characteristic": euler_characteristic(m),
            "genus": genus(m),
            "face_degrees": sorted((w.length for w in walks), reverse=True),
            "walks": [{"face": f"f{i + 1}", "length": w.length,
                       "steps": [[str(v), str(e)]
                                 for v, e in zip(w.vertices, w.edges)]}
                      for i, w in enumerate(walks)],
        })
    else:
        for i, w in enumerate(walks):
            print(f"f{i + 1} (length {w.length}): {_walk_text(w)}")
        print(f"faces {len(walks)}  chi {euler_characteristic(m)}  "
              f"genus {genus(m)}")
    return 0


def cmd_dual(args) -> int:
    text = serialize(dual(_load(args.file)))
    if args.out:
        Path(args.out).write_text(text)
    else:
        print(text, end="")
    return 0


def cmd_refine(args) -> int:
    ref = refinement(_load(args.file))
    m = ref.map
    levels = {1: 0, 2: 0, 3: 0}
    for v in m.vertices:
        levels[ref.level_of_vertex[v]] += 1
    n_faces = len(facial_walks(m))
    if args.format == "json":
        _emit_json({"vertices": m.order, "edges": m.n_edges, "faces": n_faces,
                    "levels": {str(k): v for k, v in levels.items()}})
    else:
        print(f"vertices {m.order} (level1 {levels[1]}, level2 {levels[2]}, "
              f"level3 {levels[3]})")
        print(f"edges {m.n_edges}")
        print(f"faces {n_faces}")
    return 0


def cmd_pgraph(args) -> int:
    pg = abstract_p_graph(_load(args.file))
    if args.dot:
        print(pg.to_dot(), end="")
        return 0
    if args.format == "json":
        _emit_json({
            "level1": [str(v) for v in pg.level1],
            "level2": [str(e) for e in pg.level2],
            "level3": [str(f) for f in pg.level3],
            "arcs": [[[a[0], str(a[1])], [b[0], str(b[1])]]
                     for a, b in pg.arcs],
        })
    else:
        print(f"level1 {len(pg.level1)}  level2 {len(pg.level2)}  "
              f"level3 {len(pg.level3)}  arcs {len(pg.arcs)}")
    return 0


def cmd_canon(args) -> int:
    print(canonical_key(_load(args.file), _sense(args)).hex())
    return 0


def cmd_iso(args) -> int:
    res = are_equivalent(_load(args.a), _load(args.b), _sense(args))
    if res:
        suffix = " (reflected)" if res.reflected else ""
        print("equivalent" + suffix)
        return 0
    print("not-equivalent")
    return 1


def cmd_selfdual(args) -> int:
    sd = self_duality(_load(args.file))
    if args.format == "json":
        _emit_json({"reflective": sd.reflective,
                    "orientation_preserving": sd.orientation_preserving})
    else:
        print(f"reflective: {'true' if sd.reflective else 'false'}")
        print(f"orientation-preserving: "
              f"{'true' if sd.orientation_preserving else 'false'}")
    return 0 if sd.reflective else 1


def cmd_newton(args) -> int:
    rep = is_newton(_load(args.file), args.order)
    e_wit = None
    if rep.e_property.witness is not None:
        w = rep.e_property.witness
        e_wit = {"walk_index": w.walk_index, "repeated_edge": str(w.repeated_edge)}
    if args.format == "json":
        _emit_json({
            "order": rep.order,
            "connected": rep.connected,
            "cellular_toroidal": rep.cellular_toroidal,
            "loopless": rep.loopless,
            "e_property": rep.e_property.holds,
            "e_witness": e_wit,
            "degree_bounds": rep.degree_bounds,
            "a_property_status": rep.a_property_status,
            "verdict": rep.verdict,
        })
    else:
        print(f"connected: {rep.connected}")
        print(f"cellular-toroidal: {rep.cellular_toroidal}")
        print(f"loopless: {rep.loopless}")
        print(f"e-property: {rep.e_property.holds}")
        if e_wit is not None:
            print(f"e-witness: edge {e_wit['repeated_edge']} repeats in walk "
                  f"{e_wit['walk_index']}")
        print(f"degree-bounds: {rep.degree_bounds}")
        print(f"a-property: {rep.a_property_status}")
        print(f"verdict: {rep.verdict}")
    return 0 if rep.verdict == "newton" else 1


def cmd_classify(args) -> int:
    entries = enumerate_newton(args.order, jobs=args.jobs)
    if args.order == 3:
        entries = label_atlas(entries)
    report = classify(entries)
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / f"atlas_order{args.order}.jsonl").write_text(
            atlas_to_jsonl(entries))
        (outdir / f"classification_order{args.order}.json").write_text(
            report_to_json(report))
    if args.format == "json":
        _emit_json(report_to_json_dict(report))
    else:
        print(f"order {report.order}")
        print(f"classes (reflection-allowed): {report.count_refl}")
        print(f"classes (orientation-preserving): {report.count_op}")
        print(f"classes (up to duality): {report.count_dual}")
        print(f"self-dual classes: {report.self_dual_count}")
        print(f"dual pairs: {len(report.dual_pairs)}")
        print("strata (max_face, vertex pattern: classes)")
        for s in report.strata:
            pat = ",".join(str(x) for x in s.vertex_pattern)
            print(f"  {s.max_face} ({pat}): {s.classes}")
    return 0


def cmd_atlas(args) -> int:
    entries = atlas_from_jsonl(Path(args.file).read_text())
    verify_atlas(entries)
    if args.format == "json":
        _emit_json({"entries": len(entries),
                    "keys": [e.key.hex() for e in entries]})
    else:
        print(f"entries: {len(entries)}")
        for e in entries:
            flags = []
            if e.self_dual:
                flags.append("self-dual")
            if e.op_forms == 2:
                flags.append("chiral")
            label = e.paper_label or "-"
            fl = f" [{', '.join(flags)}]" if flags else ""
            print(f"  {e.key.hex()[:16]}  faces {e.delta_star}  "
                  f"degrees {e.delta}{fl}  {label}")
    return 0


def cmd_export(args) -> int:
    m = _load(args.file)
    if args.to == "dot":
        print(map_to_dot(m), end="")
    elif args.to == "json":
        _emit_json(map_to_json_dict(m))
    else:
        print(serialize(m), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="newtonmaps",
        description="Combinatorial maps on the torus and the classification "
                    "of Newton graphs")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="structural validation of a map document")
    s.add_argument("file")
    _add_format(s)
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("faces", help="facial walks, characteristic and genus")
    s.add_argument("file")
    _add_format(s)
    s.set_defaults(func=cmd_faces)

    s = sub.add_parser("dual", help="write the dual map document")
    s.add_argument("file")
    s.add_argument("--out")
    s.set_defaults(func=cmd_dual)

    s = sub.add_parser("refine", help="sizes of the common refinement with the dual")
    s.add_argument("file")
    _add_format(s)
    s.set_defaults(func=cmd_refine)

    s = sub.add_parser("pgraph", help="abstract three-level digraph")
    s.add_argument("file")
    s.add_argument("--dot", action="store_true", help="emit DOT")
    _add_format(s)
    s.set_defaults(func=cmd_pgraph)

    s = sub.add_parser("canon", help="canonical key (hex)")
    s.add_argument("file")
    _add_sense_flags(s)
    s.set_defaults(func=cmd_canon)

    s = sub.add_parser("iso", help="equivalence of two maps")
    s.add_argument("a")
    s.add_argument("b")
    _add_sense_flags(s)
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("selfdual", help="self-duality, both senses")
    s.add_argument("file")
    _add_format(s)
    s.set_defaults(func=cmd_selfdual)

    s = sub.add_parser("newton", help="Newton-graph verdict")
    s.add_argument("file")
    s.add_argument("--order", type=int, required=True)
    _add_format(s)
    s.set_defaults(func=cmd_newton)

    s = sub.add_parser("classify", help="enumerate and classify an order")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--jobs", type=int, default=None,
                   help="worker processes (default: NEWTON_ATLAS_JOBS or 1)")
    s.add_argument("--out", help="directory for atlas and report files")
    _add_format(s)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("atlas", help="audit and summarize an atlas file")
    s.add_argument("file")
    _add_format(s)
    s.set_defaults(func=cmd_atlas)

    s = sub.add_parser("export", help="export a map as dot/json/doc")
    s.add_argument("file")
    s.add_argument("--to", choices=("dot", "json", "doc"), default="dot")
    s.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, OSError, MapStructureError,
            UnsupportedOrderError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ClassificationMismatchError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 4
    except AssertionError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
