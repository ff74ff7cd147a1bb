"""Line-oriented text format for embedded maps, plus DOT/JSON exports.

A document lists `order R`, one `edge NAME U V` line per edge, and one
`rot V TOKENS...` line per vertex giving the anti-clockwise rotation.
Tokens are edge names; the two ends of a loop are written NAME.0 and
NAME.1 (ends refer to the declared endpoint order).  Blank lines and
`#` comments are skipped.  An optional `orientation` line declares how
the rotations were recorded: under the default `clockwise-faces` the
lists are anti-clockwise rotations and facial walks run clockwise;
`anticlockwise-faces` marks lists recorded in the opposite sense, which
the parser normalizes by reversing, so parsing always yields the same
convention.

Serialization is canonical: edges sorted by name, vertices sorted by
name, each rotation rotated to start at its lexicographically smallest
token, no orientation marker.  On such documents parse and serialize
are mutually inverse byte for byte.
"""

from __future__ import annotations

import re

from .embedded_map import EmbeddedMap, MapStructureError, make_map

_NAME_RE = re.compile(r"[A-Za-z0-9_]+\Z")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


def _check_name(word: str, what: str, line: int) -> str:
    if not _NAME_RE.match(word):
        raise ParseError(f"bad {what} name {word!r}", line)
    return word


def parse(text: str) -> EmbeddedMap:
    order = None
    orientation = "clockwise-faces"
    edges: list[tuple] = []
    edge_line: dict = {}
    ends: dict = {}
    rots: list[tuple] = []
    rot_seen: dict = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        kind = fields[0]
        if kind == "order":
            if order is not None:
                raise ParseError("duplicate order line", lineno)
            if len(fields) != 2 or not fields[1].isdigit() or int(fields[1]) < 1:
                raise ParseError("order needs one positive integer", lineno)
            order = int(fields[1])
        elif kind == "orientation":
            if len(fields) != 2 or fields[1] not in ("clockwise-faces",
                                                     "anticlockwise-faces"):
                raise ParseError("orientation must be clockwise-faces or "
                                 "anticlockwise-faces", lineno)
            orientation = fields[1]
        elif kind == "edge":
            if len(fields) != 4:
                raise ParseError("edge needs: edge NAME U V", lineno)
            name = _check_name(fields[1], "edge", lineno)
            u = _check_name(fields[2], "vertex", lineno)
            v = _check_name(fields[3], "vertex", lineno)
            if name in ends:
                raise ParseError(f"duplicate edge {name!r}", lineno)
            ends[name] = (u, v)
            edge_line[name] = lineno
            edges.append((name, (u, v)))
        elif kind == "rot":
            if len(fields) < 3:
                raise ParseError("rot needs a vertex and at least one token", lineno)
            vertex = _check_name(fields[1], "vertex", lineno)
            if vertex in rot_seen:
                raise ParseError(f"duplicate rotation for vertex {vertex!r}", lineno)
            rot_seen[vertex] = lineno
            rots.append((vertex, fields[2:], lineno))
        else:
            raise ParseError(f"unknown directive {kind!r}", lineno)

    if order is None:
        raise ParseError("missing order line")
    if not edges:
        raise ParseError("no edges declared")
    if len(rots) != order:
        raise ParseError(f"order is {order} but {len(rots)} rotation line(s) given")

    rotations: dict = {}
    occurrences: dict = {name: 0 for name in ends}
    for vertex, words, lineno in rots:
        toks = []
        seen_here = set()
        for word in words:
            if "." in word:
                name, _, endtxt = word.partition(".")
                if endtxt not in ("0", "1"):
                    raise ParseError(f"bad end selector in {word!r}", lineno)
                if name not in ends:
                    raise ParseError(f"unknown edge {name!r}", lineno)
                u, v = ends[name]
                if u != v:
                    raise ParseError(
                        f"end selector on non-loop edge {name!r}", lineno)
                end = int(endtxt)
                tok = (name, end)
            else:
                name = word
                if name not in ends:
                    raise ParseError(f"unknown edge {name!r}", lineno)
                u, v = ends[name]
                if u == v:
                    raise ParseError(
                        f"loop {name!r} needs .0/.1 end selectors", lineno)
                if vertex == u:
                    tok = (name, 0)
                elif vertex == v:
                    tok = (name, 1)
                else:
                    raise ParseError(
                        f"edge {name!r} is not incident to vertex {vertex!r}", lineno)
            if tok in seen_here:
                raise ParseError(
                    f"edge end {word!r} listed twice at vertex {vertex!r}", lineno)
            if ends[tok[0]][tok[1]] != vertex:
                raise ParseError(
                    f"edge {tok[0]!r} end {tok[1]} belongs to vertex "
                    f"{ends[tok[0]][tok[1]]!r}, not {vertex!r}", lineno)
            seen_here.add(tok)
            occurrences[tok[0]] += 1
            toks.append(tok)
        if orientation == "anticlockwise-faces":
            toks.reverse()
        rotations[vertex] = toks

    for name, count in occurrences.items():
        if count != 2:
            raise ParseError(
                f"edge {name!r} appears in {count} rotation position(s); need 2",
                edge_line[name])
    try:
        return make_map(edges, rotations)
    except MapStructureError as exc:  # all structural cases are caught above
        raise ParseError(str(exc)) from exc


def _token(m: EmbeddedMap, dart: int) -> str:
    name = m.edge_of(dart)
    if m.dart_origin[dart] == m.dart_origin[dart ^ 1]:
        return f"{name}.{dart % 2}"
    return str(name)


def serialize(m: EmbeddedMap) -> str:
    """Canonical document for m; requires plain-word vertex and edge names."""
    for v in m.vertices:
        if not isinstance(v, str) or not _NAME_RE.match(v):
            raise ValueError(f"vertex id {v!r} not serializable")
    for e in m.edges:
        if not isinstance(e, str) or not _NAME_RE.match(e):
            raise ValueError(f"edge id {e!r} not serializable")

    lines = [f"order {m.order}"]
    for name in sorted(m.edges):
        k = m.edges.index(name)
        u, v = m.endpoints(k)
        lines.append(f"edge {name} {u} {v}")
    for vertex in sorted(m.vertices):
        cyc = m.rotation_at(vertex)
        toks = [_token(m, d) for d in cyc]
        start = toks.index(min(toks))
        toks = toks[start:] + toks[:start]
        lines.append(f"rot {vertex} " + " ".join(toks))
    return "\n".join(lines) + "\n"


def map_to_dot(m: EmbeddedMap) -> str:
    """Undirected multigraph rendering of the map's underlying graph."""
    lines = ["graph map {"]
    for v in sorted(str(v) for v in m.vertices):
        lines.append(f'  "{v}";')
    order = sorted(range(m.n_edges), key=lambda k: str(m.edges[k]))
    for k in order:
        u, v = m.endpoints(k)
        lines.append(f'  "{u}" -- "{v}" [label="{m.edges[k]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def map_to_json_dict(m: EmbeddedMap) -> dict:
    rotations = {}
    for vertex in sorted(m.vertices):
        cyc = m.rotation_at(vertex)
        toks = [_token(m, d) for d in cyc]
        start = toks.index(min(toks))
        rotations[str(vertex)] = toks[start:] + toks[:start]
    return {
        "order": m.order,
        "edges": [[str(name), str(m.endpoints(m.edges.index(name))[0]),
                   str(m.endpoints(m.edges.index(name))[1])]
                  for name in sorted(m.edges)],
        "rotations": rotations,
    }
