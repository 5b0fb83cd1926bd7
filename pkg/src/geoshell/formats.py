"""Text and JSON formats for circuit families, trees and graphs, plus DOT export.

Circuit family text::

    # comment
    ground: a b c d
    a c -> b

Tree text: ``vertices: n`` then ``u v label`` per edge.  Graph text:
``vertices: n`` (or a list of names) then ``u v`` per edge.
"""
from __future__ import annotations

import json
import re
import sys
from pathlib import Path

from .circuits import CircuitFamily, RootedSet
from .trees import LabeledTree, TreeError
from .chordal import SimpleGraph

_TOKEN = re.compile(r"->|(?:(?!->)\S)+")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line, self.col = line, col
        where = ""
        if line is not None:
            where = f"line {line}" + (f", col {col}" if col is not None else "") + ": "
        super().__init__(where + message)


def _lines(text: str):
    """Yield ``(line_no, [(col, token), ...])`` for non-blank lines, comments stripped."""
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        toks = [(m.start() + 1, m.group()) for m in _TOKEN.finditer(body)]
        if toks:
            yield no, toks


def _header(line_no: int, toks: list, key: str) -> list:
    col, first = toks[0]
    if first == key + ":":
        return toks[1:]
    if first.startswith(key + ":"):
        rest = first[len(key) + 1:]
        return [(col + len(key) + 1, rest)] + toks[1:]
    raise ParseError(f"expected '{key}:' header", line_no, col)


def parse_family(text: str) -> CircuitFamily:
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty input, expected 'ground:' header", 1, 1)
    no, toks = lines[0]
    ground_toks = _header(no, toks, "ground")
    ids = {}
    for col, name in ground_toks:
        if name in ids:
            raise ParseError(f"duplicate element {name!r}", no, col)
        if name == "->":
            raise ParseError("'->' in ground line", no, col)
        ids[name] = len(ids)
    circuits = set()
    for no, toks in lines[1:]:
        arrows = [i for i, (_, t) in enumerate(toks) if t == "->"]
        if len(arrows) != 1:
            raise ParseError("expected exactly one '->'", no, toks[0][0])
        k = arrows[0]
        stem_toks, root_toks = toks[:k], toks[k + 1:]
        if not stem_toks:
            raise ParseError("empty stem", no, toks[k][0])
        if len(root_toks) != 1:
            col = root_toks[1][0] if root_toks else toks[k][0]
            raise ParseError("expected exactly one root after '->'", no, col)
        for col, name in stem_toks + root_toks:
            if name not in ids:
                raise ParseError(f"unknown element {name!r}", no, col)
        stem = set()
        for col, name in stem_toks:
            if ids[name] in stem:
                raise ParseError(f"element {name!r} repeated in stem", no, col)
            stem.add(ids[name])
        rcol, rname = root_toks[0]
        if ids[rname] in stem:
            raise ParseError(f"root {rname!r} lies in its own stem", no, rcol)
        circuits.add(RootedSet(frozenset(stem), ids[rname]))
    return CircuitFamily(frozenset(ids.values()), frozenset(circuits), {i: n for n, i in ids.items()})


def format_family(family: CircuitFamily) -> str:
    out = ["ground: " + " ".join(family.name(e) for e in family.elements_sorted())]
    for c in family.sorted_circuits():
        out.append(" ".join(family.name(s) for s in sorted(c.stem)) + " -> " + family.name(c.root))
    return "\n".join(out) + "\n"


def family_to_json(family: CircuitFamily) -> dict:
    return {
        "ground": [family.name(e) for e in family.elements_sorted()],
        "circuits": [
            {"stem": [family.name(s) for s in sorted(c.stem)], "root": family.name(c.root)}
            for c in family.sorted_circuits()
        ],
    }


def family_from_json(data) -> CircuitFamily:
    if not isinstance(data, dict) or "ground" not in data:
        raise ParseError("JSON family needs a 'ground' list")
    ids = {}
    for k, name in enumerate(data["ground"]):
        if not isinstance(name, str) or name in ids:
            raise ParseError(f"ground[{k}]: bad or duplicate name {name!r}")
        ids[name] = len(ids)
    circuits = set()
    for k, c in enumerate(data.get("circuits", [])):
        try:
            stem, root = c["stem"], c["root"]
        except (KeyError, TypeError):
            raise ParseError(f"circuits[{k}]: needs 'stem' and 'root'") from None
        for name in list(stem) + [root]:
            if name not in ids:
                raise ParseError(f"circuits[{k}]: unknown element {name!r}")
        if root in stem:
            raise ParseError(f"circuits[{k}]: root {root!r} lies in its own stem")
        if not stem:
            raise ParseError(f"circuits[{k}]: empty stem")
        circuits.add(RootedSet(frozenset(ids[s] for s in stem), ids[root]))
    return CircuitFamily(frozenset(ids.values()), frozenset(circuits), {i: n for n, i in ids.items()})


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None


def _is_json(text: str) -> bool:
    return text.lstrip().startswith("{")


def load_family(text: str) -> CircuitFamily:
    return family_from_json(_load_json(text)) if _is_json(text) else parse_family(text)


def _int(tok: tuple, line: int, what: str) -> int:
    col, s = tok
    try:
        return int(s)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {s!r}", line, col) from None


def parse_tree(text: str) -> LabeledTree:
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty input, expected 'vertices:' header", 1, 1)
    no, toks = lines[0]
    rest = _header(no, toks, "vertices")
    if len(rest) != 1:
        raise ParseError("expected a vertex count", no, toks[0][0])
    n = _int(rest[0], no, "vertex count")
    lids = {}
    edges = []
    for no, toks in lines[1:]:
        if len(toks) != 3:
            raise ParseError("expected 'u v label'", no, toks[0][0])
        u, v = _int(toks[0], no, "vertex"), _int(toks[1], no, "vertex")
        for tok, w in ((toks[0], u), (toks[1], v)):
            if not 0 <= w < n:
                raise ParseError(f"vertex {w} outside 0..{n - 1}", no, tok[0])
        col, lab = toks[2]
        if lab in lids:
            raise ParseError(f"duplicate edge label {lab!r}", no, col)
        lids[lab] = len(lids)
        edges.append((u, v, lids[lab]))
    try:
        return LabeledTree(n, tuple(edges), {i: lab for lab, i in lids.items()})
    except TreeError as exc:
        raise ParseError(str(exc)) from None


def format_tree(tree: LabeledTree) -> str:
    out = [f"vertices: {tree.n_vertices}"]
    out += [f"{u} {v} {tree.label_name(lab)}" for u, v, lab in tree.edges]
    return "\n".join(out) + "\n"


def tree_to_json(tree: LabeledTree) -> dict:
    return {"vertices": tree.n_vertices, "edges": [[u, v, tree.label_name(lab)] for u, v, lab in tree.edges]}


def tree_from_json(data) -> LabeledTree:
    try:
        n = int(data["vertices"])
        raw = [(int(u), int(v), str(lab)) for u, v, lab in data["edges"]]
    except (KeyError, TypeError, ValueError):
        raise ParseError("JSON tree needs 'vertices' and 'edges' as [u, v, label]") from None
    lids = {}
    edges = []
    for u, v, lab in raw:
        if lab in lids:
            raise ParseError(f"duplicate edge label {lab!r}")
        lids[lab] = len(lids)
        edges.append((u, v, lids[lab]))
    try:
        return LabeledTree(n, tuple(edges), {i: lab for lab, i in lids.items()})
    except TreeError as exc:
        raise ParseError(str(exc)) from None


def load_tree(text: str) -> LabeledTree:
    return tree_from_json(_load_json(text)) if _is_json(text) else parse_tree(text)


def parse_graph(text: str) -> SimpleGraph:
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty input, expected 'vertices:' header", 1, 1)
    no, toks = lines[0]
    rest = _header(no, toks, "vertices")
    if len(rest) == 1 and rest[0][1].isdigit():
        n = int(rest[0][1])
        index = {str(i): i for i in range(n)}
        names = None
    else:
        index = {}
        for col, name in rest:
            if name in index:
                raise ParseError(f"duplicate vertex {name!r}", no, col)
            index[name] = len(index)
        n = len(index)
        names = {i: name for name, i in index.items()}
    edges = set()
    for no, toks in lines[1:]:
        if len(toks) != 2:
            raise ParseError("expected 'u v'", no, toks[0][0])
        ends = []
        for col, name in toks:
            if name not in index:
                raise ParseError(f"unknown vertex {name!r}", no, col)
            ends.append(index[name])
        if ends[0] == ends[1]:
            raise ParseError("loop edge", no, toks[1][0])
        edges.add(frozenset(ends))
    return SimpleGraph(n, frozenset(edges), names)


def format_graph(g: SimpleGraph) -> str:
    if g.names:
        head = "vertices: " + " ".join(g.name(v) for v in range(g.n))
    else:
        head = f"vertices: {g.n}"
    out = [head] + [f"{g.name(u)} {g.name(v)}" for u, v in g.sorted_edges()]
    return "\n".join(out) + "\n"


def graph_to_json(g: SimpleGraph) -> dict:
    vertices = [g.name(v) for v in range(g.n)] if g.names else g.n
    return {"vertices": vertices, "edges": [[g.name(u), g.name(v)] for u, v in g.sorted_edges()]}


def graph_from_json(data) -> SimpleGraph:
    try:
        verts = data["vertices"]
        raw = data["edges"]
    except (KeyError, TypeError):
        raise ParseError("JSON graph needs 'vertices' and 'edges'") from None
    if isinstance(verts, int):
        index = {str(i): i for i in range(verts)}
        names = None
    else:
        index = {str(name): i for i, name in enumerate(verts)}
        names = {i: str(name) for i, name in enumerate(verts)}
    edges = set()
    for k, pair in enumerate(raw):
        try:
            u, v = (index[str(w)] for w in pair)
        except (KeyError, ValueError):
            raise ParseError(f"edges[{k}]: unknown vertex or malformed pair") from None
        if u == v:
            raise ParseError(f"edges[{k}]: loop edge")
        edges.add(frozenset((u, v)))
    return SimpleGraph(len(index), frozenset(edges), names)


def load_graph(text: str) -> SimpleGraph:
    return graph_from_json(_load_json(text)) if _is_json(text) else parse_graph(text)


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def tree_to_dot(tree: LabeledTree, name: str = "tree") -> str:
    out = [f"graph {name} {{"]
    for v in range(tree.n_vertices):
        out.append(f"  {v} [label={_q(tree.vertex_name(v))}];")
    for u, v, lab in tree.edges:
        out.append(f"  {u} -- {v} [label={_q(tree.label_name(lab))}];")
    out.append("}")
    return "\n".join(out) + "\n"


def hasse_to_dot(family: CircuitFamily, x: int, covers: dict, parallel=()) -> str:
    """Cover relation drawn upwards (``y -> y'``); parallel elements hang off ``x`` dashed."""
    out = ["digraph hasse {", "  rankdir=BT;"]
    for e in sorted({x, *covers, *covers.values()}):
        out.append(f"  {_q(family.name(e))};")
    for y, top in sorted(covers.items()):
        out.append(f"  {_q(family.name(y))} -> {_q(family.name(top))};")
    for p in sorted(parallel):
        out.append(f"  {_q(family.name(p))} -> {_q(family.name(x))} [style=dashed];")
    out.append("}")
    return "\n".join(out) + "\n"


def graph_to_dot(g: SimpleGraph, name: str = "G") -> str:
    out = [f"graph {name} {{"]
    out += [f"  {_q(g.name(v))};" for v in range(g.n)]
    out += [f"  {_q(g.name(u))} -- {_q(g.name(v))};" for u, v in g.sorted_edges()]
    out.append("}")
    return "\n".join(out) + "\n"


def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")
