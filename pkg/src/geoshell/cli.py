"""``geoshell`` command-line front end.

Exit codes: 0 affirmative (is a convex geometry, is edge-shelling, run
completed), 1 negative verdict with a certificate on stdout, 2 input or
usage error with the message on stderr.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import chordal, circuits, enumeration, formats, recognition, trees

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _default_workers() -> int:
    raw = os.environ.get("GEOSHELL_WORKERS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="geoshell", description="Convex geometries of stem size 2.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, help, file=True):
        s = sub.add_parser(name, help=help)
        if file:
            s.add_argument("file", help="input file, or - for stdin")
        s.add_argument("--json", action="store_true", help="machine-readable output")
        s.add_argument("--out", help="write the main output here instead of stdout")
        return s

    cmd("check", "check the convex-geometry axioms of a circuit family")
    s = cmd("trace", "restrict a circuit family to a subset")
    s.add_argument("--subset", required=True, help="space-separated element names")
    cmd("tree-circuits", "edge-shelling circuits of a tree")
    cmd("vertex-circuits", "vertex-shelling circuits of a tree")
    s = cmd("contract", "contract tree edges")
    s.add_argument("--remove", required=True, help="space-separated edge labels")
    s.add_argument("--dot", metavar="PATH")
    s = cmd("recognize", "decide edge-shelling, reconstructing a tree or naming a forbidden minor")
    s.add_argument("--dot", metavar="PATH", help="write the reconstructed tree as DOT")
    s.add_argument("--hasse-dot", metavar="PATH", help="write the Hasse diagram as DOT")
    s = cmd("enumerate", "catalog of trace-minimal non-convex-geometries", file=False)
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--unpruned", action="store_true")
    s.add_argument("--workers", type=int, default=None)
    s = cmd("chordal-circuits", "simplicial-shelling circuits of a chordal graph")
    s.add_argument("--dot", metavar="PATH")
    s = cmd("chordal-escape", "search a chordal graph whose trace is not a simplicial shelling", file=False)
    s.add_argument("--max-n", type=int, default=8)
    s.add_argument("--dot", metavar="PATH")
    cmd("canon", "canonical form of a circuit family")
    s = cmd("size-bound", "sample the five-element bound for trace-minimal non-convex-geometries", file=False)
    s.add_argument("--size", type=int, default=6)
    s.add_argument("--samples", type=int, default=100_000)
    s.add_argument("--seed", type=int, default=0)
    return p


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _family(args) -> circuits.CircuitFamily:
    return formats.load_family(formats.read_text(args.file))


def _tree(args) -> trees.LabeledTree:
    return formats.load_tree(formats.read_text(args.file))


def _names_to_ids(family, raw: str) -> frozenset:
    out = set()
    for name in raw.split():
        try:
            out.add(family.id_of(name))
        except KeyError:
            raise UsageError(f"unknown element {name!r}") from None
    return frozenset(out)


def do_check(args) -> int:
    family = _family(args)
    violation = circuits.check_rooted_axioms(family)
    ok = violation is None
    oracle = None
    if len(family.ground) <= circuits.MAX_EXHAUSTIVE:
        oracle = circuits.is_convex_geometry_oracle(family)
    if args.json:
        out = {"convex_geometry": ok, "oracle": oracle, "stem_sizes": sorted(family.stem_sizes)}
        if violation is not None:
            out["violation"] = violation.to_json(family)
        _emit(args, _dump(out))
    elif ok:
        _emit(args, "convex geometry\n")
    else:
        described = " ".join(family.describe(c) for c in violation.circuits)
        _emit(args, f"not a convex geometry: {violation.which.value} {described}\n")
    return EXIT_OK if ok else EXIT_NEGATIVE


def _write_family(args, family) -> None:
    _emit(args, _dump(formats.family_to_json(family)) if args.json else formats.format_family(family))


def do_trace(args) -> int:
    family = _family(args)
    _write_family(args, circuits.trace(family, _names_to_ids(family, args.subset)))
    return EXIT_OK


def do_tree_circuits(args) -> int:
    _write_family(args, trees.edge_shelling_circuits(_tree(args)))
    return EXIT_OK


def do_vertex_circuits(args) -> int:
    family = trees.vertex_shelling_circuits(_tree(args))
    wide = trees.wide_stems(family)
    if args.json:
        out = formats.family_to_json(family)
        out["wide_stems"] = [family.describe(c) for c in wide]
        _emit(args, _dump(out))
    else:
        text = formats.format_family(family)
        text += "".join(f"# stem size {len(c.stem)}: {family.describe(c)}\n" for c in wide)
        _emit(args, text)
    return EXIT_OK


def do_contract(args) -> int:
    tree = _tree(args)
    lookup = {tree.label_name(lab): lab for lab in tree.labels}
    try:
        remove = {lookup[name] for name in args.remove.split()}
    except KeyError as exc:
        raise UsageError(f"unknown edge label {exc.args[0]!r}") from None
    result = trees.contract(tree, remove)
    _emit(args, _dump(formats.tree_to_json(result)) if args.json else formats.format_tree(result))
    if args.dot:
        Path(args.dot).write_text(formats.tree_to_dot(result), encoding="utf-8")
    return EXIT_OK


def do_recognize(args) -> int:
    family = _family(args)
    cert = recognition.recognize(family)
    if args.json:
        _emit(args, _dump(cert.to_json()))
    elif cert.is_edge_shelling:
        _emit(args, "edge-shelling\n" + formats.format_tree(cert.tree))
    elif cert.reason == "stem-size":
        _emit(args, f"not edge-shelling: stem of size {len(cert.circuit.stem)} in {family.describe(cert.circuit)}\n")
    else:
        witness = " ".join(family.name(e) for e in cert.witness)
        mapping = " ".join(f"{family.name(e)}={recognition.MINOR_LABELS[c]}" for e, c in sorted(cert.mapping.items()))
        _emit(args, f"not edge-shelling: Type {cert.minor_type} on {{{witness}}} ({mapping})\n")
    if cert.is_edge_shelling and args.dot:
        Path(args.dot).write_text(formats.tree_to_dot(cert.tree), encoding="utf-8")
    if cert.is_edge_shelling and args.hasse_dot and family.ground:
        x, parallel, covers = recognition.hasse_for(family)
        Path(args.hasse_dot).write_text(formats.hasse_to_dot(family, x, covers, parallel), encoding="utf-8")
    return EXIT_OK if cert.is_edge_shelling else EXIT_NEGATIVE


def do_enumerate(args) -> int:
    if not 3 <= args.size <= 5:
        raise UsageError("--size must lie in 3..5")
    workers = args.workers if args.workers is not None else _default_workers()
    entries = enumeration.catalog(args.size, unpruned=args.unpruned or None, workers=workers)
    if args.json:
        out = [
            {"size": e.size, "circuits": e.circuit_count, "family": formats.family_to_json(e.family)}
            for e in entries
        ]
        _emit(args, _dump(out))
    else:
        _emit(args, enumeration.format_catalog(entries))
    return EXIT_OK


def do_chordal_circuits(args) -> int:
    g = formats.load_graph(formats.read_text(args.file))
    chordal_ok, witness = chordal.is_chordal(g)
    if not chordal_ok:
        cycle = [g.name(v) for v in witness]
        if args.json:
            _emit(args, _dump({"chordal": False, "chordless_cycle": cycle}))
        else:
            _emit(args, "not chordal: chordless cycle " + " ".join(cycle) + "\n")
        return EXIT_NEGATIVE
    _write_family(args, chordal.simplicial_shelling_circuits(g))
    if args.dot:
        Path(args.dot).write_text(formats.graph_to_dot(g), encoding="utf-8")
    return EXIT_OK


def do_chordal_escape(args) -> int:
    if not 1 <= args.max_n <= chordal.MAX_REALIZE:
        raise UsageError(f"--max-n must lie in 1..{chordal.MAX_REALIZE}")
    found = chordal.find_trace_escape(args.max_n)
    if found is None:
        _emit(args, _dump({"found": False}) if args.json else f"no escape with at most {args.max_n} vertices\n")
        return EXIT_NEGATIVE
    g = found.graph
    if args.json:
        out = {
            "found": True,
            "graph": formats.graph_to_json(g),
            "removed": g.name(found.removed),
            "traced": formats.family_to_json(found.traced),
        }
        _emit(args, _dump(out))
    else:
        text = "# chordal graph\n" + formats.format_graph(g)
        text += f"# removed vertex {g.name(found.removed)}; traced circuits (no chordal realiser)\n"
        text += formats.format_family(found.traced)
        _emit(args, text)
    if args.dot:
        Path(args.dot).write_text(formats.graph_to_dot(g), encoding="utf-8")
    return EXIT_OK


def do_canon(args) -> int:
    family = _family(args)
    if len(family.ground) > circuits.MAX_PERMUTATION:
        raise UsageError(f"canonical form needs at most {circuits.MAX_PERMUTATION} elements")
    form = circuits.canonical_form(family)
    canon = circuits.from_canonical(form, enumeration.LETTERS[: form[0]])
    if args.json:
        out = {"n": form[0], "encoding": [[list(s), r] for s, r in form[1]]}
        _emit(args, _dump({**out, **formats.family_to_json(canon)}))
    else:
        _emit(args, formats.format_family(canon))
    return EXIT_OK


def do_size_bound(args) -> int:
    report = enumeration.verify_size_bound(args.samples, args.size, args.seed)
    out = {
        "n": report.n,
        "samples": report.samples,
        "seed": report.seed,
        "non_convex": report.non_convex,
        "skipped": report.skipped,
        "largest_witness": report.largest_witness,
        "counterexamples": len(report.counterexamples),
    }
    if args.json:
        _emit(args, _dump(out))
    else:
        _emit(args, "".join(f"{k}: {v}\n" for k, v in out.items()))
    return EXIT_OK if report.ok else EXIT_NEGATIVE


COMMANDS = {
    "check": do_check,
    "trace": do_trace,
    "tree-circuits": do_tree_circuits,
    "vertex-circuits": do_vertex_circuits,
    "contract": do_contract,
    "recognize": do_recognize,
    "enumerate": do_enumerate,
    "chordal-circuits": do_chordal_circuits,
    "chordal-escape": do_chordal_escape,
    "canon": do_canon,
    "size-bound": do_size_bound,
}


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except (UsageError, formats.ParseError, recognition.NotAConvexGeometry, OSError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"geoshell: error: {msg}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
