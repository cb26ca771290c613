"""Command-line interface: ``balance-lab <command> ...``.

Every command prints one JSON document followed by a newline.  Exit status
is 0 on success, 1 for domain errors (reported as ``{"error": ...}``) and 2
for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import core, enumeration, orderings, witnesses
from .core import Antimatroid, AntimatroidError, SetFamily
from .graphs import (Graph, PosetRelation, elimination_antimatroid,
                     generate_block_graph, generate_dh_graph, generate_ktree,
                     generate_split_graph, node_search_antimatroid,
                     poset_antimatroid)


class DomainError(Exception):
    """Input that parses but is rejected by the mathematics."""

    def __init__(self, message: str, kind: str = "invalid-input"):
        super().__init__(message)
        self.kind = kind


class UsageError(Exception):
    pass


def frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# -- documents ----------------------------------------------------------------------

def _load_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise DomainError(f"{path} is not valid JSON: {e}") from None


def family_from_document(doc) -> SetFamily:
    """Parse ``{"ground": [labels], "sets": [[labels]]}``."""
    if not isinstance(doc, dict) or "ground" not in doc or "sets" not in doc:
        raise DomainError('a family document needs "ground" and "sets"')
    try:
        return SetFamily.from_sets([str(x) for x in doc["ground"]],
                                   [[str(x) for x in s] for s in doc["sets"]])
    except (KeyError, ValueError, TypeError) as e:
        raise DomainError(str(e).strip('"')) from None


def family_document(a: Antimatroid) -> dict:
    return {"ground": list(a.ground.labels),
            "sets": [a.ground.members(m) for m in a.masks]}


def poset_from_document(doc) -> PosetRelation:
    """Parse ``{"elements": [labels], "relations": [[smaller, larger]]}``."""
    try:
        return PosetRelation.from_relations(doc["elements"], doc.get("relations", []))
    except (KeyError, ValueError, TypeError) as e:
        raise DomainError(f"bad poset document: {e}") from None


def graph_from_document(doc) -> Graph:
    try:
        return Graph.from_json(doc)
    except (KeyError, ValueError, TypeError, IndexError) as e:
        raise DomainError(f"bad graph document: {e}") from None


# -- reports --------------------------------------------------------------------------

def stats_report(a: Antimatroid) -> dict:
    g = a.ground
    delta, pair = core.balance(a)
    roles = core.element_roles(a)
    return {
        "valid": True,
        "n": a.n,
        "family_size": len(a),
        "words": str(core.count_basic_words(a)),
        "delta": frac(delta),
        "delta_pair": None if pair is None else [g.labels[i] for i in pair],
        "height": core.height(a),
        "convex_dimension": core.convex_dimension(a),
        "roles": {side: [g.labels[i] for i, r in enumerate(roles) if getattr(r, side)]
                  for side in ("initial", "final", "independent")},
    }


def certify_report(a: Antimatroid) -> dict:
    report = stats_report(a)
    result = witnesses.certify(a)
    report["certificates"] = [c.to_json(a.ground) for c in result.certificates]
    report["conjecture_ok"] = result.conjecture_ok
    return report


def _antimatroid(path: str) -> Antimatroid:
    fam = family_from_document(_load_json(path))
    try:
        return core.validate(fam)
    except AntimatroidError as e:
        raise DomainError(str(e), type(e).__name__) from None


def cmd_validate(args) -> dict:
    fam = family_from_document(_load_json(args.file))
    try:
        a = core.validate(fam)
    except AntimatroidError as e:
        raise DomainError(str(e), type(e).__name__) from None
    return {"valid": True, "n": a.n, "family_size": len(a)}


def cmd_stats(args) -> dict:
    return stats_report(_antimatroid(args.file))


def cmd_certify(args) -> dict:
    return certify_report(_antimatroid(args.file))


def cmd_scan(args) -> dict:
    if args.jobs < 1:
        raise UsageError("--jobs must be positive")
    try:
        if args.out:
            with open(args.out, "w") as fh:
                report = enumeration.conjecture_scan(args.n, args.dedup, fh, args.jobs)
        else:
            report = enumeration.conjecture_scan(args.n, args.dedup, None, args.jobs)
    except ValueError as e:
        raise DomainError(str(e)) from None
    return report.to_json()


def cmd_construct(args) -> dict:
    doc = _load_json(args.file)
    try:
        if args.kind == "poset":
            a = poset_antimatroid(poset_from_document(doc))
        else:
            g = graph_from_document(doc)
            if args.kind == "elimination":
                a = elimination_antimatroid(g)
            else:
                if args.source is None:
                    raise UsageError("--kind node-search needs --source")
                a = node_search_antimatroid(g, _source(g, args.source))
    except (AntimatroidError, ValueError, KeyError) as e:
        raise DomainError(str(e).strip('"'), type(e).__name__) from None
    out = family_document(a)
    out["report"] = stats_report(a)
    return out


def _source(g: Graph, label: str) -> int:
    if label not in g.labels:
        raise DomainError(f"source {label!r} is not a vertex")
    return g.labels.index(label)


def cmd_generate(args) -> dict:
    try:
        if args.kind == "ktree":
            g = generate_ktree(args.n, args.k, args.seed)
        elif args.kind == "block":
            g = generate_block_graph(args.n, args.seed, max_block=args.max_block)
        elif args.kind == "dh":
            g = generate_dh_graph(args.n, args.seed)
        else:
            if args.clique is None or args.independent is None:
                raise UsageError("--kind split needs --clique and --independent")
            g = generate_split_graph(args.clique, args.independent, args.seed,
                                     distance_hereditary=args.dh)
    except ValueError as e:
        raise DomainError(str(e)) from None
    return g.to_json()


def cmd_explore(args) -> dict:
    """Random gem-free split graphs whose elimination orderings lack a double ladder."""
    found = []
    tried = 0
    for trial in range(args.trials):
        g = generate_split_graph(args.clique, args.independent, args.seed + trial,
                                 distance_hereditary=True)
        a = elimination_antimatroid(g)
        try:
            o = orderings.from_antimatroid(a)
        except orderings.WordCapExceeded:
            continue
        tried += 1
        if len(o) > 1 and witnesses.search_double_ladder_orderings(o) is None:
            delta, pair = orderings.balance(o)
            found.append({"graph": g.to_json(), "words": str(len(o)),
                          "delta": frac(delta),
                          "delta_pair": [g.labels[i] for i in pair]})
    return {"trials": args.trials, "checked": tried, "without_double_ladder": found}


# -- entry point ------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="balance-lab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, fn, help_ in (("validate", cmd_validate, "check the antimatroid axioms"),
                            ("stats", cmd_stats, "balance, height, dimension, roles"),
                            ("certify", cmd_certify, "stats plus balance certificates")):
        q = sub.add_parser(name, help=help_)
        q.add_argument("file", help="family document, or - for stdin")
        q.set_defaults(func=fn)

    q = sub.add_parser("scan", help="balance of every antimatroid on n elements")
    q.add_argument("n", type=int)
    q.add_argument("--dedup", action="store_true", help="one member per isomorphism class")
    q.add_argument("--out", help="write one JSONL record per antimatroid")
    q.add_argument("--jobs", type=int, default=1)
    q.set_defaults(func=cmd_scan)

    q = sub.add_parser("construct", help="antimatroid from a graph or poset")
    q.add_argument("--kind", required=True, choices=("node-search", "elimination", "poset"))
    q.add_argument("--source", help="source vertex label for node search")
    q.add_argument("file")
    q.set_defaults(func=cmd_construct)

    q = sub.add_parser("generate", help="random graph from a class")
    q.add_argument("--kind", required=True, choices=("ktree", "block", "split", "dh"))
    q.add_argument("--n", type=int, default=8)
    q.add_argument("--k", type=int, default=2)
    q.add_argument("--max-block", type=int, default=3)
    q.add_argument("--clique", type=int)
    q.add_argument("--independent", type=int)
    q.add_argument("--dh", action="store_true", help="split graphs: gem-free only")
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=cmd_generate)

    q = sub.add_parser("explore", help="look for gem-free split graphs without double ladders")
    q.add_argument("--clique", type=int, default=3)
    q.add_argument("--independent", type=int, default=4)
    q.add_argument("--trials", type=int, default=50)
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=cmd_explore)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except UsageError as e:
        sys.stderr.write(f"balance-lab: error: {e}\n")
        return 2
    except DomainError as e:
        sys.stdout.write(dump({"valid": False,
                               "error": {"kind": e.kind, "message": str(e)}}))
        return 1
    sys.stdout.write(dump(result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
