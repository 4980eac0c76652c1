"""Command-line front end: parse inputs, dispatch computations, emit
deterministic JSON (default) or aligned tables.

Exit codes: 0 success, 2 parse error, 3 precondition or size-guard
violation, 4 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import __version__
from .abelian import abelianization
from .chen import chen_ranks, modp_chen_ranks
from .errors import InvariantError, ParseError, PreconditionError
from .extensions import bestvina_brady_tree, verify_transfer
from .fox import (alexander_module, b_mod_p, b_presentation_koszul,
                  b_univariate)
from .jumploci import cv_membership, finiteness_test, jump_ideal, point_for
from .lie import cup_data, holonomy_chen_ranks, resonance_ideal, resonance_membership
from .presentation import (SplitExtensionData, builtin_group,
                           complete_graph, cycle_graph,
                           heisenberg_quotient_form, parse_presentation,
                           parse_word, path_graph)

SCHEMA = "alexlab/1"


def _parse_graph(text):
    text = text.strip()
    m = re.fullmatch(r"(path|cycle|complete)\((\d+)\)", text)
    if m:
        n = int(m.group(2))
        return {"path": path_graph, "cycle": cycle_graph,
                "complete": complete_graph}[m.group(1)](n)
    m = re.fullmatch(r"edges\(([-0-9,\s]*)\)", text)
    if m:
        edges = []
        for part in m.group(1).split(","):
            part = part.strip()
            if not part:
                continue
            u, v = part.split("-")
            edges.append((int(u), int(v)))
        return edges
    raise ParseError(f"cannot parse graph spec {text!r}")


def _parse_builtin(uri):
    body = uri[len("builtin:"):]
    m = re.fullmatch(r"(\w+)(?:\((.*)\))?", body)
    if not m:
        raise ParseError(f"malformed builtin URI {uri!r}")
    name, args = m.group(1), m.group(2)
    if name in ("heisenberg_quotient", "heisenberg_quotient_form"):
        return heisenberg_quotient_form()
    if name == "raag":
        return builtin_group("raag", (_parse_graph(args or ""),))
    params = ()
    if args:
        params = tuple(int(a.strip()) for a in args.split(","))
    return builtin_group(name, params)


def load_presentation(args):
    sources = [s for s in (args.input, args.file) if s]
    if len(sources) != 1:
        raise ParseError("provide exactly one input (positional or -f FILE)")
    if args.file:
        with open(args.file) as fh:
            text = fh.read()
    else:
        text = args.input
    text = text.strip()
    if text.startswith("builtin:"):
        return _parse_builtin(text)
    return parse_presentation(text)


_MINUS = str.maketrans({"−": "-"})


def _parse_value(tok):
    tok = tok.strip().translate(_MINUS)
    m = re.fullmatch(r"zeta\((\d+)\)(?:\^(-?\d+))?", tok)
    if m:
        return ("zeta", int(m.group(1)), int(m.group(2) or 1))
    return Fraction(tok)


def parse_point(spec, pres):
    """Parse `free=[...];torsion=[...]`; free entries are rationals or
    zeta(m)^k, torsion entries are the VALUES of the coordinates
    (1, -1, or zeta(d)^e)."""
    from .abelian import abelianization as _ab

    data = _ab(pres)
    free, torsion = [], []
    spec = spec.strip()
    for chunk in spec.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        m = re.fullmatch(r"(free|torsion)\s*=\s*\[(.*)\]", chunk)
        if not m:
            raise ParseError(f"cannot parse point chunk {chunk!r}")
        entries = [e for e in (x.strip() for x in m.group(2).split(",")) if e]
        values = [_parse_value(e) for e in entries]
        if m.group(1) == "free":
            free = values
        else:
            torsion = values
    exps = []
    for value, d in zip(torsion, data.torsion_divisors):
        exps.append(_torsion_value_to_exponent(value, d))
    if len(torsion) != len(data.torsion_divisors):
        raise PreconditionError(
            f"expected {len(data.torsion_divisors)} torsion coordinates")
    return point_for(pres, free, exps)


def _torsion_value_to_exponent(value, d):
    if isinstance(value, tuple):
        _z, m, k = value
        if d % m:
            raise PreconditionError(
                f"torsion value of order {m} incompatible with divisor {d}")
        return (d // m) * k
    value = Fraction(value)
    if value == 1:
        return 0
    if value == -1:
        if d % 2:
            raise PreconditionError(f"-1 is not a root of unity of order dividing {d}")
        return d // 2
    raise PreconditionError(f"torsion coordinate {value} is not a root of unity")


def _num(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else str(x.numerator)
    return x


def emit(args, payload, pres=None, extra_input=None):
    doc = {"schema": SCHEMA, "version": __version__}
    if pres is not None:
        doc["input"] = pres.canonical_str()
    elif extra_input is not None:
        doc["input"] = extra_input
    doc.update(payload)
    if args.format == "json":
        print(json.dumps(doc, sort_keys=True, default=_num))
    else:
        width = max(len(k) for k in doc)
        for k in sorted(doc):
            print(f"{k.ljust(width)}  {doc[k]}")
    return 0


# -- verb handlers ----------------------------------------------------------


def cmd_abelianize(args):
    pres = load_presentation(args)
    data = abelianization(pres)
    return emit(args, {"rank": data.free_rank,
                       "torsion": list(data.torsion_divisors)}, pres)


def cmd_alexander(args):
    pres = load_presentation(args)
    if args.p:
        fm = b_mod_p(pres, args.p)
        payload = {
            "p": args.p,
            "dimension": fm.dimension,
            "actions": [[list(row) for row in mat] for mat in fm.actions],
        }
        return emit(args, payload, pres)
    if args.matrix:
        mod = alexander_module(pres, args.flavor)
        return emit(args, {"flavor": args.flavor,
                           "presentation": mod.serialize()}, pres)
    if pres.is_commutator_relators():
        mod = b_presentation_koszul(pres)
        route = "koszul"
    else:
        mod = b_univariate(pres)
        route = "univariate"
    return emit(args, {"route": route, "presentation": mod.serialize()}, pres)


def cmd_chen(args):
    pres = load_presentation(args)
    theta = chen_ranks(pres, args.max_n)
    return emit(args, {"theta": list(theta)}, pres)


def cmd_chen_p(args):
    pres = load_presentation(args)
    theta = modp_chen_ranks(pres, args.p, args.max_n)
    return emit(args, {"p": args.p, "theta_p": list(theta)}, pres)


def cmd_cv_ideal(args):
    pres = load_presentation(args)
    ideal = jump_ideal(pres, args.depth, args.flavor)
    return emit(args, {"depth": args.depth, "flavor": args.flavor,
                       "ideal": ideal.serialize()}, pres)


def cmd_cv_member(args):
    pres = load_presentation(args)
    point = parse_point(args.point, pres)
    member = cv_membership(pres, point, args.depth, args.flavor)
    return emit(args, {"depth": args.depth, "flavor": args.flavor,
                       "point": point.serialize(), "member": member}, pres)


def cmd_resonance(args):
    pres = load_presentation(args)
    cd = cup_data(pres)
    vector = [Fraction(v.strip().translate(_MINUS))
              for v in args.point.strip().lstrip("a=").strip("[]").split(",")]
    payload = {"depth": args.depth,
               "point": [str(v) for v in vector],
               "member": resonance_membership(cd, vector, args.depth)}
    if args.ideal:
        payload["ideal"] = resonance_ideal(cd, args.depth).serialize()
    return emit(args, payload, pres)


def cmd_holonomy_chen(args):
    pres = load_presentation(args)
    theta = holonomy_chen_ranks(cup_data(pres), args.max_n)
    return emit(args, {"theta_bar": list(theta)}, pres)


def cmd_check_extension(args):
    if args.bb_tree:
        ext = bestvina_brady_tree(_parse_graph(args.bb_tree))
        label = f"bb-tree:{args.bb_tree}"
    else:
        if not args.file:
            raise ParseError("check-extension needs -f FILE or --bb-tree")
        with open(args.file) as fh:
            doc = json.load(fh)
        kernel = parse_presentation(doc["kernel"])
        quotient = parse_presentation(doc["quotient"])
        action = [
            [parse_word(w, kernel.generator_names) for w in row]
            for row in doc["action"]
        ]
        ext = SplitExtensionData(kernel, quotient, action)
        label = args.file
    report = verify_transfer(ext, args.max_n, primes=tuple(args.p or ()))
    return emit(args, {"report": report.serialize()}, extra_input=label)


def cmd_builtin(args):
    pres = _parse_builtin("builtin:" + args.name)
    return emit(args, {"generators": pres.num_generators,
                       "relators": [pres.word_str(r) for r in pres.relators]},
                pres)


def cmd_finiteness(args):
    pres = load_presentation(args)
    verdict = finiteness_test(pres, args.depth)
    return emit(args, {"depth": args.depth, "finite": verdict == "finite"},
                pres)


def build_parser():
    top = argparse.ArgumentParser(
        prog="alexlab",
        description="Exact Alexander invariants, Chen ranks, and jump loci "
                    "for finitely presented groups.")
    sub = top.add_subparsers(dest="verb", required=True)

    def common(p, needs_input=True):
        p.add_argument("--format", choices=("json", "table"), default="json")
        if needs_input:
            p.add_argument("input", nargs="?",
                           help="presentation DSL or builtin:NAME(ARGS)")
            p.add_argument("-f", "--file", help="read the input from a file")

    p = sub.add_parser("abelianize", help="Smith normal form of G_ab")
    common(p)
    p.set_defaults(func=cmd_abelianize)

    p = sub.add_parser("alexander", help="Alexander invariant presentation")
    common(p)
    p.add_argument("--flavor", choices=("ab", "abf"), default="ab")
    p.add_argument("--matrix", action="store_true",
                   help="emit the Fox matrix (Alexander module) instead")
    p.add_argument("--p", type=int, help="mod-p Alexander invariant")
    p.set_defaults(func=cmd_alexander)

    p = sub.add_parser("chen", help="rational Chen ranks")
    common(p)
    p.add_argument("--max-n", type=int, required=True)
    p.set_defaults(func=cmd_chen)

    p = sub.add_parser("chen-p", help="mod-p Chen ranks")
    common(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.set_defaults(func=cmd_chen_p)

    p = sub.add_parser("cv-ideal", help="characteristic-variety ideal")
    common(p)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--flavor", choices=("V", "W", "Y"), default="V")
    p.set_defaults(func=cmd_cv_ideal)

    p = sub.add_parser("cv-member", help="characteristic-variety membership")
    common(p)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--flavor", choices=("V", "W"), default="V")
    p.add_argument("--point", required=True,
                   help='e.g. "free=[-1];torsion=[1]" (torsion entries are '
                        "values: 1, -1, or zeta(d)^e)")
    p.set_defaults(func=cmd_cv_member)

    p = sub.add_parser("resonance", help="resonance-variety membership")
    common(p)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--point", required=True, help='rational vector "[a1,...]"')
    p.add_argument("--ideal", action="store_true",
                   help="also emit the resonance ideal")
    p.set_defaults(func=cmd_resonance)

    p = sub.add_parser("holonomy-chen", help="holonomy Chen ranks")
    common(p)
    p.add_argument("--max-n", type=int, required=True)
    p.set_defaults(func=cmd_holonomy_chen)

    p = sub.add_parser("check-extension", help="transfer verification")
    common(p, needs_input=False)
    p.add_argument("-f", "--file", help="JSON extension data")
    p.add_argument("--bb-tree", help='tree spec, e.g. "path(3)" or "edges(1-2,2-3)"')
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--p", type=int, action="append",
                   help="also verify mod-p data (repeatable)")
    p.set_defaults(func=cmd_check_extension)

    p = sub.add_parser("builtin", help="print a builtin presentation")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("name", help="e.g. free(2), trefoil, raag(path(3))")
    p.set_defaults(func=cmd_builtin)

    p = sub.add_parser("finiteness", help="finiteness of V_k")
    common(p)
    p.add_argument("--depth", type=int, required=True)
    p.set_defaults(func=cmd_finiteness)
    return top


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return 3
    except InvariantError as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
