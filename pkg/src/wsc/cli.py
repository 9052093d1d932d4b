"""Command line front end: ``wsc orbit | char | kac-char | verify | kl | batch``.

Every subcommand prints plain text by default and a versioned JSON document
with ``--json``.  Rational numbers are always emitted as strings.  Errors exit
with the code attached to the error class and, in JSON mode, print
``{"schema": 1, "error": {...}}``.
"""
from __future__ import annotations

import argparse
import json
import shlex
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Sequence

from . import category_o, pipeline, structure
from .characters import MINUS, FormalCharacter, RationalCharacter
from .errors import NotComparable, ParseError, WscError
from .kl import KLTable
from .nilpotent import ADMISSIBILITY_CAVEAT, build_nilpotent, parse_partition_pair, parse_theta
from .superalgebra import EVEN, ODD, format_rational, parse_algebra, parse_rational, parse_weight
from .weyl import Levi, LeviBlock, WeylGroup, parse_levi

SCHEMA = 1
PARITY = {EVEN: "even", ODD: "odd"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _q(x) -> str:
    return format_rational(Fraction(x))


def _vec(w: Sequence[Fraction]) -> list[str]:
    return [_q(x) for x in w]


def _mono(w: Sequence[Fraction]) -> str:
    return "e^(" + ",".join(_vec(w)) + ")"


# ---------------------------------------------------------------------------
# shared job setup
# ---------------------------------------------------------------------------

def _datum(args):
    datum = parse_algebra(args.algebra)
    if datum.family == "SL":
        from .errors import UnsupportedFamily
        raise UnsupportedFamily("the character pipeline supports gl(m|n) and osp(2|2n)")
    return datum


def _nilpotent(args, datum):
    levi = parse_levi(getattr(args, "levi", None), datum)
    return build_nilpotent(datum, parse_partition_pair(args.nilpotent), levi=levi,
                           theta=parse_theta(getattr(args, "theta", None)),
                           swap_lagrangian=getattr(args, "swap_lagrangian", False))


def _torus_meta(nd) -> dict:
    return {"basis": [_vec(t.entries.get((i, i), 0) for i in range(t.size)) for t in nd.torus_basis],
            "basis_note": "diagonal entries; the k-th coordinate of a torus weight is its pairing with the k-th element",
            "theta": _vec(nd.theta)}


def _ce_note(nd) -> str:
    if nd.datum.family == "GL":
        return "C_e trivial (type A): |I_lambda| defaults to 1"
    if nd.orbit_size_default() == 1:
        return "C_e trivial (regular nilpotent): |I_lambda| defaults to 1"
    return "C_e not known to be trivial: |I_lambda| must be supplied with --orbit-size"


# ---------------------------------------------------------------------------
# orbit
# ---------------------------------------------------------------------------

def cmd_orbit(args) -> tuple[dict, int]:
    datum = _datum(args)
    nd = _nilpotent(args, datum)
    nd.check_odd_part()
    grading = [{"degree": d, "parity": PARITY[p], "dim": c} for (d, p), c in sorted(nd.grading_dims().items())]
    ge: dict = {}
    for par in (EVEN, ODD):
        for d in nd.centralizer_degrees(par):
            ge[(d, par)] = ge.get((d, par), 0) + 1
    V = nd.symplectic_space()
    out = {
        "schema": SCHEMA, "command": "orbit", "algebra": datum.name, "nilpotent": nd.partitions.label(),
        "levi": nd.levi.label(), "torus": _torus_meta(nd),
        "grading": grading,
        "centralizer": [{"degree": d, "parity": PARITY[p], "dim": c} for (d, p), c in sorted(ge.items())],
        "dim_centralizer": {"even": len(nd.centralizer_degrees(EVEN)), "odd": len(nd.centralizer_degrees(ODD))},
        "dim_V": {"even": len(V[EVEN]), "odd": len(V[ODD])},
        "dim_u1": nd.dim_u1,
        "lagrangian_swap": nd.swap_lagrangian,
        "denominator_weights": [_vec(w) for w in nd.denominator_weights()],
        "clifford_weights": [_vec(w) for w in nd.clifford_weights()],
        "component_group": _ce_note(nd),
        "dimension_factor": nd.module_dimension_factor(),
        "caveat": ADMISSIBILITY_CAVEAT,
    }
    return out, 0


def _text_orbit(doc: dict) -> str:
    lines = [f"{doc['algebra']}  nilpotent {doc['nilpotent']}  Levi {doc['levi']}"]
    lines.append("grading: " + ", ".join(f"g({g['degree']})_{g['parity']}={g['dim']}" for g in doc["grading"]))
    lines.append("centralizer: " + ", ".join(f"{g['parity']} deg {g['degree']}: {g['dim']}"
                                            for g in doc["centralizer"]))
    lines.append(f"dim V: even {doc['dim_V']['even']}, odd {doc['dim_V']['odd']};  dim u1 {doc['dim_u1']}")
    lines.append("denominator weights: " + (" ".join("(" + ",".join(w) + ")" for w in doc["denominator_weights"])
                                            or "none"))
    lines.append("clifford weights: " + (" ".join("(" + ",".join(w) + ")" for w in doc["clifford_weights"])
                                         or "none"))
    lines.append(doc["component_group"])
    lines.append(f"dimension factor: {doc['dimension_factor']}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# char / kac-char
# ---------------------------------------------------------------------------

def _char_doc(rc: RationalCharacter, expanded: FormalCharacter, direction) -> dict:
    doc = {"polynomial": expanded.is_polynomial,
           "terms": [{"weight": _vec(w), "coeff": c} for w, c in expanded.sorted_terms(direction)]}
    if expanded.is_polynomial:
        doc["value_at_one"] = expanded.evaluate_at_one()
    else:
        tr = expanded.truncation
        doc["truncation"] = {"direction": _vec(tr.direction), "depth": tr.depth, "reference": _vec(tr.reference)}
    doc["rational"] = {
        "numerator": [{"weight": _vec(w), "coeff": c} for w, c in sorted(rc.numerator.items())],
        "factors": [{"weight": _vec(mu), "factor": "1-e^w" if s == MINUS else "1+e^w"} for mu, s in rc.factors],
    }
    return doc


def _table(args, datum, levi: Levi, lam, kind: str):
    if getattr(args, "table", None):
        return category_o.load_multiplicity_table(args.table, datum, levi)
    if kind == "w0-reference":
        return category_o.even_multiplicity_table(datum, lam, levi)
    return category_o.kac_multiplicity_table(datum, lam, levi)


def cmd_char(args) -> tuple[dict, int]:
    datum = _datum(args)
    nd = _nilpotent(args, datum)
    lam = parse_weight(args.weight, datum.m, datum.n)
    kind = args.module_kind
    depth = pipeline.default_depth() if args.depth is None else args.depth
    direction = parse_theta(args.direction)
    table = _table(args, datum, nd.levi, lam, kind)
    if kind != "w0-reference":
        nd.check_odd_part()
    res = pipeline.run_pipeline(nd, table, args.orbit_size, depth, direction, kind)
    stages = [("soergel_simple", res.soergel), ("wtilde" if kind != "w0-reference" else "w0", res.wtilde)]
    if kind == "w":
        stages.append(("w", res.w))
    chars = {}
    for name, rc in stages:
        chars[name] = _char_doc(rc, rc.expand(res.direction, depth), res.direction)
    out = {
        "schema": SCHEMA, "command": "char", "algebra": datum.name, "nilpotent": nd.partitions.label(),
        "levi": nd.levi.label(), "lambda": args.weight, "module_kind": kind,
        "torus": _torus_meta(nd), "direction": _vec(res.direction), "depth": depth,
        "orbit_size": res.orbit_size, "table": table.to_json(datum.m),
        "denominator_weights": [_vec(w) for w in nd.denominator_weights()],
        "clifford_weights": [] if kind == "w0-reference" else [_vec(w) for w in nd.clifford_weights()],
        "lagrangian_swap": nd.swap_lagrangian,
        "rho_convention": category_o.RHO_CONVENTION,
        "caveat": ADMISSIBILITY_CAVEAT,
        "characters": chars,
    }
    if kind == "w":
        out["dimension_factor"] = nd.module_dimension_factor()
    return out, 0


def _text_char(doc: dict) -> str:
    lines = [f"{doc['algebra']}  nilpotent {doc['nilpotent']}  Levi {doc['levi']}  lambda {doc['lambda']}"]
    for name, ch in doc["characters"].items():
        body = " + ".join(f"{t['coeff']} e^(" + ",".join(t["weight"]) + ")" for t in ch["terms"]) or "0"
        tail = f"   [value at 1: {ch['value_at_one']}]" if ch["polynomial"] else \
            f"   [truncated at depth {ch['truncation']['depth']}]"
        lines.append(f"{name}: {body}{tail}")
    return "\n".join(lines)


def cmd_kac_char(args) -> tuple[dict, int]:
    datum = _datum(args)
    levi = parse_levi(args.levi, datum)
    lam = parse_weight(args.weight, datum.m, datum.n)
    vc = category_o.kac_character_verma_expansion(datum, lam)
    table = category_o.kac_multiplicity_table(datum, lam, levi)
    out = {"schema": SCHEMA, "command": "kac-char", "algebra": datum.name, "levi": levi.label(),
           "lambda": args.weight, "typical": True, "rho_convention": category_o.RHO_CONVENTION,
           "verma_terms": len(vc), "table": table.to_json(datum.m)}
    return out, 0


def _text_table(doc: dict) -> str:
    lines = [f"{doc['algebra']}  Levi {doc['levi']}  lambda {doc['lambda']}  ({doc['verma_terms']} Verma terms)"]
    lines += [f"  {e['coeff']:+d}  Delta({e['weight']})" for e in doc["table"]["entries"]]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def cmd_verify(args) -> tuple[dict, int]:
    if args.algebra:
        if not args.nilpotent:
            raise ParseError("--nilpotent is required together with --algebra")
        datum = _datum(args)
        nd = _nilpotent(args, datum)
        nd.check_odd_part()
        rec = {"algebra": datum.name, "nilpotent": nd.partitions.label()}
        rec.update(structure.verify_datum(nd, args.truncation))
        records = [rec]
    else:
        records = structure.run_battery(args.max_total, args.truncation)
    ok = all(r.get("pass", r.get("pass_", False)) for r in records)
    for r in records:
        if "pass_" in r:
            r["pass"] = r.pop("pass_")
    out = {"schema": SCHEMA, "command": "verify", "truncation": args.truncation,
           "assumption": structure.ODD_DEGREE_ASSUMPTION, "kazhdan_degree": "deg x = i + 2 for x in g(i)",
           "records": records, "pass": ok}
    return out, 0 if ok else 1


def _text_verify(doc: dict) -> str:
    lines = []
    for r in doc["records"]:
        status = "skip" if "skipped" in r else ("ok" if r["pass"] else "FAIL")
        lines.append(f"{status:4}  {r['algebra']:10} {r['nilpotent']}")
    lines.append(f"{'all passed' if doc['pass'] else 'FAILURES'} ({len(doc['records'])} records)")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# kl
# ---------------------------------------------------------------------------

def _perm(text: str) -> tuple:
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(","))
    except ValueError as exc:
        raise ParseError(f"bad permutation {text!r}") from exc


def cmd_kl(args) -> tuple[dict, int]:
    kind = args.type.upper()
    if kind not in ("A", "C") or args.rank < 1:
        raise ParseError("--type must be A or C and --rank positive")
    levi = Levi(args.rank, 0, (LeviBlock(kind, tuple(range(args.rank))),))
    g = WeylGroup(levi, args.bound)
    tab = KLTable(g, args.strategy)
    pairs = []
    if args.x or args.w:
        if not (args.x and args.w):
            raise ParseError("--x and --w go together")
        x, w = _perm(args.x), _perm(args.w)
        for p in (x, w):
            if p not in g.index:
                raise ParseError(f"{p} is not an element of the group")
        if not g.leq(x, w):
            raise NotComparable(f"{x} is not <= {w} in the Bruhat order")
        pairs.append((g.index[x], g.index[w]))
    else:
        leq = g.bruhat()
        pairs = [(xi, wi) for wi in range(len(g)) for xi in range(len(g)) if leq[xi, wi]]
    entries = [{"x": list(g.elements[xi]), "w": list(g.elements[wi]),
                "poly": tab.polynomial_by_index(xi, wi)} for xi, wi in pairs]
    out = {"schema": SCHEMA, "command": "kl", "type": kind, "rank": args.rank, "order": len(g),
           "notation": "one-line (signed) permutations", "entries": entries}
    return out, 0


def _text_kl(doc: dict) -> str:
    return "\n".join(f"P[{','.join(map(str, e['x']))} ; {','.join(map(str, e['w']))}] = {e['poly']}"
                     for e in doc["entries"])


# ---------------------------------------------------------------------------
# batch
# ---------------------------------------------------------------------------

def _run_json(argv: list[str]) -> dict:
    # no stdout redirection here: jobs run on worker threads
    doc, code, _ = execute(argv)
    doc = dict(doc)
    doc["exit_code"] = code
    return doc


def cmd_batch(args) -> tuple[dict, int]:
    try:
        with open(args.file) as fh:
            jobs = [shlex.split(ln) for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    except OSError as exc:
        raise ParseError(f"cannot read batch file: {exc}") from exc
    for j in jobs:
        if j and j[0] == "batch":
            raise ParseError("nested batch jobs are not allowed")
    with ThreadPoolExecutor(max_workers=max(1, args.workers)) as ex:
        results = list(ex.map(_run_json, jobs))
    ok = all(r["exit_code"] == 0 for r in results)
    return {"schema": SCHEMA, "command": "batch", "jobs": results}, 0 if ok else 1


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _common(p, levi=True, theta=True):
    p.add_argument("--algebra", required=True, help='"gl(m|n)" or "osp(2|2n)"')
    p.add_argument("--nilpotent", required=True, help='partition pair "p1,p2|q1"')
    if levi:
        p.add_argument("--levi", help='block composition "a1+a2|b1" (osp: "1|1+C2")')
    if theta:
        p.add_argument("--theta", help="coordinates over the Levi center basis")
    p.add_argument("--swap-lagrangian", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="wsc", description="Characters of finite W-superalgebra modules and structure checks.")
    sub = ap.add_subparsers(dest="cmd", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("orbit", help="graded data of a nilpotent orbit")
    _common(p)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("char", help="characters of simple W-tilde / W modules")
    _common(p)
    p.add_argument("--lambda", dest="weight", required=True, help='highest weight "a1,..,am|b1,..,bn"')
    p.add_argument("--depth", type=int)
    p.add_argument("--direction", help="truncation direction (defaults to theta)")
    p.add_argument("--module-kind", choices=("wtilde", "w", "w0-reference"), default="w")
    p.add_argument("--orbit-size", type=int)
    p.add_argument("--table", help="JSON multiplicity table (required for atypical lambda)")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("kac-char", help="parabolic Verma coefficients of a typical Kac module")
    p.add_argument("--algebra", required=True)
    p.add_argument("--lambda", dest="weight", required=True)
    p.add_argument("--levi")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="graded-dimension identities")
    p.add_argument("--algebra")
    p.add_argument("--nilpotent")
    p.add_argument("--levi")
    p.add_argument("--theta")
    p.add_argument("--max-total", type=int, default=4, help="battery over gl(m|n) with m+n <= this")
    p.add_argument("--truncation", type=int, default=16)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("kl", help="Kazhdan-Lusztig polynomials")
    p.add_argument("--type", default="A", help="A (symmetric group) or C (signed permutations)")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--x")
    p.add_argument("--w")
    p.add_argument("--strategy", choices=("right", "left"), default="right")
    p.add_argument("--bound", type=int, default=5040)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("batch", help="run one job per line, output in input order")
    p.add_argument("file")
    p.add_argument("--workers", type=int, default=4)
    p.add_argument("--json", action="store_true")
    return ap


COMMANDS = {
    "orbit": (cmd_orbit, _text_orbit),
    "char": (cmd_char, _text_char),
    "kac-char": (cmd_kac_char, _text_table),
    "verify": (cmd_verify, _text_verify),
    "kl": (cmd_kl, _text_kl),
    "batch": (cmd_batch, lambda d: json.dumps(d, indent=2)),
}


def execute(argv: Sequence[str]) -> tuple[dict, int, object]:
    """Run one command without printing: (document, exit code, text renderer or None on error)."""
    try:
        args = build_parser().parse_args(list(argv))
        fn, text = COMMANDS[args.cmd]
        doc, code = fn(args)
    except WscError as exc:
        err = {"name": exc.name, "message": str(exc), "exit_code": exc.exit_code}
        return {"schema": SCHEMA, "error": err}, exc.exit_code, None
    return doc, code, text


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    doc, code, text = execute(argv)
    if "--json" in argv:
        print(json.dumps(doc, indent=2))
    elif text is None:
        err = doc["error"]
        print(f"error: {err['name']}: {err['message']}", file=sys.stderr)
    else:
        print(text(doc))
    return code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
