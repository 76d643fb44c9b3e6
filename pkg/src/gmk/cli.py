"""``gmk`` command line.

Exit status: 0 on success, 1 when an asserted check fails, 2 on usage
errors.  Output is deterministic: JSON keys are written in a fixed order
and the only non-integers are two-decimal degree estimates.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Sequence

from . import abelian as ab
from . import reproduce as rp
from .bieri import certificate_word, combing_length_audit, doubled_group, is_trivial, lower_bound_quantity
from .complexes import (
    SquareComplex,
    base_complex,
    cover_from_action,
    delete_generator,
    label_map,
    presentation_complex,
    verify_covering,
)
from .family import ParameterError, check_mk, make_phi, presentation
from .growth import estimate_degree, growth_table
from .permrep import build_action, to_bits, verify_action
from .walls import specialness_report

M_MAX = 6
PALETTE = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan", "gold", "gray", "black", "navy", "olive"]


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _mk(args, k_min: int = 1) -> None:
    if args.m > M_MAX:
        raise UsageError(f"--m must be at most {M_MAX}")
    try:
        check_mk(args.m, args.k, k_min)
    except ParameterError as exc:
        raise UsageError(f"--m/--k: {exc}") from None


def _m_only(args) -> None:
    if not 1 <= args.m <= M_MAX:
        raise UsageError(f"--m must satisfy 1 <= m <= {M_MAX}")


def cmd_phi(args) -> tuple[str, int]:
    _mk(args)
    e = make_phi(args.m, args.k)
    if args.inverse:
        e = e.inverse()
    table = e.table()
    if args.format == "text":
        return "".join(f"{x} -> {w}\n" for x, w in table.items()), 0
    return _dump({"m": args.m, "k": args.k, "inverse": args.inverse, "images": table}), 0


def cmd_growth(args) -> tuple[str, int]:
    _mk(args)
    if args.n_max < 0:
        raise UsageError("--n-max must be nonnegative")
    e = make_phi(args.m, args.k)
    if args.inverse:
        e = e.inverse()
    t = growth_table(e, args.n_max, args.m, args.k, args.inverse)
    deg = estimate_degree(t.gr) if args.n_max >= 8 else None
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", *t.lengths, "gr"])
        for n in range(args.n_max + 1):
            w.writerow([n, *(col[n] for col in t.lengths.values()), t.gr[n]])
        return buf.getvalue(), 0
    out = t.to_json(deg)
    out.setdefault("degree_estimate", None)
    return _dump(out), 0


def cmd_abelian(args) -> tuple[str, int]:
    _mk(args)
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    m, k = args.m, args.k
    M = ab.abelianization_matrix(make_phi(m, k))
    I = ab.IntMatrix.identity(m + k)
    P = ab.power(M, args.n)
    sup, linf = ab.norms(P)
    names = list(make_phi(m, k).alphabet.names)
    out = {
        "m": m,
        "k": k,
        "n": args.n,
        "generators": names,
        "matrix": M.to_lists(),
        "power": P.to_lists(),
        "rank_M_minus_I": ab.rank(M - I),
        "rank_M_minus_I_squared": ab.rank(ab.power(M - I, 2)),
        "jordan_profile": list(ab.unipotent_jordan_profile(M).sizes),
        "norms": {"sup": sup, "linf_op": linf},
        "column_l1": {x: ab.column_l1(P, j) for j, x in enumerate(names)},
    }
    return _dump(out), 0


def cmd_permrep(args) -> tuple[str, int]:
    _m_only(args)
    act = build_action(args.m)
    out = {
        "m": args.m,
        "points": act.n_points,
        "generators": {f"a{j + 1}": act.cycles(j) for j in range(act.n_coords)},
    }
    code = 0
    if args.verify:
        rep = verify_action(act, presentation(args.m, args.m))
        out["verification"] = rep.to_json()
        code = 0 if rep.ok else 1
    return _dump(out), code


def _cover(m: int, delete_last: bool) -> tuple[SquareComplex, SquareComplex]:
    pres = presentation(m, m)
    X, _ = cover_from_action(pres, build_action(m))
    if delete_last:
        return delete_generator(X, f"a{2 * m + 1}"), presentation_complex(presentation(m, m - 1))
    return X, presentation_complex(pres)


def _dot(X: SquareComplex, n: int) -> str:
    lines = ["digraph cover {"]
    order = sorted(range(len(X.vertices)), key=lambda v: to_bits(X.vertices[v], n))
    for v in order:
        b = to_bits(X.vertices[v], n)
        lines.append(f'  "{b}";')
    edges = sorted(
        X.edges, key=lambda e: (to_bits(X.vertices[e.source], n), e.label, to_bits(X.vertices[e.target], n))
    )
    for e in edges:
        s, t = to_bits(X.vertices[e.source], n), to_bits(X.vertices[e.target], n)
        name = X.alphabet.names[e.label] if X.alphabet else str(e.label)
        lines.append(f'  "{s}" -> "{t}" [label="{name}", color="{PALETTE[e.label % len(PALETTE)]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_cover(args) -> tuple[str, int]:
    _m_only(args)
    X, B = _cover(args.m, args.delete_last)
    rep = verify_covering(X, B, label_map(X, B))
    n = 2 * args.m + 1
    if args.emit == "dot":
        return _dot(X, n), 0 if rep.ok else 1
    out = {
        "m": args.m,
        "delete_last": args.delete_last,
        "counts": dict(zip(("vertices", "edges", "squares"), X.counts())),
        "base_counts": dict(zip(("vertices", "edges", "squares"), B.counts())),
        "degree": rep.degree,
        "covering_ok": rep.ok,
        "failures": rep.failures,
        "edges": [
            [to_bits(X.vertices[e.source], n), X.alphabet.names[e.label], to_bits(X.vertices[e.target], n)]
            for e in X.edges
        ],
    }
    return _dump(out), 0 if rep.ok else 1


def cmd_special(args) -> tuple[str, int]:
    _m_only(args)
    if args.base:
        X = base_complex(args.m, args.m)
        target = "base"
    else:
        X, _ = _cover(args.m, args.delete_last)
        target = "delete-last" if args.delete_last else "cover"
    rep = specialness_report(X)
    out = {"m": args.m, "complex": target}
    out.update(rep.to_json())
    code = 1 if (args.assert_vh and not rep.vh.ok) else 0
    return _dump(out), code


def cmd_dehn(args) -> tuple[str, int]:
    _mk(args)
    if args.n < 1 or args.ell < 1 or args.p < 1:
        raise UsageError("--n, --ell and --p must be at least 1")
    G = doubled_group(args.m, args.k)
    cert = certificate_word(G, args.n, args.ell, args.p)
    exact, abel = lower_bound_quantity(args.m, args.k, args.n, args.ell, args.p)
    trivial = is_trivial(G, cert.letters)
    out = {
        "m": args.m,
        "k": args.k,
        "n": args.n,
        "ell": args.ell,
        "p": args.p,
        "trivial": trivial,
        "word_length": cert.length,
        "filling_exponent": cert.filling_exponent,
        "lower_bound_exact": exact,
        "lower_bound_abelian": abel,
    }
    return _dump(out), 0 if trivial and exact >= abel else 1


def cmd_comb_audit(args) -> tuple[str, int]:
    _mk(args)
    try:
        audit = combing_length_audit(doubled_group(args.m, args.k), args.radius)
    except ParameterError as exc:
        raise UsageError(f"--radius: {exc}") from None
    out = {"m": args.m, "k": args.k}
    out.update(audit.to_json())
    return _dump(out), 0 if audit.ok else 1


def cmd_reproduce(args) -> tuple[str, int]:
    try:
        numbers = rp.select(args.only)
    except ValueError as exc:
        raise UsageError(f"--only: {exc}") from None
    results = rp.run(numbers)
    return rp.render(results), 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gmk", description="Computations for the groups G_{m,k}.")
    parser.add_argument("--out", help="write the artifact here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    def mk(p, n=False):
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--k", type=int, required=True)
        if n:
            p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("phi", help="print the automorphism table")
    mk(p)
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("growth", help="exact growth table and degree estimate")
    mk(p)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("abelian", help="abelianized matrix, power, ranks and Jordan profile")
    mk(p, n=True)
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=cmd_abelian)

    p = sub.add_parser("permrep", help="the permutation action on the cube")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=cmd_permrep)

    p = sub.add_parser("cover", help="the finite cover built from the action")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--delete-last", action="store_true")
    p.add_argument("--emit", choices=["dot", "json"], default="json")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("special", help="hyperplane pathologies and VH classification")
    p.add_argument("--m", type=int, required=True)
    which = p.add_mutually_exclusive_group()
    which.add_argument("--base", action="store_true")
    which.add_argument("--cover", action="store_true")
    which.add_argument("--delete-last", action="store_true")
    p.add_argument("--assert-vh", action="store_true")
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=cmd_special)

    p = sub.add_parser("dehn", help="certificate word and lower-bound quantities")
    mk(p, n=True)
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--p", type=int, default=1)
    p.set_defaults(func=cmd_dehn)

    p = sub.add_parser("comb-audit", help="check the combing length bound on a ball")
    mk(p)
    p.add_argument("--radius", type=int, required=True)
    p.set_defaults(func=cmd_comb_audit)

    p = sub.add_parser("reproduce", help="run the acceptance matrix")
    p.add_argument("--only", help="comma list of criterion numbers or groups: " + ", ".join(rp.GROUPS))
    p.set_defaults(func=cmd_reproduce)
    return parser


def threads_from_env() -> int:
    raw = os.environ.get("GMK_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"GMK_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise UsageError("GMK_THREADS must be >= 0")
    return n


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        threads_from_env()
        text, code = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"gmk: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
