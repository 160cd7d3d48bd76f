"""The ``morphlab`` command line.

Exit codes: 0 success, 2 usage error, 3 resource cap exceeded, 4 a check
failed (a JSON report is printed).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .ancat import GRAMMAR_VERSION, AnFunctor, AnModule
from .errors import DEFAULT_MAX_GROUP_ORDER, DEFAULT_MAX_POINTS, FalsificationError, ResourceCapError
from .exactmath import gauss_binomial, is_prime

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_FALSIFIED = 4


class UsageError(ValueError):
    pass


# --------------------------------------------------------------------------
# grammar


_TOKEN = re.compile(r"\s*(\d+)-(\d+)\s*")


def parse_functor(spec: str, n: int) -> AnFunctor:
    """Parse "a-b,a-b,..." (empty string: the zero functor)."""
    if spec.strip() == "":
        return AnFunctor.zero(n)
    pairs = []
    pos = 0
    for tok in spec.split(","):
        m = _TOKEN.fullmatch(tok)
        if not m:
            raise UsageError(f"malformed interval {tok!r} at position {pos}")
        a, b = int(m.group(1)), int(m.group(2))
        if a > b:
            raise UsageError(f"interval {a}-{b} at position {pos} has a > b")
        if a < 1 or b > n:
            raise UsageError(f"interval {a}-{b} at position {pos} is outside [1,{n}]")
        pairs.append((a, b))
        pos += len(tok) + 1
    return AnFunctor.of(n, pairs)


def parse_module(spec: str, n: int) -> AnModule:
    """Parse a multiplicity vector "1,1,1"."""
    try:
        mult = [int(x) for x in spec.split(",")]
    except ValueError:
        raise UsageError(f"malformed module {spec!r}") from None
    if len(mult) != n or any(x < 0 for x in mult):
        raise UsageError(f"module {spec!r} needs {n} nonnegative multiplicities")
    return AnModule(n, tuple(mult))


def parse_int_list(spec: str) -> list[int]:
    try:
        return [int(x) for x in spec.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"malformed integer list {spec!r}") from None


# --------------------------------------------------------------------------
# output


@dataclass
class Result:
    command: str
    config: dict
    columns: list
    rows: list
    extra: dict = field(default_factory=dict)
    failure: dict | None = None


def _cell(x):
    if isinstance(x, Fraction):
        return str(x)
    return x


def render(res: Result, fmt: str) -> str:
    header = {"command": res.command, "version": __version__, "schema_version": SCHEMA_VERSION}
    rows = [[_cell(x) for x in row] for row in res.rows]
    extra = {k: _cell(v) for k, v in res.extra.items()}
    if fmt == "json":
        doc = dict(header, config=res.config, columns=res.columns, rows=rows, extra=extra)
        if res.failure is not None:
            doc["failure"] = res.failure
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    echo = " ".join(f"{k}={res.config[k]}" for k in sorted(res.config))
    if fmt == "csv":
        buf = io.StringIO()
        buf.write(f"# morphlab {__version__} {res.command} schema_version={SCHEMA_VERSION}\n")
        buf.write(f"# config {echo}\n")
        for k in sorted(extra):
            buf.write(f"# {k}={extra[k]}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(res.columns)
        w.writerows(rows)
        return buf.getvalue()
    lines = [f"morphlab {__version__} {res.command}", f"config: {echo}"]
    widths = [max(len(str(c)), *(len(str(r[i])) for r in rows)) if rows else len(str(c))
              for i, c in enumerate(res.columns)]
    lines.append("  ".join(str(c).ljust(w) for c, w in zip(res.columns, widths)).rstrip())
    for r in rows:
        lines.append("  ".join(str(x).ljust(w) for x, w in zip(r, widths)).rstrip())
    for k in sorted(extra):
        lines.append(f"{k}: {extra[k]}")
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> tuple[dict, list, list]:
    """Inverse of the CSV rendering: (extra, columns, rows) with cells as strings."""
    extra = {}
    body = []
    for line in text.splitlines():
        if line.startswith("# "):
            kv = line[2:]
            if "=" in kv and not kv.startswith(("morphlab ", "config ")):
                k, v = kv.split("=", 1)
                extra[k] = v
        else:
            body.append(line)
    table = list(csv.reader(body))
    return extra, table[0], table[1:]


# --------------------------------------------------------------------------
# resource preflight


def _check_cap(what: str, size: int, cap: int) -> None:
    if size > cap:
        raise ResourceCapError(what, size, cap)


def _preflight_borel(n: int, q: int, args) -> None:
    from .grouprep import borel_order
    _check_cap("group order", borel_order(n, q), args.max_group_order)
    _check_cap("points of F(R)", q ** (n * (n + 1) // 2), args.max_points)


def _check_q(q: int) -> None:
    if not is_prime(q):
        raise UsageError(f"q={q} is not prime")


def _check_n(n: int) -> None:
    if n < 1:
        raise UsageError(f"n={n} must be positive")


# --------------------------------------------------------------------------
# commands


def cmd_fm_image(args) -> Result:
    from .grouprep import character_table
    from .morphcore import aut_functor_group, fm_image
    _check_n(args.n)
    _check_q(args.q)
    F = parse_functor(args.functor, args.n)
    M = parse_module(args.module, args.n) if args.module else AnModule.full(args.n)
    _preflight_borel(args.n, args.q, args)
    A = aut_functor_group(F, args.q, cap=args.max_group_order)
    T = character_table(A, max_order=args.max_group_order)
    image = sorted(fm_image(F, M, args.q))
    config = {"n": args.n, "q": args.q, "functor": F.spec(), "module": ",".join(map(str, M.mult)),
              "grammar_version": GRAMMAR_VERSION}
    rows = [[i, T.degrees[i]] for i in image]
    return Result("fm-image", config, ["character", "degree"], rows,
                  {"functor_name": str(F), "aut_order": A.order, "count": len(image)})


def cmd_stratify(args) -> Result:
    from .grouprep import borel_group
    from .morphcore import fm_candidates, fm_image
    _check_n(args.n)
    _check_q(args.q)
    _preflight_borel(args.n, args.q, args)
    M = AnModule.full(args.n)
    rows = [[F.spec() or "0", len(fm_image(F, M, args.q))] for F in fm_candidates(args.n)]
    total = sum(r[1] for r in rows)
    classes = borel_group(args.n, args.q, cap=args.max_group_order).num_classes()
    rows.append(["total", total])
    res = Result("stratify", {"n": args.n, "q": args.q}, ["functor", "count"], rows,
                 {"classes": classes})
    if total != classes:
        res.failure = {"check": "stratification", "total": total, "classes": classes}
    return res


def cmd_coeffs(args) -> Result:
    from .latticealg import closed_form_coeff, coefficient_recursion_sum, hyperplane_product_coeffs
    _check_q(args.q)
    if args.b < 0:
        raise UsageError("b must be nonnegative")
    coeffs = hyperplane_product_coeffs(args.b, args.q, cap=args.max_points)
    rows = [[m, a, closed_form_coeff(m, args.q), gauss_binomial(args.b, m, args.q)]
            for m, a in enumerate(coeffs)]
    closed = all(r[1] == r[2] for r in rows)
    recursion = args.b == 0 or coefficient_recursion_sum(coeffs, args.q) == 0
    res = Result("coeffs", {"b": args.b, "q": args.q}, ["m", "a_m", "closed_form", "gauss_binomial"],
                 rows, {"coefficients": ",".join(map(str, coeffs)),
                        "closed_form": "ok" if closed else "FAIL",
                        "recursion": "ok" if recursion else "FAIL"})
    if not (closed and recursion):
        res.failure = {"check": "coefficients", "closed_form": closed, "recursion": recursion}
    return res


def cmd_gl(args) -> Result:
    from .grouprep import general_linear_group
    from .morphcore import gl_fm_image
    _check_n(args.n)
    _check_q(args.q)
    order = 1
    for i in range(args.n):
        order *= args.q**args.n - args.q**i
    _check_cap("group order", order, args.max_group_order)
    rows = [[m, len(gl_fm_image(args.n, m, args.q))] for m in range(args.n + 1)]
    total = sum(r[1] for r in rows)
    classes = general_linear_group(args.n, args.q, cap=args.max_group_order).num_classes()
    res = Result("gl", {"n": args.n, "q": args.q}, ["m", "count"], rows,
                 {"per_m": ",".join(str(r[1]) for r in rows), "total": total, "classes": classes})
    if total != classes:
        res.failure = {"check": "gl stratification", "total": total, "classes": classes}
    return res


def cmd_higman(args) -> Result:
    from .oracle import higman_experiment
    _check_n(args.n)
    qs = parse_int_list(args.q)
    for q in qs + [args.predict]:
        _check_q(q)
    _check_cap("group order", args.predict ** (args.n * (args.n - 1) // 2), args.max_group_order)
    rep = higman_experiment(args.n, qs, args.predict, kind=args.kind, cap=args.max_group_order)
    rows = [[q, c, "fit" if q in qs else "held_out"] for q, c in rep["counts"].items()]
    return Result("higman", {"n": args.n, "q": ",".join(map(str, qs)), "predict": args.predict,
                             "kind": args.kind},
                  ["q", "classes", "role"], rows,
                  {"polynomial": ",".join(str(c) for c in rep["coeffs"]),
                   "predicted": rep["predicted"], "actual": rep["actual"],
                   "match": "yes" if rep["match"] else "no"})


def cmd_dump_table(args) -> Result:
    from .grouprep import borel_group, character_table, general_linear_group, unitriangular_group
    from .morphcore import aut_functor_group
    _check_n(args.n)
    _check_q(args.q)
    cap = args.max_group_order
    if args.group == "borel":
        G = borel_group(args.n, args.q, cap=cap)
    elif args.group == "unitriangular":
        G = unitriangular_group(args.n, args.q, cap=cap)
    elif args.group == "gl":
        G = general_linear_group(args.n, args.q, cap=cap)
    else:
        G = aut_functor_group(parse_functor(args.functor, args.n), args.q, cap=cap)
    T = character_table(G, max_order=cap)
    T.check()
    cols = ["character"] + [f"c{i}" for i in range(G.num_classes())]
    rows = [["representative"] + [_rep_str(x) for x in G.class_reps],
            ["size"] + G.class_sizes,
            ["order"] + G.class_orders]
    rows += [[f"X.{i}"] + [str(v) for v in row] for i, row in enumerate(T.values)]
    return Result("dump-table", {"group": args.group, "n": args.n, "q": args.q,
                                 "functor": args.functor}, cols, rows,
                  {"order": G.order, "classes": G.num_classes()})


def _rep_str(x) -> str:
    return "[" + ";".join(" ".join(map(str, r)) for r in x) + "]"


def cmd_verify(args) -> Result:
    from . import morphcore as mc
    from . import oracle as orc
    from .grouprep import borel_group, character_table
    _check_n(args.n)
    _check_q(args.q)
    _preflight_borel(args.n, args.q, args)
    n, q = args.n, args.q
    M = AnModule.full(n)
    rows = []

    def record(name: str, fn):
        try:
            detail = fn()
            rows.append([name, "ok", detail])
        except FalsificationError as exc:
            rows.append([name, "FAIL", exc.args[0]])
            raise

    cands = mc.fm_candidates(n)
    if args.level in ("lemmas", "all"):
        def redundancy():
            extra = [AnFunctor.of(n, [(1, b), (a, b)]) for b in range(1, n + 1)
                     for a in range(1, b + 1)]
            for F in cands + extra:
                xs = mc.x_set(F, M, q)
                if mc.is_m_redundant(F, M) != (len(xs) == 0):
                    raise FalsificationError("redundancy criterion fails", {"functor": str(F)})
            return len(cands) + len(extra)

        def tl():
            count = 0
            for F in cands:
                if q ** F.total_dim <= args.max_points and F.total_dim <= 4:
                    mc.tl_vectors(F, M, q).check()
                    count += 1
            return count

        def summary():
            for F in cands:
                if mc.summary_criterion(F, q) != mc.fm_image(F, M, q):
                    raise FalsificationError("closed-form criterion differs", {"functor": str(F)})
                if mc.fm_image(F, M, q, minimal_only=False) != mc.fm_image(F, M, q):
                    raise FalsificationError("minimal reduction differs", {"functor": str(F)})
                mc.fm_all_equivalence(F, M, q)
            return len(cands)

        record("redundancy_vs_xset", redundancy)
        record("tl_calculus", tl)
        record("criterion_forms", summary)
    if args.level in ("theorem", "all"):
        def theorem():
            for F in cands:
                a, b = orc.oracle_image(F, M, q), mc.fm_image(F, M, q)
                if a != b:
                    raise FalsificationError("criterion differs from the oracle",
                                             {"functor": str(F), "oracle": sorted(a),
                                              "criterion": sorted(b)})
            return len(cands)

        def strat():
            return orc.stratification_check(n, q)["total"]

        def tables():
            groups = [borel_group(n, q)] + [mc.aut_functor_group(F, q) for F in cands]
            for G in groups:
                character_table(G).check()
            return len(groups)

        record("oracle_equivalence", theorem)
        record("stratification", strat)
        record("character_tables", tables)
    return Result("verify", {"n": n, "q": q, "level": args.level}, ["check", "status", "detail"],
                  rows)


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="morphlab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"morphlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=["text", "csv", "json"], default="text")
        sp.add_argument("--max-group-order", type=int, default=DEFAULT_MAX_GROUP_ORDER)
        sp.add_argument("--max-points", type=int, default=DEFAULT_MAX_POINTS)

    sp = sub.add_parser("fm-image", help="irreducibles of Aut(F) reached by functor morphing")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--functor", required=True, help='e.g. "1-2,2-3"; "" for the zero functor')
    sp.add_argument("--module", default=None, help='multiplicities, e.g. "1,1,1" (default)')
    common(sp)
    sp.set_defaults(func=cmd_fm_image)

    sp = sub.add_parser("stratify", help="image sizes over all candidate functors")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_stratify)

    sp = sub.add_parser("verify", help="run the lemma and oracle checks")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--level", choices=["lemmas", "theorem", "all"], default="all")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("coeffs", help="coefficients of the hyperplane product")
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_coeffs)

    sp = sub.add_parser("higman", help="class counts of U_n(F_q) and a polynomial fit")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q", default="2,3,5", help="comma separated primes to fit through")
    sp.add_argument("--predict", type=int, default=7)
    sp.add_argument("--kind", choices=["U", "B"], default="U")
    common(sp)
    sp.set_defaults(func=cmd_higman)

    sp = sub.add_parser("gl", help="vector space backend: image sizes for GL_m, m = 0..n")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_gl)

    sp = sub.add_parser("dump-table", help="export a character table")
    sp.add_argument("--group", choices=["borel", "unitriangular", "gl", "aut"], default="borel")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--functor", default="", help="for --group aut")
    common(sp)
    sp.set_defaults(func=cmd_dump_table)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        res = args.func(args)
    except UsageError as exc:
        print(f"morphlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCapError as exc:
        print(f"morphlab: resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except FalsificationError as exc:
        report = {"schema_version": SCHEMA_VERSION, "version": __version__,
                  "command": args.command, "failure": exc.args[0], "report": exc.report}
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True, default=str) + "\n")
        return EXIT_FALSIFIED
    if res.failure is not None:
        sys.stdout.write(render(res, "json"))
        return EXIT_FALSIFIED
    sys.stdout.write(render(res, args.format))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
