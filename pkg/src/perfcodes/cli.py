"""Command-line front end.

Subcommands: sieve, tables, verify, pell, doubly, moments.  Output is TSV by
default, with columns in a fixed order; every number is printed as an exact
decimal integer or a reduced fraction p/q.

Exit codes: 0 success (or verified), 1 refuted, 2 bad usage, unreadable or
malformed input, or an enumeration guard.
"""
from __future__ import annotations

import argparse
import sys
from contextlib import nullcontext

from .designs import BlockDesign, code_strength, min_h_distance, verify_design
from .exactmath import format_rational, parse_exact_number
from .johnson import Code, CodeFileError, EnumerationGuardError, read_code_file, verify_perfect, verify_perfect_doubly
from .moments import (delta_moments_1perfect, delta_moments_1perfect_recurrence, delta_moments_2perfect,
                      strength)
from .pell import N_LIMIT, exclusion_scan, table3_tsv
from .sieve import (RULE_IDS, TSV_HEADER, TSV_HEADER_DOUBLY, DoublyParams, catalan_family, doubly_checks,
                    residue_classes_2perfect, residue_tables_1perfect, sieve_range)

EXIT_OK, EXIT_REFUTED, EXIT_USAGE = 0, 1, 2


def _pair(text: str) -> tuple[int, int]:
    w, _, a = text.partition(",")
    return int(w), int(a)


def cmd_sieve(args, out) -> int:
    if args.w_max < args.w_min:
        return EXIT_OK
    if args.n_eq_2w and (args.a_min or args.a_max not in (None, 0)):
        raise SystemExit(_usage("--n-eq-2w fixes a = 0; drop --a-min/--a-max"))
    rules = None
    if args.rules:
        rules = [r.strip() for r in args.rules.split(",") if r.strip()]
        bad = [r for r in rules if r not in RULE_IDS]
        if bad:
            raise SystemExit(_usage(f"unknown rule ids: {', '.join(bad)}"))
    survivors_only = args.mode == "survivors"
    reports = sieve_range(args.e, args.w_min, args.w_max, args.a_min, args.a_max, rules,
                          n_eq_2w=args.n_eq_2w, survivors_only=survivors_only,
                          first_fail=args.first_fail, resume_after=args.resume_after)
    if args.format == "tsv":
        out.write(TSV_HEADER + "\n")
    count = small_a = roos = 0
    for r in reports:
        count += r.survives
        p = r.params
        if r.survives and 11 * p.a >= p.w:
            small_a += 1
        if r.survives and p.e >= 1 and p.n * p.e > (p.w - 1) * (2 * p.e + 1):
            roos += 1
        if args.format == "tsv":
            out.write("\n".join(r.tsv_rows()) + "\n")
        else:
            out.write(r.to_text() + "\n")
    out.write(f"# survivors={count} survivors_with_11a_ge_w={small_a} survivors_over_roos_bound={roos}\n")
    return EXIT_OK


def cmd_tables(args, out) -> int:
    if args.which == "pell":
        out.write(table3_tsv())
    elif args.which == "1perfect-mod60":
        out.write(residue_tables_1perfect().to_tsv())
    else:
        rc = residue_classes_2perfect()
        out.write("modulus\tresidues\n")
        out.write("60\t" + ",".join(map(str, rc.mod60)) + "\n")
        out.write("420\t" + ",".join(map(str, rc.mod420)) + "\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    path = args.code or args.design
    code = read_code_file(path)
    if args.design:
        if not isinstance(code, Code):
            raise CodeFileError(1, "a design file needs a single-block header")
        d = BlockDesign.from_code(code)
        strength_ = code_strength(d)
        t = strength_ if args.t is None else args.t
        lam = verify_design(d, t)
        out.write("n\tw\tblocks\tt\tlambda\tstrength\tmin_h_distance\n")
        out.write(f"{d.n}\t{d.w}\t{d.b}\t{t}\t{'-' if lam is None else lam}\t{strength_}\t{min_h_distance(d)}\n")
        return EXIT_OK if lam is not None else EXIT_REFUTED
    if args.e is None:
        raise SystemExit(_usage("--code needs --e"))
    if isinstance(code, Code):
        v = verify_perfect(code, args.e)
    else:
        v = verify_perfect_doubly(code, args.e)
    out.write("status\te\tcode_size\tspace_size\tsphere_size\tmin_distance\tuncovered\tovercovered\n")
    wit = [str(x.support) if x is not None else "-" for x in (v.uncovered, v.overcovered)]
    out.write(f"{v.status}\t{v.e}\t{v.code_size}\t{v.space_size}\t{v.sphere_size}\t"
              f"{'-' if v.min_distance is None else v.min_distance}\t{wit[0]}\t{wit[1]}\n")
    return EXIT_OK if v.perfect else EXIT_REFUTED


def cmd_pell(args, out) -> int:
    summary = exclusion_scan(args.n_limit)
    out.write("t\tw\texcluded\treasons\n")
    for r in summary.reports:
        out.write(f"{r.solution.t}\t{r.solution.w}\t{'yes' if r.excluded else 'no'}\t{','.join(r.reasons())}\n")
    out.write(f"# survivors={len(summary.survivors)}\n")
    return EXIT_OK


def cmd_doubly(args, out) -> int:
    if args.catalan is not None:
        p = catalan_family(args.catalan)
    else:
        vals = (args.w1, args.n1, args.w2, args.n2)
        if None in vals:
            raise SystemExit(_usage("give --catalan K or all of --w1 --n1 --w2 --n2"))
        p = DoublyParams(*vals, args.e)
    r = doubly_checks(p)
    if args.format == "tsv":
        out.write(TSV_HEADER_DOUBLY + "\n" + "\n".join(r.tsv_rows()) + "\n")
    else:
        out.write(r.to_text())
    return EXIT_OK


def cmd_moments(args, out) -> int:
    n, w, e = args.n, args.w, args.e
    s = strength(n, w, e)
    if e == 1:
        out.write("k\tdelta\tB\tA\trecurrence_agrees\n")
        for k in _k_range(args, s.phi, w):
            m = delta_moments_1perfect(n, w, k)
            r = delta_moments_1perfect_recurrence(n, w, k)
            out.write(f"{k}\t{format_rational(m.delta)}\t{format_rational(m.b)}\t{format_rational(m.a)}\t"
                      f"{'yes' if m == r else 'no'}\n")
    elif e == 2 and n == 2 * w:
        out.write("k\tleader1\tleader2\n")
        for k in _k_range(args, s.phi, w):
            l1, l2 = (delta_moments_2perfect(w, k, leader) for leader in (1, 2))
            out.write(f"{k}\t{format_rational(l1)}\t{format_rational(l2)}\n")
    else:
        raise SystemExit(_usage("moments supports e=1, and e=2 with n=2w"))
    return EXIT_OK


def _k_range(args, phi, w):
    if args.k is not None:
        return [args.k]
    lo = 0 if phi is None else phi + 1
    return range(w, lo - 1, -1)


def _usage(msg: str) -> int:
    sys.stderr.write(f"perfcodes: error: {msg}\n")
    return EXIT_USAGE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="perfcodes", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("sieve", help="apply the rule catalog over n = 2w + a",
                       description="TSV columns: " + TSV_HEADER.replace("\t", ", "))
    s.add_argument("--e", type=int, required=True)
    s.add_argument("--w-min", type=int, default=1)
    s.add_argument("--w-max", type=int, required=True)
    s.add_argument("--a-min", type=int, default=0)
    s.add_argument("--a-max", type=int, default=None, help="default 2w")
    s.add_argument("--n-eq-2w", action="store_true", help="only a = 0")
    s.add_argument("--rules", help="comma-separated rule ids (default: all)")
    s.add_argument("--mode", choices=("survivors", "all"), default="survivors")
    s.add_argument("--first-fail", action="store_true", help="stop each point at its first failing rule")
    s.add_argument("--resume-after", type=_pair, metavar="W,A")
    s.add_argument("--format", choices=("tsv", "text"), default="tsv")
    s.add_argument("--out")
    s.set_defaults(func=cmd_sieve)

    t = sub.add_parser("tables", help="reproduce the residue tables or the Pell table")
    t.add_argument("--which", choices=("1perfect-mod60", "2perfect-classes", "pell"), required=True)
    t.add_argument("--out")
    t.set_defaults(func=cmd_tables)

    v = sub.add_parser("verify", help="check a code or a block design file")
    g = v.add_mutually_exclusive_group(required=True)
    g.add_argument("--code")
    g.add_argument("--design")
    v.add_argument("--e", type=int)
    v.add_argument("--t", type=int)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    pl = sub.add_parser("pell", help="2-perfect exclusion scan in J(2w, w)")
    pl.add_argument("--n-limit", type=parse_exact_number, default=N_LIMIT)
    pl.add_argument("--out")
    pl.set_defaults(func=cmd_pell)

    d = sub.add_parser("doubly", help="necessary conditions for doubly constant weight codes")
    d.add_argument("--catalan", type=int, metavar="K")
    for name in ("w1", "n1", "w2", "n2"):
        d.add_argument(f"--{name}", type=int)
    d.add_argument("--e", type=int, default=1)
    d.add_argument("--format", choices=("tsv", "text"), default="tsv")
    d.add_argument("--out")
    d.set_defaults(func=cmd_doubly)

    m = sub.add_parser("moments", help="binomial moments for given (n, w, e)")
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--w", type=int, required=True)
    m.add_argument("--e", type=int, default=1)
    m.add_argument("--k", type=int)
    m.add_argument("--out")
    m.set_defaults(func=cmd_moments)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        ctx = open(args.out, "w") if getattr(args, "out", None) else nullcontext(sys.stdout)
        with ctx as out:
            return args.func(args, out)
    except BrokenPipeError:
        # reader went away (e.g. piped into head); not an error of ours
        sys.stdout = None
        return EXIT_OK
    except (CodeFileError, EnumerationGuardError, ValueError, OSError) as exc:
        sys.stderr.write(f"perfcodes: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
