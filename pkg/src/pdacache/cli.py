"""Command-line interface: ``pdacache construct|validate|expand|deliver|compare``.

Exit status is 0 on success, 1 when validation or decoding fails and 2 on
usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from pdacache.analysis import compare
from pdacache.constructions import build_mn_pda, exemplar_names, paper_exemplar
from pdacache.errors import PdaError
from pdacache.gpda import expand, load_gpda, read_gpda, validate_gpda, write_gpda
from pdacache.pda import load_pda, read_pda, validate_pda, write_pda
from pdacache.scheme import FileLibrary, simulate

DEFAULT_SEED = 20200101


class UsageError(Exception):
    pass


def int_list(text):
    try:
        values = [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if any(v < 0 for v in values):
        raise argparse.ArgumentTypeError(f"negative value in {text!r}")
    return values


def ratio(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a fraction like 1/2, got {text!r}")


def _emit(data: bytes, path, out):
    if path:
        with open(path, "wb") as fh:
            fh.write(data)
    elif hasattr(out, "buffer"):
        out.flush()
        out.buffer.write(data)
        out.buffer.flush()
    else:
        out.write(data.decode("utf-8"))


def cmd_construct(args, out, err):
    if args.kind == "mn":
        if args.k is None or args.t is None:
            raise UsageError("construct mn needs --k and --t")
        pda = build_mn_pda(args.k, args.t)
    else:
        if args.name is None:
            raise UsageError(f"construct exemplar needs --name ({', '.join(exemplar_names())})")
        pda = paper_exemplar(args.name)
    K, F, Z, S = pda.params
    info = f"K={K} F={F} Z={Z} S={S}\n"
    _emit(write_pda(pda), args.output, out)
    (out if args.output else err).write(info)
    return 0


def cmd_validate(args, out, err):
    with open(args.path, "rb") as fh:
        data = fh.read()
    if args.gpda:
        result = validate_gpda(read_gpda(data))
    else:
        result = validate_pda(read_pda(data))
    out.write(str(result) + "\n")
    return 0 if result.ok else 1


def _format_assignment(assignment):
    lines = []
    for lam, users in enumerate(assignment.groups):
        lines.append(f"cache {lam}: users {','.join(map(str, users)) or '-'}\n")
    return "".join(lines)


def cmd_expand(args, out, err):
    pda = load_pda(args.path)
    g, assignment = expand(pda, args.profile)
    _emit(write_gpda(g), args.output, out)
    (out if args.output else err).write(_format_assignment(assignment))
    return 0


def _term(d, k, j):
    return f"W{d[k]}[{j}]"


def cmd_deliver(args, out, err):
    g = load_gpda(args.path)
    d = args.demands
    if len(d) != g.num_users_K:
        raise UsageError(f"{len(d)} demands given for {g.num_users_K} users")
    if args.library:
        lib = FileLibrary.from_directory(args.library, g.num_rows_F)
    else:
        n = args.files if args.files is not None else max(max(d) + 1, g.num_users_K)
        lib = FileLibrary.random(n, args.bytes, g.num_rows_F, seed=args.seed)
    if max(d) >= lib.num_files:
        raise UsageError(f"demand {max(d)} outside library of {lib.num_files} files")

    result = simulate(g, d, lib)
    for t in result.plan:
        terms = " ^ ".join(_term(d, k, j) for k, j in t.terms)
        out.write(f"X[{t.label}] = {terms}\n")
    out.write(
        f"{len(result.plan)} transmissions, load {len(result.plan)}/{g.num_rows_F}, "
        f"{result.transmitted_bytes} bytes sent\n"
    )
    bad = [k for k, ok in enumerate(result.correct) if not ok]
    if bad:
        out.write(f"decode FAILED for users {','.join(map(str, bad))}\n")
        return 1
    out.write(f"all {g.num_users_K} users decoded OK\n")
    return 0


def cmd_compare(args, out, err):
    if args.pda:
        pda = load_pda(args.pda)
    else:
        if len(args.mn) != 2:
            raise UsageError("--mn expects K,t")
        pda = build_mn_pda(*args.mn)
    report = compare(pda, args.profile, args.ratio)
    out.write(report.render_csv() if args.csv else report.render_table())
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="pdacache", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="write an MN PDA or a stored exemplar")
    c.add_argument("kind", choices=("mn", "exemplar"))
    c.add_argument("--k", type=int, help="number of caches (mn)")
    c.add_argument("--t", type=int, help="cache size parameter t (mn)")
    c.add_argument("--name", help=f"exemplar name: {', '.join(exemplar_names())}")
    c.add_argument("-o", "--output", help="output file (default stdout)")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("validate", help="check a PDA (C1-C3) or generalized PDA (C1-C4)")
    v.add_argument("path")
    v.add_argument("--gpda", action="store_true", help="read a generalized PDA")
    v.set_defaults(func=cmd_validate)

    e = sub.add_parser("expand", help="expand a PDA by an association profile")
    e.add_argument("path")
    e.add_argument("--profile", type=int_list, required=True, help="users per cache, e.g. 3,2,2,1")
    e.add_argument("-o", "--output", help="output file (default stdout)")
    e.set_defaults(func=cmd_expand)

    d = sub.add_parser("deliver", help="simulate delivery and decoding on random bytes")
    d.add_argument("path", help="generalized PDA file")
    d.add_argument("--demands", type=int_list, required=True, help="file index per user, 0-based")
    d.add_argument("--seed", type=int, default=DEFAULT_SEED, help="library RNG seed")
    d.add_argument("--bytes", type=int, default=1024, help="bytes per random file")
    d.add_argument("--files", type=int, help="library size (default max(K, max demand + 1))")
    d.add_argument("--library", help="directory of real files to use instead")
    d.set_defaults(func=cmd_deliver)

    m = sub.add_parser("compare", help="compare a PDA-based scheme with the PUE baseline")
    src = m.add_mutually_exclusive_group(required=True)
    src.add_argument("--pda", help="PDA file")
    src.add_argument("--mn", type=int_list, help="MN PDA as K,t")
    m.add_argument("--profile", type=int_list, required=True, help="users per cache")
    m.add_argument("--ratio", type=ratio, help="expected M/N; must equal Z/F of the PDA")
    m.add_argument("--csv", action="store_true", help="CSV instead of a table")
    m.set_defaults(func=cmd_compare)
    return p


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out, err)
    except (UsageError, PdaError, OSError) as exc:
        err.write(f"pdacache {args.command}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
