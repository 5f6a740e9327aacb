"""Command-line front end: ``ftknots <subcommand> ...``.

Output is plain ``key = value`` text.  Exit status is 0 on success, 1 for
bad input and 2 when a verification finds a mathematical mismatch.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence, TextIO

from .diagrams.chord import (
    ChordDiagram,
    four_t_relators,
    ham,
    hamiltonian_count,
    intersection_graph,
    is_separated,
)
from .diagrams.jacobi import (
    insulated_vertices,
    is_good_vertex,
    read_jacobi,
    stu_reduce,
    wheel,
)
from .errors import ValidationError, VerificationError
from .laurent import rewrite_in_z
from .ranks import build_system, gf2_rank, theta_quotient
from .seifert import alexander, conway, family_theta, pc_from_conway, read_seifert, verify_family
from .series import exp_z, log_z, parse_series

EXIT_OK, EXIT_INVALID, EXIT_MISMATCH = 0, 1, 2
WHEEL_GUARD = 12


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _pc_lines(c, k: int) -> list[str]:
    vec = pc_from_conway(c, k)
    return [f"pc_{two_i} = {v}" for two_i, v in vec.items()]


def _parse_perm(text: str, n: int) -> list[int]:
    try:
        vals = [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError as exc:
        raise ValidationError(f"bad permutation {text!r}") from exc
    if sorted(vals) == list(range(1, n + 1)):
        vals = [v - 1 for v in vals]
    if sorted(vals) != list(range(n)):
        raise ValidationError(f"{text!r} is not a permutation of 0..{n - 1} (or 1..{n})")
    return vals


# ---------------------------------------------------------------------------
# subcommands


def cmd_series(args, out: TextIO) -> int:
    s = parse_series(args.coeffs, args.order)
    if args.op == "exp":
        print(f"exp_z = {exp_z(s)}", file=out)
    else:
        print(f"log_z = {log_z(s)}", file=out)
    return EXIT_OK


def cmd_conway(args, out: TextIO) -> int:
    m = read_seifert(args.matrix)
    a = alexander(m, force=args.force)
    c = conway(m, force=args.force)
    print(f"A(s) = {a}", file=out)
    print(f"C(z) = {c}", file=out)
    if args.pc:
        for line in _pc_lines(c, args.pc):
            print(line, file=out)
    return EXIT_OK


def cmd_family(args, out: TextIO) -> int:
    if args.n < 1:
        raise ValidationError(f"n must be positive, got {args.n}")
    if args.verify:
        rep = verify_family(args.n)
        lines = rep.lines()
        c = rep.conway
    else:
        m = family_theta(args.n)
        a = alexander(m)
        c = rewrite_in_z(a)
        lines = [f"n = {args.n}", f"A(s) = {a}", f"C(z) = {c}"]
    for line in lines:
        print(line, file=out)
    if args.pc:
        for line in _pc_lines(c, args.pc):
            print(line, file=out)
    if args.verify:
        print(f"status = {'ok' if rep.ok else 'mismatch'}", file=out)
        if not rep.ok:
            raise VerificationError(f"family k_{args.n} failed verification")
    return EXIT_OK


def cmd_ham(args, out: TextIO) -> int:
    d = ChordDiagram.parse(args.diagram)
    print(f"diagram = {d.canonical()}", file=out)
    if args.count:
        print(f"hamiltonian_cycles = {hamiltonian_count(intersection_graph(d))}", file=out)
    print(f"separated = {'yes' if is_separated(d) else 'no'}", file=out)
    print(f"ham = {ham(d)}", file=out)
    return EXIT_OK


def cmd_check4t(args, out: TextIO) -> int:
    rels = four_t_relators(args.degree, unsafe=args.unsafe_degree)
    bad = [r for r in rels if sum(ham(d) for d in r) % 2]
    print(f"degree = {args.degree}", file=out)
    print(f"relators = {len(rels)}", file=out)
    print(f"failures = {len(bad)}", file=out)
    for r in bad:
        print(f"failing = {' | '.join(str(d) for d in r)}", file=out)
    print(f"status = {'ok' if not bad else 'mismatch'}", file=out)
    if bad:
        raise VerificationError(f"ham is nonzero on {len(bad)} 4T relators")
    return EXIT_OK


def cmd_wheel(args, out: TextIO) -> int:
    n = args.degree
    if n > WHEEL_GUARD and not args.unsafe_degree:
        raise ValidationError(f"wheel degree {n} exceeds the guard {WHEEL_GUARD}")
    sigma = _parse_perm(args.perm, n) if args.perm else list(range(n))
    res = stu_reduce(wheel(n, sigma))
    print(f"degree = {n}", file=out)
    print(f"perm = {','.join(str(x) for x in sigma)}", file=out)
    print(f"terms = {res.terms}", file=out)
    print(f"surviving = {len(res)}", file=out)
    print(f"ham = {res.ham()}", file=out)
    return EXIT_OK


def cmd_jacobi(args, out: TextIO) -> int:
    j = read_jacobi(args.file)
    print(f"legs = {j.n_legs}", file=out)
    print(f"internal = {j.n_internal}", file=out)
    print(f"degree = {j.degree}", file=out)
    if args.iv:
        iv = sorted(insulated_vertices(j))
        good = [v for v in range(j.n_internal) if is_good_vertex(j, v)]
        print(f"insulated = {' '.join(f'v{v}' for v in iv) or '-'}", file=out)
        print(f"good = {' '.join(f'v{v}' for v in good) or '-'}", file=out)
    if args.eval:
        res = stu_reduce(j)
        print(f"terms = {res.terms}", file=out)
        print(f"surviving = {len(res)}", file=out)
        if args.verbose:
            for d in res:
                print(f"diagram = {d}", file=out)
        print(f"ham = {res.ham()}", file=out)
    return EXIT_OK


def cmd_rank(args, out: TextIO) -> int:
    sys_ = build_system(args.degree, args.relators, unsafe=args.unsafe_degree)
    rank, dim = gf2_rank(sys_)
    print(f"basis={len(sys_.basis)} relators={len(sys_.relators)} rank={rank} quotient_dim={dim}",
          file=out)
    if args.verbose:
        for i, d in enumerate(sys_.basis):
            print(f"basis[{i}] = {d}", file=out)
    return EXIT_OK


def cmd_theta(args, out: TextIO) -> int:
    dim, gens = theta_quotient(args.n)
    print(f"n = {args.n}", file=out)
    print(f"dimension = {dim}", file=out)
    for g in gens:
        print(f"generator = ({','.join(map(str, g))})", file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ftknots", description="Finite-type knot invariant computations.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")
    guard = _Parser(add_help=False)
    guard.add_argument("--unsafe-degree", action="store_true",
                       help="lift the default degree guards")

    s = sub.add_parser("series", help="discrete exponential or logarithm of a series")
    s.add_argument("op", choices=["exp", "log"])
    s.add_argument("--coeffs", required=True, help="comma-separated c0,c1,...")
    s.add_argument("--order", type=int, required=True)
    s.set_defaults(func=cmd_series)

    s = sub.add_parser("conway", help="Alexander/Conway polynomial of a Seifert matrix file")
    s.add_argument("--matrix", required=True)
    s.add_argument("--pc", type=int, default=0, metavar="K", help="also print pc_2..pc_2K")
    s.add_argument("--force", action="store_true", help="skip the det(M - M^T) = 1 check")
    s.set_defaults(func=cmd_conway)

    s = sub.add_parser("family", help="the knot family k_n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--verify", action="store_true")
    s.add_argument("--pc", type=int, default=0, metavar="K")
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("ham", help="Hamiltonian weight system of a chord diagram")
    s.add_argument("--diagram", required=True, help='word such as "1 2 1 2"')
    s.add_argument("--count", action="store_true", help="print the cycle count too")
    s.set_defaults(func=cmd_ham)

    s = sub.add_parser("check4t", parents=[guard], help="ham on every 4T relator of a degree")
    s.add_argument("--degree", type=int, required=True)
    s.set_defaults(func=cmd_check4t)

    s = sub.add_parser("wheel", parents=[guard], help="ham of a wheel via STU reduction")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--perm", help="leg positions, 0- or 1-based, e.g. 0,2,1")
    s.set_defaults(func=cmd_wheel)

    s = sub.add_parser("jacobi", help="inspect or evaluate a Jacobi diagram file")
    s.add_argument("--file", required=True)
    s.add_argument("--eval", action="store_true", help="STU-reduce and evaluate ham")
    s.add_argument("--iv", action="store_true", help="list insulated and good vertices")
    s.add_argument("--verbose", action="store_true")
    s.set_defaults(func=cmd_jacobi)

    s = sub.add_parser("rank", parents=[guard], help="GF(2) quotient dimension")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--relators", required=True, help="comma list from 4T,sep,iv,2iv")
    s.add_argument("--verbose", action="store_true")
    s.set_defaults(func=cmd_rank)

    s = sub.add_parser("theta", help="theta-with-hairs quotient for odd n")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_theta)
    return p


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
