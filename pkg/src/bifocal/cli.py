"""``bifocal`` command line.

Exit status: 0 success, 1 bad flags or input files, 2 degenerate input,
3 a verification check failed.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import serialize as ser
from .camera import random_pair
from .canon import decompose_tensor, reduce_to_canonical
from .errors import DegenerateError, ValidationError
from .gtensor import Profile, build_tensor
from .moduli import preimage_of_plane, psi, tau_from_pair
from .paper_example import DIMS, paper_pair, paper_profile, reproduce
from .verify import SUITES, run_suites

EXIT_OK, EXIT_INVALID, EXIT_DEGENERATE, EXIT_FAILED = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def default_seed() -> int:
    raw = os.environ.get("GT_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"GT_SEED must be an integer, got {raw!r}") from None


def _emit(obj: dict, out: str | None) -> None:
    text = ser.write_json(obj, out)
    if out is None or out == "-":
        sys.stdout.write(text)


def _load_pair(path: str):
    return ser.pair_from_dict(ser.read_json(path))


def _profile(pair, args) -> Profile:
    if args.alpha1 is None or args.alpha2 is None:
        raise ValidationError("--alpha1 and --alpha2 are required")
    return Profile.for_dims(*pair.dims, args.alpha1, args.alpha2)


def cmd_gen(args) -> int:
    pair = random_pair(args.k, args.h1, args.h2, seed=args.seed, bound=args.bound)
    _emit(ser.pair_to_dict(pair), args.output)
    return EXIT_OK


def cmd_tensor(args) -> int:
    pair = _load_pair(args.pair)
    _emit(ser.tensor_to_dict(build_tensor(pair, _profile(pair, args))), args.output)
    return EXIT_OK


def cmd_canon(args) -> int:
    _emit(ser.reduction_to_dict(reduce_to_canonical(_load_pair(args.pair))), args.output)
    return EXIT_OK


def cmd_decomp(args) -> int:
    pair = _load_pair(args.pair)
    _emit(ser.decomposition_to_dict(decompose_tensor(pair, _profile(pair, args))), args.output)
    return EXIT_OK


def cmd_tau(args) -> int:
    _emit(ser.tau_to_dict(tau_from_pair(_load_pair(args.pair))), args.output)
    return EXIT_OK


def cmd_psi(args) -> int:
    pair = _load_pair(args.pair)
    tau = ser.tau_from_dict(ser.read_json(args.tau)) if args.tau else None
    _emit(ser.subspace_to_dict(psi(pair, tau)), args.output)
    return EXIT_OK


def cmd_preimage(args) -> int:
    W = ser.subspace_from_dict(ser.read_json(args.plane))
    pair = preimage_of_plane(W, args.h1, args.h2, seed=args.seed, bound=args.bound)
    _emit(ser.pair_to_dict(pair), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == ["all"] else args.suite
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValidationError(f"unknown suite(s): {', '.join(unknown)}")
    failed = 0
    for name in names:
        t0 = time.perf_counter()
        res = run_suites([name], trials=args.trials, seed=args.seed)[0]
        dt = time.perf_counter() - t0
        status = "PASS" if res.ok else "FAIL"
        print(f"{status} {name}: {res.passed} passed, {res.failed} failed ({dt:.2f}s)")
        for line in res.info:
            print(f"  {line}")
        for line in res.failures:
            print(f"  failure: {line}")
        failed += not res.ok
    print(f"{len(names) - failed}/{len(names)} suites passed")
    return EXIT_FAILED if failed else EXIT_OK


def cmd_example(args) -> int:
    rep = reproduce()
    for c in rep.checks:
        detail = f" [{c.detail}]" if c.detail else ""
        print(f"{'ok  ' if c.ok else 'FAIL'} {c.name}{detail}")
    print(f"tensor sign: {rep.tensor_sign:+d}")
    print(f"decomposition sign: {rep.decomposition_sign:+d}")
    for note in rep.notes:
        print(f"note: {note}")
    if args.output:
        pair, profile = paper_pair(), paper_profile()
        ser.write_json({
            "dims": list(DIMS),
            "pair": ser.pair_to_dict(pair),
            "reduction": ser.reduction_to_dict(reduce_to_canonical(pair)),
            "tensor": ser.tensor_to_dict(build_tensor(pair, profile)),
            "decomposition": ser.decomposition_to_dict(decompose_tensor(pair, profile)),
            "tau": ser.tau_to_dict(tau_from_pair(pair)),
            "checks": {c.name: c.ok for c in rep.checks},
            "tensor_sign": rep.tensor_sign,
            "decomposition_sign": rep.decomposition_sign,
        }, args.output)
    print(f"{sum(c.ok for c in rep.checks)}/{len(rep.checks)} checks passed")
    return EXIT_OK if rep.ok else EXIT_FAILED


def build_parser(seed: int) -> argparse.ArgumentParser:
    p = _Parser(prog="bifocal", description="Exact bifocal Grassmann tensors.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        return sp

    def dims(sp, with_k=True):
        if with_k:
            sp.add_argument("--k", type=int, required=True)
        sp.add_argument("--h1", type=int, required=True)
        sp.add_argument("--h2", type=int, required=True)

    def randomness(sp):
        sp.add_argument("--seed", type=int, default=seed)
        sp.add_argument("--bound", type=int, default=9)

    def out(sp):
        sp.add_argument("-o", "--output", default=None, help="output file ('-' for stdout)")

    def pair(sp):
        sp.add_argument("--pair", required=True, help="pair JSON file")

    def profile(sp):
        sp.add_argument("--alpha1", type=int)
        sp.add_argument("--alpha2", type=int)

    sp = add("gen", cmd_gen, "generate a seeded random pair")
    dims(sp), randomness(sp), out(sp)
    sp = add("tensor", cmd_tensor, "build the Grassmann tensor of a pair")
    pair(sp), profile(sp), out(sp)
    sp = add("canon", cmd_canon, "reduce a pair to canonical form")
    pair(sp), out(sp)
    sp = add("decomp", cmd_decomp, "rank-one decomposition of the tensor")
    pair(sp), profile(sp), out(sp)
    sp = add("tau", cmd_tau, "tau representative of a pair")
    pair(sp), out(sp)
    sp = add("psi", cmd_psi, "the i-plane Psi(pair)")
    pair(sp), out(sp)
    sp.add_argument("--tau", help="use this tau file instead of the pair's own")
    sp = add("preimage", cmd_preimage, "a pair whose Psi is the given plane")
    sp.add_argument("--plane", required=True, help="subspace JSON file")
    dims(sp, with_k=False), randomness(sp), out(sp)
    sp = add("verify", cmd_verify, "run the invariant suites")
    sp.add_argument("--suite", nargs="+", default=["all"],
                    help=f"'all' or any of: {', '.join(SUITES)}")
    sp.add_argument("--trials", type=int, default=None)
    sp.add_argument("--seed", type=int, default=seed)
    sp = add("example-paper", cmd_example, "reproduce the worked (5,4,3) example")
    out(sp)
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        parser = build_parser(default_seed())
    except ValidationError as exc:
        print(f"bifocal: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    args = parser.parse_args(argv)
    if getattr(args, "trials", None) is not None and args.trials < 1:
        parser.error("--trials must be positive")
    if getattr(args, "bound", 1) < 1:
        parser.error("--bound must be positive")
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"bifocal: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (KeyError, TypeError) as exc:
        print(f"bifocal: malformed input file: {exc!r}", file=sys.stderr)
        return EXIT_INVALID
    except DegenerateError as exc:
        print(f"bifocal: degenerate input: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
