"""Command-line front end.

Exit status: 0 on success, 1 on usage or input errors, 2 when a check fails
(certification, witness hypothesis, membership, sweep violation).
"""

from __future__ import annotations

import argparse
import secrets
import sys
from typing import Sequence

import numpy as np

from schmidt_kit import io, mixed, oracle, states, subspace
from schmidt_kit._backend import BACKEND
from schmidt_kit.errors import (
    BudgetExceeded,
    CertificationFailed,
    InvalidCertificate,
    NotSupported,
    SchmidtKitError,
)

EXIT_OK, EXIT_USAGE, EXIT_CHECK = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _new_seed() -> int:
    seed = secrets.randbits(63)
    print(f"seed: {seed}", file=sys.stderr)
    return seed


def _emit(payload, args) -> None:
    target = getattr(args, "json", None)
    text = io.dump_json(payload)
    if target in (None, "-"):
        print(text)
    else:
        io.dump_json(payload, target)


def _fmt(x: float) -> str:
    return f"{x:.12g}"


# -- verbs ---------------------------------------------------------------------

def cmd_decompose(args) -> int:
    st = io.load_state(args.state)
    if isinstance(st, states.ExactState):
        st = st.to_pure()
    dec = states.schmidt_decompose(st, args.tol)
    if args.json:
        _emit(
            {
                "m": st.m,
                "n": st.n,
                "coefficients": dec.coefficients.tolist(),
                "left_vectors": [[[z.real, z.imag] for z in col] for col in dec.left_vectors.T],
                "right_vectors": [[[z.real, z.imag] for z in col] for col in dec.right_vectors.T],
                "schmidt_rank": dec.rank,
            },
            args,
        )
        return EXIT_OK
    print(f"schmidt_rank: {dec.rank}")
    print("coefficients: " + " ".join(_fmt(a) for a in dec.coefficients))
    return EXIT_OK


def cmd_rank(args) -> int:
    st = io.load_state(args.state)
    if isinstance(st, states.ExactState):
        r = states.schmidt_rank_exact(st)
        mode = "exact"
    elif args.exact:
        raise SchmidtKitError("--exact needs a state with exact (string) amplitudes")
    else:
        r = states.schmidt_rank(st, args.tol)
        mode = "floating"
    if args.json:
        _emit({"schmidt_rank": r, "mode": mode}, args)
    else:
        print(f"schmidt_rank: {r}")
    return EXIT_OK


def cmd_build(args) -> int:
    basis = subspace.build_basis(args.m, args.n)
    if args.json:
        _emit(basis.to_json(), args)
        return EXIT_OK
    print(f"S({args.m},{args.n}): dimension {basis.dimension} = ({args.m}-2)({args.n}-2)")
    for e in basis.elements:
        print(f"  k={e.k} i={e.i} j={e.j}: e{e.i - 1}e{e.j + 1} - 2 e{e.i}e{e.j} + e{e.i + 1}e{e.j - 1}")
    return EXIT_OK


def _grid_arg(args):
    return oracle.parse_grid(args.grid) if args.grid else range(-2, 3)


def cmd_certify(args) -> int:
    seed = args.seed
    if args.mode == "random" and seed is None:
        seed = _new_seed()
    try:
        cert = subspace.certify(
            args.m, args.n,
            oracle_mode=args.mode,
            trials=args.trials,
            seed=seed,
            grid=_grid_arg(args),
        )
    except CertificationFailed as exc:
        print(f"certification failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    if args.out:
        io.dump_json(cert.to_json(), args.out)
    if args.json:
        _emit(cert.to_json(), args)
        return EXIT_OK
    print(f"S({args.m},{args.n}): dimension {cert.dimension}")
    for r in cert.minor_reports:
        print(f"  A_{r.t}: {len(r.minors)} order-{r.t} minors, all nonzero (labels k={list(r.labels)})")
    print("  det C_s: " + ", ".join(f"s={s}:{v.re}" for s, v in cert.det_chain))
    o = cert.oracle
    print(f"  oracle: {o['mode']} {o['trials']} combinations, min rank {o['min_rank_observed']}"
          + (f", seed {o['seed']}" if o["seed"] is not None else ""))
    print(f"verdict: {cert.verdict}")
    return EXIT_OK


def cmd_member(args) -> int:
    basis = subspace.build_basis(args.m, args.n)
    st = io.load_state(args.state)
    if not isinstance(st, states.ExactState):
        raise SchmidtKitError("membership is decided exactly; give a state with exact amplitudes")
    inside = subspace.member_of_S(st, basis)
    if args.json:
        _emit({"member": inside, "m": args.m, "n": args.n}, args)
    else:
        print(f"member: {str(inside).lower()}")
    return EXIT_OK if inside else EXIT_CHECK


def cmd_witness(args) -> int:
    m, n = args.subspace
    basis = subspace.build_basis(m, n)
    rho = io.load_density(args.state)
    if args.cert:
        cert = subspace.RankCertificate.from_json(io.load_json(args.cert))
    else:
        seed = args.seed if args.seed is not None else _new_seed()
        cert = subspace.certify(m, n, oracle_mode="random", trials=args.trials, seed=seed)
    try:
        w = mixed.schmidt_number_lower_bound(rho, basis, cert, args.tol)
    except (NotSupported, InvalidCertificate) as exc:
        kind = type(exc).__name__
        if args.json:
            _emit({"error": kind, "detail": str(exc)}, args)
        print(f"{kind}: {exc}", file=sys.stderr)
        return EXIT_CHECK
    if args.json:
        _emit(w.to_json(), args)
    else:
        print(f"schmidt_number >= {w.lower_bound}")
        print(f"support dimension {w.support_dimension}, max residual "
              f"{max(w.support_check, default=0.0):.3g}, certificate {w.certificate_ref[:16]}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    basis = subspace.build_basis(args.m, args.n)
    if args.mode == "exhaustive":
        try:
            report = oracle.exhaustive_sweep(basis, _grid_arg(args))
        except BudgetExceeded as exc:
            print(f"{exc} (--mode random --trials T)", file=sys.stderr)
            return EXIT_USAGE
    else:
        seed = args.seed if args.seed is not None else _new_seed()
        report = oracle.random_sweep(basis, args.trials, seed)
    if args.out:
        io.dump_json(report.to_json(), args.out)
    if args.json:
        _emit(report.to_json(), args)
    else:
        print(f"{report.mode} sweep over S({args.m},{args.n}): {report.trials} combinations, "
              f"min rank {report.min_rank_observed}, max rank {report.max_rank_observed}")
        if report.violating_combination:
            print(f"violation: {report.violating_combination}")
    return EXIT_OK if report.passed else EXIT_CHECK


def cmd_make_state(args) -> int:
    kind = args.kind
    payload = None
    if kind == "bell":
        v = np.zeros(4)
        v[0] = v[3] = 1 / np.sqrt(2)
        payload = io.state_to_json(states.PureState(2, 2, v))
    elif kind == "product":
        m, n = _need_dims(args)
        payload = io.state_to_json(states.exact_basis_vector(m, n, args.i, args.j))
    elif kind == "subspace-element":
        m, n = _need_dims(args)
        basis = subspace.build_basis(m, n)
        if not 0 <= args.index < basis.dimension:
            raise SchmidtKitError(f"index {args.index} outside [0, {basis.dimension})")
        payload = io.state_to_json(basis.elements[args.index].vector)
    elif kind == "uniform":
        m, n = _need_dims(args)
        payload = io.density_to_json(mixed.make_uniform_state(subspace.build_basis(m, n)))
    elif kind == "maximally-mixed":
        m, n = _need_dims(args)
        payload = io.density_to_json(mixed.maximally_mixed(m, n))
    elif kind == "random":
        m, n = _need_dims(args)
        seed = args.seed if args.seed is not None else _new_seed()
        rng = np.random.default_rng(seed)
        v = rng.normal(size=m * n) + 1j * rng.normal(size=m * n)
        payload = io.state_to_json(states.normalize(states.PureState(m, n, v)))
    if args.out:
        io.dump_json(payload, args.out)
    else:
        print(io.dump_json(payload))
    return EXIT_OK


def _need_dims(args) -> tuple[int, int]:
    if args.m is None or args.n is None:
        raise UsageError(f"make-state {args.kind} needs M N")
    return args.m, args.n


# -- parser --------------------------------------------------------------------

def _add_json(p, help_text="print JSON to stdout, or write it to the given file"):
    p.add_argument("--json", nargs="?", const="-", default=None, metavar="OUT", help=help_text)


def _add_dims(p):
    p.add_argument("m", type=int, metavar="M")
    p.add_argument("n", type=int, metavar="N")


def _add_certify_args(p):
    _add_dims(p)
    p.add_argument("--mode", choices=["exhaustive", "random"], default="random")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int)
    p.add_argument("--grid", help="coefficient grid for exhaustive mode, e.g. -2..2 or 0,1,1/2+1/1 i")
    p.add_argument("--out", help="write the certificate JSON here")
    _add_json(p)
    p.set_defaults(func=cmd_certify)


def _add_sweep_args(p):
    _add_dims(p)
    p.add_argument("--mode", choices=["exhaustive", "random"], default="random")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int)
    p.add_argument("--grid", help="coefficient grid for exhaustive mode (default -2..2)")
    p.add_argument("--out", help="write the report JSON here")
    _add_json(p)
    p.set_defaults(func=cmd_sweep)


def _add_build_args(p):
    _add_dims(p)
    _add_json(p)
    p.set_defaults(func=cmd_build)


def _add_member_args(p):
    _add_dims(p)
    p.add_argument("--state", required=True)
    _add_json(p)
    p.set_defaults(func=cmd_member)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="schmidt-kit",
        description="Schmidt rank/number tools and the certified Schmidt-rank->=3 subspace.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s 0.1.0 ({BACKEND} kernel)")
    sub = parser.add_subparsers(dest="verb", metavar="VERB")
    sub.required = True

    p = sub.add_parser("decompose", help="Schmidt decomposition of a pure state")
    p.add_argument("--state", required=True)
    p.add_argument("--tol", type=float, default=states.DEFAULT_TOL)
    _add_json(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("rank", help="Schmidt rank of a pure state")
    p.add_argument("--state", required=True)
    p.add_argument("--tol", type=float, default=states.DEFAULT_TOL)
    p.add_argument("--exact", action="store_true", help="require exact evaluation")
    _add_json(p)
    p.set_defaults(func=cmd_rank)

    _add_build_args(sub.add_parser("subspace-build", help="basis of S(M,N)"))
    _add_certify_args(sub.add_parser("certify", help="rank certificate for S(M,N)"))
    _add_member_args(sub.add_parser("member", help="exact membership in S(M,N)"))

    grp = sub.add_parser("subspace", help="build | certify | member")
    gsub = grp.add_subparsers(dest="action", metavar="ACTION")
    gsub.required = True
    _add_build_args(gsub.add_parser("build"))
    _add_certify_args(gsub.add_parser("certify"))
    _add_member_args(gsub.add_parser("member"))

    p = sub.add_parser("witness", help="Schmidt-number lower bound for a state supported on S(M,N)")
    p.add_argument("--state", required=True, help="density-matrix or pure-state file")
    p.add_argument("--subspace", nargs=2, type=int, required=True, metavar=("M", "N"))
    p.add_argument("--cert", help="certificate JSON; certified on the fly when omitted")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int)
    p.add_argument("--tol", type=float, default=states.DEFAULT_TOL)
    _add_json(p)
    p.set_defaults(func=cmd_witness)

    _add_sweep_args(sub.add_parser("sweep", help="oracle sweep over combinations of the basis"))
    grp = sub.add_parser("oracle", help="sweep")
    gsub = grp.add_subparsers(dest="action", metavar="ACTION")
    gsub.required = True
    _add_sweep_args(gsub.add_parser("sweep"))

    p = sub.add_parser("make-state", help="write an example state")
    p.add_argument(
        "kind",
        choices=["bell", "product", "subspace-element", "uniform", "maximally-mixed", "random"],
    )
    p.add_argument("m", type=int, nargs="?", metavar="M")
    p.add_argument("n", type=int, nargs="?", metavar="N")
    p.add_argument("--i", type=int, default=0, help="product: left basis index")
    p.add_argument("--j", type=int, default=0, help="product: right basis index")
    p.add_argument("--index", type=int, default=0, help="subspace-element: position in the basis")
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_make_state)
    return parser


def _glue_option_values(argv: Sequence[str]) -> list[str]:
    # "--grid -2..2" would otherwise be read as an unknown option
    out = list(argv)
    for idx in range(len(out) - 1):
        if out[idx] == "--grid":
            out[idx] = f"--grid={out[idx + 1]}"
            out[idx + 1] = None
    return [a for a in out if a is not None]


def run(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_option_values(argv))
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except CertificationFailed as exc:
        print(f"certification failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except (SchmidtKitError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
