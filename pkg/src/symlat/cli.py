"""Command-line front end.

Subcommands: gen, kernel, reduce, oracle, vqe, table1, compare.  All output
is deterministic JSON (plus CSV files for the experiment subcommands), so
repeated runs with the same flags produce identical bytes.  Exit codes:
0 success, 2 invalid arguments, 3 resource limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .bench import ExperimentConfig, compare_experiment, table1_experiment
from .constraints import classify, constraints_for
from .exceptions import ResourceLimitError
from .hamiltonian import reduce_gram
from .hnf import kernel_basis
from .lattice import SymmetryKind, build_basis, gram, sample_generator
from .oracle import brute_force_shortest
from .spectral import eigenvalues, fourier_basis
from .vqe import run_vqe


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _matrix_payload(m) -> dict:
    return {"origin": m.origin, "q": m.operator_index, "prime": m.prime,
            "shape": list(m.entries.shape), "entries": m.entries.tolist()}


def _lattice(args) -> tuple[np.ndarray, np.ndarray]:
    kind = SymmetryKind.parse(args.kind)
    generator = sample_generator(args.seed, args.n, kind)
    return generator, gram(build_basis(kind, generator))


def _cmd_gen(args) -> int:
    generator, g = _lattice(args)
    _emit({"kind": SymmetryKind.parse(args.kind).value, "n": args.n, "seed": args.seed,
           "generator": generator.tolist(), "gram": g.tolist()}, args.out)
    return 0


def _cmd_kernel(args) -> int:
    kind = SymmetryKind.parse(args.kind)
    payload = {"kind": kind.value, "n": args.n, "q": args.q,
               "case": classify(kind, args.n, args.q).case.value}
    if args.method in ("analytic", "both"):
        payload["analytic"] = [_matrix_payload(m) for m in constraints_for(kind, args.n, args.q)]
    if args.method in ("hnf", "both"):
        payload["hnf"] = _matrix_payload(kernel_basis(kind, args.n, args.q))
    _emit(payload, args.out)
    return 0


def _cmd_reduce(args) -> int:
    kind = SymmetryKind.parse(args.kind)
    generator, g = _lattice(args)
    q = args.q if args.q is not None else eigenvalues(g, fourier_basis(kind, args.n)).principal
    mats = constraints_for(kind, args.n, q) if args.method == "analytic" else \
        [kernel_basis(kind, args.n, q)]
    reduced = []
    for m in (m for m in mats if m.cols > 0):
        reduced.append({"matrix": _matrix_payload(m),
                        "f": reduce_gram(g, m).entries.tolist()})
    _emit({"kind": kind.value, "n": args.n, "seed": args.seed, "q": q,
           "penalty": g[0, 0], "reduced": reduced}, args.out)
    return 0


def _cmd_oracle(args) -> int:
    _, g = _lattice(args)
    res = brute_force_shortest(g, args.k)
    _emit({"kind": SymmetryKind.parse(args.kind).value, "n": args.n, "k": args.k,
           "seed": args.seed, "shortest": res.shortest.tolist(),
           "length_sq": res.length_sq, "enumerated": res.enumerated}, args.out)
    return 0


def _cmd_vqe(args) -> int:
    kind = SymmetryKind.parse(args.kind)
    _, g = _lattice(args)
    if args.mode == "full":
        runs = [(None, run_vqe(g, None, args.k, seed=args.vqe_seed, budget=args.budget,
                               shots=args.shots))]
    else:
        q = args.q if args.q is not None else eigenvalues(g, fourier_basis(kind, args.n)).principal
        mats = [m for m in constraints_for(kind, args.n, q) if m.cols > 0]
        if not mats:
            print("error: the selected kernel is empty; nothing to optimize", file=sys.stderr)
            return 2
        runs = [(m, run_vqe(g, m, args.k, seed=args.vqe_seed + j, budget=args.budget,
                            shots=args.shots)) for j, m in enumerate(mats)]
    payload = {"kind": kind.value, "n": args.n, "k": args.k, "seed": args.seed,
               "mode": args.mode, "budget": args.budget, "runs": []}
    for m, r in runs:
        payload["runs"].append({
            "origin": None if m is None else m.origin,
            "qubits": r.qubits_used,
            "best_bits": r.best_bits,
            "decoded": r.decoded.tolist(),
            "lattice_vector": r.lattice_vector.tolist(),
            "energy": r.energy,
            "initial_expectation": float(r.expectation_trace[0]),
            "final_expectation": float(r.expectation_trace.min()),
        })
    _emit(payload, args.out)
    return 0


def _experiment_config(args) -> ExperimentConfig:
    return ExperimentConfig(kind=SymmetryKind.parse(args.kind), n=args.n, k=args.k,
                            lattice_count=args.count, seed=args.seed,
                            budget=args.budget, output_path=args.out)


def _cmd_table1(args) -> int:
    _emit(table1_experiment(_experiment_config(args)), None)
    return 0


def _cmd_compare(args) -> int:
    _emit(compare_experiment(_experiment_config(args)), None)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symlat",
                                     description="short vectors in cyclic and nega-cyclic lattices")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed_default=1):
        p.add_argument("--kind", default="nega", help="cyclic or nega (default nega)")
        p.add_argument("--n", type=int, required=True, help="lattice dimension")
        p.add_argument("--seed", type=int, default=seed_default, help="lattice seed")
        p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("gen", help="sample a lattice and print its Gram matrix")
    common(p)
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("kernel", help="constraints matrices for one mode index")
    p.add_argument("--kind", default="nega")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True, help="mode index")
    p.add_argument("--method", choices=("analytic", "hnf", "both"), default="analytic")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_kernel)

    p = sub.add_parser("reduce", help="reduced quadratic forms F = A^T G A")
    common(p)
    p.add_argument("--q", type=int, default=None, help="mode index (default: principal)")
    p.add_argument("--method", choices=("analytic", "hnf"), default="analytic")
    p.set_defaults(fn=_cmd_reduce)

    p = sub.add_parser("oracle", help="brute-force shortest vector in the box")
    common(p)
    p.add_argument("--k", type=int, required=True, help="bits per register")
    p.set_defaults(fn=_cmd_oracle)

    p = sub.add_parser("vqe", help="one VQE run (reduced by default)")
    common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=int, default=None, help="mode index (default: principal)")
    p.add_argument("--mode", choices=("reduced", "full"), default="reduced")
    p.add_argument("--budget", type=int, default=500)
    p.add_argument("--vqe-seed", type=int, default=11, help="optimizer seed")
    p.add_argument("--shots", type=int, default=None,
                   help="sample the output state instead of taking the argmax")
    p.set_defaults(fn=_cmd_vqe)

    for name, fn in (("table1", _cmd_table1), ("compare", _cmd_compare)):
        p = sub.add_parser(name, help=f"{name} experiment over seeded lattices")
        p.add_argument("--kind", default="nega")
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--count", type=int, required=True, help="number of lattices")
        p.add_argument("--seed", type=int, default=7)
        p.add_argument("--budget", type=int, default=500)
        p.add_argument("--out", default=None, help="directory for CSV/JSON outputs")
        p.set_defaults(fn=fn)
    return parser


def cli_main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
