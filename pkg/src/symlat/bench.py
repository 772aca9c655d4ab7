"""Seeded experiment harness: kernel statistics and full-vs-reduced VQE runs.

Every experiment is a pure function of its configuration: per-lattice seeds
are derived from the experiment seed with numpy's SeedSequence, results are
merged in lattice order, and the CSV/JSON outputs are byte-stable across
runs.  SYMLAT_WORKERS > 1 distributes lattices over processes without
changing any output.
"""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .constraints import constraints_for
from .lattice import SymmetryKind, build_basis, gram, sample_generator
from .oracle import kernel_stats
from .spectral import eigenvalues, fourier_basis
from .vqe import DEFAULT_BUDGET, run_vqe

SCHEMA_VERSION = 1
_HIST_BINS = 21  # 0.1-wide bins over [0, 2), last bin collects lambda >= 2


@dataclass(frozen=True)
class ExperimentConfig:
    kind: SymmetryKind
    n: int
    k: int
    lattice_count: int
    seed: int
    budget: int = DEFAULT_BUDGET
    output_path: str | None = None

    def __post_init__(self) -> None:
        if self.lattice_count < 1:
            raise ValueError("lattice_count must be at least 1")

    def public(self) -> dict:
        d = asdict(self)
        d["kind"] = self.kind.value
        d.pop("output_path")
        return d


@dataclass(frozen=True)
class CompareRecord:
    lattice_seed: int
    q_star: int
    qubits_full: int
    qubits_reduced: int
    energy_full: float
    energy_reduced: float
    lam: float

    def __post_init__(self) -> None:
        if self.qubits_reduced >= self.qubits_full:
            raise ValueError("reduced run must use fewer qubits than the full run")


def _lattice_seeds(cfg: ExperimentConfig) -> list[int]:
    state = np.random.SeedSequence(cfg.seed).generate_state(cfg.lattice_count, dtype=np.uint64)
    return [int(s) for s in state]


def _vqe_seeds(cfg: ExperimentConfig, index: int, count: int) -> list[int]:
    state = np.random.SeedSequence(entropy=cfg.seed, spawn_key=(index,)).generate_state(
        count, dtype=np.uint64)
    return [int(s) for s in state]


def _workers() -> int:
    return max(1, int(os.environ.get("SYMLAT_WORKERS", "1")))


def _run_indexed(fn, cfg: ExperimentConfig) -> list:
    indices = range(cfg.lattice_count)
    if _workers() == 1:
        return [fn((cfg, i)) for i in indices]
    with ProcessPoolExecutor(max_workers=_workers()) as pool:
        return list(pool.map(fn, [(cfg, i) for i in indices]))


def _table1_one(job) -> dict:
    cfg, index = job
    lattice_seed = _lattice_seeds(cfg)[index]
    g = gram(build_basis(cfg.kind, sample_generator(lattice_seed, cfg.n, cfg.kind)))
    u = fourier_basis(cfg.kind, cfg.n)
    spec = eigenvalues(g, u)
    stats = kernel_stats(g, u, spec, cfg.k)
    return {
        "index": index,
        "lattice_seed": lattice_seed,
        "n": cfg.n,
        "k": cfg.k,
        "q_star": spec.principal,
        "in_kernel": stats.in_kernel,
        "gamma": stats.gamma,
        "oracle_length_sq": stats.oracle.length_sq,
        "kernel_min_length_sq": stats.kernel_min_length_sq,
        "flagged": stats.gamma is None,
    }


def percentile_90(values: list[float]) -> float:
    """Smallest sample value that at least 90% of the sample lies at or below."""
    ordered = sorted(values)
    rank = int(np.ceil(0.9 * len(ordered)))
    return ordered[max(rank - 1, 0)]


def table1_experiment(cfg: ExperimentConfig) -> dict:
    """Oracle-only kernel statistics over seeded lattices.

    Returns the summary dict; when cfg.output_path is set, also writes
    <path>/table1.csv (one row per lattice) and <path>/table1.json.
    """
    rows = _run_indexed(_table1_one, cfg)
    gammas = [r["gamma"] for r in rows if not r["flagged"]]
    summary = {
        "schema_version": SCHEMA_VERSION,
        "experiment": "table1",
        "config": cfg.public(),
        "lattice_count": len(rows),
        "flagged_count": sum(r["flagged"] for r in rows),
        "fraction_in_kernel": sum(r["in_kernel"] for r in rows) / len(rows),
        "fraction_gamma_1": (sum(1 for v in gammas if v == 1.0) / len(gammas)) if gammas else None,
        "p90_gamma": percentile_90(gammas) if gammas else None,
    }
    if cfg.output_path:
        _write_outputs(cfg.output_path, "table1", rows, summary)
    return summary


def _compare_one(job) -> dict:
    cfg, index = job
    lattice_seed = _lattice_seeds(cfg)[index]
    g = gram(build_basis(cfg.kind, sample_generator(lattice_seed, cfg.n, cfg.kind)))
    u = fourier_basis(cfg.kind, cfg.n)
    spec = eigenvalues(g, u)
    mats = [m for m in constraints_for(cfg.kind, cfg.n, spec.principal) if m.cols > 0]
    row = {
        "index": index,
        "lattice_seed": lattice_seed,
        "n": cfg.n,
        "k": cfg.k,
        "q_star": spec.principal,
        "skipped": not mats,
    }
    if not mats:
        row.update({"qubits_full": None, "qubits_reduced": None, "m_cols": None,
                    "energy_full": None, "energy_reduced": None, "lambda": None})
        return row
    seeds = _vqe_seeds(cfg, index, 1 + len(mats))
    full = run_vqe(g, None, cfg.k, seed=seeds[0], budget=cfg.budget)
    reduced = [run_vqe(g, m, cfg.k, seed=s, budget=cfg.budget)
               for m, s in zip(mats, seeds[1:])]
    best = min(reduced, key=lambda r: (r.energy, r.qubits_used))
    rec = CompareRecord(lattice_seed=lattice_seed, q_star=spec.principal,
                        qubits_full=full.qubits_used, qubits_reduced=best.qubits_used,
                        energy_full=full.energy, energy_reduced=best.energy,
                        lam=best.energy / full.energy)
    row.update({
        "qubits_full": rec.qubits_full,
        "qubits_reduced": rec.qubits_reduced,
        "m_cols": rec.qubits_reduced // cfg.k,
        "energy_full": rec.energy_full,
        "energy_reduced": rec.energy_reduced,
        "lambda": rec.lam,
    })
    return row


def compare_experiment(cfg: ExperimentConfig) -> dict:
    """Full-problem vs reduced-problem VQE over seeded lattices.

    Each lattice runs one full-width VQE and one reduced VQE per principal
    constraints matrix; the lowest-energy reduced run is reported and
    lambda = E_reduced / E_full.  Lattices whose principal kernel is empty
    are skipped and counted.
    """
    rows = _run_indexed(_compare_one, cfg)
    kept = [r for r in rows if not r["skipped"]]
    lambdas = [r["lambda"] for r in kept]
    ratios = [r["qubits_full"] / r["qubits_reduced"] for r in kept]
    hist = [0] * _HIST_BINS
    for lam in lambdas:
        hist[min(int(lam / 0.1), _HIST_BINS - 1)] += 1
    summary = {
        "schema_version": SCHEMA_VERSION,
        "experiment": "compare",
        "config": cfg.public(),
        "lattice_count": len(rows),
        "skipped_count": len(rows) - len(kept),
        "fraction_lambda_lt_1": (sum(1 for v in lambdas if v < 1.0) / len(lambdas)) if lambdas else None,
        "median_lambda": float(np.median(lambdas)) if lambdas else None,
        "mean_qubit_ratio": float(np.mean(ratios)) if ratios else None,
        "lambda_histogram": {"bin_width": 0.1, "last_bin_is_overflow": True, "counts": hist},
    }
    if cfg.output_path:
        _write_outputs(cfg.output_path, "compare", rows, summary)
    return summary


def rows_to_csv(rows: list[dict]) -> str:
    """Render per-lattice rows as a deterministic CSV document."""
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=list(rows[0].keys()), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("" if v is None else v) for k, v in row.items()})
    return out.getvalue()


def summary_to_json(summary: dict) -> str:
    return json.dumps(summary, sort_keys=True, indent=2) + "\n"


def _write_outputs(path: str, name: str, rows: list[dict], summary: dict) -> None:
    os.makedirs(path, exist_ok=True)
    with open(os.path.join(path, f"{name}.csv"), "w", newline="") as fh:
        fh.write(rows_to_csv(rows))
    with open(os.path.join(path, f"{name}.json"), "w") as fh:
        fh.write(summary_to_json(summary))
