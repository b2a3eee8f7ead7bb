"""Unitary transfer matrices on quasi-SICs.

The transfer of any quasi-SIC is orthogonal with unit row and column sums,
but the entry bound R_ij >= -1/d needs Tr(Pi_i U Pi_j U^dag) >= 0.  Over all
U the minimum of that trace is sum(lam_up * lam_down) for the spectrum of
Pi, which is negative unless the spectrum is (1, 0, ..., 0) or
(2/d, ..., 2/d, 2/d - 1).  This script compares the simplex-built quasi-SIC
with the reflected SIC (2/d) I - P, whose spectra sit on the second family.
"""
import argparse
from dataclasses import dataclass

import numpy as np

from qplex.linalg import haar_unitary
from qplex.rep import DimensionParams
from qplex.sic import build_quasi_sic, reflected_quasi_sic, standard_sic
from qplex.symmetry import stretched_from_unitary, verify_stretched


@dataclass
class TransferConfig:
    d_max: int = 6
    n_unitaries: int = 20
    seed: int = 0


def summarize(system, d, cfg):
    prm = DimensionParams(d)
    reps = [verify_stretched(stretched_from_unitary(haar_unitary(d, cfg.seed + k), system), prm)
            for k in range(cfg.n_unitaries)]
    orth = max(r.orthogonality_defect for r in reps)
    low = min(r.min_entry for r in reps) + 1 / d
    ok = sum(r.stochastic for r in reps)
    return orth, low, ok


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    for name, val in vars(TransferConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=type(val), default=val)
    cfg = TransferConfig(**vars(ap.parse_args()))
    print(f"{'d':>2} {'system':>10} {'min eig':>9} {'orth dev':>9} {'min R + 1/d':>12} stochastic")
    for d in range(2, cfg.d_max + 1):
        for name, system in (("simplex", build_quasi_sic(d)), ("reflected", reflected_quasi_sic(standard_sic(d)))):
            w = np.linalg.eigvalsh(system.operators).min()
            orth, low, ok = summarize(system, d, cfg)
            print(f"{d:>2} {name:>10} {w:>9.3f} {orth:>9.1e} {low:>12.3f} {ok}/{cfg.n_unitaries}")


if __name__ == "__main__":
    main()
