"""Grow a germ through the sorted-entry regions and report how many accepted
points reconstruct to non-positive operators.

At d = 2 the out-ball cut by the hyperplane is the in-ball of the simplex,
i.e. exactly the Bloch ball, so every candidate is a quantum state and the
count is zero.  From d = 3 on the out-ball pokes out of state space and the
grown germ is visibly non-quantum.
"""
import argparse
import time
from dataclasses import dataclass

import numpy as np

from qplex.geometry import is_germ
from qplex.germlab import grow_sorted_qplex
from qplex.rep import DimensionParams, prob_to_operator
from qplex.sic import standard_sic


@dataclass
class GrowConfig:
    d: int = 2
    n_candidates: int = 10_000
    seed: int = 0
    tol: float = 0.0


def run(cfg: GrowConfig) -> dict:
    t0 = time.perf_counter()
    state = grow_sorted_qplex(cfg.d, cfg.n_candidates, cfg.seed, cfg.tol)
    pts = state.accepted.points
    eig = np.linalg.eigvalsh(prob_to_operator(pts, standard_sic(cfg.d)))
    return dict(
        accepted=len(pts),
        rejected=state.rejected,
        regions=f"{len(state.region_order)}/{state.n_regions_total}",
        germ=is_germ(state.accepted, DimensionParams(cfg.d)).passed,
        non_psd=int(np.sum(eig[:, 0] < -1e-12)),
        min_eigenvalue=float(eig.min()),
        seconds=time.perf_counter() - t0,
    )


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    for name, val in vars(GrowConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=type(val), default=val)
    cfg = GrowConfig(**vars(ap.parse_args()))
    for k, v in run(cfg).items():
        print(f"{k:>15}: {v}")


if __name__ == "__main__":
    main()
