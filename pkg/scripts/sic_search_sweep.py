"""Fiducial search over a range of dimensions: restarts used, final defect,
overlap deviation of the built SIC and wall time per dimension."""
import argparse
import time
from dataclasses import dataclass

from qplex.sic import FiducialSearchError, find_sic_fiducial, sic_defect, sic_from_fiducial, verify_sic


@dataclass
class SweepConfig:
    d_min: int = 2
    d_max: int = 7
    seed: int = 0
    tol: float = 1e-16
    max_restarts: int = 50


def run(cfg: SweepConfig) -> list[dict]:
    rows = []
    for d in range(cfg.d_min, cfg.d_max + 1):
        t0 = time.perf_counter()
        try:
            fid = find_sic_fiducial(d, seed=cfg.seed, tol=cfg.tol, max_restarts=cfg.max_restarts)
        except FiducialSearchError as exc:
            rows.append(dict(d=d, defect=exc.best_defect, overlap_dev=float("nan"),
                             seconds=time.perf_counter() - t0, ok=False))
            continue
        rep = verify_sic(sic_from_fiducial(fid))
        rows.append(dict(d=d, defect=sic_defect(fid), overlap_dev=rep.overlap_dev,
                         seconds=time.perf_counter() - t0, ok=rep.passed))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for name, val in vars(SweepConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=type(val), default=val)
    cfg = SweepConfig(**vars(ap.parse_args()))
    print(f"{'d':>3} {'defect':>10} {'overlap dev':>12} {'seconds':>8}  ok")
    for r in run(cfg):
        print(f"{r['d']:>3} {r['defect']:>10.2e} {r['overlap_dev']:>12.2e} {r['seconds']:>8.3f}  {r['ok']}")


if __name__ == "__main__":
    main()
