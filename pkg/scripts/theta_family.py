"""Inner-product profiles <p_theta, e_j> of the theta-family germs and their
pairwise separations."""
import argparse
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from qplex.geometry import is_germ, make_geometry
from qplex.germlab import theta_germ
from qplex.rep import DimensionParams


@dataclass
class ThetaConfig:
    d: int = 3
    theta_max: float = 0.1
    steps: int = 10


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for name, val in vars(ThetaConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=type(val), default=val)
    cfg = ThetaConfig(**vars(ap.parse_args()))
    prm = DimensionParams(cfg.d)
    g = make_geometry(prm)
    thetas = np.linspace(cfg.theta_max / cfg.steps, cfg.theta_max, cfg.steps)
    profiles = []
    for th in thetas:
        germ = theta_germ(g, th)
        rep = is_germ(germ, prm)
        prof = germ.points[0] @ g.basis.T
        profiles.append(prof)
        print(f"theta={th:.3f} germ={rep.passed} min<p,e>={prof.min():.6f} max<p,e>={prof.max():.6f}")
    sep = min(np.abs(a - b).max() for a, b in combinations(profiles, 2))
    print(f"smallest pairwise profile separation: {sep:.3e}")


if __name__ == "__main__":
    main()
