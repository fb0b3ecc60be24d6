"""Watch a particle system freeze as the multiplicity grows.

For a chosen root system the script draws fixed-time samples over a grid of
multiplicities, rescales by sqrt(m*t), and prints how the cloud contracts
onto the equilibrium configuration: the 95th-percentile sup-distance to the
target and the Gaussian-battery verdict on the centered fluctuations.

    python scripts/freezing_sweep.py --system A --n 3 --seed 7
    python scripts/freezing_sweep.py --system B --n 2 --nu 1.0 --seed 7
"""

import argparse
import math

import numpy as np

from freeze_bessel.sampling import sample_exact
from freeze_bessel.verify import FreezingRegime, gaussian_battery


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--system", choices=["A", "B1", "D"], default="A")
    parser.add_argument("--n", type=int, default=3)
    parser.add_argument("--nu", type=float, default=1.0, help="axis ratio for system B1")
    parser.add_argument("--t", type=float, default=1.0)
    parser.add_argument("--count", type=int, default=20000)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument(
        "--strengths", type=float, nargs="+", default=[10.0, 100.0, 1000.0, 10000.0]
    )
    args = parser.parse_args()

    print(f"system {args.system}, n = {args.n}, t = {args.t}, count = {args.count}")
    print(f"{'strength':>10} {'q95 sup-dev':>14} {'cov rel err':>14} {'battery':>8}")
    children = np.random.SeedSequence(args.seed).spawn(len(args.strengths))
    for strength, child in zip(args.strengths, children):
        nu = args.nu if args.system == "B1" else None
        regime = FreezingRegime.from_theorem(args.system, args.n, strength, nu=nu)
        batch = sample_exact(regime.spec, args.t, args.count, int(child.generate_state(1)[0]))
        scaled = batch.points / math.sqrt(regime.m * args.t)
        sup_dev = np.max(np.abs(scaled - regime.target), axis=1)
        q95 = float(np.quantile(sup_dev, 0.95))
        stats, ok = gaussian_battery(regime.center(batch.points, args.t), args.t, regime.sigma)
        verdict = "pass" if ok else "FAIL"
        print(f"{strength:>10.0f} {q95:>14.5f} {stats['cov_frobenius_rel_err']:>14.5f} {verdict:>8}")


if __name__ == "__main__":
    main()
