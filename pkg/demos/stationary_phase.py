"""Where the classical trajectory hides inside a lattice path sum.

This walkthrough builds a free particle on a small periodic box, treats
every sequence of sites as one path, and looks at how the path weights
conspire. With the stationary-phase step kernel each path carries

    weight(path) = (dtheta/pi)^(n_t/2) * exp(-i*pi*n_t/4) * exp(i*S/hbar)

where S = sum over steps of dt * L, the discretized action with Lagrangian
L = m/2 * ((x_next - x_prev)/dt)^2 - V(x). All the physics of which paths
matter sits in how fast S changes from one path to a neighboring one: near
the straight-line (classical) route the action is stationary, the phases
line up, and the contributions add; far from it the phases wind rapidly
and cancel.

The script prints three exhibits:

  1. the product-of-table-entries weight of a few paths next to the
     closed form above, to show they are the same number;
  2. paths to one chosen final site bucketed by how far they stray from
     the straight line, showing each bucket's coherence: the magnitude of
     its summed amplitude over the sum of magnitudes. Aligned phases give
     1; self-cancelling buckets drop toward 0;
  3. the running partial sum as paths are added in order of increasing
     action: the calm paths agree in phase and pile up well past the
     final answer, then the wild tail winds around and interferes the
     total back down. Truncating the sum would get the magnitude badly
     wrong even though the calm paths set the direction.

Everything here is narration. Nothing is asserted; the engine guarantees
live in the test suite.

Run:  python3 demos/stationary_phase.py [--sites 11] [--steps 4] [--final 4]
"""

import argparse
import cmath
import itertools
import math

import numpy as np

from qbnet.lattice import LatticeSpec, step_amplitudes_gaussian


def path_action(spec, sites):
    """Discretized action sum(dt * L) along one site sequence."""
    s = 0.0
    for step in range(spec.n_t):
        x_prev = sites[step] * spec.dx
        x_next = sites[step + 1] * spec.dx
        velocity = (x_next - x_prev) / spec.dt
        lagrangian = 0.5 * spec.mass * velocity**2 - spec.potential(x_next, step * spec.dt)
        s += spec.dt * lagrangian
    return s


def kernel_weight(spec, sites):
    """Product of per-step kernel entries along the sequence."""
    w = 1.0 + 0.0j
    for step in range(spec.n_t):
        alpha = step_amplitudes_gaussian(spec, step * spec.dt).matrix
        w *= alpha[sites[step + 1], sites[step]]
    return w


def closed_form(spec, sites):
    dtheta = spec.delta_theta()
    prefactor = (dtheta / math.pi) ** (spec.n_t / 2) * cmath.exp(-1j * math.pi * spec.n_t / 4)
    return prefactor * cmath.exp(1j * path_action(spec, sites) / spec.hbar)


def bar(x, scale, width=50):
    n = int(round(width * x / scale)) if scale else 0
    return "#" * min(n, width)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sites", type=int, default=11, help="box sites n_x")
    ap.add_argument("--steps", type=int, default=4, help="time steps n_t")
    ap.add_argument("--final", type=int, default=4, help="final site to study")
    ap.add_argument("--dx", type=float, default=0.8)
    ap.add_argument("--dt", type=float, default=0.1)
    args = ap.parse_args()

    spec = LatticeSpec.make(n_x=args.sites, dx=args.dx, n_t=args.steps, dt=args.dt)
    print(f"free particle, {spec.n_x} sites x {spec.n_t} steps, "
          f"dtheta = {spec.delta_theta():.4f}")
    print()

    # -- exhibit 1: the weight really is prefactor * exp(iS/hbar) ----------
    print("exhibit 1: table-entry products vs the closed form")
    rng = np.random.default_rng(4)
    straight = tuple(min(round(k * args.final / spec.n_t), spec.n_x - 1)
                     for k in range(spec.n_t + 1))
    samples = [straight]
    while len(samples) < 4:
        cand = (0,) + tuple(int(v) for v in rng.integers(0, spec.n_x, spec.n_t))
        if cand not in samples:
            samples.append(cand)
    for sites in samples:
        w = kernel_weight(spec, sites)
        cf = closed_form(spec, sites)
        print(f"  path {sites}:  product {w:.6f}   closed form {cf:.6f}   "
              f"|difference| {abs(w - cf):.2e}")
    print()

    # -- exhibit 2: bucket by deviation from the straight line --------------
    print(f"exhibit 2: paths from site 0 to site {args.final}, "
          "grouped by detour size")
    paths = []
    for middle in itertools.product(range(spec.n_x), repeat=spec.n_t - 1):
        sites = (0,) + middle + (args.final,)
        detour = max(
            abs(sites[k] - straight[k]) for k in range(spec.n_t + 1)
        )
        paths.append((detour, path_action(spec, sites), kernel_weight(spec, sites)))
    buckets = {}
    for detour, _, w in paths:
        buckets.setdefault(detour, []).append(w)
    for d in sorted(buckets):
        ws = buckets[d]
        coherence = abs(sum(ws)) / sum(abs(w) for w in ws)
        print(f"  detour <= {d}   {len(ws):4d} paths   "
              f"coherence {coherence:.3f}  {bar(coherence, 1.0)}")
    print("  (phases align along the straight route and wind against each")
    print("   other far from it; that is stationary phase in one column)")
    print()

    # -- exhibit 3: partial sums in order of increasing action --------------
    print("exhibit 3: partial sums, paths added from smallest action up")
    ordered = sorted(paths, key=lambda item: item[1])
    total = sum(w for _, _, w in ordered)
    running = 0.0 + 0.0j
    marks = {1, len(ordered) // 8, len(ordered) // 4, len(ordered) // 2, len(ordered)}
    for count, (_, action, w) in enumerate(ordered, start=1):
        running += w
        if count in marks:
            frac = abs(running) / abs(total) if total else float("nan")
            print(f"  after {count:4d} of {len(ordered)} paths  "
                  f"|partial|/|total| = {frac:.3f}  {bar(frac, 3.0)}")
    print()
    print("the calm paths fix the phase of the answer; the wild tail fixes")
    print("its size. stationary phase says who agrees, not who can be cut.")


if __name__ == "__main__":
    main()
