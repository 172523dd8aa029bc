"""Separate worlds: a potential step can block every energy.

The gauge-coupled model only propagates inside the pass band
[V, V + 1/(2ma)).  A step taller than the band width leaves the two sides
with no common energy: transmission is identically zero, at every energy,
for packets of any shape.  A smaller step restores ordinary partial
transmission inside the overlap.
"""

import numpy as np

import modkinetic as mk
from modkinetic.errors import NoIncidentChannelError

INF = np.inf


def sweep(pot, params, energies, incidence="left"):
    out = []
    for E in energies:
        try:
            out.append(mk.scatter(E, pot, params, incidence=incidence).T)
        except NoIncidentChannelError:  # outside the incident band
            out.append(np.nan)
    return np.array(out)


def main():
    params = mk.ModelParams(m=1.0, a=0.5, variant=mk.Variant.GAUGE)
    lo, hi = mk.pass_band(0.0, params)
    print(f"band width 1/(2ma) = {hi - lo}")

    blocked = mk.Potential.piecewise([(-INF, 0.0, 0.0), (0.0, INF, 1.5)])
    open_step = mk.Potential.piecewise([(-INF, 0.0, 0.0), (0.0, INF, 0.5)])

    energies = np.linspace(0.05, 0.95, 10)
    t_blocked = sweep(blocked, params, energies)
    t_open = sweep(open_step, params, energies)
    print("\nE        T (step 1.5, disjoint)   T (step 0.5, overlapping)")
    for E, tb, to in zip(energies, t_blocked, t_open):
        print(f"{E:5.2f}    {tb:22.3e}   {to:25.3f}")

    print("\nincident from the right inside the upper band (step 1.5):")
    for E in (1.6, 2.0, 2.4):
        res = mk.scatter(E, blocked, params, incidence="right")
        print(f"  E = {E}: R = {res.R}, T = {res.T}")

    # a misaligned interior segment isolates the two outer worlds
    barrier = mk.Potential.piecewise(
        [(-INF, 0.0, 0.0), (0.0, 10.0, 1.5), (10.0, INF, 0.0)]
    )
    res = mk.scatter(0.5, barrier, params)
    print(f"\n10-wide misaligned segment at mid-band: T = {res.T:.3e} (localization)")


if __name__ == "__main__":
    main()
