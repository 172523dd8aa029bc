"""Above the limiting energy the effective mass turns negative.

For the gradient-coupled model, 1/(2 m_eff) = 1/(2m) - aE changes sign at
E = 1/(2am).  Above that energy a classically forbidden region (V > E) no
longer damps the wave: it oscillates, faster the more forbidden it is.
"""

import numpy as np

import modkinetic as mk
from modkinetic.errors import SingularMassError


def main():
    params = mk.ModelParams(m=1.0, a=0.1, variant=mk.Variant.GRADIENT)
    bound = mk.spectral_bound(params)
    print(f"limiting energy: {bound}")
    print("\neffective mass across the band edge:")
    for E in (0.0, 2.0, 4.0, 4.9, 5.1, 6.0, 10.0):
        try:
            print(f"  E = {E:5.2f}: m_eff = {mk.effective_mass(E, params):9.3f}")
        except SingularMassError:
            print(f"  E = {E:5.2f}: m_eff singular (band edge)")

    print("\nlocal wavenumber in a region with V = 8 (forbidden for E < 8):")
    for E in (2.0, 4.0, 6.0, 7.0):
        k = mk.local_wavenumber(E, 8.0, params)
        kind = "oscillating" if k.imag == 0 else "decaying"
        print(f"  E = {E}: k = {k:.4f}  ({kind})")
    print("  note: E = 6 > 5 = limiting energy, so V > E oscillates with")
    print("        k = sqrt(2 |m_eff| (V - E)) =", np.sqrt(2 * 5 * 2))

    # above the limiting energy the roles of allowed and forbidden invert:
    # regions with V > E propagate, regions with V < E damp the wave
    INF = np.inf
    E = 6.0  # above the limiting energy 5
    print(f"\ninverted world at E = {E} (above the limiting energy), V_out = 7:")
    for v_mid, label in ((10.0, "V = 10 > E: oscillating"), (5.5, "V = 5.5 < E: damped")):
        pot = mk.Potential.piecewise(
            [(-INF, 0.0, 7.0), (0.0, 2.0, v_mid), (2.0, INF, 7.0)]
        )
        res = mk.scatter(E, pot, params)
        print(f"  middle segment {label:28s} T = {res.T:.6f}")
    print("a negative-mass particle accelerates into rising potential: the")
    print("barrier transmits freely while the dip acts as the tunneling region.")


if __name__ == "__main__":
    main()
