"""Semiclassical transport with two danger zones instead of one.

On a slowly rising potential the gauge-coupled model admits the usual WKB
construction, but the validity metric |k'/k^2| now diverges in two places:
at classical turning points (eps -> 0, as always) and at the band edge
(eps -> 1/(2ma)), where the wavelength collapses to zero.
"""

import numpy as np

import modkinetic as mk

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None


def main():
    params = mk.ModelParams(m=1.0, a=0.5, variant=mk.Variant.GAUGE)
    grid = mk.Grid1D(0.0, 8.0, 1601)
    ramp = mk.Potential.sampled(0.1 + 0.05 * grid.points)

    E = 0.9
    k = mk.wkb_wavenumber(E, ramp, grid, params)
    amp = mk.wkb_amplitude(E, ramp, grid, params)
    ref = mk.wkb_amplitude_closed_form(E, ramp, grid, params)
    validity = mk.wkb_validity(E, ramp, grid, params)
    wave = mk.wkb_wavefunction(E, ramp, grid, params, reference_point=0.0)

    print(f"E = {E}, eps runs from {E - 0.1:.2f} down to {E - 0.5:.2f} (band is (0, 1))")
    print(f"k(x) spans [{k.min():.3f}, {k.max():.3f}]")
    print(f"amplitude transport vs closed form, max rel diff: "
          f"{np.max(np.abs(amp - ref) / ref):.2e}")
    print(f"validity metric max: {validity.max():.4f}")

    # push the energy toward the band edge and watch the metric blow up there
    print("\nmax validity as the energy crowds the band edge at eps = 1:")
    for E_edge in (1.05, 1.09, 1.099):
        v = mk.wkb_validity(E_edge, ramp, grid, params)
        print(f"  E = {E_edge}: max |k'/k^2| = {np.nanmax(v[np.isfinite(v)]):.3f}")

    if plt is not None:
        fig, axes = plt.subplots(3, 1, figsize=(8, 8), sharex=True)
        axes[0].plot(grid.points, k)
        axes[0].set_ylabel("k(x)")
        axes[1].plot(grid.points, wave.values.real, lw=0.8)
        axes[1].plot(grid.points, amp, "k--", lw=1.0, label="envelope")
        axes[1].plot(grid.points, -amp, "k--", lw=1.0)
        axes[1].set_ylabel("Re psi")
        axes[1].legend()
        axes[2].plot(grid.points, validity)
        axes[2].set_ylabel("|k'/k^2|")
        axes[2].set_xlabel("x")
        fig.tight_layout()
        fig.savefig("wkb_slowly_varying.png", dpi=130)
        print("wrote wkb_slowly_varying.png")


if __name__ == "__main__":
    main()
