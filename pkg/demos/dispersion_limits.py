"""Signal speed has a ceiling: phase and group velocities peak at finite k.

With the corrected kinetic term, omega (1 + a k^2) = k^2/2m: both
velocities rise, top out (at k = 1/sqrt(a) and 1/sqrt(3a)), and then fall
back to zero.  A wave packet built around a carrier k0 travels at the group
velocity of the modified relation, which the propagator confirms directly.
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
    params = mk.ModelParams(m=1.0, a=1.0, variant=mk.Variant.GRADIENT)
    k_p, v_p = mk.limiting_phase_velocity(params)
    k_g, v_g = mk.limiting_group_velocity(params)
    print(f"phase velocity peaks at k = {k_p:.6f} with value {v_p:.6f}")
    print(f"group velocity peaks at k = {k_g:.6f} with value {v_g:.6f}")

    ks = np.linspace(0.0, 6.0, 301)
    omega, vph, vgr = mk.dispersion(ks, params)
    print(f"as k -> infinity both velocities decay: v_g(6) = {vgr[-1]:.4f}")

    print("\nmomentum carried by a plane wave is k (1 + a k^2):")
    for k in (0.5, 1.0, 2.0):
        print(f"  k = {k}: p = {mk.plane_wave_momentum(k, params):.4f}")

    # packet test at gentler coupling so the packet stays narrow-band
    packet_params = mk.ModelParams(m=1.0, a=0.1, variant=mk.Variant.GRADIENT)
    grid = mk.Grid1D(-80.0, 80.0, 4001)
    k0 = 1.2
    psi0 = mk.normalize(mk.gaussian_packet(grid, -30.0, 12.0, k0=k0), packet_params)
    traj = mk.evolve(
        psi0, mk.Potential.constant(0.0), packet_params, dt=0.02, steps=2000, store_every=400
    )
    cents, times = [], []
    for frame in traj.frames:
        rho = mk.presence_density(frame, packet_params)
        cents.append(float(np.sum(grid.points * rho) / np.sum(rho)))
        times.append(frame.time)
    v_fit = np.polyfit(times, cents, 1)[0]
    v_theory = mk.dispersion(k0, packet_params)[2]
    print(f"\npacket centroid speed (a = 0.1, k0 = {k0}): {v_fit:.5f}")
    print(f"group velocity of the modified relation:    {v_theory:.5f}")

    if plt is not None:
        fig, ax = plt.subplots(figsize=(8, 4.5))
        ax.plot(ks, vph, label="phase velocity")
        ax.plot(ks, vgr, label="group velocity")
        ax.axvline(k_p, color="gray", lw=0.6)
        ax.axvline(k_g, color="gray", lw=0.6)
        ax.set_xlabel("k")
        ax.set_ylabel("velocity (m = a = 1)")
        ax.legend()
        fig.tight_layout()
        fig.savefig("dispersion_limits.png", dpi=130)
        print("wrote dispersion_limits.png")


if __name__ == "__main__":
    main()
