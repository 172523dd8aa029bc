"""Transfer matrices: textbook oracle, pass bands, unitarity, localization."""

import numpy as np
import pytest

import modkinetic as mk
from modkinetic.errors import BandEdgeError, NoIncidentChannelError
from modkinetic.scattering import _segment

GRAD = mk.Variant.GRADIENT
GAUGE = mk.Variant.GAUGE
INF = np.inf


def textbook_barrier_T(E, m, V0, w):
    """Standard Schroedinger rectangular barrier transmission."""
    if E < V0:
        kap = np.sqrt(2 * m * (V0 - E))
        return 1.0 / (1.0 + V0 ** 2 * np.sinh(kap * w) ** 2 / (4 * E * (V0 - E)))
    if E == V0:
        return 1.0 / (1.0 + m * V0 * w ** 2 / 2.0)
    q = np.sqrt(2 * m * (E - V0))
    return 1.0 / (1.0 + V0 ** 2 * np.sin(q * w) ** 2 / (4 * E * (E - V0)))


def step(v_left, v_right, at=0.0):
    return mk.Potential.piecewise([(-INF, at, v_left), (at, INF, v_right)])


class TestLocalWavenumber:
    def test_standard_reduction(self):
        p = mk.ModelParams(m=2.0, a=0.0, variant=GRAD)
        assert mk.local_wavenumber(1.0, 0.0, p) == pytest.approx(2.0)
        k = mk.local_wavenumber(0.5, 1.0, p)
        assert k == pytest.approx(1j * np.sqrt(2.0))

    def test_gauge_band_edge_divergence(self):
        p = mk.ModelParams(m=1.0, a=0.5, variant=GAUGE)
        ks = [
            mk.local_wavenumber(1.0 - delta, 0.0, p).real
            for delta in (1e-2, 1e-4, 1e-6)
        ]
        assert ks[0] < ks[1] < ks[2]
        assert ks[2] > 1e3

    def test_gauge_band_edge_window_raises(self):
        p = mk.ModelParams(m=1.0, a=0.5, variant=GAUGE)
        with pytest.raises(BandEdgeError):
            mk.local_wavenumber(1.0 + 1e-12, 0.0, p)

    def test_gradient_negative_mass_oscillates_in_forbidden_region(self):
        p = mk.ModelParams(m=1.0, a=0.1, variant=GRAD)
        k = mk.local_wavenumber(6.0, 8.0, p)
        assert k.imag == 0.0
        assert k.real == pytest.approx(np.sqrt(20.0), rel=1e-14)

    def test_gauge_above_band_is_evanescent(self):
        p = mk.ModelParams(m=1.0, a=0.5, variant=GAUGE)
        k = mk.local_wavenumber(1.4, 0.0, p)  # above V + 1/(2ma) = 1
        assert k.real == 0.0 and k.imag > 0.0


class TestTransferStep:
    def test_identity_for_identical_segments(self):
        p = mk.ModelParams(m=1.0, a=0.3, variant=GAUGE)
        left = _segment(-INF, 0.0, 0.2, 0.7, p)
        right = _segment(0.0, INF, 0.2, 0.7, p)
        M = mk.transfer_step(0.7, left, right)
        assert np.allclose(M, np.eye(2))

    def test_standard_step_amplitudes(self):
        m, E, V0 = 1.0, 1.2, 0.5
        p = mk.ModelParams(m=m, a=0.0, variant=GRAD)
        res = mk.scatter(E, step(0.0, V0), p)
        k = np.sqrt(2 * m * E)
        q = np.sqrt(2 * m * (E - V0))
        assert res.r == pytest.approx((k - q) / (k + q), rel=1e-12)
        assert res.t == pytest.approx(2 * k / (k + q), rel=1e-12)

    def test_determinant_is_flux_ratio(self):
        p = mk.ModelParams(m=1.0, a=0.2, variant=GAUGE)
        left = _segment(-INF, 0.0, 0.0, 0.8, p)
        right = _segment(0.0, INF, 0.4, 0.8, p)
        M = mk.transfer_step(0.8, left, right)
        expect = (left.mu * left.kappa) / (right.mu * right.kappa)
        assert np.linalg.det(M) == pytest.approx(expect, rel=1e-12)

    def test_flux_conservation_random_propagating_steps(self):
        rng = np.random.default_rng(41)
        for _ in range(200):
            variant = GAUGE if rng.random() < 0.5 else GRAD
            m = rng.uniform(0.5, 2.0)
            a = rng.uniform(0.0, 0.5)
            p = mk.ModelParams(m=m, a=a, variant=variant)
            v_r = rng.uniform(-0.3, 0.3)
            width = 1.0 / (2 * m * a) if (a > 0 and variant is GAUGE) else 3.0
            E = max(0.0, v_r) + rng.uniform(0.05, 0.95) * (
                width - max(0.0, v_r) if variant is GAUGE and a > 0 else 1.0
            )
            if E <= 0 or E <= v_r:
                continue
            try:
                res = mk.scatter(E, step(0.0, v_r), p)
            except (NoIncidentChannelError, BandEdgeError):
                continue
            if res.T > 0:
                assert abs(res.R + res.T - 1.0) < 1e-10


class TestScatter:
    def test_textbook_barrier_oracle(self):
        m, V0, w = 1.0, 2.0, 1.3
        p = mk.ModelParams(m=m, a=0.0, variant=GRAD)
        pot = mk.Potential.piecewise([(-INF, 0.0, 0.0), (0.0, w, V0), (w, INF, 0.0)])
        for E in (0.3, 0.9, 1.7, 2.5, 3.8, 6.0):
            res = mk.scatter(E, pot, p)
            assert res.T == pytest.approx(textbook_barrier_T(E, m, V0, w), abs=1e-10)
            assert abs(res.R + res.T - 1.0) < 1e-12

    def test_gauge_disjoint_bands_totally_reflect(self):
        p = mk.ModelParams(m=1.0, a=0.5, variant=GAUGE)
        pot = step(0.0, 1.5)  # offset 1.5 > band width 1
        for E in np.linspace(0.02, 0.98, 20):
            res = mk.scatter(E, pot, p)
            assert res.T == 0.0 and res.R == 1.0
            assert abs(abs(res.r) - 1.0) < 1e-12
        for E in np.linspace(1.52, 2.48, 20):
            res = mk.scatter(E, pot, p, incidence="right")
            assert res.T == 0.0 and res.R == 1.0

    def test_gauge_overlapping_bands_transmit(self):
        p = mk.ModelParams(m=1.0, a=0.5, variant=GAUGE)
        pot = step(0.0, 0.5)
        best = max(mk.scatter(E, pot, p).T for E in np.linspace(0.55, 0.95, 17))
        assert best > 0.5

    def test_localization_across_misaligned_segment(self):
        # interior band misaligned by more than the band width: the far world
        # is reachable only through an evanescent tail ~ exp(-2 kappa w)
        p = mk.ModelParams(m=1.0, a=0.5, variant=GAUGE)
        pot = mk.Potential.piecewise(
            [(-INF, 0.0, 0.0), (0.0, 10.0, 1.5), (10.0, INF, 0.0)]
        )
        res = mk.scatter(0.5, pot, p)
        assert res.T < 1e-8
        assert abs(res.R + res.T - 1.0) < 1e-10

    def test_reciprocity(self):
        p = mk.ModelParams(m=1.0, a=0.3, variant=GAUGE)
        pot = mk.Potential.piecewise(
            [(-INF, 0.0, 0.0), (0.0, 1.0, 0.4), (1.0, 2.5, -0.1), (2.5, INF, 0.0)]
        )
        for E in (0.2, 0.5, 0.9, 1.3):
            left = mk.scatter(E, pot, p)
            right = mk.scatter(E, pot, p, incidence="right")
            assert left.T == pytest.approx(right.T, rel=1e-10)

    def test_small_coupling_continuity(self):
        # T(a) approaches the standard result linearly as a -> 0
        m, V0, w, E = 1.0, 1.0, 1.0, 1.4
        pot = mk.Potential.piecewise([(-INF, 0.0, 0.0), (0.0, w, V0), (w, INF, 0.0)])
        t_std = mk.scatter(E, pot, mk.ModelParams(m=m, a=0.0, variant=GRAD)).T
        gaps = []
        for a in (0.04, 0.02, 0.01):
            t_a = mk.scatter(E, pot, mk.ModelParams(m=m, a=a, variant=GRAD)).T
            gaps.append(abs(t_a - t_std))
        assert gaps[0] / gaps[1] == pytest.approx(2.0, rel=0.2)
        assert gaps[1] / gaps[2] == pytest.approx(2.0, rel=0.2)

    def test_no_incident_channel(self):
        p = mk.ModelParams(m=1.0, a=0.5, variant=GAUGE)
        with pytest.raises(NoIncidentChannelError):
            mk.scatter(1.2, step(0.0, 1.5), p)  # outside the left band [0, 1)

    def test_packet_transmission_matches_matrix(self):
        # narrow-band wavepacket through a barrier vs T at the carrier energy
        p = mk.ModelParams(m=1.0, a=0.1, variant=GRAD)
        w, V0, k0 = 1.0, 0.3, 1.0
        pot = mk.Potential.piecewise(
            [(-INF, -w / 2, 0.0), (-w / 2, w / 2, V0), (w / 2, INF, 0.0)]
        )
        E0 = mk.dispersion(k0, p)[0]
        t_matrix = mk.scatter(E0, pot, p).T
        g = mk.Grid1D(-220.0, 220.0, 6601)
        psi0 = mk.normalize(mk.gaussian_packet(g, -60.0, 16.0, k0=k0), p)
        traj = mk.evolve(psi0, pot, p, dt=0.05, steps=3200, store_every=3200)
        rho = mk.presence_density(traj.frames[-1], p)
        t_packet = float(np.sum(rho[g.points > w / 2 + 5.0]) / np.sum(rho))
        assert t_packet == pytest.approx(t_matrix, abs=0.02)
