"""Tests for truncated wavelet synthesis on grids."""

import numpy as np
import pytest

from stablesheet import lepage as lp
from stablesheet import synthesis as sy
from stablesheet._rng import component_seed
from stablesheet.fractional_kernel import table_for


def brute_force_series(atoms, H, alpha, trunc, axes, mode):
    """Naive triple loop over scale pairs and positions; no tiling, no blocks."""
    tables = [table_for(float(h), float(alpha), trunc.n, trunc.M) for h in H]
    ks = np.arange(-trunc.k_cap, trunc.k_cap + 1)
    out = np.zeros((axes[0].size, axes[1].size))
    blocks = {
        (j1, j2): b
        for j1, j2, b in lp.coefficient_blocks(atoms, alpha, trunc.n, trunc.M, mode)
    }
    for j1 in range(-trunc.n, trunc.n + 1):
        w1 = tables[0].psi(np.ldexp(axes[0], j1)[None, :] - ks[:, None])
        w1 = w1 - tables[0].psi(-ks.astype(float))[:, None]
        for j2 in range(-trunc.n, trunc.n + 1):
            w2 = tables[1].psi(np.ldexp(axes[1], j2)[None, :] - ks[:, None])
            w2 = w2 - tables[1].psi(-ks.astype(float))[:, None]
            scale = 2.0 ** (-(j1 * H[0] + j2 * H[1]))
            out += scale * (w1.T @ np.real(blocks[(j1, j2)]) @ w2)
    return out


class TestTruncationDomain:
    def test_position_cap(self):
        assert sy.TruncationDomain(1, 1.0).k_cap == 4
        assert sy.TruncationDomain(6, 2.0).k_cap == 256
        assert sy.TruncationDomain(2, 0.6).k_cap == 4

    def test_contains(self):
        trunc = sy.TruncationDomain(2, 1.0)
        assert trunc.contains((2, -2), (8, -8))
        assert not trunc.contains((3, 0), (0, 0))
        assert not trunc.contains((0, 0), (9, 0))

    def test_validation(self):
        with pytest.raises(ValueError):
            sy.TruncationDomain(-1, 1.0)
        with pytest.raises(ValueError):
            sy.TruncationDomain(2, 0.0)


class TestGridAxes:
    def test_inclusive_endpoints(self):
        (ax,) = sy.grid_axes(((0.2, 0.8),), (4,))
        assert ax[0] == 0.2 and ax[-1] == 0.8 and ax.size == 4

    def test_single_point_axis_sits_at_low_end(self):
        ax1, ax2 = sy.grid_axes(((0.3, 0.9), (0.1, 0.5)), (1, 3))
        assert np.array_equal(ax1, [0.3])
        assert ax2.size == 3

    def test_validation(self):
        with pytest.raises(ValueError):
            sy.grid_axes(((0.0, 1.0),), (3, 3))
        with pytest.raises(ValueError):
            sy.grid_axes(((1.0, 0.5), (0.0, 1.0)), (3, 3))


class TestSynthesizeAgainstBruteForce:
    GRID = (((0.2, 0.9), (0.1, 0.8)), (3, 3))

    def test_heavy_tail_route(self):
        trunc = sy.TruncationDomain(1, 1.0)
        H = (0.5, 0.7)
        field = sy.synthesize(H, 1.5, trunc, self.GRID, seed=42, count=60)
        atoms = lp.sample_atoms(component_seed(42, 0), 60, 2)
        brute = brute_force_series(atoms, H, 1.5, trunc, field.axes, "auto")
        scale = np.max(np.abs(brute))
        assert np.max(np.abs(field.component(0) - brute)) < 1e-12 * scale

    def test_gaussian_route(self):
        trunc = sy.TruncationDomain(1, 1.0)
        H = (0.5, 0.7)
        field = sy.synthesize(H, 2.0, trunc, self.GRID, seed=5)
        atoms = lp.sample_atoms(component_seed(5, 0), 1, 2)
        brute = brute_force_series(atoms, H, 2.0, trunc, field.axes, "auto")
        scale = np.max(np.abs(brute))
        assert np.max(np.abs(field.component(0) - brute)) < 1e-12 * scale

    def test_shared_atom_route(self):
        trunc = sy.TruncationDomain(1, 1.0)
        H = (0.5, 0.7)
        atoms = lp.sample_atoms(33, 200, 2)
        field = sy.synthesize_from_atoms(atoms, H, 2.0, trunc, self.GRID)
        brute = brute_force_series(atoms, H, 2.0, trunc, field.axes, "atoms")
        scale = np.max(np.abs(brute))
        assert np.max(np.abs(field.component(0) - brute)) < 1e-12 * scale
        assert field.meta["coefficient_law"] == "shared-atoms"


class TestDeterminism:
    GRID = (((0.1, 0.9), (0.1, 0.9)), (48, 48))

    def test_worker_count_does_not_change_bits(self):
        trunc = sy.TruncationDomain(2, 1.0)
        for alpha, count in ((1.5, 2000), (2.0, 1)):
            one = sy.synthesize((0.5, 0.7), alpha, trunc, self.GRID, 7, count=count)
            four = sy.synthesize(
                (0.5, 0.7), alpha, trunc, self.GRID, 7, count=count, workers=4
            )
            assert np.array_equal(one.values, four.values)

    def test_rerun_is_bit_identical(self):
        trunc = sy.TruncationDomain(2, 1.0)
        a = sy.synthesize((0.5, 0.7), 1.5, trunc, self.GRID, 11, count=1500)
        b = sy.synthesize((0.5, 0.7), 1.5, trunc, self.GRID, 11, count=1500)
        assert np.array_equal(a.values, b.values)

    def test_components_use_independent_streams(self):
        trunc = sy.TruncationDomain(1, 1.0)
        field = sy.synthesize(
            (0.5, 0.7), 2.0, trunc, (((0.1, 0.9), (0.1, 0.9)), (8, 8)), 3, d=2
        )
        assert field.component_count == 2
        assert field.meta["components"] == 2
        assert not np.array_equal(field.component(0), field.component(1))
        solo = sy.synthesize(
            (0.5, 0.7), 2.0, trunc, (((0.1, 0.9), (0.1, 0.9)), (8, 8)), 3, d=1
        )
        assert np.array_equal(solo.component(0), field.component(0))


class TestFieldInvariants:
    def test_zero_coordinates_vanish_exactly(self):
        trunc = sy.TruncationDomain(1, 1.0)
        grid = (((0.0, 0.8), (-0.5, 0.5)), (3, 3))
        for alpha, count in ((1.5, 300), (2.0, 1)):
            field = sy.synthesize((0.5, 0.7), alpha, trunc, grid, 9, count=count)
            assert np.all(field.component(0)[0, :] == 0.0)
            assert np.all(field.component(0)[:, 1] == 0.0)
            assert np.all(field.component(0)[1:, [0, 2]] != 0.0)

    def test_values_are_finite(self):
        trunc = sy.TruncationDomain(2, 1.0)
        field = sy.synthesize(
            (0.3, 0.9), 1.2, trunc, (((0.1, 0.9), (0.1, 0.9)), (12, 12)), 21, count=800
        )
        assert np.all(np.isfinite(field.values))

    def test_meta_records_the_run(self):
        trunc = sy.TruncationDomain(1, 1.0)
        field = sy.synthesize(
            (0.5, 0.7), 1.5, trunc, (((0.1, 0.9), (0.1, 0.9)), (4, 4)), 13, count=50
        )
        meta = field.meta
        assert meta["H"] == [0.5, 0.7]
        assert meta["alpha"] == 1.5
        assert meta["n"] == 1 and meta["M"] == 1.0
        assert meta["seed"] == 13 and meta["atoms"] == 50
        assert meta["coefficient_law"] == "lepage"
        assert meta["bounds"] == [[0.1, 0.9], [0.1, 0.9]]
        assert meta["shape"] == [4, 4]

    def test_gaussian_meta_has_no_atom_pool(self):
        trunc = sy.TruncationDomain(1, 1.0)
        field = sy.synthesize(
            (0.5, 0.7), 2.0, trunc, (((0.1, 0.9), (0.1, 0.9)), (4, 4)), 13
        )
        assert field.meta["atoms"] == 0
        assert field.meta["coefficient_law"] == "gaussian"


class TestValidation:
    GRID = (((0.1, 0.9), (0.1, 0.9)), (4, 4))

    def test_low_alpha_warns_but_runs(self):
        trunc = sy.TruncationDomain(1, 1.0)
        with pytest.warns(RuntimeWarning):
            field = sy.synthesize((0.5, 0.7), 0.8, trunc, self.GRID, 1, count=50)
        assert np.all(np.isfinite(field.values))

    def test_grid_outside_window_is_rejected(self):
        trunc = sy.TruncationDomain(1, 1.0)
        bad = (((0.1, 1.5), (0.1, 0.9)), (4, 4))
        with pytest.raises(ValueError):
            sy.synthesize((0.5, 0.7), 1.5, trunc, bad, 1, count=50)

    def test_bad_parameters_are_rejected(self):
        trunc = sy.TruncationDomain(1, 1.0)
        with pytest.raises(ValueError):
            sy.synthesize((0.5, 1.0), 1.5, trunc, self.GRID, 1, count=50)
        with pytest.raises(ValueError):
            sy.synthesize((0.5, 0.7), 2.5, trunc, self.GRID, 1, count=50)
        with pytest.raises(ValueError):
            sy.synthesize((0.5, 0.7, 0.5), 1.5, trunc, self.GRID, 1, count=50)
        with pytest.raises(ValueError):
            sy.synthesize((0.5, 0.7), 1.5, trunc, self.GRID, 1, d=0, count=50)


class TestTransferCheck:
    def test_truncation_error_falls_with_level(self):
        atoms = lp.sample_atoms(3, 20000, 2)
        rep = sy.transfer_check(
            atoms,
            (0.5, 0.7),
            1.5,
            (2, 4, 6),
            1.0,
            (((0.05, 0.95), (0.05, 0.95)), (16, 16)),
        )
        assert rep["monotone_decreasing"] is True
        assert rep["final_residual"] < 0.05
        frozen = {2: 0.1492, 4: 0.0788, 6: 0.0386}
        for n, val in frozen.items():
            assert abs(rep["residuals"][n] - val) < 1e-3
        assert rep["levels"] == [2, 4, 6]


class TestHolderCauchyReport:
    GRID = (((0.1, 0.9), (0.1, 0.9)), (16, 16))

    def test_successive_differences_shrink(self):
        rep = sy.holder_cauchy_report(
            (0.5, 0.7), 1.5, (1, 2, 3), 0.3, self.GRID,
            seeds=(11, 12, 13), M=1.0, count=2000,
        )
        assert rep["pairs"] == [(1, 2), (2, 3)]
        assert rep["decreased_on_average"] is True
        assert abs(rep["seminorm_means"][0] - 13.34144) < 1e-3
        assert abs(rep["seminorm_means"][1] - 10.45561) < 1e-3

    def test_report_is_deterministic(self):
        kwargs = dict(seeds=(4, 5), M=1.0, count=500)
        a = sy.holder_cauchy_report((0.5, 0.7), 1.5, (1, 2), 0.2, self.GRID, **kwargs)
        b = sy.holder_cauchy_report((0.5, 0.7), 1.5, (1, 2), 0.2, self.GRID, **kwargs)
        assert a["seminorm_means"] == b["seminorm_means"]
        assert a["sup_per_seed"] == b["sup_per_seed"]

    def test_gamma_must_sit_below_min_hurst(self):
        with pytest.raises(ValueError):
            sy.holder_cauchy_report(
                (0.5, 0.7), 1.5, (1, 2), 0.5, self.GRID, seeds=(1,), count=100
            )
        with pytest.raises(ValueError):
            sy.holder_cauchy_report(
                (0.5, 0.7), 1.5, (1, 2), -0.1, self.GRID, seeds=(1,), count=100
            )

    def test_needs_two_levels(self):
        with pytest.raises(ValueError):
            sy.holder_cauchy_report(
                (0.5, 0.7), 1.5, (3,), 0.3, self.GRID, seeds=(1,), count=100
            )


class TestTruncatedPointVariance:
    def test_deficit_shrinks_with_level(self):
        frozen = {2: 0.4229, 4: 0.7636, 6: 0.9049}
        last = 0.0
        for n, expect in frozen.items():
            rep = sy.truncated_point_variance(
                (0.5, 0.7), sy.TruncationDomain(n, 2.0), (1.0, 1.0)
            )
            assert abs(rep["ratio"] - expect) < 5e-4
            assert rep["variance"] < rep["target"]
            assert rep["ratio"] > last
            last = rep["ratio"]

    def test_length_mismatch_is_rejected(self):
        with pytest.raises(ValueError):
            sy.truncated_point_variance(
                (0.5, 0.7), sy.TruncationDomain(2, 1.0), (1.0,)
            )
