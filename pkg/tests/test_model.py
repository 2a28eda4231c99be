import numpy as np
import pytest

from lpfollow.model import (
    Iterate,
    StandardFormLP,
    mu_rule,
    residuals,
    sigma_rule,
)


def tiny_lp():
    return StandardFormLP([[1.0, 1.0]], [1.0], [1.0, 0.0], name="tiny")


class TestStandardFormLP:
    def test_valid_construction(self):
        lp = tiny_lp()
        assert lp.m == 1 and lp.n == 2
        assert lp.objective([2.0, 5.0]) == 2.0

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError):
            StandardFormLP([[1.0, 1.0]], [1.0, 2.0], [1.0, 0.0])
        with pytest.raises(ValueError):
            StandardFormLP([[1.0, 1.0]], [1.0], [1.0])

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError):
            StandardFormLP([[np.inf, 1.0]], [1.0], [1.0, 0.0])
        with pytest.raises(ValueError):
            StandardFormLP([[1.0, 1.0]], [np.nan], [1.0, 0.0])

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            StandardFormLP(np.zeros((0, 2)), np.zeros(0), np.zeros(2))


class TestResiduals:
    def test_spec_worked_example(self):
        lp = tiny_lp()
        z = Iterate(x=[0.5, 0.5], y=[0.0], s=[1.0, 1e-8])
        res = residuals(lp, z, sigma_mu=0.0)
        assert np.allclose(res.rp, [0.0], atol=1e-15)
        assert np.allclose(res.rd, [0.0, 1e-8], atol=1e-15)
        assert np.allclose(res.rc, [0.5, 0.5e-8], atol=1e-15)
        assert res.duality_gap == pytest.approx(0.5 + 0.5e-8)
        assert res.kkt_error_inf == pytest.approx(0.5)

    def test_kkt_point_has_zero_residuals(self):
        lp = tiny_lp()
        # x = (0, 1), y = 0, s = (1, 0) solves the optimality system exactly
        z = Iterate(x=[0.0, 1.0], y=[0.0], s=[1.0, 0.0])
        res = residuals(lp, z, sigma_mu=0.0)
        assert res.kkt_error_inf == 0.0
        assert res.duality_gap == 0.0

    def test_shifted_complementarity_block(self):
        lp = tiny_lp()
        z = Iterate(x=[1.0, 1.0], y=[0.0], s=[1.0, 1.0])
        res = residuals(lp, z, sigma_mu=0.25)
        assert np.allclose(res.rc, [0.75, 0.75])
        # kkt error stays unshifted
        assert res.kkt_error_inf == pytest.approx(1.0)

    @pytest.mark.parametrize("seed", range(10))
    def test_matches_extended_precision_recomputation(self, seed):
        rng = np.random.default_rng(seed)
        m, n = 4, 7
        lp = StandardFormLP(
            rng.standard_normal((m, n)),
            rng.standard_normal(m),
            rng.standard_normal(n),
        )
        z = Iterate(
            x=rng.uniform(0.1, 2.0, n),
            y=rng.standard_normal(m),
            s=rng.uniform(0.1, 2.0, n),
        )
        res = residuals(lp, z, sigma_mu=0.0)
        a_l = lp.a.astype(np.longdouble)
        rp_l = a_l @ z.x.astype(np.longdouble) - lp.b.astype(np.longdouble)
        rd_l = (
            a_l.T @ z.y.astype(np.longdouble)
            + z.s.astype(np.longdouble)
            - lp.c.astype(np.longdouble)
        )
        assert np.abs(res.rp - rp_l.astype(float)).max() < 1e-12
        assert np.abs(res.rd - rd_l.astype(float)).max() < 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            residuals(tiny_lp(), Iterate(x=[1.0], y=[0.0], s=[1.0]))


class TestMuRule:
    def test_feasible_point_reduces_to_classical_rule(self):
        lp = tiny_lp()
        z = Iterate(x=[0.5, 0.5], y=[-1.0], s=[2.0, 1.0])  # s = c - a^T y exactly
        assert mu_rule(lp, z) == pytest.approx((z.x @ z.s) / lp.n, rel=1e-15)

    def test_all_ones_gives_one(self):
        rng = np.random.default_rng(0)
        a = rng.standard_normal((3, 6))
        x = np.ones(6)
        s = np.ones(6)
        y = rng.standard_normal(3)
        lp = StandardFormLP(a, a @ x, a.T @ y + s)
        assert mu_rule(lp, Iterate(x=x, y=y, s=s)) == pytest.approx(1.0, rel=1e-14)

    @pytest.mark.parametrize("seed", range(8))
    def test_infeasible_point_matches_direct_sum(self, seed):
        rng = np.random.default_rng(50 + seed)
        m, n = 3, 5
        lp = StandardFormLP(
            rng.standard_normal((m, n)),
            rng.standard_normal(m),
            rng.standard_normal(n),
        )
        z = Iterate(
            x=rng.uniform(0.1, 3.0, n),
            y=rng.standard_normal(m),
            s=rng.uniform(0.1, 3.0, n),
        )
        expected = (
            np.abs(lp.a @ z.x - lp.b).sum()
            + np.abs(lp.a.T @ z.y + z.s - lp.c).sum()
            + z.x @ z.s
        ) / n
        assert mu_rule(lp, z) == pytest.approx(expected, rel=1e-14)


class TestSigmaRule:
    def test_large_mu_capped(self):
        assert sigma_rule(0.3) == 0.05

    def test_small_mu_passthrough(self):
        assert sigma_rule(0.01) == 0.01

    def test_boundary(self):
        assert sigma_rule(0.05) == 0.05

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            sigma_rule(-1e-9)
