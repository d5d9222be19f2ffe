import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oddhecke import oddops, verify
from oddhecke.errors import IndexRangeError, ModeError
from oddhecke.oddops import (OddOpContext, cherednik_op, delta_op, dvar_op, eta_op, euler_op,
                             factorization_check, factorization_sign, laplacian_sides, odd_divided_difference,
                             p_op, r2_op, r_op, sl2_ops)
from oddhecke.scalars import ParamScalar
from oddhecke.skewring import QMODE, RingConfig, SkewPoly, iter_monomials, shift_tau, transposition_s
from strategies import polys

R2, R3, R4 = RingConfig(2), RingConfig(3), RingConfig(4)
C2, C3 = OddOpContext(R2), OddOpContext(R3)
t, u = ParamScalar.gen("t"), ParamScalar.gen("u")


def mono(ring, *e):
    return SkewPoly.monomial(ring, tuple(e))


def sweep(ring, max_deg, residual):
    """First monomial with a nonzero residual, or None."""
    for e in iter_monomials(ring.n, max_deg):
        res = residual(SkewPoly.monomial(ring, e))
        if not res.is_zero():
            return e, str(res)
    return None


def suite_passes(name, n, max_deg):
    reports = verify.run_suite(name, n=n, max_deg=max_deg)
    return [(r.name, r.counterexample) for r in reports if not r.passed]


class TestDividedDifference:
    def test_generators(self):
        assert odd_divided_difference(1, 2, R3.x(1)) == R3.one()
        assert odd_divided_difference(1, 2, R3.x(2)) == R3.one()
        assert odd_divided_difference(1, 2, R3.x(3)).is_zero()

    def test_square(self):
        assert odd_divided_difference(1, 2, R2.x(1, 2)) == R2.x(1) - R2.x(2)

    def test_lowers_degree(self):
        for e in iter_monomials(3, 4):
            img = odd_divided_difference(1, 3, SkewPoly.monomial(R3, e))
            assert img.degrees() <= {sum(e) - 1}
            assert img.is_polynomial()

    def test_errors(self):
        with pytest.raises(IndexRangeError):
            odd_divided_difference(1, 1, R2.x(1))
        with pytest.raises(ModeError):
            odd_divided_difference(1, 2, RingConfig(2, QMODE).x(1))

    @settings(max_examples=300)
    @given(data=st.data())
    def test_leibniz(self, data):
        da, db = data.draw(st.integers(0, 3)), data.draw(st.integers(0, 3))
        f = data.draw(polys(R3, homogeneous=da))
        g = data.draw(polys(R3, homogeneous=db))
        i, k = data.draw(st.sampled_from([(1, 2), (2, 3), (1, 3), (3, 1)]))
        d = lambda h: odd_divided_difference(i, k, h)
        sign = -1 if da % 2 else 1
        assert d(f * g) == d(f) * g + (transposition_s(i, k, f) * d(g)).scale(sign)


class TestR:
    def test_generators(self):
        assert r_op(1, 2, R3.x(1)) == R3.one()
        assert r_op(1, 2, R3.x(2)) == R3.one()
        assert r_op(1, 2, R3.x(3)).is_zero()

    def test_composite_matches_explicit(self):
        f = mono(R2, 1, 1)
        assert r_op(1, 2, f) == r_op(1, 2, f, method="explicit")
        assert r_op(1, 2, f) == odd_divided_difference(1, 2, -f)
        for e in iter_monomials(3, 5):
            g = SkewPoly.monomial(R3, e)
            for i, k in ((1, 2), (2, 1), (1, 3), (3, 2)):
                assert r_op(i, k, g) == r_op(i, k, g, method="explicit")

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            r_op(1, 2, R2.x(1), method="other")

    def test_r_relations(self):
        assert suite_passes("r_relations", 4, 6) == []


class TestDeltaAndP:
    def test_delta(self):
        assert delta_op(1, R2.x(1)) == R2.one()
        assert delta_op(1, R2.x(1, 2)).is_zero()
        assert delta_op(2, mono(R2, 1, 1)) == -R2.x(1)

    def test_delta_preserves_polynomials(self):
        for e in iter_monomials(3, 5):
            assert delta_op(2, SkewPoly.monomial(R3, e)).is_polynomial()

    def test_delta_on_laurent(self):
        assert delta_op(1, R2.x(1, -1)) == R2.x(1, -2)

    def test_p(self):
        assert p_op(1, mono(R2, 1, 1)) == R2.x(2)
        assert p_op(2, mono(R2, 1, 1)) == -R2.x(1)
        assert p_op(1, R2.x(2, 3)).is_zero()

    @given(data=st.data())
    def test_p_leibniz(self, data):
        da = data.draw(st.integers(0, 3))
        f = data.draw(polys(R3, homogeneous=da))
        g = data.draw(polys(R3, 3))
        i = data.draw(st.integers(1, 3))
        sign = -1 if da % 2 else 1
        assert p_op(i, f * g) == p_op(i, f) * g + (shift_tau(i, f) * p_op(i, g)).scale(sign)


class TestDunkl:
    def test_eta_values(self):
        assert eta_op(1, R2.x(1), C2) == SkewPoly.from_scalar(R2, t + u)
        assert eta_op(1, R2.one(), C2).is_zero()
        assert eta_op(1, R2.x(2), C2) == SkewPoly.from_scalar(R2, u)

    def test_eta_forms_agree(self):
        for e in iter_monomials(3, 5):
            f = SkewPoly.monomial(R3, e)
            for i in (1, 2, 3):
                assert eta_op(i, f, C3) == eta_op(i, f, C3, form="explicit")

    def test_eta_anticommute(self):
        for i, j in ((1, 2), (1, 3), (2, 3)):
            res = sweep(R3, 5, lambda f: eta_op(i, eta_op(j, f, C3), C3) + eta_op(j, eta_op(i, f, C3), C3))
            assert res is None, (i, j, res)

    def test_dvar_values(self):
        assert dvar_op(1, R2.x(1), C2) == SkewPoly.from_scalar(R2, t + u)
        assert dvar_op(1, R2.one(), C2).is_zero()
        expected = R2.x(1).scale(t * 2) + r_op(1, 2, R2.x(1, 2)).scale(u)
        assert dvar_op(1, R2.x(1, 2), C2) == expected

    def test_x_dvar_anticommutator(self):
        x = R3.x
        for i in (1, 2, 3):
            def residual(f, i=i):
                lhs = x(i) * dvar_op(i, f, C3) + dvar_op(i, x(i) * f, C3)
                swaps = R3.zero()
                for k in (1, 2, 3):
                    if k != i:
                        swaps = swaps + transposition_s(i, k, f)
                return lhs - (x(i) * p_op(i, f)).scale(t * 2) - f.scale(t) - swaps.scale(u)
            assert sweep(R3, 5, residual) is None

    def test_r2_dvar_commutator(self):
        for i in (1, 2, 3):
            res = sweep(R3, 5, lambda f: r2_op(dvar_op(i, f, C3), C3) - dvar_op(i, r2_op(f, C3), C3)
                        + R3.x(i) * f)
            assert res is None


class TestSl2:
    def test_r2_on_one(self):
        half_t_inv = ParamScalar({(0, -1, 0, 0): 1}) * ParamScalar.const("1/2")
        assert sl2_ops("r2", R2.one(), C2) == (R2.x(1, 2) + R2.x(2, 2)).scale(half_t_inv)

    def test_euler_on_one(self):
        # one term per unordered pair
        assert sl2_ops("euler", R2.one(), C2) == SkewPoly.from_scalar(R2, 1 + u * t.inverse())

    def test_euler_ordered_pairs_variant(self):
        assert euler_op(R2.one(), C2, "ordered") == SkewPoly.from_scalar(R2, 1 + u * t.inverse() * 2)

    def test_euler_without_u(self):
        ctx = OddOpContext(R3, u=ParamScalar.const(0))
        for e in iter_monomials(3, 4):
            f = SkewPoly.monomial(R3, e)
            assert euler_op(f, ctx) == f.scale(ParamScalar.const(sum(e)) + ParamScalar.const("3/2"))

    def test_unknown_which(self):
        with pytest.raises(ValueError):
            sl2_ops("casimir", R2.one(), C2)

    @pytest.mark.parametrize("n", [2, 3])
    def test_sl2_relations(self, n):
        assert suite_passes("sl2", n, 5) == []

    def test_ordered_pairs_break_r2_laplacian(self):
        ctx = C3
        E = lambda f: euler_op(f, ctx, "ordered")
        residual = (r2_op(oddops.laplacian_op(R3.one(), ctx), ctx)
                    - oddops.laplacian_op(r2_op(R3.one(), ctx), ctx) - E(R3.one()))
        assert residual == SkewPoly.from_scalar(R3, u * t.inverse() * -3)


class TestLaplacian:
    def test_sides_examples(self):
        assert laplacian_sides(R2.one(), C2) == (R2.zero(), R2.zero())
        lhs, rhs = laplacian_sides(R2.x(1, 2), C2)
        assert lhs == rhs

    def test_building_blocks(self):
        for name in ("sum_i (sum_{k != i} r_{i,k})^2 = 0", "sum_i (A_i B_i + B_i A_i) = 0"):
            rep = [r for r in verify.run_suite("laplacian", n=3, max_deg=6) if r.name == name][0]
            assert rep.passed, rep.counterexample

    def test_cleared_commutator_identity(self):
        reports = verify.run_suite("laplacian", n=3, max_deg=6)
        assert reports[2].name.startswith("(x_i^2 - x_k^2)")
        assert reports[2].passed

    def test_u_terms_cancel(self):
        assert verify.run_suite("laplacian", n=3, max_deg=6)[3].passed

    def test_delta_square_vanishes(self):
        # (1 - tau_i) x_i^-1 = x_i^-1 (1 + tau_i), hence delta_i^2 = 0
        for i in (1, 2, 3):
            assert sweep(R3, 6, lambda f: delta_op(i, delta_op(i, f))) is None

    def test_dunkl_laplacian_is_zero(self):
        assert sweep(R3, 6, lambda f: oddops.dunkl_laplacian(f, C3)) is None

    def test_counterexample_to_claimed_right_side(self):
        lhs, rhs = laplacian_sides(R2.x(1), C2)
        assert lhs.is_zero()
        assert rhs == R2.x(1, -1).scale(t * t * 2)

    def test_delta_square_matches_claimed_form(self):
        # claimed: A_i^2 = x_i^-2 (1 - tau_i); left side vanishes identically
        for i in (1, 2, 3):
            res = sweep(R3, 6, lambda f: delta_op(i, delta_op(i, f))
                        - R3.x(i, -2) * (f - shift_tau(i, f)))
            assert res is None, res

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_laplacian_identity(self, n):
        ring = RingConfig(n)
        ctx = OddOpContext(ring)
        res = sweep(ring, 6, lambda f: (lambda a, b: a - b)(*laplacian_sides(f, ctx)))
        assert res is None, res


class TestCherednik:
    def test_values(self):
        assert cherednik_op(1, R2.one(), C2) == -R2.one()
        assert cherednik_op(2, R2.one(), C2).is_zero()

    def test_relations(self):
        assert suite_passes("cherednik", 3, 4) == []

    def test_free_coupling_breaks_commutation(self):
        ctx = verify.EvalContext.make(3, coupling="free")
        rel = verify.cherednik_relations(3)[0]
        assert not verify.check_relation(rel, ctx, 2).passed
        for rel in verify.cherednik_relations(3)[1:]:
            assert verify.check_relation(rel, ctx, 3).passed

    def test_unknown_coupling(self):
        with pytest.raises(ValueError):
            cherednik_op(1, R2.one(), C2, coupling="other")


class TestFactorization:
    @pytest.mark.parametrize("n", [1, 3, 5, 7, 9])
    def test_passes(self, n):
        rep = factorization_check(n)
        assert rep.passed, rep.residual

    def test_signs(self):
        assert [factorization_sign(k) for k in range(8)] == [1, -1, -1, 1, 1, -1, -1, 1]

    def test_even_rejected(self):
        with pytest.raises(ValueError):
            factorization_check(4)


@pytest.mark.parametrize("n", [2, 3])
def test_nilhecke_relations(n):
    assert suite_passes("odd_nilhecke", n, 6) == []


@pytest.mark.parametrize("n", [3, 4])
def test_classical_yang_baxter(n):
    assert suite_passes("cybe", n, 5) == []
    rep = verify.check_relation(verify.double_sum_relation(n), verify.EvalContext.make(n), 5)
    assert rep.passed


def test_odd_context_requires_odd_ring():
    with pytest.raises(ModeError):
        OddOpContext(RingConfig(2, QMODE))
