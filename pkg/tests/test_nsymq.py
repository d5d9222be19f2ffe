from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oddhecke import nsymq
from oddhecke.errors import ModulusError
from oddhecke.nsymq import (NSymElement, TensorElement, binary_sequences, coassociativity_sides, compositions,
                            coproduct, counit, counit_sides, elementary_e, elementary_recursion_residual,
                            gaussian_split_check, insertion_element, insertion_pairing, is_central_power,
                            matrix_crossings, pairing, pairing_coset_oracle, pairing_words, radical_equiv,
                            radical_witness, degree_six_relation, tensor_pairing)
from oddhecke.scalars import ParamScalar, q_power, scalar

H = NSymElement.h
q = ParamScalar.gen("q")


def qpoly(*coeffs):
    return ParamScalar({(d, 0, 0, 0): c for d, c in enumerate(coeffs) if c})


def comps_upto(d):
    return [c for k in range(d + 1) for c in compositions(k)]


class TestCompositions:
    def test_counts(self):
        assert [len(list(compositions(n))) for n in range(7)] == [1, 1, 2, 4, 8, 16, 32]

    def test_zero_parts_collapse(self):
        assert H(0, 2, 0) == H(2)
        assert H(0) == NSymElement.one()
        assert H(-1, 2).is_zero()

    def test_binary_sequences(self):
        for k in range(6):
            for ones in range(k + 1):
                seqs = list(binary_sequences(k, ones))
                assert len(seqs) == len(set(seqs)) == comb(k, ones)
                assert all(sum(s) == ones for s in seqs)


class TestProduct:
    def test_examples(self):
        assert H(2) * H(3) == H(2, 3)
        assert NSymElement.one() * H(1, 2) == H(1, 2)
        assert (H(1) + H(2)) * H(1) == H(1, 1) + H(2, 1)

    def test_graded(self):
        assert (H(1, 2) * H(3)).degrees() == {6}

    def test_modulus_mismatch(self):
        with pytest.raises(ModulusError):
            H(1) + H(1, modulus=3)


class TestCoproduct:
    def test_examples(self):
        one = NSymElement.one()
        pure = TensorElement.pure
        assert coproduct(H(1)) == pure(one, H(1)) + pure(H(1), one)
        assert coproduct(H(2)) == pure(one, H(2)) + pure(H(1), H(1)) + pure(H(2), one)
        assert coproduct(H(1, 1)) == pure(one, H(1, 1)) + pure(H(1), H(1)).scale(1 + q) + pure(H(1, 1), one)

    def test_twisted_multiplication(self):
        a = TensorElement.pure(NSymElement.one(), H(1))
        b = TensorElement.pure(H(2), NSymElement.one())
        assert a * b == TensorElement.pure(H(2), H(1)).scale(q ** 2)

    @pytest.mark.parametrize("comp", comps_upto(5))
    def test_algebra_map_counit_coassociative(self, comp):
        x = H(*comp)
        left, right = counit_sides(coproduct(x))
        assert left == right == x
        lhs, rhs = coassociativity_sides(x)
        assert lhs == rhs
        if len(comp) >= 2:
            head, tail = H(*comp[:1]), H(*comp[1:])
            assert coproduct(x) == coproduct(head) * coproduct(tail)

    def test_counit(self):
        assert counit(H(1)) == scalar(0)
        assert counit(NSymElement.one() + H(2)) == scalar(1)


class TestPairing:
    def test_examples(self):
        assert pairing(H(1, 2, 1), H(2, 2)) == qpoly(1, 0, 2, 1)
        for n in range(1, 6):
            assert pairing(H(n), H(n)) == scalar(1)
        assert pairing(H(1, 1), H(1, 1)) == 1 + q
        assert pairing(H(1, 2), H(3)) == scalar(1)

    def test_oracle_examples(self):
        assert pairing_coset_oracle((1, 2, 1), (2, 2)) == qpoly(1, 0, 2, 1)
        assert pairing_coset_oracle((3,), (1, 1, 1)) == scalar(1)
        assert pairing_coset_oracle((2, 1), (1, 2)) == pairing_words((2, 1), (1, 2)) == qpoly(1, 0, 1)

    def test_oracle_size_bound(self):
        with pytest.raises(ValueError):
            pairing_coset_oracle((8,), (8,))

    def test_degree_mismatch_is_zero(self):
        assert pairing(H(1, 2), H(2)) == scalar(0)
        assert pairing(H(1) + H(2), H(2)) == scalar(1)

    def test_crossings(self):
        assert matrix_crossings(((0, 1), (1, 0))) == 1
        assert matrix_crossings(((1, 1), (1, 1))) == 1
        assert matrix_crossings(((2, 0), (0, 2))) == 0

    @pytest.mark.parametrize("d", range(0, 7))
    def test_matrix_agrees_with_oracle(self, d):
        for a in compositions(d):
            for b in compositions(d):
                assert pairing_words(a, b) == pairing_coset_oracle(a, b), (a, b)

    @pytest.mark.parametrize("d", range(0, 7))
    def test_symmetric(self, d):
        for a in compositions(d):
            for b in compositions(d):
                assert pairing_words(a, b) == pairing_words(b, a)

    @pytest.mark.parametrize("d", range(0, 6))
    def test_adjointness(self, d):
        for x in compositions(d):
            cop = coproduct(H(*x))
            for d1 in range(d + 1):
                for a in compositions(d1):
                    for b in compositions(d - d1):
                        lhs = tensor_pairing(TensorElement.pure(H(*a), H(*b)), cop)
                        assert lhs == pairing(H(*a) * H(*b), H(*x))

    @given(st.sampled_from(comps_upto(5)), st.sampled_from(comps_upto(5)), st.integers(-3, 3))
    def test_bilinear(self, a, b, c):
        x = H(*a) + H(*b).scale(c)
        y = H(*b)
        assert pairing(x, y) == pairing(H(*a), y) + pairing(H(*b), y) * c

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            pairing_words((1,), (1,), method="diagram")


class TestElementary:
    def test_examples(self):
        assert elementary_e(0) == NSymElement.one()
        assert elementary_e(1) == H(1)
        assert elementary_e(2) == (H(1, 1) - H(2)).scale(q_power(-1))
        assert elementary_e(-1).is_zero()

    @pytest.mark.parametrize("k", range(1, 7))
    def test_recursion(self, k):
        assert elementary_recursion_residual(k).is_zero()

    @pytest.mark.parametrize("n", range(1, 6))
    def test_pairs_with_words(self, n):
        for lam in compositions(n):
            want = 1 if lam == (1,) * n else 0
            assert pairing(H(*lam), elementary_e(n)) == scalar(want)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_self_pairing(self, n):
        assert pairing(elementary_e(n), elementary_e(n)) == q_power(-comb(n, 2))

    @pytest.mark.parametrize("n", range(0, 6))
    def test_coproduct(self, n):
        rhs = TensorElement({})
        for k in range(n + 1):
            rhs = rhs + TensorElement.pure(elementary_e(k), elementary_e(n - k))
        assert coproduct(elementary_e(n)) == rhs


class TestSplitting:
    @pytest.mark.parametrize("n", range(0, 9))
    def test_tuple_sum_is_gaussian(self, n):
        for k in range(n + 1):
            assert gaussian_split_check(n, k)

    @pytest.mark.parametrize("n", range(1, 5))
    @pytest.mark.parametrize("m", range(1, 4))
    def test_identities(self, n, m):
        P = nsymq.split_weight_polynomial
        ones = (1,) * n
        for k in range(0, n + 2):
            fwd = (NSymElement.word(ones[k:] + (m,)).scale(P(n, k))
                   + NSymElement.word((1,) * (n - k + 1) + (m - 1,)).scale(P(n, k - 1) * q_power(n - k + 1)))
            rev = (NSymElement.word((m,) + ones[k:]).scale(P(n, k) * q_power(m * k))
                   + NSymElement.word((m - 1,) + (1,) * (n - k + 1)).scale(P(n, k - 1) * q_power((m - 1) * (k - 1))))
            for j in range(n + m + 1):
                x = H(j)
                assert insertion_pairing(ones + (m,), k, x) == pairing(fwd, x)
                assert insertion_pairing((m,) + ones, k, x) == pairing(rev, x)


class TestInsertion:
    def test_worked_example(self):
        for xc in ((5,), (4, 1)):
            x = H(*xc)
            want = pairing(H(1, 1, 3), x) + q ** 2 * pairing(H(1, 2, 2), x)
            for method in nsymq.INSERTION_METHODS:
                assert insertion_pairing((2, 3), 1, x, (1,), method) == want

    def test_zero_insertion(self):
        for n in range(1, 5):
            for xc in compositions(n):
                assert insertion_pairing((n,), 0, H(*xc)) == pairing(H(n), H(*xc))

    def test_two_rows(self):
        direct = pairing(H(2, 2), elementary_e(2) * H(2))
        assert direct == q
        for method in nsymq.INSERTION_METHODS:
            assert insertion_pairing((2, 2), 2, H(2), method=method) == direct

    @pytest.mark.parametrize("lam", [c for c in comps_upto(5) if c])
    def test_methods_agree(self, lam):
        for k in range(0, len(lam) + 1):
            base = insertion_element(lam, k)
            for method in ("direct", "closed"):
                assert insertion_element(lam, k, method=method) == base
            for m in range(len(lam) + 1):
                assert insertion_element(lam, k, method="explicit", m=m) == base
            for xc in comps_upto(3):
                if sum(xc) + k == sum(lam):
                    assert pairing(H(*lam), elementary_e(k) * H(*xc)) == pairing(base, H(*xc))

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            insertion_element((1,), 1, method="magic")


class TestRadical:
    def test_reflexive(self):
        assert radical_equiv(H(1, 2), H(1, 2), 3)

    @pytest.mark.parametrize("n,m", [(2, 1), (2, 2), (3, 1), (3, 2), (4, 2)])
    def test_centrality_at_roots_of_unity(self, n, m):
        assert is_central_power(n, m, n)

    def test_not_central_generically(self):
        assert not is_central_power(2, 2, None)
        assert not is_central_power(2, 2, 3)

    def test_degree_six_relation(self):
        assert radical_witness(degree_six_relation(3), 6) is None
        assert radical_witness(degree_six_relation(None), 6) is not None

    def test_degree_bound_enforced(self):
        with pytest.raises(ValueError):
            radical_equiv(H(3), H(1, 2), 2)
