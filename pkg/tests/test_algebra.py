import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bcmvn.algebra import (
    E1,
    E2,
    I,
    J,
    K,
    ONE,
    Bicomplex,
    Hyperbolic,
    bc_add,
    bc_inverse,
    bc_mul,
    bc_mul_cartesian,
    bc_scale,
    bc_sub,
    bicomplex_from_json,
    bicomplex_to_json,
    conj_bar,
    conj_dagger,
    conj_star,
    euclidean_norm,
    format_bicomplex,
    hyp_conj_diamond,
    hyp_in_Dplus,
    hyp_leq,
    hyp_modulus_sq,
    hyp_mul,
    hyperbolic_norm,
    idempotent_compose,
    idempotent_decompose,
    parse_bicomplex,
)
from bcmvn.errors import ParseError, ZeroDivisorError

from .strategies import bicomplex, finite, hyperbolic


def close(a, b, tol=1e-12):
    return bool(np.all(Bicomplex._coerce(a).isclose(b, tol)))


def hand_product(Z, W):
    """Expand (x1 + x2 i + x3 j + x4 k)(y1 + ...) with i^2 = j^2 = -1, k^2 = 1, ij = k."""
    x1, x2, x3, x4 = (float(c) for c in Z.components)
    y1, y2, y3, y4 = (float(c) for c in W.components)
    return Bicomplex.from_real(
        x1 * y1 - x2 * y2 - x3 * y3 + x4 * y4,
        x1 * y2 + x2 * y1 - x3 * y4 - x4 * y3,
        x1 * y3 + x3 * y1 - x2 * y4 - x4 * y2,
        x1 * y4 + x4 * y1 + x2 * y3 + x3 * y2,
    )


class TestUnits:
    def test_unit_squares(self):
        assert I * I == Bicomplex(-1.0)
        assert J * J == Bicomplex(-1.0)
        assert K * K == ONE
        assert I * J == K and J * I == K

    def test_idempotent_constants_exact(self):
        assert E1 + E2 == ONE
        assert E1 - E2 == K
        assert E1 * E2 == Bicomplex(0.0)
        assert E1 * E1 == E1
        assert E2 * E2 == E2


class TestIdempotent:
    @pytest.mark.parametrize(
        "Z, expected",
        [
            (K, (1, -1)),
            (E1, (1, 0)),
            (Bicomplex.from_real(2, 3, 4, 5), (7 - 1j, -3 + 7j)),
        ],
    )
    def test_decompose_examples(self, Z, expected):
        l1, l2 = idempotent_decompose(Z)
        assert l1 == pytest.approx(expected[0], abs=1e-15)
        assert l2 == pytest.approx(expected[1], abs=1e-15)

    @pytest.mark.parametrize(
        "pair, expected",
        [((1, 1), ONE), ((1, -1), K), ((7 - 1j, -3 + 7j), Bicomplex.from_real(2, 3, 4, 5))],
    )
    def test_compose_examples(self, pair, expected):
        assert close(idempotent_compose(*pair), expected)

    def test_decompose_matches_real_coordinate_formula(self, rng):
        x = rng.normal(size=(4, 1000))
        l1, l2 = Bicomplex.from_real(*x).idempotent
        np.testing.assert_allclose(l1, (x[0] + x[3]) + 1j * (x[1] - x[2]), atol=1e-12)
        np.testing.assert_allclose(l2, (x[0] - x[3]) + 1j * (x[1] + x[2]), atol=1e-12)

    @given(bicomplex)
    def test_round_trip(self, Z):
        assert close(idempotent_compose(*idempotent_decompose(Z)), Z)


class TestProducts:
    def test_e1_e2_annihilate(self):
        assert bc_mul(E1, E2) == Bicomplex(0.0)

    def test_one_plus_j_times_one_minus_j(self):
        assert close(bc_mul(ONE + J, ONE - J), Bicomplex(2.0))

    @given(bicomplex)
    def test_identity(self, Z):
        assert close(bc_mul(Z, ONE), Z)

    @given(bicomplex, bicomplex)
    def test_matches_hand_expansion(self, Z, W):
        assert close(bc_mul(Z, W), hand_product(Z, W), 1e-9)

    @given(bicomplex, bicomplex)
    def test_cartesian_route_agrees(self, Z, W):
        assert close(bc_mul_cartesian(Z, W), bc_mul(Z, W), 1e-9)

    @given(bicomplex, bicomplex, bicomplex)
    def test_ring_laws(self, A, B, C):
        # rounding in a product scales with the operand norms, not with each component
        def same(x, y, scale):
            return (x - y).norm() <= 1e-12 * (1 + scale)

        a, b, c = A.norm(), B.norm(), C.norm()
        assert same(bc_mul(A, B), bc_mul(B, A), a * b)
        assert same(bc_mul(bc_mul(A, B), C), bc_mul(A, bc_mul(B, C)), a * b * c)
        assert same(bc_mul(A, bc_add(B, C)), bc_add(bc_mul(A, B), bc_mul(A, C)), a * (b + c))
        assert same(bc_sub(bc_add(A, B), B), A, a + b)

    @given(bicomplex, st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False))
    def test_scale_is_product_with_complex(self, Z, c):
        assert close(bc_scale(c, Z), bc_mul(Bicomplex(c), Z), 1e-9)


class TestInverse:
    def test_real(self):
        assert close(bc_inverse(Bicomplex(2.0)), Bicomplex(0.5))

    def test_k_is_self_inverse(self):
        assert close(bc_inverse(K), K)

    @pytest.mark.parametrize("Z", [E1, E2, Bicomplex(0.0), Bicomplex.from_idempotent(0, 3 + 4j)])
    def test_zero_divisors(self, Z):
        with pytest.raises(ZeroDivisorError):
            bc_inverse(Z)

    def test_near_cone_is_scale_aware(self):
        with pytest.raises(ZeroDivisorError):
            bc_inverse(Bicomplex.from_idempotent(1e-15, 1e3))
        assert close(bc_mul(Bicomplex.from_idempotent(1e-10, 1.0), bc_inverse(Bicomplex.from_idempotent(1e-10, 1.0))), ONE, 1e-10)

    @given(bicomplex)
    def test_product_with_inverse(self, Z):
        l1, l2 = Z.idempotent
        if min(abs(l1), abs(l2)) < 1e-3 * (1 + Z.norm()):
            return
        assert close(bc_mul(Z, bc_inverse(Z)), ONE, 1e-10)


class TestConjugations:
    def test_e1_under_each_conjugation(self):
        assert conj_dagger(E1) == E2
        assert conj_bar(E1) == E2
        # star = bar o dagger fixes e1; this is what makes X* slotwise conjugation
        assert conj_star(E1) == E1
        assert conj_star(E2) == E2

    @given(finite)
    def test_reals_are_fixed(self, x):
        Z = Bicomplex(x)
        assert conj_bar(Z) == Z and conj_dagger(Z) == Z and conj_star(Z) == Z

    def test_dagger_example(self):
        assert conj_dagger(Bicomplex.from_real(1, 2, 3, 4)) == Bicomplex.from_real(1, 2, -3, -4)

    @given(bicomplex)
    def test_involutions_and_composition(self, Z):
        for f in (conj_bar, conj_dagger, conj_star):
            assert f(f(Z)) == Z
        assert conj_star(Z) == conj_bar(conj_dagger(Z))
        assert conj_bar(conj_dagger(Z)) == conj_dagger(conj_bar(Z))

    @given(bicomplex)
    def test_idempotent_action(self, Z):
        l1, l2 = Z.idempotent
        b1, b2 = conj_bar(Z).idempotent
        s1, s2 = conj_star(Z).idempotent
        assert b1 == pytest.approx(np.conj(l2), abs=1e-9) and b2 == pytest.approx(np.conj(l1), abs=1e-9)
        assert s1 == pytest.approx(np.conj(l1), abs=1e-9) and s2 == pytest.approx(np.conj(l2), abs=1e-9)

    @given(hyperbolic)
    def test_on_hyperbolic_bar_and_dagger_reduce_to_diamond(self, h):
        Z = Bicomplex.from_hyperbolic(h)
        D = Bicomplex.from_hyperbolic(hyp_conj_diamond(h))
        assert conj_bar(Z) == D and conj_dagger(Z) == D
        assert conj_star(Z) == Z


class TestNorms:
    def test_examples(self):
        assert euclidean_norm(E1) == pytest.approx(1 / math.sqrt(2), abs=1e-15)
        assert euclidean_norm(Bicomplex(0.0)) == 0.0
        assert euclidean_norm(ONE + J) == pytest.approx(math.sqrt(2), abs=1e-15)

    @given(bicomplex)
    def test_two_formulas_agree(self, Z):
        a = euclidean_norm(Z, via="cartesian")
        b = euclidean_norm(Z, via="idempotent")
        assert a == pytest.approx(b, rel=1e-12, abs=1e-12)

    @given(bicomplex, bicomplex)
    def test_product_inequality(self, Z, W):
        assert euclidean_norm(bc_mul(Z, W)) <= math.sqrt(2) * euclidean_norm(Z) * euclidean_norm(W) * (1 + 1e-12) + 1e-300

    def test_product_inequality_sharp_at_e1(self):
        assert euclidean_norm(bc_mul(E1, E1)) == pytest.approx(math.sqrt(2) * euclidean_norm(E1) ** 2, abs=1e-15)

    @pytest.mark.parametrize(
        "Z, s, t",
        [(E1, 1, 0), (K, 1, 1), (Bicomplex.from_idempotent(3, 4j), 3, 4)],
    )
    def test_hyperbolic_norm_examples(self, Z, s, t):
        h = hyperbolic_norm(Z)
        assert h.s == pytest.approx(s, abs=1e-15) and h.t == pytest.approx(t, abs=1e-15)

    def test_hyperbolic_norm_uses_both_slots(self):
        # a copy of |l1| in the e2 slot would give s = t here
        h = hyperbolic_norm(Bicomplex.from_idempotent(1, 5))
        assert (h.s, h.t) == (1, 5)

    @given(bicomplex, bicomplex)
    def test_hyperbolic_norm_multiplicative_and_triangle(self, Z, W):
        prod = hyperbolic_norm(bc_mul(Z, W))
        expected = hyp_mul(hyperbolic_norm(Z), hyperbolic_norm(W))
        assert prod.s == pytest.approx(expected.s, rel=1e-12, abs=1e-9)
        assert prod.t == pytest.approx(expected.t, rel=1e-12, abs=1e-9)
        lhs = hyperbolic_norm(bc_add(Z, W))
        rhs = hyperbolic_norm(Z) + hyperbolic_norm(W)
        assert hyp_leq(lhs, rhs + Hyperbolic(1e-9, 0))

    @given(bicomplex)
    def test_hyperbolic_norm_in_dplus(self, Z):
        assert hyp_in_Dplus(hyperbolic_norm(Z))


class TestHyperbolic:
    def test_light_cone(self):
        assert hyp_modulus_sq(Hyperbolic(1, 1)) == 0

    def test_real(self):
        assert hyp_modulus_sq(Hyperbolic(2, 0)) == 4

    def test_idempotent_product(self):
        p = hyp_mul(Hyperbolic.from_idempotent(2, 3), Hyperbolic.from_idempotent(5, 7))
        assert (p.s, p.t) == (10, 21)

    @given(hyperbolic)
    def test_modulus_is_st(self, h):
        assert hyp_modulus_sq(h) == pytest.approx(h.s * h.t, rel=1e-12, abs=1e-9)

    @pytest.mark.parametrize("h, inside", [(Hyperbolic(2, 1), True), (Hyperbolic(1, 2), False), (Hyperbolic(0, 0), True)])
    def test_dplus_examples(self, h, inside):
        assert hyp_in_Dplus(h) == inside

    @given(hyperbolic)
    def test_dplus_characterizations_agree(self, h):
        assert hyp_in_Dplus(h) == (h.x >= 0 and abs(h.y) <= h.x)

    def test_order_examples(self):
        k = Hyperbolic(0, 1)
        one = Hyperbolic(1, 0)
        assert hyp_leq(k, one) and not hyp_leq(one, k)
        e1, e2 = Hyperbolic.from_idempotent(1, 0), Hyperbolic.from_idempotent(0, 1)
        assert not hyp_leq(e1, e2) and not hyp_leq(e2, e1)

    @given(hyperbolic, hyperbolic, hyperbolic)
    def test_partial_order(self, a, b, c):
        assert hyp_leq(a, a)
        if hyp_leq(a, b) and hyp_leq(b, a):
            assert a == b
        if hyp_leq(a, b) and hyp_leq(b, c):
            # sums of exact differences can round by one ulp
            assert hyp_leq(a, c + Hyperbolic(1e-9, 0))

    @given(hyperbolic)
    def test_zero_below_dplus(self, h):
        if hyp_in_Dplus(h):
            assert hyp_leq(Hyperbolic(0, 0), h)


class TestText:
    @pytest.mark.parametrize(
        "text, coords",
        [
            ("2+3i+4j+5k", (2, 3, 4, 5)),
            ("5k+4j+3i+2", (2, 3, 4, 5)),
            ("-k", (0, 0, 0, -1)),
            ("i - 2.5j", (0, 1, -2.5, 0)),
            ("1e-3+2E2k", (1e-3, 0, 0, 200)),
            ("3", (3, 0, 0, 0)),
        ],
    )
    def test_parse(self, text, coords):
        assert parse_bicomplex(text) == Bicomplex.from_real(*coords)

    @pytest.mark.parametrize("text", ["", "2+", "2 3i", "1+i+i", "2x", "++1"])
    def test_parse_errors(self, text):
        with pytest.raises(ParseError):
            parse_bicomplex(text)

    def test_format_order(self):
        assert format_bicomplex(Bicomplex.from_real(1, -2, 0.5, 3)) == "1-2i+0.5j+3k"

    @given(bicomplex)
    def test_text_round_trip_is_exact(self, Z):
        assert parse_bicomplex(format_bicomplex(Z)) == Z

    @given(bicomplex)
    def test_json_round_trip(self, Z):
        obj = bicomplex_to_json(Z)
        assert list(obj) == ["x1", "x2", "x3", "x4"]
        assert bicomplex_from_json(obj) == Z

    def test_json_errors(self):
        with pytest.raises(ParseError):
            bicomplex_from_json({"x1": 1})


def test_values_are_immutable():
    with pytest.raises(AttributeError):
        ONE.z1 = 2
    with pytest.raises(AttributeError):
        Hyperbolic(1, 2).x = 0
