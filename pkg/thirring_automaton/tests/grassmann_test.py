from fractions import Fraction

import numpy as np
import pytest

from thirring_automaton.automaton import FREE_RULE
from thirring_automaton.exceptions import DimensionMismatchError, PreconditionError
from thirring_automaton.grassmann import (
    Z1,
    Z1P,
    Z2,
    Z2P,
    Z3,
    Z3P,
    Z4,
    Z4P,
    GrassmannElement,
    basis_family,
    berezin_integrate,
    chiral_rotation,
    eta,
    exp_pairing,
    extract_step_operator,
    interaction_term,
    kinetic_exponent,
    local_factor_free,
    local_factor_interacting,
    multiply,
    pairing_matrix,
    sign_gauge_search,
    step_operator_oracle,
    substitute,
)
from thirring_automaton.operators import DenseOperator, SignedPermutation, from_block_rule

mono = GrassmannElement.monomial
var = GrassmannElement.variable


def _dense(operator):
    if isinstance(operator, SignedPermutation):
        return operator.to_dense().astype(object)
    return operator.entries


class TestAlgebra(object):
    def test_anticommutation(self):
        assert mono(2, [1, 0]) == -mono(2, [0, 1])
        assert var(2, 1) * var(2, 0) == -(var(2, 0) * var(2, 1))
        assert multiply(var(3, 2), var(3, 2)) == GrassmannElement.zero(3)
        assert mono(3, [0, 0]) == GrassmannElement.zero(3)

    def test_coefficient(self):
        element = mono(3, [2, 0], 5) + 3
        assert element.coefficient() == 3
        assert element.coefficient(0, 2) == -5
        assert element.coefficient(2, 0) == 5
        assert element.coefficient(1) == 0

    def test_parity(self):
        assert mono(4, [0, 1]).grassmann_parity() == 0
        assert var(4, 3).grassmann_parity() == 1
        assert (var(4, 3) + 1).grassmann_parity() is None

    def test_berezin_is_left_derivative(self):
        assert berezin_integrate(var(1, 0), 1) == GrassmannElement.one(1)
        assert berezin_integrate(mono(2, [0, 1]), 0b10) == -var(2, 0)
        assert berezin_integrate(mono(2, [0, 1]), 0b11) == GrassmannElement.one(2)
        assert berezin_integrate(GrassmannElement.one(2), 0b01) == GrassmannElement.zero(2)

    def test_exp(self):
        pairs = mono(4, [0, 1]) + mono(4, [2, 3])
        expected = 1 + mono(4, [0, 1]) + mono(4, [2, 3]) + mono(4, [0, 1, 2, 3])
        assert pairs.exp() == expected
        half = mono(4, [0, 1], Fraction(1, 2))
        assert half.exp().coefficient(0, 1) == Fraction(1, 2)

    @pytest.mark.parametrize("element", [var(2, 0), mono(2, [0, 1]) + 1])
    def test_exp_preconditions(self, element):
        with pytest.raises(PreconditionError):
            element.exp()

    def test_dimension_checks(self):
        with pytest.raises(DimensionMismatchError):
            var(2, 0) + var(3, 0)
        with pytest.raises(DimensionMismatchError):
            var(2, 2)
        with pytest.raises(DimensionMismatchError):
            GrassmannElement(17)

    def test_substitute(self):
        element = mono(2, [0, 1])
        swapped = substitute(element, [var(2, 1), var(2, 0)])
        assert swapped == -element


class TestBasisFamilies(object):
    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_pairings(self, m):
        family = basis_family(m)
        identity = np.eye(2 ** m, dtype=np.int64)
        np.testing.assert_array_equal(pairing_matrix(family.g_bar, family.g, m), identity)
        np.testing.assert_array_equal(
            pairing_matrix(family.g_prime, family.g_bar_prime, m), eta(m) * identity
        )

    def test_factor_counts(self):
        family = basis_family(4)
        assert family.m_tau[0] == 4
        assert family.m_bar_tau[0] == 0
        assert family.g[15] == GrassmannElement.one(4)
        assert family.m_tau[0b0101] == 2

    @pytest.mark.parametrize("m, expected", [(1, 1), (2, -1), (3, -1), (4, 1), (5, 1)])
    def test_eta(self, m, expected):
        assert eta(m) == expected

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_exp_pairing(self, m):
        exponential, from_g, from_g_bar = exp_pairing(m)
        assert exponential == from_g
        assert exponential == from_g_bar

    def test_two_variable_family(self):
        family = basis_family(2)
        one = GrassmannElement.one(2)
        # g: ascending product over empty positions
        assert family.g == [mono(2, [0, 1]), var(2, 1), var(2, 0), one]
        assert family.g_bar == [one, var(2, 0), -var(2, 1), mono(2, [0, 1])]
        assert family.g_prime[0] == -mono(2, [0, 1])
        assert family.g_bar_prime[3] == -mono(2, [0, 1])
        assert family.m_tau == [2, 1, 1, 0]
        assert family.m_bar_tau == [0, 1, 1, 2]

    def test_offset(self):
        family = basis_family(2, offset=2, n_vars=4)
        assert family.g[0] == mono(4, [2, 3])
        with pytest.raises(DimensionMismatchError):
            basis_family(2, offset=3, n_vars=4)


class TestFreeExtraction(object):
    @pytest.mark.parametrize(
        "g, parity, expected",
        [
            (2, "even", [[1, 0, 0, 0], [0, 0, -1, 0], [0, -1, 0, 0], [0, 0, 0, 1]]),
            (0, "even", [[1, 0, 0, 0], [0, 0, -1, 0], [0, -1, 0, 0], [0, 0, 0, -1]]),
            (2, "odd", [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]),
            (0, "odd", [[-1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]),
        ],
    )
    def test_unique_jump_couplings(self, g, parity, expected):
        operator = extract_step_operator(local_factor_free(g, parity), 2, parity)
        assert isinstance(operator, SignedPermutation)
        np.testing.assert_array_equal(operator.to_dense(), expected)
        gauge = sign_gauge_search(operator)
        assert gauge.gauged == SignedPermutation(FREE_RULE)

    @pytest.mark.parametrize("g", [1, Fraction(1, 2), 3])
    @pytest.mark.parametrize("parity", ["even", "odd"])
    def test_other_couplings_not_unique_jump(self, g, parity):
        operator = extract_step_operator(local_factor_free(g, parity), 2, parity)
        assert isinstance(operator, DenseOperator)
        corner = (3, 3) if parity == "even" else (0, 0)
        assert operator.entries[corner] == g - 1
        assert sign_gauge_search(operator) is None

    @pytest.mark.parametrize("g", [0, 2, Fraction(3, 2)])
    @pytest.mark.parametrize("parity", ["even", "odd"])
    def test_matches_oracle(self, g, parity):
        factor = local_factor_free(g, parity)
        operator = extract_step_operator(factor, 2, parity)
        np.testing.assert_array_equal(_dense(operator), step_operator_oracle(factor, 2, parity))

    @pytest.mark.parametrize("g, expected", [(0, 1), (1, 0), (2, -1)])
    def test_quartic_coefficient(self, g, expected):
        assert local_factor_free(g, "even").coefficient(3, 2, 1, 0) == expected
        assert local_factor_free(g, "odd").coefficient(2, 3, 0, 1) == expected
        assert local_factor_free(g).coefficient(3, 0) == 1

    def test_wrong_size(self):
        with pytest.raises(DimensionMismatchError):
            extract_step_operator(local_factor_free(2), 4)


class TestInteractingExtraction(object):
    @pytest.mark.parametrize("parity", ["even", "odd"])
    def test_gauges_to_automaton_rule(self, parity):
        factor = local_factor_interacting()
        operator = extract_step_operator(factor, 4, parity)
        assert isinstance(operator, SignedPermutation)
        np.testing.assert_array_equal(_dense(operator), step_operator_oracle(factor, 4, parity))
        gauge = sign_gauge_search(operator)
        assert gauge is not None
        assert gauge.gauged == from_block_rule("interacting")
        np.testing.assert_array_equal(
            np.diag(gauge.d_out).dot(operator.to_dense()).dot(np.diag(gauge.d_in)),
            gauge.gauged.to_dense(),
        )

    @pytest.mark.parametrize(
        "indices, expected",
        [
            ((), 1),
            ((Z3P, Z1), 1),
            ((Z1P, Z3), 1),
            ((Z3P, Z2), 0),
            ((Z1P, Z4P, Z1, Z4), 1),
            ((Z2P, Z3P, Z1, Z4), 0),
            ((Z2P, Z3P, Z2, Z3), 1),
            ((Z1P, Z3P, Z1, Z3), 0),
        ],
    )
    def test_interacting_coefficients(self, indices, expected):
        assert local_factor_interacting().coefficient(*indices) == expected

    def test_factor_is_even(self):
        assert local_factor_interacting().grassmann_parity() == 0
        assert kinetic_exponent().grassmann_parity() == 0

    @pytest.mark.parametrize("right, left", [(0, 1), (1, 0), (1, 3), (2, 2), (3, 1)])
    def test_chiral_invariance(self, right, left):
        assert chiral_rotation(kinetic_exponent(), right, left) == kinetic_exponent()
        assert chiral_rotation(interaction_term(), right, left) == interaction_term()

    def test_quarter_turn(self):
        assert chiral_rotation(var(8, Z1), 1, 0) == var(8, Z2)
        assert chiral_rotation(var(8, Z2), 1, 0) == -var(8, Z1)
        assert chiral_rotation(var(8, Z1), 4, 0) == var(8, Z1)


class TestSignGauge(object):
    @pytest.mark.parametrize(
        "target, sign, conjugate, global_sign",
        [
            ([1, 0], [1, -1], False, None),
            ([0, 1], [-1, 1], False, None),
            ([0, 1], [-1, -1], False, -1),
            ([1, 0], [-1, -1], True, 1),
            ([2, 0, 1], [1, 1, 1], True, 1),
        ],
    )
    def test_cycles(self, target, sign, conjugate, global_sign):
        result = sign_gauge_search(SignedPermutation(target, sign))
        assert result.conjugate == conjugate
        assert result.global_sign == global_sign
        assert result.gauged.is_nonnegative()
        np.testing.assert_array_equal(result.gauged.target, target)

    def test_dense_input(self):
        assert sign_gauge_search(np.array([[0, 1], [1, 1]])) is None
        result = sign_gauge_search(np.array([[0, -1], [1, 0]]))
        assert result.gauged == SignedPermutation([1, 0])
