import numpy as np
import pytest

from thirring_automaton.automaton import INTERACTING_RULE, LayerConfig, half_step
from thirring_automaton.exceptions import (
    DimensionMismatchError,
    PreconditionError,
    StateSpaceTooLargeError,
)
from thirring_automaton.lattice import block_partition
from thirring_automaton.operators import (
    DenseOperator,
    SignedPermutation,
    compose,
    double_step_operator,
    from_block_rule,
    from_layer_map,
    is_unique_jump,
    lift_to_lattice,
    w_matrix,
)


class TestSignedPermutation(object):
    def test_dense_round_trip(self):
        dense = np.array([[0, -1, 0], [1, 0, 0], [0, 0, -1]])
        op = SignedPermutation.from_dense(dense)
        np.testing.assert_array_equal(op.target, [1, 0, 2])
        np.testing.assert_array_equal(op.sign, [1, -1, -1])
        np.testing.assert_array_equal(op.to_dense(), dense)
        np.testing.assert_array_equal(op.to_sparse().toarray(), dense)

    def test_transpose_is_inverse(self):
        op = SignedPermutation([2, 0, 3, 1], [1, -1, -1, 1])
        np.testing.assert_array_equal(op.T.to_dense(), op.to_dense().T)
        assert compose(op, op.inverse()) == SignedPermutation.identity(4)

    def test_apply(self):
        op = SignedPermutation([1, 2, 0], [1, -1, 1])
        q = np.array([1.0, 2.0, 3.0])
        np.testing.assert_array_equal(op.apply(q), op.to_dense().dot(q))
        block = np.arange(6.0).reshape(3, 2)
        np.testing.assert_array_equal(op.apply(block), op.to_dense().dot(block))
        with pytest.raises(DimensionMismatchError):
            op.apply(np.ones(4))

    @pytest.mark.parametrize(
        "target, sign",
        [([0, 0, 1], None), ([0, 1], [1, 2]), ([0, 1], [1])],
    )
    def test_invalid(self, target, sign):
        with pytest.raises(PreconditionError):
            SignedPermutation(target, sign)

    @pytest.mark.parametrize(
        "matrix, expected",
        [
            (np.eye(3), True),
            (-np.eye(2), True),
            (np.array([[0, 2], [1, 0]]), False),
            (np.array([[1, 1], [0, 0]]), False),
            (np.ones((2, 3)), False),
        ],
    )
    def test_is_unique_jump(self, matrix, expected):
        assert is_unique_jump(matrix) == expected


class TestLatticeOperators(object):
    @pytest.mark.parametrize("model", ["free", "interacting"])
    def test_block_rules_are_symmetric_nonnegative(self, model):
        op = from_block_rule(model)
        assert op.is_symmetric()
        assert op.is_nonnegative()

    @pytest.mark.parametrize("n_x", [2, 4, 6])
    @pytest.mark.parametrize("parity", ["even", "odd"])
    @pytest.mark.parametrize("model", ["free", "interacting"])
    def test_lift_matches_layer_map(self, n_x, parity, model):
        lifted = lift_to_lattice(from_block_rule(model), block_partition(parity, n_x), n_x)
        assert lifted == from_layer_map(n_x, parity, model)

    def test_layer_map_matches_half_step(self):
        op = from_layer_map(4, "odd")
        for index in (0, 7, 100, 201, 255):
            image = half_step(LayerConfig.from_index(4, index), "odd")
            assert op.target[index] == image.index()

    def test_double_step_operator(self):
        op = double_step_operator(4)
        layer = LayerConfig.from_occupations([1, 0, 0, 0], [0, 0, 1, 0])
        expected = half_step(half_step(layer, "even"), "odd")
        assert op.target[layer.index()] == expected.index()

    def test_lift_limits(self):
        with pytest.raises(StateSpaceTooLargeError):
            lift_to_lattice(from_block_rule("free"), block_partition("even", 14), 14)
        with pytest.raises(DimensionMismatchError):
            lift_to_lattice(SignedPermutation.identity(8), block_partition("even", 2), 2)

    def test_w_matrix_antisymmetric(self):
        block = SignedPermutation(INTERACTING_RULE)
        s_even = lift_to_lattice(block, block_partition("even", 4), 4)
        s_odd = lift_to_lattice(block, block_partition("odd", 4), 4)
        w = w_matrix(s_even, s_odd)
        assert isinstance(w, DenseOperator)
        assert w.dim == 256
        assert w.antisymmetry_defect() == 0.0
        eigenvalues = np.linalg.eigvals(w.entries)
        np.testing.assert_allclose(eigenvalues.real, 0.0, atol=1e-10)

    def test_w_matrix_needs_symmetric(self):
        skew = SignedPermutation([1, 2, 0])
        with pytest.raises(PreconditionError):
            w_matrix(skew, skew)
