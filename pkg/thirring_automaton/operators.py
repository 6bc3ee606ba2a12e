"""Unique-jump (signed permutation) step evolution operators.

A SignedPermutation S of dimension dim maps basis vector e_rho to
sign[rho] * e_target[rho], i.e. S[target[rho], rho] = sign[rho] and all other
entries vanish.  Whole-layer operators use the packed layer bits read as an
integer as state index.
"""
from __future__ import absolute_import

import numpy as np
import scipy.sparse

from .automaton import (
    FREE_RULE,
    INTERACTING_RULE,
    check_model,
    enumerate_layer_words,
    half_step_words,
)
from .exceptions import (
    DimensionMismatchError,
    PreconditionError,
    StateSpaceTooLargeError,
)
from .lattice import MAX_EXACT_BITS, block_partition, check_n_x

MAX_DENSE_DIM = 2 ** 12


class SignedPermutation(object):
    """Matrix with exactly one entry +1 or -1 per row and column.

    Parameters
    -----------
    target : array of int, shape (dim,)
        target[rho] is the row of the nonzero entry in column rho.

    sign : array of +1/-1, shape (dim,) (default=all +1)
    """

    __slots__ = ("target", "sign")

    def __init__(self, target, sign=None):
        target = np.array(target, dtype=np.int64).reshape(-1)
        dim = target.shape[0]
        if not np.array_equal(np.sort(target), np.arange(dim)):
            raise PreconditionError("target is not a permutation of range({})".format(dim))
        if sign is None:
            sign = np.ones(dim, dtype=np.int8)
        sign = np.array(sign, dtype=np.int8).reshape(-1)
        if sign.shape != (dim,) or not np.all(np.abs(sign) == 1):
            raise PreconditionError("sign must hold {} entries of +1 or -1".format(dim))
        target.setflags(write=False)
        sign.setflags(write=False)
        self.target = target
        self.sign = sign

    @property
    def dim(self):
        return self.target.shape[0]

    @classmethod
    def identity(cls, dim):
        return cls(np.arange(dim))

    @classmethod
    def from_dense(cls, matrix):
        """Convert a dense unique-jump matrix with entries 0 and +-1."""
        matrix = np.asarray(matrix)
        if not is_unique_jump(matrix):
            raise PreconditionError("matrix is not a unique-jump matrix")
        rows, cols = np.nonzero(matrix)
        order = np.argsort(cols)
        target = rows[order]
        return cls(target, np.sign(matrix[target, cols[order]]))

    def to_dense(self, dtype=np.int64):
        dense = np.zeros((self.dim, self.dim), dtype=dtype)
        dense[self.target, np.arange(self.dim)] = self.sign
        return dense

    def to_sparse(self):
        return scipy.sparse.csr_matrix(
            (self.sign.astype(np.float64), (self.target, np.arange(self.dim))),
            shape=(self.dim, self.dim),
        )

    def transpose(self):
        inverse = np.empty_like(self.target)
        inverse[self.target] = np.arange(self.dim)
        return SignedPermutation(inverse, self.sign[inverse])

    T = property(transpose)

    def inverse(self):
        """Orthogonality: the inverse is the transpose."""
        return self.transpose()

    def apply(self, q):
        """Matrix-free S q for q of shape (dim,) or (dim, k)."""
        q = np.asarray(q)
        if q.shape[0] != self.dim:
            raise DimensionMismatchError(
                "vector of length {} for operator of dim {}".format(q.shape[0], self.dim)
            )
        out = np.zeros_like(q)
        sign = self.sign.reshape((-1,) + (1,) * (q.ndim - 1))
        out[self.target] = sign * q
        return out

    def is_symmetric(self):
        return bool(
            np.array_equal(self.target[self.target], np.arange(self.dim))
            and np.array_equal(self.sign[self.target], self.sign)
        )

    def is_nonnegative(self):
        return bool(np.all(self.sign == 1))

    def __eq__(self, other):
        if not isinstance(other, SignedPermutation):
            return NotImplemented
        return np.array_equal(self.target, other.target) and np.array_equal(
            self.sign, other.sign
        )

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    __hash__ = None

    def __repr__(self):
        return "SignedPermutation(dim={}, n_negative={})".format(
            self.dim, int(np.sum(self.sign < 0))
        )


class DenseOperator(object):
    """Dense real operator (W matrices, Ising step operators, non-unique-jump
    Grassmann expansions).

    Parameters
    -----------
    entries : 2D ndarray (dim, dim)
        Integer, float and exact (object) entries are kept as given.
    """

    def __init__(self, entries):
        entries = np.asarray(entries)
        if entries.dtype.kind not in "iufO":
            entries = entries.astype(np.float64)
        assert entries.ndim == 2 and entries.shape[0] == entries.shape[1]
        self.entries = entries

    @property
    def dim(self):
        return self.entries.shape[0]

    def antisymmetry_defect(self):
        """max |A + A^T|."""
        return float(np.max(np.abs(self.entries + self.entries.T)))

    def is_unique_jump(self):
        return is_unique_jump(self.entries)

    def __repr__(self):
        return "DenseOperator(dim={})".format(self.dim)


def is_unique_jump(matrix):
    """True when every row and column holds exactly one nonzero, equal to +-1."""
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        return False
    nonzero = matrix != 0
    if not (np.all(nonzero.sum(axis=0) == 1) and np.all(nonzero.sum(axis=1) == 1)):
        return False
    return bool(np.all(np.abs(matrix[nonzero]) == 1))


def from_block_rule(model):
    """Block operator of the automaton: 4x4 switch (free, one color) or
    16x16 interacting rule, indexed by BlockState bits."""
    if check_model(model) == "free":
        return SignedPermutation(FREE_RULE)
    return SignedPermutation(INTERACTING_RULE)


def compose(a, b):
    """Matrix product a . b (apply b first)."""
    if a.dim != b.dim:
        raise DimensionMismatchError(
            "cannot compose operators of dim {} and {}".format(a.dim, b.dim)
        )
    return SignedPermutation(a.target[b.target], b.sign * a.sign[b.target])


def lift_to_lattice(block_op, partition, n_x):
    """Whole-layer operator acting with block_op on every block of partition.

    A 16-dimensional block operator acts on the 4-bit two-color block state,
    a 4-dimensional one acts on each color of the block separately.

    Parameters
    -----------
    block_op : SignedPermutation of dim 4 or 16

    partition : BlockPartition

    n_x : int
        2 * n_x must not exceed 24.

    Returns
    -------
    SignedPermutation of dim 2**(2 n_x)
    """
    n_x = check_n_x(n_x)
    if 2 * n_x > MAX_EXACT_BITS:
        raise StateSpaceTooLargeError(
            "state space 2**{} exceeds 2**{}".format(2 * n_x, MAX_EXACT_BITS)
        )
    if sorted(site for pair in partition.pairs for site in pair) != list(range(n_x)):
        raise DimensionMismatchError("partition does not cover {} sites".format(n_x))

    if block_op.dim == 16:
        # one 4-bit channel per block
        channels = [(0, 2)]
    elif block_op.dim == 4:
        # one 2-bit channel per color
        channels = [(0, 1), (1, 1)]
    else:
        raise DimensionMismatchError(
            "block operators must have dim 4 or 16, got {}".format(block_op.dim)
        )

    index = np.arange(4 ** n_x, dtype=np.int64)
    target = np.zeros_like(index)
    sign = np.ones(index.shape, dtype=np.int8)
    for left, right in partition.pairs:
        for offset, width in channels:
            mask = (1 << width) - 1
            shift_left, shift_right = 2 * left + offset, 2 * right + offset
            local = ((index >> shift_left) & mask) | (
                ((index >> shift_right) & mask) << width
            )
            moved = block_op.target[local]
            sign = sign * block_op.sign[local]
            target |= ((moved & mask) << shift_left) | ((moved >> width) << shift_right)
    return SignedPermutation(target, sign)


def from_layer_map(n_x, parity, model="interacting"):
    """Permutation of layer indices induced by half_step on every layer."""
    words = enumerate_layer_words(n_x)
    image = half_step_words(words, n_x, parity, model)[:, 0]
    return SignedPermutation(image.astype(np.int64))


def double_step_operator(n_x, model="interacting"):
    block_op = from_block_rule(model)
    s_even = lift_to_lattice(block_op, block_partition("even", n_x), n_x)
    s_odd = lift_to_lattice(block_op, block_partition("odd", n_x), n_x)
    return compose(s_odd, s_even)


def w_matrix(s_even, s_odd, eps=1.0):
    """Antisymmetric generator W = (P - P^T) / (4 eps), P = s_odd . s_even.

    Both inputs must be symmetric, which holds for involutive permutations
    with nonnegative signs.

    Returns
    -------
    DenseOperator
    """
    if not (s_even.is_symmetric() and s_odd.is_symmetric()):
        raise PreconditionError("w_matrix needs symmetric half-step operators")
    if s_even.dim != s_odd.dim:
        raise DimensionMismatchError("operators have different dims")
    if s_even.dim > MAX_DENSE_DIM:
        raise StateSpaceTooLargeError(
            "dense W of dim {} exceeds {}".format(s_even.dim, MAX_DENSE_DIM)
        )
    product = compose(s_odd, s_even).to_sparse()
    return DenseOperator(((product - product.T) / (4.0 * eps)).toarray())
