"""Finite real Grassmann algebra with Berezin integration.

Elements are sparse maps from monomial bitmasks to exact coefficients (int
or fractions.Fraction).  Bit i of a mask stands for the variable psi_i and
monomials are ordered by ascending index, so the mask 0b101 is
psi_0 psi_2.

The local factors linking two time layers live on 2m variables: indices
0..m-1 belong to layer t and m..2m-1 to layer t + eps, each layer in
BlockState order (R left, I left, R right, I right for m = 4).  The basis
families and the extraction of step evolution operators follow these
conventions:

    g_tau      product of psi over the EMPTY positions of tau, sign +1
    gbar_tau   the occupied positions, sign fixed by  int D psi gbar_tau g_tau = 1
    g'_tau     (-1)^(m_tau (m_tau - 1) / 2) g_tau, m_tau the number of factors
    gbar'_tau  likewise with the factor count of gbar_tau

The local integral D psi = d psi_M ... d psi_1 integrates psi_1 first and
each integration acts as a left derivative.
"""
from __future__ import absolute_import

from collections import namedtuple
from fractions import Fraction

import numpy as np

from .exceptions import DimensionMismatchError, ExpansionError, PreconditionError
from .lattice import check_parity
from .operators import DenseOperator, SignedPermutation, is_unique_jump

MAX_VARS = 16


def _popcount(mask):
    return bin(mask).count("1")


def _normalize(value):
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value.numerator)
    return value


def _product_sign(a, b):
    """Sign of psi_a psi_b reordered to ascending order, a and b disjoint."""
    swaps = 0
    while b:
        low = b & -b
        swaps += _popcount(a >> low.bit_length())
        b ^= low
    return -1 if swaps & 1 else 1


def _sequence_sign(indices):
    """Sign of sorting a product written in the given variable order, or 0
    when a variable repeats."""
    if len(set(indices)) != len(indices):
        return 0
    inversions = sum(
        1
        for k in range(len(indices))
        for j in range(k + 1, len(indices))
        if indices[k] > indices[j]
    )
    return -1 if inversions & 1 else 1


class GrassmannElement(object):
    """Element of the real Grassmann algebra on n_vars generators.

    Parameters
    -----------
    n_vars : int (<= 16)

    terms : dict {mask: coefficient}
        Zero coefficients are dropped.
    """

    __slots__ = ("n_vars", "terms")

    def __init__(self, n_vars, terms=None):
        if not 0 <= n_vars <= MAX_VARS:
            raise DimensionMismatchError(
                "n_vars must be in [0, {}], got {}".format(MAX_VARS, n_vars)
            )
        cleaned = {}
        for mask, coefficient in (terms or {}).items():
            if not 0 <= mask < 2 ** n_vars:
                raise DimensionMismatchError(
                    "monomial mask {} needs more than {} variables".format(mask, n_vars)
                )
            coefficient = _normalize(coefficient)
            if coefficient != 0:
                cleaned[int(mask)] = coefficient
        self.n_vars = n_vars
        self.terms = cleaned

    @classmethod
    def zero(cls, n_vars):
        return cls(n_vars)

    @classmethod
    def one(cls, n_vars):
        return cls(n_vars, {0: 1})

    @classmethod
    def variable(cls, n_vars, index):
        return cls.monomial(n_vars, [index])

    @classmethod
    def monomial(cls, n_vars, indices, coefficient=1):
        """The product psi_i1 psi_i2 ... written in the given order."""
        sign = _sequence_sign(list(indices))
        mask = 0
        for index in indices:
            if not 0 <= index < n_vars:
                raise DimensionMismatchError(
                    "variable {} outside [0, {})".format(index, n_vars)
                )
            mask |= 1 << index
        return cls(n_vars, {mask: sign * coefficient})

    def _check_compatible(self, other):
        if self.n_vars != other.n_vars:
            raise DimensionMismatchError(
                "elements on {} and {} variables".format(self.n_vars, other.n_vars)
            )

    def __add__(self, other):
        if not isinstance(other, GrassmannElement):
            other = GrassmannElement(self.n_vars, {0: other})
        self._check_compatible(other)
        terms = dict(self.terms)
        for mask, coefficient in other.terms.items():
            terms[mask] = terms.get(mask, 0) + coefficient
        return GrassmannElement(self.n_vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return GrassmannElement(self.n_vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GrassmannElement):
            return multiply(self, other)
        return GrassmannElement(self.n_vars, {m: c * other for m, c in self.terms.items()})

    def __rmul__(self, other):
        # scalars commute with everything
        return self.__mul__(other)

    def __eq__(self, other):
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        return self.n_vars == other.n_vars and self.terms == other.terms

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    __hash__ = None

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        if not self.terms:
            return "GrassmannElement(0)"
        parts = []
        for mask in sorted(self.terms, key=lambda m: (_popcount(m), m)):
            factors = "".join(
                "p{}".format(i) for i in range(self.n_vars) if mask >> i & 1
            )
            parts.append("{}{}".format(self.terms[mask], "*" + factors if factors else ""))
        return "GrassmannElement({})".format(" + ".join(parts))

    def coefficient(self, *indices):
        """Coefficient of the monomial psi_i1 psi_i2 ... written in the given
        order (constant term when called without indices)."""
        sign = _sequence_sign(list(indices))
        if sign == 0:
            return 0
        mask = 0
        for index in indices:
            mask |= 1 << index
        return sign * self.terms.get(mask, 0)

    def grassmann_parity(self):
        """0 or 1 when every monomial has even or odd degree, None if mixed."""
        parities = {_popcount(mask) % 2 for mask in self.terms}
        if len(parities) > 1:
            return None
        return parities.pop() if parities else 0

    def exp(self):
        """exp of an even element, the series terminates by nilpotency."""
        if self.grassmann_parity() == 1:
            raise PreconditionError("exp is only defined here for even elements")
        constant = self.terms.get(0, 0)
        if constant != 0:
            raise PreconditionError("exp needs an element without constant term")
        result = GrassmannElement.one(self.n_vars)
        power = GrassmannElement.one(self.n_vars)
        k = 0
        while True:
            k += 1
            power = multiply(power, self) * Fraction(1, k)
            if not power.terms:
                break
            result = result + power
        return result


def multiply(a, b):
    """Graded product a b; overlapping monomials annihilate."""
    a._check_compatible(b)
    terms = {}
    for mask_a, coeff_a in a.terms.items():
        for mask_b, coeff_b in b.terms.items():
            if mask_a & mask_b:
                continue
            mask = mask_a | mask_b
            value = _product_sign(mask_a, mask_b) * coeff_a * coeff_b
            terms[mask] = terms.get(mask, 0) + value
    return GrassmannElement(a.n_vars, terms)


def _integrate_one(element, index):
    terms = {}
    below = (1 << index) - 1
    for mask, coefficient in element.terms.items():
        if mask >> index & 1:
            sign = -1 if _popcount(mask & below) & 1 else 1
            reduced = mask ^ (1 << index)
            terms[reduced] = terms.get(reduced, 0) + sign * coefficient
    return GrassmannElement(element.n_vars, terms)


def berezin_integrate(element, variables):
    """Integrate the variables in the bitmask with the measure
    d psi_M ... d psi_1: psi with the lowest index is integrated first."""
    for index in range(element.n_vars):
        if variables >> index & 1:
            element = _integrate_one(element, index)
    return element


def substitute(element, images):
    """Replace every variable psi_i by images[i] (products taken in
    ascending variable order)."""
    if len(images) != element.n_vars:
        raise DimensionMismatchError("need one image per variable")
    result = GrassmannElement.zero(element.n_vars)
    for mask, coefficient in element.terms.items():
        product = GrassmannElement.one(element.n_vars)
        for index in range(element.n_vars):
            if mask >> index & 1:
                product = multiply(product, images[index])
        result = result + product * coefficient
    return result


# basis families ---------------------------------------------------------------

BasisFamily = namedtuple(
    "BasisFamily", ["m", "offset", "g", "g_bar", "g_prime", "g_bar_prime", "m_tau", "m_bar_tau"]
)


def eta(m):
    """(-1)^(m (m - 1) / 2)."""
    return -1 if (m * (m - 1) // 2) % 2 else 1


def basis_family(m, offset=0, n_vars=None):
    """Basis elements g, gbar, g', gbar' for m local variables.

    Parameters
    -----------
    m : int
        Number of local variables (occupation bits), at most 16.

    offset : int (default=0)
        Index of the first local variable.

    n_vars : int (default=offset + m)
        Total number of generators of the algebra the elements live in.

    Returns
    -------
    BasisFamily with four lists indexed by the configuration tau (bit k set
    when position k is occupied) and the factor counts m_tau, m_bar_tau.
    """
    if not 1 <= m <= MAX_VARS:
        raise PreconditionError("m must be in [1, {}], got {}".format(MAX_VARS, m))
    if n_vars is None:
        n_vars = offset + m
    if offset + m > n_vars:
        raise DimensionMismatchError("local variables exceed n_vars")

    full = 2 ** m - 1
    local = full << offset
    g, g_bar, g_prime, g_bar_prime, m_tau, m_bar_tau = [], [], [], [], [], []
    for tau in range(2 ** m):
        empty = (full & ~tau) << offset
        occupied = tau << offset
        g_tau = GrassmannElement(n_vars, {empty: 1})
        normalization = berezin_integrate(
            multiply(GrassmannElement(n_vars, {occupied: 1}), g_tau), local
        ).terms.get(0, 0)
        assert normalization in (1, -1)
        g_bar_tau = GrassmannElement(n_vars, {occupied: normalization})

        n_empty, n_occupied = _popcount(empty), _popcount(occupied)
        g.append(g_tau)
        g_bar.append(g_bar_tau)
        g_prime.append(g_tau * eta(n_empty))
        g_bar_prime.append(g_bar_tau * eta(n_occupied))
        m_tau.append(n_empty)
        m_bar_tau.append(n_occupied)
    return BasisFamily(m, offset, g, g_bar, g_prime, g_bar_prime, m_tau, m_bar_tau)


def pairing_matrix(left, right, m, offset=0):
    """Matrix of int D psi left[tau] right[rho] over the local variables."""
    local = (2 ** m - 1) << offset
    size = len(left)
    matrix = np.zeros((size, size), dtype=np.int64)
    for tau in range(size):
        for rho in range(size):
            value = berezin_integrate(multiply(left[tau], right[rho]), local)
            matrix[tau, rho] = value.terms.get(0, 0)
    return matrix


def exp_pairing(m):
    """Return (exp(psi_k phi_k), sum g_tau(psi) g'_tau(phi),
    sum gbar'_tau(psi) gbar_tau(phi)) on 2m variables, psi first."""
    n_vars = 2 * m
    psi = basis_family(m, 0, n_vars)
    phi = basis_family(m, m, n_vars)
    bilinear = GrassmannElement.zero(n_vars)
    for k in range(m):
        bilinear = bilinear + GrassmannElement.monomial(n_vars, [k, m + k])
    from_g = GrassmannElement.zero(n_vars)
    from_g_bar = GrassmannElement.zero(n_vars)
    for tau in range(2 ** m):
        from_g = from_g + multiply(psi.g[tau], phi.g_prime[tau])
        from_g_bar = from_g_bar + multiply(psi.g_bar_prime[tau], phi.g_bar[tau])
    return bilinear.exp(), from_g, from_g_bar


# local factors ----------------------------------------------------------------


def local_factor_free(g, parity="even"):
    """Single-block factor of the one-color model on 4 variables.

    Even blocks: v0 = phi(t, x), v1 = phi(t, x+1), v2 = phi(t+1, x),
    v3 = phi(t+1, x+1).  Odd blocks: v0 = phi(t+1, x-1), v1 = phi(t+1, x),
    v2 = phi(t+2, x-1), v3 = phi(t+2, x).

    Parameters
    -----------
    g : int or Fraction
        Coupling, the quartic term carries (1 - g).

    parity : "even" or "odd"
    """
    check_parity(parity)
    mono = GrassmannElement.monomial
    if parity == "even":
        return (
            GrassmannElement.one(4)
            + mono(4, [3, 0])
            + mono(4, [2, 1])
            + mono(4, [3, 2, 1, 0], 1 - g)
        )
    return (
        GrassmannElement.one(4)
        + mono(4, [2, 1])
        + mono(4, [3, 0])
        + mono(4, [2, 3, 0, 1], 1 - g)
    )


# zeta_1..zeta_4 on layer t, zeta'_1..zeta'_4 on layer t + eps
Z1, Z2, Z3, Z4 = 0, 1, 2, 3
Z1P, Z2P, Z3P, Z4P = 4, 5, 6, 7


def kinetic_exponent():
    """The exponent -L_kin: zeta'_3 zeta_1 + zeta'_4 zeta_2 + zeta'_1 zeta_3
    + zeta'_2 zeta_4, diagonal transport of both colors."""
    mono = GrassmannElement.monomial
    return (
        mono(8, [Z3P, Z1])
        + mono(8, [Z4P, Z2])
        + mono(8, [Z1P, Z3])
        + mono(8, [Z2P, Z4])
    )


def interaction_term():
    mono = GrassmannElement.monomial
    first = (mono(8, [Z1P, Z4P]) - mono(8, [Z2P, Z3P])) * (
        mono(8, [Z1, Z4]) - mono(8, [Z2, Z3])
    )
    second = (mono(8, [Z1P, Z3P]) + mono(8, [Z2P, Z4P])) * (
        mono(8, [Z1, Z3]) + mono(8, [Z2, Z4])
    )
    return first - second


def local_factor_interacting():
    """exp(-L_kin) + K_int on the 8 block variables."""
    return kinetic_exponent().exp() + interaction_term()


def chiral_rotation(element, right_turns, left_turns):
    """Rotate colors by quarter turns.

    (zeta_1, zeta_2) and (zeta'_3, zeta'_4) turn by right_turns quarter
    turns, (zeta_3, zeta_4) and (zeta'_1, zeta'_2) by left_turns.  A quarter
    turn maps zeta_R -> zeta_I, zeta_I -> -zeta_R.
    """
    if element.n_vars != 8:
        raise DimensionMismatchError("chiral rotations act on block elements of 8 variables")
    cos_sin = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    var = GrassmannElement.variable
    images = [None] * 8
    for (red, green), turns in (
        ((Z1, Z2), right_turns),
        ((Z3P, Z4P), right_turns),
        ((Z3, Z4), left_turns),
        ((Z1P, Z2P), left_turns),
    ):
        c, s = cos_sin[turns % 4]
        images[red] = var(8, red) * c + var(8, green) * s
        images[green] = var(8, red) * (-s) + var(8, green) * c
    return substitute(element, images)


# step operator extraction -----------------------------------------------------


def _expansion_bases(m, parity):
    n_vars = 2 * m
    inner = basis_family(m, 0, n_vars)
    outer = basis_family(m, m, n_vars)
    if parity == "even":
        return outer.g_bar_prime, inner.g_bar
    return outer.g, inner.g_prime


def extract_step_operator(k, m, parity="even"):
    """Coefficients S_tau_rho of the expansion of a local factor.

    Even parity expands k = gbar'_tau(t+eps) S_tau_rho gbar_rho(t), odd
    parity k = g_tau(t+eps) S_tau_rho g'_rho(t).  Each basis product is a
    single signed monomial, so S follows from coefficient matching.

    Returns
    -------
    SignedPermutation when S is a unique-jump matrix, otherwise a
    DenseOperator holding the exact coefficients.
    """
    check_parity(parity)
    if k.n_vars != 2 * m:
        raise DimensionMismatchError(
            "factor on {} variables, expected {}".format(k.n_vars, 2 * m)
        )
    outer, inner = _expansion_bases(m, parity)
    size = 2 ** m
    matrix = np.zeros((size, size), dtype=object)
    matched = set()
    for tau in range(size):
        for rho in range(size):
            product = multiply(outer[tau], inner[rho])
            if len(product.terms) != 1:
                raise ExpansionError("basis product is not a single monomial")
            (mask, sign), = product.terms.items()
            matched.add(mask)
            matrix[tau, rho] = _normalize(Fraction(k.terms.get(mask, 0)) / sign)
    unmatched = set(k.terms) - matched
    if unmatched:
        raise ExpansionError(
            "{} monomials of the factor have no basis expansion".format(len(unmatched))
        )
    return _as_operator(matrix)


def step_operator_oracle(k, m, parity="even"):
    """S_tau_rho from Berezin integrals instead of coefficient matching.

    Even parity: S = eta_m (-1)^(m mbar_tau) int D psi_out g'_tau
    int D psi_in k g_rho.  Odd parity: S = eta_m (-1)^(m m_tau)
    int D psi_out gbar_tau int D psi_in k gbar'_rho.
    """
    check_parity(parity)
    n_vars = 2 * m
    inner = basis_family(m, 0, n_vars)
    outer = basis_family(m, m, n_vars)
    inner_vars = 2 ** m - 1
    outer_vars = inner_vars << m
    if parity == "even":
        inner_basis, outer_basis, counts = inner.g, outer.g_prime, outer.m_bar_tau
    else:
        inner_basis, outer_basis, counts = inner.g_bar_prime, outer.g_bar, outer.m_tau
    size = 2 ** m
    matrix = np.zeros((size, size), dtype=object)
    for rho in range(size):
        reduced = berezin_integrate(multiply(k, inner_basis[rho]), inner_vars)
        for tau in range(size):
            value = berezin_integrate(multiply(outer_basis[tau], reduced), outer_vars)
            sign = eta(m) * (-1 if (m * counts[tau]) % 2 else 1)
            matrix[tau, rho] = _normalize(Fraction(value.terms.get(0, 0)) * sign)
    return matrix


def _as_operator(matrix):
    if is_unique_jump(matrix):
        return SignedPermutation.from_dense(matrix.astype(np.int64))
    return DenseOperator(matrix)


GaugeResult = namedtuple(
    "GaugeResult", ["d_out", "d_in", "gauged", "conjugate", "global_sign"]
)


def sign_gauge_search(s):
    """Diagonal sign matrices with d_out S d_in a nonnegative permutation.

    Walks the cycles of the permutation, fixing the first sign of each cycle
    to +1 and propagating d[target] = sign * d.  When every cycle closes
    consistently the same signs serve for both sides (conjugate gauge).
    Otherwise d_out is solved from d_in.

    Returns
    -------
    GaugeResult or None when s is not a unique-jump matrix.  global_sign is
    c in {+1, -1} when d_out = c d_in is possible, else None.
    """
    if isinstance(s, DenseOperator):
        if not is_unique_jump(s.entries):
            return None
        s = SignedPermutation.from_dense(s.entries.astype(np.int64))
    elif not isinstance(s, SignedPermutation):
        if not is_unique_jump(s):
            return None
        s = SignedPermutation.from_dense(np.asarray(s).astype(np.int64))

    d = np.zeros(s.dim, dtype=np.int8)
    cycle_ok = {1: True, -1: True}
    for start in range(s.dim):
        if d[start]:
            continue
        d[start] = 1
        current, length, product = start, 0, 1
        while True:
            product *= int(s.sign[current])
            length += 1
            nxt = s.target[current]
            if nxt == start:
                break
            d[nxt] = s.sign[current] * d[current]
            current = nxt
        # d_out = c d_in around a cycle needs c**length == product
        for c in (1, -1):
            if c ** length != product:
                cycle_ok[c] = False

    d_in = d.copy()
    d_out = np.empty_like(d)
    d_out[s.target] = s.sign * d_in
    gauged = SignedPermutation(s.target, d_out[s.target] * s.sign * d_in)
    assert gauged.is_nonnegative()
    global_sign = 1 if cycle_ok[1] else (-1 if cycle_ok[-1] else None)
    return GaugeResult(d_out, d_in, gauged, cycle_ok[1], global_sign)
