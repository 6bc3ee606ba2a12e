"""Deterministic evolution of occupation-number layers.

A layer of n_x sites carries two occupation bits per site, packed into
uint64 words with the layout [site0.R, site0.I, site1.R, site1.I, ...].
A block of two neighbouring sites therefore occupies one contiguous nibble
(BlockState): bit 0 = R left, bit 1 = I left, bit 2 = R right,
bit 3 = I right.

The block rule tables below are the only description of the dynamics.  The
packed kernel is checked against `half_step_reference`, which reads the
tables block by block.
"""
from __future__ import absolute_import

import csv

import numpy as np

from .exceptions import InvalidLatticeError, StateSpaceTooLargeError
from .lattice import (
    MAX_EXACT_BITS,
    block_partition,
    check_n_x,
    check_parity,
    other_parity,
    parity_at,
)

MODELS = ("free", "interacting")

# switch gate on the 2-bit state (left, right) of one color
FREE_RULE = np.array([0, 2, 1, 3], dtype=np.uint8)


def _build_interacting_rule():
    table = np.empty(16, dtype=np.uint8)
    for state in range(16):
        if state in (6, 9):
            # single particles of different color: vertical lines
            table[state] = state
        elif state in (5, 10):
            # single particles of equal color: transported, color flipped
            table[state] = 15 - state
        else:
            table[state] = ((state & 3) << 2) | (state >> 2)
    table.setflags(write=False)
    return table


INTERACTING_RULE = _build_interacting_rule()

# two-color free block: the switch gate applied to each color
NIBBLE_SWAP = np.array(
    [((s & 3) << 2) | (s >> 2) for s in range(16)], dtype=np.uint8
)
NIBBLE_SWAP.setflags(write=False)


def check_model(model):
    if model not in MODELS:
        raise InvalidLatticeError(
            "model must be one of {}, got {!r}".format(MODELS, model)
        )
    return model


def rule_table(model):
    """16-entry block table for two-color blocks."""
    if check_model(model) == "interacting":
        return INTERACTING_RULE
    return NIBBLE_SWAP


def block_update_free(pair):
    """Switch gate on one color: 01 <-> 10, 00 and 11 fixed."""
    if not 0 <= pair < 4:
        raise InvalidLatticeError("free block state must be in [0, 4)")
    return int(FREE_RULE[pair])


def block_update_interacting(state):
    """Interacting rule on a BlockState.

    States 9 and 6 are fixed, 5 and 10 are exchanged, every other state
    swaps its left and right nibbles.
    """
    if not 0 <= state < 16:
        raise InvalidLatticeError("block state must be in [0, 16)")
    return int(INTERACTING_RULE[state])


def block_state(n_r_left, n_i_left, n_r_right, n_i_right):
    return int(n_r_left) | int(n_i_left) << 1 | int(n_r_right) << 2 | int(n_i_right) << 3


# packed word helpers ---------------------------------------------------------

_WORD_BITS = 64
_ONE = np.uint64(1)
_TWO = np.uint64(2)
_THREE = np.uint64(3)
_FIFTEEN = np.uint64(15)
_SIXTY_TWO = np.uint64(62)
_NIBBLE_LOW = np.uint64(0x1111111111111111)
_PAIR_LOW = np.uint64(0x3333333333333333)


def n_words(n_x):
    return (2 * n_x + _WORD_BITS - 1) // _WORD_BITS


def pack_occupations(n_r, n_i):
    """Pack occupation arrays of shape (..., n_x) into words (..., n_words)."""
    n_r = np.asarray(n_r, dtype=np.uint8)
    n_i = np.asarray(n_i, dtype=np.uint8)
    if n_r.shape != n_i.shape:
        raise InvalidLatticeError("n_R and n_I must have the same shape")
    if np.any(n_r > 1) or np.any(n_i > 1):
        raise InvalidLatticeError("occupation numbers must be 0 or 1")
    n_x = check_n_x(n_r.shape[-1])
    bits = np.zeros(n_r.shape[:-1] + (n_words(n_x) * _WORD_BITS,), dtype=np.uint8)
    bits[..., 0 : 2 * n_x : 2] = n_r
    bits[..., 1 : 2 * n_x : 2] = n_i
    packed = np.ascontiguousarray(np.packbits(bits, axis=-1, bitorder="little"))
    return packed.view("<u8").astype(np.uint64)


def unpack_words(words, n_x):
    """Inverse of pack_occupations, returns (n_R, n_I) uint8 arrays."""
    words = np.ascontiguousarray(np.asarray(words, dtype=np.uint64).astype("<u8"))
    bits = np.unpackbits(words.view(np.uint8), axis=-1, bitorder="little")
    bits = bits[..., : 2 * n_x]
    return bits[..., 0::2], bits[..., 1::2]


def index_to_words(index, n_x):
    index = int(index)
    if not 0 <= index < 2 ** (2 * n_x):
        raise InvalidLatticeError(
            "state index {} outside [0, 2**{})".format(index, 2 * n_x)
        )
    mask = (1 << _WORD_BITS) - 1
    return np.array(
        [(index >> (_WORD_BITS * k)) & mask for k in range(n_words(n_x))],
        dtype=np.uint64,
    )


def words_to_index(words):
    return sum(int(w) << (_WORD_BITS * k) for k, w in enumerate(words))


def enumerate_layer_words(n_x):
    """Words of every layer of a small lattice in index order, shape
    (2**(2 n_x), 1)."""
    n_x = check_n_x(n_x)
    if 2 * n_x > MAX_EXACT_BITS:
        raise StateSpaceTooLargeError(
            "cannot enumerate 2**{} layers".format(2 * n_x)
        )
    return np.arange(2 ** (2 * n_x), dtype=np.uint64)[:, np.newaxis]


def _even_kernel(words, interacting):
    swapped = ((words >> _TWO) & _PAIR_LOW) | ((words & _PAIR_LOW) << _TWO)
    if not interacting:
        return swapped

    single_left = (words ^ (words >> _ONE)) & _NIBBLE_LOW
    single_right = ((words >> _TWO) ^ (words >> _THREE)) & _NIBBLE_LOW
    color_diff = (words ^ (words >> _TWO)) & _NIBBLE_LOW
    single = single_left & single_right

    fixed = (single & color_diff) * _FIFTEEN
    flipped = (single & ~color_diff) * _FIFTEEN
    return (words & fixed) | ((swapped ^ flipped) & ~fixed)


def _sites_down(words, n_x):
    # site k <- site k + 1, periodic
    top_word, top_shift = divmod(2 * n_x - 2, _WORD_BITS)
    first = words[..., 0] & _THREE
    following = np.zeros_like(words)
    following[..., :-1] = words[..., 1:]
    out = (words >> _TWO) | (following << _SIXTY_TWO)
    out[..., top_word] |= first << np.uint64(top_shift)
    return out


def _sites_up(words, n_x):
    # site k <- site k - 1, periodic
    top_word, top_shift = divmod(2 * n_x - 2, _WORD_BITS)
    shift = np.uint64(top_shift)
    last = (words[..., top_word] >> shift) & _THREE
    cleared = words.copy()
    cleared[..., top_word] &= ~(_THREE << shift)
    preceding = np.zeros_like(cleared)
    preceding[..., 1:] = cleared[..., :-1]
    out = (cleared << _TWO) | (preceding >> _SIXTY_TWO)
    out[..., 0] |= last
    return out


def half_step_words(words, n_x, parity, model="interacting"):
    """Bit-parallel half-step on packed words of shape (..., n_words).

    Odd blocks are handled by rotating the ring of sites by one, applying
    the even kernel and rotating back.
    """
    check_parity(parity)
    interacting = check_model(model) == "interacting"
    words = np.asarray(words, dtype=np.uint64)
    if parity == "even":
        return _even_kernel(words, interacting)
    return _sites_up(_even_kernel(_sites_down(words, n_x), interacting), n_x)


def iter_half_steps(words, n_x, n_half_steps, start_parity="even", model="interacting"):
    """Yield (t, words) for t = 0..n_half_steps, starting with the input."""
    yield 0, words
    parity = start_parity
    for t in range(1, n_half_steps + 1):
        words = half_step_words(words, n_x, parity, model)
        parity = other_parity(parity)
        yield t, words


class LayerConfig(object):
    """Occupation numbers of one time layer, packed into uint64 words.

    Parameters
    -----------
    n_x : int
        Number of sites, even and at least 2.

    words : array of uint64, shape (n_words,)
        Packed bits, 2 * n_x meaningful bits, padding zero.
    """

    __slots__ = ("n_x", "words")

    def __init__(self, n_x, words):
        n_x = check_n_x(n_x)
        words = np.array(words, dtype=np.uint64).reshape(-1)
        if words.shape != (n_words(n_x),):
            raise InvalidLatticeError(
                "expected {} words for n_x={}, got {}".format(
                    n_words(n_x), n_x, words.shape[0]
                )
            )
        n_pad = n_words(n_x) * _WORD_BITS - 2 * n_x
        if n_pad and words[-1] >> np.uint64(_WORD_BITS - n_pad):
            raise InvalidLatticeError("padding bits must be zero")
        words.setflags(write=False)
        self.n_x = n_x
        self.words = words

    @classmethod
    def empty(cls, n_x):
        return cls(n_x, np.zeros(n_words(check_n_x(n_x)), dtype=np.uint64))

    @classmethod
    def filled(cls, n_x):
        ones = np.ones(check_n_x(n_x), dtype=np.uint8)
        return cls.from_occupations(ones, ones)

    @classmethod
    def from_occupations(cls, n_r, n_i):
        n_r = np.asarray(n_r)
        return cls(n_r.shape[-1], pack_occupations(n_r, n_i))

    @classmethod
    def from_index(cls, n_x, index):
        """Layer whose packed bits read as an integer equal index."""
        return cls(n_x, index_to_words(index, check_n_x(n_x)))

    @classmethod
    def random(cls, n_x, generator, p=0.5):
        """Independent occupations with probability p per site and color.

        generator : numpy Generator
        """
        n_x = check_n_x(n_x)
        n_r = generator.random(n_x) < p
        n_i = generator.random(n_x) < p
        return cls.from_occupations(n_r, n_i)

    def occupations(self):
        """Return (n_R, n_I) as uint8 arrays of length n_x."""
        return unpack_words(self.words, self.n_x)

    def index(self):
        return words_to_index(self.words)

    def particle_count(self):
        return int(sum(bin(int(w)).count("1") for w in self.words))

    def half_step(self, parity, model="interacting"):
        return half_step(self, parity, model)

    def __eq__(self, other):
        if not isinstance(other, LayerConfig):
            return NotImplemented
        return self.n_x == other.n_x and np.array_equal(self.words, other.words)

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash((self.n_x, self.words.tobytes()))

    def __repr__(self):
        n_r, n_i = self.occupations()
        glyphs = "".join(".RG#"[r | i << 1] for r, i in zip(n_r, n_i))
        return "LayerConfig(n_x={}, '{}')".format(self.n_x, glyphs)


def half_step(layer, parity, model="interacting"):
    """Apply the block rule to every block of block_partition(parity)."""
    return LayerConfig(layer.n_x, half_step_words(layer.words, layer.n_x, parity, model))


def half_step_reference(layer, parity, model="interacting"):
    """Per-block scalar half-step driven by the rule tables.

    The free model applies `block_update_free` to each color separately, the
    interacting model applies `block_update_interacting` to the 4-bit block.
    """
    check_model(model)
    n_r, n_i = layer.occupations()
    out_r, out_i = n_r.copy(), n_i.copy()
    for left, right in block_partition(parity, layer.n_x).pairs:
        if model == "free":
            for src, dst in ((n_r, out_r), (n_i, out_i)):
                pair = block_update_free(int(src[left]) | int(src[right]) << 1)
                dst[left], dst[right] = pair & 1, pair >> 1
        else:
            state = block_update_interacting(
                block_state(n_r[left], n_i[left], n_r[right], n_i[right])
            )
            out_r[left], out_i[left] = state & 1, (state >> 1) & 1
            out_r[right], out_i[right] = (state >> 2) & 1, state >> 3
    return LayerConfig.from_occupations(out_r, out_i)


def double_step(layer, model="interacting"):
    """Even half-step followed by odd half-step."""
    return half_step(half_step(layer, "even", model), "odd", model)


def invert_half_step(layer, parity, model="interacting"):
    """Inverse of half_step.  Every block rule is an involution."""
    return half_step(layer, parity, model)


class Trajectory(object):
    """Time-ordered layers related by alternating half-steps.

    Parameters
    -----------
    layers : sequence of LayerConfig

    start_parity : "even" or "odd"
        Parity of the half-step taking layers[0] to layers[1].

    model : "free" or "interacting"
    """

    def __init__(self, layers, start_parity="even", model="interacting"):
        self.layers = tuple(layers)
        self.start_parity = check_parity(start_parity)
        self.model = check_model(model)
        if not self.layers:
            raise InvalidLatticeError("a trajectory needs at least one layer")

    @property
    def n_x(self):
        return self.layers[0].n_x

    def __len__(self):
        return len(self.layers)

    def __getitem__(self, t):
        return self.layers[t]

    def __iter__(self):
        return iter(self.layers)

    def __eq__(self, other):
        if not isinstance(other, Trajectory):
            return NotImplemented
        return (
            self.start_parity == other.start_parity
            and self.layers == other.layers
        )

    def parity(self, t):
        """Parity of the half-step leaving layer t."""
        return parity_at(self.start_parity, t)

    def occupations(self):
        """(n_R, n_I) arrays of shape (len(self), n_x)."""
        words = np.stack([layer.words for layer in self.layers])
        return unpack_words(words, self.n_x)

    def is_consistent(self):
        return all(
            half_step(self.layers[t], self.parity(t), self.model) == self.layers[t + 1]
            for t in range(len(self.layers) - 1)
        )

    def to_csv(self, fileobj):
        """Write rows t,x,n_R,n_I, one per site per layer."""
        writer = csv.writer(fileobj, lineterminator="\n")
        writer.writerow(["t", "x", "n_R", "n_I"])
        n_r, n_i = self.occupations()
        for t in range(len(self.layers)):
            for x in range(self.n_x):
                writer.writerow([t, x, int(n_r[t, x]), int(n_i[t, x])])

    @classmethod
    def from_csv(cls, fileobj, start_parity="even", model="interacting"):
        rows = list(csv.DictReader(fileobj))
        if not rows:
            raise InvalidLatticeError("empty trajectory file")
        n_t = max(int(r["t"]) for r in rows) + 1
        n_x = max(int(r["x"]) for r in rows) + 1
        n_r = np.zeros((n_t, n_x), dtype=np.uint8)
        n_i = np.zeros((n_t, n_x), dtype=np.uint8)
        for row in rows:
            t, x = int(row["t"]), int(row["x"])
            n_r[t, x] = int(row["n_R"])
            n_i[t, x] = int(row["n_I"])
        layers = [LayerConfig.from_occupations(n_r[t], n_i[t]) for t in range(n_t)]
        return cls(layers, start_parity=start_parity, model=model)


def evolve(initial, n_half_steps, start_parity="even", model="interacting"):
    """Iterate half-steps with alternating parity.

    Returns
    -------
    Trajectory with n_half_steps + 1 layers.
    """
    if n_half_steps < 0:
        raise InvalidLatticeError("n_half_steps must be non-negative")
    check_parity(start_parity)
    layers = [
        LayerConfig(initial.n_x, words)
        for _, words in iter_half_steps(
            initial.words, initial.n_x, n_half_steps, start_parity, model
        )
    ]
    return Trajectory(layers, start_parity=start_parity, model=model)


def evolve_backward(final, n_half_steps, last_parity, model="interacting"):
    """Undo n_half_steps half-steps, the latest of which had last_parity.

    Returns the layer the forward evolution started from.
    """
    layer = final
    parity = check_parity(last_parity)
    for _ in range(n_half_steps):
        layer = invert_half_step(layer, parity, model)
        parity = other_parity(parity)
    return layer


def influence_window(n_double_steps):
    """Site offsets at time t that can influence a watched block at
    t + 2 n eps.

    Offsets are relative to the even site x of the watched block.  For
    n >= 1 the watched block is the odd-partition block (x-1, x) written by
    the last half-step; for n = 0 it is the even block (x, x+1) itself.
    """
    if n_double_steps < 0:
        raise InvalidLatticeError("n_double_steps must be non-negative")
    if n_double_steps == 0:
        return (0, 1)
    return (-2 * n_double_steps, 2 * n_double_steps - 1)


def watched_sites(n_double_steps, x):
    if n_double_steps == 0:
        return (x, x + 1)
    return (x - 1, x)


# corner patterns --------------------------------------------------------------
#
# An 8-bit corner pattern stores the block at t in bits 0-3 and the block at
# t + eps in bits 4-7, each in BlockState layout.

def corner_pattern_valid(pattern, model="interacting"):
    lower, upper = pattern & 15, pattern >> 4
    return int(rule_table(model)[lower]) == upper


def _corner(pattern, corner):
    # corners: 0 lower left, 1 lower right, 2 upper left, 3 upper right
    return (pattern >> (2 * corner)) & 3


def rotate_corner_pattern(pattern):
    """Rotate a corner pattern by pi/2 in the (t, x) plane.

    lower left -> lower right -> upper right -> upper left -> lower left
    """
    lower_left, lower_right, upper_left, upper_right = (
        _corner(pattern, c) for c in range(4)
    )
    rotated = (upper_left, lower_left, upper_right, lower_right)
    return sum(value << (2 * c) for c, value in enumerate(rotated))
