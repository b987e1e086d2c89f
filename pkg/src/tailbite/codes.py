"""Convolutional code definitions and their trellis transition structure.

Conventions (fixed so that every test vector is bit-exact):

* State at time ``i`` holds the last ``M = K - 1`` input bits,
  ``(u[i-1], ..., u[i-M])``, with the newest bit ``u[i-1]`` in the MSB.
* A generator polynomial's MSB multiplies the current input bit, so octal
  7 = 111 computes ``u[i] ^ u[i-1] ^ u[i-2]``.  This matches the standard
  tables for the (171,133) and (171,133,165) codes.
* ``output word`` packs the per-generator output bits MSB-first: generator 0
  produces the word's MSB and the first coded bit of the stage.

Only binary-input rate 1/n feedforward codes are supported.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError


@dataclass(frozen=True)
class CodeSpec:
    """A rate 1/n_out feedforward convolutional code.

    generators are octal-coded integers (pass e.g. ``0o171`` or use
    :meth:`from_octal`); each must have degree < constraint_length and at
    least one must have degree exactly constraint_length - 1, otherwise the
    declared constraint length is wrong.
    """

    n_out: int
    constraint_length: int
    generators: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n_out < 1:
            raise ConfigurationError(f"n_out must be >= 1, got {self.n_out}")
        if self.constraint_length < 2:
            raise ConfigurationError(
                f"constraint_length must be >= 2, got {self.constraint_length}"
            )
        gens = tuple(int(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if len(gens) != self.n_out:
            raise ConfigurationError(
                f"expected {self.n_out} generators, got {len(gens)}"
            )
        for g in gens:
            if g == 0:
                raise ConfigurationError("zero generator polynomial")
            if g.bit_length() > self.constraint_length:
                raise ConfigurationError(
                    f"generator {g:o} (octal) has degree >= K={self.constraint_length}"
                )
        if max(g.bit_length() for g in gens) != self.constraint_length:
            raise ConfigurationError(
                "no generator reaches degree K-1; constraint_length is overstated"
            )

    @classmethod
    def from_octal(cls, text: str, constraint_length: int | None = None) -> "CodeSpec":
        """Build from octal text such as ``"171,133"``.

        When constraint_length is omitted it is taken from the widest
        generator.
        """
        gens = tuple(int(tok, 8) for tok in text.replace(" ", "").split(",") if tok)
        if not gens:
            raise ConfigurationError(f"no generators in {text!r}")
        if constraint_length is None:
            constraint_length = max(g.bit_length() for g in gens)
        return cls(n_out=len(gens), constraint_length=constraint_length, generators=gens)

    @property
    def memory(self) -> int:
        return self.constraint_length - 1

    @property
    def n_states(self) -> int:
        return 1 << self.memory

    @property
    def rate(self) -> float:
        return 1.0 / self.n_out


@dataclass(frozen=True, eq=False)
class Trellis:
    """Unrolled one-stage transition structure of a :class:`CodeSpec`.

    All arrays are laid out for the ACS kernels:

    * ``next_state[s, b]``: state reached from ``s`` on input bit ``b``.
    * ``output_word[s, b]``: n_out-bit output word on that edge, MSB = gen 0.
    * ``pred_state[s, j]``: the two predecessors of ``s``; slot 0 holds the
      lower-indexed predecessor so that kernels break ACS ties toward it.
    * ``pred_word[s, j]``: output word on the edge ``pred_state[s, j] -> s``.
    * ``pred_bit[s]``: input bit carried by both incoming edges of ``s``
      (the state's MSB).
    * ``word_bits[w, c]``: bit c of word w, used to turn an LLR block into
      per-stage branch costs with one matmul.

    Immutable after construction; safe to share across concurrent decoders.
    """

    spec: CodeSpec
    next_state: np.ndarray
    output_word: np.ndarray
    pred_state: np.ndarray
    pred_word: np.ndarray
    pred_bit: np.ndarray
    word_bits: np.ndarray

    @property
    def n_states(self) -> int:
        return self.spec.n_states

    @property
    def n_out(self) -> int:
        return self.spec.n_out

    @property
    def memory(self) -> int:
        return self.spec.memory

    def output_bits(self, state: int, bit: int) -> np.ndarray:
        """Output bits (gen 0 first) on the edge leaving ``state`` on ``bit``."""
        return self.word_bits[self.output_word[state, bit]].copy()

    def predecessors(self, state: int) -> list[tuple[int, int]]:
        """The two (predecessor state, input bit) pairs feeding ``state``."""
        b = int(self.pred_bit[state])
        return [(int(self.pred_state[state, 0]), b), (int(self.pred_state[state, 1]), b)]


def _edge_output_word(spec: CodeSpec, state: int, bit: int) -> int:
    # Register contents during the transition: current bit then state bits.
    register = (bit << spec.memory) | state
    word = 0
    for g in spec.generators:
        word = (word << 1) | ((g & register).bit_count() & 1)
    return word


def build_trellis(spec: CodeSpec) -> Trellis:
    """Construct the transition tables for ``spec``.

    Every state has exactly two outgoing and two incoming edges; the input
    bit on an incoming edge equals the state's MSB (the newest stored bit).
    """
    m = spec.memory
    s_count = spec.n_states
    next_state = np.empty((s_count, 2), dtype=np.int32)
    output_word = np.empty((s_count, 2), dtype=np.int32)
    for s in range(s_count):
        for b in (0, 1):
            next_state[s, b] = (b << (m - 1)) | (s >> 1)
            output_word[s, b] = _edge_output_word(spec, s, b)

    pred_state = np.empty((s_count, 2), dtype=np.int32)
    pred_word = np.empty((s_count, 2), dtype=np.int32)
    pred_bit = np.empty(s_count, dtype=np.int8)
    low_mask = (1 << (m - 1)) - 1
    for s in range(s_count):
        b = s >> (m - 1)
        pred_bit[s] = b
        for j in (0, 1):
            p = ((s & low_mask) << 1) | j
            pred_state[s, j] = p
            pred_word[s, j] = output_word[p, b]

    n_words = 1 << spec.n_out
    word_bits = np.empty((n_words, spec.n_out), dtype=np.uint8)
    for w in range(n_words):
        for c in range(spec.n_out):
            word_bits[w, c] = (w >> (spec.n_out - 1 - c)) & 1

    for arr in (next_state, output_word, pred_state, pred_word, pred_bit, word_bits):
        arr.setflags(write=False)
    return Trellis(
        spec=spec,
        next_state=next_state,
        output_word=output_word,
        pred_state=pred_state,
        pred_word=pred_word,
        pred_bit=pred_bit,
        word_bits=word_bits,
    )
