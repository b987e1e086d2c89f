"""Single Viterbi forward pass with optional merge-gap recording, traceback,
and the shared branch-metric convention.

Metric convention: costs to MINIMIZE.  The cost of a branch is the sum of
the LLRs (lambda = log P(bit=0)/P(bit=1)) at the positions where the branch's
expected bit is 1, so the transmitted sequence has the smallest expected
cost.  Costs are strictly additive across stages.

ACS tie break: on equal candidate metrics the lower-indexed predecessor
state wins.  Final-state argmin ties go to the lowest state index.  Both
conventions make every decode bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .codes import Trellis


@dataclass(frozen=True)
class StartConstraint:
    """Initial metric assignment for a forward pass.

    state=None is the open start (every initial metric zero); otherwise the
    given state gets metric 0 and every other state the saturation value.
    """

    state: int | None = None

    @property
    def is_open(self) -> bool:
        return self.state is None


OPEN_START = StartConstraint()


@dataclass(eq=False)
class ForwardRecord:
    """Survivor structure produced by one forward pass.

    gamma[i, k]: accumulated metric of the survivor into state k at stage i
    (row 0 holds the start metrics).  choice[i-1, k]: which slot of
    ``trellis.pred_state[k]`` the survivor came through.  deltas[i-1, k]:
    max-min gap of the two candidates merging at (k, i); None unless the
    pass recorded them.  update_count is the number of stages processed.
    """

    trellis: Trellis
    gamma: np.ndarray
    choice: np.ndarray
    deltas: np.ndarray | None
    saturation: float

    @property
    def n_stages(self) -> int:
        return self.choice.shape[0]

    @property
    def update_count(self) -> int:
        return self.n_stages

    def metric(self, state: int, stage: int) -> float:
        return float(self.gamma[stage, state])

    def delta(self, state: int, stage: int) -> float:
        if self.deltas is None:
            raise ValueError("forward pass did not record deltas")
        return float(self.deltas[stage - 1, state])

    def survivor_predecessor(self, state: int, stage: int) -> int:
        return int(self.trellis.pred_state[state, self.choice[stage - 1, state]])


def branch_metric(llr_segment, expected_word: int) -> float:
    """Cost of one branch against an expected n_out-bit output word."""
    seg = np.asarray(llr_segment, dtype=np.float64)
    n = seg.size
    total = 0.0
    for c in range(n):
        if (expected_word >> (n - 1 - c)) & 1:
            total += float(seg[c])
    return total


def stage_costs(trellis: Trellis, llrs) -> np.ndarray:
    """Per-stage cost of every possible output word, shape (T, 2**n_out)."""
    arr = np.ascontiguousarray(llrs, dtype=np.float64)
    n = trellis.n_out
    if arr.ndim != 1 or arr.size == 0 or arr.size % n:
        raise ValueError(f"LLR block length {arr.size} is not a multiple of n_out={n}")
    return arr.reshape(-1, n) @ trellis.word_bits.T


def saturation_metric(llrs) -> float:
    """Finite stand-in for +inf: 10x the largest possible accumulated |metric|.

    No surviving path can come within half of it; forward_pass asserts that.
    """
    return 10.0 * (float(np.abs(np.asarray(llrs, dtype=np.float64)).sum()) + 1.0)


def forward_pass(
    trellis: Trellis,
    llrs,
    start: StartConstraint = OPEN_START,
    record_deltas: bool = False,
) -> ForwardRecord:
    """Run the add-compare-select recursion over the whole LLR block."""
    costs = stage_costs(trellis, llrs)
    n_states = trellis.n_states
    sat = saturation_metric(llrs)
    if start.is_open:
        gamma0 = np.zeros(n_states, dtype=np.float64)
    else:
        if not 0 <= start.state < n_states:
            raise ValueError(f"start state {start.state} out of range for {n_states} states")
        gamma0 = np.full(n_states, sat, dtype=np.float64)
        gamma0[start.state] = 0.0
    gamma, choice, deltas = kernels.acs_forward(
        trellis.pred_state, trellis.pred_word, costs, gamma0, record_deltas
    )
    n_stages = costs.shape[0]
    if start.is_open or n_stages >= trellis.memory:
        assert gamma[n_stages].min() < sat / 2.0, "saturation headroom violated"
    return ForwardRecord(
        trellis=trellis, gamma=gamma, choice=choice, deltas=deltas, saturation=sat
    )


def traceback(record: ForwardRecord, final_state: int):
    """Walk survivor pointers back from ``final_state``.

    Returns (states, info_bits): the state path sigma_0..sigma_T (length
    T+1 with sigma_T = final_state) and the T info bits along it.  With an
    open start the path need not be tailbiting.
    """
    return _traceback_arrays(record.trellis, record.choice, final_state)


def _traceback_arrays(trellis: Trellis, choice: np.ndarray, final_state: int):
    n_stages = choice.shape[0]
    msb = trellis.memory - 1
    pred = trellis.pred_state
    path = np.empty(n_stages + 1, dtype=np.int64)
    bits = np.empty(n_stages, dtype=np.uint8)
    s = int(final_state)
    path[n_stages] = s
    for i in range(n_stages, 0, -1):
        # The input bit on the edge into sigma_i is the state's newest (MSB) bit.
        bits[i - 1] = (s >> msb) & 1
        s = int(pred[s, choice[i - 1, s]])
        path[i - 1] = s
    return path, bits


def best_final_state(record: ForwardRecord) -> int:
    """Final state with minimum accumulated metric (lowest index on ties)."""
    return int(np.argmin(record.gamma[-1]))
