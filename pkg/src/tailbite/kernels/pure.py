"""Pure numpy implementations of the hot decoding kernels.

Fallback for environments without the compiled extension; semantics (tie
breaks, float operation order) match ``tailbite.kernels._acs`` exactly so the
two backends produce bit-identical results.
"""

from __future__ import annotations

import numpy as np


def acs_forward(pred_state, pred_word, cost_words, gamma0, record_deltas):
    """One add-compare-select forward pass over the whole block.

    pred_state, pred_word: (S, 2) int32 trellis tables; slot 0 holds the
    lower-indexed predecessor, which wins ties.
    cost_words: (T, 2**n_out) per-stage cost of each output word.
    gamma0: (S,) initial accumulated metrics.

    Returns (gamma, choice, deltas): gamma (T+1, S) float64 with row 0 =
    gamma0; choice (T, S) uint8 survivor slot; deltas (T, S) float64
    max-min candidate gaps, or None when record_deltas is false.
    """
    n_stages = cost_words.shape[0]
    n_states = pred_state.shape[0]
    gamma = np.empty((n_stages + 1, n_states), dtype=np.float64)
    gamma[0] = gamma0
    choice = np.empty((n_stages, n_states), dtype=np.uint8)
    deltas = np.empty((n_stages, n_states), dtype=np.float64) if record_deltas else None
    p0 = pred_state[:, 0]
    p1 = pred_state[:, 1]
    w0 = pred_word[:, 0]
    w1 = pred_word[:, 1]
    for i in range(n_stages):
        cw = cost_words[i]
        m0 = gamma[i, p0] + cw[w0]
        m1 = gamma[i, p1] + cw[w1]
        take1 = m1 < m0
        choice[i] = take1
        gamma[i + 1] = np.where(take1, m1, m0)
        if record_deltas:
            np.abs(m1 - m0, out=deltas[i])
    return gamma, choice, deltas


def ml_best_start(pred_state, pred_word, cost_words, saturation):
    """One constrained forward pass per start state; keep the best.

    Each pass pins start state s0 (all other initial metrics at
    ``saturation``) and is scored by its final metric at s0.  All passes
    advance in lockstep (row r of ``gamma`` is the pass started at r); each
    row's recursion is exactly the per-start recursion, so results match a
    one-start-at-a-time scan bit for bit.  Ties go to the lowest start state.

    Returns (best_state, best_metric, choice) where choice is the (T, S)
    survivor-slot table of the winning pass.
    """
    n_stages = cost_words.shape[0]
    n_states = pred_state.shape[0]
    p0 = pred_state[:, 0]
    p1 = pred_state[:, 1]
    w0 = pred_word[:, 0]
    w1 = pred_word[:, 1]
    gamma = np.full((n_states, n_states), saturation, dtype=np.float64)
    np.fill_diagonal(gamma, 0.0)
    choices = np.empty((n_stages, n_states, n_states), dtype=np.uint8)
    for i in range(n_stages):
        cw = cost_words[i]
        m0 = gamma[:, p0] + cw[w0]
        m1 = gamma[:, p1] + cw[w1]
        take1 = m1 < m0
        choices[i] = take1
        gamma = np.where(take1, m1, m0)
    finals = np.diagonal(gamma)
    best_state = int(np.argmin(finals))
    best_metric = float(finals[best_state])
    return best_state, best_metric, np.ascontiguousarray(choices[:, best_state, :])


def path_likelihoods(pred_state, choice, deltas, path):
    """Per-position likelihoods of a survivor path.

    For each merge stage j the discarded candidate is traced back through
    the survivor pointers until it rejoins the path at some time d (or d=-1
    if it never does); positions d < i < j then take the minimum with the
    merge's delta.  Positions never updated stay +inf (callers decide the
    saturation policy).
    """
    n_stages = choice.shape[0]
    lik = np.full(n_stages + 1, np.inf)
    for j in range(1, n_stages + 1):
        s_j = int(path[j])
        slot = int(choice[j - 1, s_j])
        gap = float(deltas[j - 1, s_j])
        s = int(pred_state[s_j, 1 - slot])
        t = j - 1
        while True:
            if s == int(path[t]):
                rejoin = t
                break
            if t == 0:
                rejoin = -1
                break
            s = int(pred_state[s, choice[t - 1, s]])
            t -= 1
        for i in range(rejoin + 1, j):
            if gap < lik[i]:
                lik[i] = gap
    return lik
