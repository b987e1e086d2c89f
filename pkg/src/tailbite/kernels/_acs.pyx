# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled add-compare-select kernels.

Drop-in twins of ``tailbite.kernels.pure``: identical tie breaks and float
operation order, so outputs are bit-identical across backends.
"""

from libc.math cimport fabs
from libc.stdint cimport int64_t

import numpy as np


def acs_forward(const int[:, ::1] pred_state, const int[:, ::1] pred_word,
                const double[:, ::1] cost_words, const double[::1] gamma0,
                bint record_deltas):
    cdef Py_ssize_t n_stages = cost_words.shape[0]
    cdef Py_ssize_t n_states = pred_state.shape[0]
    gamma_arr = np.empty((n_stages + 1, n_states), dtype=np.float64)
    choice_arr = np.empty((n_stages, n_states), dtype=np.uint8)
    deltas_arr = np.empty((n_stages, n_states), dtype=np.float64) if record_deltas else None
    scratch0 = np.empty(n_states, dtype=np.float64)
    scratch1 = np.empty(n_states, dtype=np.float64)
    pred = np.ascontiguousarray(pred_state, dtype=np.intp)
    cdef double[:, ::1] gamma = gamma_arr
    cdef unsigned char[:, ::1] choice = choice_arr
    cdef double[:, ::1] deltas = deltas_arr if record_deltas else gamma_arr
    cdef double[::1] costs0 = scratch0
    cdef double[::1] costs1 = scratch1
    cdef Py_ssize_t[:, ::1] preds = pred
    cdef double* c0 = &costs0[0]
    cdef double* c1 = &costs1[0]
    cdef Py_ssize_t* pp = &preds[0, 0]
    cdef double* grow
    cdef double* nrow
    cdef double* drow
    cdef unsigned char* crow
    cdef Py_ssize_t i, k
    cdef double m0, m1

    for k in range(n_states):
        gamma[0, k] = gamma0[k]
    for i in range(n_stages):
        for k in range(n_states):
            c0[k] = cost_words[i, pred_word[k, 0]]
            c1[k] = cost_words[i, pred_word[k, 1]]
        grow = &gamma[i, 0]
        nrow = &gamma[i + 1, 0]
        crow = &choice[i, 0]
        for k in range(n_states):
            m0 = grow[pp[2 * k]] + c0[k]
            m1 = grow[pp[2 * k + 1]] + c1[k]
            # branchless select keeps the pipeline full on noisy data
            crow[k] = m1 < m0
            nrow[k] = m1 if m1 < m0 else m0
        if record_deltas:
            drow = &deltas[i, 0]
            for k in range(n_states):
                m0 = grow[pp[2 * k]] + c0[k]
                m1 = grow[pp[2 * k + 1]] + c1[k]
                drow[k] = fabs(m1 - m0)
    return gamma_arr, choice_arr, deltas_arr


def ml_best_start(const int[:, ::1] pred_state, const int[:, ::1] pred_word,
                  const double[:, ::1] cost_words, double saturation):
    # All constrained passes advance in lockstep: row r of the metric grid
    # is the pass that started (and must end) in state r.  Each row runs the
    # exact per-start recursion, so the result matches a sequential scan.
    cdef Py_ssize_t n_stages = cost_words.shape[0]
    cdef Py_ssize_t n_states = pred_state.shape[0]
    gamma_arr = np.full((n_states, n_states), saturation, dtype=np.float64)
    nxt_arr = np.empty((n_states, n_states), dtype=np.float64)
    choices_arr = np.empty((n_stages, n_states, n_states), dtype=np.uint8)
    scratch = np.empty((2, n_states), dtype=np.float64)
    pred = np.ascontiguousarray(pred_state, dtype=np.intp)
    scratch0 = np.empty(n_states, dtype=np.float64)
    scratch1 = np.empty(n_states, dtype=np.float64)
    cdef double[:, ::1] gamma = gamma_arr
    cdef double[:, ::1] nxt = nxt_arr
    cdef double[::1] costs0 = scratch0
    cdef double[::1] costs1 = scratch1
    cdef Py_ssize_t[:, ::1] preds = pred
    cdef unsigned char[:, :, ::1] choices = choices_arr
    cdef double* grow
    cdef double* nrow
    cdef double* c0 = &costs0[0]
    cdef double* c1 = &costs1[0]
    cdef Py_ssize_t* pp = &preds[0, 0]
    cdef unsigned char* crow
    cdef Py_ssize_t i, r, k
    cdef double m0, m1
    cdef double best_metric
    cdef Py_ssize_t best_state

    for r in range(n_states):
        gamma[r, r] = 0.0
    for i in range(n_stages):
        # branch costs depend only on the merging state, not the start row
        for k in range(n_states):
            c0[k] = cost_words[i, pred_word[k, 0]]
            c1[k] = cost_words[i, pred_word[k, 1]]
        for r in range(n_states):
            grow = &gamma[r, 0]
            nrow = &nxt[r, 0]
            crow = &choices[i, r, 0]
            for k in range(n_states):
                m0 = grow[pp[2 * k]] + c0[k]
                m1 = grow[pp[2 * k + 1]] + c1[k]
                # branchless select keeps the pipeline full on noisy data
                crow[k] = m1 < m0
                nrow[k] = m1 if m1 < m0 else m0
        gamma_arr, nxt_arr = nxt_arr, gamma_arr
        gamma = gamma_arr
        nxt = nxt_arr
    best_state = 0
    best_metric = gamma[0, 0]
    for r in range(1, n_states):
        if gamma[r, r] < best_metric:
            best_metric = gamma[r, r]
            best_state = r
    return int(best_state), best_metric, np.ascontiguousarray(choices_arr[:, best_state, :])


def path_likelihoods(const int[:, ::1] pred_state, const unsigned char[:, ::1] choice,
                     const double[:, ::1] deltas, const int64_t[::1] path):
    cdef Py_ssize_t n_stages = choice.shape[0]
    out_arr = np.full(n_stages + 1, np.inf)
    cdef double[::1] lik = out_arr
    cdef Py_ssize_t j, t, i, rejoin
    cdef int s, s_j, slot
    cdef double gap

    for j in range(1, n_stages + 1):
        s_j = <int> path[j]
        slot = choice[j - 1, s_j]
        gap = deltas[j - 1, s_j]
        s = pred_state[s_j, 1 - slot]
        t = j - 1
        while True:
            if s == <int> path[t]:
                rejoin = t
                break
            if t == 0:
                rejoin = -1
                break
            s = pred_state[s, choice[t - 1, s]]
            t -= 1
        for i in range(rejoin + 1, j):
            if gap < lik[i]:
                lik[i] = gap
    return out_arr
