"""Per-state reliability along a survivor path and anchor-state selection.

A merge's max-min candidate gap measures how safe that survivor decision
was.  Walking every discarded candidate back to where it rejoins the chosen
path turns those gaps into a per-position likelihood: the smallest gap among
all later merges whose discarded path did not pass through the position.
A moving sum then smooths the sequence before the most reliable position is
picked as the anchor for the constrained second decode.

Window handling: the smoothing is an unnormalized sum over full forward
windows only, so a candidate position must have ``window`` consecutive
likelihood values ahead of it.  The final path position never competes: no
later merge can inform it, so its likelihood is always the placeholder cap.
Normalizing shrunken windows at the path end instead (a clamped mean) lets
those weakly-informed tail positions win the argmax and measurably ruins
the anchor: the state-decision error stops improving with window size.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .engine import ForwardRecord
from .errors import ConfigurationError


def compute_state_likelihoods(record: ForwardRecord, path: np.ndarray) -> np.ndarray:
    """Likelihood of each position of ``path`` (length T+1).

    Positions that no discarded path ever excluded (always at least the
    final one, which no later merge can inform) get the largest finite
    likelihood observed in the block, or 0.0 if there is none, keeping the
    smoothing finite without letting placeholders dominate.
    """
    if record.deltas is None:
        raise ValueError("forward pass was run without delta recording")
    raw = kernels.path_likelihoods(
        record.trellis.pred_state,
        record.choice,
        record.deltas,
        np.ascontiguousarray(path, dtype=np.int64),
    )
    finite = raw[np.isfinite(raw)]
    cap = float(finite.max()) if finite.size else 0.0
    return np.minimum(raw, cap)


def windowed_likelihood(likelihoods, window: int) -> np.ndarray:
    """Moving sums over full forward windows.

    Entry i is the sum of the ``window`` values starting at i, so the result
    has ``len(likelihoods) - window + 1`` entries; no shrunken partial
    windows are produced.  With window = 1 this is the input itself.
    """
    lik = np.asarray(likelihoods, dtype=np.float64)
    if lik.ndim != 1 or lik.size == 0:
        raise ValueError("likelihood sequence must be a non-empty 1-d array")
    if not 1 <= window <= lik.size:
        raise ConfigurationError(
            f"window {window} out of range 1..{lik.size} for this sequence"
        )
    csum = np.concatenate(([0.0], np.cumsum(lik)))
    return csum[window:] - csum[: lik.size - window + 1]


def select_anchor(likelihoods, path, window: int) -> tuple[int, int]:
    """Path position and state with the highest windowed likelihood.

    Candidates are positions 0 .. T-window of a (T+1)-long path: the final
    position is dropped before smoothing (its likelihood carries no merge
    evidence) and every candidate needs a full window after it.  Ties break
    to the lowest position.
    """
    lik = np.asarray(likelihoods, dtype=np.float64)
    if lik.size < 2:
        raise ValueError("need at least two path positions to anchor")
    scores = windowed_likelihood(lik[:-1], window)
    pos = int(np.argmax(scores))
    return pos, int(path[pos])


@dataclass(eq=False)
class ReliabilityPath:
    """A traceback path with its raw and windowed likelihoods and anchor."""

    states: np.ndarray
    likelihoods: np.ndarray
    windowed: np.ndarray
    anchor: tuple[int, int]


def analyze_path(record: ForwardRecord, path: np.ndarray, window: int) -> ReliabilityPath:
    """Bundle likelihoods, moving sums, and anchor for one traceback."""
    lik = compute_state_likelihoods(record, path)
    win = windowed_likelihood(lik[:-1], window)
    pos = int(np.argmax(win))
    return ReliabilityPath(
        states=path, likelihoods=lik, windowed=win, anchor=(pos, int(path[pos]))
    )
