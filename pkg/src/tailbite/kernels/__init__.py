"""Hot-kernel backend selection.

The compiled extension is preferred when importable; the pure numpy module
is the fallback.  Set TAILBITE_PURE_PY=1 to force the fallback (used by the
benchmark and the backend-parity tests).  Both backends are bit-identical.
"""

from __future__ import annotations

import os

from . import pure as _pure

if os.environ.get("TAILBITE_PURE_PY"):
    _impl = _pure
    BACKEND = "python"
else:
    try:
        from . import _acs as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = _pure
        BACKEND = "python"

acs_forward = _impl.acs_forward
ml_best_start = _impl.ml_best_start
path_likelihoods = _impl.path_likelihoods


def available_backends() -> dict:
    """Importable backend modules by name (always includes 'python')."""
    backends = {"python": _pure}
    try:
        from . import _acs

        backends["compiled"] = _acs
    except ImportError:
        pass
    return backends
