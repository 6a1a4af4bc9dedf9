"""Array kernels for batched degree arithmetic.

Two interchangeable backends share one API: numba-compiled loops
(``_numba``) and vectorized numpy (``_numpy``).  The numba path is used
when numba imports cleanly and ``VAGUESPACE_NO_NUMBA`` is unset or "0";
otherwise the numpy path is bound.  Both modules stay importable so the
benchmark and the parity tests can drive them side by side.
"""

import os

from . import _numpy as numpy_backend

try:
    from . import _numba as numba_backend
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba_backend = None


def _select():
    flag = os.environ.get("VAGUESPACE_NO_NUMBA", "").strip().lower()
    if numba_backend is None or flag not in ("", "0", "false", "no"):
        return numpy_backend
    return numba_backend


backend = _select()
BACKEND = backend.NAME

tnorm = backend.tnorm
tconorm = backend.tconorm
negation = backend.negation
fold_tnorm = backend.fold_tnorm
fold_tconorm = backend.fold_tconorm
residuum = backend.residuum
residuum_oracle = backend.residuum_oracle
axiom_flags = backend.axiom_flags

__all__ = [
    "BACKEND",
    "axiom_flags",
    "backend",
    "fold_tconorm",
    "fold_tnorm",
    "negation",
    "numba_backend",
    "numpy_backend",
    "residuum",
    "residuum_oracle",
    "tconorm",
    "tnorm",
]
