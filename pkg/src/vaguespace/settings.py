"""Process-wide comparison tolerance for degrees.

Functions taking ``tol=None`` read the current value here; the CLI's
``--tol`` flag overrides it for the whole run.
"""

DEFAULT_TOLERANCE = 1e-9

_tolerance = DEFAULT_TOLERANCE


def get_tolerance() -> float:
    return _tolerance


def set_tolerance(value: float) -> None:
    global _tolerance
    if not value >= 0.0:
        raise ValueError(f"tolerance must be non-negative, got {value!r}")
    _tolerance = float(value)


def resolve(tol: float | None) -> float:
    return _tolerance if tol is None else tol
