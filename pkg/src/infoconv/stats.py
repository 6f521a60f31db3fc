"""Pearson product-moment correlation with a two-sided t-test p-value."""

import math

import numpy as np
from scipy.special import betainc

from .errors import UndefinedCorrelationError


def pearson(xs, ys):
    """Correlation coefficient and two-sided p-value.

    The p-value uses ``t = r sqrt((n-2) / (1-r^2))`` with ``n - 2`` degrees of
    freedom, through the regularized incomplete beta function.

    Raises
    ------
    UndefinedCorrelationError
        For mismatched lengths, fewer than 3 points, or zero variance.
    """
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise UndefinedCorrelationError("xs and ys must be equal-length vectors")
    n = x.size
    if n < 3:
        raise UndefinedCorrelationError(f"need at least 3 points, got {n}")
    dx = x - x.mean()
    dy = y - y.mean()
    sxx, syy = float(dx @ dx), float(dy @ dy)
    scale = max(np.abs(x).max(), np.abs(y).max(), 1.0)
    if sxx <= (1e-12 * scale) ** 2 * n or syy <= (1e-12 * scale) ** 2 * n:
        raise UndefinedCorrelationError("zero variance")
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    r = min(max(r, -1.0), 1.0)
    df = n - 2
    if abs(r) == 1.0:
        return r, 0.0
    t2 = r * r * df / (1.0 - r * r)
    p = float(betainc(0.5 * df, 0.5, df / (df + t2)))
    return r, p


def pearson_or_none(xs, ys):
    """Like :func:`pearson` but ``(None, None)`` when undefined."""
    try:
        return pearson(xs, ys)
    except UndefinedCorrelationError:
        return None, None
