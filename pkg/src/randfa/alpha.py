"""The reachable fraction ``alpha_k``: the positive root of ``x = 1 - exp(-k x)``.

The equation always has the trivial root 0. For ``k >= 2`` it has one more
root in ``(1/2, 1)``; for ``k = 1`` the trivial root is the only one.

In Lambert-W form, ``alpha_k = 1 + W(z)/k`` with ``z = -k exp(-k)`` in
``(-1/e, 0)``. Both real branches solve ``w exp(w) = z`` there:
``W_{-1}(z) = -k`` gives the trivial root, and the principal branch
``W_0(z) = -k (1 - alpha_k)`` in ``(-1, 0)`` gives ``alpha_k``. So
:func:`lambert_w_check` stays on the principal branch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidParameterError, NoPositiveRootError

RESIDUAL_TOL = 1e-12
_MAX_ITER = 200


@dataclass(frozen=True)
class AlphaResult:
    """``complement`` is ``1 - alpha`` evaluated as ``exp(-k alpha)``. It stays
    accurate for k >= 37, where ``alpha`` itself rounds to 1.0."""

    k: int
    alpha: float
    residual: float
    iterations: int
    complement: float


def _check_k(k: int) -> int:
    if isinstance(k, bool) or int(k) != k:
        raise InvalidParameterError(f"k must be an integer, got {k!r}")
    k = int(k)
    if k <= 0:
        raise InvalidParameterError(f"k must be positive, got {k}")
    if k == 1:
        raise NoPositiveRootError("x = 1 - exp(-x) has no positive solution (k = 1)")
    return k


def residual(k: int, x: float) -> float:
    return abs(x - (1.0 - math.exp(-k * x)))


def fixed_point_alpha(k: int, tol: float = 1e-15, max_iter: int = 10_000) -> float:
    """Iterate ``x <- 1 - exp(-k x)`` from ``x = 1``; contracts since ``k e^{-k alpha} < 1``."""
    k = _check_k(k)
    x = 1.0
    for _ in range(max_iter):
        nxt = -math.expm1(-k * x)
        if abs(nxt - x) <= tol:
            return nxt
        x = nxt
    return x


def solve_alpha(k: int) -> AlphaResult:
    """Safeguarded Newton on ``f(x) = x - 1 + exp(-k x)`` inside ``[1/2, 1]``."""
    k = _check_k(k)
    lo, hi = 0.5, 1.0  # f(lo) < 0 < f(hi) for every k >= 2
    x = 1.0
    it = 0
    for it in range(1, _MAX_ITER + 1):
        e = math.exp(-k * x)
        f = x - 1.0 + e
        if f < 0:
            lo = x
        else:
            hi = x
        fp = 1.0 - k * e
        step_ok = fp > 0
        if step_ok:
            nxt = x - f / fp
            step_ok = lo <= nxt <= hi
        if not step_ok:
            nxt = 0.5 * (lo + hi)
        if abs(nxt - x) <= 1e-15 or hi - lo <= 4e-16:
            x = nxt
            break
        x = nxt
    res = residual(k, x)
    fp_x = fixed_point_alpha(k)
    if res > RESIDUAL_TOL or abs(fp_x - x) > 1e-12:
        raise ArithmeticError(f"alpha_{k}: Newton {x!r} vs fixed point {fp_x!r}, residual {res:.3e}")
    return AlphaResult(k, x, res, it, math.exp(-k * x))


def lambert_w0(z: float, tol: float = 1e-16, max_iter: int = 100) -> float:
    """Principal branch of Lambert W for real ``z >= -1/e``, by Halley iteration."""
    if z < -1.0 / math.e - 1e-15:
        raise InvalidParameterError(f"W_0 is real only for z >= -1/e, got {z}")
    if z == 0.0:
        return 0.0
    if z < -0.25:
        # series about the branch point -1/e
        p = math.sqrt(max(2.0 * (math.e * z + 1.0), 0.0))
        w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p**3
    else:
        w = math.log1p(z) if z > -0.9 else z
    for _ in range(max_iter):
        ew = math.exp(w)
        f = w * ew - z
        if w == -1.0 or f == 0.0:
            break
        wp1 = w + 1.0
        dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= dw
        if abs(dw) <= tol * (1.0 + abs(w)):
            break
    return w


def lambert_w_check(k: int) -> float:
    """``alpha_k`` through ``1 + W_0(-k exp(-k)) / k``; independent of :func:`solve_alpha`."""
    k = _check_k(k)
    return 1.0 + lambert_w0(-k * math.exp(-k)) / k
