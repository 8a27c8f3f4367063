"""Adaptive Simpson quadrature."""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

from .errors import QuadratureError

DEFAULT_MAX_DEPTH = 48


class QuadResult(NamedTuple):
    value: float
    error: float
    evaluations: int


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-10,
    max_depth: int = DEFAULT_MAX_DEPTH,
    initial_panels: int = 8,
) -> QuadResult:
    """Integrate ``f`` over ``[a, b]`` to absolute tolerance ``tol``.

    The interval is first cut into ``initial_panels`` equal panels (so narrow
    features are not missed by the first Simpson estimate), then each panel
    is bisected until the Richardson estimate ``|S2 - S1| / 15`` falls below
    its share of ``tol``.  Refined values include the Richardson correction.

    Raises:
        QuadratureError: a panel still fails the test at ``max_depth``; the
            exception carries the partial value and its error estimate.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if a == b:
        return QuadResult(0.0, 0.0, 0)
    if b < a:
        res = adaptive_simpson(f, b, a, tol, max_depth, initial_panels)
        return QuadResult(-res.value, res.error, res.evaluations)

    n_eval = 0

    def F(x: float) -> float:
        nonlocal n_eval
        n_eval += 1
        return f(x)

    width = (b - a) / initial_panels
    stack = []
    for i in range(initial_panels):
        lo = a + i * width
        hi = b if i == initial_panels - 1 else lo + width
        flo, fmid, fhi = F(lo), F(0.5 * (lo + hi)), F(hi)
        whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)
        stack.append((lo, hi, flo, fmid, fhi, whole, tol / initial_panels, 0))

    pieces: list[float] = []
    errors: list[float] = []
    failed = False
    while stack:
        lo, hi, flo, fmid, fhi, whole, ptol, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        fl = F(0.5 * (lo + mid))
        fr = F(0.5 * (mid + hi))
        left = (mid - lo) / 6.0 * (flo + 4.0 * fl + fmid)
        right = (hi - mid) / 6.0 * (fmid + 4.0 * fr + fhi)
        delta = left + right - whole
        if abs(delta) <= 15.0 * ptol or depth >= max_depth:
            if depth >= max_depth and abs(delta) > 15.0 * ptol:
                failed = True
            pieces.append(left + right + delta / 15.0)
            errors.append(abs(delta) / 15.0)
            continue
        stack.append((mid, hi, fmid, fr, fhi, right, 0.5 * ptol, depth + 1))
        stack.append((lo, mid, flo, fl, fmid, left, 0.5 * ptol, depth + 1))

    value = math.fsum(pieces)
    error = math.fsum(errors)
    if failed:
        raise QuadratureError(
            f"adaptive Simpson did not converge on [{a}, {b}] within depth {max_depth}",
            partial=value,
            error_estimate=error,
        )
    return QuadResult(value, error, n_eval)


def integrate_split(
    f: Callable[[float], float],
    breakpoints: list[float],
    tol: float,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> QuadResult:
    """Adaptive Simpson over consecutive pieces ``[p0, p1], [p1, p2], ...``.

    The tolerance is shared among the pieces in proportion to their length.
    """
    total = breakpoints[-1] - breakpoints[0]
    values, errs, evals = [], [], 0
    for lo, hi in zip(breakpoints[:-1], breakpoints[1:]):
        if hi <= lo:
            continue
        share = tol * (hi - lo) / total
        try:
            res = adaptive_simpson(f, lo, hi, share, max_depth)
        except QuadratureError as exc:
            raise QuadratureError(
                str(exc),
                partial=math.fsum(values) + exc.partial,
                error_estimate=math.fsum(errs) + exc.error_estimate,
            ) from None
        values.append(res.value)
        errs.append(res.error)
        evals += res.evaluations
    return QuadResult(math.fsum(values), math.fsum(errs), evals)
