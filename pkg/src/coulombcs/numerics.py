"""Quadrature and series-summation primitives with explicit error control.

Every routine here is pure and deterministic for fixed inputs.  All
accumulation goes through compensated (error-free-transformation)
summation so that long hypergeometric-type sums do not lose digits to
the accumulator.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass

Number = float | complex


class QuadratureError(RuntimeError):
    """Quadrature failed to converge; carries the best estimate so far."""

    def __init__(self, message: str, best_estimate: Number = 0.0,
                 err_estimate: float = math.inf, evaluations: int = 0):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.err_estimate = err_estimate
        self.evaluations = evaluations


class SeriesError(RuntimeError):
    """Series summation hit max_terms; carries the partial value."""

    def __init__(self, message: str, partial_value: Number = 0.0, terms_used: int = 0):
        super().__init__(message)
        self.partial_value = partial_value
        self.terms_used = terms_used


@dataclass(frozen=True)
class QuadResult:
    value: Number
    err_estimate: float
    evaluations: int

    def __post_init__(self):
        if self.err_estimate < 0:
            raise ValueError("err_estimate must be >= 0")
        if self.evaluations < 1:
            raise ValueError("evaluations must be >= 1")


@dataclass(frozen=True)
class SeriesResult:
    value: Number
    terms_used: int
    truncation_bound: float

    def __post_init__(self):
        if self.truncation_bound < 0:
            raise ValueError("truncation_bound must be >= 0")
        if self.terms_used < 1:
            raise ValueError("terms_used must be >= 1")


class CompensatedSum:
    """Kahan-Babuska-Neumaier accumulator for float or complex values."""

    __slots__ = ("_sr", "_cr", "_si", "_ci", "_complex")

    def __init__(self):
        self._sr = 0.0
        self._cr = 0.0
        self._si = 0.0
        self._ci = 0.0
        self._complex = False

    def add(self, x: Number) -> None:
        if isinstance(x, complex):
            self._complex = True
            re, im = x.real, x.imag
        else:
            re, im = float(x), 0.0
        t = self._sr + re
        if abs(self._sr) >= abs(re):
            self._cr += (self._sr - t) + re
        else:
            self._cr += (re - t) + self._sr
        self._sr = t
        if im != 0.0 or self._complex:
            t = self._si + im
            if abs(self._si) >= abs(im):
                self._ci += (self._si - t) + im
            else:
                self._ci += (im - t) + self._si
            self._si = t

    @property
    def value(self) -> Number:
        if self._complex:
            return complex(self._sr + self._cr, self._si + self._ci)
        return self._sr + self._cr


# 15-point Kronrod extension of 7-point Gauss-Legendre, abscissae on [-1, 1].
# Even indices are the Kronrod-only nodes; odd indices (and the center) are
# the embedded Gauss nodes.
_XGK = (
    0.9914553711208126392068547,
    0.9491079123427585245261897,
    0.8648644233597690727897128,
    0.7415311855993944398638648,
    0.5860872354676911302941448,
    0.4058451513773971669066064,
    0.2077849550078984676006894,
    0.0,
)
_WGK = (
    0.0229353220105292249637320,
    0.0630920926299785532907007,
    0.1047900103222501838398763,
    0.1406532597155259187451896,
    0.1690047266392679028265834,
    0.1903505780647854099132564,
    0.2044329400752988924141620,
    0.2094821410847278280129992,
)
_WG = (
    0.1294849661688696932706114,
    0.2797053914892766679014678,
    0.3818300505051189449503698,
    0.4179591836734693877551020,
)


def _kronrod_panel(f: Callable[[float], Number], a: float, b: float):
    """Return (k15, g7, abs_k15) estimates of the integral of f over [a, b]."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    fc = f(mid)
    k = CompensatedSum()
    g = CompensatedSum()
    k.add(_WGK[7] * fc)
    g.add(_WG[3] * fc)
    for i in range(7):
        x = half * _XGK[i]
        fv = f(mid - x) + f(mid + x)
        k.add(_WGK[i] * fv)
        if i % 2 == 1:
            g.add(_WG[(i - 1) // 2] * fv)
    return half * k.value, half * g.value


def integrate_adaptive(f: Callable[[float], Number], a: float, b: float,
                       tol: float, max_intervals: int = 8192,
                       breakpoints: Sequence[float] | None = None) -> QuadResult:
    """Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b].

    tol is an absolute tolerance on the total integral.  Optional
    breakpoints seed the initial subdivision, which matters for sharply
    localized integrands that a single 15-point panel would miss.
    Raises QuadratureError (carrying the best estimate) if the interval
    budget is exhausted before the local error criteria are met.
    """
    if not (a < b):
        raise ValueError("require a < b")
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError("bounds must be finite")
    if not tol > 0:
        raise ValueError("tol must be positive")

    edges = [a, b]
    if breakpoints:
        edges.extend(x for x in breakpoints if a < x < b)
        edges = sorted(set(edges))

    total_len = b - a
    # Work stack of (lo, hi, k15, g7); local tolerance is prorated by length.
    stack = []
    evaluations = 0
    for lo, hi in zip(edges[:-1], edges[1:]):
        k15, g7 = _kronrod_panel(f, lo, hi)
        evaluations += 15
        stack.append((lo, hi, k15, g7))

    accepted = CompensatedSum()
    err_acc = CompensatedSum()
    intervals = len(stack)
    while stack:
        lo, hi, k15, g7 = stack.pop()
        err = abs(k15 - g7)
        if err <= tol * (hi - lo) / total_len or (hi - lo) < 1e-15 * total_len:
            accepted.add(k15)
            err_acc.add(err)
            continue
        if intervals >= max_intervals:
            best = accepted.value
            for l2, h2, k2, _ in stack:
                best = best + k2
            best = best + k15
            raise QuadratureError(
                f"no convergence after {intervals} subintervals "
                f"(last local error {err:.3e})",
                best_estimate=best,
                err_estimate=float(err_acc.value) + err,
                evaluations=evaluations)
        mid = 0.5 * (lo + hi)
        for l2, h2 in ((lo, mid), (mid, hi)):
            k2, g2 = _kronrod_panel(f, l2, h2)
            evaluations += 15
            stack.append((l2, h2, k2, g2))
        intervals += 1

    err_total = float(err_acc.value)
    if err_total < 0.0:
        err_total = 0.0
    return QuadResult(accepted.value, err_total, evaluations)


def integrate_halfline(f: Callable[[float], Number], tol: float,
                       max_intervals: int = 8192) -> QuadResult:
    """Integrate f over [0, inf) via the substitution t = u/(1-u).

    Requires f to decay faster than 1/t^2; a probe at large t raises a
    QuadratureError diagnostic when that visibly fails.  The integrands
    used here (x^t/Gamma(t+1) and friends) decay super-exponentially,
    so the transform is safe without ad-hoc cutoffs.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")

    # Decay probe: f(t) * t^2 should head to zero along a geometric ladder.
    probes = []
    for t in (1.0e3, 1.0e4, 1.0e5):
        try:
            probes.append(abs(f(t)) * t * t)
        except (OverflowError, ValueError, ZeroDivisionError):
            probes.append(math.inf)
    if probes[-1] > tol and not (probes[0] > probes[1] > probes[2]):
        raise QuadratureError(
            f"integrand decays too slowly (or is not evaluable) at large t "
            f"(|f(t)| t^2 probes: {probes[0]:.3e}, {probes[1]:.3e}, {probes[2]:.3e})",
            evaluations=3)

    def g(u: float) -> Number:
        w = 1.0 - u
        t = u / w
        return f(t) / (w * w)

    # Breakpoints cluster where the transform compresses [1, inf).
    res = integrate_adaptive(g, 0.0, 1.0, tol, max_intervals=max_intervals,
                             breakpoints=(0.25, 0.5, 0.75, 0.9, 0.99))
    return QuadResult(res.value, res.err_estimate, res.evaluations + 3)


def sum_series(term: Callable[[int], Number], tol: float,
               max_terms: int = 100_000) -> SeriesResult:
    """Sum term(0) + term(1) + ... with a compensated accumulator.

    Stops once three consecutive terms fall below tol * |partial sum|,
    which guards against false stops on alternating or hump-shaped term
    sequences.  Raises SeriesError (carrying the partial value) if
    max_terms is reached first.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    if max_terms < 1:
        raise ValueError("max_terms must be >= 1")

    acc = CompensatedSum()
    small_run = 0
    last_small = 0.0
    n = 0
    while n < max_terms:
        t = term(n)
        acc.add(t)
        n += 1
        mag = abs(t)
        scale = abs(acc.value)
        if mag <= tol * scale or (scale == 0.0 and mag == 0.0):
            small_run += 1
            last_small = max(last_small, mag)
            if small_run >= 3:
                return SeriesResult(acc.value, n, 3.0 * last_small)
        else:
            small_run = 0
            last_small = 0.0
    raise SeriesError(f"series did not converge within {max_terms} terms",
                      partial_value=acc.value, terms_used=n)
