"""Radial eigenfunctions: curved-space w_{n,l}(chi), flat bound u_{n,l}(r),
and flat continuum v_{k,l}(r).

Conventions that need stating once:

* The curved normalization constant is evaluated as written, including
  its phase factors, but the Gamma-function ratio inside it is reduced
  to the exact polynomial Gamma(l+1+i lam)/Gamma(i lam - l) =
  prod_{j=-l..l} (i lam + j), which stays finite for any radius.  The
  curved function is then renormalized by its quadrature norm, and the
  raw-norm deviation |norm - 1| is exposed as a diagnostic, so
  downstream checks are independent of phase/kappa conventions.
* The flat bound function uses first Kummer parameter -n and n! in its
  normalization constant.  Unit norm and the n-node count are verified
  by quadrature, which is the arbiter of that convention.
* The flat continuum function carries e^{-ikr} against the Kummer
  argument +2ikr; this is the sign combination under which the function
  is real (checked to 1e-8), the opposite sign visibly is not.
* The hypergeometric argument 1 - e^{2 i chi} is evaluated as
  -2i e^{i chi} sin(chi) to avoid cancellation near chi = 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from .numerics import integrate_adaptive
from .specfun import hyp1f1, hyp2f1
from .spectrum import (ConfigurationError, ContinuumLabel, PhysicalConfig,
                       Sector, SpectralIndex, spectral_index)

__all__ = [
    "CurvedPoint", "WaveParams", "wave_params", "radial_curved",
    "radial_flat_bound", "radial_flat_continuum", "curved_norm_diagnostic",
    "curved_overlap_quad", "flat_bound_overlap_quad",
    "continuum_delta_norm_factor", "continuum_norm_probe",
]

_NORM_TOL = 1e-11
_DD_DEGREE_LIMIT = 60


@dataclass(frozen=True)
class CurvedPoint:
    """Geodesic polar angle chi in [0, pi]; r = R sin(chi)."""

    chi: float

    def __post_init__(self):
        if not 0.0 <= self.chi <= math.pi:
            raise ValueError("chi must lie in [0, pi]")


@dataclass(frozen=True)
class WaveParams:
    lambda_n: float
    c_curved: complex
    kappa_n: float
    c_flat: float


def _flat_norm_constant(n: int, ell: int, a: float) -> float:
    N = n + ell + 1
    ratio = 1.0          # (n + 2l + 1)! / n!
    for j in range(1, 2 * ell + 2):
        ratio *= n + j
    return math.sqrt((2.0 / (a * N)) ** 3 * ratio / (2.0 * N)) / math.factorial(2 * ell + 1)


def wave_params(n: int, sec: Sector, cfg: PhysicalConfig) -> WaveParams:
    """lambda_n, curved and flat normalization constants, and kappa_n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    R = cfg.require_curved()
    ell = sec.ell
    N = n + ell + 1
    lam = -R / (cfg.a * N)
    kappa = min(abs(float(N)), abs(lam))

    # Gamma(l+1+i lam) / Gamma(i lam - l) as an exact polynomial.
    ratio = complex(1.0)
    for j in range(-ell, ell + 1):
        ratio *= complex(j, lam)
    g_ratio = 1.0        # Gamma(n + 2l + 2) / Gamma(n + 1)
    for j in range(1, 2 * ell + 2):
        g_ratio *= n + j
    inner = 1j * (N * N + lam * lam) * ratio * g_ratio / (R ** 3 * kappa)
    phase = cmath.exp(0.5j * math.pi * (2 * n + ell + 1))
    c_curved = phase * 2.0 ** (ell + 1) / math.factorial(2 * ell + 1) * cmath.sqrt(inner)

    return WaveParams(lam, c_curved, kappa, _flat_norm_constant(n, ell, cfg.a))


def _radial_curved_raw(n: int, ell: int, lam: float, c: complex, chi: float) -> complex:
    u = -2j * cmath.exp(1j * chi) * math.sin(chi)
    f = hyp2f1(complex(-n), complex(ell + 1, -lam), 2.0 * ell + 2.0, u)
    envelope = cmath.exp(complex(lam * chi, -n * chi))
    return c * math.sin(chi) ** ell * envelope * f


def _curved_support(lam: float) -> float:
    """chi beyond which |w|^2 ~ e^{2 lam chi} is below 1e-40."""
    return min(math.pi, 46.0 / abs(lam)) if lam != 0.0 else math.pi


@lru_cache(maxsize=4096)
def _curved_raw_norm_sq(n: int, ell: int, omega: float, R: float) -> float:
    """Quadrature norm of the raw curved function: int |w|^2 R^3 sin^2 dchi."""
    cfg = PhysicalConfig(omega=omega, R=R)
    sec = Sector(ell)
    p = wave_params(n, sec, cfg)
    env = _curved_support(p.lambda_n)
    if n > _DD_DEGREE_LIMIT and env > 0.5:
        raise ArithmeticError(
            f"norm quadrature for n={n} needs the degree-{n} polynomial over "
            f"|1-e^(2 i chi)| up to {2 * math.sin(min(env, math.pi / 2)):.2f}, beyond the "
            f"split-accumulator cancellation budget; evaluate with normalized=False")

    def integrand(chi: float) -> float:
        w = _radial_curved_raw(n, ell, p.lambda_n, p.c_curved, chi)
        return (w.real * w.real + w.imag * w.imag) * math.sin(chi) ** 2

    breaks = sorted({env * f for f in (0.05, 0.15, 0.3, 0.5, 0.75, 1.0)
                     if 0.0 < env * f < math.pi})
    res = integrate_adaptive(integrand, 0.0, math.pi, _NORM_TOL / R ** 3,
                             breakpoints=breaks)
    return R ** 3 * float(res.value)


def curved_norm_diagnostic(n: int, sec: Sector, cfg: PhysicalConfig) -> float:
    """|quadrature norm of the as-written w - 1|, the convention diagnostic."""
    R = cfg.require_curved()
    return abs(math.sqrt(_curved_raw_norm_sq(n, sec.ell, cfg.omega, R)) - 1.0)


def radial_curved(idx: SpectralIndex, sec: Sector, cfg: PhysicalConfig,
                  chi: float, normalized: bool = True) -> complex:
    """Curved radial eigenfunction w_{n,l}(chi).

    With normalized=True (default) the value is divided by the computed
    quadrature norm; normalized=False returns the as-written function,
    which is what scale-free shape comparisons at large polynomial
    degree must use.
    """
    if idx.N != idx.n + sec.ell + 1:
        raise ValueError(f"index {idx} does not belong to sector ell={sec.ell}")
    if not 0.0 <= chi <= math.pi:
        raise ValueError("chi must lie in [0, pi]")
    R = cfg.require_curved()
    p = wave_params(idx.n, sec, cfg)
    w = _radial_curved_raw(idx.n, sec.ell, p.lambda_n, p.c_curved, chi)
    if normalized:
        w /= math.sqrt(_curved_raw_norm_sq(idx.n, sec.ell, cfg.omega, R))
    return w


def radial_flat_bound(idx: SpectralIndex, sec: Sector, cfg: PhysicalConfig,
                      r: float) -> float:
    """Flat-space bound radial function u_{n,l}(r), unit norm in r^2 dr."""
    if idx.N != idx.n + sec.ell + 1:
        raise ValueError(f"index {idx} does not belong to sector ell={sec.ell}")
    if r < 0:
        raise ValueError("r must be >= 0")
    ell = sec.ell
    x = 2.0 * r / (cfg.a * idx.N)
    f = hyp1f1(complex(-idx.n), 2.0 * ell + 2.0, x)
    return _flat_norm_constant(idx.n, ell, cfg.a) * x ** ell * math.exp(-0.5 * x) * f.real


def radial_flat_continuum(lbl: ContinuumLabel, sec: Sector, cfg: PhysicalConfig,
                          r: float) -> complex:
    """Flat-space continuum radial function v_{k,l}(r); real up to roundoff."""
    if not lbl.k > 0:
        raise ValueError("k must be > 0")
    if r < 0:
        raise ValueError("r must be >= 0")
    ell = sec.ell
    k = lbl.k
    b = 1.0 / (cfg.a * k)
    # |Gamma(l+1-ib)| sinh^(1/2)(pi b) = sqrt(pi b * prod_j (j^2 + b^2)),
    # the sinh cancels exactly, so no overflow for small k.
    amp2 = math.pi * b
    for j in range(1, ell + 1):
        amp2 *= j * j + b * b
    pref = (math.sqrt(2.0 * cfg.a / math.pi) * k * k * (2.0 * k * r) ** ell
            / math.factorial(2 * ell + 1) * math.sqrt(amp2))
    return pref * cmath.exp(-1j * k * r) * hyp1f1(complex(ell + 1, b),
                                                  2.0 * ell + 2.0,
                                                  complex(0.0, 2.0 * k * r))


def curved_overlap_quad(n1: int, n2: int, sec: Sector, cfg: PhysicalConfig,
                        tol: float = 1e-10) -> complex:
    """<w_{n1} | w_{n2}> by quadrature with measure R^3 sin^2(chi) dchi."""
    R = cfg.require_curved()
    i1 = spectral_index(n1, sec)
    i2 = spectral_index(n2, sec)

    def integrand(chi: float) -> complex:
        w1 = radial_curved(i1, sec, cfg, chi)
        w2 = radial_curved(i2, sec, cfg, chi)
        return w1.conjugate() * w2 * math.sin(chi) ** 2

    p = wave_params(max(n1, n2), sec, cfg)
    env = _curved_support(p.lambda_n)
    breaks = sorted({env * f for f in (0.05, 0.15, 0.3, 0.5, 0.75, 1.0)
                     if 0.0 < env * f < math.pi})
    res = integrate_adaptive(integrand, 0.0, math.pi, tol / max(R ** 3, 1.0),
                             breakpoints=breaks)
    return complex(res.value) * R ** 3


def flat_bound_overlap_quad(n1: int, n2: int, sec: Sector, cfg: PhysicalConfig,
                            tol: float = 1e-11) -> float:
    """<u_{n1} | u_{n2}> by quadrature with measure r^2 dr."""
    i1 = spectral_index(n1, sec)
    i2 = spectral_index(n2, sec)
    rate = (1.0 / i1.N + 1.0 / i2.N) / cfg.a
    # Cutoff where e^{-rate r} r^d is spent, d = total polynomial degree.
    d = n1 + n2 + 2 * sec.ell + 2
    r_max = 50.0 / rate
    for _ in range(4):
        r_max = (50.0 + d * math.log(max(r_max, 10.0))) / rate

    def integrand(r: float) -> float:
        return (radial_flat_bound(i1, sec, cfg, r)
                * radial_flat_bound(i2, sec, cfg, r) * r * r)

    breaks = [r_max * f for f in (0.01, 0.03, 0.07, 0.12, 0.25, 0.5)]
    res = integrate_adaptive(integrand, 0.0, r_max, tol, breakpoints=breaks)
    return float(res.value)


def continuum_delta_norm_factor(lbl: ContinuumLabel, cfg: PhysicalConfig) -> float:
    """Scalar converting v_{k,l} to a delta(eps-eps')-normalized mode.

    From the large-r amplitude A(k) = k sqrt(a (1 - e^{-2 pi b}) / pi) of
    v (b = 1/(a k)), a delta(eps)-normalized mode needs amplitude
    sqrt(2 omega / (pi k)) / r, giving the k-dependent conversion below.
    The absolute continuum normalization of v as printed is best-effort;
    continuum_norm_probe measures it.
    """
    k = lbl.k
    b = 1.0 / (cfg.a * k)
    return math.sqrt(2.0 * cfg.omega / (cfg.a * k ** 3 * (-math.expm1(-2.0 * math.pi * b))))


def continuum_norm_probe(lbl: ContinuumLabel, sec: Sector, cfg: PhysicalConfig,
                         r_lo: float = 200.0, r_hi: float = 260.0,
                         samples: int = 1200) -> dict:
    """Smoothed-delta normalization probe for v_{k,l}.

    Measures the mean of |r v|^2 over a large-r window (= A(k)^2 / 2 for
    an amplitude-A sinusoid) and reports the ratio against the
    delta(k-k') convention, for which A^2 = 2/pi.  Reported, not gating.
    """
    k = lbl.k
    step = (r_hi - r_lo) / samples
    acc = 0.0
    for i in range(samples):
        r = r_lo + (i + 0.5) * step
        v = radial_flat_continuum(lbl, sec, cfg, r)
        acc += (v.real * v.real + v.imag * v.imag) * r * r
    mean_sq = acc / samples
    a_sq = 2.0 * mean_sq
    b = 1.0 / (cfg.a * k)
    a_sq_model = k * k * cfg.a * (-math.expm1(-2.0 * math.pi * b)) / math.pi
    return {
        "k": k,
        "amplitude_sq_measured": a_sq,
        "amplitude_sq_model": a_sq_model,
        "delta_k_ratio": a_sq / (2.0 / math.pi),
        "delta_eps_factor": continuum_delta_norm_factor(lbl, cfg),
    }
