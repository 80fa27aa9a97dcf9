"""Acceptance suite: every gating check behind `coulombcs verify`.

Each criterion function measures its worst-case deviation, compares it
against the pinned tolerance, and reports a structured result.  The
same functions back tests/test_acceptance.py, so the CLI and the test
suite cannot drift apart.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import coherent as ch
from . import limits as lm
from .specfun import hyp2f1
from .spectrum import (PhysicalConfig, Sector, gen_factorial_flat,
                       gen_factorial_flat_closed, continuum_label,
                       spectral_index)
from .wavefunctions import (continuum_norm_probe, curved_overlap_quad,
                            flat_bound_overlap_quad, radial_flat_bound,
                            radial_flat_continuum)

__all__ = ["CriterionResult", "run_suite", "CRITERIA"]

_CFG = PhysicalConfig(omega=0.5)
_CFG_CURVED = PhysicalConfig(omega=0.5, R=10.0)


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    measured: float
    tolerance: float
    passed: bool
    runtime_s: float
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return (f"[{tag}] criterion {self.number:02d} {self.name}: "
                f"measured {self.measured:.3e} vs tolerance {self.tolerance:.1e} "
                f"({self.runtime_s:.2f}s)")


def _label_grid():
    for ell in (0, 1, 2):
        sec = Sector(ell)
        for s_base in (0.1, 0.3, 0.5, 0.7, 0.9):
            s = s_base / (ell + 1)
            for gam in (0.0, 1.0, 5.0):
                yield sec, ch.CoherentLabel(s, gam)


def criterion_01() -> CriterionResult:
    """s-wave factorial identity [n]! = (n+2)/(2(n+1)) for n <= 50."""
    t0 = time.perf_counter()
    sec = Sector(0)
    worst = 0.0
    for n in range(51):
        want = (n + 2) / (2.0 * (n + 1))
        got = gen_factorial_flat(n, sec)
        worst = max(worst, abs(got - want) / want)
    return CriterionResult(1, "s-wave moment identity", worst, 1e-13,
                           worst <= 1e-13, time.perf_counter() - t0)


def criterion_02() -> CriterionResult:
    """Product route vs closed form for [n]!, n <= 50, ell <= 5."""
    t0 = time.perf_counter()
    worst = 0.0
    for ell in range(6):
        sec = Sector(ell)
        for n in range(51):
            prod = gen_factorial_flat(n, sec)
            closed = gen_factorial_flat_closed(n, sec)
            worst = max(worst, abs(prod - closed) / closed)
    return CriterionResult(2, "factorial closed form vs product", worst, 1e-13,
                           worst <= 1e-13, time.perf_counter() - t0)


def criterion_03() -> CriterionResult:
    """State normalization <s,gamma|s,gamma> = 1 on the label grid."""
    t0 = time.perf_counter()
    worst = 0.0
    for sec, lbl in _label_grid():
        curved = ch.build_curved_state(lbl, sec, _CFG_CURVED)
        worst = max(worst, abs(abs(ch.overlap(curved, curved)) - 1.0))
        flat = ch.build_flat_state(lbl, sec, _CFG)
        worst = max(worst, abs(abs(ch.overlap(flat, flat)) - 1.0))
    return CriterionResult(3, "coherent-state normalization", worst, 1e-8,
                           worst <= 1e-8, time.perf_counter() - t0)


def criterion_04() -> CriterionResult:
    """Discrete normalization sum vs its 2F1 closed form, plus witnesses."""
    t0 = time.perf_counter()
    worst = 0.0
    details: dict = {}
    for ell in (0, 1, 2):
        sec = Sector(ell)
        for s2_base in (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8):
            s2 = s2_base / (ell + 1) ** 2
            direct = ch._flat_discrete_sum(s2, sec, 1e-14)
            closed = hyp2f1(float(ell + 2), float(ell + 2),
                            2.0 * ell + 3.0, (ell + 1) ** 2 * s2).real
            worst = max(worst, abs(direct - closed) / abs(closed))
    anchor = ch._flat_discrete_sum(0.5, Sector(0), 1e-14)
    anchor_err = abs(anchor - 2.454823)
    details["anchor_value"] = anchor
    details["anchor_abs_err"] = anchor_err
    bracket = ch.swave_bracket_form(0.5)
    witness = abs(bracket - 0.5 * anchor) / abs(bracket)
    details["bracket_value"] = bracket
    details["bracket_vs_series_x_s2_rel"] = witness
    ok = worst <= 1e-9 and anchor_err <= 1e-5 and witness <= 1e-12
    return CriterionResult(4, "2F1 closed form of the discrete sum",
                           max(worst, witness), 1e-9, ok,
                           time.perf_counter() - t0, details)


def criterion_05() -> CriterionResult:
    """Action identity, exact cases and the predicted combined residual."""
    t0 = time.perf_counter()
    worst_exact = 0.0
    for sec, lbl in _label_grid():
        scale = max(_CFG.omega * lbl.J, 1e-12)
        res_c = ch.action_identity_residual(lbl, sec, "curved", _CFG_CURVED)
        worst_exact = max(worst_exact, abs(res_c["residual"]) / scale)
        res_d = ch.action_identity_residual(lbl, sec, "flat_discrete", _CFG)
        worst_exact = max(worst_exact, abs(res_d["residual"]) / scale)
    worst_pred = 0.0
    for ell in (0, 1, 2):
        sec = Sector(ell)
        for s_base in (0.3, 0.5, 0.7, 0.9):
            s = s_base / (ell + 1)
            lbl = ch.CoherentLabel(s)
            measured = ch.action_identity_residual(lbl, sec, "flat_combined",
                                                   _CFG)["residual"]
            predicted = ch.predicted_combined_action_residual(lbl.J, sec, _CFG)
            worst_pred = max(worst_pred, abs(measured - predicted) / predicted)
    passed = worst_exact <= 1e-9 and worst_pred <= 1e-6
    return CriterionResult(5, "action identity", max(worst_exact, worst_pred),
                           1e-6, passed, time.perf_counter() - t0,
                           {"worst_exact_rel": worst_exact,
                            "worst_predicted_rel": worst_pred})


def criterion_06() -> CriterionResult:
    """Temporal stability at matching offsets over the label grid."""
    t0 = time.perf_counter()
    worst = 0.0
    for sec, lbl in _label_grid():
        for t in (0.1, 1.0, 10.0):
            r = ch.temporal_stability_residual(lbl, sec, "curved", t,
                                               "subtract_E0", _CFG_CURVED)
            worst = max(worst, abs(r))
            r = ch.temporal_stability_residual(lbl, sec, "flat_discrete", t,
                                               "subtract_E0", _CFG)
            worst = max(worst, abs(r))
            if lbl.s > 0.0:
                r = ch.temporal_stability_residual(lbl, sec, "flat_continuum",
                                                   t, "none", _CFG)
                worst = max(worst, abs(r))
    return CriterionResult(6, "temporal stability", worst, 1e-10,
                           worst <= 1e-10, time.perf_counter() - t0)


def criterion_07() -> CriterionResult:
    """Resolution-of-unity moments at ell = 0 up to n = 30."""
    t0 = time.perf_counter()
    res = ch.moment_residuals(ch.swave_weight(), Sector(0), 30)
    worst = max(abs(x) for x in res)
    return CriterionResult(7, "s-wave resolution-of-unity moments", worst,
                           1e-10, worst <= 1e-10, time.perf_counter() - t0)


def criterion_08() -> CriterionResult:
    """Orthonormality by quadrature, curved (R=10) and flat."""
    t0 = time.perf_counter()
    worst_curved = 0.0
    worst_flat = 0.0
    for ell in (0, 1, 2):
        sec = Sector(ell)
        for n1 in range(9):
            for n2 in range(n1, 9):
                want = 1.0 if n1 == n2 else 0.0
                got = curved_overlap_quad(n1, n2, sec, _CFG_CURVED)
                worst_curved = max(worst_curved, abs(got - want))
                got = flat_bound_overlap_quad(n1, n2, sec, _CFG)
                worst_flat = max(worst_flat, abs(got - want))
    passed = worst_curved <= 1e-7 and worst_flat <= 1e-9
    return CriterionResult(8, "orthonormality by quadrature",
                           max(worst_curved, worst_flat), 1e-7, passed,
                           time.perf_counter() - t0,
                           {"worst_curved": worst_curved,
                            "worst_flat": worst_flat})


def criterion_09() -> CriterionResult:
    """Bound-energy convergence: exact 1/R^2 residuals, order -2.00."""
    t0 = time.perf_counter()
    R_list = [10.0, 100.0, 1000.0]
    worst_res = 0.0
    worst_order = 0.0
    min_r2 = 1.0
    for ell in (0, 1):
        sec = Sector(ell)
        for n in (1, 2, 3):
            rep = lm.bound_energy_convergence(n, sec, _CFG, R_list)
            for R, resid in zip(rep.R_values, rep.residuals):
                nl = n + ell
                closed = nl * (nl + 2) / (2.0 * R * R)
                worst_res = max(worst_res, abs(resid - closed) / closed)
            worst_order = max(worst_order, abs(rep.fitted_order + 2.0))
            min_r2 = min(min_r2, rep.r_squared)
    passed = worst_res <= 1e-12 and worst_order <= 0.01 and min_r2 >= 0.99
    return CriterionResult(9, "bound-energy limit", worst_order, 0.01, passed,
                           time.perf_counter() - t0,
                           {"worst_closed_form_rel": worst_res,
                            "min_r_squared": min_r2})


def criterion_10() -> CriterionResult:
    """Continuum limit: energy and shape residuals decrease with R."""
    t0 = time.perf_counter()
    sec = Sector(0)
    e_rep = lm.continuum_energy_convergence(0.5, sec, _CFG,
                                            [100.0, 1000.0, 10000.0])
    e_monotone = all(a > b for a, b in zip(e_rep.residuals,
                                           e_rep.residuals[1:]))
    a = _CFG.a
    r_grid = np.linspace(0.5 * a, 10.0 * a, 40)
    w_rep = lm.continuum_wavefunction_convergence(0.5, sec, _CFG, r_grid,
                                                  [50.0, 100.0, 200.0])
    w_monotone = all(a_ > b_ for a_, b_ in zip(w_rep.residuals,
                                               w_rep.residuals[1:]))
    passed = e_monotone and w_monotone
    measured = 0.0 if passed else 1.0
    return CriterionResult(10, "continuum limit", measured, 0.5, passed,
                           time.perf_counter() - t0,
                           {"energy_residuals": e_rep.residuals,
                            "shape_residuals": w_rep.residuals,
                            "shape_scalars_abs": [abs(c) for c in
                                                  w_rep.details["scalars"]]})


def criterion_11() -> CriterionResult:
    """Continuum reality, r^ell regularity, and the non-gating norm probe."""
    t0 = time.perf_counter()
    worst_im = 0.0
    for k in (0.5, 1.0, 2.0):
        lbl = continuum_label(k, _CFG)
        for ell in (0, 1):
            sec = Sector(ell)
            for kr in np.linspace(0.5, 50.0, 34):
                v = radial_flat_continuum(lbl, sec, _CFG, float(kr / k))
                worst_im = max(worst_im,
                               abs(v.imag) / (1.0 + abs(v.real)))
    worst_slope = 0.0
    a = _CFG.a
    r_small = np.logspace(-4, -2, 9) * a
    for k in (0.5, 1.0, 2.0):
        lbl = continuum_label(k, _CFG)
        for ell in (0, 1):
            sec = Sector(ell)
            mags = [abs(radial_flat_continuum(lbl, sec, _CFG, float(r)))
                    for r in r_small]
            slope = np.polyfit(np.log(r_small), np.log(mags), 1)[0]
            worst_slope = max(worst_slope, abs(slope - ell))
    probes = [continuum_norm_probe(continuum_label(k, _CFG), Sector(0), _CFG)
              for k in (0.5, 1.0, 2.0)]
    passed = worst_im <= 1e-8 and worst_slope <= 0.01
    return CriterionResult(11, "continuum reality and regularity",
                           max(worst_im, worst_slope), 1e-2, passed,
                           time.perf_counter() - t0,
                           {"worst_im_ratio": worst_im,
                            "worst_origin_slope_dev": worst_slope,
                            "norm_probes_delta_k_ratio":
                                [p["delta_k_ratio"] for p in probes]})


def criterion_12() -> CriterionResult:
    """Hydrogen ground state against 2 a^{-3/2} e^{-r/a}."""
    t0 = time.perf_counter()
    sec = Sector(0)
    idx = spectral_index(0, sec)
    a = _CFG.a
    worst = 0.0
    for r in np.linspace(0.0, 10.0 * a, 101):
        want = 2.0 * a ** -1.5 * math.exp(-r / a)
        got = radial_flat_bound(idx, sec, _CFG, float(r))
        worst = max(worst, abs(got - want) / want)
    return CriterionResult(12, "hydrogen ground state", worst, 1e-12,
                           worst <= 1e-12, time.perf_counter() - t0)


CRITERIA = {
    1: criterion_01, 2: criterion_02, 3: criterion_03, 4: criterion_04,
    5: criterion_05, 6: criterion_06, 7: criterion_07, 8: criterion_08,
    9: criterion_09, 10: criterion_10, 11: criterion_11, 12: criterion_12,
}


def run_suite(numbers=None) -> list[CriterionResult]:
    """Run the requested criteria (all by default) in ascending order."""
    if numbers is None:
        numbers = sorted(CRITERIA)
    out = []
    for num in numbers:
        if num not in CRITERIA:
            raise ValueError(f"unknown criterion {num}; valid: 1..12")
        out.append(CRITERIA[num]())
    return out
