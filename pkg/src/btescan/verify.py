"""Verification suites: numerical checks of the structural identities.

Each suite bundles the invariants of one area (special functions,
B_n symmetries, Mellin-Parseval, growth regimes, the eigenvalue-free
strip, logarithmic growth) into CheckResult records with an explicit
pass/fail, the measured number, and the tolerance it was held to.
Checks are honest: a suite reports exactly what was measured, and a
failed check fails the suite.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np
from scipy import special as sp

from . import asymptotics as asym
from . import btefun, specfun, zerofind
from .errors import DomainViolation
from .quadrature import integrate_adaptive
from .types import ContourBox, MellinConfig, ModeSpec, QuadratureConfig

__all__ = ["CheckResult", "VerificationReport", "SUITE_NAMES", "run_suite",
           "run_suites"]

SUITE_NAMES = ("SpecialFn", "Symmetry", "Mellin", "Regimes", "Strip",
               "LogGrowth")


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: float
    tolerance: float
    runtime_s: float
    detail: str = ""


@dataclass
class VerificationReport:
    suite: str
    checks: list[CheckResult] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _check(report: VerificationReport, name: str, fn) -> None:
    t0 = time.perf_counter()
    passed, measured, tol, detail = fn()
    report.checks.append(CheckResult(
        name=name, passed=bool(passed), measured=float(measured),
        tolerance=float(tol), runtime_s=time.perf_counter() - t0,
        detail=detail))


# ---------------------------------------------------------------- SpecialFn

def _complex_grid(re, im):
    rr, ii = np.meshgrid(re, im)
    return (rr + 1j * ii).ravel()


def _suite_specialfn(report: VerificationReport) -> None:
    def path_consistency():
        # independent routes to the same values must agree to 1e-9
        worst = 0.0
        rng = np.random.default_rng(7)
        zs = 0.3 + 2.5 * rng.random(40) + 1j * (rng.random(40) - 0.5)
        for n in (0, 2, 7):
            a = np.array([specfun.spherical_j(n, z) for z in zs])
            b = np.sqrt(np.pi / (2.0 * zs)) * np.array(
                [specfun.bessel_j(n + 0.5, z) for z in zs])
            worst = max(worst, float(np.max(np.abs(a / b - 1.0))))
        for nu in (1.0, 5.5, 20.0):
            lhs = np.array([specfun.bessel_j(nu - 1.0, z)
                            + specfun.bessel_j(nu + 1.0, z) for z in zs])
            rhs = (2.0 * nu / zs) * np.array(
                [specfun.bessel_j(nu, z) for z in zs])
            worst = max(worst, float(np.max(np.abs(lhs / rhs - 1.0))))
        return worst <= 1e-9, worst, 1e-9, "spherical/recurrence overlap"

    def branch_zeta():
        # turning-point series route vs the closed-form route on the
        # annulus where both apply
        worst = 0.0
        for r in (0.152, 0.17, 0.199):
            for th in np.linspace(0.0, 2.0 * np.pi, 17, endpoint=False):
                z = 1.0 + r * np.exp(1j * th)
                direct = specfun.airy_argument(complex(z))
                alt = _zeta_closed_form(complex(z))
                worst = max(worst, abs(direct - alt) / max(abs(alt), 1e-30))
        return worst <= 1e-9, worst, 1e-9, "series vs closed form, |z-1| in (0.15,0.2)"

    def lemma_im_beta():
        zs = _complex_grid(np.linspace(1.05, 10.0, 40),
                           np.linspace(-1.0, 1.0, 21))
        zs = zs[np.abs(zs.imag) > 1e-12]
        ratios = [abs(np.imag(specfun.phase_function(z))) / abs(z.imag)
                  for z in zs]
        measured = float(np.max(ratios))
        return np.isfinite(measured), measured, np.inf, \
            "sup |Im beta(z)| / |Im z|, 1 < Re z <= 10"

    def lemma_re_alpha():
        delta = 0.1
        zs = _complex_grid(np.linspace(0.02, 0.89, 30),
                           np.linspace(-delta, delta, 9))
        zs = zs[(np.abs(zs) < 0.9) & (np.abs(zs) > 1e-6) & (zs.real > 0)]
        cs = [np.real(specfun.decay_exponent(z)) / (1.0 + np.log(1.0 / abs(z)))
              for z in zs]
        measured = float(np.min(cs))
        return measured > 0, measured, 0.0, \
            "min Re alpha / (1 + ln(1/|z|)) on |z| < 0.9, |Im z| < 0.1"

    def ode_residuals():
        h = 1e-3

        def second(fn, zc):
            # Richardson-extrapolated central difference: the h^2 term
            # cancels and roundoff stays ~ eps / h^2 ~ 1e-9
            d_h = (fn(zc + h) - 2.0 * fn(zc) + fn(zc - h)) / h ** 2
            d_half = (fn(zc + h / 2) - 2.0 * fn(zc) + fn(zc - h / 2)) / (h / 2) ** 2
            return (4.0 * d_half - d_h) / 3.0

        worst = 0.0
        for z in (0.5, -1.5, 1.0 + 0.5j, 2.5):
            zc = complex(z)
            res = abs(second(specfun.airy_ai, zc) - zc * specfun.airy_ai(zc))
            worst = max(worst, res / max(abs(specfun.airy_ai(zc)), 1e-3))
        for nu, z in ((1.0, 2.0), (5.0, 3.0 + 1.0j), (10.0, 8.0)):
            zc = complex(z)
            j = lambda x: specfun.bessel_j(nu, x)
            d1 = (j(zc + h) - j(zc - h)) / (2.0 * h)
            res = abs(zc * zc * second(j, zc) + zc * d1
                      + (zc * zc - nu * nu) * j(zc))
            worst = max(worst, res / max(abs(zc * zc * j(zc)), 1e-3))
        return worst <= 1e-7, worst, 1e-7, "finite-difference ODE residuals"

    for name, fn in (("path_consistency", path_consistency),
                     ("branch_zeta_dual_route", branch_zeta),
                     ("im_beta_ratio_bounded", lemma_im_beta),
                     ("re_alpha_log_lower_bound", lemma_re_alpha),
                     ("ode_residuals", ode_residuals)):
        _check(report, name, fn)


def _zeta_closed_form(z: complex) -> complex:
    """airy_argument through the decay-exponent formula (no local series)."""
    a = np.log((1.0 + np.sqrt(1.0 - z * z + 0j)) / z) - np.sqrt(1.0 - z * z + 0j)
    if abs(z - 1.0) < 1e-12:
        return 0.0
    val = (1.5 * a) ** (2.0 / 3.0)
    # pick the branch continuous with zeta(z) ~ 2^{1/3} (1 - z) near 1
    target = 2.0 ** (1.0 / 3.0) * (1.0 - z)
    best = val
    for rot in (1.0, np.exp(2j * np.pi / 3.0), np.exp(-2j * np.pi / 3.0)):
        if abs(rot * val - target) < abs(best - target):
            best = rot * val
    return best


# ----------------------------------------------------------------- Symmetry

def symmetry_defect(d: int, n_max: int = 10, grid: int = 10,
                    cfg: QuadratureConfig | None = None) -> float:
    """Worst defect of both reflection identities over a complex grid.

    Checks B_n(-conj k) = conj B_n(k) and B_n(conj k) = conj B_n(k)
    for n = 0..n_max on a grid x grid mesh in the right half-plane.
    """
    cfg = cfg or QuadratureConfig()
    ks = _complex_grid(np.linspace(0.3, 6.0, grid), np.linspace(-3.0, 3.0, grid))
    worst = 0.0
    for n in range(n_max + 1):
        mode = ModeSpec(d, n)
        base = btefun.bte_values_batch(ks, mode, cfg)
        refl = btefun.bte_values_batch(-np.conj(ks), mode, cfg)
        conj = btefun.bte_values_batch(np.conj(ks), mode, cfg)
        scale = np.maximum(np.abs(base), 1e-300)
        worst = max(worst,
                    float(np.max(np.abs(refl - np.conj(base)) / scale)),
                    float(np.max(np.abs(conj - np.conj(base)) / scale)))
    return worst


def axis_sign_violations(d: int, k_grid, n_max: int,
                         cfg: QuadratureConfig | None = None) -> int:
    """Count of sign violations of B_n > 0 (real axis) and
    (-1)^n B_n(ik) > 0 (imaginary axis) over the grid, n <= n_max.

    Both reduce to positivity of the scaled factor T_n, which carries
    no cancellation, so the check is exact in sign for every n.
    """
    cfg = cfg or QuadratureConfig()
    bad = 0
    for n in range(n_max + 1):
        mode = ModeSpec(d, n)
        for k in k_grid:
            t_real = btefun.bte_value_scaled(complex(k), mode, cfg)
            t_imag = btefun.bte_value_scaled(1j * complex(k), mode, cfg)
            # positive prefactor on the real axis; i^{2n} absorbed for
            # the imaginary axis, leaving T(ik) > 0 as the criterion
            if not (t_real.real > 0 and abs(t_real.imag) < 1e-10 * t_real.real):
                bad += 1
            if not (t_imag.real > 0 and abs(t_imag.imag) < 1e-10 * t_imag.real):
                bad += 1
    return bad


def _suite_symmetry(report: VerificationReport) -> None:
    for d in (2, 3):
        _check(report, f"reflection_identities_d{d}", lambda d=d: (
            lambda w: (w <= 1e-11, w, 1e-11, "10x10 grid, n=0..10"))(
            symmetry_defect(d)))
    for d in (2, 3):
        def axes(d=d):
            ks = np.linspace(0.5, 12.0, 8)
            bad = axis_sign_violations(d, ks, n_max=30)
            return bad == 0, bad, 0, "grid positivity, both axes, n<=30"
        _check(report, f"axis_sign_definiteness_d{d}", axes)

    def uniform_decay():
        ks = _complex_grid(np.linspace(0.5, 8.0, 5), np.linspace(-2.0, 2.0, 5))
        sup = [float(np.max(np.abs(btefun.bte_values_batch(ks, ModeSpec(2, n)))))
               for n in range(5, 26)]
        tail = np.array(sup[5:])
        decreasing = bool(np.all(np.diff(tail) < 0))
        return decreasing and tail[-1] < tail[0] * 1e-3, tail[-1], 0.0, \
            "max_k |B_n| strictly decreasing for n >= 10 on compact grid"
    _check(report, "uniform_decay_in_n", uniform_decay)

    def quad_convergence():
        mode = ModeSpec(2, 3)
        k = 7.0 + 1.5j
        g = lambda t: btefun.weight_f(t, 2) * specfun.bessel_j(3, k * t) ** 2
        cfg = QuadratureConfig()
        v1, err = integrate_adaptive(g, 0.0, 1.0, cfg, scale=abs(k))
        cfg2 = QuadratureConfig(rel_tol=cfg.rel_tol / 2.0)
        v2, _ = integrate_adaptive(g, 0.0, 1.0, cfg2, scale=abs(k))
        delta = abs(v1 - v2)
        return delta <= max(err, 1e-15), delta, float(max(err, 1e-15)), \
            "halved rel_tol moves the value by less than the error estimate"
    _check(report, "quadrature_convergence", quad_convergence)


# ------------------------------------------------------------------- Mellin

def _airy_sq_tail_quad(a: float) -> float:
    cfg = QuadratureConfig(rel_tol=1e-13, abs_tol=1e-16, max_panels=16384)
    g = lambda x: np.real(specfun.airy_ai(np.asarray(x, dtype=complex))) ** 2
    val, _ = integrate_adaptive(g, a, a + 40.0, cfg, scale=4.0)
    return float(val.real)


def _suite_mellin(report: VerificationReport,
                  mcfg: MellinConfig | None = None) -> None:
    mcfg = mcfg or MellinConfig()

    def parseval_grid():
        combos = [(2.0, 0.0, 0.5, 2), (2.0, 1.0, 0.2, 2), (2.0, 3.5, 0.8, 3),
                  (10.0, 1.0, 0.5, 2), (10.0, 0.5, 0.2, 3), (10.0, 2.0, 0.8, 2),
                  (40.0, 1.0, 0.5, 3), (40.0, 4.5, 0.2, 2), (40.0, 0.0, 0.8, 3)]
        worst = 0.0
        for xi, nu, eps, d in combos:
            lhs = asym.parseval_eval(xi, nu, eps, d, mcfg)
            rhs = asym.parseval_direct(xi, nu, eps, d)
            worst = max(worst, abs(lhs - rhs) / abs(rhs))
        return worst <= 1e-6, worst, 1e-6, "9 (xi, nu, eps, d) combinations"
    _check(report, "parseval_identity", parseval_grid)

    def contour_invariance():
        vals = [asym.parseval_eval(10.0, 1.0, 0.5, 2,
                                   MellinConfig(c=c, y_max=mcfg.y_max,
                                                quad_tol=mcfg.quad_tol))
                for c in (0.3, 0.5, 0.7)]
        worst = max(abs(v - vals[1]) for v in vals) / abs(vals[1])
        return worst <= 1e-8, worst, 1e-8, "abscissa c in {0.3, 0.5, 0.7}"
    _check(report, "contour_invariance", contour_invariance)

    def airy_tail():
        worst = 0.0
        for a in (-2.0, 0.0, 1.0, 3.0):
            exact = asym.airy_tail_integral(a)
            quad = _airy_sq_tail_quad(a)
            worst = max(worst, abs(exact - quad) / abs(exact))
        return worst <= 1e-9, worst, 1e-9, "identity vs quadrature, a in {-2,0,1,3}"
    _check(report, "airy_tail_identity", airy_tail)

    def i3_eps_to_zero():
        big = MellinConfig(c=mcfg.c, y_max=max(mcfg.y_max, 2e5), quad_tol=1e-4)
        vals = [asym.i3_limit(eps, 2, big).real for eps in (0.4, 0.2, 0.1)]
        ok = vals[0] > vals[1] > vals[2] > 0
        return ok, vals[-1], 0.0, f"i3 limits at eps 0.4/0.2/0.1: {vals}"
    _check(report, "i3_vanishes_with_eps", i3_eps_to_zero)


# ------------------------------------------------------------------ Regimes

def regime_probe_errors(which: str, d: int = 2) -> list[float]:
    """|measured/predicted - 1| along the documented doubling sequence.

    which in {"k_dominant", "comparable", "airy", "n_dominant"}.
    """
    cfg = QuadratureConfig(max_panels=16384)
    errs = []
    if which == "k_dominant":
        for k in (800.0, 1600.0, 3200.0):
            b = btefun.bte_value(complex(k), ModeSpec(d, 5), cfg)
            pred = asym.k_dominant_prediction(5, complex(k), d)
            errs.append(abs(b / pred - 1.0))
    elif which == "comparable":
        lim = asym.comparable_regime_limit(2.0, d)
        for n in (100, 200, 400):
            k = 2.0 * n
            b = btefun.bte_value(complex(k), ModeSpec(d, n), cfg)
            errs.append(abs(k * b.real / lim - 1.0))
    elif which == "airy":
        pred = asym.airy_regime_prediction(1.0, d)
        for n in (200, 400, 800):
            k = n * (1.0 - n ** (-2.0 / 3.0))
            b = btefun.bte_value(complex(k), ModeSpec(d, n), cfg)
            scale = n ** (4.0 / 3.0) if d == 2 else (2.0 / np.pi) * n ** (7.0 / 3.0)
            errs.append(abs(scale * b.real / pred - 1.0))
    elif which == "n_dominant":
        for n in (40, 80, 160):
            measured, predicted = asym.n_dominant_probe(n, 10.0, d)
            errs.append(abs(measured.real / predicted - 1.0))
    else:
        raise DomainViolation(f"unknown regime probe {which!r}")
    return errs


def _suite_regimes(report: VerificationReport) -> None:
    for which in ("k_dominant", "comparable", "airy", "n_dominant"):
        def probe(which=which):
            errs = regime_probe_errors(which, 2)
            monotone = bool(np.all(np.diff(errs) <= 0))
            return monotone, errs[-1], errs[0], \
                f"errors along doubling sequence: {errs}"
        _check(report, f"monotone_convergence_{which}", probe)

    def phase_collapse():
        ts = np.linspace(1e-3, 1.0, 200)
        worst = 0.0
        for n, k in ((10, 5.0 + 0.01j), (40, 20.0 + 0.005j), (80, 10.0 + 0.01j)):
            vals = n * np.abs([np.imag(specfun.decay_exponent_reduced(k * t / n))
                               for t in ts])
            worst = max(worst, float(np.max(vals)) / abs(k.imag))
        return worst <= 1.0, worst, 1.0, \
            "sup_t n |Im a~(kt/n)| / |Im k| over probes with n/|k| >= 2"
    _check(report, "phase_collapse_bound", phase_collapse)


# -------------------------------------------------------------------- Strip

def _suite_strip(report: VerificationReport, box: ContourBox | None,
                 d: int = 2) -> None:
    box = box or ContourBox(0.0, 12.0, -4.0, 4.0)
    if box.is_empty:
        report.warnings.append("vacuous box: strip margin has no content")
        _check(report, "strip_margin_vacuous",
               lambda: (True, float("nan"), 0.0, "empty box, nothing to check"))
        return
    scan = zerofind.scan_box(box, d)

    def margin_positive():
        if scan.strip_margin_vacuous:
            report.warnings.append("no eigenvalues found: margin is vacuous")
            return True, scan.strip_margin, 0.0, "vacuous margin (no records)"
        worst = min(abs(r.k.imag) for r in scan.records)
        ok = scan.strip_margin > 0 and worst >= scan.strip_margin - 1e-12
        return ok, scan.strip_margin, 0.0, \
            f"{len(scan.records)} records, min |Im k| = {worst}"
    _check(report, "strip_margin_positive", margin_positive)

    def winding_conservation():
        mode = ModeSpec(d, 0)
        clipped = ContourBox(max(box.re_min, zerofind.ORIGIN_CLIP), box.re_max,
                             box.im_min, box.im_max)
        parent = zerofind.boundary_winding(mode, clipped)
        children = sum(zerofind.boundary_winding(mode, q).count
                       for q in clipped.quadrants())
        return children == parent.count, children - parent.count, 0, \
            f"parent {parent.count} vs quadrant sum {children}"
    _check(report, "winding_conservation", winding_conservation)

    def no_axis_records():
        bad = sum(1 for r in scan.records
                  if abs(r.k.real) * abs(r.k.imag) == 0.0)
        return bad == 0, bad, 0, "records with Re k * Im k = 0"
    _check(report, "no_real_or_imaginary_records", no_axis_records)

    def perturbed_reseed():
        worst = 0.0
        for rec in scan.records[:10]:
            re = zerofind.newton_refine(rec.mode, rec.k + 1e-4 * (1.0 + 1.0j))
            worst = max(worst, abs(re.k - rec.k))
        return worst <= 1e-8, worst, 1e-8, "re-refinement from perturbed seeds"
    _check(report, "perturbed_seed_stability", perturbed_reseed)


# ---------------------------------------------------------------- LogGrowth

def _suite_loggrowth(report: VerificationReport) -> None:
    def reconstruction():
        worst = 0.0
        for k in (100.0, 1000.0):
            cfg = QuadratureConfig(max_panels=16384)
            i1, i2, i3 = asym.log_growth_decomposition(complex(k), 3, 1.0, cfg)
            ref = np.pi * k * btefun.bte_value(complex(k), ModeSpec(2, 3), cfg)
            worst = max(worst, abs(i1 + i2 + i3 - ref) / abs(ref))
        return worst <= 1e-8, worst, 1e-8, "I1+I2+I3 vs pi k B_3(k), k in {1e2,1e3}"
    _check(report, "decomposition_reconstructs", reconstruction)

    def i2_closed_form():
        _, i2, _ = asym.log_growth_decomposition(100.0 + 0.0j, 3, 10.0)
        exact = np.log(100.0) + 1.0 - 0.1 - np.log(10.0)
        return abs(i2 - exact) <= 1e-14, abs(i2 - exact), 1e-14, \
            "I2 = ln x + 1 - c/x - ln c at x=100, c=10"
    _check(report, "i2_closed_form", i2_closed_form)

    def bounded_log_deviation():
        cfg = QuadratureConfig(max_panels=16384)
        ks = [50.0, 100.0, 300.0, 1000.0]
        sup = max(abs(np.pi * k * btefun.bte_value(complex(k), ModeSpec(2, 3),
                                                   cfg).real - np.log(k))
                  for k in ks)
        return np.isfinite(sup), sup, np.inf, \
            "sup_k |pi k B_3(k) - ln k| over the probe grid (reported)"
    _check(report, "log_deviation_bounded", bounded_log_deviation)


# ------------------------------------------------------------------ drivers

def run_suite(name: str, box: ContourBox | None = None, d: int = 2,
              mellin_cfg: MellinConfig | None = None) -> VerificationReport:
    if name not in SUITE_NAMES:
        raise DomainViolation(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
    report = VerificationReport(suite=name)
    if name == "SpecialFn":
        _suite_specialfn(report)
    elif name == "Symmetry":
        _suite_symmetry(report)
    elif name == "Mellin":
        _suite_mellin(report, mellin_cfg)
    elif name == "Regimes":
        _suite_regimes(report)
    elif name == "Strip":
        _suite_strip(report, box, d)
    elif name == "LogGrowth":
        _suite_loggrowth(report)
    return report


def run_suites(names, box: ContourBox | None = None, d: int = 2,
               mellin_cfg: MellinConfig | None = None) -> list[VerificationReport]:
    return [run_suite(n, box, d, mellin_cfg) for n in names]
