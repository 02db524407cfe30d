"""Growth-regime predictions and Mellin-Parseval machinery for B_n(k).

Covers the three regimes of the mode/wavenumber ratio:

* n << |k| (k-dominant): pi k B_n ~ ln(k/n) in d=2, (4/pi) n k B_n ~ 1
  in d=3, with the correction constant expressed as a contour integral
  over a vertical Mellin line (``i3_limit``).
* n ~ |k| with limit ratio L: k B_n(L n) approaches an explicit
  integral of the weight over the oscillatory region (L > 1), and the
  turning-point case L = 1 is governed by an Airy-squared tail
  integral (``airy_regime_prediction``).
* n >> |k| (n-dominant): after removal of the (k/2)^{2n}/n!^2 series
  factor, B_n reduces to a positive Laplace-type integral driven by
  the reduced decay exponent (``n_dominant_probe``).

The Parseval evaluation integrates xi^{-z} M[J_nu^2](z) M[phi](1-z)
over a vertical line with an oscillation-aware truncation bound; the
direct integrals it must match are exposed alongside for verification.
"""

from __future__ import annotations

import numpy as np
from scipy import special as sp

from .btefun import bte_value_scaled, weight_f
from .errors import DomainViolation, PoleHit, TruncationInsufficient
from .quadrature import integrate_adaptive
from .specfun import (airy_ai, airy_ai_prime, bessel_j,
                      decay_exponent_reduced)
from .types import MellinConfig, ModeSpec, QuadratureConfig

__all__ = [
    "mellin_weight",
    "mellin_j_squared",
    "mellin_j_squared_direct",
    "parseval_eval",
    "parseval_direct",
    "i3_limit",
    "i3_direct",
    "k_dominant_prediction",
    "comparable_regime_limit",
    "airy_tail_integral",
    "airy_regime_prediction",
    "n_dominant_probe",
    "log_growth_decomposition",
]


def mellin_weight(z, eps: float, d: int):
    """Mellin transform M[phi](1-z) of the shrinking window weight.

    phi is the indicator of (1-eps, 1+eps) for d=2 and t^{-1} times it
    for d=3.  Entire in z; the removable singularities (z=1 for d=2,
    z=0 for d=3) are filled by a local series.
    """
    if not 0 < eps < 1:
        raise DomainViolation("eps must lie in (0, 1)")
    zc = np.asarray(z, dtype=complex)
    a = np.log1p(eps)
    b = np.log1p(-eps)
    if d == 2:
        w = 1.0 - zc
    elif d == 3:
        w = -zc
    else:
        raise DomainViolation(f"d must be 2 or 3, got {d}")
    # ((1+eps)^w - (1-eps)^w) / w, stable across w = 0
    small = np.abs(w) < 1e-6
    out = np.where(small,
                   (a - b) + 0.5 * w * (a * a - b * b)
                   + w * w * (a ** 3 - b ** 3) / 6.0,
                   (np.exp(w * a) - np.exp(w * b)) / np.where(small, 1.0, w))
    return complex(out) if np.isscalar(z) else out


def mellin_j_squared(z, nu: float):
    """Mellin transform of J_nu^2 on the strip -2 nu < Re z < 1.

        2^{z-1} Gamma(nu + z/2) Gamma(1 - z)
        / (Gamma(1 - z/2)^2 Gamma(1 + nu - z/2))

    evaluated through log-Gamma so large |Im z| cannot overflow.  The
    formula continues meromorphically outside the strip; PoleHit is
    raised within 1e-12 of a pole of Gamma(1-z) or Gamma(nu + z/2).
    """
    zc = np.asarray(z, dtype=complex)
    for shifted, step in (((1.0 - zc), -1.0), ((nu + zc / 2.0), 0.5)):
        s = np.asarray(shifted)
        near = (np.abs(s.imag) < 1e-12) & (np.abs(s.real - np.round(s.real)) < 1e-12) \
            & (np.round(s.real) <= 0)
        if np.any(near):
            raise PoleHit(f"z within 1e-12 of a Gamma pole (step {step})")
    logval = ((zc - 1.0) * np.log(2.0) + sp.loggamma(nu + zc / 2.0)
              + sp.loggamma(1.0 - zc) - 2.0 * sp.loggamma(1.0 - zc / 2.0)
              - sp.loggamma(1.0 + nu - zc / 2.0))
    out = np.exp(logval)
    return complex(out) if np.isscalar(z) else out


def mellin_j_squared_direct(z: complex, nu: float, t_max: float | None = None,
                            cfg: QuadratureConfig | None = None) -> complex:
    """Direct integral int_0^inf t^{z-1} J_nu^2(t) dt (oracle route).

    Integrates to t_max (default 200 wavelengths) and closes with the
    analytic tail of the large-argument form J_nu^2 ~ (1/(pi t)) *
    (1 + sin(2t - nu pi)), whose oscillatory part is reduced by one
    integration by parts.  Requires -2 nu < Re z < 1.
    """
    zc = complex(z)
    if not (-2.0 * nu < zc.real < 1.0):
        raise DomainViolation("direct Mellin integral needs -2nu < Re z < 1")
    cfg = cfg or QuadratureConfig(rel_tol=1e-11, abs_tol=1e-13, max_panels=200000)
    T = t_max if t_max is not None else 200.0 * np.pi
    g = lambda t: t ** (zc - 1.0) * bessel_j(nu, t) ** 2
    head, _ = integrate_adaptive(g, 1e-12, T, cfg, scale=2.0)
    # smooth tail: (1/pi) int_T^inf t^{z-2} dt
    tail = -(1.0 / np.pi) * T ** (zc - 1.0) / (zc - 1.0)
    # oscillatory tail once by parts: int_T^inf t^{z-2} sin(2t - nu pi) dt
    #   = cos(2T - nu pi)/2 * T^{z-2} + (z-2)/2 int_T^inf t^{z-3} cos(..) dt
    c1 = np.cos(2.0 * T - nu * np.pi) / 2.0 * T ** (zc - 2.0)
    c2 = -(zc - 2.0) / 2.0 * np.sin(2.0 * T - nu * np.pi) / 2.0 * T ** (zc - 3.0)
    tail += (c1 + c2) / np.pi
    return complex(head + tail)


def _vertical_line_integral(g, cfg: MellinConfig, osc_scale: float):
    """(1/pi) int_0^{y_max} Re g(c + iy) dy by resolved composite rules.

    Returns (value, rule_error_estimate) where the estimate is the
    difference between embedded 15- and 7-point panel rules.
    """
    width = (np.pi / 2.0) / max(osc_scale, 0.5)
    n_panels = max(8, int(np.ceil(cfg.y_max / width)))
    edges = np.linspace(0.0, cfg.y_max, n_panels + 1)
    h = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    total = {}
    for npts in (15, 7):
        x, w = sp.roots_legendre(npts)
        y = (mid[:, None] + h[:, None] * x[None, :]).ravel()
        vals = np.real(g(cfg.c + 1j * y)).reshape(len(h), npts)
        total[npts] = float(np.sum((vals * w[None, :]).sum(axis=1) * h)) / np.pi
    return total[15], abs(total[15] - total[7])


def parseval_eval(xi: float, nu: float, eps: float, d: int,
                  cfg: MellinConfig | None = None) -> complex:
    """Window integral of J_nu^2 via the Parseval contour formula.

        (1/2 pi i) int_{c+iR} xi^{-z} M[J_nu^2](z) M[phi](1-z) dz

    equals int phi(t) J_nu^2(xi t) dt.  The contour is truncated at
    y_max with an integration-by-parts tail bound using the measured
    algebraic decay of M[J_nu^2] and the logarithmic phase drift; the
    bound must stay below quad_tol or TruncationInsufficient is raised.
    """
    if xi <= 0:
        raise DomainViolation("xi must be positive")
    cfg = cfg or MellinConfig()
    g = lambda z: xi ** (-z) * mellin_j_squared(z, nu) * mellin_weight(z, eps, d)
    # phase drift: d/dy arg ~ ln(y/2) - ln xi +- ln(1 +- eps)
    osc = abs(np.log(xi)) + np.log(cfg.y_max / 2.0) + 1.0
    val, rule_err = _vertical_line_integral(g, cfg, osc)

    y_edge = cfg.y_max
    m_edge = abs(mellin_j_squared(cfg.c + 1j * y_edge, nu))
    tail = 0.0
    for sgn in (+1.0, -1.0):
        omega = abs(np.log(y_edge / 2.0) - np.log(xi) + sgn * np.log1p(sgn * eps))
        amp = xi ** (-cfg.c) * m_edge * (1.0 + sgn * eps) ** (1.0 - cfg.c) / y_edge
        tail += (2.0 / np.pi) * amp / max(omega, 0.1)
    tail *= 1.5  # safety on the by-parts remainder
    if tail + rule_err > cfg.quad_tol:
        raise TruncationInsufficient(
            f"contour tail bound {tail:.2e} + rule error {rule_err:.2e} "
            f"exceeds quad_tol {cfg.quad_tol:.2e}; increase y_max")
    return complex(val)


def parseval_direct(xi: float, nu: float, eps: float, d: int,
                    cfg: QuadratureConfig | None = None) -> complex:
    """The window integral evaluated directly (cross-check route).

    d=2: int_{1-eps}^{1+eps} J_nu^2(xi t) dt;  d=3 carries the extra
    1/t of the spherical weight.
    """
    cfg = cfg or QuadratureConfig(max_panels=65536)
    if d == 2:
        g = lambda t: bessel_j(nu, xi * t) ** 2
    elif d == 3:
        g = lambda t: bessel_j(nu, xi * t) ** 2 / t
    else:
        raise DomainViolation(f"d must be 2 or 3, got {d}")
    val, _ = integrate_adaptive(g, 1.0 - eps, 1.0 + eps, cfg, scale=2.0 * xi)
    return complex(val)


def i3_limit(eps: float, d: int, cfg: MellinConfig | None = None) -> complex:
    """Limit of the outer window contribution in the k-dominant regime.

    d=2: lim k I3 = (1/2 pi i) int_{c+iR} 2^{z-1} Gamma(1-z) /
         Gamma(1-z/2)^2 * M[phi_2](1-z) dz
    d=3: lim n k I3 = same kernel against M[phi_3](1-z), scaled by
         pi/4 relative to the d=2 normalization.

    The kernel decays only like |y|^{-3/2} and oscillates at the slow
    frequencies |ln(1 +- eps)|, so meaningful tolerances need a large
    y_max; the truncation bound is enforced against quad_tol.
    """
    if not 0 < eps < 1:
        raise DomainViolation("eps must lie in (0, 1)")
    cfg = cfg or MellinConfig()
    kernel = lambda z: (2.0 ** (z - 1.0) * np.exp(
        sp.loggamma(1.0 - z) - 2.0 * sp.loggamma(1.0 - z / 2.0)))
    if d == 2:
        g = lambda z: kernel(z) * mellin_weight(z, eps, 2)
        prefactor = 1.0
    elif d == 3:
        # -(1/4i) int kernel * [-M[phi_3](1-z)] dz = (1/2) int_0^inf Re ... dy
        g = lambda z: kernel(z) * mellin_weight(z, eps, 3)
        prefactor = np.pi / 2.0
    else:
        raise DomainViolation(f"d must be 2 or 3, got {d}")
    osc = np.log(2.0) + 1.0
    val, rule_err = _vertical_line_integral(g, cfg, osc)

    y_edge = cfg.y_max
    k_edge = abs(kernel(cfg.c + 1j * y_edge))
    tail = 0.0
    for sgn in (+1.0, -1.0):
        omega = abs(np.log1p(sgn * eps))
        amp = k_edge * (1.0 + sgn * eps) ** (1.0 - cfg.c) / y_edge
        tail += (2.0 / np.pi) * amp / max(omega, 1e-3)
    tail *= 1.5
    if tail + rule_err > cfg.quad_tol:
        raise TruncationInsufficient(
            f"contour tail bound {tail:.2e} + rule error {rule_err:.2e} "
            f"exceeds quad_tol {cfg.quad_tol:.2e}; increase y_max")
    return complex(prefactor * val)


def i3_direct(n: int, k: float, eps: float, d: int,
              cfg: QuadratureConfig | None = None) -> complex:
    """k I3 (d=2) or n k I3 (d=3) evaluated from the defining integral.

    I3 = (nu/k) int_{1-eps}^{1+eps} f(nu t / k) J_n^2(nu t) dt is the
    piece of B_n whose Bessel argument lies within eps of the order,
    i.e. the turning-point window; it tends to i3_limit as n -> inf
    with n << k.
    """
    cfg = cfg or QuadratureConfig(max_panels=65536)
    nu = n if d == 2 else n + 0.5
    if nu * (1.0 + eps) / k > 1.0:
        raise DomainViolation("window exceeds the unit interval; increase k/n")
    if d == 2:
        g = lambda t: weight_f(nu * t / k, 2) * bessel_j(nu, nu * t) ** 2
        scale = nu
    else:
        g = lambda t: (weight_f(nu * t / k, 3)
                       * (np.pi / (2.0 * nu * t)) * bessel_j(nu, nu * t) ** 2)
        scale = n * nu
    val, _ = integrate_adaptive(g, 1.0 - eps, 1.0 + eps, cfg, scale=2.0 * nu)
    return complex(scale * val)


def k_dominant_prediction(n: int, k, d: int) -> complex:
    """Predicted B_n(k) for n << |k|: ln(k/n)/(pi k) in d=2, pi/(4nk) in d=3."""
    kc = complex(k)
    if kc == 0 or n < 0:
        raise DomainViolation("need k != 0 and n >= 0")
    if d == 2:
        if n == 0:
            raise DomainViolation("d=2 prediction needs n >= 1 for ln(k/n)")
        return complex(np.log(kc / n) / (np.pi * kc))
    if d == 3:
        return complex(np.pi / (4.0 * n * kc))
    raise DomainViolation(f"d must be 2 or 3, got {d}")


def comparable_regime_limit(L: float, d: int,
                            cfg: QuadratureConfig | None = None) -> float:
    """lim k_j B_n(k_j) along n/|k| -> 1/L with L > 1.

    d=2 has the closed form (sqrt(L^2-1)/L + arccosh L)/pi; d=3 is
    (1/2) int_1^L f(t/L) / (t sqrt(t^2 - 1)) dt, integrated after the
    substitution t = cosh(u) that removes the endpoint singularity.
    """
    if L <= 1:
        raise DomainViolation("comparable-regime limit needs L > 1")
    if d == 2:
        return float((np.sqrt(L * L - 1.0) / L + np.arccosh(L)) / np.pi)
    if d == 3:
        cfg = cfg or QuadratureConfig()
        g = lambda u: (np.cosh(u) / L + 1.0) ** 2 / np.cosh(u)
        val, _ = integrate_adaptive(g, 0.0, float(np.arccosh(L)), cfg, scale=1.0)
        return float(0.5 * val.real)
    raise DomainViolation(f"d must be 2 or 3, got {d}")


def airy_tail_integral(a: float) -> float:
    """int_a^inf Ai^2(x) dx = Ai'(a)^2 - a Ai(a)^2 (exact identity)."""
    ai = airy_ai(a).real
    aip = airy_ai_prime(a).real
    return aip * aip - a * ai * ai


def airy_regime_prediction(r_inf: float, d: int) -> float:
    """Turning-point limit constant J_inf = 2^{1/3} f(1) int_{2^{1/3} R}^inf Ai^2.

    Predicts n^{4/3} B_n (d=2) and (2/pi) n^{7/3} B_n (d=3) along
    sequences with n^{2/3}(1 - Re k_n / n) -> R.
    """
    if d not in (2, 3):
        raise DomainViolation(f"d must be 2 or 3, got {d}")
    f1 = 2.0 if d == 2 else 4.0
    c = 2.0 ** (1.0 / 3.0)
    return float(c * f1 * airy_tail_integral(c * r_inf))


def n_dominant_probe(n: int, k, d: int, include_amplitude: bool = False,
                     cfg: QuadratureConfig | None = None):
    """(measured, predicted) for the n >> |k| regime.

    measured: B_n(k) with its leading series factor removed, i.e.
    (n!)^2 (2/k)^{2n} B_n for d=2 (the d=3 analogue carries the
    spherical normalization), computed in scaled arithmetic.
    predicted: the Laplace integral int_0^1 f(t) t^{2n}
    exp(-2 nu Re a~(k t / nu)) dt with a~ the reduced decay exponent
    and nu the Bessel order of the mode; include_amplitude adds the
    (1 - (|k| t / nu)^2)^{-1/2} factor of the oscillation-free
    sub-regime with bounded ratio.
    """
    cfg = cfg or QuadratureConfig()
    mode = ModeSpec(d, n)
    kc = complex(k)
    nu = mode.order
    if nu < 2.0 * abs(kc):
        raise DomainViolation("n-dominant probe requires n/|k| >= 2")
    measured = bte_value_scaled(kc, mode, cfg)

    s = 1.0 / (2.0 * n + 1.0)

    def g(u):
        t = u ** s
        z = kc * t / nu
        expo = np.exp(-2.0 * nu * np.real(decay_exponent_reduced(z)))
        if include_amplitude:
            expo = expo / np.sqrt(1.0 - (abs(kc) * t / nu) ** 2)
        return s * weight_f(t, d) * expo

    predicted, _ = integrate_adaptive(g, 1e-30, 1.0, cfg, scale=1.0)
    return complex(measured), float(predicted.real)


def log_growth_decomposition(k, n: int, c: float,
                             cfg: QuadratureConfig | None = None):
    """Split pi k B_n(k) = I1 + I2 + I3 for d=2 in a horizontal strip.

    With x = Re k >= c > 0:
      I1 = pi k int_0^{c/x} f J_n^2(kt) dt  (vanishing head),
      I2 = ln x + 1 - c/x - ln c            (exact logarithmic core),
      I3 = int_{c/x}^1 (f/t)(pi k t J_n^2(kt) - 1) dt (bounded
           oscillatory remainder).
    Returns (I1, I2, I3); their sum reconstructs pi k B_n(k) to
    quadrature accuracy.
    """
    kc = complex(k)
    x = kc.real
    if not (x >= c > 0):
        raise DomainViolation("log-growth split needs Re k >= c > 0")
    cfg = cfg or QuadratureConfig()
    split = c / x
    g1 = lambda t: weight_f(t, 2) * bessel_j(n, kc * t) ** 2
    i1, _ = integrate_adaptive(g1, 0.0, split, cfg, scale=abs(kc) * split)
    i1 = np.pi * kc * i1
    i2 = float(np.log(x) + 1.0 - split - np.log(c))

    def g3(t):
        jsq = bessel_j(n, kc * t) ** 2
        return weight_f(t, 2) / t * (np.pi * kc * t * jsq - 1.0)

    i3, _ = integrate_adaptive(g3, split, 1.0, cfg, scale=abs(kc))
    return complex(i1), i2, complex(i3)
