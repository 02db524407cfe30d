"""The entire functions B_n(k) whose zeros are the transmission eigenvalues.

    B_n(k) = int_0^1 f(t) J_n(kt)^2 dt          (d = 2, f(t) = t + 1)
    B_n(k) = int_0^1 f(t) j_n(kt)^2 dt          (d = 3, f(t) = (t + 1)^2)

Two evaluation routes are provided.  The direct route integrates the
Bessel factors as-is and is accurate whenever |k| is not tiny compared
to n.  For n >> |k| the integrand underflows like (|k|/2n)^{2n}, so the
scaled route evaluates

    T_n(k) = B_n(k) / C_n(k),    C_n(k) = leading series factor in k,

where T_n is O(1), via the confluent limit series of J_n; C_n carries
the k^{2n} factor analytically.  Zero locations (k != 0) and phase
winding are shared between B_n and T_n, which is what the scan needs.
"""

from __future__ import annotations

import numpy as np
from scipy import special as sp

from .errors import DomainViolation, OverflowDomain
from .quadrature import composite_nodes, integrate_adaptive
from .specfun import bessel_j, bessel_j_prime, spherical_j
from .types import ContourBox, ModeSpec, QuadratureConfig

__all__ = [
    "weight_f",
    "bte_value",
    "bte_derivative",
    "bte_values_batch",
    "bte_value_scaled",
    "bte_scaled_batch",
    "bte_scaled_derivative",
    "scaled_prefactor_log",
    "direct_route_ok",
    "mode_truncation_bound",
]

# Direct evaluation is kept while the magnitude scale of B_n, about
# (e |k| / 2 nu)^{2 nu}, stays above the double-precision underflow
# cliff (exp(-2 * 280) ~ 1e-243 leaves headroom for small T_n factors).
_LOG_UNDERFLOW = 280.0
_DIRECT_N_ALWAYS = 40


def weight_f(t, d: int):
    """Positive weight of the eigenvalue integrand: t+1 (d=2), (t+1)^2 (d=3).

    Derived from the cloak contrast m(r) = (2 + r) / (4 r) through
    f(t) = 4 t m(2 t) (d = 2) and its square analog (d = 3).
    """
    tarr = np.asarray(t, dtype=float)
    if np.any(tarr < 0) or np.any(tarr > 1):
        raise DomainViolation("weight_f requires t in [0, 1]")
    if d == 2:
        return tarr + 1.0
    if d == 3:
        return (tarr + 1.0) ** 2
    raise DomainViolation(f"d must be 2 or 3, got {d}")


def _j_factor(mode: ModeSpec, z):
    """The squared radial factor J_n^2 (d=2) or j_n^2 (d=3)."""
    if mode.d == 2:
        return bessel_j(mode.n, z) ** 2
    return spherical_j(mode.n, z) ** 2


def bte_value(k: complex, mode: ModeSpec, cfg: QuadratureConfig | None = None) -> complex:
    """B_n(k) by adaptive quadrature; entire in k, sampled pointwise.

    Switches to the scaled route when the direct integrand underflows
    (n much larger than |k|); the reconstructed value may then round
    to zero in double precision, which is the honest representable
    answer.
    """
    cfg = cfg or QuadratureConfig()
    kc = complex(k)
    if kc == 0:
        # J_n(0) = j_n(0) = 0 for n >= 1; closed forms at n = 0
        if mode.n > 0:
            return 0.0 + 0.0j
        return complex(1.5 if mode.d == 2 else 7.0 / 3.0)
    if not direct_route_ok(mode, abs(kc)):
        t = bte_value_scaled(kc, mode, cfg)
        scale = np.exp(scaled_prefactor_log(kc, mode))
        return complex(scale * t)
    g = lambda t: weight_f(t, mode.d) * _j_factor(mode, kc * t)
    val, _ = integrate_adaptive(g, 0.0, 1.0, cfg, scale=abs(kc))
    return complex(val)


def bte_derivative(k: complex, mode: ModeSpec, cfg: QuadratureConfig | None = None) -> complex:
    """dB_n/dk by differentiation under the integral sign."""
    cfg = cfg or QuadratureConfig()
    kc = complex(k)
    if kc == 0:
        return 0.0 + 0.0j  # B_n is even in k
    if not direct_route_ok(mode, abs(kc)):
        # d/dk [C T] = C (T' + (dlogC/dk) T); dlogC/dk = 2n/k
        t = bte_value_scaled(kc, mode, cfg)
        tp = bte_scaled_derivative(kc, mode, cfg)
        scale = np.exp(scaled_prefactor_log(kc, mode))
        return complex(scale * (tp + (2.0 * mode.n / kc) * t))
    if mode.d == 2:
        def g(t):
            z = kc * t
            return (weight_f(t, 2) * 2.0 * t
                    * bessel_j(mode.n, z) * bessel_j_prime(mode.n, z))
    else:
        def g(t):
            z = kc * t
            jn = spherical_j(mode.n, z)
            if mode.n == 0:
                jp = -spherical_j(1, z)
            else:
                jp = spherical_j(mode.n - 1, z) - (mode.n + 1) / z * jn
            return weight_f(t, 3) * 2.0 * t * jn * jp
    val, _ = integrate_adaptive(g, 0.0, 1.0, cfg, scale=abs(kc))
    return complex(val)


def bte_values_batch(karr, mode: ModeSpec, cfg: QuadratureConfig | None = None,
                     points_per_panel: int = 15):
    """Direct-route B_n on an array of k, on a shared composite grid.

    The grid is resolved for the largest |k| in the batch; per-point
    adaptivity is traded for one vectorized Bessel call.  Intended for
    boundary phase tracking and grid scans; cross-checked against
    bte_value by the test suite.
    """
    cfg = cfg or QuadratureConfig()
    ks = np.asarray(karr, dtype=complex).ravel()
    if ks.size == 0:
        return np.zeros(0, dtype=complex)
    scale = float(np.max(np.abs(ks)))
    nodes, wts = composite_nodes(0.0, 1.0, scale, cfg,
                                 points_per_panel=points_per_panel)
    z = ks[:, None] * nodes[None, :]
    if mode.d == 2:
        jsq = sp.jv(mode.n, z) ** 2
    else:
        jsq = np.empty_like(z)
        nzmask = z != 0
        zv = z[nzmask]
        jsq[nzmask] = (np.pi / (2.0 * zv)) * sp.jv(mode.n + 0.5, zv) ** 2
        jsq[~nzmask] = 1.0 if mode.n == 0 else 0.0
    vals = (weight_f(nodes, mode.d)[None, :] * jsq) @ wts
    if not np.all(np.isfinite(vals)):
        raise OverflowDomain("non-finite value in bte_values_batch")
    return vals.reshape(np.shape(karr))


def direct_route_ok(mode: ModeSpec, abs_k: float) -> bool:
    """True when the unscaled integrand stays above the underflow cliff."""
    if mode.n <= _DIRECT_N_ALWAYS:
        return True
    nu = mode.order
    if abs_k >= 2.0 * nu / np.e:
        return True
    return nu * np.log(2.0 * nu / (np.e * abs_k)) < _LOG_UNDERFLOW


def _confluent_series(a: float, x):
    """0F1(a; x) by direct summation, vectorized over x."""
    x = np.asarray(x, dtype=complex)
    term = np.ones_like(x)
    total = np.ones_like(x)
    for m in range(1, 600):
        term = term * x / (m * (a + m - 1.0))
        total += term
        if np.max(np.abs(term)) <= 1e-17 * max(np.max(np.abs(total)), 1.0):
            break
    else:
        raise OverflowDomain("confluent series did not converge")
    return total


def scaled_prefactor_log(k: complex, mode: ModeSpec) -> complex:
    """log of the analytic factor C_n(k) with B_n = C_n * T_n.

    d=2: C = (k/2)^{2n} / (n!)^2
    d=3: C = pi k^{2n} / (2^{2n+2} Gamma(n + 3/2)^2)
    Principal log of k; the 2 pi i ambiguity cancels in exp for the
    integer power.
    """
    kc = complex(k)
    if kc == 0:
        raise DomainViolation("prefactor log undefined at k = 0")
    n = mode.n
    if mode.d == 2:
        return 2.0 * n * np.log(kc / 2.0) - 2.0 * sp.gammaln(n + 1.0)
    return (np.log(np.pi) + 2.0 * n * np.log(kc)
            - (2.0 * n + 2.0) * np.log(2.0) - 2.0 * sp.gammaln(n + 1.5))


def _scaled_u_grid(mode: ModeSpec, scale: float, cfg: QuadratureConfig):
    """Log-spaced panels for the substitution t = u^{1/(2n+1)} (d=2).

    The substitution flattens the t^{2n} spike; the local oscillation
    frequency in u is |k| s / u (s = 1/(2n+1)), so panel widths shrink
    geometrically toward u = 0.  Contributions below u = 1e-30 are
    beyond double precision relative to T = O(s).
    """
    s = 1.0 / (2.0 * mode.n + 1.0)
    dln = min(0.5, cfg.oscillation_split / max(scale * s, 1.0))
    n_log = int(np.ceil(np.log(1e30) / dln))
    edges = np.exp(-dln * np.arange(n_log, -1, -1.0))
    x, w = np.polynomial.legendre.leggauss(15)
    h = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    u = (mid[:, None] + h[:, None] * x[None, :]).ravel()
    wts = (h[:, None] * w[None, :]).ravel()
    return s, u, wts


def _scaled_integrand_parts(mode: ModeSpec, s: float, u: np.ndarray):
    """Nodes t(u) and the confluent parameter for the scaled route."""
    t = u ** s
    a = mode.n + 1.0 if mode.d == 2 else mode.n + 1.5
    return t, a


def bte_value_scaled(k: complex, mode: ModeSpec, cfg: QuadratureConfig | None = None) -> complex:
    """T_n(k) = B_n(k) / C_n(k), the O(1) rescaled eigenvalue function.

    T_n(k) = s * int_0^1 f(t(u)) F(k t(u))^2 du with t = u^s,
    s = 1/(2n+1) and F = 0F1(a; -(kt)^2/4), a = n+1 (d=2), n+3/2 (d=3).
    Positive on the real and (after the sign split) imaginary axes;
    shares its nonzero zeros and winding with B_n.
    """
    return complex(bte_scaled_batch(np.array([k]), mode, cfg)[0])


def bte_scaled_batch(karr, mode: ModeSpec, cfg: QuadratureConfig | None = None):
    """Vectorized T_n over an array of k (shared u-grid)."""
    cfg = cfg or QuadratureConfig()
    ks = np.asarray(karr, dtype=complex).ravel()
    if ks.size == 0:
        return np.zeros(0, dtype=complex)
    scale = float(np.max(np.abs(ks)))
    s, u, wts = _scaled_u_grid(mode, scale, cfg)
    t, a = _scaled_integrand_parts(mode, s, u)
    z = ks[:, None] * t[None, :]
    F = _confluent_series(a, -0.25 * z * z)
    vals = s * (weight_f(t, mode.d)[None, :] * F ** 2) @ wts
    if not np.all(np.isfinite(vals)):
        raise OverflowDomain("non-finite value in bte_scaled_batch")
    return vals.reshape(np.shape(karr))


def bte_scaled_derivative(k: complex, mode: ModeSpec,
                          cfg: QuadratureConfig | None = None) -> complex:
    """dT_n/dk via d/dz 0F1(a; -z^2/4) = -(z / 2a) 0F1(a+1; -z^2/4)."""
    cfg = cfg or QuadratureConfig()
    kc = complex(k)
    s, u, wts = _scaled_u_grid(mode, abs(kc), cfg)
    t, a = _scaled_integrand_parts(mode, s, u)
    z = kc * t
    F = _confluent_series(a, -0.25 * z * z)
    Fp = -(z / (2.0 * a)) * _confluent_series(a + 1.0, -0.25 * z * z)
    integrand = weight_f(t, mode.d) * t * 2.0 * F * Fp
    return complex(s * np.dot(integrand, wts))


def mode_truncation_bound(box: ContourBox | None,
                          cfg: QuadratureConfig | None = None) -> int:
    """Least n_max with B_n nonvanishing on the box for all n >= n_max.

    Writing J_nu(z) = (z/2)^nu / Gamma(nu+1) * (1 + r(z)), the series
    remainder obeys |r| <= q = exp(K^2 / (4(nu+1))) - 1 with
    K = max |k| over the box, since (nu+1)_m >= (nu+1)^m.  Then

        B_n = C_n(k) * int f t^{2n(+1)} (1 + r)^2 dt

    cannot vanish for k != 0 while 2q + q^2 < 1, i.e. while
    n + 1 > K^2 / (2 ln 2).  The returned bound is certified, not
    asymptotic.  ``cfg`` is accepted for signature uniformity; the
    bound is analytic and does not integrate anything.
    """
    # degenerate boxes (segments, points) still carry k values, so
    # only a missing box or the origin alone yields a zero bound
    if box is None or box.max_abs_k == 0.0:
        return 0
    K = box.max_abs_k
    return max(0, int(np.ceil(K * K / (2.0 * np.log(2.0)) - 1.0)))
