"""Complex special functions for the eigenvalue scans.

Bessel, spherical Bessel and Airy evaluation for complex arguments and
large orders, together with the auxiliary analytic functions of the
uniform large-order (turning-point) asymptotics: the exponential decay
rate ``decay_exponent``, its small-argument reduction
``decay_exponent_reduced``, the oscillation phase ``phase_function``,
the Airy argument ``airy_argument`` and the first Airy correction
coefficient ``airy_correction``.

All branch choices are principal (log, sqrt, arccos).  Near the turning
point z = 1 the closed forms suffer severe cancellation, so the Airy
argument and the correction coefficient switch to precomputed Taylor
series there; the guard bands and the series/closed-form overlap are
exercised by the test suite.
"""

from __future__ import annotations

import enum
import threading

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy import special as sp

from .errors import BranchCutViolation, DomainViolation, OverflowDomain

__all__ = [
    "EvalMethod",
    "TurningSide",
    "AsymptoticForm",
    "bessel_j",
    "bessel_j_prime",
    "spherical_j",
    "airy_ai",
    "airy_ai_prime",
    "decay_exponent",
    "decay_exponent_reduced",
    "phase_function",
    "airy_argument",
    "airy_correction",
    "bessel_j_uniform",
    "bessel_j_squared_asymptotic",
    "last_eval_method",
    "turning_side",
]


class EvalMethod(enum.Enum):
    """Evaluation regime attributed to a bessel_j call (diagnostics)."""

    SERIES = "Series"
    RECURRENCE = "Recurrence"
    LARGE_ARGUMENT = "LargeArgument"
    OLVER_UNIFORM = "OlverUniform"
    TURNING_POINT_SERIES = "TurningPointSeries"


class TurningSide(enum.Enum):
    """Position of Re z relative to the turning point z = 1."""

    BELOW = "below"   # 0 < Re z < 1, exponential regime
    ABOVE = "above"   # Re z > 1, oscillatory regime


class AsymptoticForm(enum.Enum):
    """Which leading-order Bessel approximant to evaluate."""

    EXPONENTIAL = "exponential"       # J_nu^2(nu z), decay side of the turning point
    OSCILLATORY = "oscillatory"       # J_nu^2(nu z), oscillation side
    LARGE_ARGUMENT = "large_argument"  # J_nu(z), |z| large, order fixed
    LARGE_ORDER = "large_order"        # J_nu(z), order large, z bounded


_diag = threading.local()

# Taylor coefficients of the Airy argument about the turning point:
# airy_argument(z) = w * sum(c[j] * w**j), w = 1 - z, radius 1.
# c[0] = 2**(1/3), c[1] = 3*2**(1/3)/10, c[2] = 32*2**(1/3)/175.
_AIRY_ARG_SERIES = np.array([
    1.2599210498948732, 0.37797631496846196, 0.23038556340934824,
    0.16590960364964868, 0.1293138708645101, 0.10568046188858134,
    0.08916997952268187, 0.07700014900618803, 0.06767055661251062,
    0.06029942513243309, 0.054334491580577286, 0.04941238704223535,
    0.04528439148646549, 0.04177463831774603, 0.03875533942821943,
    0.036131460014187496, 0.03383089245995493, 0.03179795967273854,
    0.02998900387878216, 0.02836932075197791, 0.026910984153200042,
    0.025591274114662717, 0.024391521867005307, 0.023296248530009948,
    0.02229251405414463, 0.02136941898395731,
])

# Taylor coefficients of the correction coefficient about the turning
# point, as a function of w = 1 - z; value at w = 0 is 2**(1/3)/70.
_AIRY_CORR_SERIES = np.array([
    0.01799887214135533, 0.011199298221287762, 0.00594040697860143,
    0.002867672451639004, 0.001233918905256727, 0.0004169250674535179,
    3.301733850859498e-05, -0.0001318076238578203, -0.00019068703700508472,
    -0.0002011653799786914, -0.00019147598897864383, -0.00017489916769005749,
    -0.0001573145962922747, -0.00014106100671819016,
])

# Guard bands: inside |1 - z| < 0.2 the Airy argument uses its series;
# inside |airy_argument| < 0.05 the correction coefficient does.
_SERIES_RADIUS = 0.2
_CORR_SERIES_RADIUS = 0.05

# Validated accuracy domain of bessel_j (order, |z|, |Im z|); calls
# outside it raise DomainViolation rather than degrade silently.
MAX_ORDER = 4000.0
MAX_ABS_Z = 20000.0
MAX_IM_Z = 600.0


def _as_complex(z):
    """Coerce to complex, clearing signed-zero imaginary parts.

    scipy's Airy evaluator takes the wrong branch for arguments with a
    negative-zero imaginary part, so every wrapper funnels through here.
    """
    z = np.asarray(z, dtype=complex)
    if z.ndim == 0:
        zc = complex(z)
        if zc.imag == 0.0:
            zc = complex(zc.real, 0.0)
        return zc
    out = z.copy()
    mask = out.imag == 0.0
    if mask.any():
        out[mask] = out[mask].real + 0.0j
    return out


def _check_finite(value, where):
    if np.all(np.isfinite(value)):
        return value
    raise OverflowDomain(f"non-finite result in {where}")


def _classify(order: float, z: complex) -> EvalMethod:
    """Attribute an evaluation regime to (order, z).

    The classification mirrors the stability map of the classical
    algorithms: power series for moderate |z|, backward recurrence for
    integer orders at intermediate |z|, uniform (Airy-type) large-order
    asymptotics near and beyond the turning point, Hankel-type expansion
    for dominant argument.  Exactly one tag applies per call.
    """
    az = abs(z)
    if az <= max(12.0, 1.5 * order):
        if order >= 30.0 and abs(z / order - 1.0) < 0.05:
            return EvalMethod.TURNING_POINT_SERIES
        return EvalMethod.SERIES
    if az > max(30.0, 2.0 * order):
        return EvalMethod.LARGE_ARGUMENT
    if float(order).is_integer() and az <= 2.0 * order:
        return EvalMethod.RECURRENCE
    if order >= 30.0:
        return EvalMethod.OLVER_UNIFORM
    return EvalMethod.SERIES


def last_eval_method() -> EvalMethod | None:
    """Regime attributed to the most recent scalar bessel_j call."""
    return getattr(_diag, "method", None)


def bessel_j(order: float, z):
    """Bessel function of the first kind J_order(z), complex argument.

    Vectorized over ``z``.  Validated to 1e-11 relative accuracy for
    order <= MAX_ORDER, |z| <= MAX_ABS_Z, |Im z| <= MAX_IM_Z.  Results that underflow
    to zero in double precision are returned as zero; non-finite
    intermediates raise OverflowDomain.
    """
    if not np.isfinite(order) or order < 0:
        raise DomainViolation(f"order must be finite and >= 0, got {order}")
    if order > MAX_ORDER:
        raise DomainViolation(f"order {order} exceeds validated {MAX_ORDER}")
    zc = _as_complex(z)
    zarr = np.asarray(zc)
    if np.any(np.abs(zarr) > MAX_ABS_Z) or np.any(np.abs(zarr.imag) > MAX_IM_Z):
        raise DomainViolation(
            f"argument outside validated domain |z| <= {MAX_ABS_Z}, "
            f"|Im z| <= {MAX_IM_Z}")
    if np.isscalar(zc):
        _diag.method = _classify(order, zc)
    out = sp.jv(order, zc)
    return _check_finite(out, "bessel_j")


def bessel_j_prime(order: float, z):
    """d/dz J_order(z) via J' = (J_{order-1} - J_{order+1}) / 2.

    At order 0 the reflection J_{-1} = -J_1 gives J_0' = -J_1.
    """
    zc = _as_complex(z)
    if order == 0:
        return -bessel_j(1.0, zc)
    return (bessel_j(order - 1.0, zc) - bessel_j(order + 1.0, zc)) / 2.0


def spherical_j(n: int, z):
    """Spherical Bessel function j_n(z) = sqrt(pi/(2z)) J_{n+1/2}(z).

    Principal square root.  The removable singularity at z = 0 is
    filled with the limit value (1 for n = 0, else 0).
    """
    if n < 0 or n != int(n):
        raise DomainViolation(f"n must be a nonnegative integer, got {n}")
    zc = _as_complex(z)
    scalar = np.isscalar(zc)
    zarr = np.atleast_1d(np.asarray(zc, dtype=complex))
    out = np.empty_like(zarr)
    zero = zarr == 0
    if zero.any():
        out[zero] = 1.0 if n == 0 else 0.0
    nz = ~zero
    if nz.any():
        zv = zarr[nz]
        out[nz] = np.sqrt(np.pi / (2.0 * zv)) * sp.jv(n + 0.5, zv)
    _check_finite(out, "spherical_j")
    return complex(out[0]) if scalar else out.reshape(np.shape(zc))


def airy_ai(z):
    """Airy function Ai(z) for complex z."""
    zc = _as_complex(z)
    out = sp.airy(zc)[0]
    return _check_finite(out, "airy_ai")


def airy_ai_prime(z):
    """Derivative Ai'(z) for complex z."""
    zc = _as_complex(z)
    out = sp.airy(zc)[1]
    return _check_finite(out, "airy_ai_prime")


def turning_side(z) -> TurningSide:
    """Classify Re z relative to the turning point."""
    zc = complex(z)
    if zc.real <= 0:
        raise DomainViolation("turning_side requires Re z > 0")
    return TurningSide.BELOW if zc.real < 1.0 else TurningSide.ABOVE


def _check_right_half(z, name):
    if np.any(np.asarray(z).real <= 0):
        raise BranchCutViolation(f"{name} requires Re z > 0")


def _check_sector(z, name):
    zarr = np.asarray(z)
    if np.any(zarr == 0) or np.any(np.abs(np.angle(zarr)) > np.pi - 0.2):
        raise BranchCutViolation(f"{name} requires 0 < |arg z| margin: "
                                 "|arg z| <= pi - 0.2 and z != 0")


def decay_exponent(z):
    """Exponential decay rate of J_nu(nu z) left of the turning point.

    Returns log((1 + sqrt(1 - z^2)) / z) - sqrt(1 - z^2) with principal
    branches, analytic for Re z > 0 off the cut [1, inf) on the real
    axis.  Vanishes at z = 1; d/dz = -sqrt(1 - z^2)/z.
    """
    zc = _as_complex(z)
    _check_right_half(zc, "decay_exponent")
    zarr = np.asarray(zc)
    on_cut = (zarr.imag == 0) & (zarr.real > 1.0)
    if np.any(on_cut):
        raise BranchCutViolation("decay_exponent is cut along (1, inf)")
    s = np.sqrt(1.0 - zarr * zarr)
    return np.log((1.0 + s) / zarr) - s


def decay_exponent_reduced(z):
    """Decay rate with its logarithmic part removed; ~ z^2/4 near 0.

    Equals 1 - sqrt(1 - z^2) + log((1 + sqrt(1 - z^2)) / 2), i.e.
    decay_exponent(z) + 1 - log(2/z).  Same domain and cuts as
    decay_exponent.  Governs the residual decay of the n-dominant
    regime after the leading (z/2)^nu / nu! factor is split off.
    """
    zc = _as_complex(z)
    _check_right_half(zc, "decay_exponent_reduced")
    zarr = np.asarray(zc)
    on_cut = (zarr.imag == 0) & (zarr.real > 1.0)
    if np.any(on_cut):
        raise BranchCutViolation("decay_exponent_reduced is cut along (1, inf)")
    s = np.sqrt(1.0 - zarr * zarr)
    return 1.0 - s + np.log((1.0 + s) / 2.0)


def phase_function(z):
    """Oscillation phase of J_nu(nu z) right of the turning point.

    Returns sqrt(z^2 - 1) - arccos(1/z), principal branches, analytic
    for Re z > 0 off the cut (0, 1] on the real axis; J_nu(nu z) ~
    cos(nu * phase - pi/4) up to amplitude factors.  Vanishes at z = 1.
    """
    zc = _as_complex(z)
    _check_right_half(zc, "phase_function")
    zarr = np.asarray(zc)
    on_cut = (zarr.imag == 0) & (zarr.real < 1.0)
    if np.any(on_cut):
        raise BranchCutViolation("phase_function is cut along (0, 1)")
    return np.sqrt(zarr * zarr - 1.0) - np.arccos(1.0 / zarr)


def airy_argument(z):
    """Argument mapping of the uniform Airy-type Bessel approximation.

    Piecewise-analytic continuation of the classical variable:
    (3/2 * decay_exponent)^(2/3) for Re z < 1 and
    -(3/2 * phase_function)^(2/3) for Re z > 1, glued across the
    turning point by a Taylor series inside |1 - z| < 0.2 where the
    closed forms cancel catastrophically.  Continuous on the sector
    |arg z| <= 2pi/3; behaves like 2^(1/3) (1 - z) near z = 1.
    """
    zc = _as_complex(z)
    _check_sector(zc, "airy_argument")
    scalar = np.isscalar(zc)
    zarr = np.atleast_1d(np.asarray(zc, dtype=complex))
    w = 1.0 - zarr
    out = np.empty_like(zarr)

    near = np.abs(w) < _SERIES_RADIUS
    if near.any():
        out[near] = w[near] * npoly.polyval(w[near], _AIRY_ARG_SERIES)
    right = ~near & (zarr.real > 1.0)
    if right.any():
        out[right] = -(1.5 * phase_function(zarr[right])) ** (2.0 / 3.0)
    left = ~near & (zarr.real <= 1.0)
    if left.any():
        # the decay-exponent formula inline: valid on the whole sector
        # (the principal branches never cross their cuts there), while
        # decay_exponent itself keeps the stricter Re z > 0 contract
        zl = zarr[left]
        s = np.sqrt(1.0 - zl * zl)
        out[left] = (1.5 * (np.log((1.0 + s) / zl) - s)) ** (2.0 / 3.0)
    return complex(out[0]) if scalar else out.reshape(np.shape(zc))


def airy_correction(z):
    """First correction coefficient of the uniform Bessel approximation.

    Two-branch closed form away from the turning point; near it
    (|airy_argument| < 0.05) a local Taylor series in 1 - z is used
    because the closed form cancels to a tiny limit value 2^(1/3)/70.
    """
    zc = _as_complex(z)
    _check_sector(zc, "airy_correction")
    scalar = np.isscalar(zc)
    zarr = np.atleast_1d(np.asarray(zc, dtype=complex))
    zeta = np.atleast_1d(np.asarray(airy_argument(zarr), dtype=complex))
    out = np.empty_like(zarr)

    near = np.abs(zeta) < _CORR_SERIES_RADIUS
    if near.any():
        out[near] = npoly.polyval(1.0 - zarr[near], _AIRY_CORR_SERIES)
    far = ~near
    if far.any():
        zf, cf = zarr[far], zeta[far]
        right = zf.real > 1.0
        res = np.empty_like(zf)
        if right.any():
            u = zf[right] * zf[right] - 1.0
            res[right] = (-5.0 / (48.0 * cf[right] ** 2)
                          + (5.0 / (24.0 * u ** 1.5) + 1.0 / (8.0 * np.sqrt(u)))
                          / np.sqrt(-cf[right]))
        if (~right).any():
            u = 1.0 - zf[~right] * zf[~right]
            res[~right] = (-5.0 / (48.0 * cf[~right] ** 2)
                           + (5.0 / (24.0 * u ** 1.5) - 1.0 / (8.0 * np.sqrt(u)))
                           / np.sqrt(cf[~right]))
        out[far] = res
    return complex(out[0]) if scalar else out.reshape(np.shape(zc))


def bessel_j_uniform(nu: float, z):
    """Uniform large-order approximation of J_nu(nu z).

    Airy-type expansion valid across the turning point:

        (4 zeta / (1 - z^2))^(1/4) * [nu^(-1/3) Ai(nu^(2/3) zeta)
            + nu^(-5/3) airy_correction * Ai'(nu^(2/3) zeta)]

    with zeta = airy_argument(z).  Relative error O(nu^-2) uniformly on
    the sector |arg z| <= pi - 0.2; the amplitude prefactor is computed
    from the turning-point series inside |1 - z| < 0.2 to avoid the
    0/0 cancellation at z = 1.
    """
    if nu < 1:
        raise DomainViolation("bessel_j_uniform requires nu >= 1")
    zc = _as_complex(z)
    scalar = np.isscalar(zc)
    zarr = np.atleast_1d(np.asarray(zc, dtype=complex))
    if np.any(np.abs(np.angle(zarr)) > np.pi - 0.2):
        raise DomainViolation("bessel_j_uniform requires |arg z| <= pi - 0.2")
    w = 1.0 - zarr
    zeta = np.atleast_1d(np.asarray(airy_argument(zarr), dtype=complex))

    pref = np.empty_like(zarr)
    near = np.abs(w) < _SERIES_RADIUS
    if near.any():
        # 4*zeta/(1 - z^2) = 4*P(w)/(2 - w) with zeta = w*P(w), 1-z^2 = w(2-w)
        pref[near] = (4.0 * npoly.polyval(w[near], _AIRY_ARG_SERIES)
                      / (2.0 - w[near])) ** 0.25
    if (~near).any():
        pref[~near] = (4.0 * zeta[~near] / (1.0 - zarr[~near] ** 2)) ** 0.25

    big = _as_complex(nu ** (2.0 / 3.0) * zeta)
    ai, aip, _, _ = sp.airy(big)
    corr = np.atleast_1d(np.asarray(airy_correction(zarr), dtype=complex))
    out = pref * (nu ** (-1.0 / 3.0) * ai + nu ** (-5.0 / 3.0) * corr * aip)
    _check_finite(out, "bessel_j_uniform")
    return complex(out[0]) if scalar else out.reshape(np.shape(zc))


def bessel_j_squared_asymptotic(form: AsymptoticForm, nu: float, z):
    """Leading-order Bessel approximants used by the regime analysis.

    EXPONENTIAL and OSCILLATORY approximate J_nu^2(nu z) on either side
    of the turning point; LARGE_ARGUMENT and LARGE_ORDER approximate
    J_nu(z) itself for dominant argument / dominant order.
    """
    zc = _as_complex(z)
    zarr = np.asarray(zc, dtype=complex)
    if form is AsymptoticForm.EXPONENTIAL:
        if np.any(zarr.real <= 0) or np.any(np.abs(zarr) >= 1):
            raise DomainViolation("exponential form requires z in the unit "
                                  "half-disc Re z > 0, |z| < 1")
        a = decay_exponent(zarr)
        return np.exp(-2.0 * nu * a) / (2.0 * np.pi * nu * np.sqrt(1.0 - zarr ** 2))
    if form is AsymptoticForm.OSCILLATORY:
        if np.any(zarr.real <= 1):
            raise DomainViolation("oscillatory form requires Re z > 1")
        b = phase_function(zarr)
        return (2.0 / (np.pi * nu * np.sqrt(zarr ** 2 - 1.0))
                * np.cos(nu * b - np.pi / 4.0) ** 2)
    if form is AsymptoticForm.LARGE_ARGUMENT:
        if np.any((zarr.imag == 0) & (zarr.real <= 0)):
            raise DomainViolation("large-argument form requires |arg z| < pi")
        return (np.sqrt(2.0 / (np.pi * zarr))
                * np.cos(zarr - np.pi * nu / 2.0 - np.pi / 4.0))
    if form is AsymptoticForm.LARGE_ORDER:
        # log-domain to keep (e z / 2 nu)^nu representable
        logval = nu * np.log(np.e * zarr / (2.0 * nu)) - 0.5 * np.log(2.0 * np.pi * nu)
        return np.exp(logval)
    raise DomainViolation(f"unknown asymptotic form {form!r}")
