"""Argument-principle zero location for the eigenvalue functions.

The zeros of B_n inside a rectangle are counted by tracking the phase
of the rescaled function T_n = B_n / C_n along the boundary, where
C_n(k) is the analytic k^{2n}-type series prefactor.  T_n carries the
same zeros and winding as B_n for k != 0 but is numerically O(1)
across all modes, which keeps phase tracking meaningful where B_n
itself spans hundreds of orders of magnitude.

Counting boxes are quadrisected until each holds an isolated cluster,
then Newton iteration on the better-conditioned of B_n / T_n refines
each zero.  All boundary evaluations are batched per refinement round.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .btefun import (bte_derivative, bte_scaled_batch, bte_scaled_derivative,
                     bte_value, bte_value_scaled, bte_values_batch,
                     direct_route_ok, mode_truncation_bound,
                     scaled_prefactor_log)
from .errors import BoundaryTooClose, DomainViolation, EmptyReport, NoConvergence
from .types import (ContourBox, EigenvalueRecord, ModeSpec, QuadratureConfig,
                    ScanReport, WindingResult)

__all__ = [
    "boundary_winding",
    "isolate_zeros",
    "newton_refine",
    "scan_box",
    "strip_margin",
]

# Phase-tracking policy: refine while any consecutive increment
# reaches PHASE_STEP_LIMIT; accept when the total winding is within
# PHASE_INT_TOL of an integer.
PHASE_STEP_LIMIT = np.pi / 2
PHASE_INT_TOL = 1e-3
MAX_REFINE_ROUNDS = 14

# Boundary proximity: a sample whose rescaled modulus dips below
# DIP_THRESHOLD times the local running median indicates a zero on or
# near the contour; the box is jittered by JITTER_FRACTION of its
# diagonal and retried up to MAX_JITTER times.
DIP_THRESHOLD = 1e-3
DIP_WINDOW = 15
JITTER_FRACTION = 1e-3
MAX_JITTER = 5

# Scans clip the left box edge away from the origin: B_n has a trivial
# zero of order 2n at k = 0 from its k^{2n} series factor, which is not
# an eigenvalue and would pin the contour to a zero.
ORIGIN_CLIP = 0.02


def _rescaled_log_values(mode: ModeSpec, karr: np.ndarray,
                         cfg: QuadratureConfig):
    """(log|T_n|, arg T_n) on an array of k, route chosen pointwise.

    Where the direct integrand is representable, T_n is reconstructed
    in log space from B_n; elsewhere the scaled series route evaluates
    T_n outright.  arg T_n = arg B_n - 2n arg k exactly, so the two
    routes agree up to evaluation error.
    """
    ks = np.asarray(karr, dtype=complex).ravel()
    logmod = np.empty(ks.size)
    phase = np.empty(ks.size)
    absk = np.abs(ks)
    direct = np.array([direct_route_ok(mode, a) for a in absk])
    if direct.any():
        vals = bte_values_batch(ks[direct], mode, cfg)
        pref = np.array([scaled_prefactor_log(k, mode) for k in ks[direct]])
        with np.errstate(divide="ignore"):
            logmod[direct] = np.log(np.abs(vals)) - pref.real
        phase[direct] = np.angle(vals) - 2.0 * mode.n * np.angle(ks[direct])
    if (~direct).any():
        tvals = bte_scaled_batch(ks[~direct], mode, cfg)
        with np.errstate(divide="ignore"):
            logmod[~direct] = np.log(np.abs(tvals))
        phase[~direct] = np.angle(tvals)
    return logmod, phase


def _boundary_loop(box: ContourBox, spacing: float):
    """Closed counterclockwise sample loop along the box boundary."""
    def edge(a: complex, b: complex):
        npts = max(4, int(np.ceil(abs(b - a) / spacing)))
        s = np.arange(npts) / npts
        return a + (b - a) * s
    c = box.corners
    pts = np.concatenate([edge(c[i], c[(i + 1) % 4]) for i in range(4)])
    return np.append(pts, pts[0])


def _wrap(dphi):
    return (dphi + np.pi) % (2.0 * np.pi) - np.pi


def _rolling_median(x: np.ndarray, window: int) -> np.ndarray:
    if x.size <= window:
        return np.full_like(x, np.median(x))
    pad = window // 2
    xp = np.concatenate([x[-pad:], x, x[:pad]])
    out = np.empty_like(x)
    for i in range(x.size):
        out[i] = np.median(xp[i:i + window])
    return out


def _winding_once(mode: ModeSpec, box: ContourBox,
                  cfg: QuadratureConfig) -> WindingResult:
    # initial spacing: quarter phase-wavelength of the corrected phase,
    # which drifts at most ~2 rad per unit of Re k after the k^{2n}
    # swing is removed; high modes start coarser since T_n is flat
    base = 0.125 if mode.n <= 40 else 0.5
    pts = _boundary_loop(box, base)
    logmod, phase = _rescaled_log_values(mode, pts, cfg)

    for _ in range(MAX_REFINE_ROUNDS):
        steps = np.abs(_wrap(np.diff(phase)))
        bad = np.flatnonzero(steps >= PHASE_STEP_LIMIT)
        if bad.size == 0:
            break
        mids = 0.5 * (pts[bad] + pts[bad + 1])
        lm, ph = _rescaled_log_values(mode, mids, cfg)
        pts = np.insert(pts, bad + 1, mids)
        logmod = np.insert(logmod, bad + 1, lm)
        phase = np.insert(phase, bad + 1, ph)
    else:
        raise BoundaryTooClose(
            f"phase step >= pi/2 persists on {box} for n={mode.n} "
            "(zero on or near the contour)")

    finite = logmod[np.isfinite(logmod)]
    if finite.size == 0:
        raise BoundaryTooClose(f"function vanishes along boundary of {box}")
    dip = logmod - _rolling_median(logmod, DIP_WINDOW)
    min_dip = float(np.exp(np.min(dip)))
    if not np.isfinite(min_dip) or min_dip < DIP_THRESHOLD:
        raise BoundaryTooClose(
            f"boundary modulus dips to {min_dip:.2e} of its local median "
            f"on {box} for n={mode.n}")

    raw = float(np.sum(_wrap(np.diff(phase))) / (2.0 * np.pi))
    count = int(np.round(raw))
    residual = abs(raw - count)
    if residual > PHASE_INT_TOL:
        raise BoundaryTooClose(
            f"phase integral {raw:.6f} not near an integer on {box}")
    return WindingResult(count=count, phase_residual=residual,
                         boundary_min_modulus=float(np.exp(np.min(logmod))))


def boundary_winding(mode: ModeSpec, box: ContourBox,
                     cfg: QuadratureConfig | None = None) -> WindingResult:
    """Number of zeros of B_n inside box, counted with multiplicity.

    Adaptive phase tracking along the boundary; raises
    BoundaryTooClose after jittered retries if a zero pins the contour.
    """
    cfg = cfg or QuadratureConfig()
    jitter = JITTER_FRACTION * box.diagonal
    last_exc = None
    for attempt in range(MAX_JITTER + 1):
        if attempt == 0:
            candidate = box
        else:
            # grow outward so the enclosed zero set cannot shrink
            pad = attempt * jitter
            candidate = ContourBox(max(box.re_min - pad, ORIGIN_CLIP / 2)
                                   if box.re_min > 0 else box.re_min - pad,
                                   box.re_max + pad,
                                   box.im_min - pad, box.im_max + pad)
        try:
            return _winding_once(mode, candidate, cfg)
        except BoundaryTooClose as exc:
            last_exc = exc
    raise last_exc


def isolate_zeros(mode: ModeSpec, box: ContourBox, cell_size: float,
                  cfg: QuadratureConfig | None = None) -> list[ContourBox]:
    """Disjoint sub-boxes of diameter <= cell_size covering all zeros.

    Quadrisection driven by boundary_winding; each returned cell has a
    positive count and the counts sum to the parent winding.
    """
    cfg = cfg or QuadratureConfig()
    parent = boundary_winding(mode, box, cfg)
    if parent.count == 0:
        return []
    out = []
    stack = [(box, parent.count)]
    while stack:
        cell, count = stack.pop()
        if cell.diagonal <= cell_size:
            out.append((cell, count))
            continue
        # a zero sitting on a shared internal edge defeats the split;
        # nudging the split point resolves it without moving the parent
        for fraction in (0.5, 0.55, 0.45, 0.52, 0.48):
            child_total = 0
            children = []
            try:
                for q in cell.quadrants(fraction):
                    w = boundary_winding(mode, q, cfg)
                    child_total += w.count
                    if w.count > 0:
                        children.append((q, w.count))
            except BoundaryTooClose:
                continue
            if child_total == count:
                break
        else:
            raise BoundaryTooClose(
                f"subdivision of {cell} lost zeros: {child_total} != {count}")
        stack.extend(children)
    # deterministic ordering regardless of traversal
    out.sort(key=lambda cw: (cw[0].re_min, cw[0].im_min))
    return [c for c, _ in out]


def _newton_fun(mode: ModeSpec, k: complex, cfg: QuadratureConfig):
    if direct_route_ok(mode, abs(k)):
        return bte_value(k, mode, cfg), bte_derivative(k, mode, cfg)
    return bte_value_scaled(k, mode, cfg), bte_scaled_derivative(k, mode, cfg)


def newton_refine(mode: ModeSpec, k0: complex, tol: float = 1e-11,
                  cfg: QuadratureConfig | None = None,
                  seed_box: ContourBox | None = None,
                  multiplicity: int = 1) -> EigenvalueRecord:
    """Refine a seed inside an isolated cell to a zero of B_n.

    Newton runs on whichever of B_n / T_n is representable at the
    iterate; the recorded residual is |function| relative to the
    function scale at the seed cell, so the convergence criterion is
    meaningful for every mode.  Raises NoConvergence if the iterate
    leaves twice the seed box or the iteration cap is reached.
    """
    cfg = cfg or QuadratureConfig()
    k = complex(k0)
    if seed_box is None:
        half = max(0.05, 1e-3 * abs(k0))
        seed_box = ContourBox(k0.real - half, k0.real + half,
                              k0.imag - half, k0.imag + half)
    pad = seed_box.diagonal  # allow excursions to 2x the seed box
    f0, fp0 = _newton_fun(mode, k, cfg)
    scale = max(abs(f0), abs(fp0) * seed_box.diagonal, 1e-300)
    for it in range(1, 21):
        f, fp = _newton_fun(mode, k, cfg)
        if abs(f) <= tol * scale:
            return EigenvalueRecord(mode=mode, k=k, residual=abs(f) / scale,
                                    multiplicity=multiplicity, newton_iters=it - 1)
        if fp == 0:
            raise NoConvergence(f"vanishing derivative at {k} for n={mode.n}")
        step = f / fp
        if multiplicity > 1:
            step *= multiplicity
        k = k - step
        if not seed_box.contains(k, pad=pad):
            raise NoConvergence(
                f"iterate {k} escaped the seed box {seed_box} (n={mode.n})")
        if abs(step) <= 5e-15 * max(1.0, abs(k)):
            f, _ = _newton_fun(mode, k, cfg)
            return EigenvalueRecord(mode=mode, k=k, residual=abs(f) / scale,
                                    multiplicity=multiplicity, newton_iters=it)
    raise NoConvergence(f"no convergence from seed {k0} for n={mode.n}")


def _scan_mode(mode: ModeSpec, box: ContourBox, cfg: QuadratureConfig,
               tol: float, cell_size: float):
    records = []
    failures = []
    winding = boundary_winding(mode, box, cfg)
    if winding.count > 0:
        try:
            cells = isolate_zeros(mode, box, cell_size, cfg)
        except BoundaryTooClose as exc:
            return winding.count, records, [f"n={mode.n}: {exc}"]
        for cell in cells:
            count = boundary_winding(mode, cell, cfg).count
            center = complex(0.5 * (cell.re_min + cell.re_max),
                             0.5 * (cell.im_min + cell.im_max))
            try:
                rec = newton_refine(mode, center, tol, cfg, seed_box=cell,
                                    multiplicity=count)
                records.append(rec)
            except NoConvergence as exc:
                failures.append(f"n={mode.n}: {exc}")
    return winding.count, records, failures


def scan_box(box: ContourBox, d: int, n_range: tuple[int, int] | None = None,
             cfg: QuadratureConfig | None = None, tol: float = 1e-11,
             cell_size: float = 0.06) -> ScanReport:
    """Locate all eigenvalues of all retained modes inside a box.

    The mode ceiling comes from mode_truncation_bound unless n_range
    pins it.  The left edge is clipped to ORIGIN_CLIP to keep the
    contour off the trivial k = 0 zero.  Per-mode work runs on a
    thread pool (BTESCAN_THREADS, default cpu count); the report is a
    deterministic merge ordered by (n, Re k, Im k).
    """
    cfg = cfg or QuadratureConfig()
    if box.re_min < 0:
        raise DomainViolation("scan box must lie in the closed right half-plane")
    clipped = ContourBox(max(box.re_min, ORIGIN_CLIP), box.re_max,
                         box.im_min, box.im_max)
    if n_range is None:
        n_lo, n_hi = 0, mode_truncation_bound(clipped, cfg)
    else:
        n_lo, n_hi = n_range
        if n_lo < 0 or n_hi < n_lo:
            raise DomainViolation(f"bad mode range {n_range}")
    modes = [ModeSpec(d, n) for n in range(n_lo, n_hi + 1)]

    n_threads = int(os.environ.get("BTESCAN_THREADS", os.cpu_count() or 1))
    report = ScanReport(box=clipped, d=d, n_max_used=n_hi)
    results = {}
    if n_threads > 1 and len(modes) > 1:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            futs = {m.n: pool.submit(_scan_mode, m, clipped, cfg, tol, cell_size)
                    for m in modes}
            for n, fut in futs.items():
                results[n] = fut.result()
    else:
        for m in modes:
            results[m.n] = _scan_mode(m, clipped, cfg, tol, cell_size)

    for n in sorted(results):
        count, recs, fails = results[n]
        report.total_winding_per_mode[n] = count
        report.records.extend(recs)
        report.failures.extend(fails)
    report.records.sort(key=lambda r: (r.mode.n, r.k.real, r.k.imag))
    report.strip_margin = strip_margin(report)
    report.strip_margin_vacuous = not report.records
    return report


def strip_margin(report: ScanReport) -> float:
    """Empirical half-height of the eigenvalue-free strip.

    min |Im k| over the records; for an empty report the box
    half-height is returned (a vacuous bound, flagged on the report by
    scan_box).
    """
    if not report.records:
        return 0.5 * (report.box.im_max - report.box.im_min)
    return min(abs(r.k.imag) for r in report.records)


def refine_report(report: ScanReport, tol: float,
                  cfg: QuadratureConfig | None = None) -> ScanReport:
    """Re-refine every record at a new tolerance (stability re-runs)."""
    cfg = cfg or QuadratureConfig()
    new = ScanReport(box=report.box, d=report.d, n_max_used=report.n_max_used,
                     total_winding_per_mode=dict(report.total_winding_per_mode))
    for rec in report.records:
        new.records.append(newton_refine(rec.mode, rec.k, tol, cfg,
                                         multiplicity=rec.multiplicity))
    new.records.sort(key=lambda r: (r.mode.n, r.k.real, r.k.imag))
    new.strip_margin = strip_margin(new)
    new.strip_margin_vacuous = not new.records
    return new
