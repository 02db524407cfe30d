"""Shared value types for modes, quadrature, scans and reports."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainViolation

__all__ = [
    "ModeSpec",
    "QuadratureConfig",
    "ContourBox",
    "WindingResult",
    "EigenvalueRecord",
    "ScanReport",
    "MellinConfig",
]


@dataclass(frozen=True)
class ModeSpec:
    """Angular mode selector: dimension d in {2, 3}, index n >= 0."""

    d: int
    n: int

    def __post_init__(self):
        if self.d not in (2, 3):
            raise DomainViolation(f"d must be 2 or 3, got {self.d}")
        if self.n < 0 or self.n != int(self.n):
            raise DomainViolation(f"n must be a nonnegative integer, got {self.n}")

    @property
    def order(self) -> float:
        """Bessel order carrying the mode: n for d=2, n + 1/2 for d=3."""
        return self.n if self.d == 2 else self.n + 0.5


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and panel policy for the adaptive integrator.

    oscillation_split bounds the initial panel width to
    oscillation_split / |k| so each panel sees at most a quarter
    wavelength of the Bessel oscillation.
    """

    rel_tol: float = 1e-12
    abs_tol: float = 1e-14
    max_panels: int = 4096
    oscillation_split: float = np.pi / 2

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise DomainViolation("tolerances must be positive")
        if self.max_panels < 1:
            raise DomainViolation("max_panels must be >= 1")


@dataclass(frozen=True)
class ContourBox:
    """Axis-aligned rectangle in the complex k-plane."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self):
        if not (self.re_min <= self.re_max and self.im_min <= self.im_max):
            raise DomainViolation("box bounds must satisfy min <= max")

    @property
    def is_empty(self) -> bool:
        return self.re_min >= self.re_max or self.im_min >= self.im_max

    @property
    def corners(self) -> list[complex]:
        return [complex(self.re_min, self.im_min), complex(self.re_max, self.im_min),
                complex(self.re_max, self.im_max), complex(self.re_min, self.im_max)]

    @property
    def diagonal(self) -> float:
        return float(np.hypot(self.re_max - self.re_min, self.im_max - self.im_min))

    @property
    def max_abs_k(self) -> float:
        """Largest |k| over the closed box (attained at a corner)."""
        re = max(abs(self.re_min), abs(self.re_max))
        im = max(abs(self.im_min), abs(self.im_max))
        return float(np.hypot(re, im))

    def contains(self, k: complex, pad: float = 0.0) -> bool:
        return (self.re_min - pad <= k.real <= self.re_max + pad
                and self.im_min - pad <= k.imag <= self.im_max + pad)

    def quadrants(self, fraction: float = 0.5) -> list["ContourBox"]:
        rm = self.re_min + fraction * (self.re_max - self.re_min)
        im = self.im_min + fraction * (self.im_max - self.im_min)
        return [ContourBox(self.re_min, rm, self.im_min, im),
                ContourBox(rm, self.re_max, self.im_min, im),
                ContourBox(self.re_min, rm, im, self.im_max),
                ContourBox(rm, self.re_max, im, self.im_max)]


@dataclass(frozen=True)
class WindingResult:
    """Argument-principle count over a box boundary.

    phase_residual is the distance of the raw phase integral / 2 pi
    from the nearest integer; boundary_min_modulus the smallest
    (rescaled) |B_n| seen along the boundary.
    """

    count: int
    phase_residual: float
    boundary_min_modulus: float


@dataclass(frozen=True)
class EigenvalueRecord:
    """A refined zero of B_n with its convergence certificates."""

    mode: ModeSpec
    k: complex
    residual: float
    multiplicity: int
    newton_iters: int


@dataclass
class ScanReport:
    """Outcome of a full box scan over all retained modes."""

    box: ContourBox
    d: int
    n_max_used: int
    records: list[EigenvalueRecord] = field(default_factory=list)
    strip_margin: float = float("nan")
    strip_margin_vacuous: bool = False
    total_winding_per_mode: dict[int, int] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class MellinConfig:
    """Contour parameters for the Mellin-Parseval evaluation."""

    c: float = 0.5
    y_max: float = 20000.0
    quad_tol: float = 1e-8

    def __post_init__(self):
        if not 0 < self.c < 1:
            raise DomainViolation("contour abscissa c must lie in (0, 1)")
        if self.y_max <= 0 or self.quad_tol <= 0:
            raise DomainViolation("y_max and quad_tol must be positive")
