"""Complex-plane inequalities and parameter-region predicates.

Two evaluation routes coexist.  The exact route takes ``XC`` points and
angles that are multiples of pi/6 and decides every inequality in
Q(sqrt 3) by squaring away the single square root that appears.  The
sampling route works in floats (vectorized) and is used for the seeded
randomized sweeps; it never feeds back into exact bookkeeping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .scalars import (
    QS3,
    XC,
    ExactAngle,
    _cmp_lin_sqrt,
    arg_cmp,
    arg_diff_in_0_theta,
    arg_exact_pi_multiple,
    arg_float,
    qs3,
)


class DomainError(ValueError):
    """Input outside the declared domain of an operation."""


@dataclass(frozen=True)
class RegionParams:
    """Parameters (eps1, eps2) carving the admissible region out of the
    upper half-plane: eps1 in (0, 1/2), eps2 < 0."""

    eps1: Fraction
    eps2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "eps1", Fraction(self.eps1))
        object.__setattr__(self, "eps2", Fraction(self.eps2))
        if not (0 < self.eps1 < Fraction(1, 2)):
            raise DomainError("eps1 must lie in (0, 1/2)")
        if not self.eps2 < 0:
            raise DomainError("eps2 must be negative")


@dataclass(frozen=True)
class PlanePoint:
    """Point (beta, omega) of the closed upper half-plane, exact coords."""

    beta: QS3
    omega: QS3

    def __post_init__(self):
        object.__setattr__(self, "beta", qs3(self.beta))
        object.__setattr__(self, "omega", qs3(self.omega))
        if self.omega.sign() < 0:
            raise DomainError("omega must be nonnegative")

    @property
    def interior(self) -> bool:
        return self.omega.sign() > 0

    def as_floats(self) -> tuple[float, float]:
        return (float(self.beta), float(self.omega))

    def is_rational(self) -> bool:
        return self.beta.is_rational and self.omega.is_rational

    def __str__(self) -> str:
        return f"({self.beta}, {self.omega})"


def plane_point(beta, omega) -> PlanePoint:
    return PlanePoint(qs3(beta), qs3(omega))


def arg_principal(z: XC) -> float:
    """Principal argument in (-pi, pi]; exact angles return the float of
    the exact multiple of pi, others are atan2 at double precision."""
    if not z:
        raise DomainError("argument of zero")
    exact = arg_exact_pi_multiple(z)
    if exact is not None:
        return float(exact.coeff) * math.pi
    return arg_float(z)


def angle_sum_lower_bound(theta: float) -> float:
    """sqrt(2 + 2 cos theta)/2 for theta in (0, pi); theta = 0 is admitted
    as the closure case with value 1."""
    if theta == 0:
        return 1.0
    if not (0 < theta < math.pi):
        raise DomainError("theta must lie in (0, pi)")
    return math.sqrt(2 + 2 * math.cos(theta)) / 2


def ratio_sup_bound(theta: float) -> float:
    """2/sqrt(2 + 2 cos theta) for theta in (0, pi); 1 at the closure 0."""
    if theta == 0:
        return 1.0
    if not (0 < theta < math.pi):
        raise DomainError("theta must lie in (0, pi)")
    return 2 / math.sqrt(2 + 2 * math.cos(theta))


def ratio_sup_true(theta: float) -> float:
    """The actual supremum of |z2|/|z1+z2| over admissible pairs.

    With z2 = 1 and z1 = r e^{i phi}, |1 + r e^{i phi}| is minimized at
    r = -cos(phi), which is admissible only when cos(phi) <= 0; hence the
    supremum is 1 for theta <= pi/2 and 1/sin(theta) beyond.
    """
    if not (0 < theta < math.pi):
        raise DomainError("theta must lie in (0, pi)")
    if theta <= math.pi / 2:
        return 1.0
    return 1.0 / math.sin(theta)


def ratio_sup_oracle(theta: float) -> float:
    """Independent 1-D optimization estimate of the true supremum.

    With z2 = 1 and z1 = r e^{i phi}, the ratio is 1/|1 + r e^{i phi}|;
    the inner minimum over r >= 0 is found numerically for each phi and
    the outer maximum over phi in [-theta, theta] by bounded scalar
    minimization.
    """
    from scipy.optimize import minimize_scalar

    def inner_min(phi: float) -> float:
        f = lambda r: abs(1 + r * complex(math.cos(phi), math.sin(phi)))
        res = minimize_scalar(f, bounds=(0.0, 4.0), method="bounded",
                              options={"xatol": 1e-13})
        return min(res.fun, f(0.0))

    res = minimize_scalar(lambda phi: inner_min(phi),
                          bounds=(0.0, theta), method="bounded",
                          options={"xatol": 1e-13})
    worst = min(res.fun, inner_min(theta))
    return 1.0 / worst


@dataclass(frozen=True)
class AngleSumReport:
    hypothesis_met: bool
    holds: bool | None
    equality: bool | None
    lhs: float | None  # |z1+z2|
    rhs: float | None  # bound * (|z1|+|z2|)
    exact: bool


def check_angle_sum_inequality(z1: XC, z2: XC, theta: ExactAngle) -> AngleSumReport:
    """Exact check of |z1+z2| >= sqrt(2+2cos theta)/2 * (|z1|+|z2|) under
    the hypothesis 0 <= arg z1 - arg z2 <= theta < pi."""
    if not z1 or not z2:
        raise DomainError("z1, z2 must be nonzero")
    if not (0 < theta.coeff < 1):
        raise DomainError("theta must lie in (0, pi)")
    if not arg_diff_in_0_theta(z1, z2, theta):
        return AngleSumReport(False, None, None, None, None, True)
    c = (qs3(2) + 2 * theta.cos()) / qs3(4)  # bound squared
    n1 = z1.norm2()
    n2 = z2.norm2()
    s = (z1 + z2).norm2()
    # s >= c*(n1 + n2 + 2 sqrt(n1 n2))
    lhs = s - c * (n1 + n2)
    cmpv = _cmp_lin_sqrt(lhs, 2 * c, n1 * n2)
    lhs_f = math.sqrt(float(s))
    rhs_f = math.sqrt(float(c)) * (math.sqrt(float(n1)) + math.sqrt(float(n2)))
    return AngleSumReport(True, cmpv >= 0, cmpv == 0, lhs_f, rhs_f, True)


def sample_angle_sum(theta: float, count: int, seed: int):
    """Vectorized float sweep of the angle-sum inequality.

    Returns (violations, min_margin, max_ratio): the number of sampled
    admissible pairs violating the bound beyond float noise, the smallest
    relative margin seen, and the empirical sup of |z2|/|z1+z2|.
    """
    if not (0 < theta < math.pi):
        raise DomainError("theta must lie in (0, pi)")
    rng = np.random.default_rng(seed)
    a2 = rng.uniform(-math.pi, math.pi - theta, count)
    d = rng.uniform(0.0, theta, count)
    a1 = a2 + d
    r1 = np.exp(rng.uniform(math.log(1e-2), math.log(1e2), count))
    r2 = np.exp(rng.uniform(math.log(1e-2), math.log(1e2), count))
    z1 = r1 * np.exp(1j * a1)
    z2 = r2 * np.exp(1j * a2)
    lhs = np.abs(z1 + z2)
    rhs = angle_sum_lower_bound(theta) * (r1 + r2)
    margin = (lhs - rhs) / (r1 + r2)
    violations = int(np.sum(margin < -1e-12))
    nonzero = lhs > 1e-12
    ratios = np.where(nonzero, r2 / np.where(nonzero, lhs, 1.0), 0.0)
    return violations, float(margin.min()), float(ratios.max())


def region_h_plus(p: PlanePoint, eps1: Fraction) -> bool:
    """Strict membership in the first admissible region: both
    0 < omega^2 + (beta+1)^2 - 2 eps1 and
    0 < omega^2 + (beta+1-2 eps1)^2 + 2 (1-2 eps1)(eps1 - 1)."""
    if not p.interior:
        return False
    b, w = p.beta, p.omega
    e1 = qs3(eps1)
    q1 = w * w + (b + 1) * (b + 1) - 2 * e1
    q2 = w * w + (b + 1 - 2 * e1) * (b + 1 - 2 * e1) + (2 - 4 * e1) * (e1 - 1)
    return q1.sign() > 0 and q2.sign() > 0


def region_h_minus(p: PlanePoint, eps2: Fraction) -> bool:
    """Strict membership in the second admissible region: both
    0 < 2 beta + 1 - 2 eps2 and
    0 < omega^2 + (beta+1-2 eps2)^2 + 2 eps2 (1-2 eps2)."""
    if not p.interior:
        return False
    b, w = p.beta, p.omega
    e2 = qs3(eps2)
    q1 = 2 * b + 1 - 2 * e2
    q2 = w * w + (b + 1 - 2 * e2) * (b + 1 - 2 * e2) + 2 * e2 * (1 - 2 * e2)
    return q1.sign() > 0 and q2.sign() > 0


@dataclass(frozen=True)
class RegionReport:
    in_h_plus: bool
    in_h_minus: bool
    boundary: bool  # omega = 0


def region_membership(p: PlanePoint, r: RegionParams) -> RegionReport:
    if not p.interior:
        return RegionReport(False, False, True)
    return RegionReport(region_h_plus(p, r.eps1), region_h_minus(p, r.eps2), False)


def region_values(p: PlanePoint, r: RegionParams) -> dict:
    """The four defining quantities, exact (for reports and witnesses)."""
    b, w = p.beta, p.omega
    e1, e2 = qs3(r.eps1), qs3(r.eps2)
    return {
        "h_plus_1": w * w + (b + 1) * (b + 1) - 2 * e1,
        "h_plus_2": w * w + (b + 1 - 2 * e1) * (b + 1 - 2 * e1) + (2 - 4 * e1) * (e1 - 1),
        "h_minus_1": 2 * b + 1 - 2 * e2,
        "h_minus_2": w * w + (b + 1 - 2 * e2) * (b + 1 - 2 * e2) + 2 * e2 * (1 - 2 * e2),
    }
