"""Symmetric covariations of jointly stable pairs and their relatives.

The central object is the magnitude-ordered kernel

    K(s1, s2) = |s1|**beta * |s2|**(alpha-beta) * sign**m(s1*s2)   if |s1| <= |s2|
                |s1|**(alpha-beta) * |s2|**beta * sign**m(s1*s2)   otherwise

integrated against a discrete spectral measure on the plane.  Ties use the
first branch; both branches agree there.  Conventions: 0**0 = 1 and
sign**0 = 1, including at 0.  K(0, 0) = 0 for every beta (the integrand is
the expansion of the zero function there).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateError, DimensionError, DomainError
from .fracderiv import FracDerivParams, abs_pow, gamma_ratio, power_rule, sign_pow, signed_power
from .spectral import StableModel, pushforward_linear


@dataclass(frozen=True)
class CovariationParams:
    """The triple (alpha, beta, m) indexing a symmetric covariation."""

    alpha: float
    beta: float
    m: int

    def __post_init__(self):
        if not (0.0 < self.alpha <= 2.0):
            raise DomainError(f"alpha must lie in (0, 2], got {self.alpha!r}")
        if self.beta < 0.0:
            raise DomainError(f"beta must be >= 0, got {self.beta!r}")
        if self.m not in (0, 1):
            raise DomainError(f"m must be 0 or 1, got {self.m!r}")


def kernel(params: CovariationParams, s1: float, s2: float) -> float:
    """Magnitude-ordered covariation kernel at a single point."""
    if s1 == 0.0 and s2 == 0.0:
        return 0.0
    sg = sign_pow(s1 * s2, params.m)
    if abs(s1) <= abs(s2):
        return abs_pow(s1, params.beta) * abs_pow(s2, params.alpha - params.beta) * sg
    return abs_pow(s1, params.alpha - params.beta) * abs_pow(s2, params.beta) * sg


def kernel_values(
    alpha: float, beta: float, m: int, u: np.ndarray, v: np.ndarray
) -> np.ndarray:
    """Vectorized kernel over paired coordinate arrays."""
    au = np.abs(u)
    av = np.abs(v)
    small = np.minimum(au, av)
    large = np.maximum(au, av)
    out = np.zeros_like(small)
    mask = large > 0.0
    out[mask] = np.power(small[mask], beta) * np.power(large[mask], alpha - beta)
    if m == 1:
        out *= np.sign(u * v)
    return out


def symmetric_covariation(model: StableModel, beta: float, m: int) -> float:
    """Integral of the (alpha, beta, m) kernel against the spectral measure."""
    if model.dim != 2:
        raise DimensionError("symmetric_covariation requires a bivariate model")
    CovariationParams(model.alpha, beta, m)
    dirs = model.measure.directions
    vals = kernel_values(model.alpha, beta, m, dirs[:, 0], dirs[:, 1])
    return float(np.sum(model.measure.weights * vals))


def conventional_covariation(model: StableModel) -> float:
    """The classical covariation of the first coordinate on the second.

    Defined only for alpha in (1, 2]; unlike the symmetric covariation it is
    not symmetric in its arguments.
    """
    if model.dim != 2:
        raise DimensionError("conventional_covariation requires a bivariate model")
    if not (1.0 < model.alpha <= 2.0):
        raise DomainError("conventional_covariation requires alpha in (1, 2]")
    total = 0.0
    for atom in model.measure.atoms:
        s1, s2 = atom.direction
        total += atom.weight * s1 * signed_power(s2, model.alpha - 1.0)
    return total


def covariation_norm(model: StableModel, coordinate: int = 0) -> float:
    """Marginal covariation norm: the alpha-th root of the coordinate moment."""
    if not (0 <= coordinate < model.dim):
        raise DimensionError(f"coordinate {coordinate} out of range for dim {model.dim}")
    proj = np.abs(model.measure.directions[:, coordinate])
    val = float(np.sum(model.measure.weights * proj**model.alpha))
    if val == 0.0:
        return 0.0
    return val ** (1.0 / model.alpha)


def correlation_coefficient(model: StableModel, beta: float, m: int) -> float:
    """Normalized symmetric covariation; lies in [-1, 1] for beta in [alpha/2, alpha]."""
    if model.dim != 2:
        raise DimensionError("correlation_coefficient requires a bivariate model")
    alpha = model.alpha
    if not (alpha / 2.0 <= beta <= alpha):
        raise DomainError("correlation_coefficient requires beta in [alpha/2, alpha]")
    n1 = covariation_norm(model, 0)
    n2 = covariation_norm(model, 1)
    if n1 == 0.0 or n2 == 0.0:
        raise DegenerateError("correlation undefined: a coordinate has zero norm")
    denom = min(n2**beta * n1 ** (alpha - beta), n1**beta * n2 ** (alpha - beta))
    rho = symmetric_covariation(model, beta, m) / denom
    if abs(rho) > 1.0 + 1e-12:
        raise DegenerateError(f"correlation left [-1, 1]: {rho!r}")
    return rho


def linear_combination_covariation(
    model: StableModel, a, b, beta: float, m: int
) -> float:
    """Symmetric covariation of the pair (<a, X>, <b, X>) by direct kernel integral."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != (model.dim,) or b.shape != (model.dim,):
        raise DimensionError(f"coefficient vectors must have length {model.dim}")
    CovariationParams(model.alpha, beta, m)
    dirs = model.measure.directions
    u = dirs @ a
    v = dirs @ b
    vals = kernel_values(model.alpha, beta, m, u, v)
    return float(np.sum(model.measure.weights * vals))


def linear_combination_via_pushforward(
    model: StableModel, a, b, beta: float, m: int
) -> float:
    """Same covariation through the pushforward measure on the plane.

    Independent second route kept for cross-checking against
    `linear_combination_covariation`.
    """
    pushed = pushforward_linear(model, a, b, allow_degenerate=True)
    return symmetric_covariation(pushed, beta, m)


@dataclass(frozen=True)
class LimitCheckReport:
    """Gap between the fractional-derivative limit form and the kernel integral."""

    beta: float
    m: int
    epsilons: tuple[float, ...]
    values: tuple[float, ...]
    reference: float
    gaps: tuple[float, ...]
    final_gap: float
    decreasing: bool
    passed: bool

    def to_dict(self) -> dict:
        return {
            "beta": self.beta,
            "m": self.m,
            "epsilons": list(self.epsilons),
            "values": list(self.values),
            "reference": self.reference,
            "gaps": list(self.gaps),
            "final_gap": self.final_gap,
            "decreasing": self.decreasing,
            "passed": self.passed,
        }


def _limit_form_value(model: StableModel, beta: float, m: int, eps: float) -> float:
    # Atom-wise closed form of the limit definition, evaluated at theta =
    # (eps, 1) on the |s1| <= |s2| region and theta = (1, eps) on the rest.
    # Atoms whose denominator coordinate vanishes contribute their pointwise
    # limit (the kernel value) directly.
    alpha = model.alpha
    ratio = gamma_ratio(alpha, beta)
    if ratio == 0.0:
        raise DomainError(
            "limit form degenerates when alpha - beta + 1 is a nonpositive integer"
        )
    prefactor = 1.0 / ratio
    kp = CovariationParams(alpha, beta, m)
    total = 0.0
    for atom in model.measure.atoms:
        s1, s2 = atom.direction
        if abs(s1) <= abs(s2):
            if s1 == 0.0:
                total += atom.weight * kernel(kp, s1, s2) * ratio
                continue
            base = -s2 / s1
            deriv = power_rule(alpha, FracDerivParams(base, beta, m), eps)
            total += atom.weight * abs(s1) ** alpha * deriv
        else:
            if s2 == 0.0:
                total += atom.weight * kernel(kp, s1, s2) * ratio
                continue
            base = -s1 / s2
            deriv = power_rule(alpha, FracDerivParams(base, beta, m), eps)
            total += atom.weight * abs(s2) ** alpha * deriv
    return prefactor * total


def covariation_limit_check(
    model: StableModel,
    beta: float,
    m: int,
    epsilons: tuple[float, ...] = (1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8),
    final_tol: float = 1e-6,
) -> LimitCheckReport:
    """Verify that the limit-based definition converges to the kernel integral.

    Evaluates the closed-form limit expression at each epsilon, reports the
    absolute gap to `symmetric_covariation`, and passes when the gaps are
    non-increasing and the final gap is below ``final_tol``.
    """
    if model.dim != 2:
        raise DimensionError("covariation_limit_check requires a bivariate model")
    eps_list = tuple(epsilons)
    if any(e <= 0.0 for e in eps_list) or any(
        eps_list[i] <= eps_list[i + 1] for i in range(len(eps_list) - 1)
    ):
        raise DomainError("epsilons must be positive and strictly decreasing")
    reference = symmetric_covariation(model, beta, m)
    values = tuple(_limit_form_value(model, beta, m, e) for e in eps_list)
    gaps = tuple(abs(v - reference) for v in values)
    slack = 1e-15 * (abs(reference) + 1.0)
    decreasing = all(gaps[i + 1] <= gaps[i] + slack for i in range(len(gaps) - 1))
    final_gap = gaps[-1]
    passed = decreasing and final_gap < final_tol
    return LimitCheckReport(
        beta=beta,
        m=m,
        epsilons=eps_list,
        values=values,
        reference=reference,
        gaps=gaps,
        final_gap=final_gap,
        decreasing=decreasing,
        passed=passed,
    )
