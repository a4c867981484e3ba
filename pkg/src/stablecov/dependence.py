"""Executable dependence checks: independence conditions, additivity, and
the James-orthogonality lower bound.

Each check returns a small report object with a ``passed`` flag and a
``to_dict`` method for the CLI's JSON output.  Covariation indices are
restricted to k >= 0 throughout (the kernel is defined for beta >= 0 only).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .covariation import (
    linear_combination_covariation,
    linear_combination_via_pushforward,
    symmetric_covariation,
)
from .errors import AxisSupportError, DomainError
from .series import scale_parameter_series
from .spectral import StableModel, characteristic_function

AXIS_TOL = 1e-12
JAMES_K_CHECK = 40


def min_max_inequality(x: float, y: float, p: float) -> bool:
    """Whether |x+y|**p + |x-y|**p >= min(2**p, 2) * max(|x|**p, |y|**p).

    The comparison allows a few ulps of slack: equality configurations
    (x = +-y, or a vanishing argument) otherwise fail by rounding alone.
    """
    if p < 0.0:
        raise DomainError("min_max_inequality requires p >= 0")
    lhs = abs(x + y) ** p + abs(x - y) ** p
    rhs = min(2.0**p, 2.0) * max(abs(x) ** p, abs(y) ** p)
    return lhs >= rhs - 8.0 * np.finfo(float).eps * rhs


@dataclass(frozen=True)
class IndependenceNecessaryReport:
    total_mass: float
    entries: tuple[tuple[float, int, float, float, bool], ...]  # (beta, m, value, expected, ok)
    passed: bool

    def to_dict(self) -> dict:
        return {
            "total_mass": self.total_mass,
            "entries": [
                {"beta": b, "m": m, "value": v, "expected": e, "ok": ok}
                for b, m, v, e, ok in self.entries
            ],
            "passed": self.passed,
        }


def _require_axis_support(model: StableModel) -> None:
    for atom in model.measure.atoms:
        s1, s2 = atom.direction
        if abs(s1) > AXIS_TOL and abs(s2) > AXIS_TOL:
            raise AxisSupportError(
                f"atom {atom.direction.tolist()} is not axis-supported"
            )


def independence_necessary_report(
    model: StableModel, beta_grid, tol: float
) -> IndependenceNecessaryReport:
    """Covariation values forced by independence on an axis-supported measure.

    The (0, 0) covariation must equal the total mass; every other (beta, m)
    pair on the grid must vanish.
    """
    if model.dim != 2:
        raise AxisSupportError("independence check requires a bivariate model")
    _require_axis_support(model)
    total = model.measure.total_mass
    entries = []
    pairs = [(0.0, 0)] + [
        (float(b), m) for b in beta_grid for m in (0, 1) if not (b == 0.0 and m == 0)
    ]
    for beta, m in pairs:
        value = symmetric_covariation(model, beta, m)
        expected = total if (beta == 0.0 and m == 0) else 0.0
        entries.append((beta, m, value, expected, abs(value - expected) <= tol))
    passed = all(e[-1] for e in entries)
    return IndependenceNecessaryReport(total_mass=total, entries=tuple(entries), passed=passed)


@dataclass(frozen=True)
class SufficientConditionReport:
    beta: float
    covariation: float
    triggered: bool
    max_factorization_gap: float | None
    passed: bool

    def to_dict(self) -> dict:
        return {
            "beta": self.beta,
            "covariation": self.covariation,
            "triggered": self.triggered,
            "max_factorization_gap": self.max_factorization_gap,
            "passed": self.passed,
        }


def independence_sufficient_check(
    model: StableModel, beta: float, theta_grid, tol: float
) -> SufficientConditionReport:
    """When the (beta, 0) covariation vanishes the law must factorize.

    Triggered only if |[X1, X2]_{alpha, beta, 0}| <= tol; then the joint
    characteristic function is compared against the product of the marginals
    on the theta grid.
    """
    cov = symmetric_covariation(model, beta, 0)
    if abs(cov) > tol:
        return SufficientConditionReport(
            beta=beta, covariation=cov, triggered=False, max_factorization_gap=None, passed=True
        )
    gap = 0.0
    for theta in theta_grid:
        t1, t2 = float(theta[0]), float(theta[1])
        joint = characteristic_function(model, (t1, t2))
        split = characteristic_function(model, (t1, 0.0)) * characteristic_function(
            model, (0.0, t2)
        )
        gap = max(gap, abs(joint - split))
    return SufficientConditionReport(
        beta=beta,
        covariation=cov,
        triggered=True,
        max_factorization_gap=gap,
        passed=gap <= tol,
    )


@dataclass(frozen=True)
class AdditivityReport:
    entries: tuple[tuple[float, int, float, float, float], ...]  # (beta, m, lhs, rhs, gap)
    max_gap: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "entries": [
                {"beta": b, "m": m, "lhs": lhs, "rhs": rhs, "gap": gap}
                for b, m, lhs, rhs, gap in self.entries
            ],
            "max_gap": self.max_gap,
            "passed": self.passed,
        }


def _default_additivity_grid(alpha: float):
    # (0, 0) is excluded: with the 0**0 = sign**0 = 1 conventions the kernel
    # assigns unit value whenever one argument vanishes, so splitting the sum
    # X2 + X3 double counts atoms on which exactly one summand is zero.
    betas = [0.25 * alpha, 0.5 * alpha, 0.75 * alpha, alpha, 1.25 * alpha]
    return [(b, m) for b in betas for m in (0, 1)] + [(0.0, 1)]


def additivity_check(
    model: StableModel, tol: float, grid=None
) -> AdditivityReport:
    """Covariation against a sum of independent coordinates splits additively.

    Requires a trivariate model whose atoms satisfy s2*s3 = 0.  The left
    side evaluates the pair (X1, X2+X3) directly; the right side goes
    through the marginal pushforwards of (X1, X2) and (X1, X3).
    """
    if model.dim != 3:
        raise AxisSupportError("additivity check requires a trivariate model")
    for atom in model.measure.atoms:
        if abs(atom.direction[1] * atom.direction[2]) > AXIS_TOL:
            raise AxisSupportError(
                f"atom {atom.direction.tolist()} violates the s2*s3 = 0 support condition"
            )
    if grid is None:
        grid = _default_additivity_grid(model.alpha)
    a = (1.0, 0.0, 0.0)
    entries = []
    max_gap = 0.0
    for beta, m in grid:
        lhs = linear_combination_covariation(model, a, (0.0, 1.0, 1.0), beta, m)
        rhs = linear_combination_via_pushforward(
            model, a, (0.0, 1.0, 0.0), beta, m
        ) + linear_combination_via_pushforward(model, a, (0.0, 0.0, 1.0), beta, m)
        gap = abs(lhs - rhs)
        max_gap = max(max_gap, gap)
        entries.append((beta, m, lhs, rhs, gap))
    return AdditivityReport(entries=tuple(entries), max_gap=max_gap, passed=max_gap <= tol)


@dataclass(frozen=True)
class JamesBoundReport:
    lambdas: tuple[float, ...]
    hypothesis_ok: tuple[bool, ...]
    hypothesis_max_violation: tuple[float, ...]
    bound_margins: tuple[float | None, ...]
    james_margins: tuple[float | None, ...]
    passed: bool
    # lambdas whose covariations do not vanish: nothing to assert there
    hypothesis_failures: tuple[str, ...] = field(default_factory=tuple)
    # genuine violations of the asserted bounds
    failures: tuple[str, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "lambdas": list(self.lambdas),
            "hypothesis_ok": list(self.hypothesis_ok),
            "hypothesis_max_violation": list(self.hypothesis_max_violation),
            "bound_margins": list(self.bound_margins),
            "james_margins": list(self.james_margins),
            "passed": self.passed,
            "hypothesis_failures": list(self.hypothesis_failures),
            "failures": list(self.failures),
        }


def _combination_norm(model: StableModel, coeffs) -> float:
    coeffs = np.asarray(coeffs, dtype=float)
    proj = np.abs(model.measure.directions @ coeffs)
    val = float(np.sum(model.measure.weights * proj**model.alpha))
    return val ** (1.0 / model.alpha) if val > 0.0 else 0.0


def james_bound_check(
    model: StableModel, lambda_grid, tol: float, k_check: int = JAMES_K_CHECK
) -> JamesBoundReport:
    """Lower bound on the norm of a sum when all odd-branch covariations vanish.

    For each lambda: (i) verify [lambda*X1, X2]_{alpha, k, 1} = 0 for
    k = 0..k_check; (ii) if that holds, check
    ||lambda*X1 + X2|| >= min(2**(1-1/alpha), 1) * max(||lambda*X1||, ||X2||)
    and, for alpha >= 1, the James margin ||lambda*X1 + X2|| >= ||X2||.
    """
    if model.dim != 2:
        raise AxisSupportError("james_bound_check requires a bivariate model")
    alpha = model.alpha
    const = min(2.0 ** (1.0 - 1.0 / alpha), 1.0)
    lams, hyp_ok, hyp_viol, margins, james_margins = [], [], [], [], []
    hypothesis_failures: list[str] = []
    failures: list[str] = []
    for lam in lambda_grid:
        lam = float(lam)
        lams.append(lam)
        worst = 0.0
        worst_k = None
        for k in range(k_check + 1):
            val = abs(linear_combination_covariation(model, (lam, 0.0), (0.0, 1.0), float(k), 1))
            if val > worst:
                worst, worst_k = val, k
        hyp_viol.append(worst)
        if worst > tol:
            hyp_ok.append(False)
            margins.append(None)
            james_margins.append(None)
            hypothesis_failures.append(
                f"hypothesis fails at lambda={lam!r}, k={worst_k} (|covariation|={worst:.3e})"
            )
            continue
        hyp_ok.append(True)
        norm_sum = _combination_norm(model, (lam, 1.0))
        norm_l1 = abs(lam) * _combination_norm(model, (1.0, 0.0))
        norm_2 = _combination_norm(model, (0.0, 1.0))
        margin = norm_sum - const * max(norm_l1, norm_2)
        margins.append(margin)
        if margin < -tol:
            failures.append(f"lower bound fails at lambda={lam!r} (margin {margin:.3e})")
        if alpha >= 1.0:
            jm = norm_sum - norm_2
            james_margins.append(jm)
            if jm < -tol:
                failures.append(f"James margin fails at lambda={lam!r} ({jm:.3e})")
        else:
            james_margins.append(None)
    return JamesBoundReport(
        lambdas=tuple(lams),
        hypothesis_ok=tuple(hyp_ok),
        hypothesis_max_violation=tuple(hyp_viol),
        bound_margins=tuple(margins),
        james_margins=tuple(james_margins),
        passed=not failures,
        hypothesis_failures=tuple(hypothesis_failures),
        failures=tuple(failures),
    )


@dataclass(frozen=True)
class EvenSeriesReport:
    odd_max: float
    even_sum: float
    half_sum_integral: float
    direct: float
    gap: float
    applicable: bool
    passed: bool

    def to_dict(self) -> dict:
        return {
            "odd_max": self.odd_max,
            "even_sum": self.even_sum,
            "half_sum_integral": self.half_sum_integral,
            "direct": self.direct,
            "gap": self.gap,
            "applicable": self.applicable,
            "passed": self.passed,
        }


def even_series_identity_check(
    model: StableModel, tol: float = 1e-10, k_check: int = JAMES_K_CHECK
) -> EvenSeriesReport:
    """With vanishing odd covariations, the even-index series at theta=(1,1)
    equals half the integral of |s1+s2|**alpha + |s1-s2|**alpha.

    Reports ``applicable=False`` (and passes vacuously) when the odd
    covariations do not vanish.
    """
    if model.dim != 2:
        raise AxisSupportError("even series check requires a bivariate model")
    odd_max = 0.0
    for k in range(1, k_check + 1, 2):
        odd_max = max(odd_max, abs(symmetric_covariation(model, float(k), 1)))
    if odd_max > tol:
        return EvenSeriesReport(
            odd_max=odd_max,
            even_sum=math.nan,
            half_sum_integral=math.nan,
            direct=math.nan,
            gap=math.nan,
            applicable=False,
            passed=True,
        )
    expansion = scale_parameter_series(model, (1.0, 1.0), tol / 10.0)
    even_sum = sum(t for k, t in enumerate(expansion.terms) if k % 2 == 0)
    dirs = model.measure.directions
    w = model.measure.weights
    alpha = model.alpha
    half_sum = 0.5 * float(
        np.sum(
            w
            * (
                np.abs(dirs[:, 0] + dirs[:, 1]) ** alpha
                + np.abs(dirs[:, 0] - dirs[:, 1]) ** alpha
            )
        )
    )
    direct = float(np.sum(w * np.abs(dirs[:, 0] + dirs[:, 1]) ** alpha))
    gap = max(abs(even_sum - half_sum), abs(direct - half_sum))
    return EvenSeriesReport(
        odd_max=odd_max,
        even_sum=even_sum,
        half_sum_integral=half_sum,
        direct=direct,
        gap=gap,
        applicable=True,
        passed=gap <= tol,
    )
