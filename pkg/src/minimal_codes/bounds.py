"""Asymptotic rate bounds and the lower bounds they imply for minimal codes.

Minimum distance of a minimal [n, k]_q code is at least (q-1)(k-1)+1, so the
rate of long minimal codes is capped by ``delta / (q-1)``.  Any decreasing
asymptotic upper bound on the rate of general codes therefore crosses this
cap, and the crossing point ``delta*`` gives
``liminf m(k, q) / k >= (q-1) / delta*``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import bisect
from sympy import isprime, perfect_power

from .errors import DomainError, NoCrossing, NotPrimePower

BISECT_TOL = 1e-12
# slack when testing float arguments against closed interval endpoints
_EDGE = 1e-12


def is_prime_power(q: int) -> bool:
    if q < 2 or q != int(q):
        return False
    q = int(q)
    if isprime(q):
        return True
    pp = perfect_power(q)
    return bool(pp) and isprime(pp[0])


def check_field_order(q: int) -> int:
    if isinstance(q, bool) or not isinstance(q, (int, np.integer)):
        raise NotPrimePower(f"q must be an integer, got {q!r}")
    if not is_prime_power(int(q)):
        raise NotPrimePower(f"{q} is not a prime power")
    return int(q)


def _check_delta(delta: float, q: int) -> float:
    top = (q - 1) / q
    if not (-_EDGE <= delta <= top + _EDGE) or math.isnan(delta):
        raise DomainError(f"delta = {delta} outside [0, {top}] for q = {q}")
    return min(max(delta, 0.0), top)


def entropy_q(x: float, q: int) -> float:
    """q-ary entropy, with 0 log 0 = 0."""
    if q < 2:
        raise DomainError("q must be at least 2")
    x = _check_delta(x, q)
    ln_q = math.log(q)
    h = 0.0
    if x > 0.0:
        h -= x * (math.log(x) - math.log(q - 1))
    if x < 1.0:
        h -= (1.0 - x) * math.log1p(-x)
    return min(max(h / ln_q, 0.0), 1.0)


def mrrw_q(delta: float, q: int) -> float:
    """Aaltonen's q-ary generalisation of the MRRW (linear programming) bound."""
    delta = _check_delta(delta, q)
    root = math.sqrt(max((q - 1) * delta * (1.0 - delta), 0.0))
    inner = q - 1 - (q - 2) * delta - 2.0 * root
    inner = min(max(inner, 0.0), q - 1.0)
    return entropy_q(inner / q, q)


def mrrw_binary(delta: float) -> float:
    """Classical binary MRRW form H2(1/2 - sqrt(delta (1 - delta)))."""
    delta = _check_delta(delta, 2)
    return entropy_q(max(0.5 - math.sqrt(delta * (1.0 - delta)), 0.0), 2)


def plotkin_asymptotic(delta: float, q: int) -> float:
    delta = _check_delta(delta, q)
    return max(0.0, 1.0 - q * delta / (q - 1))


def singleton(delta: float, q: int) -> float:
    delta = _check_delta(delta, q)
    return 1.0 - delta


def minimal_rate_cap(delta: float, q: int) -> float:
    """Rate cap for minimal codes implied by d >= (q-1)(k-1) + 1."""
    delta = _check_delta(delta, q)
    return delta / (q - 1)


@dataclass(frozen=True)
class BoundProfile:
    """A named asymptotic upper bound ``delta -> R`` on [0, (q-1)/q]."""

    name: str
    func: Callable[[float, int], float] = field(repr=False, compare=False)
    q: int
    decreasing: bool = True

    def __call__(self, delta: float) -> float:
        return self.func(delta, self.q)

    @property
    def domain(self) -> tuple[float, float]:
        return 0.0, (self.q - 1) / self.q

    def grid(self, size: int) -> np.ndarray:
        return np.linspace(*self.domain, size)

    def is_monotone(self, samples: int = 10_000) -> bool:
        values = np.array([self(d) for d in self.grid(samples)])
        steps = np.diff(values)
        return bool(np.all(steps <= 1e-15)) if self.decreasing else bool(np.all(steps >= -1e-15))


REGISTERED = {
    "mrrw": mrrw_q,
    "plotkin": plotkin_asymptotic,
    "singleton": singleton,
}


def profile(name: str, q: int) -> BoundProfile:
    try:
        func = REGISTERED[name]
    except KeyError:
        raise KeyError(f"unknown bound profile {name!r}; known: {sorted(REGISTERED)}") from None
    return BoundProfile(name, func, q)


def _bisect(fn: Callable[[float], float], lo: float, hi: float, tol: float) -> float:
    f_lo, f_hi = fn(lo), fn(hi)
    if abs(f_lo) <= _EDGE:
        return lo
    if abs(f_hi) <= _EDGE:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        raise NoCrossing(f"no sign change on [{lo}, {hi}]: f = {f_lo}, {f_hi}")
    return bisect(fn, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=500)


def liminf_lower_bound(
    q: int, bound: BoundProfile | None = None, tol: float = BISECT_TOL
) -> tuple[float, float]:
    """Crossing of ``bound`` with the minimal-code rate cap.

    Returns ``(delta_star, (q-1)/delta_star)``; the second value is the lower
    bound on ``liminf m(k, q)/k`` obtained from ``bound``.
    """
    q = check_field_order(q)
    bound = bound or profile("mrrw", q)
    if bound.q != q:
        raise ValueError(f"profile is for q = {bound.q}, not {q}")
    if bound(0.0) <= 0.0:
        raise NoCrossing(f"profile {bound.name} vanishes at delta = 0")
    top = (q - 1) / q
    delta = _bisect(lambda d: bound(d) - d / (q - 1), 0.0, top, tol)
    return delta, (q - 1) / delta


def _c_of(eps: float) -> float:
    return eps + 2.0 - 2.0 * math.sqrt(eps + 1.0)


def _epsilon_equation(eps: float, q: float) -> float:
    c = _c_of(eps)
    return (q - 1) / q * c * math.log(math.e * q * (q + eps) / c) / math.log(q) - 1.0


def solve_epsilon(q: float, tol: float = BISECT_TOL) -> float:
    """Root in [1, 2] of the closed-form sufficient condition, for real q >= 2."""
    return _bisect(lambda e: _epsilon_equation(e, q), 1.0, 2.0, tol)


@dataclass(frozen=True)
class EpsilonSolution:
    q: int
    epsilon: float
    delta_c: float
    A: float
    C: float
    liminf_ratio: float

    @property
    def entropy_product(self) -> float:
        """(q + epsilon) * H_q(A); at most 1 when the bound holds."""
        return (self.q + self.epsilon) * entropy_q(self.A, self.q)


def epsilon_proof(q: int, tol: float = BISECT_TOL) -> EpsilonSolution:
    """epsilon(q) defined by equality in the closed-form entropy estimate.

    This value is provably increasing in q but sits slightly below the true
    crossing-based gap ``liminf_ratio - q``.
    """
    q = check_field_order(q)
    eps = solve_epsilon(q, tol)
    c = _c_of(eps)
    delta_c = (q - 1) / (q + eps)
    a = (q - 1) / (q * (q + eps)) * c
    _, ratio = liminf_lower_bound(q, tol=tol)
    return EpsilonSolution(q=q, epsilon=eps, delta_c=delta_c, A=a, C=c, liminf_ratio=ratio)


def _aux_decreasing(ell: int, eps_ell: float, samples: int) -> bool:
    c = _c_of(eps_ell)
    x = np.linspace(ell, 4 * ell, samples)
    f = (x - 1) / x * c * np.log(math.e / c * x * (x + eps_ell)) / np.log(x)
    return bool(np.all(np.diff(f) < 0))


def epsilon_monotonicity_audit(q_list: Sequence[int], samples: int = 10_000) -> bool:
    """Check that epsilon_proof strictly increases along ``q_list``.

    Also samples the auxiliary ratio used in the induction step on
    ``[l, 4l]`` for every ``l`` in the list and requires it to decrease.
    """
    qs = [check_field_order(q) for q in q_list]
    if len(qs) < 2:
        return True
    eps = [solve_epsilon(q) for q in qs]
    if any(b <= a for a, b in zip(eps, eps[1:])):
        return False
    return all(_aux_decreasing(q, e, samples) for q, e in zip(qs[:-1], eps[:-1]))


@dataclass(frozen=True)
class GapRow:
    q: int
    liminf_ratio: float
    gap: float
    epsilon_proof: float

    @property
    def consistent(self) -> bool:
        return self.epsilon_proof <= self.gap


def bound_gap_table(q_list: Sequence[int], tol: float = BISECT_TOL) -> list[GapRow]:
    rows = []
    for q in q_list:
        sol = epsilon_proof(q, tol)
        rows.append(GapRow(sol.q, sol.liminf_ratio, sol.liminf_ratio - sol.q, sol.epsilon))
    return rows


CURVE_COLUMNS = ("mrrw", "plotkin", "singleton", "minimal_cap")


@dataclass(frozen=True)
class CurveSample:
    delta: float
    values: dict[str, float] = field(hash=False)
    crossing: bool = False


def curve_dump(q: int, grid_size: int, tol: float = BISECT_TOL) -> list[CurveSample]:
    """Plot-ready samples of the bounds on a uniform grid, plus the crossing row."""
    q = check_field_order(q)
    if grid_size < 2:
        raise ValueError("grid_size must be at least 2")
    top = (q - 1) / q
    grid = [top * i / (grid_size - 1) for i in range(grid_size)]
    star, _ = liminf_lower_bound(q, tol=tol)

    def sample(d: float, crossing: bool = False) -> CurveSample:
        return CurveSample(
            d,
            {
                "mrrw": mrrw_q(d, q),
                "plotkin": plotkin_asymptotic(d, q),
                "singleton": singleton(d, q),
                "minimal_cap": minimal_rate_cap(d, q),
            },
            crossing,
        )

    rows = [sample(d) for d in grid if d != star]
    rows.append(sample(star, crossing=True))
    rows.sort(key=lambda r: r.delta)
    return rows
