"""Overflow-safe elementary and special functions used by every series.

Everything here is a pure function of its arguments (no global state), so
all of it is safe to call concurrently.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError, PoleError

__all__ = [
    "SeriesControl",
    "EvalResult",
    "riemann_zeta",
    "macdonald_half",
    "coth_stable",
    "coth_minus_one",
    "inv_sinh_stable",
]


@dataclass(frozen=True)
class SeriesControl:
    """Truncation policy shared by every adaptive series evaluator.

    A series evaluator stops only once its bounded tail estimate drops
    below ``rel_tol`` times the magnitude of the partial sum; running into
    ``max_terms`` raises :class:`~casimir_plates.errors.ConvergenceError`
    instead of returning silently.
    """

    rel_tol: float = 1e-12
    max_terms: int = 10**6
    min_terms: int = 8

    def __post_init__(self):
        if not self.rel_tol > 0.0:
            raise DomainError("rel_tol must be positive")
        if self.min_terms < 1 or self.min_terms > self.max_terms:
            raise DomainError("need 1 <= min_terms <= max_terms")


@dataclass(frozen=True)
class EvalResult:
    """Value of a truncated series together with its error bookkeeping."""

    value: float
    abs_err_est: float
    terms_used: int
    rep: str

    def __post_init__(self):
        if self.abs_err_est < 0.0:
            raise DomainError("abs_err_est must be nonnegative")


# Bernoulli numbers B_2, B_4, ... B_10 for the Euler-Maclaurin tail.
_BERNOULLI_EVEN = (1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0)


def riemann_zeta(s: float) -> float:
    """Riemann zeta function on the real line, s != 1.

    For s > 0 the defining sum is truncated and closed with the integral
    term N^(1-s)/(s-1) plus Euler-Maclaurin corrections; for s < 0 the
    reflection formula maps the argument back to s > 1.
    """
    if s == 1.0:
        raise PoleError("riemann_zeta has a simple pole at s = 1", location=1.0)
    if s < 0.0:
        # reflection: zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s)
        half = 0.5 * s
        if half == math.floor(half):
            return 0.0  # trivial zeros at negative even integers
        sin_term = math.sin(math.pi * half)
        return (
            2.0**s
            * math.pi ** (s - 1.0)
            * sin_term
            * math.gamma(1.0 - s)
            * riemann_zeta(1.0 - s)
        )
    # Direct sum with Euler-Maclaurin closure; valid for all s > -1, s != 1,
    # so it also covers the strip 0 <= s < 1 by analytic continuation.
    n_direct = 40
    head = math.fsum(n ** (-s) for n in range(1, n_direct + 1))
    nf = float(n_direct)
    tail = nf ** (1.0 - s) / (s - 1.0) - 0.5 * nf ** (-s)
    poch = s  # s (s+1) ... running product
    power = nf ** (-s - 1.0)
    fact = 2.0
    k2 = 2
    corr = 0.0
    for b in _BERNOULLI_EVEN:
        corr += b / fact * poch * power
        poch *= (s + k2 - 1.0) * (s + k2)
        power /= nf * nf
        fact *= (k2 + 1.0) * (k2 + 2.0)
        k2 += 2
    return head + tail + corr


def macdonald_half(n: int, z: float) -> float:
    """Macdonald function K_{n+1/2}(z) through its finite closed form.

    The k-sum is exact (no truncation error); for very large z the result
    underflows to an exact 0.0, which is the correctly rounded value.
    """
    if n < 0 or n != int(n):
        raise DomainError("order index n must be a nonnegative integer")
    if z <= 0.0:
        raise DomainError("macdonald_half requires z > 0")
    # sum_{k=0}^{n} (n+k)! / (k! (n-k)! (2z)^k), built by term ratios
    term = 1.0
    acc = 1.0
    for k in range(n):
        term *= (n + k + 1) * (n - k) / (2.0 * (k + 1) * z)
        acc += term
    pref = math.sqrt(math.pi / (2.0 * z))
    # exp(-z) may underflow; that is the documented exact-0 regime
    return pref * math.exp(-z) * acc


def coth_stable(x: float) -> float:
    """coth(x) for x > 0 without overflow and with full small-x accuracy."""
    if x <= 0.0:
        raise DomainError("coth_stable requires x > 0")
    return 1.0 + coth_minus_one(x)


def coth_minus_one(x: float) -> float:
    """coth(x) - 1 = 2 e^(-2x) / (1 - e^(-2x)), exact in the large-x tail."""
    if x <= 0.0:
        raise DomainError("coth_minus_one requires x > 0")
    return 2.0 * math.exp(-2.0 * x) / -math.expm1(-2.0 * x)


def inv_sinh_stable(x: float) -> float:
    """1/sinh(x) as 2 e^(-x) / (1 - e^(-2x)); never overflows for large x."""
    if x <= 0.0:
        raise DomainError("inv_sinh_stable requires x > 0")
    return 2.0 * math.exp(-x) / -math.expm1(-2.0 * x)


def sum_until(term_fn, tail_bound_fn, ctl: SeriesControl, what: str):
    """Accumulate term_fn(n) for n = 1, 2, ... under a bounded-tail stop rule.

    ``tail_bound_fn(n, term)`` must bound the remaining tail given the index
    and value of the term just added.  Returns (value, tail_bound, terms).
    """
    parts = []
    total = 0.0
    n = 0
    while True:
        n += 1
        if n > ctl.max_terms:
            raise ConvergenceError(
                f"{what}: no convergence within {ctl.max_terms} terms"
            )
        t = term_fn(n)
        parts.append(t)
        total += t
        if n < ctl.min_terms:
            continue
        bound = tail_bound_fn(n, t)
        if bound <= ctl.rel_tol * abs(total):
            return math.fsum(parts), bound, n
