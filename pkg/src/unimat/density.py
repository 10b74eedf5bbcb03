"""Densities of unimodular integer matrices, exactly and to specified error.

A k x n integer matrix with k < n extends to a GL_n(Z) matrix with natural
density prod_{j=n-k+1}^{n} zeta(j)^(-1); for k = n the density is exactly 0.
As n -> infinity at fixed codimension d = n - k the density tends to
prod_{j=d+1}^{infinity} zeta(j)^(-1).

Local (mod p) counterparts are exact rationals: over a finite set S of
primes, the density of k x n matrices whose full-rank minors have gcd
coprime to every p in S is prod_{j=n-k+1}^{n} prod_{p in S} (1 - p^(-j)),
which equals prod_{p in S} |F_p| / p^(kn) for the full-rank count
|F_p| = prod_{j=0}^{k-1} (p^n - p^j) over Z/pZ.

zeta(j) is evaluated by a truncated series plus the first two
Euler-Maclaurin tail terms; the enveloping remainder bound
(j/12) * M^(-(j+1)) picks the cutoff M, and every reported value carries a
rigorous absolute error bound at or below the requested tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable


@dataclass(frozen=True)
class ZetaValue:
    """zeta(j) truncation: value, rigorous absolute error bound, terms used."""

    value: Decimal
    error_bound: Decimal
    terms: int


@dataclass(frozen=True)
class DensityReport:
    """A density value with its rigorous absolute error bound.

    terms records the truncation parameters: per-j zeta series cutoffs and,
    for limits, the cutoff of the infinite product.
    """

    value: Decimal
    abs_error_bound: Decimal
    terms: dict


def is_prime(m: int) -> bool:
    """Deterministic primality by trial division."""
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeSet:
    """A nonempty, strictly increasing tuple of primes."""

    primes: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.primes:
            raise ValueError("prime set must be nonempty")
        for p in self.primes:
            if not isinstance(p, int) or not is_prime(p):
                raise ValueError(f"{p} is not prime")
        for a, b in zip(self.primes, self.primes[1:]):
            if b <= a:
                raise ValueError("primes must be strictly increasing")

    @classmethod
    def from_iterable(cls, it: Iterable[int]) -> "PrimeSet":
        return cls(tuple(sorted(set(int(p) for p in it))))


def first_primes(t: int) -> PrimeSet:
    """The first t primes."""
    if t < 1:
        raise ValueError("need at least one prime")
    out: list[int] = []
    m = 2
    while len(out) < t:
        if is_prime(m):
            out.append(m)
        m += 1
    return PrimeSet(tuple(out))


def _working_digits(tol: float) -> int:
    return max(40, 12 - int(math.floor(math.log10(tol))))


def zeta(j: int, tol: float) -> ZetaValue:
    """zeta(j) for integer j >= 2 with absolute error <= tol.

    Sums m^(-j) for m <= M and appends the tail terms
    M^(1-j)/(j-1) - M^(-j)/2; the remainder of that expansion is enveloped
    by (j/12) * M^(-(j+1)), which chooses M against tol/2, leaving headroom
    for decimal rounding inside the reported bound.
    """
    if not isinstance(j, int) or j <= 1:
        raise ValueError(
            f"zeta is evaluated for integer arguments >= 2 only; the series "
            f"diverges at 1 and below (got {j})"
        )
    if not tol > 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    target = tol / 2
    m_cut = max(10, math.ceil((j / (12 * target)) ** (1.0 / (j + 1))) + 1)
    digits = _working_digits(tol)
    with localcontext() as ctx:
        ctx.prec = digits
        one = Decimal(1)
        s = Decimal(0)
        for m in range(1, m_cut + 1):
            s += one / Decimal(m**j)
        s += one / (Decimal(m_cut ** (j - 1)) * (j - 1))
        s -= one / (Decimal(m_cut**j) * 2)
        tail_bound = Decimal(j) / (Decimal(12) * Decimal(m_cut ** (j + 1)))
        # one rounding per arithmetic op, each within an ulp of ~1.65
        rounding = Decimal(m_cut + 10) * Decimal(10) ** (1 - digits)
        return ZetaValue(s, tail_bound + rounding, m_cut)


def density_exact(k: int, n: int, tol: float) -> DensityReport:
    """Density of k x n integer matrices extendable to GL_n(Z).

    Zero exactly for k = n; otherwise prod_{j=n-k+1}^{n} zeta(j)^(-1)
    evaluated with absolute error at most tol.
    """
    if not (1 <= k <= n):
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if not tol > 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    if k == n:
        return DensityReport(Decimal(0), Decimal(0), {"zeta_series_cutoffs": {}, "product_cutoff": None})
    per_factor = tol / (4 * k)
    digits = _working_digits(tol)
    cutoffs: dict[int, int] = {}
    with localcontext() as ctx:
        ctx.prec = digits
        value = Decimal(1)
        err_sum = Decimal(0)
        for j in range(n - k + 1, n + 1):
            zv = zeta(j, per_factor)
            value /= zv.value
            err_sum += zv.error_bound
            cutoffs[j] = zv.terms
        # |1/z^ - 1/z| <= e/(1-e) per factor and factors stay below 1,
        # so errors add; 1.01 absorbs the 1/(1-e) inflation and rounding.
        bound = err_sum * Decimal("1.01") + Decimal(10) ** (8 - digits)
    return DensityReport(value, bound, {"zeta_series_cutoffs": cutoffs, "product_cutoff": None})


def density_limit(d: int, tol: float) -> DensityReport:
    """Limit density at fixed codimension d = n - k as n grows:
    prod_{j=d+1}^{infinity} zeta(j)^(-1), with absolute error <= tol.

    The product is truncated at J = max(40, ceil(log2(1/tol)) + 2); the
    dropped factor lies within 2^(1-J) of 1 because
    ln zeta(j) <= zeta(j) - 1 <= 2^(1-j) for j >= 3.
    """
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"codimension must be an integer >= 1, got {d}")
    if not tol > 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    j_cut = max(40, math.ceil(math.log2(1 / tol)) + 2)
    per_factor = tol / (4 * (j_cut - d))
    digits = _working_digits(tol)
    cutoffs: dict[int, int] = {}
    with localcontext() as ctx:
        ctx.prec = digits
        value = Decimal(1)
        err_sum = Decimal(0)
        for j in range(d + 1, j_cut + 1):
            zv = zeta(j, per_factor)
            value /= zv.value
            err_sum += zv.error_bound
            cutoffs[j] = zv.terms
        tail = Decimal(2) ** (1 - j_cut)
        bound = err_sum * Decimal("1.01") + tail + Decimal(10) ** (8 - digits)
    return DensityReport(value, bound, {"zeta_series_cutoffs": cutoffs, "product_cutoff": j_cut})


def count_full_rank_mod_p(p: int, k: int, n: int) -> int:
    """Number of full-rank k x n matrices over Z/pZ:
    prod_{j=0}^{k-1} (p^n - p^j)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not (1 <= k <= n):
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    out = 1
    for j in range(k):
        out *= p**n - p**j
    return out


def local_density(s: PrimeSet, k: int, n: int) -> Fraction:
    """Exact density of k x n matrices, mod the primes in s, whose reduction
    stays full rank at every p in s:
    prod_{j=n-k+1}^{n} prod_{p in s} (1 - p^(-j))."""
    if not (1 <= k <= n):
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    out = Fraction(1)
    for j in range(n - k + 1, n + 1):
        for p in s.primes:
            out *= 1 - Fraction(1, p**j)
    return out


def divisibility_defect(p: int, k: int, n: int) -> Fraction:
    """Probability that p divides every full-rank minor:
    1 - prod_{j=n-k+1}^{n} (1 - p^(-j)), exactly."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not (1 <= k <= n):
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    prod = Fraction(1)
    for j in range(n - k + 1, n + 1):
        prod *= 1 - Fraction(1, p**j)
    return 1 - prod
