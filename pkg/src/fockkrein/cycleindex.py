"""Exact cycle-index combinatorics of permutation pairing graphs.

Everything here is exact big-integer rational arithmetic; floating point
enters only through ``evaluate_poly``. Three independent routes to the
same polynomials are kept side by side:

* ``p_n_enumerate``: brute-force tally over all (2n)! permutations,
* ``p_n_recursive`` and ``q_n_recursive``: the recursion
  p_n = (1/2n) sum_k 2^(2k) (n!/(n-k)!)^2 x_k p_{n-k}, equivalently
  q_n = (1/n) sum_k y_k q_{n-k},
* ``q_n_closed``: the symmetric-group cycle index
  q_n = sum_{sum k j_k = n} prod_k (1/j_k!) (y_k/k)^(j_k),

with the rescalings q_n = p_n / (2^(2n) (n!)^2) and y_k = x_k / 2.
The truncated power-series identity sum_n q_n = exp(sum_k y_k / k) is
checked by ``series_identity_check``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .kernels import cycle_type_counts, pairing_cycle_type

__all__ = [
    "CycleIndexPoly",
    "p_sigma",
    "p_n_enumerate",
    "p_n_recursive",
    "q_n_recursive",
    "q_n_closed",
    "p_to_q",
    "q_to_p",
    "partitions",
    "exp_series_truncated",
    "series_identity_check",
    "evaluate_poly",
    "format_poly",
    "ENUMERATION_LIMIT",
]

ENUMERATION_LIMIT = 5  # (2n)! permutations; n=5 already walks 3.6M graphs


def _trim(exponents) -> tuple[int, ...]:
    e = tuple(int(x) for x in exponents)
    while e and e[-1] == 0:
        e = e[:-1]
    return e


@dataclass(frozen=True)
class CycleIndexPoly:
    """Sparse polynomial with exact rational coefficients.

    Keys are exponent vectors (j_1, j_2, ...) with trailing zeros trimmed;
    ``family`` names the variables, x or y with y_k = x_k / 2.
    """

    family: str
    terms: dict[tuple[int, ...], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in ("x", "y"):
            raise ValueError("family must be 'x' or 'y'")
        clean = {}
        for e, c in self.terms.items():
            c = Fraction(c)
            if c != 0:
                clean[_trim(e)] = c
        object.__setattr__(self, "terms", clean)

    @classmethod
    def zero(cls, family: str) -> "CycleIndexPoly":
        return cls(family, {})

    @classmethod
    def one(cls, family: str) -> "CycleIndexPoly":
        return cls(family, {(): Fraction(1)})

    def __add__(self, other: "CycleIndexPoly") -> "CycleIndexPoly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return CycleIndexPoly(self.family, out)

    def __sub__(self, other: "CycleIndexPoly") -> "CycleIndexPoly":
        return self + other.scaled(Fraction(-1))

    def scaled(self, c) -> "CycleIndexPoly":
        c = Fraction(c)
        return CycleIndexPoly(self.family, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other: "CycleIndexPoly") -> "CycleIndexPoly":
        self._check(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                k = max(len(e1), len(e2))
                e = tuple(
                    (e1[i] if i < len(e1) else 0) + (e2[i] if i < len(e2) else 0)
                    for i in range(k)
                )
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return CycleIndexPoly(self.family, out)

    def times_variable(self, k: int) -> "CycleIndexPoly":
        """Multiply by the k-th variable (1-based)."""
        out = {}
        for e, c in self.terms.items():
            e2 = list(e) + [0] * max(0, k - len(e))
            e2[k - 1] += 1
            out[tuple(e2)] = c
        return CycleIndexPoly(self.family, out)

    def weight_slice(self, n: int) -> "CycleIndexPoly":
        """Terms of total weight n, where variable k carries weight k."""
        return CycleIndexPoly(
            self.family,
            {e: c for e, c in self.terms.items() if _weight(e) == n},
        )

    def max_weight(self) -> int:
        return max((_weight(e) for e in self.terms), default=0)

    def coefficient_sum(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    def is_weight_homogeneous(self, n: int) -> bool:
        return all(_weight(e) == n for e in self.terms)

    def _check(self, other: "CycleIndexPoly") -> None:
        if self.family != other.family:
            raise ValueError("polynomials use different variable families")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CycleIndexPoly)
            and self.family == other.family
            and self.terms == other.terms
        )

    def __repr__(self):
        return f"CycleIndexPoly({self.family!r}, {len(self.terms)} terms)"


def _weight(e: tuple[int, ...]) -> int:
    return sum((k + 1) * j for k, j in enumerate(e))


def p_sigma(sigma) -> tuple[int, ...]:
    """Exponent vector of the pairing-graph monomial of one permutation.

    ``sigma`` is a permutation of {0, .., 2n-1} in one-line notation; the
    result (j_1, .., j_n) counts the 2k-edge cycles of the multigraph with
    edges (2k, 2k+1) and (sigma(2k), sigma(2k+1)), so sum k j_k = n.
    """
    return pairing_cycle_type(tuple(sigma))


def p_n_enumerate(n: int, limit: int = ENUMERATION_LIMIT) -> CycleIndexPoly:
    """p_n by direct enumeration over all (2n)! permutations."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > limit:
        raise ValueError(f"enumeration guard: n={n} exceeds limit {limit}")
    counts = cycle_type_counts(n)
    return CycleIndexPoly("x", {e: Fraction(c) for e, c in counts.items()})


@lru_cache(maxsize=None)
def p_n_recursive(n: int) -> CycleIndexPoly:
    """p_n from the recursion; p_0 = 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return CycleIndexPoly.one("x")
    acc = CycleIndexPoly.zero("x")
    for k in range(1, n + 1):
        coeff = Fraction(2 ** (2 * k)) * Fraction(factorial(n), factorial(n - k)) ** 2
        acc = acc + p_n_recursive(n - k).times_variable(k).scaled(coeff)
    return acc.scaled(Fraction(1, 2 * n))


@lru_cache(maxsize=None)
def q_n_recursive(n: int) -> CycleIndexPoly:
    """q_n from the rescaled recursion q_n = (1/n) sum_k y_k q_{n-k}."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return CycleIndexPoly.one("y")
    acc = CycleIndexPoly.zero("y")
    for k in range(1, n + 1):
        acc = acc + q_n_recursive(n - k).times_variable(k)
    return acc.scaled(Fraction(1, n))


def partitions(n: int, max_part: int | None = None):
    """Yield exponent vectors (j_1, .., j_n) with sum k j_k = n."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return

    def rec(remaining, k):
        if remaining == 0:
            yield {}
            return
        if k == 0:
            return
        for j in range(remaining // k + 1):
            for rest in rec(remaining - k * j, k - 1):
                if j:
                    rest = dict(rest)
                    rest[k] = j
                yield rest

    for d in rec(n, min(max_part, n)):
        yield tuple(d.get(k, 0) for k in range(1, n + 1))


def q_n_closed(n: int) -> CycleIndexPoly:
    """The symmetric-group cycle index in closed form."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    terms = {}
    for e in partitions(n):
        c = Fraction(1)
        for k, j in enumerate(e, start=1):
            if j:
                c *= Fraction(1, factorial(j) * k**j)
        terms[e] = c
    return CycleIndexPoly("y", terms)


def p_to_q(p: CycleIndexPoly, n: int) -> CycleIndexPoly:
    """Rescale p_n into q_n: divide by 2^(2n) (n!)^2 and set x_k = 2 y_k."""
    if p.family != "x":
        raise ValueError("expected an x-family polynomial")
    scale = Fraction(1, 2 ** (2 * n) * factorial(n) ** 2)
    return CycleIndexPoly(
        "y",
        {e: c * scale * 2 ** sum(e) for e, c in p.terms.items()},
    )


def q_to_p(q: CycleIndexPoly, n: int) -> CycleIndexPoly:
    if q.family != "y":
        raise ValueError("expected a y-family polynomial")
    scale = Fraction(2 ** (2 * n) * factorial(n) ** 2)
    return CycleIndexPoly(
        "x",
        {e: c * scale / 2 ** sum(e) for e, c in q.terms.items()},
    )


def exp_series_truncated(N: int) -> CycleIndexPoly:
    """exp(sum_{k<=N} y_k / k) in R[[y]], truncated to total weight <= N."""
    if N < 1:
        raise ValueError("N must be >= 1")
    gen = CycleIndexPoly(
        "y", {tuple([0] * (k - 1) + [1]): Fraction(1, k) for k in range(1, N + 1)}
    )
    acc = CycleIndexPoly.one("y")
    power = CycleIndexPoly.one("y")
    for m in range(1, N + 1):
        power = _truncate_weight(power * gen, N)
        acc = acc + power.scaled(Fraction(1, factorial(m)))
    return acc


def _truncate_weight(p: CycleIndexPoly, N: int) -> CycleIndexPoly:
    return CycleIndexPoly(
        p.family, {e: c for e, c in p.terms.items() if _weight(e) <= N}
    )


def series_identity_check(N: int) -> dict[int, bool]:
    """Weight-n slices of the truncated exponential against q_n, exactly."""
    exp_poly = exp_series_truncated(N)
    return {
        n: exp_poly.weight_slice(n) == q_n_recursive(n) for n in range(1, N + 1)
    }


def evaluate_poly(poly: CycleIndexPoly, values) -> complex:
    """Evaluate at variable_k = values[k-1]; exact coefficients multiplied
    into complex values. Every variable with nonzero exponent needs a value."""
    values = [complex(v) for v in values]
    total = 0j
    for e, c in poly.terms.items():
        if len(e) > len(values):
            missing = len(e)
            raise ValueError(
                f"no value supplied for variable {poly.family}{missing}"
            )
        term = complex(Fraction(c))
        for k, j in enumerate(e):
            if j:
                term *= values[k] ** j
        total += term
    return total


def format_poly(poly: CycleIndexPoly, name: str) -> str:
    """Canonical text form: terms sorted by descending exponent vector,
    rationals printed as num/den, e.g. ``q_2 = 1/2 y1^2 + 1/2 y2``."""
    if not poly.terms:
        return f"{name} = 0"
    pieces = []
    for e in sorted(poly.terms, reverse=True):
        c = poly.terms[e]
        coeff = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
        vars_part = " ".join(
            f"{poly.family}{k + 1}" + (f"^{j}" if j > 1 else "")
            for k, j in enumerate(e)
            if j
        )
        pieces.append(f"{coeff} {vars_part}".strip())
    return f"{name} = " + " + ".join(pieces)
