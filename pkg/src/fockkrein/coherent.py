"""Fermionic coherent states and their closed-form overlap.

A coherent state is exp(pair_creation(Lam) + mode_creation(xi)) psi0 for a
conjugate-anti-symmetric Lam and a vector xi. Two constructions are kept
deliberately independent:

* ``coherent_series``: the exponential series applied on the Fock space;
  nilpotency truncates it at degree d, and the degree-0 component is
  exactly 1.
* ``coherent_explicit``: the literal degree-wise permutation sums

    K_{2n}(eta_1..eta_{2n})   = 1/(2^{2n} n! (2n)!) sum_sigma sign(sigma)
                                prod_k {Lam eta_{s(2k)}, eta_{s(2k-1)}},
    K_{2n+1}(eta_1..eta_{2n+1}) = 1/(2^{2n+1} n! (2n+1)!) sum_sigma
                                sign(sigma) {xi, eta_{s(1)}}
                                prod_k {Lam eta_{s(2k+1)}, eta_{s(2k)}},

  evaluated on increasing basis tuples.

The overlap of two coherent states has the closed form

    <K(L, xi), K(L', xi')> = (1 + b/2) det(1 - L L')^(1/2),
    b = {xi', (1 - L L')^(-1) xi},

valid for ||L L'||_op < 1. The square root's branch is realized through
the trace-log series exp(1/2 sum_k -tr((L L')^k) / k), never through
eigenvalue logarithms; inputs violating the norm hypothesis are rejected.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial

import numpy as np

from .fock import FockState, fock_inner, index_tuples, state_to_vector, vacuum, vector_to_state
from .krein import (
    CONJUGATE_LINEAR,
    HypothesisViolationError,
    KOperator,
    KreinSpace,
    inner,
    is_conj_antisymmetric,
    operator_norm,
)
from .lie import _perm_sign, mode_creation_matrix, pair_creation_matrix

__all__ = [
    "CoherentData",
    "coherent_series",
    "coherent_explicit",
    "overlap_closed",
    "wave_function",
    "det_sqrt_tracelog",
    "EXPLICIT_PAIR_LIMIT",
]

EXPLICIT_PAIR_LIMIT = 3  # literal (2n)! sums; n <= 3 covers dims <= 6


@dataclass(frozen=True)
class CoherentData:
    """Parameters (Lam, xi) of a coherent state."""

    space: KreinSpace
    lam: np.ndarray
    xi: np.ndarray

    def __post_init__(self):
        d = self.space.dim
        m = np.array(self.lam.matrix if isinstance(self.lam, KOperator) else self.lam,
                     dtype=complex)
        v = np.array(self.xi, dtype=complex)
        if m.shape != (d, d):
            raise ValueError(f"lam must be {d}x{d}")
        if v.shape != (d,):
            raise ValueError(f"xi must have length {d}")
        if not is_conj_antisymmetric(self.space, m, tol=1e-9):
            raise ValueError("lam must be conjugate-anti-symmetric")
        m.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "lam", m)
        object.__setattr__(self, "xi", v)

    @classmethod
    def zero(cls, space: KreinSpace) -> "CoherentData":
        return cls(space, np.zeros((space.dim, space.dim), dtype=complex),
                   np.zeros(space.dim, dtype=complex))

    def operator(self) -> KOperator:
        return KOperator(self.lam, CONJUGATE_LINEAR)


def coherent_series(data: CoherentData) -> FockState:
    """exp(pair_creation + mode_creation) applied to the vacuum.

    The two generators commute and the mode creator is nilpotent, so the
    exponential splits as exp(pair) (1 + mode) psi0. Evaluating the even
    part as exp(pair) psi0 keeps it bit-exactly independent of xi; the odd
    part is exp(pair) applied to the one-mode state.
    """
    space = data.space
    pair = pair_creation_matrix(space, data.lam)
    vec = state_to_vector(vacuum(space))
    total = _exp_apply(pair, vec, space.dim)
    total += _exp_apply(pair, mode_creation_matrix(space, data.xi) @ vec, space.dim)
    return vector_to_state(space, total)


def _exp_apply(gen: np.ndarray, vec: np.ndarray, dim: int) -> np.ndarray:
    total = vec.copy()
    term = vec
    for m in range(1, dim + 1):
        term = gen @ term / m
        if not np.any(term):
            break
        total += term
    return total


def coherent_explicit(data: CoherentData, pair_limit: int = EXPLICIT_PAIR_LIMIT) -> FockState:
    """The literal degree-wise permutation sums, on increasing basis tuples.

    Guarded: the even/odd degree 2n or 2n+1 needs (2n)!/(2n+1)!
    permutations; degrees with n beyond ``pair_limit`` are rejected.
    """
    space = data.space
    d = space.dim
    if d // 2 > pair_limit:
        raise ValueError(
            f"explicit construction guard: dim {d} needs pair count > {pair_limit}"
        )
    sig = space.signature
    m = data.lam
    comps = {0: np.ones(1, dtype=complex)}
    for deg in range(1, d + 1):
        tuples = index_tuples(d, deg)
        coeffs = np.zeros(len(tuples), dtype=complex)
        if deg % 2 == 0:
            n = deg // 2
            pref = 1.0 / (2.0 ** (2 * n) * factorial(n) * factorial(deg))
            for idx, J in enumerate(tuples):
                w = _pair_weights(sig, m, J)
                acc = 0j
                for perm in itertools.permutations(range(deg)):
                    term = complex(_perm_sign(perm))
                    for k in range(n):
                        term *= w[perm[2 * k], perm[2 * k + 1]]
                        if term == 0:
                            break
                    acc += term
                coeffs[idx] = pref * acc
        else:
            n = (deg - 1) // 2
            pref = 1.0 / (2.0 ** (2 * n + 1) * factorial(n) * factorial(deg))
            for idx, J in enumerate(tuples):
                w = _pair_weights(sig, m, J)
                xw = np.array([sig[j] * np.conj(data.xi[j]) for j in J])
                acc = 0j
                for perm in itertools.permutations(range(deg)):
                    term = _perm_sign(perm) * xw[perm[0]]
                    if term == 0:
                        continue
                    for k in range(n):
                        term *= w[perm[2 * k + 1], perm[2 * k + 2]]
                        if term == 0:
                            break
                    acc += term
                coeffs[idx] = pref * acc
        if np.any(coeffs):
            comps[deg] = coeffs
    return FockState(space, comps)


def _pair_weights(sig, m, J):
    """w[a, b] = {Lam zeta_{J[b]}, zeta_{J[a]}} = s_{J[a]} conj(M[J[a], J[b]])."""
    deg = len(J)
    w = np.empty((deg, deg), dtype=complex)
    for a in range(deg):
        for b in range(deg):
            w[a, b] = sig[J[a]] * np.conj(m[J[a], J[b]])
    return w


def det_sqrt_tracelog(a: np.ndarray, tol: float = 1e-15, max_terms: int = 10**4) -> complex:
    """det(1 - a)^(1/2) through exp(1/2 sum_k -tr(a^k)/k), for ||a||_op < 1.

    This series fixes the square-root branch by analytic continuation from
    a = 0. Truncation: the tail after k terms is bounded by
    d sigma^(k+1) / ((k+1)(1-sigma)) with sigma = ||a||_op; the loop stops
    once that bound falls below ``tol`` (individual terms may vanish by
    symmetry long before the series has converged, so the bound, not the
    term size, drives termination).
    """
    a = np.asarray(a, dtype=complex)
    d = a.shape[0]
    sigma = float(np.linalg.norm(a, 2))
    if sigma >= 1.0:
        raise HypothesisViolationError(
            f"operator norm {sigma:.6g} >= 1; the closed form does not apply"
        )
    if sigma == 0.0:
        return 1.0 + 0j
    log_half = 0j
    power = a
    for k in range(1, max_terms + 1):
        log_half += -np.trace(power) / (2.0 * k)
        if d * sigma ** (k + 1) / ((k + 1) * (1.0 - sigma)) < tol:
            break
        power = power @ a
    else:
        raise RuntimeError("trace-log series did not converge within the term cap")
    return complex(np.exp(log_half))


def overlap_closed(data: CoherentData, other: CoherentData) -> complex:
    """<K(L, xi), K(L', xi')> = (1 + b/2) det(1 - L L')^(1/2)."""
    if data.space != other.space:
        raise ValueError("coherent data live on different spaces")
    space = data.space
    a = data.lam @ np.conj(other.lam)  # linear composite L L'
    nrm = operator_norm(a)
    if nrm >= 1.0:
        raise HypothesisViolationError(
            f"||L L'||_op = {nrm:.6g} >= 1; the closed form does not apply"
        )
    det_half = det_sqrt_tracelog(a)
    try:
        y = np.linalg.solve(np.eye(space.dim) - a, data.xi)
    except np.linalg.LinAlgError as exc:
        raise HypothesisViolationError(f"1 - L L' is singular: {exc}") from exc
    b = inner(space, other.xi, y)
    return (1.0 + 0.5 * b) * det_half


def wave_function(data: CoherentData, psi: FockState) -> complex:
    """<K(data), psi>: the reproducing evaluation map. For psi = K(data')
    under the norm hypothesis it reproduces ``overlap_closed``."""
    return fock_inner(coherent_series(data), psi)
