"""The dynamical Lie algebra acting on the Fock space.

An element decomposes into five parts,

    x = current(lam) + pair_annihilation(lam_plus)
      + pair_creation(lam_minus) + mode_annihilation(xi_plus)
      + mode_creation(xi_minus),

with lam a complex-linear matrix, lam_plus/lam_minus conjugate-linear
conjugate-anti-symmetric matrices and xi_plus/xi_minus vectors. On the
Fock space these act as

    current(lam)      = sum_i s_i a^dag_{zeta_i} a_{lam zeta_i} - tr(lam)/2,
    pair_annihilation = 1/2 sum_i s_i a_{zeta_i} a_{Lam zeta_i},
    pair_creation     = 1/2 sum_i s_i a^dag_{Lam zeta_i} a^dag_{zeta_i},
    mode_annihilation = a_xi / sqrt(2),   mode_creation = a^dag_xi / sqrt(2).

``rep`` assembles the full matrix from these generator sums; the
independent explicit-action formulas for the pair operators live in
``pair_annihilation_explicit`` / ``pair_creation_explicit`` and the two
routes are required to agree.

The bracket table is implemented structurally (componentwise closed
formulas); ``rep`` of a bracket must reproduce the matrix commutator,
which is the oracle the test suite runs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import sqrt

import numpy as np

from .fock import (
    FockState,
    annihilation_matrices,
    creation_matrices,
    evaluate,
    fock_dimension,
    index_tuples,
    state_to_vector,
    vacuum,
)
from .krein import (
    KOperator,
    KreinSpace,
    adjoint_matrix,
    inner,
    is_conj_antisymmetric,
    operator_norm,
)

__all__ = [
    "LieElement",
    "rep",
    "bracket",
    "gip",
    "star",
    "norm_identities",
    "current_matrix",
    "pair_annihilation_matrix",
    "pair_creation_matrix",
    "mode_annihilation_matrix",
    "mode_creation_matrix",
    "pair_annihilation_explicit",
    "pair_creation_explicit",
]


@dataclass(frozen=True)
class LieElement:
    """Five-component element (lam, lam_plus, lam_minus, xi_plus, xi_minus).

    lam_plus parametrizes a pair annihilator, lam_minus a pair creator,
    xi_plus a mode annihilator, xi_minus a mode creator; both lam_plus and
    lam_minus must be conjugate-anti-symmetric.
    """

    space: KreinSpace
    lam: np.ndarray
    lam_plus: np.ndarray
    lam_minus: np.ndarray
    xi_plus: np.ndarray
    xi_minus: np.ndarray

    def __post_init__(self):
        d = self.space.dim
        for name in ("lam", "lam_plus", "lam_minus"):
            m = np.array(getattr(self, name), dtype=complex)
            if m.shape != (d, d):
                raise ValueError(f"{name} must be {d}x{d}")
            m.setflags(write=False)
            object.__setattr__(self, name, m)
        for name in ("xi_plus", "xi_minus"):
            v = np.array(getattr(self, name), dtype=complex)
            if v.shape != (d,):
                raise ValueError(f"{name} must have length {d}")
            v.setflags(write=False)
            object.__setattr__(self, name, v)
        for name in ("lam_plus", "lam_minus"):
            if not is_conj_antisymmetric(self.space, getattr(self, name), tol=1e-9):
                raise ValueError(f"{name} must be conjugate-anti-symmetric")

    @classmethod
    def zero(cls, space: KreinSpace) -> "LieElement":
        d = space.dim
        z = np.zeros((d, d), dtype=complex)
        v = np.zeros(d, dtype=complex)
        return cls(space, z, z, z, v, v)

    @classmethod
    def from_parts(cls, space, lam=None, lam_plus=None, lam_minus=None,
                   xi_plus=None, xi_minus=None) -> "LieElement":
        d = space.dim
        z = np.zeros((d, d), dtype=complex)
        v = np.zeros(d, dtype=complex)

        def mat(m):
            return z if m is None else (m.matrix if isinstance(m, KOperator) else m)

        return cls(
            space,
            mat(lam),
            mat(lam_plus),
            mat(lam_minus),
            v if xi_plus is None else xi_plus,
            v if xi_minus is None else xi_minus,
        )

    def __add__(self, other: "LieElement") -> "LieElement":
        if self.space != other.space:
            raise ValueError("elements live on different spaces")
        return LieElement(
            self.space,
            self.lam + other.lam,
            self.lam_plus + other.lam_plus,
            self.lam_minus + other.lam_minus,
            self.xi_plus + other.xi_plus,
            self.xi_minus + other.xi_minus,
        )

    def scaled(self, c: complex) -> "LieElement":
        return LieElement(
            self.space, c * self.lam, c * self.lam_plus, c * self.lam_minus,
            c * self.xi_plus, c * self.xi_minus,
        )

    def max_abs(self) -> float:
        return max(
            float(np.max(np.abs(p)))
            for p in (self.lam, self.lam_plus, self.lam_minus, self.xi_plus, self.xi_minus)
        )


# -- Fock matrices of the generators ----------------------------------------


def current_matrix(space: KreinSpace, lam: np.ndarray) -> np.ndarray:
    """sum_i s_i a^dag_{zeta_i} a_{lam zeta_i} - (tr lam / 2) 1."""
    d = space.dim
    A = annihilation_matrices(d)
    C = creation_matrices(space)
    N = fock_dimension(d)
    out = np.zeros((N, N), dtype=complex)
    for j in range(d):
        w = np.zeros((N, N), dtype=complex)
        for i in range(d):
            if lam[j, i] != 0:
                w += space.signature[i] * lam[j, i] * C[i]
        out += w @ A[j]
    return out - 0.5 * np.trace(lam) * np.eye(N)


def pair_annihilation_matrix(space: KreinSpace, lam_plus: np.ndarray) -> np.ndarray:
    """1/2 sum_i s_i a_{zeta_i} a_{Lam zeta_i} with (Lam zeta_i)_j = M_ji."""
    d = space.dim
    A = annihilation_matrices(d)
    N = fock_dimension(d)
    out = np.zeros((N, N), dtype=complex)
    for i in range(d):
        w = np.zeros((N, N), dtype=complex)
        for j in range(d):
            if lam_plus[j, i] != 0:
                w += lam_plus[j, i] * A[j]
        out += space.signature[i] * A[i] @ w
    return 0.5 * out


def pair_creation_matrix(space: KreinSpace, lam_minus: np.ndarray) -> np.ndarray:
    """1/2 sum_i s_i a^dag_{Lam zeta_i} a^dag_{zeta_i}."""
    d = space.dim
    C = creation_matrices(space)
    N = fock_dimension(d)
    out = np.zeros((N, N), dtype=complex)
    for i in range(d):
        w = np.zeros((N, N), dtype=complex)
        for j in range(d):
            if lam_minus[j, i] != 0:
                w += np.conj(lam_minus[j, i]) * C[j]
        out += space.signature[i] * w @ C[i]
    return 0.5 * out


def mode_annihilation_matrix(space: KreinSpace, xi: np.ndarray) -> np.ndarray:
    from .fock import annihilation_operator_matrix

    return annihilation_operator_matrix(space, xi) / sqrt(2.0)


def mode_creation_matrix(space: KreinSpace, xi: np.ndarray) -> np.ndarray:
    from .fock import creation_operator_matrix

    return creation_operator_matrix(space, xi) / sqrt(2.0)


def rep(x: LieElement) -> np.ndarray:
    """Matrix of the element on the full Fock space (normalized basis)."""
    return (
        current_matrix(x.space, x.lam)
        + pair_annihilation_matrix(x.space, x.lam_plus)
        + pair_creation_matrix(x.space, x.lam_minus)
        + mode_annihilation_matrix(x.space, x.xi_plus)
        + mode_creation_matrix(x.space, x.xi_minus)
    )


# -- Explicit pair-operator actions (independent of the generator sums) -----


def pair_annihilation_explicit(space: KreinSpace, lam_plus: np.ndarray, psi: FockState) -> FockState:
    """Action on a state via n(n-1) sum_i s_i psi(Lam zeta_i, zeta_i, ...)."""
    d = space.dim
    basis = np.eye(d, dtype=complex)
    comps = {}
    for n, _ in psi.components.items():
        if n < 2:
            continue
        deg = n - 2
        part = FockState(space, {n: psi.components[n]})
        coeffs = np.zeros(len(index_tuples(d, deg)), dtype=complex)
        for idx, I in enumerate(index_tuples(d, deg)):
            tail = [basis[i] for i in I]
            acc = 0j
            for i in range(d):
                col = lam_plus[:, i]  # Lam zeta_i in coordinates
                acc += space.signature[i] * evaluate(part, [col, basis[i]] + tail)
            coeffs[idx] = n * (n - 1) * acc
        if deg in comps:
            comps[deg] = comps[deg] + coeffs
        else:
            comps[deg] = coeffs
    return FockState(space, comps)


def pair_creation_explicit(space: KreinSpace, lam_minus: np.ndarray, psi: FockState) -> FockState:
    """Action via the antisymmetrized sum
    1/(4 (n+2)!) sum_sigma sign(sigma) {Lam eta_s2, eta_s1} psi(eta_s3, ...)."""
    d = space.dim
    sig = space.signature
    basis = np.eye(d, dtype=complex)
    comps: dict[int, np.ndarray] = {}
    for n, _ in psi.components.items():
        deg = n + 2
        if deg > d:
            continue
        part = FockState(space, {n: psi.components[n]})
        coeffs = np.zeros(len(index_tuples(d, deg)), dtype=complex)
        for idx, J in enumerate(index_tuples(d, deg)):
            acc = 0j
            for perm in itertools.permutations(range(deg)):
                parity = _perm_sign(perm)
                a, b = J[perm[0]], J[perm[1]]
                w = sig[a] * np.conj(lam_minus[a, b])  # {Lam eta_b, eta_a}
                if w == 0:
                    continue
                rest = [basis[J[p]] for p in perm[2:]]
                acc += parity * w * evaluate(part, rest)
            coeffs[idx] = acc / (4.0 * _factorial(deg))
        if deg in comps:
            comps[deg] = comps[deg] + coeffs
        else:
            comps[deg] = coeffs
    return FockState(space, comps)


def _factorial(n: int) -> float:
    out = 1.0
    for k in range(2, n + 1):
        out *= k
    return out


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# -- Bracket table -----------------------------------------------------------


def bracket(x: LieElement, y: LieElement) -> LieElement:
    """Structural Lie bracket; rep(bracket(x, y)) = [rep x, rep y]."""
    if x.space != y.space:
        raise ValueError("elements live on different spaces")
    space = x.space
    s = space.signs
    d = space.dim
    lam = np.zeros((d, d), dtype=complex)
    lp = np.zeros((d, d), dtype=complex)
    lm = np.zeros((d, d), dtype=complex)
    xp = np.zeros(d, dtype=complex)
    xm = np.zeros(d, dtype=complex)

    def pair_map(a, b):
        # matrix of eta -> a {eta, b} - b {eta, a}, conjugate-linear
        return np.outer(a, s * b) - np.outer(b, s * a)

    # [current, current]: lam'' = lam_y lam_x - lam_x lam_y
    lam += y.lam @ x.lam - x.lam @ y.lam

    # [current(l), pair_annihilation(P)] = pair_annihilation(-l P - P l*)
    for l, P, sgn in ((x.lam, y.lam_plus, 1.0), (y.lam, x.lam_plus, -1.0)):
        lp += sgn * (-(l @ P) - P @ np.conj(adjoint_matrix(space, l)))

    # [current(l), pair_creation(Q)] = pair_creation(l* Q + Q l)
    for l, Q, sgn in ((x.lam, y.lam_minus, 1.0), (y.lam, x.lam_minus, -1.0)):
        lm += sgn * (adjoint_matrix(space, l) @ Q + Q @ np.conj(l))

    # [pair_annihilation(P), pair_creation(Q)] = current(P Q)
    lam += x.lam_plus @ np.conj(y.lam_minus)
    lam -= y.lam_plus @ np.conj(x.lam_minus)

    # [current(l), mode_annihilation(v)] = mode_annihilation(-l v)
    xp += -(x.lam @ y.xi_plus)
    xp -= -(y.lam @ x.xi_plus)

    # [current(l), mode_creation(v)] = mode_creation(l* v)
    xm += adjoint_matrix(space, x.lam) @ y.xi_minus
    xm -= adjoint_matrix(space, y.lam) @ x.xi_minus

    # [pair_creation(Q), mode_annihilation(v)] = mode_creation(Q v)
    xm += x.lam_minus @ np.conj(y.xi_plus)
    xm -= y.lam_minus @ np.conj(x.xi_plus)

    # [pair_annihilation(P), mode_creation(v)] = mode_annihilation(-P v)
    xp += -(x.lam_plus @ np.conj(y.xi_minus))
    xp -= -(y.lam_plus @ np.conj(x.xi_minus))

    # [mode_annihilation(v), mode_annihilation(w)] = pair_annihilation(w{.,v} - v{.,w})
    lp += 0.5 * (pair_map(y.xi_plus, x.xi_plus) - pair_map(x.xi_plus, y.xi_plus))

    # [mode_creation(v), mode_creation(w)] = pair_creation(v{.,w} - w{.,v})
    lm += 0.5 * (pair_map(x.xi_minus, y.xi_minus) - pair_map(y.xi_minus, x.xi_minus))

    # [mode_creation(v), mode_annihilation(w)] = current(eta -> w {v, eta})
    lam += np.outer(y.xi_plus, s * np.conj(x.xi_minus))
    lam -= np.outer(x.xi_plus, s * np.conj(y.xi_minus))

    return LieElement(space, lam, lp, lm, xp, xm)


def star(x: LieElement) -> LieElement:
    """The adjoint involution: rep(star(x)) is the Fock-Krein adjoint of
    rep(x). It conjugates lam and swaps the +/- component roles."""
    return LieElement(
        x.space,
        adjoint_matrix(x.space, x.lam),
        x.lam_minus,
        x.lam_plus,
        x.xi_minus,
        x.xi_plus,
    )


def conj_pair_trace(space: KreinSpace, a: np.ndarray, b: np.ndarray) -> complex:
    """Trace of the linear composite of two conjugate-linear operators,
    tr(a b) = tr(M_a conj(M_b))."""
    _ = space
    return complex(np.trace(a @ np.conj(b)))


def gip(x: LieElement, y: LieElement) -> complex:
    """The ad-invariant inner product

        2 tr(lam_x* lam_y) - tr(P_y P_x) - tr(Q_x Q_y)
        + 2 {xi-_y, xi-_x} + 2 {xi+_x, xi+_y},

    with P the pair-annihilation parts, Q the pair-creation parts, and
    traces of conjugate-linear products taken as traces of the linear
    composites.
    """
    if x.space != y.space:
        raise ValueError("elements live on different spaces")
    space = x.space
    return (
        2.0 * complex(np.trace(adjoint_matrix(space, x.lam) @ y.lam))
        - conj_pair_trace(space, y.lam_plus, x.lam_plus)
        - conj_pair_trace(space, x.lam_minus, y.lam_minus)
        + 2.0 * inner(space, y.xi_minus, x.xi_minus)
        + 2.0 * inner(space, x.xi_plus, y.xi_plus)
    )


# -- Operator-norm identities -------------------------------------------------


def norm_identities(space: KreinSpace, lam_op, xi) -> dict[str, float]:
    """Evaluate the operator-norm identities for the pair and mode operators.

    Returns the quantities and their pairwise deviations:
    ||pair_annihilation||_op^2 = ||pair_creation||_op^2
    = ||pair_creation psi0||^2 = -tr(L0^2)/2 + tr(L1^2)/2, with L0/L1 the
    decomposition-preserving/swapping blocks, and ||mode ops||_op^2
    = ||mode_creation psi0||^2 = ||xi||^2 / 2 (Hilbertized norms).
    """
    m = lam_op.matrix if isinstance(lam_op, KOperator) else np.asarray(lam_op, dtype=complex)
    if not is_conj_antisymmetric(space, m, tol=1e-9):
        raise ValueError("lam must be conjugate-anti-symmetric")
    xi = np.asarray(xi, dtype=complex)
    s = space.signs
    same = (s[:, None] * s[None, :]) > 0
    m0 = np.where(same, m, 0.0)
    m1 = np.where(~same, m, 0.0)
    block_value = float(
        np.real(-0.5 * np.trace(m0 @ np.conj(m0)) + 0.5 * np.trace(m1 @ np.conj(m1)))
    )

    low = pair_annihilation_matrix(space, m)
    high = pair_creation_matrix(space, m)
    vac = state_to_vector(vacuum(space))
    pair_vac = high @ vac
    res = {
        "pair_lower_norm_sq": operator_norm(low) ** 2,
        "pair_raise_norm_sq": operator_norm(high) ** 2,
        "pair_vacuum_norm_sq": float(np.sum(np.abs(pair_vac) ** 2)),
        "pair_block_traces": block_value,
    }
    vals = [res["pair_lower_norm_sq"], res["pair_raise_norm_sq"],
            res["pair_vacuum_norm_sq"], res["pair_block_traces"]]
    res["pair_max_deviation"] = max(vals) - min(vals)

    mode_low = mode_annihilation_matrix(space, xi)
    mode_high = mode_creation_matrix(space, xi)
    mode_vac = mode_high @ vac
    half_norm = 0.5 * float(np.sum(np.abs(xi) ** 2))
    res.update(
        mode_lower_norm_sq=operator_norm(mode_low) ** 2,
        mode_raise_norm_sq=operator_norm(mode_high) ** 2,
        mode_vacuum_norm_sq=float(np.sum(np.abs(mode_vac) ** 2)),
        mode_half_norm=half_norm,
    )
    vals = [res["mode_lower_norm_sq"], res["mode_raise_norm_sq"],
            res["mode_vacuum_norm_sq"], res["mode_half_norm"]]
    res["mode_max_deviation"] = max(vals) - min(vals)
    return res
