"""Fermionic Fock space over a finite-dimensional Krein space.

A state of degree n is an antisymmetric n-linear form on the base space,
stored through its coefficients c_I = psi(zeta_{i1}, ..., zeta_{in}) on
strictly increasing basis-index tuples I; the full Fock space over a
d-dimensional base has dimension 2^d. Absent degrees mean zero.

The graded inner product, reduced to increasing tuples, is

    <eta, psi> = sum_n 2^n (n!)^2 sum_I (prod_{i in I} s_i)
                 conj(eta_I) psi_I.

The reduction from the sum over all ordered basis tuples (each increasing
tuple occurs n! times, with squared signs) is a derived identity;
``fock_inner_literal`` keeps the literal tuple sum as an independent
oracle.

Matrices of operators on the full Fock space are taken in the NORMALIZED
basis e_I = phi_I / (sqrt(2^n) n!), whose Gram matrix is the diagonal
Fock signature prod_{i in I} s_i. In that basis the Hilbertized norm of a
state is the Euclidean norm of its coordinate vector and Krein adjoints
are S_F M^H S_F.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb, factorial, sqrt

import numpy as np

from .krein import KreinSpace, inner

__all__ = [
    "FockState",
    "vacuum",
    "zero_state",
    "evaluate",
    "fock_inner",
    "fock_inner_literal",
    "hilbert_norm_sq",
    "create",
    "annihilate",
    "pm_decompose",
    "car_suite",
    "index_tuples",
    "tuple_position",
    "fock_dimension",
    "fock_signature",
    "state_to_vector",
    "vector_to_state",
    "annihilation_matrices",
    "creation_matrices",
    "annihilation_operator_matrix",
    "creation_operator_matrix",
    "fock_adjoint_matrix",
]


@lru_cache(maxsize=None)
def index_tuples(dim: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All strictly increasing index tuples, in lexicographic order."""
    return tuple(itertools.combinations(range(dim), degree))


@lru_cache(maxsize=None)
def tuple_position(dim: int, degree: int) -> dict[tuple[int, ...], int]:
    return {t: k for k, t in enumerate(index_tuples(dim, degree))}


@lru_cache(maxsize=None)
def _tuple_array(dim: int, degree: int) -> np.ndarray:
    a = np.array(index_tuples(dim, degree), dtype=np.intp).reshape(
        comb(dim, degree), degree
    )
    a.setflags(write=False)
    return a


@lru_cache(maxsize=None)
def _sign_products(signature: tuple[int, ...], degree: int) -> np.ndarray:
    """prod_{i in I} s_i for every increasing tuple I."""
    s = np.array(signature, dtype=float)
    out = np.array(
        [np.prod(s[list(t)]) if t else 1.0 for t in index_tuples(len(signature), degree)]
    )
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def _negative_parity(signature: tuple[int, ...], degree: int) -> np.ndarray:
    """Number of negative-signature indices in each tuple, mod 2."""
    s = np.array(signature)
    out = np.array(
        [sum(1 for i in t if s[i] < 0) % 2 for t in index_tuples(len(signature), degree)],
        dtype=np.intp,
    )
    out.setflags(write=False)
    return out


def fock_dimension(dim: int) -> int:
    return 2**dim


@lru_cache(maxsize=None)
def _degree_offsets(dim: int) -> tuple[int, ...]:
    offs = [0]
    for n in range(dim + 1):
        offs.append(offs[-1] + comb(dim, n))
    return tuple(offs)


class FockState:
    """Degree-graded table of antisymmetric-form coefficients.

    ``components`` maps degree n to the length-C(d, n) coefficient array
    over increasing basis tuples. States are immutable; arithmetic returns
    new states.
    """

    __slots__ = ("space", "components")

    def __init__(self, space: KreinSpace, components: dict[int, np.ndarray] | None = None):
        comps: dict[int, np.ndarray] = {}
        for n, arr in (components or {}).items():
            if not 0 <= n <= space.dim:
                raise ValueError(f"degree {n} outside 0..{space.dim}")
            a = np.array(arr, dtype=complex)
            if a.shape != (comb(space.dim, n),):
                raise ValueError(
                    f"degree-{n} component must have length {comb(space.dim, n)}"
                )
            a.setflags(write=False)
            comps[n] = a
        self.space = space
        self.components = comps

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(sorted(self.components))

    def component(self, n: int) -> np.ndarray:
        got = self.components.get(n)
        if got is not None:
            return got
        z = np.zeros(comb(self.space.dim, n), dtype=complex)
        z.setflags(write=False)
        return z

    def coefficient(self, indices: tuple[int, ...]) -> complex:
        n = len(indices)
        comp = self.components.get(n)
        if comp is None:
            return 0j
        return complex(comp[tuple_position(self.space.dim, n)[tuple(indices)]])

    def pure_degree(self) -> int | None:
        """The single nonzero degree, or None if mixed or zero."""
        live = [n for n, c in self.components.items() if np.any(c != 0)]
        return live[0] if len(live) == 1 else None

    def f_degree(self) -> int | None:
        """Fock degree mod 2 when homogeneous mod 2, else None."""
        live = {n % 2 for n, c in self.components.items() if np.any(c != 0)}
        if not live:
            return 0
        return live.pop() if len(live) == 1 else None

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(np.max(np.abs(c)) <= tol for c in self.components.values())

    def max_abs(self) -> float:
        if not self.components:
            return 0.0
        return max(float(np.max(np.abs(c))) for c in self.components.values())

    def max_abs_diff(self, other: "FockState") -> float:
        if self.space != other.space:
            raise ValueError("states live on different spaces")
        worst = 0.0
        for n in set(self.components) | set(other.components):
            worst = max(worst, float(np.max(np.abs(self.component(n) - other.component(n)))))
        return worst

    def __add__(self, other: "FockState") -> "FockState":
        if self.space != other.space:
            raise ValueError("states live on different spaces")
        out = {}
        for n in set(self.components) | set(other.components):
            out[n] = self.component(n) + other.component(n)
        return FockState(self.space, out)

    def __sub__(self, other: "FockState") -> "FockState":
        return self + (-1.0) * other

    def __mul__(self, c) -> "FockState":
        return FockState(self.space, {n: c * a for n, a in self.components.items()})

    __rmul__ = __mul__

    def __neg__(self) -> "FockState":
        return (-1.0) * self

    def __repr__(self):
        return f"FockState(dim={self.space.dim}, degrees={self.degrees})"


def vacuum(space: KreinSpace) -> FockState:
    """The degree-0 state with coefficient 1; <psi0, psi0> = 1."""
    return FockState(space, {0: np.ones(1, dtype=complex)})


def zero_state(space: KreinSpace) -> FockState:
    return FockState(space, {})


def evaluate(state: FockState, args) -> complex:
    """Evaluate the antisymmetric form on len(args) vectors.

    Expands over increasing tuples I: sum_I c_I det(A_I) with
    (A_I)_{kl} = (args_k)_{i_l}. Multilinear and fully antisymmetric.
    """
    n = len(args)
    if not 0 <= n <= state.space.dim:
        return 0j
    comp = state.components.get(n)
    if comp is None:
        return 0j
    if n == 0:
        return complex(comp[0])
    rows = np.array(args, dtype=complex)
    if rows.shape != (n, state.space.dim):
        raise ValueError("argument count or dimension mismatch")
    mats = np.moveaxis(rows[:, _tuple_array(state.space.dim, n)], 1, 0)
    return complex(np.dot(comp, np.linalg.det(mats)))


def fock_inner(eta: FockState, psi: FockState) -> complex:
    """Graded Krein inner product, reduced to increasing tuples."""
    if eta.space != psi.space:
        raise ValueError("states live on different spaces")
    sig = eta.space.signature
    total = 0j
    for n in set(eta.components) & set(psi.components):
        w = (2.0**n) * factorial(n) ** 2
        total += w * complex(
            np.sum(_sign_products(sig, n) * np.conj(eta.components[n]) * psi.components[n])
        )
    return total


def fock_inner_literal(eta: FockState, psi: FockState) -> complex:
    """Independent oracle: the inner product as the literal sum over all
    ordered basis-index tuples, 2^n n! sum_{j_1..j_n} s_{j_1}..s_{j_n}
    conj(eta(zeta_j)) psi(zeta_j). Exponential cost; small dims only."""
    if eta.space != psi.space:
        raise ValueError("states live on different spaces")
    space = eta.space
    d = space.dim
    basis = np.eye(d, dtype=complex)
    total = 0j
    for n in set(eta.components) | set(psi.components):
        w = (2.0**n) * factorial(n)
        for js in itertools.product(range(d), repeat=n):
            sgn = 1.0
            for j in js:
                sgn *= space.signature[j]
            args = [basis[j] for j in js]
            total += w * sgn * np.conj(evaluate(eta, args)) * evaluate(psi, args)
    return total


def hilbert_norm_sq(psi: FockState) -> float:
    """Squared norm in the Hilbertization attached to the decomposition."""
    total = 0.0
    for n, c in psi.components.items():
        w = (2.0**n) * factorial(n) ** 2
        total += w * float(np.sum(np.abs(c) ** 2))
    return total


def create(tau, psi: FockState) -> FockState:
    """Creation operator a^dag_tau; conjugate-linear in tau.

    (a^dag_tau psi)(eta_1..eta_{n+1}) = 1/(sqrt(2)(n+1)) *
    sum_k (-1)^{k-1} {tau, eta_k} psi(eta_1..without k..eta_{n+1}).
    """
    space = psi.space
    d = space.dim
    tau = np.asarray(tau, dtype=complex)
    sig = space.signature
    out: dict[int, np.ndarray] = {}
    for n, c in psi.components.items():
        m = n + 1
        if m > d:
            continue
        pos = tuple_position(d, n)
        new = np.zeros(comb(d, m), dtype=complex)
        pref = 1.0 / (sqrt(2.0) * m)
        for idx, J in enumerate(index_tuples(d, m)):
            acc = 0j
            for k, j in enumerate(J):
                t = tau[j]
                if t == 0:
                    continue
                acc += (-1.0) ** k * sig[j] * np.conj(t) * c[pos[J[:k] + J[k + 1 :]]]
            new[idx] = pref * acc
        if m in out:
            out[m] = out[m] + new
        else:
            out[m] = new
    return FockState(space, out)


def annihilate(tau, psi: FockState) -> FockState:
    """Annihilation operator a_tau; linear in tau.

    (a_tau psi)(eta_1..eta_{n-1}) = sqrt(2) n psi(tau, eta_1..eta_{n-1});
    annihilating degree 0 yields the zero state.
    """
    space = psi.space
    d = space.dim
    tau = np.asarray(tau, dtype=complex)
    out: dict[int, np.ndarray] = {}
    for n, c in psi.components.items():
        if n == 0:
            continue
        pos = tuple_position(d, n - 1)
        new = np.zeros(comb(d, n - 1), dtype=complex)
        pref = sqrt(2.0) * n
        for idx, I in enumerate(index_tuples(d, n)):
            ci = c[idx]
            if ci == 0:
                continue
            for p, j in enumerate(I):
                t = tau[j]
                if t == 0:
                    continue
                new[pos[I[:p] + I[p + 1 :]]] += pref * (-1.0) ** p * t * ci
        if n - 1 in out:
            out[n - 1] = out[n - 1] + new
        else:
            out[n - 1] = new
    return FockState(space, out)


def pm_decompose(psi: FockState) -> tuple[FockState, FockState]:
    """Split into the positive/negative Krein parts F+ and F-.

    A coefficient belongs to F+ when its index tuple holds an even number
    of negative-signature basis vectors, to F- when odd. The parts are
    orthogonal and sign-definite under the graded inner product.
    """
    sig = psi.space.signature
    plus: dict[int, np.ndarray] = {}
    minus: dict[int, np.ndarray] = {}
    for n, c in psi.components.items():
        parity = _negative_parity(sig, n)
        plus[n] = np.where(parity == 0, c, 0.0)
        minus[n] = np.where(parity == 1, c, 0.0)
    return FockState(psi.space, plus), FockState(psi.space, minus)


# -- Operator matrices on the full 2^d Fock space (normalized basis) --------


@lru_cache(maxsize=None)
def annihilation_matrices(dim: int) -> tuple[np.ndarray, ...]:
    """Matrices of a_{zeta_j} in the normalized Fock basis.

    Signature-independent: entry [I - j, I] = (-1)^(position of j in I).
    """
    N = fock_dimension(dim)
    offs = _degree_offsets(dim)
    mats = [np.zeros((N, N), dtype=complex) for _ in range(dim)]
    for n in range(1, dim + 1):
        pos_lo = tuple_position(dim, n - 1)
        for idx, I in enumerate(index_tuples(dim, n)):
            col = offs[n] + idx
            for p, j in enumerate(I):
                row = offs[n - 1] + pos_lo[I[:p] + I[p + 1 :]]
                mats[j][row, col] = (-1.0) ** p
    for m in mats:
        m.setflags(write=False)
    return tuple(mats)


def creation_matrices(space: KreinSpace) -> tuple[np.ndarray, ...]:
    """Matrices of a^dag_{zeta_j}; equal to s_j times the transposed
    annihilation matrix, which is also the Fock-Krein adjoint of a_{zeta_j}."""
    return tuple(
        space.signature[j] * annihilation_matrices(space.dim)[j].T
        for j in range(space.dim)
    )


def annihilation_operator_matrix(space: KreinSpace, tau) -> np.ndarray:
    tau = np.asarray(tau, dtype=complex)
    mats = annihilation_matrices(space.dim)
    out = np.zeros((fock_dimension(space.dim),) * 2, dtype=complex)
    for j in range(space.dim):
        if tau[j] != 0:
            out += tau[j] * mats[j]
    return out


def creation_operator_matrix(space: KreinSpace, tau) -> np.ndarray:
    tau = np.asarray(tau, dtype=complex)
    mats = annihilation_matrices(space.dim)
    out = np.zeros((fock_dimension(space.dim),) * 2, dtype=complex)
    for j in range(space.dim):
        if tau[j] != 0:
            out += np.conj(tau[j]) * space.signature[j] * mats[j].T
    return out


@lru_cache(maxsize=None)
def _fock_signature_cached(signature: tuple[int, ...]) -> np.ndarray:
    dim = len(signature)
    parts = [
        _sign_products(signature, n) for n in range(dim + 1)
    ]
    out = np.concatenate(parts)
    out.setflags(write=False)
    return out


def fock_signature(space: KreinSpace) -> np.ndarray:
    """Diagonal of the Gram matrix of the normalized Fock basis."""
    return _fock_signature_cached(space.signature)


def fock_adjoint_matrix(space: KreinSpace, m: np.ndarray) -> np.ndarray:
    """Krein adjoint on Fock space: S_F M^H S_F."""
    sf = fock_signature(space)
    return sf[:, None] * np.conj(m).T * sf[None, :]


def state_to_vector(psi: FockState) -> np.ndarray:
    """Coordinates in the normalized Fock basis (length 2^d)."""
    d = psi.space.dim
    offs = _degree_offsets(d)
    v = np.zeros(fock_dimension(d), dtype=complex)
    for n, c in psi.components.items():
        v[offs[n] : offs[n + 1]] = c * (sqrt(2.0**n) * factorial(n))
    return v


def vector_to_state(space: KreinSpace, v: np.ndarray) -> FockState:
    d = space.dim
    offs = _degree_offsets(d)
    comps = {}
    for n in range(d + 1):
        block = np.asarray(v, dtype=complex)[offs[n] : offs[n + 1]]
        if np.any(block != 0):
            comps[n] = block / (sqrt(2.0**n) * factorial(n))
    return FockState(space, comps)


def car_suite(space: KreinSpace, trials: int = 100, seed: int = 0) -> dict[str, float]:
    """Check the four CAR relations as operator identities on the full
    Fock space for random vector pairs; returns max deviations."""
    rng = np.random.default_rng(seed)
    d = space.dim
    N = fock_dimension(d)
    eye = np.eye(N)
    dev = {
        "additivity": 0.0,
        "scaling": 0.0,
        "anticommutator_aa": 0.0,
        "anticommutator_ada": 0.0,
    }
    for _ in range(trials):
        xi = _disc(rng, d)
        tau = _disc(rng, d)
        c = complex(*rng.normal(size=2))
        a_xi = annihilation_operator_matrix(space, xi)
        a_tau = annihilation_operator_matrix(space, tau)
        ad_xi = creation_operator_matrix(space, xi)
        a_sum = annihilation_operator_matrix(space, xi + tau)
        a_scaled = annihilation_operator_matrix(space, c * xi)
        dev["additivity"] = max(dev["additivity"], _mx(a_sum - a_xi - a_tau))
        dev["scaling"] = max(dev["scaling"], _mx(a_scaled - c * a_xi))
        dev["anticommutator_aa"] = max(
            dev["anticommutator_aa"], _mx(a_xi @ a_tau + a_tau @ a_xi)
        )
        dev["anticommutator_ada"] = max(
            dev["anticommutator_ada"],
            _mx(ad_xi @ a_tau + a_tau @ ad_xi - inner(space, xi, tau) * eye),
        )
    return dev


def _disc(rng, n):
    return np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))


def _mx(m) -> float:
    return float(np.max(np.abs(m)))
