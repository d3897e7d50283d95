"""Truncated Fock-space linear algebra for a single bosonic mode.

All operators are dense complex matrices over the number basis |0..N>.
Hybrid (qubit x oscillator) objects use the qubit as the slow (outer)
tensor factor, so index = q*(N+1) + n.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh, expm as _scipy_expm

NORM_TOL = 1e-12
LEAKAGE_TOL = 1e-10

PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class DimensionMismatchError(ValueError):
    """Operator and state were built under different Hilbert spaces."""


class TruncationError(RuntimeError):
    """State has non-negligible weight at the top of the Fock ladder."""


@dataclass(frozen=True)
class HilbertSpec:
    """Truncated oscillator space with Fock levels 0..cutoff inclusive."""

    cutoff: int

    def __post_init__(self):
        if self.cutoff < 1:
            raise ValueError(f"cutoff must be >= 1, got {self.cutoff}")

    @property
    def dim(self) -> int:
        return self.cutoff + 1

    @property
    def hybrid_dim(self) -> int:
        return 2 * self.dim


@dataclass(frozen=True)
class LinearOp:
    """Dense operator on the oscillator or hybrid space."""

    matrix: np.ndarray
    hermitian: bool = False
    unitary: bool = False

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def dag(self) -> "LinearOp":
        return LinearOp(self.matrix.conj().T, hermitian=self.hermitian,
                        unitary=self.unitary)

    def __matmul__(self, other):
        if isinstance(other, LinearOp):
            if other.dim != self.dim:
                raise DimensionMismatchError(
                    f"operator dims {self.dim} vs {other.dim}")
            return LinearOp(self.matrix @ other.matrix)
        return self.matrix @ np.asarray(other)


def destroy(spec: HilbertSpec) -> np.ndarray:
    """Annihilation operator a in the truncated number basis."""
    return np.diag(np.sqrt(np.arange(1, spec.dim, dtype=float)), 1).astype(complex)


def make_quadratures(spec: HilbertSpec) -> tuple[LinearOp, LinearOp]:
    """Quadratures X = (a + a†)/√2 and P = (a - a†)/(i√2), with [X, P] = i."""
    a = destroy(spec)
    ad = a.conj().T
    x = (a + ad) / np.sqrt(2)
    p = (a - ad) / (1j * np.sqrt(2))
    return LinearOp(x, hermitian=True), LinearOp(p, hermitian=True)


def vacuum(spec: HilbertSpec) -> np.ndarray:
    ket = np.zeros(spec.dim, dtype=complex)
    ket[0] = 1.0
    return ket


def fock_ket(spec: HilbertSpec, n: int) -> np.ndarray:
    ket = np.zeros(spec.dim, dtype=complex)
    ket[n] = 1.0
    return ket


def expm_i_hermitian(h: np.ndarray) -> np.ndarray:
    """exp(i H) for Hermitian H, via eigendecomposition (exactly unitary)."""
    w, v = eigh(h)
    return (v * np.exp(1j * w)) @ v.conj().T


def expm(generator: LinearOp | np.ndarray) -> LinearOp:
    """Matrix exponential of a generator.

    Anti-Hermitian generators (G = iH) are routed through the
    eigendecomposition path and flagged unitary; everything else falls
    back to scipy's scaling-and-squaring.
    """
    g = generator.matrix if isinstance(generator, LinearOp) else np.asarray(generator, complex)
    h = -1j * g
    if np.max(np.abs(h - h.conj().T)) < 1e-12 * max(1.0, np.max(np.abs(h))):
        return LinearOp(expm_i_hermitian(h), unitary=True)
    return LinearOp(_scipy_expm(g))


def displacement(spec: HilbertSpec, alpha: complex) -> LinearOp:
    """Displacement D(α) = exp[√2 i(-Re[α] P + Im[α] X)].

    Shifts <X> by √2 Re[α] and <P> by √2 Im[α].
    """
    if not np.isfinite(alpha):
        raise ValueError("alpha must be finite")
    x, p = make_quadratures(spec)
    h = np.sqrt(2) * (np.imag(alpha) * x.matrix - np.real(alpha) * p.matrix)
    return LinearOp(expm_i_hermitian(h), unitary=True)


def squeeze(spec: HilbertSpec, delta: float) -> LinearOp:
    """Squeezing operator mapping vacuum to X-width delta: Var_X = delta²/2.

    Generator sign is fixed by that variance contract (tested), since
    (XP + PX) sign conventions differ between sources.
    """
    if not 0 < delta <= 1:
        raise ValueError(f"delta must be in (0, 1], got {delta}")
    x, p = make_quadratures(spec)
    h = -0.5 * np.log(delta) * (x.matrix @ p.matrix + p.matrix @ x.matrix)
    return LinearOp(expm_i_hermitian(h), unitary=True)


def rabi_gate(spec: HilbertSpec, k: str, alpha: complex) -> LinearOp:
    """Qubit-conditioned displacement U_k(α) = exp[i(-Re[α] P + Im[α] X) σ_k].

    Acts on the hybrid space, qubit slow.
    """
    if k not in PAULI:
        raise ValueError(f"k must be one of x, y, z, got {k!r}")
    if not np.isfinite(alpha):
        raise ValueError("alpha must be finite")
    x, p = make_quadratures(spec)
    g_osc = np.imag(alpha) * x.matrix - np.real(alpha) * p.matrix
    h = np.kron(PAULI[k], g_osc)
    return LinearOp(expm_i_hermitian(h), unitary=True)


def apply(op: LinearOp, state: np.ndarray) -> np.ndarray:
    """op|ψ> for a ket, or op ρ op† for a density matrix."""
    state = np.asarray(state, dtype=complex)
    if state.shape[0] != op.dim:
        raise DimensionMismatchError(
            f"operator dim {op.dim} vs state dim {state.shape[0]}")
    if state.ndim == 1:
        return op.matrix @ state
    return op.matrix @ state @ op.matrix.conj().T


def expectation(op: LinearOp, state: np.ndarray) -> complex:
    """<ψ|op|ψ> or Tr(ρ op)."""
    state = np.asarray(state, dtype=complex)
    if state.shape[0] != op.dim:
        raise DimensionMismatchError(
            f"operator dim {op.dim} vs state dim {state.shape[0]}")
    if state.ndim == 1:
        return complex(np.vdot(state, op.matrix @ state))
    return complex(np.trace(op.matrix @ state))


def normalize(state: np.ndarray) -> np.ndarray:
    state = np.asarray(state, dtype=complex)
    if state.ndim == 1:
        n = np.linalg.norm(state)
        if n == 0:
            raise ValueError("cannot normalize zero state")
        return state / n
    tr = np.trace(state).real
    if tr <= 0:
        raise ValueError("cannot normalize non-positive-trace density matrix")
    return state / tr


def ket_to_density(ket: np.ndarray) -> np.ndarray:
    ket = np.asarray(ket, dtype=complex)
    return np.outer(ket, ket.conj())


def embed_qubit_zero(osc_state: np.ndarray) -> np.ndarray:
    """|0>_qubit ⊗ state, qubit slow. Works for kets and density matrices."""
    osc_state = np.asarray(osc_state, dtype=complex)
    d = osc_state.shape[0]
    if osc_state.ndim == 1:
        out = np.zeros(2 * d, dtype=complex)
        out[:d] = osc_state
    else:
        out = np.zeros((2 * d, 2 * d), dtype=complex)
        out[:d, :d] = osc_state
    return out


def partial_trace_qubit(hybrid_state: np.ndarray) -> np.ndarray:
    """Reduced 2x2 qubit density matrix of a hybrid ket or density matrix."""
    hybrid_state = np.asarray(hybrid_state, dtype=complex)
    d = hybrid_state.shape[0] // 2
    if hybrid_state.ndim == 1:
        a = hybrid_state.reshape(2, d)
        return a @ a.conj().T
    r = hybrid_state.reshape(2, d, 2, d)
    return np.einsum("injn->ij", r)


def partial_trace_oscillator(hybrid_state: np.ndarray) -> np.ndarray:
    """Reduced oscillator density matrix of a hybrid ket or density matrix."""
    hybrid_state = np.asarray(hybrid_state, dtype=complex)
    d = hybrid_state.shape[0] // 2
    if hybrid_state.ndim == 1:
        a = hybrid_state.reshape(2, d)
        return np.einsum("qm,qn->mn", a, a.conj())
    r = hybrid_state.reshape(2, d, 2, d)
    return np.einsum("qmqn->mn", r)


def leakage(state: np.ndarray) -> float:
    """Population in the top two Fock levels (oscillator states only)."""
    state = np.asarray(state)
    if state.ndim == 1:
        return float(np.abs(state[-1]) ** 2 + np.abs(state[-2]) ** 2)
    return float(np.real(state[-1, -1] + state[-2, -2]))


def check_leakage(state: np.ndarray, tol: float = LEAKAGE_TOL) -> None:
    lk = leakage(state)
    if lk >= tol:
        raise TruncationError(
            f"truncation leakage {lk:.3e} exceeds {tol:.0e}; increase the cutoff")


def unitarity_defect(op: LinearOp, spec: HilbertSpec) -> float:
    """Max-norm of U†U - I on the lower block (top Fock rows are corrupt)."""
    e = op.matrix.conj().T @ op.matrix - np.eye(op.dim)
    m = spec.cutoff - 5
    if op.dim == spec.hybrid_dim:
        e = e.reshape(2, spec.dim, 2, spec.dim)[:, :m, :, :m]
    else:
        e = e[:m, :m]
    return float(np.max(np.abs(e)))


def position_wavefunctions(spec: HilbertSpec, x: np.ndarray) -> np.ndarray:
    """Harmonic-oscillator eigenfunctions φ_n(x), shape (dim, len(x)).

    Stable upward recurrence on the normalized functions; the X
    convention here has vacuum variance 1/2.
    """
    x = np.asarray(x, dtype=float)
    phi = np.zeros((spec.dim, x.size))
    phi[0] = np.pi ** -0.25 * np.exp(-0.5 * x**2)
    if spec.dim > 1:
        phi[1] = np.sqrt(2.0) * x * phi[0]
    for n in range(2, spec.dim):
        phi[n] = np.sqrt(2.0 / n) * x * phi[n - 1] - np.sqrt((n - 1) / n) * phi[n - 2]
    return phi


def position_density(spec: HilbertSpec, state: np.ndarray, x: np.ndarray) -> np.ndarray:
    """|ψ(x)|² for a ket, or <x|ρ|x> for a density matrix."""
    phi = position_wavefunctions(spec, x)
    state = np.asarray(state, dtype=complex)
    if state.ndim == 1:
        psi = state @ phi.astype(complex)
        return np.abs(psi) ** 2
    return np.real(np.einsum("mx,mn,nx->x", phi, state, phi))
