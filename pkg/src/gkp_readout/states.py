"""Approximate GKP basis states, the Gaussian displacement channel, and
state quality metrics (effective squeezing, purity, Helstrom bound)."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.polynomial.hermite import hermgauss
from scipy.linalg import eigh

from .fock import (
    HilbertSpec,
    LinearOp,
    check_leakage,
    expectation,
    expm_i_hermitian,
    ket_to_density,
    leakage,
    make_quadratures,
    normalize,
    squeeze,
    vacuum,
)

# Half of the logical lattice spacing in the displacement-amplitude plane:
# peaks of |mu> sit at D(L*(2s+mu))|sq vac>, i.e. at X = sqrt(pi)*(2s+mu).
HALF_SPACING = np.sqrt(np.pi / 2)

PEAK_WEIGHT_FLOOR = 1e-12
DEFAULT_CUTOFF = 150
MAX_CUTOFF = 2400


class UnsupportedStateError(TypeError):
    """Operation defined only for pure kets was given a density matrix."""


def delta_db(delta: float) -> float:
    """Squeezing in dB: -10 log10(delta^2)."""
    return -10.0 * np.log10(delta**2)


def db_to_delta(db: float) -> float:
    return 10.0 ** (-db / 20.0)


@dataclass(frozen=True)
class GkpSpec:
    """Parameters of one approximate GKP basis state.

    mu: logical bit. delta: peak width. kappa: envelope width
    (defaults to 1/delta). sigma: Gaussian displacement channel
    strength, 0 for a pure state.
    """

    mu: int
    delta: float
    kappa: Optional[float] = None
    sigma: float = 0.0

    def __post_init__(self):
        if self.mu not in (0, 1):
            raise ValueError(f"mu must be 0 or 1, got {self.mu}")
        if not 0 < self.delta < 1:
            raise ValueError(f"delta must be in (0, 1), got {self.delta}")
        if self.kappa is None:
            object.__setattr__(self, "kappa", 1.0 / self.delta)
        if self.kappa < 1:
            raise ValueError(f"kappa must be >= 1, got {self.kappa}")
        if self.sigma < 0:
            raise ValueError(f"sigma must be >= 0, got {self.sigma}")

    @property
    def delta_db(self) -> float:
        return delta_db(self.delta)


@dataclass(frozen=True)
class GkpStatePair:
    """The two basis states of one (delta, kappa, sigma) point.

    Kets when sigma = 0, density matrices otherwise.
    """

    state0: np.ndarray
    state1: np.ndarray
    spec: HilbertSpec
    delta: float
    kappa: float
    sigma: float

    @property
    def is_pure(self) -> bool:
        return self.state0.ndim == 1


def peak_indices(mu: int, kappa: float) -> np.ndarray:
    """Integers s whose peak envelope weight clears the retention floor."""
    s_vals = [0]
    for direction in (1, -1):
        s = direction
        while True:
            c = HALF_SPACING * (2 * s + mu)
            if np.exp(-(c**2) / kappa**2) < PEAK_WEIGHT_FLOOR:
                break
            s_vals.append(s)
            s += direction
    return np.array(sorted(s_vals))


def make_pure_gkp(spec: HilbertSpec, g: GkpSpec, strict: bool = True) -> np.ndarray:
    """Normalized approximate GKP ket: Gaussian-enveloped comb of
    X-squeezed vacua displaced along the position axis.

    strict=False skips the truncation-leakage check (callers that flag
    non-convergence instead of aborting).
    """
    if g.sigma != 0:
        raise ValueError("make_pure_gkp requires sigma = 0")
    base = squeeze(spec, g.delta) @ vacuum(spec)
    _, p = make_quadratures(spec)
    # All peaks share the generator P; diagonalize once.
    w, v = eigh(p.matrix)
    base_p = v.conj().T @ base
    psi = np.zeros(spec.dim, dtype=complex)
    for s in peak_indices(g.mu, g.kappa):
        c = HALF_SPACING * (2 * s + g.mu)
        weight = np.exp(-(c**2) / g.kappa**2)
        # D(c) for real c is exp(-i sqrt(2) c P)
        psi += weight * (v @ (np.exp(-1j * np.sqrt(2) * c * w) * base_p))
    psi = normalize(psi)
    if strict:
        check_leakage(psi)
    return psi


def make_state_pair(spec: HilbertSpec, delta: float, kappa: Optional[float] = None,
                    sigma: float = 0.0, gh_nodes: int = 21,
                    strict: bool = True) -> GkpStatePair:
    """Build the (|0~>, |1~>) pair, mixed through the displacement
    channel when sigma > 0."""
    g0 = GkpSpec(0, delta, kappa, sigma)
    g1 = GkpSpec(1, delta, kappa, sigma)
    k0 = make_pure_gkp(spec, GkpSpec(0, delta, g0.kappa), strict=strict)
    k1 = make_pure_gkp(spec, GkpSpec(1, delta, g1.kappa), strict=strict)
    if sigma == 0:
        return GkpStatePair(k0, k1, spec, delta, g0.kappa, 0.0)
    r0 = gaussian_displacement_channel(spec, k0, sigma, gh_nodes=gh_nodes)
    r1 = gaussian_displacement_channel(spec, k1, sigma, gh_nodes=gh_nodes)
    return GkpStatePair(r0, r1, spec, delta, g0.kappa, sigma)


def auto_cutoff(delta: float, kappa: Optional[float] = None, sigma: float = 0.0,
                start: int = DEFAULT_CUTOFF, leakage_tol: float = 1e-10) -> HilbertSpec:
    """Smallest cutoff in the doubling sequence whose GKP pair passes the
    leakage check (the channel does not repopulate high Fock levels
    appreciably for the sigmas in scope, so purity suffices on kets)."""
    n = start
    while n <= MAX_CUTOFF:
        spec = HilbertSpec(n)
        try:
            k0 = make_pure_gkp(spec, GkpSpec(0, delta, kappa))
            k1 = make_pure_gkp(spec, GkpSpec(1, delta, kappa))
        except Exception:
            n *= 2
            continue
        if leakage(k0) < leakage_tol and leakage(k1) < leakage_tol:
            return spec
        n *= 2
    raise RuntimeError(f"no converged cutoff <= {MAX_CUTOFF} for delta={delta}")


def _shift_channel_1d(spec: HilbertSpec, rho: np.ndarray, sigma: float,
                      quadrature: np.ndarray, nodes: int) -> np.ndarray:
    """Random-displacement channel along one quadrature direction.

    Averages D ρ D† over a zero-mean Gaussian of std sigma/sqrt(2) in the
    displacement amplitude, with Gauss-Hermite nodes matched to the weight.
    """
    w, v = eigh(quadrature)
    t, gw = hermgauss(nodes)
    gw = gw / np.sqrt(np.pi)
    rho_e = v.conj().T @ rho @ v
    out = np.zeros_like(rho_e)
    for ti, wi in zip(t, gw):
        phase = np.exp(1j * np.sqrt(2) * sigma * ti * w)
        out += wi * (phase[:, None] * rho_e * phase.conj()[None, :])
    return v @ out @ v.conj().T


def gaussian_displacement_channel(spec: HilbertSpec, state: np.ndarray, sigma: float,
                                  gh_nodes: int = 21, purity_tol: float = 1e-6) -> np.ndarray:
    """Gaussian displacement channel of strength sigma.

    ρ -> (1/πσ²) ∫ d²α e^{-|α|²/σ²} D(α) ρ D†(α).

    The isotropic Gaussian factorizes over (Re α, Im α), so the channel is
    applied as two independent 1-D shift channels. The Gauss-Hermite grid
    is doubled until Tr(ρ²) is stable to purity_tol.
    """
    state = np.asarray(state, dtype=complex)
    if sigma == 0:
        return state
    rho = ket_to_density(state) if state.ndim == 1 else state
    x, p = make_quadratures(spec)

    def run(n):
        # Re-alpha shifts X (via the P generator), Im-alpha shifts P.
        out = _shift_channel_1d(spec, rho, sigma, p.matrix, n)
        return _shift_channel_1d(spec, out, sigma, x.matrix, n)

    result = run(gh_nodes)
    while True:
        finer = run(2 * gh_nodes)
        if abs(purity(finer) - purity(result)) < purity_tol:
            return finer
        result = finer
        gh_nodes *= 2
        if gh_nodes > 400:
            raise RuntimeError("displacement-channel quadrature did not converge")


def stabilizer_displacement(spec: HilbertSpec) -> LinearOp:
    """D(i sqrt(2π)) = exp(i 2 sqrt(π) X); its magnitude of expectation
    defines effective squeezing."""
    x, _ = make_quadratures(spec)
    return LinearOp(expm_i_hermitian(2 * np.sqrt(np.pi) * x.matrix), unitary=True)


def logical_z_displacement(spec: HilbertSpec) -> LinearOp:
    """D(i sqrt(π/2)) = exp(i sqrt(π) X); approximate logical Z."""
    x, _ = make_quadratures(spec)
    return LinearOp(expm_i_hermitian(np.sqrt(np.pi) * x.matrix), unitary=True)


def effective_squeezing(spec: HilbertSpec, state: np.ndarray) -> float:
    """Effective peak width sqrt(ln(1/|<D(i√(2π))>|²) / (2π)).

    Equals delta for the pure states; +inf when the expectation vanishes.
    """
    e = abs(expectation(stabilizer_displacement(spec), state))
    if e <= 1e-300:
        return np.inf
    if e > 1.0:
        e = 1.0
    return float(np.sqrt(np.log(1.0 / e**2) / (2 * np.pi)))


def effective_squeezing_db(spec: HilbertSpec, state: np.ndarray) -> float:
    d = effective_squeezing(spec, state)
    return -np.inf if d == np.inf else delta_db(d)


def purity(state: np.ndarray) -> float:
    """Tr(ρ²); 1 for kets."""
    state = np.asarray(state, dtype=complex)
    if state.ndim == 1:
        return float(np.vdot(state, state).real ** 2)
    return float(np.trace(state @ state).real)


def helstrom_bound(state0: np.ndarray, state1: np.ndarray) -> float:
    """Minimum discrimination error ½(1 - sqrt(1 - |<0~|1~>|²)) for pure kets."""
    state0 = np.asarray(state0)
    state1 = np.asarray(state1)
    if state0.ndim != 1 or state1.ndim != 1:
        raise UnsupportedStateError("Helstrom bound implemented for pure kets only")
    ov = abs(np.vdot(state0, state1)) ** 2
    ov = min(ov, 1.0)
    return 0.5 * (1.0 - np.sqrt(1.0 - ov))


def export_state_json(state: np.ndarray, path: str) -> None:
    """Dump Fock amplitudes (ket) or row-major density entries to JSON."""
    state = np.asarray(state, dtype=complex)
    if state.ndim == 1:
        payload = {
            "kind": "ket",
            "dim": int(state.shape[0]),
            "amplitudes_re": state.real.tolist(),
            "amplitudes_im": state.imag.tolist(),
        }
    else:
        payload = {
            "kind": "density",
            "dim": int(state.shape[0]),
            "entries_re": state.real.tolist(),
            "entries_im": state.imag.tolist(),
        }
    with open(path, "w") as f:
        json.dump(payload, f)


def export_state_csv(state: np.ndarray, path: str) -> None:
    """CSV dump: one row per entry, row-major for density matrices."""
    state = np.asarray(state, dtype=complex)
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        if state.ndim == 1:
            writer.writerow(["n", "re", "im"])
            for n, a in enumerate(state):
                writer.writerow([n, repr(a.real), repr(a.imag)])
        else:
            writer.writerow(["row", "col", "re", "im"])
            for i in range(state.shape[0]):
                for j in range(state.shape[1]):
                    writer.writerow([i, j, repr(state[i, j].real), repr(state[i, j].imag)])
