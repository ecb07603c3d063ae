"""Entropic information quantities and single-channel capacity values.

Coherent information, private information, Holevo information, and channel
mutual information are evaluated from the canonical complement.  The
one-shot quantum capacities of the three built-in families come from their
known one-parameter reductions:

* platypus: inputs (1-u)|0><0| + u|d><d| scanned over u,
* erasure: the closed form max{(1-2*lam)log2(d), 0},
* amplitude damping: diagonal inputs diag(u, (1-u)/(d-1), ...) scanned
  over u, with zero returned in the anti-degradable half gamma >= 1/2.

Scans use a 1001-point grid followed by golden-section refinement; the
objectives are smooth single-variable functions, so nothing heavier is
needed.  Argmax ties break toward the smaller u for deterministic output.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import (
    DensityMatrix,
    ProbabilityVector,
    QuantumChannel,
    apply_matrix,
    as_probability_vector,
    complement,
    platypus,
)
from .numerics import hermitian_spectrum, shannon_entropy, von_neumann_entropy

GRID_POINTS = 1001
DEFAULT_TOL = 1e-9
_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0

_METHODS = ("closed_form", "scan_1d", "certificate")


@dataclass(frozen=True)
class CapacityResult:
    """A capacity value in bits, with the maximizing parameter if scanned."""

    value: float
    argmax: float | None = None
    method: str = "scan_1d"

    def __post_init__(self):
        if not np.isfinite(self.value):
            raise ValueError(f"capacity value {self.value!r} is not finite")
        if self.method not in _METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.argmax is not None and not 0.0 <= self.argmax <= 1.0:
            raise ValueError(f"argmax {self.argmax!r} outside [0, 1]")


@dataclass(frozen=True, init=False)
class Ensemble:
    """Finite ensemble of density matrices with probabilities summing to 1."""

    members: tuple  # of (probability, DensityMatrix)

    def __init__(self, members):
        items = []
        for p, rho in members:
            p = float(p)
            if p < 0.0:
                raise ValueError(f"negative ensemble probability {p!r}")
            if not isinstance(rho, DensityMatrix):
                rho = DensityMatrix(rho)
            items.append((p, rho))
        if not items:
            raise ValueError("ensemble must have at least one member")
        total = sum(p for p, _ in items)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"ensemble probabilities sum to {total!r}, not 1")
        dims = {rho.dim for _, rho in items}
        if len(dims) != 1:
            raise ValueError(f"ensemble states have mixed dimensions {sorted(dims)}")
        object.__setattr__(self, "members", tuple(items))

    @property
    def dim(self) -> int:
        return self.members[0][1].dim

    def average(self) -> DensityMatrix:
        avg = sum(p * rho.matrix for p, rho in self.members)
        return DensityMatrix(avg)


def _output_entropy(channel: QuantumChannel, matrix: np.ndarray) -> float:
    return von_neumann_entropy(hermitian_spectrum(apply_matrix(channel, matrix)))


def coherent_information(channel: QuantumChannel, rho: DensityMatrix) -> float:
    """S(N(rho)) - S(N^c(rho)) in bits."""
    if rho.dim != channel.dA:
        raise ValueError(f"state dimension {rho.dim} does not match channel input {channel.dA}")
    return _output_entropy(channel, rho.matrix) - _output_entropy(complement(channel), rho.matrix)


def private_information(channel: QuantumChannel, ensemble: Ensemble) -> float:
    """I_c of the ensemble average minus the average member I_c."""
    avg = ensemble.average()
    value = coherent_information(channel, avg)
    for p, rho in ensemble.members:
        value -= p * coherent_information(channel, rho)
    return value


def holevo(channel: QuantumChannel, ensemble: Ensemble) -> float:
    """Output Holevo information of the ensemble through the channel."""
    avg = ensemble.average()
    value = _output_entropy(channel, avg.matrix)
    for p, rho in ensemble.members:
        value -= p * _output_entropy(channel, rho.matrix)
    return value


def mutual_information(channel: QuantumChannel, rho: DensityMatrix) -> float:
    """S(rho) + I_c(rho, N), the entanglement-assisted rate of rho."""
    return float(von_neumann_entropy(hermitian_spectrum(rho.matrix))) + coherent_information(
        channel, rho
    )


def maximize_on_unit_interval(objective, grid_points: int = GRID_POINTS, tol: float = DEFAULT_TOL):
    """Maximize a vectorized objective on [0, 1].

    Coarse grid first, then golden-section refinement of the bracketing
    interval down to width ``tol``.  Returns (u_star, value); ties prefer
    the smaller u.
    """
    us = np.linspace(0.0, 1.0, grid_points)
    vals = np.asarray(objective(us), dtype=float)
    i = int(np.argmax(vals))
    u_grid, v_grid = float(us[i]), float(vals[i])

    a = float(us[max(i - 1, 0)])
    b = float(us[min(i + 1, grid_points - 1)])
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc = float(objective(np.array([c]))[0])
    fd = float(objective(np.array([d]))[0])
    while (b - a) > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = float(objective(np.array([c]))[0])
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = float(objective(np.array([d]))[0])
    u_ref = 0.5 * (a + b)
    v_ref = float(objective(np.array([u_ref]))[0])
    if v_ref > v_grid or (v_ref == v_grid and u_ref < u_grid):
        return u_ref, v_ref
    return u_grid, v_grid


def platypus_line_coherent_information(mu, us):
    """I_c((1-u)|0><0| + u|d><d|) for the platypus channel, vectorized in u.

    Both output and complement are diagonal on this input line: the output
    spectrum is {(1-u) mu_j} plus {u}; the complement spectrum is
    {(1-u) mu_e} for e < d-1 plus {(1-u) mu_max + u}.
    """
    pv = as_probability_vector(mu)
    u = np.atleast_1d(np.asarray(us, dtype=float))
    m = pv.as_array()
    out = np.concatenate([np.outer(1.0 - u, m), u[:, None]], axis=1)
    comp = np.outer(1.0 - u, m)
    comp[:, -1] += u
    return shannon_entropy(out, axis=1) - shannon_entropy(comp, axis=1)


def q1_platypus(mu, tol: float = DEFAULT_TOL) -> CapacityResult:
    """One-shot quantum capacity of the platypus channel.

    The maximum of coherent information over the known optimal input line
    (1-u)|0><0| + u|d><d|, u in [0, 1].
    """
    pv = as_probability_vector(mu)
    u_star, value = maximize_on_unit_interval(
        lambda us: platypus_line_coherent_information(pv, us), tol=tol
    )
    return CapacityResult(value=value, argmax=u_star, method="scan_1d")


def q_erasure(lam: float, d: int) -> CapacityResult:
    """Quantum capacity of the d-level erasure channel: max{(1-2 lam) log2 d, 0}."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"erasure probability must lie in [0, 1], got {lam!r}")
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")
    return CapacityResult(
        value=max((1.0 - 2.0 * lam) * np.log2(d), 0.0), argmax=None, method="closed_form"
    )


def mad_diagonal_coherent_information(gamma: float, probs) -> np.ndarray:
    """I_c of diagonal inputs through the d-level amplitude damping channel.

    ``probs`` is an (m, d) array of diagonal input distributions.  The
    output is diag(p_0 + gamma(1-p_0), (1-gamma) p_1, ...), and the
    complement output has the same form with gamma and 1-gamma exchanged.
    """
    p = np.atleast_2d(np.asarray(probs, dtype=float))
    rest = 1.0 - p[:, :1]
    out = np.concatenate([p[:, :1] + gamma * rest, (1.0 - gamma) * p[:, 1:]], axis=1)
    comp = np.concatenate([p[:, :1] + (1.0 - gamma) * rest, gamma * p[:, 1:]], axis=1)
    return shannon_entropy(out, axis=1) - shannon_entropy(comp, axis=1)


def _mad_line(gamma: float, d: int, us):
    u = np.atleast_1d(np.asarray(us, dtype=float))
    p = np.empty((u.size, d))
    p[:, 0] = u
    p[:, 1:] = ((1.0 - u) / (d - 1))[:, None]
    return mad_diagonal_coherent_information(gamma, p)


def q_mad(gamma: float, d: int, tol: float = DEFAULT_TOL, full_simplex: bool = False) -> CapacityResult:
    """One-shot quantum capacity of d-level amplitude damping.

    For gamma >= 1/2 the channel is anti-degradable and the capacity is 0.
    Otherwise the coherent information is maximized over the diagonal line
    diag(u, (1-u)/(d-1), ...).  ``full_simplex=True`` scans the whole
    diagonal simplex instead (cross-check only, d <= 4).
    """
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"damping probability must lie in [0, 1], got {gamma!r}")
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")
    if gamma >= 0.5 or d == 1:
        return CapacityResult(value=0.0, argmax=None, method="closed_form")
    if full_simplex:
        if d > 4:
            raise ValueError("full-simplex scan is a cross-check limited to d <= 4")
        value = _q_mad_full_simplex(gamma, d)
        return CapacityResult(value=max(value, 0.0), argmax=None, method="scan_1d")
    u_star, value = maximize_on_unit_interval(lambda us: _mad_line(gamma, d, us), tol=tol)
    return CapacityResult(value=max(value, 0.0), argmax=u_star, method="scan_1d")


def _q_mad_full_simplex(gamma: float, d: int, rounds: int = 5) -> float:
    """Best diagonal-input coherent information by iterated grid zoom."""
    lo = np.zeros(d - 1)
    hi = np.ones(d - 1)
    steps = 21 if d <= 3 else 13
    best_p = None
    best_v = -np.inf
    for _ in range(rounds):
        axes = [np.linspace(lo[k], hi[k], steps) for k in range(d - 1)]
        mesh = np.meshgrid(*axes, indexing="ij")
        tail = np.stack([m.ravel() for m in mesh], axis=1)
        head = 1.0 - tail.sum(axis=1)
        feasible = head >= -1e-12
        if not feasible.any():
            break
        p = np.concatenate([np.clip(head[feasible], 0.0, 1.0)[:, None], tail[feasible]], axis=1)
        vals = mad_diagonal_coherent_information(gamma, p)
        j = int(np.argmax(vals))
        if vals[j] > best_v:
            best_v = float(vals[j])
            best_p = p[j]
        width = (hi - lo) / (steps - 1)
        lo = np.clip(best_p[1:] - width, 0.0, 1.0)
        hi = np.clip(best_p[1:] + width, 0.0, 1.0)
    return best_v


def platypus_private_ensemble(mu) -> Ensemble:
    """The two-state ensemble {1/2: |0><0|, 1/2: sum_i mu_i |i+1><i+1|}.

    Through the platypus channel this ensemble has private information
    exactly 1 bit, and its average state achieves channel mutual
    information exactly 2 bits.
    """
    pv = as_probability_vector(mu)
    d = pv.d
    ground = np.zeros(d + 1)
    ground[0] = 1.0
    excited = np.zeros(d + 1)
    excited[1:] = pv.as_array()
    return Ensemble([(0.5, DensityMatrix.diagonal(ground)), (0.5, DensityMatrix.diagonal(excited))])


def ce_platypus(mu) -> CapacityResult:
    """Entanglement-assisted capacity of the platypus channel.

    Evaluated as the channel mutual information of the average state of
    ``platypus_private_ensemble`` (which comes out to 2 bits for every mu);
    reported as a certified lower bound attained at that state.
    """
    pv = as_probability_vector(mu)
    state = platypus_private_ensemble(pv).average()
    value = mutual_information(platypus(pv), state)
    return CapacityResult(value=value, argmax=None, method="certificate")


def ce_stationarity_residual(mu, eps: float = 1e-4, directions: int = 20, seed: int = 0) -> float:
    """Largest |directional derivative| of mutual information at the C_E state.

    Probes random trace-free Hermitian directions around the candidate
    optimizer with central differences.  The objective is concave in the
    state, so a near-zero residual at this full-rank interior point is
    evidence of global optimality.
    """
    pv = as_probability_vector(mu)
    channel = platypus(pv)
    state = platypus_private_ensemble(pv).average()
    rng = np.random.default_rng(seed)
    n = state.dim
    min_eig = float(np.linalg.eigvalsh(state.matrix)[0])
    if min_eig <= 0.0:
        raise ValueError("stationarity probe needs a full-rank candidate state")
    step = min(eps, 0.25 * min_eig / n)
    worst = 0.0
    for _ in range(directions):
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        h = (g + g.conj().T) / 2.0
        h -= np.trace(h).real / n * np.eye(n)
        h /= max(np.max(np.abs(h)), 1e-300)
        up = DensityMatrix(state.matrix + step * h)
        dn = DensityMatrix(state.matrix - step * h)
        deriv = (mutual_information(channel, up) - mutual_information(channel, dn)) / (2.0 * step)
        worst = max(worst, abs(deriv))
    return worst
