"""Channel families and generic completely-positive trace-preserving machinery.

Three families are built in:

* ``platypus(mu)``: the generalized platypus channel on d+1 levels.  Its
  isometry sends |0> to sum_j sqrt(mu_j) |j>|j> and |i> to |d>|i-1> for
  i = 1..d, so the output leaks which excited level was sent while the
  ground state fans out over the first d output levels.
* ``erasure(lam, d)``: the qudit erasure channel, which keeps the input
  with probability 1 - lam and otherwise emits an orthogonal flag state.
* ``mad(gamma, d)``: multilevel amplitude damping, where every excited
  level decays straight to the ground level with probability gamma.

Complements are canonical: given Kraus operators {K_e}, the environment
output has matrix elements Tr(K_i rho K_j^dag) in the computational
environment ordering, which the serialization format records.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .numerics import NEGATIVITY_TOL, as_hermitian

TRACE_PRESERVATION_TOL = 1e-10
PROBABILITY_SUM_TOL = 1e-12
ENV_ORDER = "computational"


@dataclass(frozen=True, init=False)
class ProbabilityVector:
    """Probability vector stored in canonical ascending order."""

    entries: tuple

    def __init__(self, entries, renormalize: bool = False):
        arr = np.asarray(entries, dtype=float).ravel()
        if arr.size == 0:
            raise ValueError("probability vector must have at least one entry")
        if arr.min() < -PROBABILITY_SUM_TOL:
            raise ValueError(f"negative probability {arr.min():.3e}")
        arr = np.clip(arr, 0.0, None)
        total = float(arr.sum())
        if renormalize:
            if total <= 0.0:
                raise ValueError("cannot renormalize an all-zero vector")
            arr = arr / total
        elif abs(total - 1.0) > PROBABILITY_SUM_TOL:
            raise ValueError(f"probabilities sum to {total!r}, not 1")
        if arr.max() > 1.0 + PROBABILITY_SUM_TOL:
            raise ValueError(f"probability {arr.max():.3e} exceeds 1")
        arr = np.sort(arr)
        object.__setattr__(self, "entries", tuple(float(v) for v in arr))

    @classmethod
    def uniform(cls, d: int) -> "ProbabilityVector":
        if d < 1:
            raise ValueError(f"need d >= 1, got {d}")
        return cls(np.full(d, 1.0 / d), renormalize=True)

    @classmethod
    def uniform_remainder(cls, d: int, mu_max: float) -> "ProbabilityVector":
        """Largest entry ``mu_max``, remaining mass spread evenly.

        Feasible only for 1/d <= mu_max <= 1 (otherwise the filled entries
        would exceed the requested maximum).
        """
        if d < 1:
            raise ValueError(f"need d >= 1, got {d}")
        if not (1.0 / d - 1e-12 <= mu_max <= 1.0 + 1e-12):
            raise ValueError(f"mu_max={mu_max!r} infeasible for d={d}: need 1/d <= mu_max <= 1")
        if d == 1:
            return cls((1.0,))
        rest = (1.0 - mu_max) / (d - 1)
        values = np.full(d, rest)
        values[-1] = mu_max
        return cls(values, renormalize=True)

    @property
    def d(self) -> int:
        return len(self.entries)

    @property
    def mu_max(self) -> float:
        return self.entries[-1]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.entries, dtype=float)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype or float)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def as_probability_vector(mu) -> ProbabilityVector:
    if isinstance(mu, ProbabilityVector):
        return mu
    return ProbabilityVector(mu)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated density matrix: Hermitian, PSD, unit trace."""

    matrix: np.ndarray

    def __post_init__(self):
        m = as_hermitian(self.matrix)
        min_eig = float(np.linalg.eigvalsh(m)[0])
        if min_eig < -NEGATIVITY_TOL:
            raise ValueError(f"state not PSD: minimum eigenvalue {min_eig:.3e}")
        trace = float(np.trace(m).real)
        if abs(trace - 1.0) > 1e-12:
            raise ValueError(f"state trace {trace!r} differs from 1")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def diagonal(cls, values) -> "DensityMatrix":
        return cls(np.diag(np.asarray(values, dtype=float).astype(np.complex128)))

    @classmethod
    def pure(cls, statevector) -> "DensityMatrix":
        v = np.asarray(statevector, dtype=np.complex128).ravel()
        norm = np.linalg.norm(v)
        if norm == 0.0:
            raise ValueError("zero statevector")
        v = v / norm
        return cls(np.outer(v, v.conj()))

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityMatrix":
        return cls(np.eye(dim, dtype=np.complex128) / dim)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True, eq=False)
class QuantumChannel:
    """Channel held as a tuple of Kraus operators, each of shape (dB, dA)."""

    kraus: tuple
    family: str = "custom"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        ops = tuple(np.asarray(k, dtype=np.complex128) for k in self.kraus)
        if not ops:
            raise ValueError("channel needs at least one Kraus operator")
        shape = ops[0].shape
        if len(shape) != 2 or any(k.shape != shape for k in ops):
            raise ValueError("Kraus operators must share one 2-d shape")
        total = sum(k.conj().T @ k for k in ops)
        if np.max(np.abs(total - np.eye(shape[1]))) > TRACE_PRESERVATION_TOL:
            raise ValueError("Kraus operators do not satisfy sum K^dag K = I")
        object.__setattr__(self, "kraus", ops)

    @property
    def dA(self) -> int:
        return self.kraus[0].shape[1]

    @property
    def dB(self) -> int:
        return self.kraus[0].shape[0]

    @property
    def dE(self) -> int:
        return len(self.kraus)


def platypus(mu) -> QuantumChannel:
    """Generalized platypus channel for a probability vector mu of length d.

    Input and output have d+1 levels, the environment has d.  The Kraus
    operators are K_e = sqrt(mu_e) |e><0| + |d><e+1| for e = 0..d-1.
    """
    pv = as_probability_vector(mu)
    d = pv.d
    ops = []
    for e in range(d):
        k = np.zeros((d + 1, d + 1), dtype=np.complex128)
        k[e, 0] = np.sqrt(pv.entries[e])
        k[d, e + 1] = 1.0
        ops.append(k)
    return QuantumChannel(tuple(ops), family="platypus", params={"mu": list(pv.entries)})


def erasure(lam: float, d: int) -> QuantumChannel:
    """Qudit erasure channel: keep rho with probability 1 - lam, else flag.

    Input dimension d, output dimension d+1 with the flag on level d.
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"erasure probability must lie in [0, 1], got {lam!r}")
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")
    keep = np.zeros((d + 1, d), dtype=np.complex128)
    keep[:d, :] = np.sqrt(1.0 - lam) * np.eye(d)
    ops = [keep]
    for i in range(d):
        k = np.zeros((d + 1, d), dtype=np.complex128)
        k[d, i] = np.sqrt(lam)
        ops.append(k)
    return QuantumChannel(tuple(ops), family="erasure", params={"lam": float(lam), "d": int(d)})


def mad(gamma: float, d: int) -> QuantumChannel:
    """Multilevel amplitude damping on d levels.

    Every excited level decays to the ground level with probability gamma:
    K_0 = |0><0| + sqrt(1-gamma) sum_{j>=1} |j><j| and
    K_j = sqrt(gamma) |0><j| for j = 1..d-1.
    """
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"damping probability must lie in [0, 1], got {gamma!r}")
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")
    k0 = np.zeros((d, d), dtype=np.complex128)
    k0[0, 0] = 1.0
    for j in range(1, d):
        k0[j, j] = np.sqrt(1.0 - gamma)
    ops = [k0]
    for j in range(1, d):
        k = np.zeros((d, d), dtype=np.complex128)
        k[0, j] = np.sqrt(gamma)
        ops.append(k)
    return QuantumChannel(tuple(ops), family="mad", params={"gamma": float(gamma), "d": int(d)})


def complement(channel: QuantumChannel) -> QuantumChannel:
    """Canonical complementary channel.

    With Kraus operators {K_e} and the computational environment ordering,
    the complement maps rho to the matrix with entries Tr(K_i rho K_j^dag),
    which is realized by the Kraus family L_b[e, a] = K_e[b, a] indexed by
    the output level b of the original channel.
    """
    stack = np.stack(channel.kraus)  # (dE, dB, dA)
    ops = tuple(np.ascontiguousarray(stack[:, b, :]) for b in range(channel.dB))
    return QuantumChannel(
        ops,
        family=f"complement({channel.family})",
        params={"base_family": channel.family, "base_params": dict(channel.params)},
    )


def apply_matrix(channel: QuantumChannel, operator) -> np.ndarray:
    """Linear action of the channel on an arbitrary dA x dA operator."""
    m = np.asarray(operator, dtype=np.complex128)
    if m.shape != (channel.dA, channel.dA):
        raise ValueError(f"operator shape {m.shape} does not match input dimension {channel.dA}")
    out = np.zeros((channel.dB, channel.dB), dtype=np.complex128)
    for k in channel.kraus:
        out += k @ m @ k.conj().T
    return out


def apply(channel: QuantumChannel, rho: DensityMatrix) -> DensityMatrix:
    """Apply the channel to a density matrix, returning a validated state."""
    return DensityMatrix(apply_matrix(channel, rho.matrix))


def compose(second: QuantumChannel, first: QuantumChannel) -> QuantumChannel:
    """Channel ``second`` after channel ``first``."""
    if second.dA != first.dB:
        raise ValueError(
            f"cannot compose: inner dimensions differ ({second.dA} vs {first.dB})"
        )
    ops = tuple(k2 @ k1 for k2 in second.kraus for k1 in first.kraus)
    return QuantumChannel(ops, family=f"{second.family}*{first.family}")


def tensor_channels(left: QuantumChannel, right: QuantumChannel) -> QuantumChannel:
    """Parallel use of two channels, left factor on the slow index."""
    ops = tuple(np.kron(a, b) for a in left.kraus for b in right.kraus)
    return QuantumChannel(ops, family=f"{left.family}(x){right.family}")


def choi(channel: QuantumChannel) -> np.ndarray:
    """Choi operator (I (x) N)(|Phi><Phi|) with unnormalized |Phi> = sum |ii>.

    The result lives on input (x) output with the input on the slow index;
    its partial trace over the output is the identity on the input.
    """
    vecs = [k.T.reshape(-1) for k in channel.kraus]  # index a*dB + b
    n = channel.dA * channel.dB
    j = np.zeros((n, n), dtype=np.complex128)
    for v in vecs:
        j += np.outer(v, v.conj())
    return j


def partial_transpose_b(matrix, dims: tuple[int, int]) -> np.ndarray:
    """Transpose the second factor of a bipartite operator."""
    da, db = dims
    m = np.asarray(matrix)
    if m.shape != (da * db, da * db):
        raise ValueError(f"operator shape {m.shape} does not match dims {dims}")
    return m.reshape(da, db, da, db).transpose(0, 3, 2, 1).reshape(da * db, da * db)


def isometry(channel: QuantumChannel) -> np.ndarray:
    """Stinespring isometry V with V|a> = sum_e (K_e |a>) (x) |e>.

    Output index ordering is (b, e) with b on the slow index, so
    V has shape (dB * dE, dA) and V^dag V = I.
    """
    v = np.zeros((channel.dB * channel.dE, channel.dA), dtype=np.complex128)
    for e, k in enumerate(channel.kraus):
        for b in range(channel.dB):
            v[b * channel.dE + e, :] = k[b, :]
    return v


def channel_to_json(channel: QuantumChannel) -> str:
    """Serialize a channel to a JSON document.

    Kraus operators are stored as nested [re, im] pairs; the environment
    ordering is the computational one used by ``complement``.
    """
    doc = {
        "family": channel.family,
        "params": channel.params,
        "dA": channel.dA,
        "dB": channel.dB,
        "dE": channel.dE,
        "env_order": ENV_ORDER,
        "kraus": [
            [[[float(x.real), float(x.imag)] for x in row] for row in k]
            for k in channel.kraus
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True)


def channel_from_json(document: str) -> QuantumChannel:
    doc = json.loads(document)
    ops = []
    for k in doc["kraus"]:
        mat = np.array([[complex(re, im) for re, im in row] for row in k], dtype=np.complex128)
        ops.append(mat)
    channel = QuantumChannel(tuple(ops), family=doc.get("family", "custom"), params=doc.get("params", {}))
    if channel.dA != doc["dA"] or channel.dB != doc["dB"]:
        raise ValueError("serialized dimensions disagree with the Kraus shapes")
    return channel
