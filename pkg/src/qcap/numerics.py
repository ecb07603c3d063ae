"""Dense Hermitian linear algebra and entropy primitives.

Every routine here is a pure function of its ndarray inputs.  Eigenvalues
are returned ascending, entropies are in bits (base-2 logarithm), and tiny
negative or sub-clamp eigenvalues are treated as exact zeros so that the
rank-deficient states this package works with do not poison entropy sums.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Asymmetry beyond this (relative to the matrix scale) is rejected; anything
# smaller is symmetrized away before an eigensolve.
HERMITICITY_TOL = 1e-9
# Spectra may dip this far below zero before being treated as an error.
NEGATIVITY_TOL = 1e-10
# Eigenvalues below this are treated as exact zeros for entropy purposes.
ZERO_CLAMP = 1e-12


class NonHermitianError(ValueError):
    """Matrix is not Hermitian within tolerance."""


class NegativeSpectrumError(ValueError):
    """Spectrum has an eigenvalue below the negativity tolerance."""


@dataclass(frozen=True, init=False)
class Spectrum:
    """Multiset of real eigenvalues, stored sorted ascending."""

    values: tuple

    def __init__(self, values):
        arr = np.sort(np.asarray(values, dtype=float).ravel())
        object.__setattr__(self, "values", tuple(float(v) for v in arr))

    @property
    def total(self) -> float:
        """Sum of the eigenvalues (the trace of the originating matrix)."""
        return float(np.sum(self.values))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype or float)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


def as_hermitian(matrix, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Validate Hermiticity within ``tol`` and return the symmetrized matrix.

    The returned matrix is (H + H^dag) / 2, which scrubs float-level
    asymmetry.  Asymmetry larger than ``tol`` times the matrix scale raises
    NonHermitianError instead of being silently averaged away.
    """
    m = np.asarray(matrix, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if m.size == 0:
        return m
    asym = float(np.max(np.abs(m - m.conj().T)))
    scale = max(1.0, float(np.max(np.abs(m))))
    if asym > tol * scale:
        raise NonHermitianError(
            f"asymmetry {asym:.3e} exceeds tolerance {tol:.1e} at scale {scale:.3e}"
        )
    return (m + m.conj().T) / 2.0


def hermitian_spectrum(matrix, tol: float = HERMITICITY_TOL) -> Spectrum:
    """Ascending eigenvalues of a Hermitian matrix."""
    h = as_hermitian(matrix, tol)
    return Spectrum(np.linalg.eigvalsh(h))


def von_neumann_entropy(spectrum) -> float:
    """Entropy in bits of a (possibly unnormalized) nonnegative spectrum.

    Values below ZERO_CLAMP are treated as exact zeros.  A value below
    -NEGATIVITY_TOL raises NegativeSpectrumError; the caller is expected to
    hand in the spectrum of a positive semidefinite matrix.
    """
    v = np.asarray(spectrum, dtype=float).ravel()
    if v.size == 0:
        return 0.0
    lowest = float(v.min())
    if lowest < -NEGATIVITY_TOL:
        raise NegativeSpectrumError(f"eigenvalue {lowest:.3e} below -{NEGATIVITY_TOL:.1e}")
    v = v[v >= ZERO_CLAMP]
    if v.size == 0:
        return 0.0
    return float(-np.sum(v * np.log2(v)))


def shannon_entropy(weights, axis=None):
    """Entropy in bits of an array of nonnegative weights, along ``axis``.

    Vectorized companion of ``von_neumann_entropy`` for assembled spectra:
    the same clamp and negativity gate apply elementwise.
    """
    w = np.asarray(weights, dtype=float)
    if w.size == 0:
        return 0.0
    lowest = float(w.min())
    if lowest < -NEGATIVITY_TOL:
        raise NegativeSpectrumError(f"weight {lowest:.3e} below -{NEGATIVITY_TOL:.1e}")
    w = np.where(w < ZERO_CLAMP, 0.0, w)
    safe = np.where(w > 0.0, w, 1.0)
    return np.sum(-w * np.log2(safe), axis=axis)


def psd_check(matrix, tol: float = 1e-9) -> tuple[bool, float]:
    """Whether the Hermitian ``matrix`` is PSD within ``tol``.

    Returns (verdict, minimum eigenvalue).  The verdict is true when the
    minimum eigenvalue is at least -tol.
    """
    h = as_hermitian(matrix)
    w = np.linalg.eigvalsh(h)
    min_eig = float(w[0]) if w.size else 0.0
    return min_eig >= -tol, min_eig


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product with the first factor on the slow index."""
    return np.kron(np.asarray(a), np.asarray(b))


def partial_trace(matrix, dims: tuple[int, int], keep: int) -> np.ndarray:
    """Trace out one factor of a bipartite operator.

    ``dims`` is (dim_a, dim_b) for an operator on a (x) b with a on the slow
    index, and ``keep`` selects the surviving factor: 0 keeps a, 1 keeps b.
    """
    da, db = dims
    m = np.asarray(matrix)
    if m.shape != (da * db, da * db):
        raise ValueError(f"operator shape {m.shape} does not match dims {dims}")
    t = m.reshape(da, db, da, db)
    if keep == 0:
        return np.trace(t, axis1=1, axis2=3)
    if keep == 1:
        return np.trace(t, axis1=0, axis2=2)
    raise ValueError(f"keep must be 0 or 1, got {keep!r}")
