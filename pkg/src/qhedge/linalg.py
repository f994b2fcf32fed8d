"""Dense complex-matrix calculus: tensor products, partial traces, Hermitian
spectral routines, fidelity, and tensor-factor permutations.

Matrices are plain complex ``numpy`` arrays.  Composite systems follow the
row-major multi-index convention: the leftmost tensor factor is the most
significant index block.  Factor dimensions are passed as plain sequences of
ints ("system dims"); every routine validates that their product matches the
matrix size.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

#: Absolute tolerance on the largest entry asymmetry |M[i,j] - conj(M[j,i])|.
HERMITICITY_TOL = 1e-9

#: A Hermitian matrix counts as positive semidefinite when its minimum
#: eigenvalue is >= -PSD_TOL.
PSD_TOL = 1e-9


@dataclass(frozen=True)
class HermitianCheck:
    """Result of a Hermiticity test: flag plus the worst entry asymmetry."""

    is_hermitian: bool
    max_asymmetry: float


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    """Coerce to a 2-d complex array, rejecting non-finite entries."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contains non-finite entries")
    return a


def check_dims(dims: Sequence[int], size: int, name: str = "dims") -> tuple[int, ...]:
    """Validate per-factor dimensions against a total matrix dimension."""
    t = tuple(int(d) for d in dims)
    if not t or any(d < 1 for d in t):
        raise ValueError(f"{name} must be a non-empty sequence of dimensions >= 1, got {t}")
    if int(np.prod(t)) != size:
        raise ValueError(f"product of {name} {t} does not match matrix dimension {size}")
    return t


def hermitian_check(m) -> HermitianCheck:
    """Measure how far a square matrix is from being Hermitian."""
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    asym = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    return HermitianCheck(is_hermitian=asym <= HERMITICITY_TOL, max_asymmetry=asym)


def require_hermitian(m, tol: float = HERMITICITY_TOL, name: str = "matrix") -> np.ndarray:
    """Return ``m`` as an array, raising if its entry asymmetry exceeds ``tol``."""
    a = as_matrix(m, name)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square, got shape {a.shape}")
    asym = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    if asym > tol:
        raise ValueError(f"{name} is not Hermitian: max asymmetry {asym:.3e} > {tol:.3e}")
    return a


def tensor(a, b) -> np.ndarray:
    """Kronecker product with the left factor as the most significant block."""
    return np.kron(as_matrix(a, "a"), as_matrix(b, "b"))


def tensor_many(*factors) -> np.ndarray:
    """Kronecker product of several factors, left to right."""
    out = as_matrix(factors[0])
    for f in factors[1:]:
        out = np.kron(out, as_matrix(f))
    return out


def partial_trace(m, dims: Sequence[int], traced_factor: int) -> np.ndarray:
    """Trace out one tensor factor of a square matrix.

    The remaining factors keep their relative order, so the output acts on
    the composite of all factors except ``traced_factor``.
    """
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"partial_trace needs a square matrix, got {a.shape}")
    d = check_dims(dims, a.shape[0])
    k = len(d)
    if not 0 <= traced_factor < k:
        raise ValueError(f"traced_factor {traced_factor} out of range for {k} factors")
    t = a.reshape(d + d)
    out = np.trace(t, axis1=traced_factor, axis2=k + traced_factor)
    keep = int(np.prod([x for i, x in enumerate(d) if i != traced_factor]))
    return out.reshape(keep, keep)


def eig_hermitian(h, tol: float = HERMITICITY_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues, eigenvectors) with real eigenvalues in ascending
    order and eigenvectors as the columns of a unitary matrix, so that
    ``V @ diag(w) @ V.conj().T`` reconstructs the input.
    """
    a = require_hermitian(h, tol, "eig_hermitian input")
    w, v = np.linalg.eigh((a + a.conj().T) / 2.0)
    return w, v


def is_psd(h, tol: float = PSD_TOL) -> bool:
    """True when the Hermitian matrix has minimum eigenvalue >= -tol."""
    w, _ = eig_hermitian(h)
    return bool(w[0] >= -tol) if w.size else True


def sqrt_psd(p, tol: float = PSD_TOL) -> np.ndarray:
    """Positive-semidefinite square root.

    Eigenvalues in [-tol, 0) are clamped to zero; anything more negative is
    an error.
    """
    w, v = eig_hermitian(p)
    if w.size and w[0] < -tol:
        raise ValueError(f"matrix is not PSD: min eigenvalue {w[0]:.3e} < -{tol:.3e}")
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def trace_norm(m) -> float:
    """Sum of singular values, computed as Tr sqrt(M* M).

    Goes through the Hermitian eigensolver on M*M rather than a general SVD
    so that a single spectral kernel backs the whole module.
    """
    a = as_matrix(m)
    g = a.conj().T @ a
    w = np.linalg.eigvalsh((g + g.conj().T) / 2.0)
    return float(np.sum(np.sqrt(np.clip(w, 0.0, None))))


def fidelity_squared(p, r) -> float:
    """Squared fidelity ||sqrt(p) sqrt(r)||_1^2 between PSD operators."""
    return trace_norm(sqrt_psd(p) @ sqrt_psd(r)) ** 2


def inner(a, b) -> complex:
    """Hilbert-Schmidt inner product Tr(a* b); real when both are Hermitian."""
    x = as_matrix(a, "a")
    y = as_matrix(b, "b")
    if x.shape != y.shape:
        raise ValueError(f"shape mismatch in inner product: {x.shape} vs {y.shape}")
    return complex(np.sum(x.conj() * y))


def permute_systems(m, dims: Sequence[int], perm: Sequence[int]) -> np.ndarray:
    """Reorder the tensor factors of a square matrix.

    ``perm[k]`` names the input factor that becomes the k-th output factor;
    the operation is exact index relabeling (conjugation by a permutation
    unitary, without forming it).
    """
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"permute_systems needs a square matrix, got {a.shape}")
    d = check_dims(dims, a.shape[0])
    k = len(d)
    p = tuple(int(i) for i in perm)
    if sorted(p) != list(range(k)):
        raise ValueError(f"perm {p} is not a permutation of 0..{k - 1}")
    axes = p + tuple(k + i for i in p)
    out = a.reshape(d + d).transpose(axes)
    return out.reshape(a.shape)


def entrywise_conjugate(a) -> np.ndarray:
    """Entry-wise complex conjugate."""
    return np.conj(as_matrix(a))
