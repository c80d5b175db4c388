"""Small dense symmetric linear algebra: bilinear forms, eigenvalues, signatures."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

DEFAULT_SIGNATURE_TOL = 1e-9


def as_vector(v, name="v", min_len=1) -> np.ndarray:
    """Validate and copy ``v`` into a 1-d float array of finite components."""
    arr = np.array(v, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.shape[0] < min_len:
        raise ValueError(f"{name} needs at least {min_len} components, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite components")
    return arr


class SymTensor:
    """Symmetric matrix with an optional reference vector.

    Entries are symmetrized as ``(M + M.T) / 2`` on construction, so round-off
    from finite differences never leaks an asymmetric part downstream.
    """

    __slots__ = ("entries", "ref_vector")

    def __init__(self, entries, ref_vector=None):
        m = np.array(entries, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("matrix has non-finite entries")
        m = 0.5 * (m + m.T)
        m.setflags(write=False)
        self.entries = m
        if ref_vector is not None:
            ref_vector = as_vector(ref_vector, "ref_vector")
            ref_vector.setflags(write=False)
        self.ref_vector = ref_vector

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.entries)))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)

    def __repr__(self):
        return f"SymTensor({self.entries.tolist()!r})"


def _as_matrix(M) -> np.ndarray:
    if isinstance(M, SymTensor):
        return M.entries
    return SymTensor(M).entries


def bilinear(M, u, w) -> float:
    """Return ``sum_ij M[i, j] u[i] w[j]``."""
    m = _as_matrix(M)
    u = as_vector(u, "u")
    w = as_vector(w, "w")
    if u.shape[0] != m.shape[0] or w.shape[0] != m.shape[0]:
        raise ValueError(
            f"dimension mismatch: matrix is {m.shape[0]}x{m.shape[0]}, "
            f"vectors have {u.shape[0]} and {w.shape[0]} components"
        )
    return float(u @ m @ w)


def jacobi_eigh(M, max_sweeps=64, want_vectors=False):
    """Cyclic Jacobi eigen-decomposition of a symmetric matrix.

    Returns eigenvalues in descending order, and the matching orthonormal
    eigenvectors as columns when ``want_vectors`` is true. Works on plain
    Python floats because the matrices here are tiny (n <= ~16) and numpy
    call overhead would dominate.
    """
    m = _as_matrix(M)
    n = m.shape[0]
    a = m.tolist()
    vecs = [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)] if want_vectors else None

    scale = math.sqrt(sum(x * x for row in a for x in row))
    threshold = (1e-17 * scale) ** 2
    for _ in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            row = a[p]
            for q in range(p + 1, n):
                off += row[q] * row[q]
        if off <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                if apq == 0.0:
                    continue
                theta = (a[q][q] - a[p][p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                a[p][p] -= t * apq
                a[q][q] += t * apq
                a[p][q] = a[q][p] = 0.0
                for r in range(n):
                    if r == p or r == q:
                        continue
                    arp = a[r][p]
                    arq = a[r][q]
                    a[r][p] = a[p][r] = c * arp - s * arq
                    a[r][q] = a[q][r] = s * arp + c * arq
                if vecs is not None:
                    for r in range(n):
                        vrp = vecs[r][p]
                        vrq = vecs[r][q]
                        vecs[r][p] = c * vrp - s * vrq
                        vecs[r][q] = s * vrp + c * vrq

    vals = [a[i][i] for i in range(n)]
    order = sorted(range(n), key=lambda i: -vals[i])
    values = np.array([vals[i] for i in order])
    if not want_vectors:
        return values
    vectors = np.array(vecs)[:, order]
    return values, vectors


def sym_eigenvalues(M, method="jacobi") -> np.ndarray:
    """Eigenvalues of a symmetric matrix, sorted in descending order.

    ``method="jacobi"`` uses the in-house cyclic Jacobi solver;
    ``method="lapack"`` delegates to :func:`numpy.linalg.eigvalsh`.
    """
    m = _as_matrix(M)
    if method == "jacobi":
        return jacobi_eigh(m)
    if method == "lapack":
        return np.linalg.eigvalsh(m)[::-1].copy()
    raise ValueError(f"unknown eigenvalue method {method!r}")


class SignatureClass(str, enum.Enum):
    POSITIVE_DEFINITE = "positive_definite"
    POSITIVE_SEMIDEFINITE = "positive_semidefinite"
    LORENTZIAN = "lorentzian"
    DEGENERATE_LORENTZIAN = "degenerate_lorentzian"
    OTHER = "other"

    @property
    def one_positive(self) -> bool:
        return self in (SignatureClass.LORENTZIAN, SignatureClass.DEGENERATE_LORENTZIAN)

    @property
    def nondegenerate(self) -> bool:
        return self in (SignatureClass.LORENTZIAN, SignatureClass.POSITIVE_DEFINITE)


def signature_class(n_pos: int, n_neg: int, n_zero: int) -> SignatureClass:
    """Name the class of an eigenvalue-sign triple.

    Overlaps are resolved in this order: positive definite (only possible
    overlap is the 1x1 case), Lorentzian, degenerate Lorentzian (so
    ``(+, 0, ..., 0)`` is degenerate Lorentzian), positive semidefinite.
    """
    if n_neg == 0 and n_zero == 0:
        return SignatureClass.POSITIVE_DEFINITE
    if n_pos == 1 and n_zero == 0:
        return SignatureClass.LORENTZIAN
    if n_pos == 1 and n_zero >= 1:
        return SignatureClass.DEGENERATE_LORENTZIAN
    if n_neg == 0:
        return SignatureClass.POSITIVE_SEMIDEFINITE
    return SignatureClass.OTHER


@dataclass(frozen=True)
class Signature:
    n_pos: int
    n_neg: int
    n_zero: int
    tol_used: float
    cls: SignatureClass
    eigenvalues: Optional[tuple] = None

    @property
    def counts(self):
        return (self.n_pos, self.n_neg, self.n_zero)

    def to_dict(self):
        return {
            "n_pos": self.n_pos,
            "n_neg": self.n_neg,
            "n_zero": self.n_zero,
            "tol_used": self.tol_used,
            "class": self.cls.value,
        }


def classify_signature(M, tol=DEFAULT_SIGNATURE_TOL, method="jacobi") -> Signature:
    """Count eigenvalue signs of ``M``.

    An eigenvalue counts as zero when ``|lam| <= tol * max(1, spectral radius)``.
    """
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    eig = sym_eigenvalues(M, method=method)
    cutoff = tol * max(1.0, float(np.max(np.abs(eig))))
    n_zero = int(np.sum(np.abs(eig) <= cutoff))
    n_pos = int(np.sum(eig > cutoff))
    n_neg = int(np.sum(eig < -cutoff))
    return Signature(
        n_pos=n_pos,
        n_neg=n_neg,
        n_zero=n_zero,
        tol_used=cutoff,
        cls=signature_class(n_pos, n_neg, n_zero),
        eigenvalues=tuple(float(x) for x in eig),
    )
