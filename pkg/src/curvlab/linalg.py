"""Dense linear algebra substrate shared by every other module.

All values are plain float64 numpy arrays over a fixed orthonormal basis
of R^d: vectors are 1-d arrays, operators are (d, d) arrays, and the inner
product is the standard dot product.  Every function is pure; anything
random takes an explicit seed, so identical calls give bitwise-identical
results.  Eigenvector and basis signs are canonicalized (first entry above
the noise floor made positive) to keep spectral output deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    NonOrthonormalBasis,
    NonPositiveTolerance,
    NotOrthonormal,
    NotSkew,
    NotUnit,
    OddDimension,
)

#: Default relative tolerance for rank decisions and residual checks.
DEFAULT_TOL = 1e-9

#: Unit-norm slack accepted wherever a unit vector is required.
UNIT_TOL = 1e-12

#: Gram-matrix slack accepted for orthonormal tuples and subspace bases.
ORTHO_TOL = 1e-10

_SIGN_FLOOR = 1e-12


def scale_of(a) -> float:
    """max(1, largest absolute entry): the reference for relative tolerances."""
    arr = np.asarray(a, dtype=float)
    if arr.size == 0:
        return 1.0
    return max(1.0, float(np.max(np.abs(arr))))


def require_unit(v, tol: float = UNIT_TOL, name: str = "vector") -> np.ndarray:
    v = np.asarray(v, dtype=float)
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > tol:
        raise NotUnit(f"{name} has norm {norm!r}, expected 1 within {tol:g}")
    return v


def require_orthonormal(vectors, tol: float = ORTHO_TOL) -> np.ndarray:
    """Stack vectors as rows after checking their Gram matrix is the identity."""
    rows = np.asarray([np.asarray(v, dtype=float) for v in vectors])
    gram = rows @ rows.T
    resid = float(np.max(np.abs(gram - np.eye(rows.shape[0])))) if rows.size else 0.0
    if resid > tol:
        raise NotOrthonormal(
            f"vectors are not orthonormal: Gram residual {resid:.3e} > {tol:g}"
        )
    return rows


def require_skew(a, tol: float = 1e-12, name: str = "operator") -> np.ndarray:
    """Validate skew symmetry relative to max(1, largest entry)."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSkew(f"{name} must be a square matrix, got shape {a.shape}")
    resid = float(np.max(np.abs(a + a.T)))
    if resid > tol * scale_of(a):
        raise NotSkew(f"{name} is not skew symmetric: residual {resid:.3e}")
    return a


def require_complex_structure(j, tol: float = 1e-12) -> np.ndarray:
    """Validate an orthogonal almost complex structure (J^T J = Id, J^2 = -Id)."""
    j = np.asarray(j, dtype=float)
    if j.ndim != 2 or j.shape[0] != j.shape[1]:
        raise ValueError(f"complex structure must be square, got shape {j.shape}")
    d = j.shape[0]
    if d % 2:
        raise OddDimension(f"complex structure needs even dimension, got {d}")
    eye = np.eye(d)
    if float(np.max(np.abs(j.T @ j - eye))) > tol:
        raise ValueError("complex structure is not orthogonal")
    if float(np.max(np.abs(j @ j + eye))) > tol:
        raise ValueError("complex structure does not square to -Id")
    return j


def standard_complex_structure(d: int) -> np.ndarray:
    """The block-diagonal structure J e_{2k-1} = e_{2k}, J e_{2k} = -e_{2k-1}."""
    if d < 2 or d % 2:
        raise OddDimension(f"standard complex structure needs even d >= 2, got {d}")
    j = np.zeros((d, d))
    for k in range(0, d, 2):
        j[k + 1, k] = 1.0
        j[k, k + 1] = -1.0
    return j


def canonical_sign_columns(u: np.ndarray, zero_tol: float = _SIGN_FLOOR) -> np.ndarray:
    """Flip column signs so the first entry above ``zero_tol`` is positive."""
    out = np.array(u, dtype=float, copy=True)
    for col in range(out.shape[1]):
        nonzero = np.flatnonzero(np.abs(out[:, col]) > zero_tol)
        if nonzero.size and out[nonzero[0], col] < 0:
            out[:, col] = -out[:, col]
    return out


def canonical_sign_matrix(a: np.ndarray, zero_tol: float = _SIGN_FLOOR) -> np.ndarray:
    """Flip the whole matrix so its first row-major nonzero entry is positive."""
    flat = np.asarray(a, dtype=float).ravel()
    nonzero = np.flatnonzero(np.abs(flat) > zero_tol)
    if nonzero.size and flat[nonzero[0]] < 0:
        # adding 0.0 clears the negative zeros the flip would introduce
        return -np.asarray(a, dtype=float) + 0.0
    return np.array(a, dtype=float, copy=True)


def symmetric_spectrum(s) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and sign-canonicalized orthonormal eigenvectors.

    The input is expected to be symmetric; only its lower triangle is read.
    Output is deterministic for identical input.
    """
    s = np.asarray(s, dtype=float)
    eigenvalues, vectors = np.linalg.eigh(s)
    return eigenvalues, canonical_sign_columns(vectors)


def rank_with_tol(mat, tol: float = DEFAULT_TOL) -> int:
    """Number of singular values above ``tol * max(1, largest singular value)``."""
    if tol <= 0:
        raise NonPositiveTolerance(f"tolerance must be positive, got {tol!r}")
    mat = np.asarray(mat, dtype=float)
    singular = np.linalg.svd(mat, compute_uv=False)
    if singular.size == 0:
        return 0
    return int(np.sum(singular > tol * max(1.0, float(singular[0]))))


def unit_sphere_samples(d: int, n: int, seed: int = 0) -> np.ndarray:
    """n deterministic unit vectors as rows, standard basis vectors first.

    The first min(n, d) rows are standard basis vectors; the rest are
    normalized Gaussian draws from ``numpy.random.default_rng(seed)``.
    """
    if d < 1:
        raise ValueError(f"dimension must be at least 1, got {d}")
    if n < 0:
        raise ValueError(f"sample count must be nonnegative, got {n}")
    out = np.zeros((n, d))
    head = min(n, d)
    out[:head] = np.eye(d)[:head]
    rest = n - head
    if rest > 0:
        rng = np.random.default_rng(seed)
        g = rng.standard_normal((rest, d))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        # second pass pins the norm to within one ulp of 1
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        out[head:] = g
    return out


def random_skew(d: int, seed: int = 0) -> np.ndarray:
    """Seeded dense skew matrix M - M^T (exactly skew, zero diagonal)."""
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((d, d))
    return m - m.T


def null_space(mat, tol: float = DEFAULT_TOL) -> "Subspace":
    """Orthonormal basis of the kernel at relative tolerance ``tol``."""
    mat = np.asarray(mat, dtype=float)
    n = mat.shape[1]
    _, singular, vt = np.linalg.svd(mat, full_matrices=True)
    top = float(singular[0]) if singular.size else 0.0
    rank = int(np.sum(singular > tol * max(1.0, top)))
    kernel = canonical_sign_columns(vt[rank:].T)
    return Subspace(n, kernel)


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of R^dim, stored as orthonormal basis columns.

    ``basis`` has shape (dim, k); k = 0 encodes the zero subspace.
    """

    dim: int
    basis: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=float)
        if b.ndim != 2 or b.shape[0] != self.dim:
            raise NonOrthonormalBasis(
                f"basis must have shape ({self.dim}, k), got {b.shape}"
            )
        k = b.shape[1]
        if k:
            resid = float(np.max(np.abs(b.T @ b - np.eye(k))))
            if resid > ORTHO_TOL:
                raise NonOrthonormalBasis(
                    f"basis Gram matrix deviates from identity by {resid:.3e}"
                )
        object.__setattr__(self, "basis", b)

    @classmethod
    def empty(cls, dim: int) -> "Subspace":
        return cls(dim, np.zeros((dim, 0)))

    @classmethod
    def full(cls, dim: int) -> "Subspace":
        return cls(dim, np.eye(dim))

    @classmethod
    def span(cls, vectors, dim: int | None = None, tol: float = 1e-12) -> "Subspace":
        """Orthonormalized span of the given vectors (rank cut at ``tol``)."""
        mat = np.asarray([np.asarray(v, dtype=float) for v in vectors])
        if mat.size == 0:
            if dim is None:
                raise ValueError("cannot infer dimension from an empty span")
            return cls.empty(dim)
        mat = mat.T  # columns are the spanning vectors
        d = mat.shape[0]
        if dim is not None and dim != d:
            raise ValueError(f"vectors have length {d}, expected {dim}")
        u, singular, _ = np.linalg.svd(mat, full_matrices=False)
        top = float(singular[0]) if singular.size else 0.0
        rank = int(np.sum(singular > tol * max(top, 1e-300)))
        return cls(d, canonical_sign_columns(u[:, :rank]))

    @property
    def dimension(self) -> int:
        return int(self.basis.shape[1])

    def projector(self) -> np.ndarray:
        """Orthogonal projection matrix sum_b b b^T over basis columns."""
        return self.basis @ self.basis.T

    def complement(self) -> "Subspace":
        if self.dimension == 0:
            return Subspace.full(self.dim)
        if self.dimension == self.dim:
            return Subspace.empty(self.dim)
        u, _, _ = np.linalg.svd(self.basis, full_matrices=True)
        return Subspace(self.dim, canonical_sign_columns(u[:, self.dimension:]))

    def contains(self, v, tol: float = 1e-10) -> bool:
        v = np.asarray(v, dtype=float)
        resid = float(np.linalg.norm(v - self.projector() @ v))
        return resid <= tol * scale_of(v)

    def principal_angles(self, other: "Subspace") -> np.ndarray:
        """Principal angles (ascending), one per dimension of the smaller space.

        Small angles are computed from sines (singular values of the
        projection residual) rather than arccos, which loses half the
        significant digits near zero.
        """
        if self.dim != other.dim:
            raise ValueError("subspaces live in different ambient dimensions")
        small, big = (self, other) if self.dimension <= other.dimension else (other, self)
        if small.dimension == 0:
            return np.zeros(0)
        cosines = np.clip(
            np.linalg.svd(small.basis.T @ big.basis, compute_uv=False), -1.0, 1.0
        )
        residual = small.basis - big.basis @ (big.basis.T @ small.basis)
        sines = np.clip(np.sort(np.linalg.svd(residual, compute_uv=False)), 0.0, 1.0)
        return np.where(cosines**2 > 0.5, np.arcsin(sines), np.arccos(cosines))

    def angle_to(self, other: "Subspace") -> float:
        """Largest principal angle; pi/2 when the dimensions differ."""
        if self.dim != other.dim:
            raise ValueError("subspaces live in different ambient dimensions")
        if self.dimension != other.dimension:
            return float(np.pi / 2)
        if self.dimension == 0:
            return 0.0
        return float(self.principal_angles(other)[-1])

    def intersection(self, other: "Subspace", tol: float = 1e-8) -> "Subspace":
        """Common subspace, via the eigenvalue-2 eigenspace of P_self + P_other."""
        if self.dim != other.dim:
            raise ValueError("subspaces live in different ambient dimensions")
        eigenvalues, vectors = np.linalg.eigh(self.projector() + other.projector())
        keep = eigenvalues >= 2.0 - tol
        return Subspace(self.dim, canonical_sign_columns(vectors[:, keep]))


def projector(w: Subspace) -> np.ndarray:
    """Orthogonal projection onto ``w``; the zero matrix for the empty subspace."""
    return w.projector()
