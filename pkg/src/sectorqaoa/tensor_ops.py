"""Operator and state algebra on the n-qudit space W = (C^d)^(tensor n).

Basis strings are big-endian: site 1 is the most significant digit, so the
string x maps to index sum_i x_i d^(n-i).  Everything is dense complex128
with a hard cap d^n <= 6561; operators and states are immutable after
construction.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import DimensionCapError

DIMENSION_CAP = 6561
HERMITIAN_TOL = 1e-10
DEGENERACY_TOL = 1e-9
DIAGONAL_TOL = 1e-12


def _check_dims(n: int, d: int) -> int:
    if n < 1 or d < 2:
        raise ValueError(f"need n >= 1 and d >= 2, got n={n}, d={d}")
    dim = d**n
    if dim > DIMENSION_CAP:
        raise DimensionCapError(f"d^n = {dim} exceeds the dense cap {DIMENSION_CAP}")
    return dim


@lru_cache(maxsize=None)
def digit_strings(n: int, d: int) -> np.ndarray:
    """(d^n, n) table of digits; row i spells the string of index i."""
    dim = _check_dims(n, d)
    table = np.zeros((dim, n), dtype=np.int64)
    for j in range(n):
        table[:, j] = (np.arange(dim) // d ** (n - 1 - j)) % d
    table.setflags(write=False)
    return table


def string_to_index(digits: Sequence[int], d: int) -> int:
    idx = 0
    for x in digits:
        idx = idx * d + int(x)
    return idx


def index_to_string(index: int, n: int, d: int) -> tuple[int, ...]:
    return tuple(int(v) for v in digit_strings(n, d)[index])


def validate_site_permutation(sigma: Sequence[int], n: int) -> tuple[int, ...]:
    sigma = tuple(int(s) for s in sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValueError(f"{sigma} is not a permutation of 1..{n}")
    return sigma


def compose_permutations(sigma: Sequence[int], tau: Sequence[int]) -> tuple[int, ...]:
    """(sigma o tau)(i) = sigma(tau(i)), both 1-based image arrays."""
    return tuple(sigma[t - 1] for t in tau)


def transposition(n: int, i: int, k: int) -> tuple[int, ...]:
    sigma = list(range(1, n + 1))
    sigma[i - 1], sigma[k - 1] = sigma[k - 1], sigma[i - 1]
    return tuple(sigma)


def index_permutation(n: int, d: int, sigma: Sequence[int]) -> np.ndarray:
    """Permutation of string indices induced by a site permutation.

    Site i's digit moves to site sigma(i); the returned array `dest`
    satisfies dest[i] = index of the transformed string, so the matrix
    M[dest[i], i] = 1 is the tensor-factor permutation unitary.
    """
    sigma = validate_site_permutation(sigma, n)
    table = digit_strings(n, d)
    new_digits = np.empty_like(table)
    for j in range(n):
        new_digits[:, sigma[j] - 1] = table[:, j]
    place = d ** (n - 1 - np.arange(n))
    return new_digits @ place


@dataclass(eq=False)
class Operator:
    """Dense operator on W with (n, d) metadata."""

    n: int
    d: int
    matrix: np.ndarray

    def __post_init__(self):
        dim = _check_dims(self.n, self.d)
        self.matrix = np.ascontiguousarray(self.matrix, dtype=np.complex128)
        if self.matrix.shape != (dim, dim):
            raise ValueError(f"matrix shape {self.matrix.shape} != ({dim}, {dim}) for n={self.n}, d={self.d}")
        self.matrix.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.d**self.n

    def hermiticity_defect(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))

    def is_hermitian(self, tol: float = HERMITIAN_TOL) -> bool:
        return self.hermiticity_defect() <= tol

    def is_diagonal(self, tol: float = DIAGONAL_TOL) -> bool:
        off = self.matrix - np.diag(np.diagonal(self.matrix))
        return float(np.max(np.abs(off))) <= tol if self.dim > 1 else True

    def diagonal(self) -> np.ndarray:
        if not self.is_diagonal():
            raise ValueError("operator is not diagonal")
        return np.real(np.diagonal(self.matrix)).copy()

    def __add__(self, other: "Operator") -> "Operator":
        self._require_same_space(other)
        return Operator(self.n, self.d, self.matrix + other.matrix)

    def __sub__(self, other: "Operator") -> "Operator":
        self._require_same_space(other)
        return Operator(self.n, self.d, self.matrix - other.matrix)

    def __matmul__(self, other: "Operator") -> "Operator":
        self._require_same_space(other)
        return Operator(self.n, self.d, self.matrix @ other.matrix)

    def __mul__(self, scalar: complex) -> "Operator":
        return Operator(self.n, self.d, self.matrix * scalar)

    __rmul__ = __mul__

    def _require_same_space(self, other: "Operator"):
        if (self.n, self.d) != (other.n, other.d):
            raise ValueError(f"operators live on different spaces: ({self.n},{self.d}) vs ({other.n},{other.d})")


@dataclass(eq=False)
class StateVector:
    """Unit-norm amplitudes over the d-ary string basis."""

    n: int
    d: int
    amplitudes: np.ndarray

    def __post_init__(self):
        dim = _check_dims(self.n, self.d)
        self.amplitudes = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (dim,):
            raise ValueError(f"amplitude length {self.amplitudes.shape} != {dim}")
        nrm = float(np.linalg.norm(self.amplitudes))
        if abs(nrm - 1.0) > 1e-10:
            raise ValueError(f"state norm {nrm} deviates from 1 by more than 1e-10")
        self.amplitudes.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.d**self.n

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def overlap(self, other: "StateVector") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))


def basis_state(n: int, d: int, index: int) -> StateVector:
    amp = np.zeros(d**n, dtype=np.complex128)
    amp[index] = 1.0
    return StateVector(n, d, amp)


def uniform_state(n: int, d: int) -> StateVector:
    dim = d**n
    return StateVector(n, d, np.full(dim, 1.0 / np.sqrt(dim), dtype=np.complex128))


@dataclass
class SpectralDecomposition:
    """Ascending eigenvalues with orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    degeneracy_groups: list[list[int]]

    def reconstruction(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


@dataclass(frozen=True)
class PFReport:
    """Perron-Frobenius structure diagnostics for a matrix."""

    nonnegative: bool
    irreducible: bool
    min_offdiag_shift: float


def permutation_rep(n: int, d: int, sigma: Sequence[int]) -> Operator:
    """Unitary permuting tensor factors: digit of site i moves to site sigma(i)."""
    dim = _check_dims(n, d)
    dest = index_permutation(n, d, sigma)
    mat = np.zeros((dim, dim), dtype=np.complex128)
    mat[dest, np.arange(dim)] = 1.0
    return Operator(n, d, mat)


def yjm(n: int, d: int, k: int) -> Operator:
    """Sum of transpositions (i, k) for i < k, as an operator on W."""
    dim = _check_dims(n, d)
    if not 1 <= k <= n:
        raise ValueError(f"site index k={k} out of range 1..{n}")
    mat = np.zeros((dim, dim), dtype=np.complex128)
    cols = np.arange(dim)
    for i in range(1, k):
        mat[index_permutation(n, d, transposition(n, i, k)), cols] += 1.0
    return Operator(n, d, mat)


def site_lift(n: int, d: int, j: int, local: np.ndarray) -> Operator:
    """Tensor the d x d matrix `local` into site j, identity elsewhere."""
    _check_dims(n, d)
    if not 1 <= j <= n:
        raise ValueError(f"site index j={j} out of range 1..{n}")
    local = np.asarray(local, dtype=np.complex128)
    if local.shape != (d, d):
        raise ValueError(f"local matrix shape {local.shape} != ({d}, {d})")
    left = np.eye(d ** (j - 1), dtype=np.complex128)
    right = np.eye(d ** (n - j), dtype=np.complex128)
    return Operator(n, d, np.kron(np.kron(left, local), right))


def spectral(op: Operator, tol: float = DEGENERACY_TOL) -> SpectralDecomposition:
    """Hermitian eigendecomposition with degeneracy grouping.

    Eigenvalues within an absolute gap of `tol` of their predecessor are
    grouped together; the result is cached on the operator instance.
    """
    cached = getattr(op, "_spectral_cache", None)
    if cached is not None:
        return cached
    if not op.is_hermitian():
        raise ValueError(f"operator is not Hermitian (defect {op.hermiticity_defect():.3e})")
    evals, evecs = np.linalg.eigh(op.matrix)
    groups: list[list[int]] = [[0]]
    for i in range(1, len(evals)):
        if evals[i] - evals[i - 1] > tol:
            groups.append([])
        groups[-1].append(i)
    decomp = SpectralDecomposition(evals, evecs, groups)
    op._spectral_cache = decomp
    return decomp


def evolve(H: Operator, theta: float, psi: StateVector) -> StateVector:
    """Apply exp(-i theta H) to psi via exact eigendecomposition.

    Diagonal H takes the elementwise phase shortcut.
    """
    if (H.n, H.d) != (psi.n, psi.d):
        raise ValueError(f"operator on ({H.n},{H.d}) cannot act on state over ({psi.n},{psi.d})")
    if H.is_diagonal():
        diag = np.real(np.diagonal(H.matrix))
        if float(np.max(np.abs(np.imag(np.diagonal(H.matrix))))) > HERMITIAN_TOL:
            raise ValueError("diagonal operator has non-real entries")
        out = np.exp(-1j * theta * diag) * psi.amplitudes
    else:
        dec = spectral(H)
        coeffs = dec.eigenvectors.conj().T @ psi.amplitudes
        out = dec.eigenvectors @ (np.exp(-1j * theta * dec.eigenvalues) * coeffs)
    return StateVector(psi.n, psi.d, out)


def pf_check(matrix: np.ndarray | Operator, tol: float = 1e-12) -> PFReport:
    """Perron-Frobenius diagnostics: entrywise nonnegativity and irreducibility.

    Irreducibility means the directed support graph (edge where |entry| > tol)
    is strongly connected; min_offdiag_shift is the most negative real
    off-diagonal entry, relevant when reasoning about identity-shifted spectra.
    """
    mat = matrix.matrix if isinstance(matrix, Operator) else np.asarray(matrix)
    nonnegative = bool(np.max(np.abs(np.imag(mat))) <= tol and np.min(np.real(mat)) >= -tol)
    support = csr_matrix((np.abs(mat) > tol).astype(np.int8))
    ncomp, _ = connected_components(support, directed=True, connection="strong")
    dim = mat.shape[0]
    offdiag = np.real(mat)[~np.eye(dim, dtype=bool)]
    shift = float(np.min(offdiag)) if offdiag.size else 0.0
    return PFReport(nonnegative=nonnegative, irreducible=bool(ncomp == 1), min_offdiag_shift=shift if shift < 0.0 else 0.0)
