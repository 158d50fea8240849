"""Problem Hamiltonians, the d=2 Pauli-Z reduction, and mixer construction.

Objectives are quadratic functions of the string digits,
F(x) = a + sum_k beta_k x_k + sum_{i<=j} alpha_ij x_i x_j with digits in
0..d-1, or an explicit table of d^n values.  The problem Hamiltonian is
the diagonal operator carrying F over the string basis.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import tensor_ops
from .combinatorics import Partition, as_partition
from .errors import SectorInadmissibleError, UnsupportedDimensionError
from .tensor_ops import Operator, digit_strings, site_lift

BLOCK_TOL = 1e-9


@dataclass(frozen=True)
class ProblemSpec:
    """Objective on d-ary strings: quadratic coefficients or an explicit table."""

    n: int
    d: int
    constant: float = 0.0
    linear: tuple[float, ...] | None = None
    quadratic: dict[tuple[int, int], float] | None = None
    table: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.n < 1 or self.d < 2:
            raise ValueError(f"need n >= 1 and d >= 2, got n={self.n}, d={self.d}")
        has_coeffs = self.constant != 0.0 or self.linear is not None or self.quadratic is not None
        if self.table is not None:
            if has_coeffs:
                raise ValueError("give either coefficients or a value table, not both")
            object.__setattr__(self, "table", tuple(float(v) for v in self.table))
            if len(self.table) != self.d**self.n:
                raise ValueError(f"table length {len(self.table)} != d^n = {self.d ** self.n}")
            return
        linear = tuple(float(v) for v in (self.linear if self.linear is not None else (0.0,) * self.n))
        if len(linear) != self.n:
            raise ValueError(f"linear coefficient count {len(linear)} != n = {self.n}")
        object.__setattr__(self, "linear", linear)
        quadratic = {}
        for (i, j), v in (self.quadratic or {}).items():
            if not (1 <= i <= j <= self.n):
                raise ValueError(f"quadratic index pair ({i}, {j}) violates 1 <= i <= j <= {self.n}")
            quadratic[(int(i), int(j))] = float(v)
        object.__setattr__(self, "quadratic", quadratic)

    @property
    def is_table(self) -> bool:
        return self.table is not None

    def values(self) -> np.ndarray:
        """F evaluated on every string, in index order."""
        if self.table is not None:
            return np.array(self.table, dtype=np.float64)
        digits = digit_strings(self.n, self.d).astype(np.float64)
        vals = np.full(self.d**self.n, self.constant, dtype=np.float64)
        vals += digits @ np.array(self.linear)
        for (i, j), a in self.quadratic.items():
            vals += a * digits[:, i - 1] * digits[:, j - 1]
        return vals


@dataclass(frozen=True)
class ZForm:
    """Pauli-Z expansion of a binary quadratic objective (d = 2 only)."""

    constant: float
    linear: tuple[float, ...]
    quadratic: dict[tuple[int, int], float]


@dataclass(frozen=True)
class BlockStructure:
    """Basis indices grouped by diagonal eigenvalue, ascending."""

    t: int
    blocks: dict[float, list[int]]

    def index_groups(self) -> list[tuple[int, ...]]:
        return [tuple(ix) for ix in self.blocks.values()]


def problem_hamiltonian(spec: ProblemSpec) -> Operator:
    """Diagonal operator with entry F(x) at string x."""
    return Operator(spec.n, spec.d, np.diag(spec.values().astype(np.complex128)))


def z_form(spec: ProblemSpec) -> ZForm:
    """Rewrite a d=2 coefficient objective over Z_k = diag(1, -1) factors.

    Uses x = (1 - Z)/2 per site; the diagonal quadratic terms alpha_ii x_i^2
    collapse to linear ones since x^2 = x on bits.
    """
    if spec.d != 2:
        raise UnsupportedDimensionError(f"Z expansion is defined for d=2, got d={spec.d}")
    if spec.is_table:
        raise ValueError("Z expansion needs the coefficient form, not a value table")
    n = spec.n
    const = spec.constant + sum(spec.linear) / 2.0
    lin = [-b / 2.0 for b in spec.linear]
    quad: dict[tuple[int, int], float] = {}
    for (i, j), a in spec.quadratic.items():
        if i == j:
            const += a / 2.0
            lin[i - 1] -= a / 2.0
        else:
            const += a / 4.0
            lin[i - 1] -= a / 4.0
            lin[j - 1] -= a / 4.0
            quad[(i, j)] = quad.get((i, j), 0.0) + a / 4.0
    return ZForm(constant=const, linear=tuple(lin), quadratic=quad)


def z_form_values(zf: ZForm, n: int) -> np.ndarray:
    """Per-string eigenvalues of the Z expansion without its constant.

    String b contributes +linear_i when b_i = 0 and -linear_i when b_i = 1,
    and +quadratic_ij when b_i = b_j, -quadratic_ij otherwise.
    """
    signs = 1.0 - 2.0 * digit_strings(n, 2).astype(np.float64)
    vals = signs @ np.array(zf.linear)
    for (i, j), a in zf.quadratic.items():
        vals += a * signs[:, i - 1] * signs[:, j - 1]
    return vals


def eigenvalue_blocks(H: Operator, tol: float = BLOCK_TOL) -> BlockStructure:
    """Group basis indices by diagonal value; eigenvalues ascend across blocks."""
    diag = H.diagonal()
    order = np.argsort(diag, kind="stable")
    blocks: dict[float, list[int]] = {}
    current: list[int] = [int(order[0])]
    rep = float(diag[order[0]])
    for idx in order[1:]:
        if diag[idx] - diag[current[-1]] > tol:
            blocks[rep] = sorted(current)
            current, rep = [], float(diag[idx])
        current.append(int(idx))
    blocks[rep] = sorted(current)
    return BlockStructure(t=len(blocks), blocks=blocks)


def block_commutant_check(H: Operator, U: Operator) -> float:
    """Max-abs entry of the commutator U H - H U."""
    H._require_same_space(U)
    return float(np.max(np.abs(U.matrix @ H.matrix - H.matrix @ U.matrix)))


def cycle_adjacency(d: int) -> np.ndarray:
    """Adjacency matrix of the d-cycle on local levels: 1 where b = a +- 1 mod d.

    For d = 2 the two neighbor relations coincide, so this is Pauli X rather
    than the doubled 2X that a literal shift-plus-adjoint sum would give.
    """
    adj = np.zeros((d, d), dtype=np.complex128)
    for a in range(d):
        adj[(a + 1) % d, a] = 1.0
        adj[(a - 1) % d, a] = 1.0
    return adj


def standard_mixer(n: int, d: int) -> Operator:
    """Negated sum over sites of the local cycle adjacency.

    Its unique ground state is the uniform superposition; for d = 2 it is
    the conventional -sum_j X_j.
    """
    dim = d**n
    mat = np.zeros((dim, dim), dtype=np.complex128)
    adj = cycle_adjacency(d)
    for j in range(1, n + 1):
        mat -= site_lift(n, d, j, adj).matrix
    return Operator(n, d, mat)


def tau_site(d: int) -> np.ndarray:
    """Traceless local ladder diag(k - (d-1)/2), k = 0..d-1, unit steps."""
    if d < 2:
        raise ValueError(f"need d >= 2, got {d}")
    return np.diag(np.arange(d) - (d - 1) / 2.0).astype(np.complex128)


def tau_total(n: int, d: int) -> Operator:
    """Sum over sites of the local ladder; diagonal weight operator on W."""
    dim = d**n
    mat = np.zeros((dim, dim), dtype=np.complex128)
    for j in range(1, n + 1):
        mat += site_lift(n, d, j, tau_site(d)).matrix
    return Operator(n, d, mat)


def default_epsilon(n: int, d: int) -> float:
    return 1.0 / (n * d)


def mixer_yjm_terms(shape: Partition | Sequence[int]) -> list[tuple[int, int]]:
    """(index, shift) pairs (m_i, lambda_i - i) defining the squared YJM terms."""
    shape = as_partition(shape)
    terms, total = [], 0
    for i, part in enumerate(shape, start=1):
        total += part
        terms.append((total, part - i))
    return terms


def reduced_mixer(shape: Partition | Sequence[int], n: int, d: int, epsilon: float) -> Operator:
    """Sector mixer: squared shifted YJM elements plus an epsilon ladder term.

    The squared part vanishes exactly on the canonical-tableau direction of
    the sector `shape`; the ladder term, with 0 < epsilon < 2/(n d), breaks
    the remaining degeneracy towards the lowest-weight vector without
    closing the integer gap of the squared part.
    """
    shape = as_partition(shape)
    if shape.n != n:
        raise SectorInadmissibleError(f"shape {shape} is not a partition of n={n}")
    if len(shape) > d:
        raise SectorInadmissibleError(f"shape {shape} has more than d={d} parts")
    if not 0.0 < epsilon < 2.0 / (n * d):
        raise ValueError(f"epsilon={epsilon} outside (0, {2.0 / (n * d)})")
    dim = d**n
    eye = np.eye(dim, dtype=np.complex128)
    mat = np.zeros((dim, dim), dtype=np.complex128)
    for m, shift in mixer_yjm_terms(shape):
        term = tensor_ops.yjm(n, d, m).matrix - shift * eye
        mat += term @ term
    mat += epsilon * tau_total(n, d).matrix
    return Operator(n, d, mat)
