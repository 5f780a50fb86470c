"""Truncated two-mode boson Fock bases and the operator matrices built on them.

States |n1, n2> are kept inside a box 0 <= n1, n2 <= cutoff.  Transitions that
would leave the box are dropped, which is the usual Fock truncation; exactness
is recovered downstream by keeping element supports two steps away from the
cutoff in each mode.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import BasisMismatchError, ConfigurationError

__all__ = [
    "FockIndex",
    "TruncatedBasis",
    "MatrixOperator",
    "build_basis",
    "ladder_matrix",
    "position_momentum_matrix",
    "commutator",
]

HERMITICITY_TOL = 1e-12


@dataclass(frozen=True, order=True)
class FockIndex:
    """Occupation numbers (n1, n2) of one basis state."""

    n1: int
    n2: int

    def __post_init__(self):
        if self.n1 < 0 or self.n2 < 0:
            raise ConfigurationError(f"occupation numbers must be >= 0, got {self}")


@dataclass(frozen=True)
class TruncatedBasis:
    """Box-truncated basis with row-major ordering in (n1, n2).

    The state |n1, n2> sits at ordinal n1 * (cutoff + 1) + n2, so for
    cutoff 1 the ordering is (0,0), (0,1), (1,0), (1,1).
    """

    cutoff: int

    def __post_init__(self):
        if self.cutoff < 1:
            raise ConfigurationError(
                "cutoff must be >= 1; a 1x1 box cannot represent any commutator"
            )

    @property
    def dimension(self) -> int:
        return (self.cutoff + 1) ** 2

    def ordinal(self, index: FockIndex) -> int:
        if index.n1 > self.cutoff or index.n2 > self.cutoff:
            raise ConfigurationError(f"{index} outside box cutoff {self.cutoff}")
        return index.n1 * (self.cutoff + 1) + index.n2

    def state(self, ordinal: int) -> FockIndex:
        if not 0 <= ordinal < self.dimension:
            raise ConfigurationError(f"ordinal {ordinal} outside [0, {self.dimension})")
        return FockIndex(*divmod(ordinal, self.cutoff + 1))

    def states(self) -> list[FockIndex]:
        return [self.state(i) for i in range(self.dimension)]


@dataclass(frozen=True, eq=False)
class MatrixOperator:
    """Dense complex matrix acting on a truncated Fock basis."""

    basis: TruncatedBasis
    entries: np.ndarray

    def __post_init__(self):
        d = self.basis.dimension
        if self.entries.shape != (d, d):
            raise ConfigurationError(
                f"entries shape {self.entries.shape} does not match basis dimension {d}"
            )

    def adjoint(self) -> "MatrixOperator":
        return MatrixOperator(self.basis, self.entries.conj().T)

    def is_hermitian(self, tol: float = HERMITICITY_TOL) -> bool:
        return bool(np.max(np.abs(self.entries - self.entries.conj().T)) <= tol)


def build_basis(cutoff: int) -> TruncatedBasis:
    """Basis of dimension (cutoff + 1)^2 with deterministic row-major ordering."""
    return TruncatedBasis(cutoff)


def ladder_matrix(basis: TruncatedBasis, mode: int, dagger: bool = False) -> MatrixOperator:
    """Annihilation (or creation) matrix for one mode.

    a1 |n1,n2> = sqrt(n1) |n1-1,n2> and likewise for mode 2; the dagger matrix
    is exactly the conjugate transpose of the non-dagger one, so the raising
    transition out of the box is dropped.
    """
    if mode not in (1, 2):
        raise ConfigurationError(f"mode must be 1 or 2, got {mode}")
    n = basis.cutoff + 1
    a = np.zeros((basis.dimension, basis.dimension), dtype=complex)
    for n1 in range(n):
        for n2 in range(n):
            src = n1 * n + n2
            if mode == 1 and n1 >= 1:
                a[(n1 - 1) * n + n2, src] = np.sqrt(n1)
            elif mode == 2 and n2 >= 1:
                a[n1 * n + (n2 - 1), src] = np.sqrt(n2)
    if dagger:
        a = a.conj().T
    return MatrixOperator(basis, a)


def position_momentum_matrix(basis: TruncatedBasis, axis: str, hbar: float) -> MatrixOperator:
    """Hermitian coordinate matrix: x_i = sqrt(hbar/2)(a_i + a_i^dag),
    p_i = -i sqrt(hbar/2)(a_i - a_i^dag)."""
    if hbar <= 0:
        raise ConfigurationError(f"hbar must be positive, got {hbar}")
    if axis not in ("x1", "x2", "p1", "p2"):
        raise ConfigurationError(f"axis must be one of x1, x2, p1, p2, got {axis!r}")
    mode = int(axis[1])
    a = ladder_matrix(basis, mode).entries
    if axis[0] == "x":
        m = np.sqrt(hbar / 2) * (a + a.conj().T)
    else:
        m = -1j * np.sqrt(hbar / 2) * (a - a.conj().T)
    return MatrixOperator(basis, m)


def commutator(a: MatrixOperator, b: MatrixOperator) -> MatrixOperator:
    """AB - BA on a shared basis."""
    if a.basis != b.basis:
        raise BasisMismatchError(
            f"operators live on different bases (cutoffs {a.basis.cutoff}, {b.basis.cutoff})"
        )
    return MatrixOperator(a.basis, a.entries @ b.entries - b.entries @ a.entries)
