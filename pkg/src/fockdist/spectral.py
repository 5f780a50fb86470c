"""Dirac operator, commutator block, operator norms and the ball condition.

The Dirac operator acts on four copies of the truncated Fock space.  For a
Hermitian algebra element e the commutator [D, pi(e)] is block off-diagonal,

    [D, pi(e)] = sqrt(2/hbar) [[0, D1], [-D1^dag, 0]],

    D1 = [[ [a2,e]^dag, [a1,e]^dag ],
          [ [a1,e],    -[a2,e]     ]],

so the operator norm of the full commutator reduces to the norm of D1:
||[D, pi(e)]||^2 = (2/hbar) ||D1||^2.  The ball condition for the distance
supremum is ball_norm(e) <= 1 with ball_norm = sqrt(2/hbar) ||D1||_op.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .exceptions import (
    ConfigurationError,
    NonHermitianError,
    TruncationWarning,
)
from .fock import (
    HERMITICITY_TOL,
    MatrixOperator,
    TruncatedBasis,
    commutator,
    ladder_matrix,
    position_momentum_matrix,
)

__all__ = [
    "GammaSet",
    "DiracBlock",
    "PhaseSpaceParams",
    "PhaseSpaceReport",
    "build_gammas",
    "dirac_operator",
    "d1_block",
    "operator_norm",
    "ball_norm",
    "support_indices",
    "support_margin_ok",
    "verify_phase_space_rep",
]


@dataclass(frozen=True, eq=False)
class GammaSet:
    """Four Hermitian 4x4 matrices with gamma^k gamma^l + gamma^l gamma^k = 2 delta_kl."""

    gamma1: np.ndarray
    gamma2: np.ndarray
    gamma3: np.ndarray
    gamma4: np.ndarray

    def as_tuple(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return (self.gamma1, self.gamma2, self.gamma3, self.gamma4)


def build_gammas() -> GammaSet:
    """The fixed Euclidean Clifford representation used throughout."""
    i = 1j
    g1 = np.array([[0, 0, 0, i], [0, 0, i, 0], [0, -i, 0, 0], [-i, 0, 0, 0]])
    g2 = np.array([[0, 0, 0, 1], [0, 0, -1, 0], [0, -1, 0, 0], [1, 0, 0, 0]], dtype=complex)
    g3 = np.array([[0, 0, i, 0], [0, 0, 0, -i], [-i, 0, 0, 0], [0, i, 0, 0]])
    g4 = np.array([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]], dtype=complex)
    return GammaSet(g1, g2, g3, g4)


def dirac_operator(basis: TruncatedBasis, hbar: float) -> np.ndarray:
    """Dense Dirac operator on the 4-fold space, Hermitian at every cutoff.

    Block layout (rows/columns are the four spinor slots):

        sqrt(2/hbar) [[0,    0,    -a2^dag, -a1^dag],
                      [0,    0,     a1,     -a2    ],
                      [-a2,  a1^dag, 0,      0     ],
                      [-a1, -a2^dag, 0,      0     ]]
    """
    if hbar <= 0:
        raise ConfigurationError(f"hbar must be positive, got {hbar}")
    a1 = ladder_matrix(basis, 1).entries
    a2 = ladder_matrix(basis, 2).entries
    z = np.zeros_like(a1)
    return np.sqrt(2.0 / hbar) * np.block(
        [
            [z, z, -a2.conj().T, -a1.conj().T],
            [z, z, a1, -a2],
            [-a2, a1.conj().T, z, z],
            [-a1, -a2.conj().T, z, z],
        ]
    )


@dataclass(frozen=True, eq=False)
class DiracBlock:
    """The 2x2 commutator block D1 for one algebra element.

    Stores [a1, e] and [a2, e]; `assembled` lays them out as

        [[ [a2,e]^dag, [a1,e]^dag ],
         [ [a1,e],    -[a2,e]     ]].
    """

    basis: TruncatedBasis
    comm1: np.ndarray = field(repr=False)
    comm2: np.ndarray = field(repr=False)

    @property
    def assembled(self) -> np.ndarray:
        return np.block(
            [
                [self.comm2.conj().T, self.comm1.conj().T],
                [self.comm1, -self.comm2],
            ]
        )


def d1_block(basis: TruncatedBasis, e: MatrixOperator) -> DiracBlock:
    """Build D1(e) for a Hermitian element; linear in e."""
    if e.basis != basis:
        raise ConfigurationError("element was built on a different basis")
    if not e.is_hermitian():
        raise NonHermitianError(
            f"element must be Hermitian within {HERMITICITY_TOL}; "
            "the distance supremum is attained on Hermitian elements"
        )
    a1 = ladder_matrix(basis, 1)
    a2 = ladder_matrix(basis, 2)
    return DiracBlock(basis, commutator(a1, e).entries, commutator(a2, e).entries)


def operator_norm(a) -> float:
    """Largest singular value, via the top eigenvalue of A^dag A."""
    m = a.entries if isinstance(a, MatrixOperator) else np.asarray(a)
    if m.size == 0:
        return 0.0
    w = np.linalg.eigvalsh(m.conj().T @ m)
    return float(np.sqrt(max(w[-1], 0.0)))


def support_indices(e: MatrixOperator, tol: float = 0.0) -> list[tuple[int, int]]:
    """Occupation pairs (n1, n2) of every state the element touches."""
    mask = np.abs(e.entries) > tol
    involved = np.where(mask.any(axis=0) | mask.any(axis=1))[0]
    return [(s.n1, s.n2) for s in (e.basis.state(int(i)) for i in involved)]


def support_margin_ok(e: MatrixOperator) -> bool:
    """True when every supported state keeps two steps of headroom per mode.

    [a_i, e] shifts support by one step and D1^dag D1 by two, so a margin of
    two makes ball_norm truncation-exact.
    """
    limit = e.basis.cutoff - 2
    return all(n1 <= limit and n2 <= limit for n1, n2 in support_indices(e))


def ball_norm(basis: TruncatedBasis, e: MatrixOperator, hbar: float) -> float:
    """||[D, pi(e)]||_op via the D1 reduction; ball membership is value <= 1.

    Emits a TruncationWarning when the support margin is violated, in which
    case the value may carry truncation error.
    """
    if hbar <= 0:
        raise ConfigurationError(f"hbar must be positive, got {hbar}")
    if not support_margin_ok(e):
        warnings.warn(
            f"support exceeds cutoff-2 in some mode (cutoff {basis.cutoff}); "
            "ball norm is not truncation-exact",
            TruncationWarning,
            stacklevel=2,
        )
    return float(np.sqrt(2.0 / hbar) * operator_norm(d1_block(basis, e).assembled))


@dataclass(frozen=True)
class PhaseSpaceParams:
    """Extended phase-space parameters; needs mu * nu <= hbar^2."""

    hbar: float
    mu: float
    nu: float

    def __post_init__(self):
        if self.hbar <= 0:
            raise ConfigurationError(f"hbar must be positive, got {self.hbar}")
        if self.mu * self.nu > self.hbar**2:
            raise ConfigurationError(
                f"mu*nu = {self.mu * self.nu} exceeds hbar^2 = {self.hbar**2}"
            )


@dataclass(frozen=True)
class PhaseSpaceReport:
    """Worst deviations of the represented commutators from their targets."""

    deviations: dict[str, float]

    @property
    def max_deviation(self) -> float:
        return max(self.deviations.values())

    def passed(self, tol: float = 1e-12) -> bool:
        return self.max_deviation <= tol


def verify_phase_space_rep(basis: TruncatedBasis, params: PhaseSpaceParams) -> PhaseSpaceReport:
    """Check the extended phase-space algebra in the superoperator representation.

    Position and momentum act by left multiplication; the partner operators
    mix left and right multiplication,

        Y_i = (mu/hbar) L[p_i] + (s/hbar) R[p_i],
        Q_i = -(nu/hbar) L[x_i] + (s/hbar) R[x_i],   s = sqrt(hbar^2 - mu nu),

    on the vectorized matrix space.  All commutators are evaluated on matrix
    units |a><b| whose four occupation numbers stay below the cutoff, where
    truncation cannot contribute.
    """
    hbar, mu, nu = params.hbar, params.mu, params.nu
    dim = basis.dimension
    n = basis.cutoff + 1
    eye = np.eye(dim)

    def left(m):
        return np.kron(m, eye)

    def right(m):
        return np.kron(eye, m.T)

    x = [position_momentum_matrix(basis, f"x{i}", hbar).entries for i in (1, 2)]
    p = [position_momentum_matrix(basis, f"p{i}", hbar).entries for i in (1, 2)]
    s = np.sqrt(hbar**2 - mu * nu)
    X = [left(m) for m in x]
    P = [left(m) for m in p]
    Y = [(mu / hbar) * left(m) + (s / hbar) * right(m) for m in p]
    Q = [-(nu / hbar) * left(m) + (s / hbar) * right(m) for m in x]

    interior = [
        a1 * n + a2
        for a1 in range(basis.cutoff)
        for a2 in range(basis.cutoff)
    ]
    cols = np.array([r * dim + c for r in interior for c in interior])

    def deviation(op, target):
        block = op[:, cols]
        expect = np.zeros_like(block)
        expect[cols, np.arange(len(cols))] = target
        return float(np.max(np.abs(block - expect)))

    def comm(a, b):
        return a @ b - b @ a

    out: dict[str, float] = {}
    families = {
        "[X,P]": (X, P, 1j * hbar),
        "[Y,Q]": (Y, Q, 1j * hbar),
        "[X,Y]": (X, Y, 1j * mu),
        "[P,Q]": (P, Q, 1j * nu),
        "[X,X]": (X, X, 0.0),
        "[P,P]": (P, P, 0.0),
        "[Y,Y]": (Y, Y, 0.0),
        "[Q,Q]": (Q, Q, 0.0),
        "[X,Q]": (X, Q, 0.0),
        "[Y,P]": (Y, P, 0.0),
    }
    for name, (lhs, rhs, coeff) in families.items():
        worst = 0.0
        for i in range(2):
            for j in range(2):
                target = coeff if i == j else 0.0
                worst = max(worst, deviation(comm(lhs[i], rhs[j]), target))
        out[name] = worst
    return PhaseSpaceReport(out)
