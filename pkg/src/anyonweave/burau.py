r"""Reduced Burau representation of the braid group with Squier's Hermitian form.

Matrices act on column vectors: column ``j`` of a generator holds the image of
basis vector ``j``. The sesquilinear pairing of two coordinate vectors is
``x.conj() @ G @ y``, conjugate-linear in the first slot.

Two bases are supported. The standard basis :math:`E_1, \dots, E_{n-1}` and the
orthogonal basis

.. math:: f_j = \sum_{r=1}^{j} (1 + s^2 + \dots + s^{2r-2}) E_r .
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DegenerateBasis, IndexOutOfRange, SingularChangeOfBasis
from .scalar import q_pow

Basis = Literal["E", "f"]

_DEGEN_TOL = 1e-12


@dataclass(frozen=True)
class BurauSpace:
    """Burau module of ``Br_n`` at parameter `s`.

    Parameters
    ----------
    n : int
        Number of strands, at least 2.
    s : complex
        Burau parameter. Hermitian statements need ``|s| = 1``.
    basis : {"E", "f"}
        Coordinate system in which matrices are returned.
    """

    n: int
    s: complex
    basis: Basis = "E"

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"need n >= 2 strands, got {self.n}")
        if self.basis not in ("E", "f"):
            raise ValueError(f"basis must be 'E' or 'f', got {self.basis!r}")
        object.__setattr__(self, "s", complex(self.s))

    @classmethod
    def from_angle(cls, n: int, theta: float, basis: Basis = "E") -> "BurauSpace":
        """Space at ``s = exp(i theta)``."""
        return cls(n, complex(np.exp(1j * theta)), basis)

    @classmethod
    def from_alpha(cls, n: int, alpha: float, basis: Basis = "E") -> "BurauSpace":
        """Space at ``s = i q^alpha``, the point matching the fusion spaces with k = n-3."""
        return cls(n, 1j * q_pow(alpha), basis)

    @property
    def dim(self) -> int:
        return self.n - 1

    @property
    def is_unitary_point(self) -> bool:
        return abs(abs(self.s) - 1.0) < 1e-12

    def with_basis(self, basis: Basis) -> "BurauSpace":
        return BurauSpace(self.n, self.s, basis)


def _check_index(space: BurauSpace, i: int) -> None:
    if not 1 <= i <= space.n - 1:
        raise IndexOutOfRange(f"generator index {i} outside 1..{space.n - 1}")


def burau_generator_E(space: BurauSpace, i: int) -> np.ndarray:
    """Matrix of ``sigma_i`` in the E-basis, regardless of ``space.basis``."""
    _check_index(space, i)
    m = space.n - 1
    s2inv = space.s ** -2
    M = np.eye(m, dtype=complex)
    a = i - 1
    M[a, a] = -s2inv
    if a - 1 >= 0:
        M[a, a - 1] = 1.0
    if a + 1 < m:
        M[a, a + 1] = s2inv
    return M


def fbasis_matrix(space: BurauSpace) -> np.ndarray:
    """Matrix whose columns are the f-basis vectors in E-coordinates.

    Raises
    ------
    DegenerateBasis
        If ``s**2 == 1``, where the f-vectors stop spanning.
    """
    s2 = space.s ** 2
    if abs(s2 - 1) < _DEGEN_TOL:
        raise DegenerateBasis("s^2 = 1: the f-basis is degenerate")
    m = space.n - 1
    coeff = np.cumsum(s2 ** np.arange(m))  # coeff[r] = 1 + s^2 + ... + s^{2r}
    P = np.zeros((m, m), dtype=complex)
    for j in range(m):
        P[: j + 1, j] = coeff[: j + 1]
    if abs(np.prod(np.diag(P))) < _DEGEN_TOL:
        raise DegenerateBasis("f-basis change is singular at this s")
    return P


def fbasis_change(space: BurauSpace) -> np.ndarray:
    """Matrix sending E-coordinates to f-coordinates (inverse of :func:`fbasis_matrix`)."""
    return np.linalg.inv(fbasis_matrix(space))


def x_block(s: complex, i: int) -> np.ndarray:
    """The 2x2 change of basis ``X_i`` diagonalizing ``sigma_i`` on ``(f_{i-1}, f_i)``."""
    return np.array(
        [
            [s ** (i + 2) - s**i, s ** (2 * i + 2) - 1],
            [s**i - s ** (i + 2), s ** (2 * i) - s**2],
        ],
        dtype=complex,
    )


def burau_generator_f(space: BurauSpace, i: int) -> np.ndarray:
    """Matrix of ``sigma_i`` in the f-basis, assembled from the ``X_i D_B X_i^{-1}`` block.

    The generator is the identity away from ``(f_{i-1}, f_i)``. For ``i = 1`` the
    vector ``f_0`` does not exist and only the lower-right block entry survives.

    Raises
    ------
    SingularChangeOfBasis
        If ``X_i`` is not invertible at this `s`.
    """
    _check_index(space, i)
    s = space.s
    X = x_block(s, i)
    det = np.linalg.det(X)
    if abs(det) < _DEGEN_TOL:
        raise SingularChangeOfBasis(f"X_{i} is singular at s={s}")
    block = X @ np.diag([-(s**-2), 1.0]) @ np.linalg.inv(X)
    m = space.n - 1
    M = np.eye(m, dtype=complex)
    idx = [i - 2, i - 1]
    for r in range(2):
        for c in range(2):
            if idx[r] >= 0 and idx[c] >= 0:
                M[idx[r], idx[c]] = block[r, c]
    return M


def burau_generator(space: BurauSpace, i: int) -> np.ndarray:
    """Generator in the basis selected by ``space.basis``."""
    if space.basis == "E":
        return burau_generator_E(space, i)
    return burau_generator_f(space, i)


def squier_form(space: BurauSpace) -> np.ndarray:
    """Gram matrix of Squier's pairing in ``space.basis``.

    Tridiagonal in the E-basis; diagonal in the f-basis, where entry ``i`` is
    ``s^{1-2i} (1 - s^{2i})(1 - s^{2i+2}) / (1 - s^2)^2``.
    """
    s = space.s
    m = space.n - 1
    if space.basis == "f":
        i = np.arange(1, m + 1)
        if abs(1 - s**2) < _DEGEN_TOL:
            raise DegenerateBasis("s^2 = 1: the f-basis is degenerate")
        vals = s ** (1 - 2 * i) * (1 - s ** (2 * i)) * (1 - s ** (2 * i + 2)) / (1 - s**2) ** 2
        return np.diag(vals.astype(complex))
    G = np.zeros((m, m), dtype=complex)
    for a in range(m):
        G[a, a] = s + 1 / s
        if a + 1 < m:
            G[a, a + 1] = -(s**-1)
            G[a + 1, a] = -s
    return G


def verify_squier_unitarity(space: BurauSpace) -> float:
    """Largest ``||sigma_i^H G sigma_i - G||`` (Frobenius) over all generators."""
    G = squier_form(space)
    worst = 0.0
    for i in range(1, space.n):
        S = burau_generator(space, i)
        worst = max(worst, float(np.linalg.norm(S.conj().T @ G @ S - G)))
    return worst


def braid_relation_residual(space: BurauSpace) -> float:
    """Largest residual of the braid and far-commutation relations."""
    gens = [burau_generator(space, i) for i in range(1, space.n)]
    worst = 0.0
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            A, B = gens[a], gens[b]
            if b == a + 1:
                r = A @ B @ A - B @ A @ B
            else:
                r = A @ B - B @ A
            worst = max(worst, float(np.linalg.norm(r)))
    return worst
