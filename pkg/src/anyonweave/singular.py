r"""The two-dimensional braid representation from the singular module :math:`V_0`.

Here ``alpha = 0``, so ``E v_1 = v_0`` and ``H = diag(1, -1)``. The projective
cover :math:`P_0` has basis ``(w^R, w^H, w^S, w^L)`` of weights ``(2, 0, 0, -2)``
and is identified with :math:`V_0 \otimes V_0` through :func:`phi_iso`.

Tensor coordinates follow :mod:`anyonweave.oracle`: ``v_a (x) v_b`` has index
``2a + b`` and ``v_a (x) v_b (x) v_c`` has index ``4a + 2b + c``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import DimensionMismatch
from .oracle import tensor_action, tensor_braiding, v_alpha_action
from .scalar import mod_dim, q_pow

Q = complex(q_pow(1))
QH = complex(q_pow(0.5))
P0_LABELS = ("R", "H", "S", "L")


def _coproduct_action(n: int) -> dict[str, np.ndarray]:
    return tensor_action(v_alpha_action(0.0), n)


def phi_iso() -> np.ndarray:
    """Matrix of the isomorphism ``V_0 (x) V_0 -> P_0``.

    ``v0v0 -> w^R``, ``v1v1 -> w^L``, ``v0v1 -> w^H``, ``v1v0 -> w^S + q w^H``.
    """
    phi = np.zeros((4, 4), dtype=complex)
    phi[0, 0] = 1  # v0 v0
    phi[1, 1] = 1  # v0 v1
    phi[2, 2] = 1  # v1 v0 -> w^S
    phi[1, 2] = Q  #        + q w^H
    phi[3, 3] = 1  # v1 v1
    return phi


@dataclass(frozen=True)
class P0Action:
    """``H, E, F, K`` on ``P_0`` in the basis ``(w^R, w^H, w^S, w^L)``."""

    H: np.ndarray
    E: np.ndarray
    F: np.ndarray
    K: np.ndarray

    @property
    def weights(self) -> np.ndarray:
        return np.diag(self.H).real


def p0_action() -> P0Action:
    """Transport the coproduct action on ``V_0 (x) V_0`` to ``P_0`` along :func:`phi_iso`."""
    phi = phi_iso()
    phi_inv = np.linalg.inv(phi)
    ops = _coproduct_action(2)
    return P0Action(*(phi @ ops[g] @ phi_inv for g in ("H", "E", "F", "K")))


def x_map_p0() -> np.ndarray:
    """The nilpotent endomorphism ``x: w^H -> w^S`` of ``P_0``."""
    x = np.zeros((4, 4), dtype=complex)
    x[2, 1] = 1
    return x


def x_map() -> np.ndarray:
    """``x`` transported to ``V_0 (x) V_0``."""
    phi = phi_iso()
    return np.linalg.inv(phi) @ x_map_p0() @ phi


def pi_maps() -> tuple[np.ndarray, np.ndarray]:
    """The two morphisms ``V_0 -> V_0^{(x)3}`` as ``8 x 2`` matrices."""
    qi = 1 / Q
    p1 = np.zeros((8, 2), dtype=complex)
    p1[0b100, 0], p1[0b010, 0] = 1, qi
    p1[0b101, 1], p1[0b011, 1] = 1, qi
    p2 = np.zeros((8, 2), dtype=complex)
    p2[0b010, 0], p2[0b001, 0] = 1, qi
    p2[0b110, 1], p2[0b101, 1] = 1, qi
    return p1, p2


def pi_dagger_maps() -> tuple[np.ndarray, np.ndarray]:
    """The adjoint morphisms ``V_0^{(x)3} -> V_0`` as ``2 x 8`` matrices, from their value tables."""
    d1 = np.zeros((2, 8), dtype=complex)
    d1[0, 0b100], d1[0, 0b010] = Q, 1
    d1[1, 0b101], d1[1, 0b011] = Q, 1
    d2 = np.zeros((2, 8), dtype=complex)
    d2[0, 0b010], d2[0, 0b001] = Q, 1
    d2[1, 0b110], d2[1, 0b101] = Q, 1
    return d1, d2


def sing_sigma(i: int) -> np.ndarray:
    """Braid generator ``sigma_i`` (``i`` in ``{1, 2}``) on ``Span(pi_1, pi_2)``."""
    if i == 1:
        return QH * np.array([[1, -Q], [0, 1]], dtype=complex)
    if i == 2:
        return QH * np.array([[1, 0], [-Q, 1]], dtype=complex)
    raise ValueError("the singular qubit only has generators 1 and 2")


def sing_sigma_from_tensor(i: int) -> tuple[np.ndarray, float]:
    """Generator obtained by applying the R-matrix braiding to ``pi_1, pi_2``.

    Returns the 2x2 matrix in the ``(pi_1, pi_2)`` basis and the residual of the
    least-squares fit, which is zero when the span is invariant.
    """
    p1, p2 = pi_maps()
    C = tensor_braiding(0.0, 3, i)
    # stack the two components of each morphism as one column
    basis = np.stack([p1.ravel(order="F"), p2.ravel(order="F")], axis=1)
    images = np.stack([(C @ p1).ravel(order="F"), (C @ p2).ravel(order="F")], axis=1)
    coeffs, *_ = np.linalg.lstsq(basis, images, rcond=None)
    return coeffs, float(np.linalg.norm(basis @ coeffs - images))


def pairing() -> np.ndarray:
    """Hermitian form ``B = d(V_0) [[0, 1], [1, 0]]`` on ``Span(pi_1, pi_2)``."""
    return mod_dim(0.0) * np.array([[0, 1], [1, 0]], dtype=complex)


def sing_dim(n: int) -> int:
    """Dimension ``C(2n, n)`` of ``Hom(V_0, V_0^{(x)(2n+1)})``.

    For ``n <= 2`` the intertwiner equations are also solved directly and
    compared.

    Raises
    ------
    DimensionMismatch
        If the direct solve disagrees with the binomial.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    expected = comb(2 * n, n)
    if n <= 2:
        got = intertwiner_dim(2 * n + 1)
        if got != expected:
            raise DimensionMismatch(f"Hom(V_0, V_0^(x){2 * n + 1}) has dim {got}, expected {expected}")
    return expected


def intertwiner_dim(m: int, rtol: float = 1e-9) -> int:
    """Dimension of ``Hom(V_0, V_0^{(x)m})`` from the kernel of the commutation system."""
    big = _coproduct_action(m)
    small = _coproduct_action(1)
    N = 2**m
    rows = []
    for g in ("H", "E", "F", "K"):
        # T X - X rho = 0  <=>  (I (x) T - rho^T (x) I) vec(X) = 0
        rows.append(np.kron(np.eye(2), big[g]) - np.kron(small[g].T, np.eye(N)))
    A = np.vstack(rows)
    s = np.linalg.svd(A, compute_uv=False)
    rank = int(np.sum(s > rtol * s.max()))
    return A.shape[1] - rank


def intertwiner_residual(M: np.ndarray, m: int) -> float:
    """How far an ``2^m x 2`` matrix is from commuting with the algebra action."""
    big = _coproduct_action(m)
    small = _coproduct_action(1)
    return max(float(np.linalg.norm(big[g] @ M - M @ small[g])) for g in ("H", "E", "F", "K"))


def x_tensor_id() -> np.ndarray:
    """``x (x) Id`` on ``V_0^{(x)3}``."""
    return np.kron(x_map(), np.eye(2))
