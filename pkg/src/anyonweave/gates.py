"""Target gates, projective distances on 2x2 unitaries, and the two qubit braid models."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from .errors import UnknownGate
from .fusion import FusionSpace, orthonormal_generator

Metric = Literal["opnorm", "trace", "raw"]


@dataclass(frozen=True)
class Gate:
    name: str
    matrix: np.ndarray


_S5 = 1 / np.sqrt(5)
_GATES = {
    "iX": np.array([[0, 1j], [1j, 0]]),
    "iZ": np.array([[1j, 0], [0, -1j]]),
    "T": np.diag([1, np.exp(1j * np.pi / 4)]),
    "H": np.array([[1, 1], [1, -1]]) / np.sqrt(2),
    "Vx": _S5 * np.array([[1 + 2j, 0], [0, 1 - 2j]]),
    "Vy": _S5 * np.array([[1, 2], [-2, 1]]),
    "Vz": _S5 * np.array([[1, 2j], [2j, 1]]),
}
GATE_NAMES = tuple(_GATES)


def gate(name: str) -> Gate:
    """Look up a target gate by name (``iX iZ T H Vx Vy Vz``)."""
    try:
        M = _GATES[name]
    except KeyError:
        raise UnknownGate(f"unknown gate {name!r}; choose from {', '.join(GATE_NAMES)}") from None
    return Gate(name, M.astype(complex))


@dataclass(frozen=True)
class AnyonModel:
    """A pair of 2x2 unitary braid generators with a descriptive tag."""

    tag: str
    sigma1: np.ndarray
    sigma2: np.ndarray

    def generator(self, g: int) -> np.ndarray:
        return self.sigma1 if g == 1 else self.sigma2

    def braid_residual(self) -> float:
        s1, s2 = self.sigma1, self.sigma2
        return float(np.linalg.norm(s1 @ s2 @ s1 - s2 @ s1 @ s2))

    def unitarity_residual(self) -> float:
        I = np.eye(2)
        return max(float(np.linalg.norm(s.conj().T @ s - I)) for s in (self.sigma1, self.sigma2))


def fibonacci_model() -> AnyonModel:
    """Fibonacci anyons with the usual R and F symbols.

    ``sigma1 = diag(e^{-4 pi i / 5}, e^{3 pi i / 5})`` and
    ``sigma2 = F sigma1 F`` with ``F = [[tau, sqrt(tau)], [sqrt(tau), -tau]]``.
    """
    tau = (np.sqrt(5) - 1) / 2
    F = np.array([[tau, np.sqrt(tau)], [np.sqrt(tau), -tau]])
    s1 = np.diag([np.exp(-4j * np.pi / 5), np.exp(3j * np.pi / 5)])
    return AnyonModel("fibonacci", s1, F @ s1 @ F)


PAPER_ORDER = (1, 0)


def unrolled_model(alpha: float, order: Literal["paper", "canonical"] = "paper") -> AnyonModel:
    """The three-strand model on H(3, 0, alpha) in an orthonormal basis.

    With ``order="paper"`` the basis is ``(RL, LR)``, so ``sigma1`` has the
    ``(alpha+1)^2`` phase first. The choice does not change any distance.

    Raises
    ------
    IndefiniteForm
        Outside the positive definite window.
    SingularAlpha
        At singular `alpha`.
    """
    space = FusionSpace(3, 0, alpha)
    s1 = orthonormal_generator(space, 1)
    s2 = orthonormal_generator(space, 2)
    if order == "paper":
        p = list(PAPER_ORDER)
        s1, s2 = s1[np.ix_(p, p)], s2[np.ix_(p, p)]
    elif order != "canonical":
        raise ValueError(f"unknown order {order!r}")
    return AnyonModel(f"unrolled({alpha:.12g})", np.ascontiguousarray(s1), np.ascontiguousarray(s2))


# ---------------------------------------------------------------------------
# distances


def trace_distance(x: np.ndarray, y: np.ndarray) -> float:
    """``sqrt(1 - |Tr(x^H y)| / 2)``, a bi-invariant metric on PSU(2)."""
    t = abs(np.trace(x.conj().T @ y))
    return float(np.sqrt(max(0.0, 1.0 - t / 2)))


def opnorm_distance(U: np.ndarray, V: np.ndarray) -> float:
    """``min_phi ||e^{i phi} U - V||_2`` for 2x2 unitaries.

    With ``W = V^H U`` having eigenphases ``a, b``, the best phase centres them
    and the norm is ``2 sin(|a - b| / 4)``, which equals
    ``sqrt(2 - |Tr W|)``.
    """
    t = abs(np.trace(U.conj().T @ V))
    return float(np.sqrt(max(0.0, 2.0 - t)))


def raw_opnorm(U: np.ndarray, V: np.ndarray) -> float:
    """Spectral norm ``||U - V||_2`` with no phase freedom."""
    return float(np.linalg.norm(U - V, ord=2))


def batch_distance(mats: np.ndarray, target: np.ndarray, metric: Metric = "opnorm") -> np.ndarray:
    """Distance from each of a stack of ``(N, 2, 2)`` unitaries to `target`."""
    if metric in ("opnorm", "trace"):
        # Tr(V^H U) for all U at once
        t = np.abs(np.einsum("ji,nji->n", target.conj(), mats))
        if metric == "opnorm":
            return np.sqrt(np.maximum(0.0, 2.0 - t))
        return np.sqrt(np.maximum(0.0, 1.0 - t / 2))
    if metric == "raw":
        D = mats - target[None]
        # largest singular value of a 2x2 from its Frobenius norm and determinant
        fro2 = np.einsum("nij,nij->n", D, D.conj()).real
        det = np.abs(D[:, 0, 0] * D[:, 1, 1] - D[:, 0, 1] * D[:, 1, 0])
        disc = np.sqrt(np.maximum(0.0, fro2**2 / 4 - det**2))
        return np.sqrt(np.maximum(0.0, fro2 / 2 + disc))
    raise ValueError(f"unknown metric {metric!r}")


METRICS: dict[str, Callable[[np.ndarray, np.ndarray], float]] = {
    "opnorm": opnorm_distance,
    "trace": trace_distance,
    "raw": raw_opnorm,
}


def distance(U: np.ndarray, V: np.ndarray, metric: Metric = "opnorm") -> float:
    try:
        return METRICS[metric](U, V)
    except KeyError:
        raise ValueError(f"unknown metric {metric!r}") from None


def su2_normalize(U: np.ndarray) -> np.ndarray:
    """Rescale `U` to determinant one (principal square root)."""
    return U / np.sqrt(np.linalg.det(U))
