r"""Independent ground truth from the explicit quantum-group action on :math:`V_\alpha^{\otimes n}`.

The module :math:`V_\alpha` has basis ``v_0, v_1`` with

* ``H v_i = (alpha + 1 - 2i) v_i``,
* ``F v_0 = v_1``,
* ``E v_1 = cos(pi alpha / 2) v_0``,
* ``K = q^H``.

Tensor factors are ordered most-significant first: basis state ``(b_1, ..., b_n)``
has index ``sum b_j 2^{n-j}``. Coproducts are ``E -> 1 (x) E + E (x) K`` and
``F -> K^{-1} (x) F + F (x) 1``. The braiding is ``c = flip . R`` with
``R = q^{H (x) H / 2} (1 + {1} E (x) F)`` and ``{1} = 2i``.

The multiplicity space of :math:`V_{n\alpha+k}` is modelled by highest-weight
vectors: ``ker E`` inside the weight ``n alpha + k + 1`` eigenspace.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, EmptySpace, LeakageDetected, SingularAlpha
from .fusion import BraidWord, FusionSpace, braid_word_matrix, dimension
from .scalar import DEFAULT_TOL, bracket, curly, is_singular_alpha, q_pow

RANK_RTOL = 1e-8
LEAK_TOL = 1e-9
MAX_N = 12


@dataclass(frozen=True)
class ModuleAction:
    """Matrices of ``H, E, F, K`` on the two-dimensional module ``V_alpha``."""

    alpha: float
    H: np.ndarray
    E: np.ndarray
    F: np.ndarray
    K: np.ndarray

    @property
    def dim(self) -> int:
        return 2

    @property
    def weights(self) -> np.ndarray:
        return np.diag(self.H).real

    def commutator_residual(self) -> float:
        """``||[E, F] - (K - K^{-1}) / (q - q^{-1})||``."""
        lhs = self.E @ self.F - self.F @ self.E
        rhs = (self.K - np.linalg.inv(self.K)) / (q_pow(1) - q_pow(-1))
        return float(np.linalg.norm(lhs - rhs))


def v_alpha_action(alpha: float) -> ModuleAction:
    """The action on ``V_alpha`` in the basis ``(v_0, v_1)``."""
    w = np.array([alpha + 1, alpha - 1], dtype=float)
    H = np.diag(w).astype(complex)
    E = np.zeros((2, 2), dtype=complex)
    E[0, 1] = bracket(1 - alpha)  # [1][1 - alpha] / [1]^2 with [1] = 1
    F = np.zeros((2, 2), dtype=complex)
    F[1, 0] = 1.0
    K = np.diag(q_pow(w)).astype(complex)
    return ModuleAction(float(alpha), H, E, F, K)


_FLIP = np.zeros((4, 4))
for _a, _b in itertools.product(range(2), repeat=2):
    _FLIP[2 * _b + _a, 2 * _a + _b] = 1.0


def _hh(A: ModuleAction, B: ModuleAction, sign: float) -> np.ndarray:
    return np.diag(q_pow(sign * np.outer(A.weights, B.weights).ravel() / 2))


def r_matrix(alpha: float, beta: float) -> np.ndarray:
    """``R`` on ``V_alpha (x) V_beta``."""
    A, B = v_alpha_action(alpha), v_alpha_action(beta)
    return _hh(A, B, 1) @ (np.eye(4) + curly(1) * np.kron(A.E, B.F))


def r_matrix_inverse(alpha: float, beta: float) -> np.ndarray:
    """``R^{-1} = (1 - {1} E (x) F) q^{-H (x) H / 2}`` on ``V_alpha (x) V_beta``."""
    A, B = v_alpha_action(alpha), v_alpha_action(beta)
    return (np.eye(4) - curly(1) * np.kron(A.E, B.F)) @ _hh(A, B, -1)


def braiding_matrix(alpha: float, beta: float) -> np.ndarray:
    """``c: V_alpha (x) V_beta -> V_beta (x) V_alpha``, i.e. ``flip . R``."""
    return _FLIP @ r_matrix(alpha, beta)


def braiding_matrix_inverse(alpha: float, beta: float) -> np.ndarray:
    """``c^{-1}: V_beta (x) V_alpha -> V_alpha (x) V_beta`` built from the explicit ``R^{-1}``."""
    return r_matrix_inverse(alpha, beta) @ _FLIP


def quantum_dimension(alpha: float) -> complex:
    """``sum_i v_i^*(K^{-1} v_i)``, which vanishes for every alpha."""
    K = v_alpha_action(alpha).K
    return complex(np.trace(np.linalg.inv(K)))


# ---------------------------------------------------------------------------
# full tensor operators (small n)


def _kron_all(mats: Sequence[np.ndarray]) -> np.ndarray:
    return reduce(np.kron, mats, np.eye(1, dtype=complex))


def tensor_action(action: ModuleAction, n: int) -> dict[str, np.ndarray]:
    """Dense ``H, E, F, K`` on the ``2^n``-dimensional tensor power."""
    I = np.eye(2, dtype=complex)
    Kinv = np.linalg.inv(action.K)
    H = sum(_kron_all([I] * j + [action.H] + [I] * (n - j - 1)) for j in range(n))
    E = sum(_kron_all([I] * j + [action.E] + [action.K] * (n - j - 1)) for j in range(n))
    F = sum(_kron_all([Kinv] * j + [action.F] + [I] * (n - j - 1)) for j in range(n))
    K = _kron_all([action.K] * n)
    return {"H": H, "E": E, "F": F, "K": K}


def tensor_braiding(alpha: float, n: int, i: int) -> np.ndarray:
    """Dense ``1 (x) .. (x) c (x) .. (x) 1`` acting on factors ``i, i+1``."""
    I = np.eye(2, dtype=complex)
    return _kron_all([I] * (i - 1) + [braiding_matrix(alpha, alpha)] + [I] * (n - i - 1))


# ---------------------------------------------------------------------------
# weight-sector machinery


def _sector_states(n: int, m: int) -> list[int]:
    """States with exactly `m` factors equal to ``v_1``, in increasing index order."""
    out = []
    for ones in itertools.combinations(range(n), m):
        out.append(sum(1 << (n - 1 - j) for j in ones))
    return sorted(out)


def _sector_E(n: int, m: int, alpha: float) -> np.ndarray:
    """Total ``E`` from the sector with `m` ones to the one with ``m - 1`` ones."""
    src = _sector_states(n, m)
    dst = {s: r for r, s in enumerate(_sector_states(n, m - 1))}
    act = v_alpha_action(alpha)
    e = act.E[0, 1]
    kdiag = np.diag(act.K)
    M = np.zeros((len(dst), len(src)), dtype=complex)
    for c, s in enumerate(src):
        for j in range(n):
            bit = 1 << (n - 1 - j)
            if not s & bit:
                continue
            coeff = e
            for l in range(j + 1, n):
                coeff *= kdiag[1] if s & (1 << (n - 1 - l)) else kdiag[0]
            M[dst[s ^ bit], c] += coeff
    return M


def _sector_braiding(n: int, m: int, alpha: float, i: int) -> np.ndarray:
    states = _sector_states(n, m)
    pos = {s: r for r, s in enumerate(states)}
    c = braiding_matrix(alpha, alpha)
    hi_bit, lo_bit = 1 << (n - i), 1 << (n - i - 1)
    M = np.zeros((len(states), len(states)), dtype=complex)
    for col, s in enumerate(states):
        a = 1 if s & hi_bit else 0
        b = 1 if s & lo_bit else 0
        rest = s & ~(hi_bit | lo_bit)
        for out in range(4):
            amp = c[out, 2 * a + b]
            if amp == 0:
                continue
            t = rest | (hi_bit if out >> 1 else 0) | (lo_bit if out & 1 else 0)
            M[pos[t], col] += amp
    return M


class OracleRep:
    """Braid action of the tensor power restricted to highest-weight vectors of weight ``n alpha + k + 1``.

    Parameters
    ----------
    n, k : int
        Strand count and defect; ``n <= 12``.
    alpha : float
        Non-integer parameter.
    """

    def __init__(self, n: int, k: int, alpha: float, tol: float = DEFAULT_TOL):
        if n > MAX_N:
            raise ValueError(f"oracle limited to n <= {MAX_N}")
        if is_singular_alpha(alpha, tol):
            raise SingularAlpha(f"alpha={alpha!r} is an integer")
        expected = dimension(n, k)
        if expected == 0:
            raise EmptySpace(f"H(n={n}, k={k}) has dimension zero")
        self.n, self.k, self.alpha = n, k, float(alpha)
        self.m = (n - 1 - k) // 2  # number of v_1 factors at this weight
        size = len(_sector_states(n, self.m))
        if self.m == 0:
            Q = np.eye(size, dtype=complex)
        else:
            E = _sector_E(n, self.m, alpha)
            _, s, vh = np.linalg.svd(E)
            smax = s.max() if s.size else 0.0
            rank = int(np.sum(s > RANK_RTOL * max(smax, 1e-300)))
            Q = vh[rank:].conj().T
        if Q.shape[1] != expected:
            raise DimensionMismatch(
                f"highest-weight space has dimension {Q.shape[1]}, expected {expected}"
            )
        self.basis = Q
        self._gens: dict[int, np.ndarray] = {}
        self.leakage: dict[int, float] = {}

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def generator(self, i: int) -> np.ndarray:
        if i not in self._gens:
            C = _sector_braiding(self.n, self.m, self.alpha, i)
            Q = self.basis
            M = Q.conj().T @ C @ Q
            leak = float(np.linalg.norm(C @ Q - Q @ M))
            self.leakage[i] = leak
            if leak > LEAK_TOL:
                raise LeakageDetected(f"sigma_{i} leaks out of W by {leak:.3e}")
            self._gens[i] = M
        return self._gens[i]

    def word_matrix(self, word: BraidWord) -> np.ndarray:
        M = np.eye(self.dim, dtype=complex)
        for g in word:
            G = self.generator(abs(g))
            M = M @ (G if g > 0 else np.linalg.inv(G))
        return M


def highest_weight_subspace(n: int, alpha: float, k: int) -> np.ndarray:
    """Orthonormal basis (columns, in full ``2^n`` coordinates) of the highest-weight space.

    Raises
    ------
    DimensionMismatch
        If the numerical rank disagrees with the path count.
    """
    rep = OracleRep(n, k, alpha)
    full = np.zeros((2**n, rep.dim), dtype=complex)
    full[_sector_states(n, rep.m)] = rep.basis
    return full


def induced_braid_matrix(n: int, k: int, alpha: float, i: int) -> np.ndarray:
    """Compression of the ``i``-th adjacent braiding to the highest-weight space.

    Raises
    ------
    LeakageDetected
        If the space is not invariant to within ``1e-9``.
    """
    return OracleRep(n, k, alpha).generator(i)


@dataclass(frozen=True)
class TraceComparison:
    discrepancy: float
    modulus_discrepancy: float
    mode: str  # "exact", "modulus" or "mismatch"


def trace_compare(
    n: int, k: int, alpha: float, words: Sequence[BraidWord], tol: float = 1e-6
) -> TraceComparison:
    """Compare traces of braid words between the path basis and the oracle.

    ``mode`` is ``"exact"`` when traces agree, ``"modulus"`` when only their
    absolute values agree (a convention phase), else ``"mismatch"``.
    """
    space = FusionSpace(n, k, alpha)
    rep = OracleRep(n, k, alpha)
    d_exact = d_mod = 0.0
    for w in words:
        a = np.trace(braid_word_matrix(space, w))
        b = np.trace(rep.word_matrix(w))
        d_exact = max(d_exact, abs(a - b))
        d_mod = max(d_mod, abs(abs(a) - abs(b)))
    if d_exact < tol:
        mode = "exact"
    elif d_mod < tol:
        mode = "modulus"
    else:
        mode = "mismatch"
    return TraceComparison(float(d_exact), float(d_mod), mode)


def random_words(
    rng: np.random.Generator, n: int, count: int, max_len: int
) -> list[list[int]]:
    """`count` random signed words in ``sigma_1..sigma_{n-1}`` of length ``0..max_len``."""
    out = []
    for _ in range(count):
        L = int(rng.integers(0, max_len + 1))
        gens = rng.integers(1, n, size=L)
        signs = rng.choice([-1, 1], size=L)
        out.append([int(g * s) for g, s in zip(gens, signs)])
    return out
