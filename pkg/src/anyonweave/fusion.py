r"""Fusion-path spaces :math:`\mathcal H(n, k, \alpha)` and their braid-group action.

A basis vector is a walk :math:`x_0 = \alpha, x_1, \dots, x_{n-1} = n\alpha + k`
where each step adds :math:`\alpha + 1` (``R``) or :math:`\alpha - 1` (``L``).
Paths are ordered lexicographically on their direction words with ``L < R``.
For ``k = n - 3`` this is the order :math:`e_1, \dots, e_{n-1}` where
:math:`e_l` has its single ``L`` at position ``l``.

The pairing is diagonal in the path basis, so it is stored as a real vector.
"""
from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .burau import BurauSpace, burau_generator_f, squier_form
from .errors import (
    EmptySpace,
    IndefiniteForm,
    IndexOutOfRange,
    NonInvertibleBlock,
    SingularAlpha,
)
from .scalar import DEFAULT_TOL, bracket, is_singular_alpha, mod_dim, q_pow

BraidWord = Sequence[int]

_BLOCK_DET_TOL = 1e-12


# ---------------------------------------------------------------------------
# paths


@dataclass(frozen=True)
class Path:
    """A fusion path given by its direction word and the parameter `alpha`."""

    dirs: str
    alpha: float

    def __post_init__(self):
        if set(self.dirs) - {"L", "R"}:
            raise ValueError(f"direction word must use only L/R, got {self.dirs!r}")

    @property
    def labels(self) -> tuple[float, ...]:
        """Weights ``(x_0, ..., x_{n-1})`` visited by the path."""
        x = [self.alpha]
        for c in self.dirs:
            x.append(x[-1] + self.alpha + (1 if c == "R" else -1))
        return tuple(x)

    @property
    def n(self) -> int:
        return len(self.dirs) + 1

    @property
    def k(self) -> int:
        return self.dirs.count("R") - self.dirs.count("L")

    @classmethod
    def from_labels(cls, labels: Sequence[float], tol: float = 1e-9) -> "Path":
        """Recover the direction word from a label sequence."""
        alpha = float(labels[0])
        dirs = []
        for a, b in zip(labels[:-1], labels[1:]):
            step = b - a - alpha
            if abs(step - 1) < tol:
                dirs.append("R")
            elif abs(step + 1) < tol:
                dirs.append("L")
            else:
                raise ValueError(f"labels {a} -> {b} are not a fusion step at alpha={alpha}")
        return cls("".join(dirs), alpha)


def dimension(n: int, k: int) -> int:
    """Number of fusion paths of length ``n - 1`` ending at ``n alpha + k``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if (k + n - 1) % 2 or abs(k) > n - 1:
        return 0
    return comb(n - 1, (k + n - 1) // 2)


def enumerate_words(n: int, k: int) -> list[str]:
    """Direction words of H(n, k) in canonical order; empty if the space is zero."""
    if dimension(n, k) == 0:
        return []
    n_r = (n - 1 + k) // 2
    return ["".join(w) for w in itertools.product("LR", repeat=n - 1) if w.count("R") == n_r]


def enumerate_paths(n: int, k: int, alpha: float = 0.0) -> list[Path]:
    """Canonically ordered paths of H(n, k, alpha); ``[]`` when the space is zero."""
    return [Path(w, alpha) for w in enumerate_words(n, k)]


# ---------------------------------------------------------------------------
# scalar ingredients


def braiding_eigenvalue(a: float, b: float, c: float) -> complex:
    r"""Eigenvalue :math:`q^{(c^2 - a^2 - b^2 + 1)/4}` of the braiding on the ``c`` channel of ``a (x) b``."""
    return complex(q_pow((c * c - a * a - b * b + 1) / 4))


def _phases(alpha: float) -> tuple[complex, complex]:
    """(low, high) = eigenvalues on the 2a-1 and 2a+1 channels."""
    return (
        braiding_eigenvalue(alpha, alpha, 2 * alpha - 1),
        braiding_eigenvalue(alpha, alpha, 2 * alpha + 1),
    )


def sixj_coefficients(case: str, a: float, b: float, tol: float = DEFAULT_TOL):
    """Expansion coefficients of the four elementary tree rewrites.

    Cases ``I`` and ``II`` return the pair ``(channel 2a+1, channel 2a-1)``;
    ``III`` and ``IV`` have a single surviving channel and return one number.

    Raises
    ------
    SingularAlpha
        If a modified dimension needed by the case is undefined.
    """
    case = case.upper()
    if case == "I":
        return (mod_dim(2 * a + 1, tol) * bracket(b - 1), mod_dim(2 * a - 1, tol) * bracket(-a - 1))
    if case == "II":
        return (
            mod_dim(2 * a + 1, tol) * bracket(2 * a + b - 1),
            mod_dim(2 * a - 1, tol) * bracket(-a - 1),
        )
    if case == "III":
        return mod_dim(2 * a + 1, tol) * bracket(-a - b - 2)
    if case == "IV":
        return mod_dim(2 * a - 1, tol) * bracket(2 * a - 2)
    raise ValueError(f"unknown 6j case {case!r}")


def fmove_block(i: int, gamma: int, alpha: float, tol: float = DEFAULT_TOL) -> np.ndarray:
    """The 2x2 recoupling matrix ``A_{i,gamma}``.

    Rows are the channels ``(2 alpha - 1, 2 alpha + 1)``; columns are the local
    step pairs ``(LR, RL)`` at positions ``(i-1, i)``.

    Raises
    ------
    SingularAlpha
        If ``[2 alpha]`` or ``[2 alpha + 2]`` vanishes.
    NonInvertibleBlock
        If the block is numerically singular.
    """
    lo = mod_dim(2 * alpha - 1, tol) * bracket(-alpha - 1)
    hi = mod_dim(2 * alpha + 1, tol)
    A = np.array(
        [
            [lo, lo],
            [hi * bracket((i + 1) * alpha + gamma - 1), hi * bracket((i - 1) * alpha + gamma - 1)],
        ],
        dtype=float,
    )
    if abs(np.linalg.det(A)) < _BLOCK_DET_TOL:
        raise NonInvertibleBlock(f"A_(i={i}, gamma={gamma}) is singular at alpha={alpha}")
    return A


# ---------------------------------------------------------------------------
# the space


@dataclass(frozen=True)
class GramForm:
    """Diagonal Hermitian pairing in the path basis."""

    diag: np.ndarray

    @property
    def signature(self) -> tuple[int, int]:
        return int(np.sum(self.diag > 0)), int(np.sum(self.diag < 0))

    @property
    def matrix(self) -> np.ndarray:
        return np.diag(self.diag)

    @property
    def is_positive_definite(self) -> bool:
        return bool(np.all(self.diag > 0))


def _gram_entry(dirs: str, n: int, k: int, alpha: float, tol: float) -> float:
    val = mod_dim(n * alpha + k, tol)
    x = alpha
    for c in dirs:
        if c == "R":
            f = bracket(x + alpha) ** 2
            x += alpha + 1
        else:
            den = bracket(x + 1) * bracket(alpha + 1)
            if abs(den) < tol:
                raise SingularAlpha(f"pairing denominator vanishes at alpha={alpha}")
            f = bracket(x + alpha) / den
            x += alpha - 1
        if abs(f) < tol:
            raise SingularAlpha(f"pairing factor vanishes at alpha={alpha} on path {dirs}")
        val *= f
    return float(val)


class FusionSpace:
    """The space H(n, k, alpha) with its path basis, pairing and braid generators.

    Instances are immutable. Generator matrices are memoized behind a lock and
    returned as read-only arrays.

    Parameters
    ----------
    n : int
        Number of strands, at least 1.
    k : int
        Defect; the top label is ``n alpha + k``.
    alpha : float
        Generic parameter. Integer values are refused.
    tol : float
        Threshold below which a bracket counts as zero.

    Raises
    ------
    EmptySpace
        If ``dimension(n, k) == 0``.
    SingularAlpha
        If `alpha` is an integer. The pairing is computed on first access and
        raises SingularAlpha there if one of its factors vanishes; at such
        points the generators are usually still defined.
    """

    __slots__ = ("n", "k", "alpha", "tol", "words", "_index", "_gram", "_memo", "_lock")

    def __init__(self, n: int, k: int, alpha: float, tol: float = DEFAULT_TOL):
        if n < 1:
            raise ValueError("n must be at least 1")
        words = enumerate_words(n, k)
        if not words:
            raise EmptySpace(f"H(n={n}, k={k}) has dimension zero")
        if is_singular_alpha(alpha, tol):
            raise SingularAlpha(f"alpha={alpha!r} is an integer")
        self.n, self.k, self.alpha, self.tol = int(n), int(k), float(alpha), float(tol)
        self.words = tuple(words)
        self._index = {w: j for j, w in enumerate(words)}
        self._gram: np.ndarray | None = None
        self._memo: dict[int, np.ndarray] = {}
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"FusionSpace(n={self.n}, k={self.k}, alpha={self.alpha!r})"

    @property
    def dim(self) -> int:
        return len(self.words)

    @property
    def basis(self) -> list[Path]:
        return [Path(w, self.alpha) for w in self.words]

    @property
    def gram(self) -> np.ndarray:
        """Diagonal of the pairing (read-only).

        Raises
        ------
        SingularAlpha
            If a factor or the normalizing dimension vanishes at this `alpha`.
        """
        if self._gram is None:
            g = np.array([_gram_entry(w, self.n, self.k, self.alpha, self.tol) for w in self.words])
            g.setflags(write=False)
            self._gram = g
        return self._gram

    def index(self, dirs: str) -> int:
        return self._index[dirs]

    def generator(self, i: int) -> np.ndarray:
        """Matrix of ``sigma_i`` (memoized); see :func:`braid_generator`."""
        if not 1 <= i <= self.n - 1:
            raise IndexOutOfRange(f"generator index {i} outside 1..{self.n - 1}")
        with self._lock:
            M = self._memo.get(i)
        if M is None:
            M = _build_generator(self, i)
            M.setflags(write=False)
            with self._lock:
                M = self._memo.setdefault(i, M)
        return M

    def inverse_generator(self, i: int) -> np.ndarray:
        key = -i
        with self._lock:
            M = self._memo.get(key)
        if M is None:
            M = np.linalg.inv(self.generator(i))
            M.setflags(write=False)
            with self._lock:
                M = self._memo.setdefault(key, M)
        return M


def _build_generator(space: FusionSpace, i: int) -> np.ndarray:
    alpha = space.alpha
    lo, hi = _phases(alpha)
    M = np.zeros((space.dim, space.dim), dtype=complex)
    for j, w in enumerate(space.words):
        if i == 1:
            M[j, j] = lo if w[0] == "L" else hi
            continue
        pair = w[i - 2 : i]
        if pair == "RR":
            M[j, j] = hi
        elif pair == "LL":
            M[j, j] = lo
        elif pair == "LR":
            prefix = w[: i - 2]
            gamma = prefix.count("R") - prefix.count("L")
            partner = space.index(prefix + "RL" + w[i:])
            A = fmove_block(i, gamma, alpha, space.tol)
            B = np.linalg.solve(A, np.diag([lo, hi]) @ A)
            idx = [j, partner]
            M[np.ix_(idx, idx)] = B
    return M


def gram_form(space: FusionSpace) -> GramForm:
    """Diagonal pairing of `space` in the path basis."""
    return GramForm(space.gram)


def signature(space: FusionSpace) -> tuple[int, int]:
    """``(#positive, #negative)`` entries of the pairing."""
    return gram_form(space).signature


def braid_generator(space: FusionSpace, i: int) -> np.ndarray:
    r"""Matrix of ``sigma_i`` on the path basis.

    ``sigma_1`` is diagonal with :math:`q^{(\alpha\mp1)^2/2}` on paths whose first
    step is L or R. For ``i >= 2`` the generator only looks at steps ``(i-1, i)``:
    RR and LL give scalars, and each ``{LR, RL}`` pair carries the block
    ``A^{-1} diag(q^{(\alpha-1)^2/2}, q^{(\alpha+1)^2/2}) A`` with
    ``A = fmove_block(i, gamma, alpha)`` and ``gamma`` the charge of the prefix.
    """
    return space.generator(i)


def braid_word_matrix(space: FusionSpace, word: BraidWord) -> np.ndarray:
    """Product of generators along `word`, leftmost letter applied last.

    A letter ``+i`` is ``sigma_i`` and ``-i`` its inverse. The empty word gives
    the identity.
    """
    M = np.eye(space.dim, dtype=complex)
    for g in word:
        if g == 0:
            raise IndexOutOfRange("braid letters are nonzero integers")
        M = M @ (space.generator(g) if g > 0 else space.inverse_generator(-g))
    return M


def jucys_murphy_word(j: int) -> list[int]:
    """The word ``sigma_j ... sigma_2 sigma_1 sigma_1 sigma_2 ... sigma_j``."""
    down = list(range(j, 0, -1))
    return down + down[::-1]


def jucys_murphy(space: FusionSpace, j: int) -> np.ndarray:
    """Matrix of the Jucys-Murphy element ``J_j``; diagonal on the path basis."""
    if not 1 <= j <= space.n - 1:
        raise IndexOutOfRange(f"JM index {j} outside 1..{space.n - 1}")
    return braid_word_matrix(space, jucys_murphy_word(j))


def jucys_murphy_eigenvalues(space: FusionSpace, j: int) -> np.ndarray:
    r"""Predicted diagonal :math:`q^{(x_j^2 - x_{j-1}^2 - \alpha^2 + 1)/2}` per path."""
    out = []
    a = space.alpha
    for p in space.basis:
        x = p.labels
        out.append(q_pow((x[j] ** 2 - x[j - 1] ** 2 - a * a + 1) / 2))
    return np.array(out, dtype=complex)


# ---------------------------------------------------------------------------
# comparisons


def projective_residual(A: np.ndarray, B: np.ndarray) -> tuple[complex, float]:
    """Best scalar ``lam`` with ``A ~ lam B`` and the Frobenius residual ``||A - lam B||``.

    The scalar is read off the largest-modulus entry of `B`.
    """
    idx = np.unravel_index(np.argmax(np.abs(B)), B.shape)
    lam = A[idx] / B[idx]
    return complex(lam), float(np.linalg.norm(A - lam * B))


def _burau_shape(n: int, alpha: float) -> np.ndarray:
    """The k-dependent factor of the intertwiner coefficients (no overall scale)."""
    S = 1j * q_pow(alpha)
    ks = np.arange(1, n)
    return (
        (-1.0) ** (ks + 1)
        * (S ** (ks + 1) - S ** (-ks - 1))
        * (S**ks - S ** (-ks))
        / ((S**2 - S**-2) * (S - 1 / S))
    )


def burau_coefficients(n: int, alpha: float, tol: float = DEFAULT_TOL) -> np.ndarray:
    r"""Diagonal entries of the map ``f_k -> c_k e_k`` from Burau to H(n, n-3, alpha).

    With :math:`S = i q^\alpha`,

    .. math::

        c_k = (-1)^{k+1} \frac{(S^{k+1} - S^{-k-1})(S^k - S^{-k})}{(S^2 - S^{-2})(S - S^{-1})}
              \frac{[2\alpha+2] \sqrt{|[\alpha+1][n\alpha+n-2]|}}{\prod_{j=2}^{n} [j\alpha + j - 2]} .

    The absolute value under the root keeps the normalization real; the sign of
    the radicand instead appears as the sign relating the two pairings.

    Raises
    ------
    SingularAlpha
        If the radicand or the product in the denominator vanishes.
    """
    rad = bracket(alpha + 1) * bracket(n * alpha + n - 2)
    if abs(rad) < tol:
        raise SingularAlpha(f"[alpha+1][n alpha+n-2] vanishes at alpha={alpha}")
    den = np.prod([bracket(j * alpha + j - 2) for j in range(2, n + 1)])
    if abs(den) < tol:
        raise SingularAlpha(f"normalizing product vanishes at alpha={alpha}")
    pre = bracket(2 * alpha + 2) * np.sqrt(abs(rad)) / den
    return _burau_shape(n, alpha) * pre


def burau_intertwiner(n: int, alpha: float, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Diagonal matrix of the Burau-to-fusion isomorphism in (f-basis, e-basis) coordinates."""
    return np.diag(burau_coefficients(n, alpha, tol))


@dataclass
class BurauIsoReport:
    """Result of comparing Burau and fusion generators through the intertwiner.

    When the pairing side is undefined (the normalization of the intertwiner
    or of the fusion pairing vanishes) ``form_sign`` and ``expected_sign`` are
    0 and ``form_residual`` is infinite.
    """

    scalars: list[complex]
    residuals: list[float]
    form_sign: int
    form_residual: float
    expected_sign: int = field(default=0)

    @property
    def max_residual(self) -> float:
        return max(self.residuals) if self.residuals else 0.0

    @property
    def form_defined(self) -> bool:
        return bool(np.isfinite(self.form_residual))


def burau_iso_check(n: int, alpha: float, tol: float = DEFAULT_TOL) -> BurauIsoReport:
    """Compare ``phi sigma_i^{Burau} phi^{-1}`` with ``sigma_i`` on H(n, n-3, alpha).

    Also checks ``phi^H G_fusion phi = eps G_Squier`` with ``eps`` the sign of
    ``[alpha+1][n alpha+n-2]``. Conjugation ignores the overall scale of
    ``phi``, so the generator comparison survives points where only that scale
    is singular.
    """
    space = FusionSpace(n, n - 3, alpha, tol)
    bspace = BurauSpace.from_alpha(n, alpha, basis="f")
    shape = _burau_shape(n, alpha)
    if np.min(np.abs(shape)) < tol:
        raise SingularAlpha(f"intertwiner has a vanishing entry at alpha={alpha}")
    scalars, residuals = [], []
    for i in range(1, n):
        lhs = (shape[:, None] * burau_generator_f(bspace, i)) / shape[None, :]
        lam, res = projective_residual(lhs, space.generator(i))
        scalars.append(lam)
        residuals.append(res)
    try:
        phi = burau_intertwiner(n, alpha, tol)
        gram = space.gram
    except SingularAlpha:
        return BurauIsoReport(scalars, residuals, 0, float("inf"), 0)
    expected = int(np.sign(bracket(alpha + 1) * bracket(n * alpha + n - 2)))
    pulled = phi.conj().T @ np.diag(gram) @ phi
    G = squier_form(bspace)
    # sign is the one that fits best; callers compare it with `expected`
    r_plus = float(np.linalg.norm(pulled - G))
    r_minus = float(np.linalg.norm(pulled + G))
    sign = 1 if r_plus <= r_minus else -1
    return BurauIsoReport(scalars, residuals, sign, min(r_plus, r_minus), expected)


def _minor_matrix(M: np.ndarray, subsets: list[tuple[int, ...]]) -> np.ndarray:
    m = len(subsets)
    out = np.empty((m, m), dtype=complex)
    for r, S in enumerate(subsets):
        for c, T in enumerate(subsets):
            out[r, c] = np.linalg.det(M[np.ix_(S, T)]) if S else 1.0
    return out


def exterior_power_check(n: int, k_wedge: int, alpha: float, tol: float = DEFAULT_TOL) -> float:
    r"""Compare :math:`\Lambda^{k}` of H(n, n-3) with H(n, n-1-2k) generator by generator.

    The wedge :math:`e_{l_1} \wedge \dots \wedge e_{l_k}` (ascending ``l``) is
    sent to the word with L exactly at positions ``l_1..l_k``. Returns the
    largest Frobenius norm of
    :math:`\Lambda^k \sigma_i - q^{(k-1)(\alpha+1)^2/2} \sigma_i'`.
    """
    if not 0 <= k_wedge <= n - 1:
        raise IndexOutOfRange(f"wedge degree {k_wedge} outside 0..{n - 1}")
    base = FusionSpace(n, n - 3, alpha, tol)
    target = FusionSpace(n, n - 1 - 2 * k_wedge, alpha, tol)
    subsets = list(itertools.combinations(range(n - 1), k_wedge))
    # position of each wedge in the target's canonical order
    perm = []
    for S in subsets:
        w = "".join("L" if p in S else "R" for p in range(n - 1))
        perm.append(target.index(w))
    scale = q_pow((k_wedge - 1) * (alpha + 1) ** 2 / 2)
    worst = 0.0
    for i in range(1, n):
        W = _minor_matrix(base.generator(i), subsets)
        T = target.generator(i)[np.ix_(perm, perm)]
        worst = max(worst, float(np.linalg.norm(W - scale * T)))
    return worst


def orthonormal_generator(space: FusionSpace, i: int) -> np.ndarray:
    """``N^{-1} sigma_i N`` with ``N = diag(1 / sqrt(gram))``; unitary.

    Raises
    ------
    IndefiniteForm
        If the pairing has a non-positive entry.
    """
    return orthonormalize(space, space.generator(i))


def orthonormalize(space: FusionSpace, M: np.ndarray) -> np.ndarray:
    """Conjugate `M` into the orthonormal basis of a positive definite `space`."""
    g = space.gram
    if np.any(g <= 0):
        raise IndefiniteForm(
            f"pairing on H({space.n},{space.k},{space.alpha}) has signature {signature(space)}"
        )
    r = np.sqrt(g)
    return (r[:, None] * M) / r[None, :]


def relation_residual(gens: Sequence[np.ndarray]) -> float:
    """Largest residual of the braid and far-commutation relations among `gens`."""
    worst = 0.0
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            A, B = gens[a], gens[b]
            r = A @ B @ A - B @ A @ B if b == a + 1 else A @ B - B @ A
            worst = max(worst, float(np.linalg.norm(r)))
    return worst


def gram_unitarity_residual(space: FusionSpace) -> float:
    """Largest ``||sigma_i^H G sigma_i - G|| / max|G|`` over the generators of `space`.

    The pairing is only defined up to an overall scale, and near odd integers
    its entries grow without bound, so the residual is taken relative to ``G``.
    """
    G = np.diag(space.gram / np.abs(space.gram).max())
    worst = 0.0
    for i in range(1, space.n):
        S = space.generator(i)
        worst = max(worst, float(np.linalg.norm(S.conj().T @ G @ S - G)))
    return worst


def valid_ks(n: int) -> list[int]:
    """All ``k`` with a nonzero H(n, k)."""
    return list(range(-(n - 1), n, 2))


def reorder(M: np.ndarray, perm: Iterable[int]) -> np.ndarray:
    """Matrix of the same operator in the basis permuted by `perm`."""
    p = list(perm)
    return M[np.ix_(p, p)]
