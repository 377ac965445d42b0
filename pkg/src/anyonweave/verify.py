"""Property suites run by ``anyonweave verify``.

Each suite returns a :class:`VerifyReport` listing residuals against fixed
thresholds. A suite passes iff every residual is below its threshold.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from . import burau, fusion, oracle, singular
from .errors import SingularAlpha
from .scalar import bracket, q_pow

SUITES = ("burau", "fusion", "oracle", "singular")


@dataclass
class Check:
    name: str
    residual: float
    threshold: float

    @property
    def passed(self) -> bool:
        return bool(self.residual < self.threshold)


@dataclass
class VerifyReport:
    suite: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, residual: float, threshold: float) -> None:
        self.checks.append(Check(name, float(residual), float(threshold)))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": [dict(asdict(c), passed=c.passed) for c in self.checks],
        }

    def merge(self, other: "VerifyReport") -> None:
        self.checks.extend(Check(f"{other.suite}/{c.name}", c.residual, c.threshold) for c in other.checks)


def random_generic_alphas(rng: np.random.Generator, count: int, lo: float = 0.0, hi: float = 2.0,
                          n_max: int = 6, margin: float = 0.02) -> list[float]:
    """`count` values in ``(lo, hi)`` for which every H(n, k) with ``n <= n_max`` is constructible.

    A value is rejected when ``j * alpha`` lies within `margin` of an integer for
    some ``j <= n_max``. Those are the non-generic points where the spaces
    become reducible; close to them the recoupling blocks are ill-conditioned
    and residuals measure rounding rather than algebra.
    """
    out = []
    js = np.arange(1, n_max + 1)
    while len(out) < count:
        a = float(rng.uniform(lo, hi))
        if np.min(np.abs(js * a - np.round(js * a))) < margin:
            continue
        try:
            for n in range(2, n_max + 1):
                for k in fusion.valid_ks(n):
                    sp = fusion.FusionSpace(n, k, a)
                    sp.gram
                    for i in range(2, n):
                        sp.generator(i)
        except (SingularAlpha, ArithmeticError, ValueError):
            continue
        out.append(a)
    return out


def formf_diagonal(s: complex, m: int) -> np.ndarray:
    i = np.arange(1, m + 1)
    return s ** (1 - 2 * i) * (1 - s ** (2 * i)) * (1 - s ** (2 * i + 2)) / (1 - s**2) ** 2


def verify_burau(seed: int = 0, trials: int = 20, n_max: int = 7) -> VerifyReport:
    rng = np.random.default_rng(seed)
    rep = VerifyReport("burau")
    for theta in rng.uniform(0.05, np.pi - 0.05, size=trials):
        for n in range(2, n_max + 1):
            sp = burau.BurauSpace.from_angle(n, theta)
            tag = f"n={n},theta={theta:.4f}"
            rep.add(f"braid relations E {tag}", burau.braid_relation_residual(sp), 1e-10)
            rep.add(f"squier unitarity E {tag}", burau.verify_squier_unitarity(sp), 1e-10)
            spf = sp.with_basis("f")
            rep.add(f"squier unitarity f {tag}", burau.verify_squier_unitarity(spf), 1e-10)
            P = burau.fbasis_matrix(sp)
            pulled = P.conj().T @ burau.squier_form(sp) @ P
            rep.add(f"f-basis form {tag}", np.abs(pulled - np.diag(formf_diagonal(sp.s, n - 1))).max(), 1e-10)
            conj = max(
                np.linalg.norm(np.linalg.solve(P, burau.burau_generator_E(sp, i) @ P) - burau.burau_generator_f(spf, i))
                for i in range(1, n)
            )
            rep.add(f"E/f consistency {tag}", conj, 1e-9)
    return rep


def verify_fusion(seed: int = 0, trials: int = 20, n_max: int = 6) -> VerifyReport:
    rng = np.random.default_rng(seed)
    rep = VerifyReport("fusion")
    for a in random_generic_alphas(rng, trials, n_max=n_max):
        lo, hi = q_pow((a - 1) ** 2 / 2), q_pow((a + 1) ** 2 / 2)
        for n in range(2, n_max + 1):
            for k in fusion.valid_ks(n):
                sp = fusion.FusionSpace(n, k, a)
                tag = f"n={n},k={k},alpha={a:.4f}"
                gens = [sp.generator(i) for i in range(1, n)]
                rep.add(f"braid relations {tag}", fusion.relation_residual(gens), 1e-9)
                rep.add(f"gram unitarity {tag}", fusion.gram_unitarity_residual(sp), 1e-9)
                spec = 0.0
                for S in gens:
                    ev = np.linalg.eigvals(S)
                    spec = max(spec, float(np.max(np.minimum(abs(ev - lo), abs(ev - hi)))))
                rep.add(f"spectrum {tag}", spec, 1e-8)
                if n <= 5:
                    Js = [fusion.jucys_murphy(sp, j) for j in range(1, n)]
                    off = max(float(np.linalg.norm(J - np.diag(np.diag(J)))) for J in Js)
                    rep.add(f"JM diagonal {tag}", off, 1e-9)
                    pred = max(
                        float(np.abs(np.diag(J) - fusion.jucys_murphy_eigenvalues(sp, j)).max())
                        for j, J in enumerate(Js, start=1)
                    )
                    rep.add(f"JM eigenvalues {tag}", pred, 1e-9)
        sp3 = fusion.FusionSpace(3, 0, a)
        h = fusion.braid_word_matrix(sp3, [1, 2, 1])
        rep.add(f"half-twist square alpha={a:.4f}",
                np.abs(h @ h - 1j * np.exp(1.5j * np.pi * a * a) * np.eye(2)).max(), 1e-10)
    return rep


def verify_oracle(seed: int = 0, trials: int = 5, n_max: int = 8) -> VerifyReport:
    rng = np.random.default_rng(seed)
    rep = VerifyReport("oracle")
    for a in random_generic_alphas(rng, trials, n_max=5):
        act = oracle.v_alpha_action(a)
        rep.add(f"E^2 alpha={a:.4f}", np.abs(act.E @ act.E).max(), 1e-12)
        rep.add(f"[E,F] alpha={a:.4f}", act.commutator_residual(), 1e-12)
        rep.add(f"qdim alpha={a:.4f}", abs(oracle.quantum_dimension(a)), 1e-12)
        c, ci = oracle.braiding_matrix(a, a), oracle.braiding_matrix_inverse(a, a)
        rep.add(f"c c^-1 alpha={a:.4f}", np.abs(c @ ci - np.eye(4)).max(), 1e-12)
        for n in range(1, n_max + 1):
            for k in fusion.valid_ks(n):
                r = oracle.OracleRep(n, k, a)
                rep.add(f"dim W n={n},k={k},alpha={a:.4f}", abs(r.dim - fusion.dimension(n, k)), 0.5)
        for n, k in [(3, 0), (4, 1), (4, -1), (5, 0)]:
            words = oracle.random_words(rng, n, 100, 12)
            cmp = oracle.trace_compare(n, k, a, words)
            rep.add(f"traces n={n},k={k},alpha={a:.4f}", cmp.discrepancy, 1e-6)
            r = oracle.OracleRep(n, k, a)
            for i in range(1, n):
                r.generator(i)
            rep.add(f"leakage n={n},k={k},alpha={a:.4f}", max(r.leakage.values()), 1e-9)
    return rep


def verify_singular(seed: int = 0, trials: int = 1000) -> VerifyReport:
    rng = np.random.default_rng(seed)
    rep = VerifyReport("singular")
    s1, s2 = singular.sing_sigma(1), singular.sing_sigma(2)
    B = singular.pairing()
    rep.add("braid relation", np.abs(s1 @ s2 @ s1 - s2 @ s1 @ s2).max(), 1e-15)
    for i, S in ((1, s1), (2, s2)):
        rep.add(f"B-unitarity sigma_{i}", np.abs(S.conj().T @ B @ S - B).max(), 1e-12)
        M, fit = singular.sing_sigma_from_tensor(i)
        rep.add(f"R-matrix sigma_{i}", np.abs(M - S).max() + fit, 1e-12)
    # sigma_1^m = q^{m/2} [[1, -m q], [0, 1]] never returns to the identity
    P = np.eye(2, dtype=complex)
    closest = np.inf
    for m in range(1, 1001):
        P = P @ s1
        closest = min(closest, float(np.abs(P - np.eye(2)).max()))
    rep.add("sigma_1^m != I for m <= 1000 (1 / min distance)", 1 / closest, 1e12)
    for n in (1, 2):
        got = singular.intertwiner_dim(2 * n + 1)
        rep.add(f"dim Hom(V0, V0^{2 * n + 1})", abs(got - singular.sing_dim(n)), 0.5)
    p1, p2 = singular.pi_maps()
    d1, d2 = singular.pi_dagger_maps()
    X = singular.x_tensor_id()
    rep.add("(x(x)1) pi_2 = pi_1", np.abs(X @ p2 - p1).max(), 1e-12)
    rep.add("(x(x)1) pi_1 = 0", np.abs(X @ p1).max(), 1e-12)
    rep.add("pi_2^+ (x(x)1) = pi_1^+", np.abs(d2 @ X - d1).max(), 1e-12)
    rep.add("pi_1^+ (x(x)1) = 0", np.abs(d1 @ X).max(), 1e-12)
    pairs = max(
        np.abs(di @ pj - (np.eye(2) if a != b else 0)).max()
        for a, di in enumerate((d1, d2)) for b, pj in enumerate((p1, p2))
    )
    rep.add("pi_i^+ pi_j = delta_{i!=j}", pairs, 1e-12)
    rep.add("pi maps are intertwiners",
            max(singular.intertwiner_residual(p, 3) for p in (p1, p2)), 1e-12)
    ev = np.sort(np.linalg.eigvalsh(B))
    rep.add("B eigenvalues {-1, +1}", np.abs(ev - [-1, 1]).max(), 1e-12)
    # normalized words q^{-len/2} W have Gaussian-integer entries
    worst = 0.0
    gens = {1: s1, 2: s2, -1: np.linalg.inv(s1), -2: np.linalg.inv(s2)}
    for _ in range(trials):
        L = int(rng.integers(1, 13))
        word = rng.choice([1, 2, -1, -2], size=L)
        W = np.eye(2, dtype=complex)
        for g in word:
            W = W @ gens[int(g)]
        W = W * q_pow(-0.5 * float(np.sum(np.sign(word))))
        worst = max(worst, float(np.abs(W - np.round(W.real) - 1j * np.round(W.imag)).max()))
    rep.add("Gaussian-integer entries of normalized words", worst, 1e-9)
    return rep


def run_suite(name: str, seed: int = 0, trials: int | None = None) -> VerifyReport:
    """Run one suite (or ``"all"``)."""
    kw = {} if trials is None else {"trials": trials}
    if name == "burau":
        return verify_burau(seed, **kw)
    if name == "fusion":
        return verify_fusion(seed, **kw)
    if name == "oracle":
        return verify_oracle(seed, **kw)
    if name == "singular":
        return verify_singular(seed, **kw)
    if name == "all":
        rep = VerifyReport("all")
        for s in SUITES:
            rep.merge(run_suite(s, seed, trials))
        return rep
    raise ValueError(f"unknown suite {name!r}")


def definiteness_pattern(alpha: float) -> tuple[int, int]:
    """Signature of H(3, 0, alpha) predicted from the two closed-form norms."""
    n1 = bracket(2 * alpha) / bracket(alpha + 1)
    n2 = -bracket(2 * alpha) * bracket(3 * alpha + 1) / bracket(alpha + 1) ** 2
    return int(n1 > 0) + int(n2 > 0), int(n1 < 0) + int(n2 < 0)
