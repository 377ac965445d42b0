r"""Brute-force weave search over a two-generator braid model.

A weave is :math:`\sigma_{g_m}^{n_m} \cdots \sigma_{g_2}^{n_2} \sigma_{g_1}^{n_1}`
with alternating generators, every :math:`n_i` even and nonzero, and cost
:math:`\sum |n_i|`. The rightmost block is applied first.

The search grows weaves two units at a time. A node at cost ``2u`` has
children obtained by left-multiplying with :math:`\sigma_g^{\pm 2}`: either the
active block grows in its own direction, or a new block starts on the other
generator with either sign. Every weave is reached exactly once, so level ``u``
holds ``4 * 3**(u-1)`` nodes.
"""
from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .errors import IndefiniteForm, SingularAlpha
from .gates import (
    AnyonModel,
    Gate,
    Metric,
    batch_distance,
    distance,
    fibonacci_model,
    gate,
    unrolled_model,
)

log = logging.getLogger(__name__)

TIE_TOL = 1e-12


@dataclass(frozen=True)
class Weave:
    """Exponents ``(n_m, ..., n_1)`` and the generator ``start`` carrying ``n_1``."""

    exponents: tuple[int, ...]
    start: int = 1

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        if self.start not in (1, 2):
            raise ValueError("start generator must be 1 or 2")
        if any(e % 2 for e in self.exponents):
            raise ValueError(f"weave exponents must be even: {self.exponents}")
        if any(e == 0 for e in self.exponents):
            raise ValueError(f"weave exponents must be nonzero: {self.exponents}")

    @property
    def cost(self) -> int:
        return sum(abs(e) for e in self.exponents)

    @property
    def generators(self) -> tuple[int, ...]:
        """Generator of each block, aligned with :attr:`exponents`."""
        m = len(self.exponents)
        other = 3 - self.start
        return tuple(self.start if (m - 1 - j) % 2 == 0 else other for j in range(m))

    def word(self) -> list[int]:
        """Signed braid letters, leftmost applied last."""
        out = []
        for g, e in zip(self.generators, self.exponents):
            out.extend([g if e > 0 else -g] * abs(e))
        return out

    def inverse(self) -> "Weave":
        if not self.exponents:
            return self
        return Weave(tuple(-e for e in reversed(self.exponents)), self.generators[0])

    def sort_key(self) -> tuple:
        return (self.cost, self.exponents, self.start)

    def format(self) -> str:
        """``g:n_1;n_2;...`` with the first-applied block first."""
        return f"{self.start}:" + ";".join(str(e) for e in reversed(self.exponents))

    @classmethod
    def parse(cls, text: str) -> "Weave":
        g, _, rest = text.partition(":")
        first_applied = [int(t) for t in rest.split(";") if t]
        return cls(tuple(reversed(first_applied)), int(g))


def enumerate_weaves(budget: int, starts: Sequence[int] = (1, 2), exact: bool = False) -> Iterator[Weave]:
    """Depth-first stream of all nonempty weaves of cost at most `budget`.

    With ``exact=True`` only weaves of cost exactly `budget` are produced.
    """
    if budget < 0:
        raise ValueError("budget must be non-negative")

    def grow(blocks: list[int], left: int):
        # blocks are in application order: blocks[0] is n_1
        for size in range(2, left + 1, 2):
            for sgn in (1, -1):
                blocks.append(sgn * size)
                cost = budget - left + size
                if not exact or cost == budget:
                    yield list(blocks)
                yield from grow(blocks, left - size)
                blocks.pop()

    for g in starts:
        for blocks in grow([], budget):
            yield Weave(tuple(reversed(blocks)), g)


def count_weaves(budget: int, starts: int = 2) -> int:
    """Closed count ``starts * 2 * (3**u - 1) / 2`` of weaves with cost at most `budget`."""
    u = budget // 2
    return starts * (3**u - 1)


def weave_unitary(model: AnyonModel, w: Weave) -> np.ndarray:
    """Ordered product for `w`; the empty weave gives the identity."""
    M = np.eye(2, dtype=complex)
    for g, e in zip(w.generators, w.exponents):
        M = M @ np.linalg.matrix_power(model.generator(g), e)
    return M


@dataclass
class SearchRecord:
    """Best weave for one (model, target) pair."""

    model: str
    alpha: float | None
    target: str
    metric: str
    budget: int
    error: float
    weave: Weave
    wall_time: float = 0.0

    @property
    def cost(self) -> int:
        return self.weave.cost


def _squares(model: AnyonModel) -> np.ndarray:
    """``G[g, s]`` = sigma_{g+1}^{+2} for s = 0 and sigma_{g+1}^{-2} for s = 1."""
    out = np.empty((2, 2, 2, 2), dtype=complex)
    for g, S in enumerate((model.sigma1, model.sigma2)):
        S2 = S @ S
        out[g, 0] = S2
        out[g, 1] = np.linalg.inv(S2)
    return out


def _reconstruct(levels: list[tuple[np.ndarray, np.ndarray, np.ndarray]], u: int, idx: int) -> Weave:
    steps = []
    while u >= 1:
        gen, sgn, parent = levels[u - 1]
        steps.append((int(gen[idx]), 1 if sgn[idx] == 0 else -1))
        idx = int(parent[idx])
        u -= 1
    steps.reverse()  # first applied first
    blocks: list[list[int]] = []
    for g, s in steps:
        if blocks and blocks[-1][0] == g:
            blocks[-1][1] += 2 * s
        else:
            blocks.append([g, 2 * s])
    start = blocks[0][0] + 1
    return Weave(tuple(b[1] for b in reversed(blocks)), start)


def best_approx(
    model: AnyonModel,
    target: Gate | str,
    budget: int = 24,
    metric: Metric = "opnorm",
    starts: Sequence[int] = (1, 2),
    exact: bool = False,
    alpha: float | None = None,
) -> SearchRecord:
    """Exhaustive search for the weave closest to `target`.

    Ties within ``1e-12`` go to the smaller cost, then the lexicographically
    smaller exponent vector ``(n_m, ..., n_1)``, then start generator 1.

    Parameters
    ----------
    budget : int
        Maximum cost; must be even and at least 2.
    starts : sequence of int
        Allowed generators for the first-applied block.
    exact : bool
        Only consider weaves of cost exactly `budget`.
    """
    if budget < 2 or budget % 2:
        raise ValueError(f"budget must be an even integer >= 2, got {budget}")
    if isinstance(target, str):
        target = gate(target)
    t0 = time.perf_counter()
    G = _squares(model)
    V = target.matrix

    gen = np.array([0, 0, 1, 1], dtype=np.int8)
    sgn = np.array([0, 1, 0, 1], dtype=np.int8)
    keep = np.isin(gen + 1, list(starts))
    gen, sgn = gen[keep], sgn[keep]
    mats = G[gen, sgn]
    parent = np.full(len(gen), -1, dtype=np.int64)

    levels = [(gen, sgn, parent)]
    best_err = np.inf
    cands: list[tuple[int, np.ndarray]] = []
    L = budget // 2
    errs_by_level = []
    for u in range(1, L + 1):
        if u > 1:
            pg, ps = gen, sgn
            n = len(pg)
            other = (1 - pg).astype(np.int8)
            # extend the active block, or open a new block of either sign
            ext = np.matmul(G[pg, ps], mats)
            new_p = np.matmul(G[other, 0], mats)
            new_m = np.matmul(G[other, 1], mats)
            mats = np.concatenate([ext, new_p, new_m])
            gen = np.concatenate([pg, other, other])
            sgn = np.concatenate([ps, np.zeros(n, np.int8), np.ones(n, np.int8)])
            base = np.arange(n, dtype=np.int64)
            parent = np.concatenate([base, base, base])
            levels.append((gen, sgn, parent))
        if exact and u < L:
            errs_by_level.append(None)
            continue
        errs = batch_distance(mats, V, metric)
        errs_by_level.append(errs)
        best_err = min(best_err, float(errs.min()))

    for u, errs in enumerate(errs_by_level, start=1):
        if errs is None:
            continue
        for idx in np.flatnonzero(errs <= best_err + TIE_TOL):
            cands.append((u, int(idx)))
    weaves = [_reconstruct(levels, u, idx) for u, idx in cands]
    w = min(weaves, key=Weave.sort_key)
    err = distance(weave_unitary(model, w), V, metric)
    return SearchRecord(
        model=model.tag,
        alpha=alpha,
        target=target.name,
        metric=metric,
        budget=budget,
        error=err,
        weave=w,
        wall_time=time.perf_counter() - t0,
    )


def best_approx_reference(
    model: AnyonModel,
    target: Gate | str,
    budget: int,
    metric: Metric = "opnorm",
    exclude: Weave | None = None,
) -> tuple[float, Weave]:
    """Slow scan over :func:`enumerate_weaves`, for cross-checking small budgets."""
    if isinstance(target, str):
        target = gate(target)
    best: tuple[float, tuple, Weave] | None = None
    for w in enumerate_weaves(budget):
        if w == exclude:
            continue
        e = distance(weave_unitary(model, w), target.matrix, metric)
        key = (e, w.sort_key())
        if best is None or e < best[0] - TIE_TOL or (abs(e - best[0]) <= TIE_TOL and key[1] < best[1]):
            best = (e, key[1], w)
    assert best is not None
    return best[0], best[2]


# ---------------------------------------------------------------------------
# sweeps


@dataclass(frozen=True)
class SweepConfig:
    """Grid of alpha values and the search settings applied at each point."""

    alpha_start: float
    alpha_end: float
    alpha_step: float = 1e-3
    budget: int = 24
    targets: tuple[str, ...] = ("iX", "iZ", "T")
    metric: Metric = "opnorm"
    threads: int = 1
    refine: bool = False
    starts: tuple[int, ...] = (1, 2)
    exact: bool = False

    def __post_init__(self):
        if self.alpha_step <= 0:
            raise ValueError("alpha_step must be positive")
        if self.alpha_end < self.alpha_start:
            raise ValueError("alpha_end must not precede alpha_start")
        if self.budget < 2 or self.budget % 2:
            raise ValueError("budget must be an even integer >= 2")
        for t in self.targets:
            gate(t)

    def grid(self) -> list[float]:
        count = int(np.floor((self.alpha_end - self.alpha_start) / self.alpha_step + 1e-9)) + 1
        return [round(self.alpha_start + j * self.alpha_step, 12) for j in range(count)]


@dataclass
class SweepResult:
    records: list[SearchRecord]
    skipped: list[float] = field(default_factory=list)

    def best(self, target: str) -> SearchRecord:
        rows = [r for r in self.records if r.target == target]
        return min(rows, key=lambda r: (r.error, r.alpha))


def _search_alpha(alpha: float, cfg: SweepConfig) -> list[SearchRecord] | None:
    try:
        model = unrolled_model(alpha)
    except (IndefiniteForm, SingularAlpha) as exc:
        log.info("skipping alpha=%s: %s", alpha, exc)
        return None
    return [
        best_approx(model, t, cfg.budget, cfg.metric, cfg.starts, cfg.exact, alpha=alpha)
        for t in cfg.targets
    ]


def _run_grid(alphas: Sequence[float], cfg: SweepConfig) -> tuple[list[SearchRecord], list[float]]:
    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(pool.map(lambda a: _search_alpha(a, cfg), alphas))
    else:
        results = [_search_alpha(a, cfg) for a in alphas]
    records, skipped = [], []
    for a, res in zip(alphas, results):
        if res is None:
            skipped.append(a)
        else:
            records.extend(res)
    return records, skipped


def run_sweep(cfg: SweepConfig) -> SweepResult:
    """Search every grid point and target; optionally refine around each target's minimum.

    Output order is by target (in ``cfg.targets`` order) then alpha, regardless
    of thread count.
    """
    records, skipped = _run_grid(cfg.grid(), cfg)
    if cfg.refine and records:
        fine_step = cfg.alpha_step / 10
        seen = {(r.target, r.alpha) for r in records}
        extra: list[SearchRecord] = []
        for t in cfg.targets:
            rows = [r for r in records if r.target == t]
            best = min(rows, key=lambda r: (r.error, r.alpha))
            pts = [round(best.alpha + j * fine_step, 12) for j in range(-9, 10) if j]
            sub = SweepConfig(
                best.alpha, best.alpha, fine_step, cfg.budget, (t,), cfg.metric,
                cfg.threads, False, cfg.starts, cfg.exact,
            )
            recs, skip = _run_grid(pts, sub)
            extra.extend(r for r in recs if (r.target, r.alpha) not in seen)
            skipped.extend(skip)
        records.extend(extra)
    order = {t: j for j, t in enumerate(cfg.targets)}
    records.sort(key=lambda r: (order[r.target], r.alpha))
    return SweepResult(records, sorted(set(skipped)))


def sweep_alpha(cfg: SweepConfig) -> list[SearchRecord]:
    """Records of :func:`run_sweep`; indefinite or singular alpha are skipped and logged."""
    return run_sweep(cfg).records


def fibonacci_baseline(
    targets: Sequence[str], budget: int = 24, metric: Metric = "opnorm",
    starts: Sequence[int] = (1, 2), exact: bool = False,
) -> list[SearchRecord]:
    model = fibonacci_model()
    return [best_approx(model, t, budget, metric, starts, exact) for t in targets]

