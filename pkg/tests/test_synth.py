import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from anyonweave.gates import Gate, distance, fibonacci_model, gate, unrolled_model
from anyonweave.scalar import q_pow
from anyonweave.synth import (
    SweepConfig,
    Weave,
    best_approx,
    best_approx_reference,
    count_weaves,
    enumerate_weaves,
    fibonacci_baseline,
    run_sweep,
    sweep_alpha,
    weave_unitary,
)


def recursive_count(budget):
    """Weaves of cost <= budget with one start generator, counted block by block."""
    if budget < 2:
        return 0
    # a first block of size s (two signs), then nothing or any continuation
    return sum(2 * (1 + recursive_count(budget - s)) for s in range(2, budget + 1, 2))


blocks = st.lists(st.integers(1, 4).map(lambda m: 2 * m) | st.integers(-4, -1).map(lambda m: 2 * m),
                  min_size=1, max_size=6)


def test_weave_validation():
    with pytest.raises(ValueError):
        Weave((3,), 1)
    with pytest.raises(ValueError):
        Weave((2, 0, 2), 1)
    with pytest.raises(ValueError):
        Weave((2,), 3)
    w = Weave((4, -2, 2), 2)
    assert w.cost == 8
    assert w.generators == (2, 1, 2)
    assert w.word() == [2, 2, 2, 2, -1, -1, 2, 2]
    assert w.format() == "2:2;-2;4"


@given(blocks, st.sampled_from([1, 2]))
def test_format_roundtrip(exps, start):
    w = Weave(tuple(exps), start)
    assert Weave.parse(w.format()) == w


def test_enumeration_counts():
    assert len(list(enumerate_weaves(2))) == 4
    assert len(list(enumerate_weaves(4))) == 16
    for b in range(2, 11, 2):
        ws = list(enumerate_weaves(b))
        assert len(ws) == 2 * recursive_count(b) == count_weaves(b)
        assert len(set(ws)) == len(ws)
        assert all(w.cost <= b for w in ws)
    assert all(w.cost == 8 for w in enumerate_weaves(8, exact=True))
    assert all(w.start == 2 for w in enumerate_weaves(6, starts=(2,)))


def test_weave_unitary():
    a = 0.6
    m = unrolled_model(a)
    assert np.allclose(weave_unitary(m, Weave((), 1)), np.eye(2))
    want = np.diag([q_pow((a + 1) ** 2), q_pow((a - 1) ** 2)])
    assert np.abs(weave_unitary(m, Weave((2,), 1)) - want).max() < 1e-12
    w = Weave((4, -2, 2, 6), 2)
    U = weave_unitary(m, w)
    assert np.abs(U @ weave_unitary(m, w.inverse()) - np.eye(2)).max() < 1e-10
    assert np.abs(U.conj().T @ U - np.eye(2)).max() < 1e-10


@pytest.mark.parametrize("budget", [6, 8])
@pytest.mark.parametrize("target", ["iX", "iZ", "T", "H"])
@pytest.mark.parametrize("model", [fibonacci_model(), unrolled_model(0.71)], ids=["fib", "unrolled"])
def test_matches_reference(model, target, budget):
    r = best_approx(model, target, budget)
    err, w = best_approx_reference(model, target, budget)
    assert r.weave == w
    assert r.error == pytest.approx(err, abs=1e-12)


def test_frozen_small_budget_results():
    # budget-10 optima found by the slow reference scan
    cases = [
        (fibonacci_model(), "iX", 0.2613700917790104, "1:2;-2;2;-4"),
        (fibonacci_model(), "T", 0.2350747949156769, "1:-4"),
        (unrolled_model(0.7639), "T", 0.1722922350183075, "2:2;2;-2;2;2"),
        (unrolled_model(0.6002), "iX", 0.2620218486565084, "1:2;-2;2;-4"),
    ]
    for model, target, err, weave in cases:
        r = best_approx(model, target, 10)
        assert r.error == pytest.approx(err, abs=1e-12)
        assert r.weave.format() == weave


def test_target_in_search_space():
    m = unrolled_model(0.9)
    w = Weave((2, -4, 2), 1)
    r = best_approx(m, Gate("w", weave_unitary(m, w)), 10)
    assert r.error < 1e-10
    assert r.cost <= 8


def test_exhaustive_spot_check():
    # symmetric partners often tie, so only a unique optimum must get strictly worse
    for model, target in [(fibonacci_model(), "iX"), (unrolled_model(0.9), "iZ")]:
        err, w = best_approx_reference(model, target, 8)
        err2, w2 = best_approx_reference(model, target, 8, exclude=w)
        assert w2 != w and err2 >= err - 1e-12
    m = unrolled_model(0.71)
    err, w = best_approx_reference(m, "T", 8)
    err2, _ = best_approx_reference(m, "T", 8, exclude=w)
    assert err2 > err + 1e-3


def test_record_reproducible():
    m = unrolled_model(0.8)
    for t in ("iX", "T"):
        r = best_approx(m, t, 12)
        assert distance(weave_unitary(m, r.weave), gate(t).matrix) == pytest.approx(r.error, abs=1e-12)
        assert r.error >= 0 and r.cost <= 12


def test_flags():
    m = unrolled_model(0.8)
    r = best_approx(m, "iZ", 10, exact=True)
    assert r.cost == 10
    r = best_approx(m, "iZ", 10, starts=(2,))
    assert r.weave.start == 2
    with pytest.raises(ValueError):
        best_approx(m, "iZ", 7)


def test_sweep_config():
    with pytest.raises(ValueError):
        SweepConfig(0.5, 0.6, 0.0)
    with pytest.raises(ValueError):
        SweepConfig(0.6, 0.5)
    with pytest.raises(KeyError):
        SweepConfig(0.5, 0.6, targets=("Y",))
    assert SweepConfig(0.5, 0.6, 0.05).grid() == [0.5, 0.55, 0.6]


def test_sweep_ordering_and_threads():
    cfg = SweepConfig(0.25, 0.45, 0.05, 8, ("T", "iX"))
    res = run_sweep(cfg)
    # 0.25 and 0.3 lie outside the positive definite window
    assert res.skipped == [0.25, 0.3]
    assert [(r.target, r.alpha) for r in res.records] == [
        (t, a) for t in ("T", "iX") for a in (0.35, 0.4, 0.45)
    ]
    threaded = run_sweep(SweepConfig(0.25, 0.45, 0.05, 8, ("T", "iX"), threads=4))
    assert [(r.alpha, r.error, r.weave) for r in threaded.records] == [
        (r.alpha, r.error, r.weave) for r in res.records
    ]
    assert [(r.alpha, r.error) for r in sweep_alpha(cfg)] == [(r.alpha, r.error) for r in res.records]


def test_refine():
    cfg = SweepConfig(0.7, 0.8, 0.05, 8, ("T",), refine=True)
    res = run_sweep(cfg)
    alphas = [r.alpha for r in res.records]
    assert alphas == sorted(alphas)
    assert len(alphas) == 3 + 18
    best = res.best("T")
    coarse = min(r.error for r in res.records if r.alpha in (0.7, 0.75, 0.8))
    assert best.error <= coarse


def test_fibonacci_baseline():
    recs = fibonacci_baseline(("iX", "T"), 8)
    assert [r.target for r in recs] == ["iX", "T"]
    assert all(r.model == "fibonacci" and r.alpha is None for r in recs)
