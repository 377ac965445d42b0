"""Compiling single-qubit gates with weaves.

For a few alpha in the definite window, find the best weave of cost <= 24 for
iX, iZ and T, and compare with the Fibonacci model at the same budget.

Run: python3 demos/weave_search.py
"""
from anyonweave.gates import fibonacci_model, unrolled_model
from anyonweave.synth import best_approx

BUDGET = 24
CASES = [(0.6002, "iX"), (0.8448, "iZ"), (0.7639, "T")]


def report(label, rec):
    print(f"{label:<18} {rec.target:>2}  error {rec.error:.3e}  cost {rec.cost:2d}  "
          f"weave {rec.weave.format()}  ({rec.wall_time:.2f} s)")


def main():
    for a, t in CASES:
        report(f"unrolled({a})", best_approx(unrolled_model(a), t, BUDGET, alpha=a))
    fib = fibonacci_model()
    for t in ("iX", "iZ", "T"):
        report("fibonacci", best_approx(fib, t, BUDGET))


if __name__ == "__main__":
    main()
