"""Where is the unrolled qubit unitary?

Scans H(3, 0, alpha) across (0, 4) and prints the signature of its invariant
form on a coarse grid, next to the sign prediction from the two closed-form
norms. The form is positive definite only on (1/3, 5/3) mod 4.

Run: python3 demos/definiteness_window.py
"""
import numpy as np

from anyonweave.errors import SingularAlpha
from anyonweave.fusion import FusionSpace, signature
from anyonweave.verify import definiteness_pattern


def main():
    print(f"{'alpha':>6}  {'signature':>9}  {'predicted':>9}")
    for a in np.arange(0.05, 4.0, 0.1):
        a = round(float(a), 3)
        try:
            sig = signature(FusionSpace(3, 0, a))
        except SingularAlpha:
            print(f"{a:6.2f}  {'singular':>9}")
            continue
        mark = "  <- unitary" if sig == (2, 0) else ""
        print(f"{a:6.2f}  {str(sig):>9}  {str(definiteness_pattern(a)):>9}{mark}")


if __name__ == "__main__":
    main()
