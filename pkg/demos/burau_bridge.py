"""The reduced Burau representation inside the fusion spaces.

At s = i q^alpha the Burau matrices and the H(n, n-3) generators agree up to a
diagonal change of basis and a scalar per generator. This prints the residuals
and the sign relating the Squier form to the fusion pairing.

Run: python3 demos/burau_bridge.py
"""
from anyonweave.errors import SingularAlpha
from anyonweave.fusion import burau_iso_check


def main():
    for n in (3, 4, 5):
        for a in (0.6, 0.61, 1.4):
            try:
                rep = burau_iso_check(n, a)
            except SingularAlpha as exc:
                print(f"n={n} alpha={a:<5} singular: {exc}")
                continue
            print(f"n={n} alpha={a:<5} projective {rep.max_residual:.1e}  "
                  f"form {rep.form_residual:.1e}  sign {rep.form_sign:+d} (expected {rep.expected_sign:+d})")


if __name__ == "__main__":
    main()
