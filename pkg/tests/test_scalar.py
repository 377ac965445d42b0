import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from anyonweave.errors import SingularAlpha
from anyonweave.scalar import bracket, curly, is_singular_alpha, mod_dim, q_pow

finite = st.floats(min_value=-50, max_value=50, allow_nan=False)


def test_q_pow_values():
    assert q_pow(1) == pytest.approx(1j)
    assert q_pow(0.5) == pytest.approx(cmath.exp(1j * math.pi / 4))
    assert q_pow(2) == pytest.approx(-1)


def test_bracket_values():
    assert bracket(1) == pytest.approx(1)
    assert bracket(2) == pytest.approx(0, abs=1e-15)
    assert bracket(0.37 + 2) == pytest.approx(-bracket(0.37))


def test_bracket_from_q_numbers():
    # [x] = {x}/{1} with {x} = q^x - q^-x
    for x in (0.3, 1.7, -2.25):
        assert bracket(x) == pytest.approx(((q_pow(x) - q_pow(-x)) / (q_pow(1) - q_pow(-1))).real)
        assert curly(x) == pytest.approx(q_pow(x) - q_pow(-x))


def test_mod_dim():
    assert mod_dim(0) == pytest.approx(-1)
    assert mod_dim(0.5) == pytest.approx(-math.sqrt(2))
    assert mod_dim(0.8 + 4) == pytest.approx(mod_dim(0.8))
    # closed form -2 sin(pi a / 2) / sin(pi a)
    a = 0.43
    assert mod_dim(a) == pytest.approx(-2 * math.sin(math.pi * a / 2) / math.sin(math.pi * a))
    with pytest.raises(SingularAlpha):
        mod_dim(1.0)


def test_is_singular_alpha():
    assert is_singular_alpha(1.0, 1e-9)
    assert not is_singular_alpha(0.5, 1e-9)
    assert is_singular_alpha(2.0 - 1e-12, 1e-9)
    with pytest.raises(ValueError):
        is_singular_alpha(0.5, 0.0)


@given(finite)
def test_q_pow_unit_modulus(x):
    assert abs(abs(q_pow(x)) - 1) < 1e-12


@given(finite)
def test_bracket_identities(x):
    assert abs(bracket(x + 2) + bracket(x)) < 1e-12
    assert abs(bracket(2 - x) - bracket(x)) < 1e-12


@given(st.floats(min_value=-20, max_value=20))
def test_mod_dim_inverse_bracket(a):
    if abs(bracket(a + 1)) < 1e-6:
        return
    assert abs(mod_dim(a) * bracket(a + 1) + 1) < 1e-12
