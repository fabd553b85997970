import math

import mpmath
import numpy as np
import pytest

from turbo_lerch.core.combinat import (
    N_MAX,
    Convention,
    StirlingTable,
    binom,
    pochhammer,
    pochhammer_dx,
    rising_factorial_expand,
    stirling1,
)
from turbo_lerch.core.errors import PoleError, RangeError


def test_rows_match_rising_factorial_expansion():

    table = StirlingTable(20)
    for n in range(21):
        assert list(table.rows[n]) == rising_factorial_expand(n)


def test_unsigned_recurrence():

    rows = StirlingTable().rows
    for n in range(1, N_MAX):
        for k in range(1, n + 1):
            assert rows[n + 1][k] == n * rows[n][k] + rows[n][k - 1]


def test_known_values():

    assert stirling1(4, 2, Convention.UNSIGNED) == 11
    assert stirling1(4, 2, Convention.SIGNED) == 11
    assert stirling1(4, 1, Convention.SIGNED) == -6
    assert stirling1(5, 5) == 1
    assert stirling1(5, 0) == 0
    assert stirling1(0, 0) == 1


def test_signed_is_alternating_unsigned():

    for n in range(12):
        for j in range(n + 1):
            assert stirling1(n, j, "signed") == (-1) ** (n - j) * stirling1(n, j, "unsigned")


def test_table_rows_stay_exact_integers():

    row = StirlingTable(N_MAX).rows[N_MAX]
    assert all(isinstance(c, int) for c in row)
    assert row[1] == math.factorial(N_MAX - 1)


def test_out_of_range_indices():

    with pytest.raises(RangeError):
        stirling1(N_MAX + 1, 1)
    with pytest.raises(RangeError):
        stirling1(3, 4)
    with pytest.raises(RangeError):
        rising_factorial_expand(-1)
    with pytest.raises(RangeError):
        StirlingTable(N_MAX + 1)


def test_pochhammer_integer_and_gamma_paths():

    assert pochhammer(3, 4) == 3 * 4 * 5 * 6
    assert pochhammer(2.5 + 1j, 0) == 1
    assert pochhammer(-3, 2) == (-3) * (-2)
    assert pochhammer(-2, 5) == 0
    assert abs(pochhammer(0.5, 0.25) - complex(mpmath.rf(0.5, 0.25))) < 1e-13


def test_pochhammer_split_identity():

    rng = np.random.default_rng(7)
    for _ in range(50):
        x = complex(rng.uniform(-3, 3), rng.uniform(-2, 2))
        n, m = int(rng.integers(0, 6)), int(rng.integers(0, 6))
        whole = pochhammer(x, n + m)
        split = pochhammer(x, n) * pochhammer(x + n, m)
        assert abs(whole - split) <= 1e-12 * max(1.0, abs(whole))


def test_pochhammer_pole():
    with pytest.raises(PoleError):
        pochhammer(0.5, -1.5)


def test_binom_complex_upper():

    assert binom(5, 2) == 10
    assert abs(binom(-0.5, 3) - complex(mpmath.binomial(-0.5, 3))) < 1e-14
    assert abs(binom(1 + 1j, 2) - (1 + 1j) * 1j / 2) < 1e-14
    with pytest.raises(RangeError):
        binom(2, -1)


def test_pochhammer_dx_against_central_difference():

    h = 1e-6
    for n in range(6):
        for x in (0.3, 1.7, -2.2 + 0.4j):
            fd = (pochhammer(x + h, n) - pochhammer(x - h, n)) / (2 * h)
            assert abs(pochhammer_dx(x, n) - fd) <= 1e-6 * max(1.0, abs(fd))
