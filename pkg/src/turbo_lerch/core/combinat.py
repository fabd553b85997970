"""
Exact combinatorial kernels: Stirling numbers of the first kind, rising
factorial expansions, Pochhammer symbols and binomial coefficients.
"""

import math
from enum import Enum
from functools import lru_cache
from typing import List, Tuple, Union

from turbo_lerch.core import special
from turbo_lerch.core.errors import PoleError, RangeError

N_MAX = 64


class Convention(str, Enum):
    UNSIGNED = "unsigned"
    SIGNED = "signed"


class StirlingTable:
    """
    Triangular table of Stirling numbers of the first kind, rows 0..n_max.
    Rows are built once with exact integers and never mutated afterwards.
    """

    def __init__(self, n_max: int = N_MAX, convention: Convention = Convention.UNSIGNED):

        if not 0 <= n_max <= N_MAX:
            raise RangeError(f"n_max must lie in [0, {N_MAX}], got {n_max}")

        self.n_max = n_max
        self.convention = Convention(convention)
        self._rows = _unsigned_rows(n_max)

    @property
    def rows(self) -> Tuple[Tuple[int, ...], ...]:
        if self.convention is Convention.UNSIGNED:
            return self._rows
        return tuple(
            tuple((-1) ** (n - k) * c for k, c in enumerate(row))
            for n, row in enumerate(self._rows)
        )

    def __call__(self, n: int, j: int) -> int:

        _check_indices(n, j, self.n_max)
        value = self._rows[n][j]
        if self.convention is Convention.SIGNED:
            value *= (-1) ** (n - j)
        return value


@lru_cache(maxsize=None)
def _unsigned_rows(n_max: int) -> Tuple[Tuple[int, ...], ...]:

    rows = [(1,)]
    # c(n+1, k) = n*c(n, k) + c(n, k-1)
    for n in range(n_max):
        prev = rows[-1]
        row = [0] * (n + 2)
        for k in range(n + 2):
            left = prev[k] if k <= n else 0
            down = prev[k - 1] if k >= 1 else 0
            row[k] = n * left + down
        rows.append(tuple(row))
    return tuple(rows)


def _check_indices(n: int, j: int, n_max: int = N_MAX):

    if not (isinstance(n, int) and isinstance(j, int)):
        raise RangeError(f"Stirling indices must be integers, got ({n!r}, {j!r})")
    if not 0 <= j <= n <= n_max:
        raise RangeError(f"Stirling indices out of range: 0 <= j={j} <= n={n} <= {n_max}")


def stirling1(n: int, j: int, convention: Union[Convention, str] = Convention.SIGNED) -> int:
    """S_n^{(j)}; signed values satisfy signed(n, j) = (-1)^(n-j) unsigned(n, j)."""

    _check_indices(n, j)
    value = _unsigned_rows(N_MAX)[n][j]
    if Convention(convention) is Convention.SIGNED:
        value *= (-1) ** (n - j)
    return value


def rising_factorial_expand(n: int) -> List[int]:
    """Coefficients c_j with x(x+1)...(x+n-1) = sum_j c_j x^j."""

    if not isinstance(n, int) or not 0 <= n <= N_MAX:
        raise RangeError(f"rising factorial order must lie in [0, {N_MAX}], got {n!r}")

    coeffs = [1]
    for r in range(n):
        # multiply by (x + r)
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i] += r * c
            nxt[i + 1] += c
        coeffs = nxt
    return coeffs


def _integer_value(n) -> Union[int, None]:

    if isinstance(n, bool):
        return None
    if isinstance(n, int):
        return n
    z = complex(n)
    if z.imag == 0 and z.real == math.floor(z.real) and abs(z.real) < 2**31:
        return int(z.real)
    return None


def pochhammer(x, n) -> complex:
    """
    Rising factorial (x)_n. Nonnegative integer n uses the direct product,
    any other n the ratio Gamma(x+n)/Gamma(x).
    """
    x = complex(x)
    k = _integer_value(n)

    if k is not None and k >= 0:
        acc = 1.0 + 0.0j
        for r in range(k):
            acc *= x + r
        return acc

    n = complex(n)
    top = x + n
    if special.is_nonpositive_integer(top):
        if special.is_nonpositive_integer(x):
            # both arguments are poles: finite limit via reflection-free product
            count = int(round(top.real - x.real))
            if count < 0:
                # (x)_{-m} = 1/(x-m)_m
                denom = pochhammer(top, -count)
                if denom == 0:
                    raise PoleError(f"pochhammer pole at x+n={top}", location=top)
                return 1.0 / denom
        raise PoleError(f"pochhammer pole at x+n={top}", location=top)
    if special.is_nonpositive_integer(x):
        return 0.0j
    return special.gamma(top) / special.gamma(x)


def binom(x, n: int) -> complex:
    """Generalized binomial coefficient binom(x, n) for integer n >= 0."""

    if not isinstance(n, int) or n < 0:
        raise RangeError(f"binomial lower index must be a nonnegative integer, got {n!r}")
    x = complex(x)
    return pochhammer(x - n + 1, n) / math.factorial(n)


def pochhammer_dx(x, n: int) -> complex:
    """d/dx (x)_n = sum_p p c(n, p) x^(p-1) with unsigned c(n, p) and 0^0 = 1."""

    if not isinstance(n, int) or not 0 <= n <= N_MAX:
        raise RangeError(f"rising factorial order must lie in [0, {N_MAX}], got {n!r}")
    x = complex(x)
    acc = 0j
    for p, c in enumerate(rising_factorial_expand(n)):
        if p == 0 or c == 0:
            continue
        acc += p * c * (x ** (p - 1) if p > 1 else 1.0)
    return acc
