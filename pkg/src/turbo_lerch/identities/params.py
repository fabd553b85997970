"""
Parameter sets and validity conditions of the identity families.
"""

import math
from typing import Callable, Dict, Iterable, Iterator, Mapping, NamedTuple, Optional, Union

from turbo_lerch.core.errors import CatalogError, ValidityError

Number = Union[int, float, complex]


class ParamSet(Mapping):
    """
    Immutable binding of the free symbols of one identity (a, b, c, v, m, s, k,
    n, p, q, alpha, mu, z ...). Values are stored as complex numbers; integer
    symbols are read back with `integer()`.
    """

    __slots__ = ("_values",)

    def __init__(self, values: Union[Mapping[str, Number], None] = None, **kwargs: Number):

        merged = dict(values or {})
        merged.update(kwargs)
        items = {}
        for key, value in merged.items():
            try:
                items[str(key)] = complex(value)
            except (TypeError, ValueError) as exc:
                raise CatalogError(f"parameter '{key}' is not a number: {value!r}", field="params") from exc
        object.__setattr__(self, "_values", items)

    def __getitem__(self, key: str) -> complex:
        return self._values[key]

    def __iter__(self) -> Iterator[str]:
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __getattr__(self, key: str) -> complex:

        try:
            return self._values[key]
        except KeyError:
            raise AttributeError(f"ParamSet has no parameter '{key}'") from None

    def __setattr__(self, key, value):
        raise AttributeError("ParamSet is immutable")

    def __repr__(self) -> str:

        body = ", ".join(f"{k}={_short(v)}" for k, v in sorted(self._values.items()))
        return f"ParamSet({body})"

    def __reduce__(self):
        return (ParamSet, (self._values,))

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._values.items(), key=lambda kv: kv[0])))

    def replace(self, **changes: Number) -> "ParamSet":

        values = dict(self._values)
        values.update(changes)
        return ParamSet(values)

    def integer(self, key: str) -> int:
        """Reads an integer symbol such as n, raising CatalogError otherwise."""

        value = self._values[key]
        if value.imag != 0 or value.real != math.floor(value.real):
            raise CatalogError(f"parameter '{key}' must be an integer, got {_short(value)}", field="params")
        return int(value.real)

    def to_json(self) -> Dict[str, object]:

        out: Dict[str, object] = {}
        for key, value in sorted(self._values.items()):
            if value.imag == 0:
                real = value.real
                out[key] = int(real) if real == math.floor(real) and abs(real) < 2**53 else real
            else:
                out[key] = {"re": value.real, "im": value.imag}
        return out


def _short(value: complex) -> str:

    if value.imag == 0:
        return f"{value.real:g}"
    return f"{value.real:g}{value.imag:+g}j"


def parse_params(raw: Mapping[str, object]) -> ParamSet:
    """Accepts numbers, numeric strings, or {"re": .., "im": ..} objects."""

    values = {}
    for key, value in raw.items():
        if isinstance(value, Mapping):
            try:
                values[key] = complex(float(value.get("re", 0.0)), float(value.get("im", 0.0)))
            except (TypeError, ValueError) as exc:
                raise CatalogError(f"bad complex value for '{key}': {value!r}", field="params") from exc
        elif isinstance(value, str):
            try:
                values[key] = complex(value.replace(" ", "").replace("i", "j"))
            except ValueError as exc:
                raise CatalogError(f"bad number for '{key}': {value!r}", field="params") from exc
        else:
            values[key] = value
    return ParamSet(values)


class Condition(NamedTuple):
    text: str
    check: Callable[[ParamSet], bool]
    # signed distance to the boundary, positive inside; None for discrete conditions
    slack: Optional[Callable[[ParamSet], float]] = None


def _is_int(x: complex, lo: int = -(2**31)) -> bool:
    return x.imag == 0 and x.real == math.floor(x.real) and x.real >= lo


def _above(text: str, value: Callable[[ParamSet], float], bound: float) -> Condition:
    return Condition(text, lambda p: value(p) > bound, lambda p: value(p) - bound)


def _between(text: str, lo: Callable[[ParamSet], float], value, hi) -> Condition:
    return Condition(
        text,
        lambda p: lo(p) < value(p) < hi(p),
        lambda p: min(value(p) - lo(p), hi(p) - value(p)),
    )


def _zero(p: ParamSet) -> float:
    return 0.0


# Validity conditions by tag. The text is what reports print.
CONDITIONS: Dict[str, Condition] = {
    "re_m_pos": _above("Re(m) > 0", lambda p: p.m.real, 0),
    "re_m_gt_neg1": _above("Re(m) > -1", lambda p: p.m.real, -1),
    "re_s_pos": _above("Re(s) > 0", lambda p: p.s.real, 0),
    "re_s_gt_neg1": _above("Re(s) > -1", lambda p: p.s.real, -1),
    "re_v_pos": _above("Re(v) > 0", lambda p: p.v.real, 0),
    "re_v_gt_1": _above("Re(v) > 1", lambda p: p.v.real, 1),
    "re_a_pos": _above("Re(a) > 0", lambda p: p.a.real, 0),
    "re_p_pos": _above("Re(p) > 0", lambda p: p.p.real, 0),
    "re_q_pos": _above("Re(q) > 0", lambda p: p.q.real, 0),
    "re_alpha_pos": _above("Re(alpha) > 0", lambda p: p.alpha.real, 0),
    "re_mu_pos": _above("Re(mu) > 0", lambda p: p.mu.real, 0),
    "m_in_unit": _between("0 < Re(m) < 1", _zero, lambda p: p.m.real, lambda p: 1.0),
    "m_lt_v": _between("0 < Re(m) < Re(v)", _zero, lambda p: p.m.real, lambda p: p.v.real),
    "m_lt_nv": _between(
        "0 < Re(m) < Re(v) (n+1)", _zero, lambda p: p.m.real, lambda p: p.v.real * (p.n.real + 1)
    ),
    "s_lt_n": _between("0 < Re(s) < n", _zero, lambda p: p.s.real, lambda p: p.n.real),
    "a_lt_n1": _between("0 < Re(a) < n+1", _zero, lambda p: p.a.real, lambda p: p.n.real + 1),
    "alpha_lt_mu_m": _between(
        "0 < Re(alpha) < Re(mu) m", _zero, lambda p: p.alpha.real, lambda p: p.mu.real * p.m.real
    ),
    "mu_arg_z": Condition(
        "Re(mu) |arg z| < pi",
        lambda p: p.mu.real * abs(math.atan2(p.z.imag, p.z.real)) < math.pi,
        lambda p: math.pi - p.mu.real * abs(math.atan2(p.z.imag, p.z.real)),
    ),
    "m_lt_2n2": _between("0 < m < 2n+2", _zero, lambda p: p.m.real, lambda p: 2 * p.n.real + 2),
    "a_lt_inv_v": Condition(
        "Re(a) < 1/Re(v)", lambda p: p.a.real < 1.0 / p.v.real, lambda p: 1.0 / p.v.real - p.a.real
    ),
    "abs_re_b_lt_1": Condition("|Re(b)| < 1", lambda p: abs(p.b.real) < 1, lambda p: 1 - abs(p.b.real)),
    "arg_b": Condition("|arg(b)| < pi", lambda p: not (p.b.imag == 0 and p.b.real <= 0)),
    "arg_neg_a": Condition("|arg(-a)| < pi", lambda p: not (p.a.imag == 0 and p.a.real >= 0)),
    "b_ne_1": Condition("Re(b) != 1", lambda p: p.b.real != 1, lambda p: abs(p.b.real - 1)),
    "n_nonneg": Condition("n = 0, 1, 2, ...", lambda p: _is_int(p.n, 0)),
    "n_pos": Condition("n = 1, 2, 3, ...", lambda p: _is_int(p.n, 1)),
    "n_zero": Condition("n = 0", lambda p: p.n == 0),
    "m_pos_int": Condition("m = 1, 2, 3, ...", lambda p: _is_int(p.m, 1)),
}


def check_validity(params: ParamSet, tags: Iterable[str], margin: float = 0.0):
    """
    Raises ValidityError for the first failing condition. With a positive
    `margin` every continuous condition must also hold that far from its boundary.
    """
    for tag in tags:
        condition = CONDITIONS.get(tag)
        if condition is None:
            raise CatalogError(f"unknown validity condition '{tag}'", field="validity")
        try:
            ok = condition.check(params)
            if ok and margin > 0 and condition.slack is not None:
                ok = condition.slack(params) >= margin
        except AttributeError as exc:
            raise ValidityError(condition.text, f"missing parameter: {exc}") from exc
        if not ok:
            raise ValidityError(condition.text, repr(params))
