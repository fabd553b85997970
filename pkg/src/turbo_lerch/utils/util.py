import math


def format_complex(value, digits: int = 12) -> str:
    """Formats a complex number as 'a+bi' with `digits` significant digits."""
    try:
        z = complex(value)
    except (ValueError, TypeError):
        return "-"

    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        return str(z)
    sign = "-" if z.imag < 0 or (z.imag == 0 and math.copysign(1.0, z.imag) < 0) else "+"
    return f"{z.real:.{digits}g}{sign}{abs(z.imag):.{digits}g}i"


def human_readable_duration(seconds) -> str:
    """Converts seconds to ms, s, min, h."""
    try:
        value = float(seconds)
    except (ValueError, TypeError):
        return "-"

    if value < 1.0:
        return f"{value * 1000.0:.1f} ms"
    for unit, size in (("s", 60.0), ("min", 60.0)):
        if value < size:
            return f"{value:.2f} {unit}"
        value /= size
    return f"{value:.2f} h"
