"""Formatting helpers for big integers and report floats."""

import sys

# Exact denominators at the top of the canonical sweep have ~10^5 decimal
# digits, far past the interpreter's default int<->str conversion limit.
_STR_DIGITS = 50_000_000


def allow_big_int_strings() -> None:
    """Raise the int<->str digit limit (present since Python 3.10.7)."""
    setter = getattr(sys, "set_int_max_str_digits", None)
    getter = getattr(sys, "get_int_max_str_digits", None)
    if setter is not None and getter is not None and getter() < _STR_DIGITS:
        setter(_STR_DIGITS)


def int_str(v: int) -> str:
    allow_big_int_strings()
    return str(v)


def float12(x: float) -> str:
    """Report convention: floats carry 12 significant digits."""
    return format(x, ".12g")
