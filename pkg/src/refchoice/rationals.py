"""Exact rational arithmetic backend.

Every probability and intermediate quantity in this package is an exact
rational. Several of the behavioral conditions being tested are equalities
between products of observed probabilities, so floating point would make
verdicts meaningless. gmpy2's ``mpq`` is used when available (it is roughly
an order of magnitude faster than the stdlib); ``fractions.Fraction`` is the
drop-in fallback. Both types render as ``"p"`` or ``"p/q"``, which is the
wire format used in all JSON files.
"""

from __future__ import annotations

import re

try:
    from gmpy2 import mpq as Rat

    BACKEND = "gmpy2"
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as Rat

    BACKEND = "fractions"

ZERO = Rat(0)
ONE = Rat(1)

_RATIONAL_RE = re.compile(r"^-?(?:0|[1-9][0-9]*)(?:/[0-9]+)?$")


class RationalFormatError(ValueError):
    """A string does not encode a rational in ``p`` or ``p/q`` form."""


def parse_rational(text: str) -> Rat:
    """Parse ``"p"`` or ``"p/q"`` into an exact rational.

    Non-reduced forms such as ``"2/4"`` are accepted and reduced; a zero
    denominator or anything that is not a plain integer ratio (decimals,
    whitespace, exponents) is rejected.
    """
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise RationalFormatError(f"not a rational 'p' or 'p/q' string: {text!r}")
    try:
        return Rat(text)
    except ZeroDivisionError:
        raise RationalFormatError(f"zero denominator in rational: {text!r}") from None


def format_rational(value) -> str:
    """Canonical string form: reduced, ``"p"`` when the denominator is 1."""
    return str(Rat(value))


def as_rational(value) -> Rat:
    """Coerce an int, rational, or ``p/q`` string to the backend type."""
    if isinstance(value, str):
        return parse_rational(value)
    return Rat(value)
