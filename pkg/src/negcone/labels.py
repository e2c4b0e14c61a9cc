"""Canonical generator labels.

Grammar (one term; several terms are joined by ``", "``)::

    term      := [coef " "] body | coef
    coef      := digits | "2^" digits
    body      := "1" | "[C2]" | monomial | ("theta" | "eta") ["/" denom]
    monomial  := "rho" [exp] | "tau" [exp] | "rho" [exp] " tau" [exp]
    denom     := "rho" [exp] | "tau" [exp] | "(rho" [exp] " tau" [exp] ")"
    exp       := "^" digits

Exponents equal to one are omitted and factors with exponent zero are
dropped, so every term has exactly one spelling.
"""

import re
from dataclasses import dataclass
from typing import Tuple

from negcone.errors import LabelSyntaxError

UNIT = "1"
THETA = "theta"
ETA = "eta"
BURNSIDE = "[C2]"

_TERM = re.compile(r"^(?:(?P<coef>\d+(?:\^\d+)?) )?(?P<body>\S.*)$")
_POWER = r"(?:\^(\d+))?"
_MONOMIAL = re.compile(rf"^(?:rho{_POWER})?(?: ?tau{_POWER})?$")
_FRACTION = re.compile(r"^(theta|eta)(?:/(.+))?$")
_COEF = re.compile(r"^(\d+)(?:\^(\d+))?$")


@dataclass(frozen=True)
class Term:
    """``coefficient * numerator``, where the numerator is ``rho^a tau^b`` for
    the unit and ``theta/(rho^a tau^b)`` or ``eta/(rho^a tau^b)`` otherwise."""

    numerator: str = UNIT
    rho: int = 0
    tau: int = 0
    coefficient: int = 1

    def __post_init__(self):
        if self.rho < 0 or self.tau < 0 or self.coefficient < 1:
            raise LabelSyntaxError(f"invalid term {self!r}")


def _power(name: str, exp: int) -> str:
    if exp == 0:
        return ""
    return name if exp == 1 else f"{name}^{exp}"


def _join(rho: int, tau: int) -> str:
    return " ".join(p for p in (_power("rho", rho), _power("tau", tau)) if p)


def format_term(term: Term) -> str:
    """Spell a term canonically."""
    if term.numerator == BURNSIDE:
        body = BURNSIDE
    elif term.numerator == UNIT:
        body = _join(term.rho, term.tau) or UNIT
    else:
        den = _join(term.rho, term.tau)
        if not den:
            body = term.numerator
        elif term.rho and term.tau:
            body = f"{term.numerator}/({den})"
        else:
            body = f"{term.numerator}/{den}"
    if term.coefficient == 1:
        return body
    if body == UNIT:
        return str(term.coefficient)
    return f"{term.coefficient} {body}"


def format_label(terms: Tuple[Term, ...]) -> str:
    """Spell a sequence of terms, ``", "``-separated."""
    return ", ".join(format_term(t) for t in terms)


def _parse_coefficient(text: str) -> int:
    match = _COEF.match(text)
    if match is None:
        raise LabelSyntaxError(f"bad coefficient {text!r}")
    base, exp = match.groups()
    return int(base) ** int(exp) if exp else int(base)


def _parse_monomial(text: str) -> Tuple[int, int]:
    match = _MONOMIAL.match(text)
    if match is None or not text:
        raise LabelSyntaxError(f"bad monomial {text!r}")
    has_rho = text.startswith("rho")
    has_tau = "tau" in text
    rho = int(match.group(1) or 1) if has_rho else 0
    tau = int(match.group(2) or 1) if has_tau else 0
    return rho, tau


def parse_term(text: str) -> Term:
    """Parse one term; inverse of :func:`format_term`."""
    text = text.strip()
    if _COEF.match(text):
        return Term(coefficient=_parse_coefficient(text))
    match = _TERM.match(text)
    if match is None:
        raise LabelSyntaxError(f"empty label term {text!r}")
    coefficient = _parse_coefficient(match.group("coef")) if match.group("coef") else 1
    body = match.group("body")
    if body == UNIT:
        return Term(coefficient=coefficient)
    if body == BURNSIDE:
        return Term(numerator=BURNSIDE, coefficient=coefficient)
    fraction = _FRACTION.match(body)
    if fraction is not None:
        numerator, den = fraction.groups()
        if den is None:
            return Term(numerator=numerator, coefficient=coefficient)
        if den.startswith("(") and den.endswith(")"):
            den = den[1:-1]
        rho, tau = _parse_monomial(den)
        return Term(numerator=numerator, rho=rho, tau=tau, coefficient=coefficient)
    rho, tau = _parse_monomial(body)
    return Term(rho=rho, tau=tau, coefficient=coefficient)


def parse_label(text: str) -> Tuple[Term, ...]:
    """Parse a full label; inverse of :func:`format_label`."""
    if not text:
        return ()
    return tuple(parse_term(part) for part in text.split(", "))
