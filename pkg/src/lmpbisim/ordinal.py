"""Ordinals below ω^ω in Cantor normal form.

An ordinal is a strictly-decreasing list of (exponent, coefficient) terms,
ω^e1·c1 + ... + ω^ek·ck, the empty list being 0.  Exponents are naturals,
so every representable value sits below ω^ω; that is all the symbolic
engine needs.  Fundamental sequences follow the canonical rule

    (δ + ω^e·c)[n] = δ + ω^e·(c-1) + ω^(e-1)·(n+1),

which is strictly increasing in n, never 0, and cofinal in the limit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering

from .errors import NonCanonical, NotLimit, OrdinalSyntaxError


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        last_exp = None
        for e, c in self.terms:
            if not (isinstance(e, int) and isinstance(c, int)):
                raise NonCanonical("exponents and coefficients must be integers")
            if e < 0 or c < 1:
                raise NonCanonical(f"bad term w^{e}*{c}")
            if last_exp is not None and e >= last_exp:
                raise NonCanonical("exponents must strictly decrease")
            last_exp = e

    # -- constructors ------------------------------------------------------
    @staticmethod
    def from_int(n: int) -> "Ordinal":
        if n < 0:
            raise NonCanonical("ordinals are non-negative")
        return Ordinal(((0, n),) if n else ())

    @staticmethod
    def omega(power: int = 1, coeff: int = 1) -> "Ordinal":
        return Ordinal(((power, coeff),))

    # -- classification ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_limit(self) -> bool:
        return bool(self.terms) and self.terms[-1][0] != 0

    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0] == 0

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0] == 0)

    def as_int(self) -> int:
        if not self.is_finite():
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    # -- order -------------------------------------------------------------
    def __lt__(self, other: "Ordinal") -> bool:
        for (e1, c1), (e2, c2) in zip(self.terms, other.terms):
            if e1 != e2:
                return e1 < e2
            if c1 != c2:
                return c1 < c2
        return len(self.terms) < len(other.terms)

    # -- arithmetic (just enough for stage bookkeeping) ----------------------
    def succ(self) -> "Ordinal":
        if self.is_successor():
            e, c = self.terms[-1]
            return Ordinal(self.terms[:-1] + ((0, c + 1),))
        return Ordinal(self.terms + ((0, 1),))

    def pred(self) -> "Ordinal":
        if not self.is_successor():
            raise ValueError(f"{self} has no predecessor")
        e, c = self.terms[-1]
        if c > 1:
            return Ordinal(self.terms[:-1] + ((0, c - 1),))
        return Ordinal(self.terms[:-1])

    def plus_int(self, n: int) -> "Ordinal":
        if n < 0:
            raise NonCanonical("cannot add a negative amount")
        if n == 0:
            return self
        if self.is_successor():
            e, c = self.terms[-1]
            return Ordinal(self.terms[:-1] + ((0, c + n),))
        return Ordinal(self.terms + ((0, n),))

    def limit_part(self) -> tuple["Ordinal", int]:
        """Split as δ + k with δ limit-or-zero and k finite."""
        if self.is_successor():
            return Ordinal(self.terms[:-1]), self.terms[-1][1]
        return self, 0

    def __str__(self) -> str:
        return ord_print(self)

    def __repr__(self) -> str:
        return f"Ordinal({ord_print(self)!r})"


ZERO_ORD = Ordinal()
OMEGA = Ordinal.omega()


def ord_cmp(a: Ordinal, b: Ordinal) -> str:
    """Three-way comparison, rendered as one of '<', '=', '>'."""
    if a == b:
        return "="
    return "<" if a < b else ">"


def ord_succ(a: Ordinal) -> Ordinal:
    return a.succ()


def ord_is_limit(a: Ordinal) -> bool:
    return a.is_limit()


def fund_seq(lam: Ordinal, n: int) -> Ordinal:
    """λ[n], the canonical fundamental sequence of a limit ordinal."""
    if not lam.is_limit():
        raise NotLimit(f"{lam} is not a limit ordinal")
    if n < 0:
        raise ValueError("fundamental-sequence index must be a natural")
    e, c = lam.terms[-1]
    head = lam.terms[:-1]
    if c > 1:
        head = head + ((e, c - 1),)
    return Ordinal(head + ((e - 1, n + 1),))


def alpha_n(eta: Ordinal, n: int) -> Ordinal:
    """Per-label target assignment: 0 at 0, predecessor at successors, the
    n-th fundamental-sequence value at limits."""
    if eta.is_zero():
        return ZERO_ORD
    if eta.is_successor():
        return eta.pred()
    return fund_seq(eta, n)


_TERM_RE = re.compile(r"w(?:\^(\d+))?(?:\*(\d+))?|\d+")


def ord_parse(text: str) -> Ordinal:
    """Parse the `w^E*C + ... + N` grammar into canonical form.

    Terms must already be in strictly decreasing exponent order with
    positive coefficients; anything else raises NonCanonical so that a
    printed ordinal is the only accepted spelling of its value.
    """
    s = text.strip()
    if not s:
        raise OrdinalSyntaxError("empty ordinal literal", 0)
    if s == "0":
        return ZERO_ORD
    terms = []
    pos = 0
    while True:
        while pos < len(s) and s[pos].isspace():
            pos += 1
        m = _TERM_RE.match(s, pos)
        if not m:
            raise OrdinalSyntaxError(f"expected an ordinal term in {text!r}", pos)
        token = m.group(0)
        if token.startswith("w"):
            exp = int(m.group(1)) if m.group(1) is not None else 1
            coeff = int(m.group(2)) if m.group(2) is not None else 1
            if exp == 0:
                raise NonCanonical("write plain naturals instead of w^0 terms")
        else:
            exp, coeff = 0, int(token)
        if coeff == 0:
            raise NonCanonical("zero coefficients are not canonical")
        terms.append((exp, coeff))
        pos = m.end()
        while pos < len(s) and s[pos].isspace():
            pos += 1
        if pos == len(s):
            break
        if s[pos] != "+":
            raise OrdinalSyntaxError(f"expected '+' in {text!r}", pos)
        pos += 1
    try:
        return Ordinal(tuple(terms))
    except NonCanonical:
        raise NonCanonical(f"{text!r} is not in Cantor normal form") from None


def ord_print(a: Ordinal) -> str:
    if not a.terms:
        return "0"
    parts = []
    for e, c in a.terms:
        if e == 0:
            parts.append(str(c))
        else:
            base = "w" if e == 1 else f"w^{e}"
            parts.append(base if c == 1 else f"{base}*{c}")
    return "+".join(parts)
