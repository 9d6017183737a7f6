"""Exact ordinal arithmetic below epsilon_0 in Cantor normal form.

Ordinals are sums of omega-powers with positive integer coefficients and
strictly decreasing exponents. The value epsilon_0 exists as a distinguished
constant so it can index hierarchies and fundamental sequences, but it takes
no part in arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class OrdinalError(Exception):
    pass


class ParseError(OrdinalError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class ArithmeticWithEpsilonZero(OrdinalError):
    """epsilon_0 is a marker, not an arithmetic citizen."""


class NotALimit(OrdinalError):
    pass


class ZeroInput(OrdinalError):
    pass


class Cmp(Enum):
    LESS = "LT"
    EQUAL = "EQ"
    GREATER = "GT"


class Ordinal:
    """An ordinal <= epsilon_0.

    `terms` is a tuple of (exponent, coefficient) pairs with exponents
    strictly decreasing and coefficients >= 1; the empty tuple is zero.
    The epsilon_0 constant is the single instance with `eps` set.
    """

    __slots__ = ("terms", "eps", "_hash")

    def __init__(self, terms=(), eps: bool = False):
        terms = tuple(terms)
        if eps and terms:
            raise OrdinalError("epsilon_0 carries no terms")
        for exp, coeff in terms:
            if not isinstance(exp, Ordinal) or exp.eps:
                raise OrdinalError("exponents must be ordinals below epsilon_0")
            if not isinstance(coeff, int) or coeff < 1:
                raise OrdinalError("coefficients must be positive integers")
        for i in range(len(terms) - 1):
            if compare(terms[i][0], terms[i + 1][0]) is not Cmp.GREATER:
                raise OrdinalError("exponents must strictly decrease")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "eps", eps)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Ordinal is immutable")

    def is_zero(self) -> bool:
        return not self.eps and not self.terms

    def __eq__(self, other):
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.eps == other.eps and self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.eps, self.terms))
            object.__setattr__(self, "_hash", h)
        return h

    def __lt__(self, other):
        return compare(self, other) is Cmp.LESS

    def __le__(self, other):
        return compare(self, other) is not Cmp.GREATER

    def __gt__(self, other):
        return compare(self, other) is Cmp.GREATER

    def __ge__(self, other):
        return compare(self, other) is not Cmp.LESS

    def __repr__(self):
        return f"Ordinal({render_ordinal(self)!r})"


ZERO = Ordinal()
EPSILON0 = Ordinal(eps=True)
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def from_int(n: int) -> Ordinal:
    if n < 0:
        raise OrdinalError("ordinals are nonnegative")
    if n == 0:
        return ZERO
    return Ordinal(((ZERO, n),))


def compare(a: Ordinal, b: Ordinal) -> Cmp:
    """Three-way comparison; total on all representable ordinals."""
    if a.eps or b.eps:
        if a.eps and b.eps:
            return Cmp.EQUAL
        return Cmp.GREATER if a.eps else Cmp.LESS
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = compare(ea, eb)
        if c is not Cmp.EQUAL:
            return c
        if ca != cb:
            return Cmp.GREATER if ca > cb else Cmp.LESS
    if len(a.terms) != len(b.terms):
        return Cmp.GREATER if len(a.terms) > len(b.terms) else Cmp.LESS
    return Cmp.EQUAL


def _reject_eps(*os: Ordinal):
    for o in os:
        if o.eps:
            raise ArithmeticWithEpsilonZero("arithmetic on epsilon_0 is not defined here")


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    _reject_eps(a, b)
    if b.is_zero():
        return a
    if a.is_zero():
        return b
    lead = b.terms[0][0]
    kept = []
    for exp, coeff in a.terms:
        c = compare(exp, lead)
        if c is Cmp.GREATER:
            kept.append((exp, coeff))
        elif c is Cmp.EQUAL:
            kept.append((exp, coeff + b.terms[0][1]))
            return Ordinal(tuple(kept) + b.terms[1:])
        else:
            break
    return Ordinal(tuple(kept) + b.terms)


def mul(a: Ordinal, b: Ordinal) -> Ordinal:
    _reject_eps(a, b)
    if a.is_zero() or b.is_zero():
        return ZERO
    acc = ZERO
    for exp, coeff in b.terms:
        if exp.is_zero():
            lead_exp, lead_coeff = a.terms[0]
            part = Ordinal(((lead_exp, lead_coeff * coeff),) + a.terms[1:])
        else:
            part = Ordinal(((add(a.terms[0][0], exp), coeff),))
        acc = add(acc, part)
    return acc


def omega_pow(a: Ordinal) -> Ordinal:
    """omega raised to a. Rejects epsilon_0 (the result would leave CNF)."""
    _reject_eps(a)
    return Ordinal(((a, 1),))


def omega_tower(base: Ordinal, height: int) -> Ordinal:
    """Iterated omega-power: height 0 is the base itself."""
    if height < 0:
        raise OrdinalError("tower height must be nonnegative")
    r = base
    for _ in range(height):
        r = omega_pow(r)
    return r


class OrdKind(Enum):
    ZERO = "zero"
    SUCCESSOR = "successor"
    LIMIT = "limit"


def classify(a: Ordinal):
    """Return (kind, predecessor); predecessor is None except for successors."""
    if a.eps:
        return OrdKind.LIMIT, None
    if not a.terms:
        return OrdKind.ZERO, None
    exp, coeff = a.terms[-1]
    if not exp.is_zero():
        return OrdKind.LIMIT, None
    if coeff > 1:
        pred = Ordinal(a.terms[:-1] + ((exp, coeff - 1),))
    else:
        pred = Ordinal(a.terms[:-1])
    return OrdKind.SUCCESSOR, pred


def fund_seq(lam: Ordinal, n: int) -> Ordinal:
    """The n-th member of the canonical sequence converging to the limit lam.

    For a last term omega^(d+1)*c the last power is traded for omega^d*(n+1);
    for a limit last exponent the sequence recurses into that exponent;
    epsilon_0 steps down to the omega-tower of height n+1. Always < lam.
    """
    if n < 0:
        raise OrdinalError("sequence index must be nonnegative")
    if lam.eps:
        return omega_tower(ONE, n + 1)
    kind, _ = classify(lam)
    if kind is not OrdKind.LIMIT:
        raise NotALimit(f"{render_ordinal(lam)} is not a limit ordinal")
    # Iterative descent along the chain of last exponents, then rebuild.
    frames = []
    cur = lam
    while True:
        prefix = cur.terms[:-1]
        ak, c = cur.terms[-1]
        k, pred = classify(ak)
        if k is OrdKind.SUCCESSOR:
            base = prefix + (((ak, c - 1),) if c > 1 else ())
            val = Ordinal(base + ((pred, n + 1),))
            break
        frames.append((prefix, ak, c))
        cur = ak
    while frames:
        prefix, ak, c = frames.pop()
        base = prefix + (((ak, c - 1),) if c > 1 else ())
        val = Ordinal(base + ((val, 1),))
    return val


def stepdown_one(a: Ordinal, n: int) -> Ordinal:
    """One step of the descent: predecessor at successors, fund_seq at limits."""
    kind, pred = classify(a)
    if kind is OrdKind.ZERO:
        raise ZeroInput("cannot step below zero")
    if kind is OrdKind.SUCCESSOR:
        return pred
    return fund_seq(a, n)


@dataclass(frozen=True)
class Reached:
    steps: int
    path: tuple


@dataclass(frozen=True)
class NotOnPath:
    steps: int
    undershoot: Ordinal


@dataclass(frozen=True)
class StepBudgetExceeded:
    steps: int
    partial_path: tuple


PathResult = Reached | NotOnPath | StepBudgetExceeded


def stepdown_path(a: Ordinal, n: int, target: Ordinal, step_budget: int) -> PathResult:
    """Walk the deterministic descent from a with parameter n until target.

    The walk is strictly decreasing, so the search stops as soon as the
    current ordinal falls below the target.
    """
    if step_budget < 1:
        raise OrdinalError("step budget must be positive")
    path = [a]
    cur = a
    steps = 0
    while True:
        c = compare(cur, target)
        if c is Cmp.EQUAL:
            return Reached(steps, tuple(path))
        if c is Cmp.LESS:
            return NotOnPath(steps, cur)
        if steps >= step_budget:
            return StepBudgetExceeded(steps, tuple(path))
        cur = stepdown_one(cur, n)
        path.append(cur)
        steps += 1


# ---------------------------------------------------------------------------
# text form
#
#   ord  := term ("+" term)* | "0" | "e0"
#   term := "w" ("^" atom)? ("*" nat)? | nat
#   atom := "w" | nat | "(" ord ")"
#   nat  := [1-9][0-9]*


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch: str):
        if not self.take(ch):
            raise ParseError(f"expected {ch!r}", self.pos)

    def nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected a number", start)
        digits = self.text[start:self.pos]
        if digits[0] == "0":
            raise ParseError("numbers start from 1 here; 0 is a whole ordinal only", start)
        return int(digits)


def parse_ordinal(text: str) -> Ordinal:
    s = _Scanner(text)
    result = _parse_ord(s, top=True)
    s.skip_ws()
    if s.pos != len(s.text):
        raise ParseError("trailing input", s.pos)
    return result


def _parse_ord(s: _Scanner, top: bool = False) -> Ordinal:
    ch = s.peek()
    if ch == "0":
        s.pos += 1
        return ZERO
    if ch == "e":
        if not top:
            raise ParseError("e0 may only stand alone", s.pos)
        s.pos += 1
        s.expect("0")
        return EPSILON0
    acc = _parse_term(s)
    while s.take("+"):
        acc = add(acc, _parse_term(s))
    return acc


def _parse_term(s: _Scanner) -> Ordinal:
    ch = s.peek()
    if ch == "w":
        s.pos += 1
        exp = ONE
        if s.take("^"):
            exp = _parse_atom(s)
        coeff = 1
        if s.take("*"):
            coeff = s.nat()
        return Ordinal(((exp, coeff),))
    if ch.isdigit():
        return from_int(s.nat())
    raise ParseError("expected a term", s.pos)


def _parse_atom(s: _Scanner) -> Ordinal:
    ch = s.peek()
    if ch == "w":
        s.pos += 1
        return OMEGA
    if ch == "(":
        s.pos += 1
        inner = _parse_ord(s)
        s.expect(")")
        return inner
    if ch.isdigit():
        return from_int(s.nat())
    raise ParseError("expected an exponent", s.pos)


def render_ordinal(a: Ordinal) -> str:
    if a.eps:
        return "e0"
    if not a.terms:
        return "0"
    parts = []
    for exp, coeff in a.terms:
        parts.append(_render_term(exp, coeff))
    return " + ".join(parts)


def _render_term(exp: Ordinal, coeff: int) -> str:
    if exp.is_zero():
        return str(coeff)
    if exp == ONE:
        head = "w"
    else:
        head = "w^" + _render_atom(exp)
    if coeff > 1:
        head += f"*{coeff}"
    return head


def _render_atom(exp: Ordinal) -> str:
    # bare forms allowed in exponent position: w itself and plain naturals
    if exp == OMEGA:
        return "w"
    if len(exp.terms) == 1 and exp.terms[0][0].is_zero():
        return str(exp.terms[0][1])
    return "(" + render_ordinal(exp) + ")"
