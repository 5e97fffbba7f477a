"""Scalars of k^x generated by a fixed free basis.

A scalar is stored as its exponent vector over the generator basis, so the
group operation is vector addition.  Two kinds of basis exist:

* ``symbolic`` -- named generators ``q1, q2, ...`` that the user declares
  multiplicatively independent;
* ``rational`` -- distinct primes, i.e. the field is Q and independence
  comes from unique factorization.

Scalar grammar (whitespace is ignored)::

    scalar   := rational | monomial
    monomial := term ('*' term)*
    term     := label ('^' signed-integer)?
    rational := signed-integer ('/' positive-integer)?
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import lattice
from .errors import NonUnitRational, ParseError, TorsionScalar, UnknownGenerator

ExponentVector = tuple[int, ...]

SYMBOLIC = "symbolic"
RATIONAL = "rational"

_RATIONAL_RE = re.compile(r"([+-]?\d+)(?:/(\d+))?")
_TERM_RE = re.compile(r"([A-Za-z_][A-Za-z0-9_]*|\d+)(?:\^([+-]?\d+))?")


def factorize(n: int) -> dict[int, int]:
    from sympy import factorint

    return {int(p): int(e) for p, e in factorint(n).items()}


def _is_prime(p: int) -> bool:
    from sympy import isprime

    return bool(isprime(p))


@dataclass(frozen=True)
class GeneratorBasis:
    mode: str
    labels: tuple

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if self.mode not in (SYMBOLIC, RATIONAL):
            raise ValueError(f"unknown basis mode {self.mode!r}")
        if len(set(labels)) != len(labels):
            raise ValueError("generator labels must be distinct")
        if self.mode == RATIONAL:
            if any(not isinstance(p, int) or p < 2 or not _is_prime(p) for p in labels):
                raise ValueError("a rational basis consists of primes")
            if list(labels) != sorted(labels):
                raise ValueError("primes of a rational basis must be increasing")
        elif any(not isinstance(s, str) or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", s) for s in labels):
            raise ValueError("symbolic labels must be identifiers")

    @classmethod
    def symbolic(cls, labels: Iterable[str]) -> GeneratorBasis:
        return cls(SYMBOLIC, tuple(labels))

    @classmethod
    def rational(cls, primes: Iterable[int]) -> GeneratorBasis:
        return cls(RATIONAL, tuple(sorted(set(primes))))

    @property
    def m(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownGenerator(f"{label!r} is not a generator of this basis") from None

    def zero(self) -> ExponentVector:
        return (0,) * self.m

    def unit(self, k: int) -> ExponentVector:
        return tuple(int(i == k) for i in range(self.m))


@dataclass(frozen=True)
class UnitMonomial:
    """``coeff * g^exps``; in rational mode ``coeff`` is +-1."""

    coeff: Fraction
    exps: ExponentVector

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        object.__setattr__(self, "exps", tuple(self.exps))
        if self.coeff == 0:
            raise ValueError("a unit monomial has a nonzero coefficient")

    def __mul__(self, other: UnitMonomial) -> UnitMonomial:
        return UnitMonomial(self.coeff * other.coeff, mul(self.exps, other.exps))


def mul(a: ExponentVector, b: ExponentVector) -> ExponentVector:
    if len(a) != len(b):
        raise ValueError("exponent vectors over different bases")
    return tuple(x + y for x, y in zip(a, b))


def inv(a: ExponentVector) -> ExponentVector:
    return tuple(-x for x in a)


def power(a: ExponentVector, e: int) -> ExponentVector:
    return tuple(e * x for x in a)


def subgroup_rank(gens: Sequence[ExponentVector]) -> int:
    """Torsion-free rank of the subgroup generated by ``gens``."""
    gens = [tuple(g) for g in gens]
    if not gens:
        return 0
    return lattice.rank(lattice.IntegerMatrix.from_rows(gens))


def evaluate(v: ExponentVector, basis: GeneratorBasis) -> Fraction:
    """The rational number a rational-mode exponent vector stands for."""
    if basis.mode != RATIONAL:
        raise ValueError("only rational-mode scalars have a numeric value")
    num = den = 1
    for p, e in zip(basis.labels, v):
        if e > 0:
            num *= p**e
        elif e < 0:
            den *= p ** (-e)
    return Fraction(num, den)


# -- parsing -----------------------------------------------------------------

def _strip(text: str) -> tuple[str, list[int]]:
    # drop whitespace, remembering each kept character's original column
    chars, cols = [], []
    for i, ch in enumerate(text):
        if not ch.isspace():
            chars.append(ch)
            cols.append(i)
    return "".join(chars), cols


def _tokens(text: str, line: int | None, col: int):
    """Split a scalar into ``('rational', Fraction)`` or ``('monomial', terms)``."""
    s, cols = _strip(text)
    if not s:
        raise ParseError("empty scalar", line, col + 1)
    m = _RATIONAL_RE.fullmatch(s)
    if m:
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ParseError("zero denominator", line, col + cols[m.start(2)] + 1)
        return "rational", Fraction(int(m.group(1)), den)
    terms = []
    pos = 0
    while True:
        t = _TERM_RE.match(s, pos)
        if not t:
            where = col + (cols[pos] if pos < len(cols) else len(text)) + 1
            raise ParseError(f"expected a generator term in {text.strip()!r}", line, where)
        terms.append((t.group(1), int(t.group(2)) if t.group(2) else 1))
        pos = t.end()
        if pos == len(s):
            return "monomial", terms
        if s[pos] != "*":
            raise ParseError(f"unexpected {s[pos]!r} in {text.strip()!r}", line, col + cols[pos] + 1)
        pos += 1


def _rational_exponents(value: Fraction) -> dict[int, int]:
    if value == 0:
        raise NonUnitRational("0 is not a unit of k")
    if value < 0:
        raise TorsionScalar(f"{value} has a sign, and -1 is torsion in k^x; use positive scalars")
    exps: dict[int, int] = {}
    for p, e in factorize(value.numerator).items():
        exps[p] = exps.get(p, 0) + e
    for p, e in factorize(value.denominator).items():
        exps[p] = exps.get(p, 0) - e
    return {p: e for p, e in exps.items() if e}


def scalar_primes(text: str, line: int | None = None, col: int = 0) -> set[int]:
    """Primes a rational-mode scalar mentions; used to build the basis first."""
    kind, payload = _tokens(text, line, col)
    if kind == "rational":
        return set(_rational_exponents(payload))
    primes: set[int] = set()
    for label, _ in payload:
        if not label.isdigit():
            raise UnknownGenerator(f"{label!r} in rational mode; labels there are integers")
        base = int(label)
        if base == 0:
            raise NonUnitRational("0 is not a unit of k")
        primes.update(factorize(base))
    return primes


def parse_scalar(text: str, basis: GeneratorBasis, line: int | None = None, col: int = 0) -> ExponentVector:
    kind, payload = _tokens(text, line, col)
    out = [0] * basis.m
    if kind == "rational":
        if basis.mode == SYMBOLIC:
            if payload == 1:
                return tuple(out)
            if payload == 0:
                raise NonUnitRational("0 is not a unit of k")
            if payload == -1:
                raise TorsionScalar("-1 is torsion in k^x")
            raise ParseError(
                f"numeric constant {payload} in symbolic mode; only 1 is allowed there", line, col + 1
            )
        for p, e in _rational_exponents(payload).items():
            out[basis.index(p)] += e
        return tuple(out)
    for label, e in payload:
        if basis.mode == SYMBOLIC:
            out[basis.index(label)] += e
            continue
        if not label.isdigit():
            raise UnknownGenerator(f"{label!r} in rational mode; labels there are integers")
        base = int(label)
        if base == 0:
            raise NonUnitRational("0 is not a unit of k")
        for p, k in factorize(base).items():
            out[basis.index(p)] += k * e
    return tuple(out)


def render(v: ExponentVector, basis: GeneratorBasis) -> str:
    """Canonical text form; ``parse_scalar(render(v)) == v``."""
    if basis.mode == RATIONAL:
        return str(evaluate(v, basis))
    terms = [lab if e == 1 else f"{lab}^{e}" for lab, e in zip(basis.labels, v) if e]
    return "*".join(terms) if terms else "1"
