"""Max-plus tropical (Laurent) polynomials with exact rational coefficients.

Text syntax::

    poly     := term (("+" | "⊕") term)*
    term     := coeff monomial* | monomial+
    coeff    := ["-"] rational | "(" ["-"] rational ")"
    monomial := var ["^" exponent]
    exponent := ["-"] int | "(" ["-"] int ")"
    rational := int ["/" posint]

Variables are either ``x, y, z, w`` or ``x1 .. xn``; a polynomial may not
mix the two styles. Juxtaposition is tropical multiplication; a term
without a coefficient has coefficient 0 (the tropical unit).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .exact_math import IntVector, solve_rational
from .polytope import LatticePolytope

LETTERS = "xyzw"

__all__ = [
    "TropicalPolynomial",
    "ParseError",
    "parse_tropical_polynomial",
    "infer_n_vars",
    "evaluate",
    "newton_polytope",
    "dual_vertex_coordinates",
    "tropical_product",
]


class ParseError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{msg} at line {line}, column {col}")
        self.line = line
        self.column = col


@dataclass(frozen=True)
class TropicalPolynomial:
    n_vars: int
    terms: Mapping[IntVector, Fraction] = field(hash=False)

    def __post_init__(self):
        if not self.terms:
            raise ValueError("a tropical polynomial needs at least one term")
        terms = {}
        for a, c in self.terms.items():
            a = tuple(int(x) for x in a)
            if len(a) != self.n_vars:
                raise ValueError(f"exponent {a} has wrong length for {self.n_vars} variables")
            terms[a] = Fraction(c)
        object.__setattr__(self, "terms", dict(sorted(terms.items())))

    def __hash__(self):
        return hash((self.n_vars, tuple(self.terms.items())))

    def __eq__(self, other):
        return (
            isinstance(other, TropicalPolynomial)
            and self.n_vars == other.n_vars
            and self.terms == other.terms
        )

    @property
    def support(self) -> list[IntVector]:
        return list(self.terms)

    def __call__(self, x: Sequence) -> Fraction:
        return evaluate(self, x)[0]

    def __mul__(self, other: "TropicalPolynomial") -> "TropicalPolynomial":
        return tropical_product([self, other])

    def __add__(self, other: "TropicalPolynomial") -> "TropicalPolynomial":
        if self.n_vars != other.n_vars:
            raise ValueError("variable count mismatch")
        terms = dict(self.terms)
        for a, c in other.terms.items():
            terms[a] = max(terms[a], c) if a in terms else c
        return TropicalPolynomial(self.n_vars, terms)

    def with_coefficients(self, coeffs: Mapping[IntVector, Fraction]) -> "TropicalPolynomial":
        return TropicalPolynomial(self.n_vars, {a: coeffs[a] for a in self.terms})

    def translated(self, v: Sequence) -> "TropicalPolynomial":
        """Adds ``<v, a>`` to each coefficient; moves the hypersurface by ``-v``."""
        return TropicalPolynomial(
            self.n_vars,
            {a: c + sum(Fraction(x) * y for x, y in zip(v, a)) for a, c in self.terms.items()},
        )

    def negated(self) -> "TropicalPolynomial":
        return TropicalPolynomial(self.n_vars, {a: -c for a, c in self.terms.items()})

    def to_text(self) -> str:
        if self.n_vars <= len(LETTERS):
            names = list(LETTERS[: self.n_vars])
        else:
            names = [f"x{i + 1}" for i in range(self.n_vars)]
        parts = []
        for a, c in self.terms.items():
            mono = ""
            for name, e in zip(names, a):
                if e == 0:
                    continue
                if e == 1:
                    mono += name
                elif e > 0:
                    mono += f"{name}^{e}"
                else:
                    mono += f"{name}^({e})"
            coeff = str(c)
            if c < 0:
                coeff = f"({c})"
            if not mono:
                parts.append(coeff)
            elif c == 0:
                parts.append(mono)
            else:
                parts.append(coeff + mono)
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.to_text()


class _Parser:
    def __init__(self, text: str, n_vars: int | None):
        self.text = text
        self.pos = 0
        self.n_vars = n_vars
        self.style: str | None = None  # "letters" or "indexed"

    def error(self, msg: str, pos: int | None = None):
        raise ParseError(msg, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def signed_integer(self) -> int:
        sign = 1
        if self.peek() == "-":
            self.pos += 1
            sign = -1
        return sign * self.integer()

    def rational(self) -> Fraction:
        sign = 1
        if self.peek() == "-":
            self.pos += 1
            sign = -1
        num = self.integer()
        if self.peek() == "/":
            self.pos += 1
            at = self.pos
            den = self.integer()
            if den == 0:
                self.error("zero denominator", at)
            return Fraction(sign * num, den)
        return Fraction(sign * num)

    def variable(self) -> int:
        self.skip()
        start = self.pos
        ch = self.text[self.pos]
        self.pos += 1
        digits_start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        digits = self.text[digits_start:self.pos]
        if digits:
            if ch != "x":
                self.error(f"indexed variables must be written x1, x2, ... not {ch}{digits}", start)
            style, index = "indexed", int(digits) - 1
            if index < 0:
                self.error("variable indices start at 1", start)
        else:
            style, index = "letters", LETTERS.index(ch)
        if self.style is None:
            self.style = style
        elif self.style != style:
            self.error("cannot mix x,y,z,w with x1..xn variables", start)
        if self.n_vars is not None and index >= self.n_vars:
            self.error(f"variable {self.text[start:self.pos]} exceeds n_vars={self.n_vars}", start)
        return index

    def exponent(self) -> int:
        if self.peek() == "(":
            self.pos += 1
            e = self.signed_integer()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return e
        return self.signed_integer()

    def term(self) -> tuple[dict[int, int], Fraction]:
        coeff = Fraction(0)
        ch = self.peek()
        has_coeff = False
        if ch == "(":
            self.pos += 1
            coeff = self.rational()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            has_coeff = True
        elif ch == "-" or ch.isdigit():
            coeff = self.rational()
            has_coeff = True
        exps: dict[int, int] = {}
        while True:
            ch = self.peek()
            if ch in ("⊙", "*"):
                self.pos += 1
                ch = self.peek()
                if not ch or ch not in LETTERS:
                    self.error("expected a variable after multiplication sign")
            if ch and ch in LETTERS:
                idx = self.variable()
                e = 1
                if self.peek() == "^":
                    self.pos += 1
                    e = self.exponent()
                exps[idx] = exps.get(idx, 0) + e
            else:
                break
        if not has_coeff and not exps:
            self.error("expected a term")
        return exps, coeff

    def parse(self) -> list[tuple[dict[int, int], Fraction]]:
        if not self.peek():
            self.error("empty polynomial")
        terms = [self.term()]
        while True:
            ch = self.peek()
            if not ch:
                break
            if ch not in ("+", "⊕"):
                self.error(f"unexpected character {ch!r}")
            self.pos += 1
            terms.append(self.term())
        return terms


def parse_tropical_polynomial(text: str, n_vars: int | None = None) -> TropicalPolynomial:
    """Parse ``text``; with ``n_vars=None`` the variable count is inferred."""
    p = _Parser(text, n_vars)
    raw = p.parse()
    if n_vars is None:
        used = [i for exps, _ in raw for i in exps]
        n_vars = max(used) + 1 if used else 1
    terms: dict[IntVector, Fraction] = {}
    for exps, c in raw:
        a = tuple(exps.get(i, 0) for i in range(n_vars))
        terms[a] = max(terms[a], c) if a in terms else c
    return TropicalPolynomial(n_vars, terms)


def infer_n_vars(texts: Iterable[str]) -> int:
    """Smallest variable count that accommodates every polynomial in ``texts``."""
    return max(parse_tropical_polynomial(t).n_vars for t in texts)


def evaluate(f: TropicalPolynomial, x: Sequence) -> tuple[Fraction, frozenset]:
    """Value of ``f`` at ``x`` and the exponents attaining the maximum."""
    if len(x) != f.n_vars:
        raise ValueError(f"point has {len(x)} coordinates, polynomial has {f.n_vars} variables")
    x = [Fraction(v) for v in x]
    vals = {a: c + sum(ai * xi for ai, xi in zip(a, x)) for a, c in f.terms.items()}
    best = max(vals.values())
    return best, frozenset(a for a, v in vals.items() if v == best)


def newton_polytope(f: TropicalPolynomial) -> LatticePolytope:
    return LatticePolytope(f.terms)


def tropical_product(fs: Sequence[TropicalPolynomial]) -> TropicalPolynomial:
    n = fs[0].n_vars
    if any(f.n_vars != n for f in fs):
        raise ValueError("variable count mismatch")
    terms: dict[IntVector, Fraction] = {(0,) * n: Fraction(0)}
    for f in fs:
        nxt: dict[IntVector, Fraction] = {}
        for (a, c), (b, d) in product(terms.items(), f.terms.items()):
            s = tuple(x + y for x, y in zip(a, b))
            v = c + d
            if s not in nxt or v > nxt[s]:
                nxt[s] = v
        terms = nxt
    return TropicalPolynomial(n, terms)


def dual_vertex_coordinates(fs: Sequence[TropicalPolynomial], cell) -> tuple[Fraction, ...]:
    """Point of R^n dual to a full-dimensional cell of the privileged subdivision.

    Solves the tie equations making every vertex monomial of each summand
    maximal and checks that they indeed attain the maximum.
    """
    n = fs[0].n_vars
    rows, rhs = [], []
    for f, summand in zip(fs, cell.summands):
        pts = sorted(summand)
        a0 = pts[0]
        for a in pts[1:]:
            rows.append([x - y for x, y in zip(a, a0)])
            rhs.append(f.terms[a0] - f.terms[a])
    x = solve_rational(rows, rhs) if rows else None
    if x is None or len(x) != n:
        raise ValueError("tie system has no unique solution: not a full-dimensional cell")
    for f, summand in zip(fs, cell.summands):
        _, arg = evaluate(f, x)
        if not set(summand) <= arg:
            raise ValueError("cell monomials do not attain the maximum: not a cell of this subdivision")
    return tuple(x)
