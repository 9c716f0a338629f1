"""Exact integer and rational linear algebra.

Everything here works on plain Python ints and :class:`fractions.Fraction`;
matrices are sequences of row sequences.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

IntVector = tuple[int, ...]
IntMatrix = list[list[int]]

__all__ = [
    "Fraction",
    "IntVector",
    "IntMatrix",
    "hermite_normal_form",
    "lattice_basis_of_span",
    "saturated_basis_of_span",
    "integer_kernel",
    "lattice_coordinates",
    "determinant",
    "abs_determinant",
    "rank",
    "solve_rational",
    "primitive",
    "SplitMix64",
    "fraction_to_str",
    "fraction_from_str",
]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def hermite_normal_form(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, int]:
    """Row-style Hermite normal form.

    Returns ``(hnf, transform, rank)`` with ``hnf == transform @ m``,
    ``transform`` unimodular, nonzero rows of ``hnf`` first, positive pivots
    and entries above each pivot reduced into ``[0, pivot)``.
    """
    h = [list(map(int, row)) for row in m]
    rows = len(h)
    cols = len(h[0]) if rows else 0
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        for i in range(r + 1, rows):
            if h[i][c] == 0:
                continue
            a, b = h[r][c], h[i][c]
            g, x, y = _xgcd(a, b)
            p, q = a // g, b // g
            # [[x, y], [-q, p]] has determinant 1
            hr, hi = h[r], h[i]
            h[r] = [x * s + y * t for s, t in zip(hr, hi)]
            h[i] = [p * t - q * s for s, t in zip(hr, hi)]
            ur, ui = u[r], u[i]
            u[r] = [x * s + y * t for s, t in zip(ur, ui)]
            u[i] = [p * t - q * s for s, t in zip(ur, ui)]
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-v for v in h[r]]
            u[r] = [-v for v in u[r]]
        piv = h[r][c]
        for i in range(r):
            f = h[i][c] // piv
            if f:
                h[i] = [s - f * t for s, t in zip(h[i], h[r])]
                u[i] = [s - f * t for s, t in zip(u[i], u[r])]
        pivots.append((r, c))
        r += 1
    return h, u, r


def lattice_basis_of_span(vectors: Sequence[Sequence[int]]) -> IntMatrix:
    """Basis (HNF rows) of the lattice generated by ``vectors``."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return []
    h, _, r = hermite_normal_form(vectors)
    return h[:r]


def integer_kernel(m: Sequence[Sequence[int]], n: int | None = None) -> IntMatrix:
    """Basis of ``{x in Z^n : m x = 0}``.

    ``n`` is only needed when ``m`` has no rows.
    """
    m = [list(row) for row in m]
    if not m:
        if n is None:
            raise ValueError("ambient dimension required for an empty matrix")
        return [[int(i == j) for j in range(n)] for i in range(n)]
    cols = len(m[0])
    transposed = [[m[i][j] for i in range(len(m))] for j in range(cols)]
    h, u, r = hermite_normal_form(transposed)
    kernel = u[r:]
    if not kernel:
        return []
    return lattice_basis_of_span(kernel)


def saturated_basis_of_span(vectors: Sequence[Sequence[int]], n: int) -> IntMatrix:
    """Basis of Z^n intersected with the real span of ``vectors``.

    This is the lattice of all integer vectors parallel to the span, which
    contains (and may strictly contain) the lattice generated by the inputs.
    """
    vectors = [list(v) for v in vectors if any(v)]
    if not vectors:
        return []
    perp = integer_kernel(vectors)
    if not perp:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    return integer_kernel(perp)


def lattice_coordinates(basis: Sequence[Sequence[int]], v: Sequence[int]) -> IntVector:
    """Integer coordinates of ``v`` in an HNF ``basis``.

    Raises ``ValueError`` if ``v`` is not in the lattice.
    """
    v = list(v)
    coords = []
    for row in basis:
        c = next(j for j, x in enumerate(row) if x)
        q, rem = divmod(v[c], row[c])
        if rem:
            raise ValueError(f"{tuple(v)} is not in the lattice")
        coords.append(q)
        if q:
            v = [s - q * t for s, t in zip(v, row)]
    if any(v):
        raise ValueError("vector is not in the span of the basis")
    return tuple(coords)


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    a = [list(row) for row in m]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    if n == 3:
        (p, q, r), (s, t, u), (v, w, x) = a
        return p * (t * x - u * w) - q * (s * x - u * v) + r * (s * w - t * v)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def abs_determinant(m: Sequence[Sequence[int]]) -> Fraction:
    return Fraction(abs(determinant(m)))


def rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q of an integer or rational matrix."""
    if not rows:
        return 0
    if all(type(x) is int for row in rows for x in row):
        return _int_rank(rows)
    a = [[Fraction(x) for x in row] for row in rows]
    cols = len(a[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, len(a)):
            if a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return r


def _int_rank(rows: Sequence[Sequence[int]]) -> int:
    # fraction-free elimination; rows are divided by their content to keep entries small
    a = [list(row) for row in rows if any(row)]
    if not a:
        return 0
    cols = len(a[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        p = pr[c]
        for i in range(r + 1, len(a)):
            q = a[i][c]
            if q:
                row = [p * x - q * y for x, y in zip(a[i], pr)]
                g = 0
                for x in row:
                    g = gcd(g, x)
                a[i] = [x // g for x in row] if g > 1 else row
        r += 1
        if r == len(a):
            break
    return r


def solve_rational(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Unique solution of ``a x = b`` over Q.

    Returns ``None`` when the system is inconsistent or underdetermined.
    Overdetermined consistent systems are fine.
    """
    rows = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    if not rows:
        return None
    n = len(rows[0]) - 1
    r = 0
    where = []
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            return None
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        where.append(r)
        r += 1
    if any(row[n] != 0 for row in rows[r:]):
        return None
    return [rows[i][n] for i in where]


def primitive(v: Sequence) -> IntVector:
    """Scale a rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


class SplitMix64:
    """Tiny deterministic 64-bit generator (splitmix64)."""

    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self.MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)

    def signed(self, bits: int) -> int:
        """Uniform integer in the open interval (-2**bits, 2**bits)."""
        span = (1 << (bits + 1)) - 1
        return self.next() % span - ((1 << bits) - 1)


def fraction_to_str(x) -> str:
    """Serialize an exact rational as ``"p/q"`` (or ``"p"`` for integers)."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fraction_from_str(s) -> Fraction:
    return Fraction(s)
