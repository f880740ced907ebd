"""Exact rational scalars and linear algebra.

Scalars are :class:`fractions.Fraction`, which already keeps numerator and
denominator in lowest terms with a positive denominator.  Two linear algebra
surfaces live here:

* :class:`RatMatrix` with :func:`rref` / :func:`rank`, a dense row-major
  matrix for small explicit problems;
* :class:`EchelonBasis`, an incremental sparse echelon basis keyed by
  arbitrary orderable column labels.  All graded ideal machinery is built on
  it, since graded pieces are naturally indexed by words rather than by
  integers.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Sequence, Tuple

from .errors import DomainError

Rational = Fraction

__all__ = [
    "Rational",
    "RatMatrix",
    "rref",
    "rank",
    "transpose",
    "EchelonBasis",
    "parse_rational",
    "format_rational",
]


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` (or an int) into a Fraction.  Floats are rejected."""
    if isinstance(text, float):
        raise DomainError("floating point coefficient where an exact rational was expected")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    try:
        s = str(text).strip()
        if "." in s or "e" in s.lower():
            raise ValueError
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"not an exact rational: {text!r}") from None


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class RatMatrix:
    """Dense immutable matrix of Fractions stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(Fraction(x) for x in entries)
        if len(entries) != rows * cols:
            raise DomainError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RatMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DomainError("ragged rows")
        return cls(len(rows), ncols, [x for r in rows for x in r])

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    def __getitem__(self, ij: Tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> List[List[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in self.row(i)) for i in range(self.rows))
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"


def transpose(m: RatMatrix) -> RatMatrix:
    return RatMatrix(m.cols, m.rows, [m[i, j] for j in range(m.cols) for i in range(m.rows)])


def rref(m: RatMatrix) -> Tuple[RatMatrix, List[int]]:
    """Reduced row echelon form and the (strictly increasing) pivot columns."""
    a = m.to_rows()
    nrows, ncols = m.rows, m.cols
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return RatMatrix(nrows, ncols, [x for row in a for x in row]), pivots


def rank(m: RatMatrix) -> int:
    return len(rref(m)[1])


Vector = Dict[Hashable, Fraction]


class EchelonBasis:
    """Incrementally built echelon basis of a subspace of a coordinate space.

    Vectors are sparse dicts ``label -> Fraction``; labels must be mutually
    orderable.  Each stored row is normalised so that its smallest label (the
    pivot) has coefficient 1, and no row has a nonzero entry at another row's
    pivot.  :meth:`reduce` therefore returns the unique representative of
    ``v + span`` supported away from the pivots.
    """

    def __init__(self, vectors: Iterable[Vector] = ()):
        self._rows: Dict[Hashable, Vector] = {}
        for v in vectors:
            self.add(v)

    def __len__(self):
        return len(self._rows)

    @property
    def pivots(self) -> List[Hashable]:
        return sorted(self._rows)

    def rows(self) -> List[Vector]:
        return [dict(self._rows[p]) for p in self.pivots]

    def reduce(self, v: Vector) -> Vector:
        out = {k: Fraction(c) for k, c in v.items() if c != 0}
        rows = self._rows
        while True:
            hits = [k for k in out if k in rows]
            if not hits:
                return out
            p = min(hits)
            c = out[p]
            for k, x in rows[p].items():
                y = out.get(k, 0) - c * x
                if y:
                    out[k] = y
                else:
                    out.pop(k, None)

    def add(self, v: Vector) -> bool:
        """Insert ``v``; return True if it enlarged the span."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {k: x * inv for k, x in r.items()}
        for q, row in self._rows.items():
            c = row.get(p)
            if c:
                for k, x in r.items():
                    y = row.get(k, 0) - c * x
                    if y:
                        row[k] = y
                    else:
                        row.pop(k, None)
        self._rows[p] = r
        return True

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)
