"""Truncated non-commutative power series over Q.

An :class:`NCSeries` of rank ``n`` and level ``N`` is an element of
``Q<<X_1..X_n>>`` modulo words of length > N.  Monomials are tuples of
generator indices; the empty tuple is the unit.  The Hopf structure makes
every ``X_i`` primitive, so the coproduct of a word is the sum over its
unshuffles.

Graded two-sided ideals are represented degree by degree by echelon bases
over the monomials of that degree (see :class:`GradedIdealNC`).  Commuting
variables are obtained as the quotient by ``<X_i X_j - X_j X_i>``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import product as iproduct
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import DomainError
from .exactnum import EchelonBasis, format_rational, parse_rational

__all__ = [
    "NCSeries",
    "NCSeries2",
    "nc_mul",
    "nc_exp",
    "nc_log",
    "nc_inverse",
    "bch",
    "coproduct",
    "tensor",
    "is_grouplike",
    "is_primitive",
    "GradedIdealNC",
    "ideal_build",
    "ideal_reduce",
    "ideal_reduce2",
    "hilbert_series",
    "commutator_ideal",
    "words_of_length",
]

Mono = Tuple[int, ...]


def words_of_length(n: int, d: int) -> List[Mono]:
    return list(iproduct(range(1, n + 1), repeat=d))


def _sort_key(w: Mono):
    return (len(w), w)


class NCSeries:
    """Immutable truncated series; ``terms`` maps monomials to nonzero Fractions."""

    __slots__ = ("rank", "level", "terms")

    def __init__(self, rank: int, level: int, terms: Mapping[Mono, object] = ()):
        if rank < 1 or level < 0:
            raise DomainError(f"invalid rank/level {rank}/{level}")
        clean: Dict[Mono, Fraction] = {}
        for w, c in dict(terms).items():
            w = tuple(w)
            if len(w) > level:
                continue
            if any(not 1 <= a <= rank for a in w):
                raise DomainError(f"monomial {w} out of range for rank {rank}")
            c = Fraction(c)
            if c:
                clean[w] = c
        self.rank = rank
        self.level = level
        self.terms = clean

    # constructors
    @classmethod
    def zero(cls, rank, level):
        return cls(rank, level)

    @classmethod
    def one(cls, rank, level):
        return cls(rank, level, {(): 1})

    @classmethod
    def gen(cls, i, rank, level):
        return cls(rank, level, {(i,): 1})

    @classmethod
    def monomial(cls, word, rank, level, coeff=1):
        return cls(rank, level, {tuple(word): coeff})

    # inspection
    def coeff(self, word) -> Fraction:
        return self.terms.get(tuple(word), Fraction(0))

    @property
    def constant(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def component(self, d: int) -> "NCSeries":
        return NCSeries(self.rank, self.level, {w: c for w, c in self.terms.items() if len(w) == d})

    def lowest_degree(self) -> Optional[int]:
        return min((len(w) for w in self.terms), default=None)

    def degree(self) -> Optional[int]:
        return max((len(w) for w in self.terms), default=None)

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self.terms}) <= 1

    def is_zero(self) -> bool:
        return not self.terms

    def truncated(self, level: int) -> "NCSeries":
        if level > self.level:
            raise DomainError(f"cannot raise level {self.level} to {level}")
        return NCSeries(self.rank, level, self.terms)

    def at_level(self, level: int) -> "NCSeries":
        """Reinterpret with a different level, dropping words that no longer fit.

        Raising the level is only meaningful for polynomials known exactly,
        e.g. homogeneous ideal generators.
        """
        return NCSeries(self.rank, level, self.terms)

    def sorted_terms(self) -> List[Tuple[Mono, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: _sort_key(t[0]))

    # arithmetic
    def _check(self, other: "NCSeries"):
        if not isinstance(other, NCSeries):
            raise TypeError(f"expected NCSeries, got {type(other).__name__}")
        if (self.rank, self.level) != (other.rank, other.level):
            raise DomainError(
                f"rank/level mismatch: ({self.rank},{self.level}) vs ({other.rank},{other.level})")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NCSeries(self.rank, self.level, {(): other})
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return NCSeries(self.rank, self.level, out)

    __radd__ = __add__

    def __neg__(self):
        return NCSeries(self.rank, self.level, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "NCSeries":
        c = Fraction(c)
        return NCSeries(self.rank, self.level, {w: c * x for w, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return nc_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return nc_inverse(self) ** (-k)
        out = NCSeries.one(self.rank, self.level)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, NCSeries):
            return NotImplemented
        return (self.rank, self.level, self.terms) == (other.rank, other.level, other.terms)

    def __hash__(self):
        return hash((self.rank, self.level, frozenset(self.terms.items())))

    def __repr__(self):
        return f"NCSeries(rank={self.rank}, level={self.level}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            mono = "".join(f"X{a}" for a in w) or "1"
            if not w:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{format_rational(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # serialisation
    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "level": self.level,
            "terms": [{"word": list(w), "coeff": format_rational(c)} for w, c in self.sorted_terms()],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, data: dict) -> "NCSeries":
        try:
            rank, level = int(data["rank"]), int(data["level"])
            terms: Dict[Mono, Fraction] = {}
            for t in data["terms"]:
                w = tuple(int(a) for a in t["word"])
                terms[w] = terms.get(w, 0) + parse_rational(t["coeff"])
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed series JSON: {exc}") from None
        return cls(rank, level, terms)

    @classmethod
    def from_json(cls, text: str) -> "NCSeries":
        return cls.from_dict(json.loads(text))


def nc_mul(a: NCSeries, b: NCSeries) -> NCSeries:
    a._check(b)
    N = a.level
    out: Dict[Mono, Fraction] = {}
    bterms = sorted(b.terms.items(), key=lambda t: len(t[0]))
    for u, x in a.terms.items():
        room = N - len(u)
        for v, y in bterms:
            if len(v) > room:
                break
            w = u + v
            out[w] = out.get(w, 0) + x * y
    return NCSeries(a.rank, N, out)


def nc_exp(a: NCSeries) -> NCSeries:
    if a.constant != 0:
        raise DomainError("exp needs a series without constant term")
    result = NCSeries.one(a.rank, a.level)
    term = result
    for k in range(1, a.level + 1):
        term = (term * a).scale(Fraction(1, k))
        if term.is_zero():
            break
        result = result + term
    return result


def nc_log(a: NCSeries) -> NCSeries:
    if a.constant != 1:
        raise DomainError("log needs a series with constant term 1")
    u = a - 1
    result = NCSeries.zero(a.rank, a.level)
    power = NCSeries.one(a.rank, a.level)
    for k in range(1, a.level + 1):
        power = power * u
        if power.is_zero():
            break
        result = result + power.scale(Fraction((-1) ** (k + 1), k))
    return result


def nc_inverse(a: NCSeries) -> NCSeries:
    """Multiplicative inverse; needs an invertible constant term."""
    c = a.constant
    if c == 0:
        raise DomainError("series with zero constant term is not invertible")
    u = NCSeries.one(a.rank, a.level) - a.scale(1 / c)
    result = NCSeries.one(a.rank, a.level)
    power = result
    for _ in range(a.level):
        power = power * u
        if power.is_zero():
            break
        result = result + power
    return result.scale(1 / c)


def bch(i: int, j: int, level: int, rank: Optional[int] = None) -> NCSeries:
    """``log(exp(X_i) exp(X_j))`` truncated at ``level``."""
    if level < 1:
        raise DomainError("level must be >= 1")
    rank = rank or max(i, j)
    x = NCSeries.gen(i, rank, level)
    y = NCSeries.gen(j, rank, level)
    return nc_log(nc_exp(x) * nc_exp(y))


# --- coproduct ------------------------------------------------------------------

Pair = Tuple[Mono, Mono]


class NCSeries2:
    """Truncated element of the completed tensor square, keyed by word pairs."""

    __slots__ = ("rank", "level", "terms")

    def __init__(self, rank: int, level: int, terms: Mapping[Pair, object] = ()):
        clean: Dict[Pair, Fraction] = {}
        for (u, v), c in dict(terms).items():
            u, v = tuple(u), tuple(v)
            if len(u) + len(v) > level:
                continue
            c = Fraction(c)
            if c:
                clean[(u, v)] = c
        self.rank = rank
        self.level = level
        self.terms = clean

    def _check(self, other):
        if (self.rank, self.level) != (other.rank, other.level):
            raise DomainError("rank/level mismatch in tensor square")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return NCSeries2(self.rank, self.level, out)

    def __neg__(self):
        return NCSeries2(self.rank, self.level, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        N = self.level
        out: Dict[Pair, Fraction] = {}
        for (u1, v1), x in self.terms.items():
            room = N - len(u1) - len(v1)
            for (u2, v2), y in other.terms.items():
                if len(u2) + len(v2) <= room:
                    k = (u1 + u2, v1 + v2)
                    out[k] = out.get(k, 0) + x * y
        return NCSeries2(self.rank, N, out)

    def __eq__(self, other):
        if not isinstance(other, NCSeries2):
            return NotImplemented
        return (self.rank, self.level, self.terms) == (other.rank, other.level, other.terms)

    def __repr__(self):
        items = sorted(self.terms.items(), key=lambda t: (len(t[0][0]) + len(t[0][1]), t[0]))
        body = " + ".join(f"{format_rational(c)}*{u}(x){v}" for (u, v), c in items)
        return f"NCSeries2(rank={self.rank}, level={self.level}, {body or '0'})"


_UNSHUFFLE_CACHE: Dict[Mono, List[Pair]] = {}


def _unshuffles(w: Mono) -> List[Pair]:
    hit = _UNSHUFFLE_CACHE.get(w)
    if hit is None:
        d = len(w)
        hit = []
        for mask in range(1 << d):
            left = tuple(w[k] for k in range(d) if mask >> k & 1)
            right = tuple(w[k] for k in range(d) if not mask >> k & 1)
            hit.append((left, right))
        if d <= 10:
            _UNSHUFFLE_CACHE[w] = hit
    return hit


def coproduct(a: NCSeries) -> NCSeries2:
    """The algebra map with Delta(X_i) = X_i (x) 1 + 1 (x) X_i."""
    out: Dict[Pair, Fraction] = {}
    for w, c in a.terms.items():
        for k in _unshuffles(w):
            out[k] = out.get(k, 0) + c
    return NCSeries2(a.rank, a.level, out)


def tensor(a: NCSeries, b: NCSeries) -> NCSeries2:
    a._check(b)
    N = a.level
    out = {}
    for u, x in a.terms.items():
        for v, y in b.terms.items():
            if len(u) + len(v) <= N:
                out[(u, v)] = x * y
    return NCSeries2(a.rank, N, out)


def is_grouplike(a: NCSeries) -> bool:
    return a.constant == 1 and coproduct(a) == tensor(a, a)


def is_primitive(a: NCSeries) -> bool:
    one = NCSeries.one(a.rank, a.level)
    return coproduct(a) == tensor(a, one) + tensor(one, a)


# --- graded ideals ---------------------------------------------------------------

class GradedIdealNC:
    """Two-sided ideal generated by homogeneous elements, truncated at ``level``.

    ``bases[d]`` is an echelon basis (pivot = lexicographically smallest
    monomial) of the degree-d component, spanned by all ``u r v``.
    """

    def __init__(self, rank: int, level: int, generators: Sequence[NCSeries], bases: Dict[int, EchelonBasis]):
        self.rank = rank
        self.level = level
        self.generators = tuple(generators)
        self.bases = bases

    def dim(self, d: int) -> int:
        return len(self.bases.get(d, ()))

    def dims(self) -> List[int]:
        return [self.dim(d) for d in range(self.level + 1)]

    def reduce(self, a: NCSeries) -> NCSeries:
        return ideal_reduce(a, self)

    def contains(self, a: NCSeries) -> bool:
        return ideal_reduce(a, self).is_zero()


def ideal_build(gens: Sequence[NCSeries], level: int, rank: Optional[int] = None) -> GradedIdealNC:
    """Degree-by-degree span of ``u r v`` for homogeneous generators ``r``."""
    gens = list(gens)
    if rank is None:
        if not gens:
            raise DomainError("rank is required for an ideal without generators")
        rank = gens[0].rank
    by_degree: Dict[int, List[Dict[Mono, Fraction]]] = {}
    for g in gens:
        if g.rank != rank:
            raise DomainError("generator rank mismatch")
        if g.is_zero():
            continue
        if not g.is_homogeneous():
            raise DomainError(f"ideal generator is not homogeneous: {g}")
        d = g.lowest_degree()
        if d < 1:
            raise DomainError("ideal generators must have degree >= 1")
        by_degree.setdefault(d, []).append(dict(g.terms))
    bases: Dict[int, EchelonBasis] = {}
    prev: List[Dict[Mono, Fraction]] = []
    for d in range(1, level + 1):
        basis = EchelonBasis()
        for v in by_degree.get(d, []):
            basis.add(v)
        for row in prev:
            for i in range(1, rank + 1):
                basis.add({(i,) + w: c for w, c in row.items()})
                basis.add({w + (i,): c for w, c in row.items()})
        bases[d] = basis
        prev = basis.rows()
    return GradedIdealNC(rank, level, gens, bases)


def _check_ideal(a, ideal: GradedIdealNC):
    if (a.rank, a.level) != (ideal.rank, ideal.level):
        raise DomainError(
            f"series ({a.rank},{a.level}) incompatible with ideal ({ideal.rank},{ideal.level})")


def ideal_reduce(a: NCSeries, ideal: GradedIdealNC) -> NCSeries:
    """Canonical representative of ``a`` modulo the ideal, degree by degree."""
    _check_ideal(a, ideal)
    comps: Dict[int, Dict[Mono, Fraction]] = {}
    for w, c in a.terms.items():
        comps.setdefault(len(w), {})[w] = c
    out: Dict[Mono, Fraction] = {}
    for d, comp in comps.items():
        basis = ideal.bases.get(d)
        out.update(basis.reduce(comp) if basis is not None else comp)
    return NCSeries(a.rank, a.level, out)


def ideal_reduce2(s: NCSeries2, ideal: GradedIdealNC) -> NCSeries2:
    """Apply the normal form map to each tensor factor independently."""
    _check_ideal(s, ideal)
    cache: Dict[Mono, Dict[Mono, Fraction]] = {}

    def nf(w: Mono):
        hit = cache.get(w)
        if hit is None:
            basis = ideal.bases.get(len(w))
            hit = basis.reduce({w: Fraction(1)}) if basis is not None else {w: Fraction(1)}
            cache[w] = hit
        return hit

    out: Dict[Pair, Fraction] = {}
    for (u, v), c in s.terms.items():
        for u2, x in nf(u).items():
            for v2, y in nf(v).items():
                k = (u2, v2)
                out[k] = out.get(k, 0) + c * x * y
    return NCSeries2(s.rank, s.level, out)


def hilbert_series(ideal: GradedIdealNC) -> List[int]:
    """``dim (T(V)/I)_d`` for d = 0..level."""
    return [ideal.rank ** d - ideal.dim(d) for d in range(ideal.level + 1)]


def commutator_ideal(n: int, level: int) -> GradedIdealNC:
    """``<X_i X_j - X_j X_i>``: the quotient is the commutative power series ring."""
    gens = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            gens.append(NCSeries(n, level, {(i, j): 1, (j, i): -1}))
    return ideal_build(gens, level, rank=n)
