"""Free Lie algebras in the Lyndon basis, graded Lie ideals and derived series.

A Lyndon word ``w`` of length >= 2 has a standard factorization ``w = uv``
with ``v`` its longest proper Lyndon suffix, and the basis element
``P_w = [P_u, P_v]``.  Expanded in the tensor algebra, ``P_w`` is ``w`` plus
lexicographically larger words, so a Lie polynomial is converted back to
Lyndon coordinates by repeatedly peeling off its smallest monomial.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import DomainError
from .exactnum import EchelonBasis, format_rational, parse_rational
from .ncseries import NCSeries, is_primitive

__all__ = [
    "is_lyndon",
    "lyndon_basis",
    "lyndon_words_upto",
    "standard_factorization",
    "LiePoly",
    "lie_embed",
    "dynkin_project",
    "lie_bracket",
    "to_lyndon",
    "GradedLieIdeal",
    "lie_ideal_build",
    "lie_quotient_dims",
    "derived_quotient_dims",
    "pure_braid_generators",
    "pure_braid_lie_relations",
    "surface_lie_relations",
    "abelian_lie_relations",
]

Mono = Tuple[int, ...]
Poly = Dict[Mono, Fraction]


def is_lyndon(w: Sequence[int]) -> bool:
    w = tuple(w)
    return bool(w) and all(w < w[k:] + w[:k] for k in range(1, len(w)))


@lru_cache(maxsize=None)
def lyndon_words_upto(n: int, d: int) -> Tuple[Mono, ...]:
    """All Lyndon words of length <= d over 1..n, in lexicographic order (Duval)."""
    if n < 1 or d < 1:
        return ()
    out = []
    w = [1]
    while w:
        out.append(tuple(w))
        m = len(w)
        while len(w) < d:
            w.append(w[len(w) - m])
        while w and w[-1] == n:
            w.pop()
        if w:
            w[-1] += 1
    return tuple(out)


@lru_cache(maxsize=None)
def lyndon_basis(n: int, d: int) -> Tuple[Mono, ...]:
    return tuple(w for w in lyndon_words_upto(n, d) if len(w) == d)


def standard_factorization(w: Sequence[int]) -> Tuple[Mono, Mono]:
    w = tuple(w)
    if len(w) < 2 or not is_lyndon(w):
        raise DomainError(f"{w} is not a Lyndon word of length >= 2")
    for k in range(1, len(w)):
        if is_lyndon(w[k:]):
            return w[:k], w[k:]
    raise AssertionError("unreachable")


def _pmul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for u, x in a.items():
        for v, y in b.items():
            w = u + v
            c = out.get(w, 0) + x * y
            if c:
                out[w] = c
            else:
                out.pop(w, None)
    return out


def _padd(a: Poly, b: Poly, scale=1) -> Poly:
    out = dict(a)
    for w, c in b.items():
        y = out.get(w, 0) + scale * c
        if y:
            out[w] = y
        else:
            out.pop(w, None)
    return out


def _pcomm(a: Poly, b: Poly) -> Poly:
    return _padd(_pmul(a, b), _pmul(b, a), -1)


@lru_cache(maxsize=None)
def _embed_lyndon(w: Mono) -> Tuple[Tuple[Mono, Fraction], ...]:
    if len(w) == 1:
        return ((w, Fraction(1)),)
    u, v = standard_factorization(w)
    p = _pcomm(dict(_embed_lyndon(u)), dict(_embed_lyndon(v)))
    return tuple(sorted(p.items()))


def to_lyndon(poly: Mapping[Mono, Fraction]) -> Dict[Mono, Fraction]:
    """Lyndon coordinates of a Lie polynomial given in monomials.

    Raises DomainError if the polynomial is not a Lie element.
    """
    rest = {w: Fraction(c) for w, c in poly.items() if c}
    out: Dict[Mono, Fraction] = {}
    while rest:
        w = min(rest, key=lambda m: (len(m), m))
        if not is_lyndon(w):
            raise DomainError(f"not a Lie element: leading monomial {w} is not Lyndon")
        c = rest[w]
        out[w] = c
        for m, x in _embed_lyndon(w):
            y = rest.get(m, 0) - c * x
            if y:
                rest[m] = y
            else:
                rest.pop(m, None)
    return out


class LiePoly:
    """Element of the free Lie algebra: Lyndon word -> nonzero Fraction."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms: Mapping[Mono, object] = ()):
        clean: Dict[Mono, Fraction] = {}
        for w, c in dict(terms).items():
            w = tuple(w)
            if any(not 1 <= a <= rank for a in w):
                raise DomainError(f"letter out of range in {w}")
            if not is_lyndon(w):
                raise DomainError(f"{w} is not a Lyndon word")
            c = Fraction(c)
            if c:
                clean[w] = c
        self.rank = rank
        self.terms = clean

    @classmethod
    def gen(cls, i: int, rank: int) -> "LiePoly":
        return cls(rank, {(i,): 1})

    @classmethod
    def basis(cls, word, rank: int) -> "LiePoly":
        return cls(rank, {tuple(word): 1})

    @classmethod
    def _from_poly(cls, rank: int, poly: Poly) -> "LiePoly":
        return cls(rank, to_lyndon(poly))

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def lowest_degree(self) -> Optional[int]:
        return min((len(w) for w in self.terms), default=None)

    def component(self, d: int) -> "LiePoly":
        return LiePoly(self.rank, {w: c for w, c in self.terms.items() if len(w) == d})

    def truncated(self, level: int) -> "LiePoly":
        return LiePoly(self.rank, {w: c for w, c in self.terms.items() if len(w) <= level})

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self.terms}) <= 1

    def coeff(self, word) -> Fraction:
        return self.terms.get(tuple(word), Fraction(0))

    def poly(self) -> Poly:
        """Expansion in monomials (no truncation)."""
        out: Poly = {}
        for w, c in self.terms.items():
            for m, x in _embed_lyndon(w):
                y = out.get(m, 0) + c * x
                if y:
                    out[m] = y
                else:
                    out.pop(m, None)
        return out

    def _check(self, other):
        if not isinstance(other, LiePoly):
            raise TypeError(f"expected LiePoly, got {type(other).__name__}")
        if self.rank != other.rank:
            raise DomainError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other):
        self._check(other)
        return LiePoly(self.rank, _padd(self.terms, other.terms))

    def __sub__(self, other):
        self._check(other)
        return LiePoly(self.rank, _padd(self.terms, other.terms, -1))

    def __neg__(self):
        return LiePoly(self.rank, {w: -c for w, c in self.terms.items()})

    def scale(self, c) -> "LiePoly":
        c = Fraction(c)
        return LiePoly(self.rank, {w: c * x for w, x in self.terms.items()})

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, LiePoly):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))

    def __repr__(self):
        body = " + ".join(f"{format_rational(c)}*P{''.join(map(str, w))}" for w, c in self.sorted_terms())
        return f"LiePoly(rank={self.rank}, {body or '0'})"

    def __str__(self):
        """Terms as ``c*P<word>``, P<word> the bracketed Lyndon basis element."""
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            mono = "P" + ".".join(map(str, w)) if self.rank > 9 else "P" + "".join(map(str, w))
            parts.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{format_rational(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "terms": [{"lyndon": list(w), "coeff": format_rational(c)} for w, c in self.sorted_terms()],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, data: dict) -> "LiePoly":
        try:
            terms: Dict[Mono, Fraction] = {}
            for t in data["terms"]:
                w = tuple(int(a) for a in t["lyndon"])
                terms[w] = terms.get(w, 0) + parse_rational(t["coeff"])
            return cls(int(data["rank"]), terms)
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed Lie polynomial JSON: {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> "LiePoly":
        return cls.from_dict(json.loads(text))


def lie_embed(p: LiePoly, level: int) -> NCSeries:
    if p.degree() > level:
        raise DomainError(f"degree {p.degree()} exceeds level {level}")
    return NCSeries(p.rank, level, p.poly())


def _dynkin_word(w: Mono) -> Poly:
    """Left-normed bracket [...[[w1, w2], w3], ..., wd] in monomials."""
    cur: Poly = {w[:1]: Fraction(1)}
    for a in w[1:]:
        cur = _pcomm(cur, {(a,): Fraction(1)})
    return cur


def dynkin_project(a: NCSeries, check: bool = True) -> LiePoly:
    """Lie element represented by a primitive series.

    Each degree-d component is sent through the left-normed bracketing map
    and divided by d.  With ``check=False`` the primitivity precondition is
    skipped and the result is the Dynkin projection of ``a``, a Lie element
    whether or not ``a`` was one.
    """
    if a.constant != 0:
        raise DomainError("Dynkin projection needs a series without constant term")
    if check and not is_primitive(a):
        raise DomainError("Dynkin projection needs a primitive series")
    acc: Poly = {}
    for w, c in a.terms.items():
        acc = _padd(acc, _dynkin_word(w), c / len(w))
    p = LiePoly(a.rank, to_lyndon(acc))
    if check and lie_embed(p, a.level) != a:
        raise DomainError("series is not a Lie element")
    return p


def lie_bracket(p: LiePoly, q: LiePoly) -> LiePoly:
    p._check(q)
    return LiePoly(p.rank, to_lyndon(_pcomm(p.poly(), q.poly())))


def _coords_poly(x: Mapping[Mono, Fraction]) -> Poly:
    out: Poly = {}
    for w, c in x.items():
        for m, v in _embed_lyndon(w):
            y = out.get(m, 0) + c * v
            if y:
                out[m] = y
            else:
                out.pop(m, None)
    return out


def _ad_right(x: Mapping[Mono, Fraction], i: int) -> Dict[Mono, Fraction]:
    """Lyndon coordinates of [x, X_i]."""
    px = _coords_poly(x)
    return to_lyndon(_padd({w + (i,): c for w, c in px.items()}, {(i,) + w: c for w, c in px.items()}, -1))


# --- graded Lie ideals -----------------------------------------------------------

class GradedLieIdeal:
    """Homogeneous Lie ideal truncated at ``level``; echelon bases per degree."""

    def __init__(self, rank: int, level: int, generators: Sequence[LiePoly], bases: Dict[int, EchelonBasis]):
        self.rank = rank
        self.level = level
        self.generators = tuple(generators)
        self.bases = bases

    def dim(self, d: int) -> int:
        return len(self.bases.get(d, ()))

    def reduce(self, p: LiePoly) -> LiePoly:
        if p.rank != self.rank:
            raise DomainError("rank mismatch")
        if p.degree() > self.level:
            raise DomainError(f"degree {p.degree()} beyond ideal level {self.level}")
        out: Dict[Mono, Fraction] = {}
        for d in {len(w) for w in p.terms}:
            comp = {w: c for w, c in p.terms.items() if len(w) == d}
            basis = self.bases.get(d)
            out.update(basis.reduce(comp) if basis is not None else comp)
        return LiePoly(self.rank, out)

    def contains(self, p: LiePoly) -> bool:
        return self.reduce(p).is_zero()

    def quotient_dims(self) -> List[int]:
        return lie_quotient_dims(self)


def lie_ideal_build(gens: Sequence[LiePoly], level: int, rank: Optional[int] = None) -> GradedLieIdeal:
    """Ideal closure: degree d+1 is spanned by degree-(d+1) generators and [I_d, X_i]."""
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
            raise DomainError(f"Lie ideal generator is not homogeneous: {g}")
        by_degree.setdefault(g.degree(), []).append(dict(g.terms))
    bases: Dict[int, EchelonBasis] = {}
    prev: List[Dict[Mono, Fraction]] = []
    for d in range(1, level + 1):
        basis = EchelonBasis(by_degree.get(d, []))
        for row in prev:
            for i in range(1, rank + 1):
                basis.add(_ad_right(row, i))
        bases[d] = basis
        prev = basis.rows()
    return GradedLieIdeal(rank, level, gens, bases)


def lie_quotient_dims(ideal: GradedLieIdeal) -> List[int]:
    """Dimensions of (lie(V)/I)_d for d = 1..level."""
    return [len(lyndon_basis(ideal.rank, d)) - ideal.dim(d) for d in range(1, ideal.level + 1)]


def derived_quotient_dims(ideal: GradedLieIdeal, i: int, level: Optional[int] = None) -> List[int]:
    """Graded dimensions of g / g^(i) for g = lie(V)/I, degrees 1..level."""
    if i < 2:
        raise DomainError("derived index must be >= 2")
    level = ideal.level if level is None else level
    if level > ideal.level:
        raise DomainError(f"level {level} beyond ideal level {ideal.level}")
    n = ideal.rank

    def quotient_lifts(space: Dict[int, EchelonBasis]) -> Dict[int, List[Dict[Mono, Fraction]]]:
        lifts = {}
        for d, sp in space.items():
            ib = ideal.bases.get(d)
            reduced = EchelonBasis(ib.reduce(r) if ib is not None else r for r in sp.rows())
            lifts[d] = reduced.rows()
        return lifts

    # g^(1) = g_{>=2}, since g is generated in degree 1
    current: Dict[int, EchelonBasis] = {}
    for d in range(1, level + 1):
        if d == 1:
            current[d] = EchelonBasis(ideal.bases[1].rows() if 1 in ideal.bases else [])
        else:
            current[d] = EchelonBasis({w: 1} for w in lyndon_basis(n, d))
    for _ in range(i - 1):
        lifts = quotient_lifts(current)
        nxt: Dict[int, EchelonBasis] = {}
        for d in range(1, level + 1):
            sp = EchelonBasis(ideal.bases[d].rows() if d in ideal.bases else [])
            for p in range(1, d // 2 + 1):
                q = d - p
                for ka, a in enumerate(lifts.get(p, [])):
                    for kb, b in enumerate(lifts.get(q, [])):
                        if p == q and kb <= ka:
                            continue
                        sp.add(to_lyndon(_pcomm(_coords_poly(a), _coords_poly(b))))
            nxt[d] = sp
        current = nxt
    return [len(lyndon_basis(n, d)) - len(current[d]) for d in range(1, level + 1)]


# --- relation families -----------------------------------------------------------

def pure_braid_generators(n: int) -> List[Tuple[int, int]]:
    """Pairs (i, j), i < j, in lexicographic order; X_ij has index position+1."""
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def pure_braid_lie_relations(n: int) -> List[LiePoly]:
    """Infinitesimal pure braid relations on the generators X_ij (i < j).

    [X_ij, X_kl] = 0 for disjoint pairs and [X_ij, X_il + X_jl] = 0 for
    distinct i, j, l (with X_ab = X_ba).
    """
    pairs = pure_braid_generators(n)
    index = {p: k + 1 for k, p in enumerate(pairs)}
    rank = len(pairs)

    def x(a, b):
        return LiePoly.gen(index[(min(a, b), max(a, b))], rank)

    rels: List[LiePoly] = []
    seen = set()

    def push(p: LiePoly):
        if p.is_zero():
            return
        key = frozenset(p.terms.items())
        if key not in seen and frozenset(p.scale(-1).terms.items()) not in seen:
            seen.add(key)
            rels.append(p)

    for a, (i, j) in enumerate(pairs):
        for (k, l) in pairs[a + 1:]:
            if len({i, j, k, l}) == 4:
                push(lie_bracket(x(i, j), x(k, l)))
    for (i, j) in pairs:
        for l in range(1, n + 1):
            if l not in (i, j):
                push(lie_bracket(x(i, j), x(i, l) + x(j, l)))
    return rels


def surface_lie_relations(g: int) -> List[LiePoly]:
    """Single relation sum_i [x_i, y_i] on generators x1 y1 ... xg yg."""
    rank = 2 * g
    r = LiePoly(rank)
    for i in range(g):
        r = r + lie_bracket(LiePoly.gen(2 * i + 1, rank), LiePoly.gen(2 * i + 2, rank))
    return [r]


def abelian_lie_relations(n: int) -> List[LiePoly]:
    return [LiePoly.basis((i, j), n) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
