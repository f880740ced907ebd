"""Free group words, a small presentation language, and braid automorphisms.

A letter is a nonzero int: ``i`` is the generator ``x_i`` and ``-i`` its
inverse (1-based).  Words are freely reduced on construction.  Commutators
follow the convention ``[a, b] = a b a^-1 b^-1`` everywhere: in
:func:`commutator`, in the ``[u,v]`` syntax of the parser, and in the
relators built by the helpers at the bottom of the module.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from .errors import DomainError, ParseError

__all__ = [
    "Word",
    "word_mul",
    "commutator",
    "parse_word",
    "format_word",
    "GroupPresentation",
    "parse_presentation",
    "FreeAutomorphism",
    "sigma",
    "compose",
    "apply",
    "braid_automorphism",
    "pure_braid_generator",
    "surface_presentation",
    "free_abelian_presentation",
]


def _free_reduce(letters: Iterable[int]) -> Tuple[int, ...]:
    out: List[int] = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


@dataclass(frozen=True)
class Word:
    rank: int
    letters: Tuple[int, ...] = ()

    def __post_init__(self):
        letters = tuple(int(a) for a in self.letters)
        for a in letters:
            if a == 0 or abs(a) > self.rank:
                raise DomainError(f"letter {a} out of range for rank {self.rank}")
        object.__setattr__(self, "letters", _free_reduce(letters))

    @classmethod
    def gen(cls, i: int, rank: int) -> "Word":
        return cls(rank, (i,))

    @classmethod
    def identity(cls, rank: int) -> "Word":
        return cls(rank, ())

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return word_mul(self, other)

    def inverse(self) -> "Word":
        return Word(self.rank, tuple(-a for a in reversed(self.letters)))

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return Word(self.rank, base.letters * abs(k))

    def exponent_sums(self) -> Tuple[int, ...]:
        sums = [0] * self.rank
        for a in self.letters:
            sums[abs(a) - 1] += 1 if a > 0 else -1
        return tuple(sums)

    def __str__(self):
        return format_word(self)


def _check_rank(a: Word, b: Word):
    if a.rank != b.rank:
        raise DomainError(f"rank mismatch: {a.rank} vs {b.rank}")


def word_mul(a: Word, b: Word) -> Word:
    _check_rank(a, b)
    return Word(a.rank, a.letters + b.letters)


def commutator(a: Word, b: Word) -> Word:
    """``a b a^-1 b^-1``."""
    _check_rank(a, b)
    return Word(a.rank, a.letters + b.letters + a.inverse().letters + b.inverse().letters)


def format_word(w: Word, generators: Sequence[str] | None = None) -> str:
    if not w.letters:
        return "1"
    names = list(generators) if generators else [f"x{i}" for i in range(1, w.rank + 1)]
    parts = []
    for a in w.letters:
        name = names[abs(a) - 1]
        parts.append(name if a > 0 else f"{name}^-1")
    return " ".join(parts)


# --- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<pow>\^\s*[+-]?\d+)|(?P<sym>[\[\](),])|(?P<bad>\S))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while True:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        start = m.start(m.lastgroup)
        if m.lastgroup == "bad":
            raise ParseError(f"unexpected character {m.group('bad')!r}", start)
        if m.lastgroup == "pow":
            toks.append(("pow", int(m.group("pow")[1:].replace(" ", "")), start))
        else:
            toks.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    if text[pos:].strip():
        raise ParseError("trailing input", pos)
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, generators: Sequence[str]):
        self.toks = _tokenize(text)
        self.i = 0
        self.index = {g: k + 1 for k, g in enumerate(generators)}
        self.rank = len(generators)

    def peek(self):
        return self.toks[self.i]

    def take(self, kind, value=None):
        tok = self.toks[self.i]
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {want!r}, got {got}", tok[2])
        self.i += 1
        return tok

    def product(self) -> Word:
        w = Word.identity(self.rank)
        while True:
            kind, value, _ = self.peek()
            if kind == "name" or (kind == "sym" and value in "(["):
                w = w * self.factor()
            else:
                return w

    def factor(self) -> Word:
        kind, value, pos = self.peek()
        if kind == "name":
            self.i += 1
            if value not in self.index:
                raise ParseError(f"unknown generator {value!r}", pos)
            base = Word.gen(self.index[value], self.rank)
        elif value == "(":
            self.i += 1
            base = self.product()
            self.take("sym", ")")
        elif value == "[":
            self.i += 1
            a = self.product()
            self.take("sym", ",")
            b = self.product()
            self.take("sym", "]")
            base = commutator(a, b)
        else:
            raise ParseError(f"unexpected {value!r}", pos)
        if self.peek()[0] == "pow":
            base = base ** self.take("pow")[1]
        return base


def parse_word(text: str, generators: Sequence[str]) -> Word:
    """Parse a word such as ``"x1 x2^-1 [x1, x2 x3]^2"``.

    Juxtaposition is multiplication, ``^k`` a (possibly negative) power,
    ``[u,v]`` the commutator ``u v u^-1 v^-1``.  The literal ``1`` is not
    accepted; an empty string denotes the identity.
    """
    if len(set(generators)) != len(generators):
        raise DomainError("generator names must be distinct")
    p = _Parser(text, generators)
    w = p.product()
    p.take("end")
    return w


@dataclass(frozen=True)
class GroupPresentation:
    generators: Tuple[str, ...]
    relators: Tuple[Word, ...] = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise DomainError("generator names must be distinct")
        for r in self.relators:
            if r.rank != len(gens):
                raise DomainError("relator rank does not match the number of generators")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(self.relators))

    @property
    def rank(self) -> int:
        return len(self.generators)


def parse_presentation(text: str) -> GroupPresentation:
    """Read ``gens: a b ...`` followed by ``rel: <word>`` lines; ``#`` comments."""
    gens = None
    rel_texts = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in ("gens", "rel"):
            raise ParseError(f"line {lineno}: expected 'gens:' or 'rel:'")
        if key == "gens":
            if gens is not None:
                raise ParseError(f"line {lineno}: duplicate 'gens:' line")
            gens = rest.split()
            for g in gens:
                if not re.fullmatch(r"[A-Za-z][A-Za-z0-9]*", g):
                    raise ParseError(f"line {lineno}: bad generator name {g!r}")
        else:
            if gens is None:
                raise ParseError(f"line {lineno}: 'rel:' before 'gens:'")
            rel_texts.append((lineno, rest))
    if gens is None:
        raise ParseError("missing 'gens:' line")
    rels = []
    for lineno, t in rel_texts:
        try:
            rels.append(parse_word(t, gens))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    return GroupPresentation(tuple(gens), tuple(rels))


def surface_presentation(g: int) -> GroupPresentation:
    """Generators x1 y1 ... xg yg, single relator [x1,y1]...[xg,yg]."""
    names = [n for i in range(1, g + 1) for n in (f"x{i}", f"y{i}")]
    r = Word.identity(2 * g)
    for i in range(g):
        r = r * commutator(Word.gen(2 * i + 1, 2 * g), Word.gen(2 * i + 2, 2 * g))
    return GroupPresentation(tuple(names), (r,))


def free_abelian_presentation(n: int) -> GroupPresentation:
    names = tuple(f"x{i}" for i in range(1, n + 1))
    rels = tuple(commutator(Word.gen(i, n), Word.gen(j, n))
                 for i in range(1, n + 1) for j in range(i + 1, n + 1))
    return GroupPresentation(names, rels)


# --- automorphisms -----------------------------------------------------------

@dataclass(frozen=True)
class FreeAutomorphism:
    """Endomorphism of F_n given by generator images.

    Invertibility is not checked; automorphisms built from :func:`sigma` and
    :func:`compose` are invertible by construction.
    """

    rank: int
    images: Tuple[Word, ...]

    def __post_init__(self):
        if len(self.images) != self.rank or any(w.rank != self.rank for w in self.images):
            raise DomainError("need one image of matching rank per generator")

    @classmethod
    def identity(cls, rank: int) -> "FreeAutomorphism":
        return cls(rank, tuple(Word.gen(i, rank) for i in range(1, rank + 1)))

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def __mul__(self, other: "FreeAutomorphism") -> "FreeAutomorphism":
        return compose(self, other)

    def permutation(self) -> Tuple[int, ...]:
        """Index j with image(x_i) abelianizing to x_j, for each i; raises if none."""
        perm = []
        for i, w in enumerate(self.images, 1):
            sums = w.exponent_sums()
            hits = [j for j, s in enumerate(sums, 1) if s != 0]
            if len(hits) != 1 or sums[hits[0] - 1] != 1:
                raise DomainError(f"image of x{i} does not abelianize to a generator")
            perm.append(hits[0])
        return tuple(perm)


def apply(f: FreeAutomorphism, w: Word) -> Word:
    if f.rank != w.rank:
        raise DomainError(f"rank mismatch: {f.rank} vs {w.rank}")
    letters: List[int] = []
    for a in w.letters:
        img = f.images[abs(a) - 1]
        letters.extend(img.letters if a > 0 else img.inverse().letters)
    return Word(f.rank, letters)


def compose(f: FreeAutomorphism, g: FreeAutomorphism) -> FreeAutomorphism:
    """``f o g``: first g, then f."""
    if f.rank != g.rank:
        raise DomainError(f"rank mismatch: {f.rank} vs {g.rank}")
    return FreeAutomorphism(f.rank, tuple(apply(f, w) for w in g.images))


def sigma(i: int, n: int, inverse: bool = False) -> FreeAutomorphism:
    """Artin generator: x_i -> x_{i+1}, x_{i+1} -> x_{i+1}^-1 x_i x_{i+1}."""
    if not 1 <= i <= n - 1:
        raise DomainError(f"sigma index {i} out of range for rank {n}")
    images = list(FreeAutomorphism.identity(n).images)
    if inverse:
        images[i - 1] = Word(n, (i, i + 1, -i))
        images[i] = Word(n, (i,))
    else:
        images[i - 1] = Word(n, (i + 1,))
        images[i] = Word(n, (-(i + 1), i, i + 1))
    return FreeAutomorphism(n, tuple(images))


def braid_automorphism(braid: Sequence[int], n: int) -> FreeAutomorphism:
    """Product of sigma_{|b|}^{sign b} over the braid word, composed left to right."""
    f = FreeAutomorphism.identity(n)
    for b in braid:
        if b == 0:
            raise DomainError("braid letters are nonzero signed indices")
        f = compose(f, sigma(abs(b), n, inverse=b < 0))
    return f


def pure_braid_generator(i: int, j: int, n: int) -> FreeAutomorphism:
    """A_ij = (s_{j-1} ... s_{i+1}) s_i^2 (s_{j-1} ... s_{i+1})^-1."""
    if not 1 <= i < j <= n:
        raise DomainError(f"need 1 <= i < j <= n, got i={i}, j={j}, n={n}")
    conj = list(range(j - 1, i, -1))
    word = conj + [i, i] + [-b for b in reversed(conj)]
    return braid_automorphism(word, n)
