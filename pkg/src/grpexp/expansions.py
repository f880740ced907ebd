"""Magnus and exponential expansions of free-group words.

``Expansion(kind, rank, level)`` sends ``x_i`` to ``1 + X_i`` (Magnus) or
``exp(X_i)`` (exponential); inverses go to the genuine algebra inverses.
With an ideal attached, images are reduced modulo it, which realises the
induced expansion on a quotient group whenever it is well defined.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple, Union

from .errors import DomainError
from .ncseries import (
    GradedIdealNC,
    NCSeries,
    coproduct,
    ideal_reduce,
    ideal_reduce2,
    nc_exp,
    nc_inverse,
    nc_log,
    tensor,
)
from .words import Word, commutator

__all__ = [
    "Kind",
    "Expansion",
    "expand",
    "expansion_depth",
    "nilpotent_equal",
    "RelatorCheck",
    "QuotientReport",
    "taylor_check_on_quotient",
    "abelianized_expansion",
    "braid_exponent_sum",
]


class Kind(enum.Enum):
    MAGNUS = "magnus"
    EXPONENTIAL = "exponential"

    @classmethod
    def parse(cls, value: Union[str, "Kind"]) -> "Kind":
        if isinstance(value, Kind):
            return value
        v = str(value).strip().lower()
        aliases = {"exp": cls.EXPONENTIAL, "exponential": cls.EXPONENTIAL, "magnus": cls.MAGNUS}
        if v not in aliases:
            raise DomainError(f"unknown expansion kind {value!r}")
        return aliases[v]


@lru_cache(maxsize=256)
def _generator_images(kind: Kind, rank: int, level: int) -> Tuple[Tuple[NCSeries, NCSeries], ...]:
    images = []
    for i in range(1, rank + 1):
        x = NCSeries.gen(i, rank, level)
        if kind is Kind.MAGNUS:
            fwd = NCSeries.one(rank, level) + x
            images.append((fwd, nc_inverse(fwd)))
        else:
            images.append((nc_exp(x), nc_exp(-x)))
    return tuple(images)


@dataclass(frozen=True)
class Expansion:
    kind: Kind
    rank: int
    level: int
    ideal: Optional[GradedIdealNC] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind.parse(self.kind))
        if self.rank < 1 or self.level < 1:
            raise DomainError("rank and level must be positive")
        if self.ideal is not None and (self.ideal.rank, self.ideal.level) != (self.rank, self.level):
            raise DomainError("target ideal has a different rank or level")

    def image(self, letter: int) -> NCSeries:
        fwd, inv = _generator_images(self.kind, self.rank, self.level)[abs(letter) - 1]
        img = fwd if letter > 0 else inv
        return ideal_reduce(img, self.ideal) if self.ideal is not None else img

    def __call__(self, w: Word) -> NCSeries:
        return expand(self, w)


def expand(e: Expansion, w: Word) -> NCSeries:
    if w.rank != e.rank:
        raise DomainError(f"word rank {w.rank} does not match expansion rank {e.rank}")
    images = _generator_images(e.kind, e.rank, e.level)
    out = NCSeries.one(e.rank, e.level)
    for a in w.letters:
        fwd, inv = images[abs(a) - 1]
        out = out * (fwd if a > 0 else inv)
    if e.ideal is not None:
        out = ideal_reduce(out, e.ideal)
    return out


def expansion_depth(e: Expansion, w: Word) -> Optional[int]:
    """Lowest degree of ``expand(e, w) - 1``; None when it vanishes through the level."""
    if e.ideal is not None:
        raise DomainError("depth is defined for the free target only")
    return (expand(e, w) - 1).lowest_degree()


def nilpotent_equal(e: Expansion, w1: Word, w2: Word, k: int) -> bool:
    """Do the expansions of w1 and w2 agree through degree k?

    For a free group this decides equality in F / Gamma_{k+1} F.
    """
    if k > e.level:
        raise DomainError(f"class {k} exceeds the expansion level {e.level}")
    diff = expand(e, w1) - expand(e, w2)
    low = diff.lowest_degree()
    return low is None or low > k


@dataclass
class RelatorCheck:
    relator: Word
    well_defined: bool
    first_failure_degree: Optional[int]
    log_residual_degree: Optional[int]


@dataclass
class QuotientReport:
    kind: Kind
    level: int
    relators: List[RelatorCheck]
    grouplike: List[Tuple[Word, bool]]

    @property
    def well_defined(self) -> bool:
        return all(r.well_defined for r in self.relators)

    @property
    def all_grouplike(self) -> bool:
        return all(ok for _, ok in self.grouplike)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "level": self.level,
            "well_defined": self.well_defined,
            "grouplike": self.all_grouplike,
            "relators": [
                {
                    "relator": str(r.relator),
                    "well_defined": r.well_defined,
                    "first_failure_degree": r.first_failure_degree,
                    "log_residual_degree": r.log_residual_degree,
                }
                for r in self.relators
            ],
            "samples": [{"word": str(w), "grouplike": ok} for w, ok in self.grouplike],
        }


def _default_samples(rank: int, relators: Sequence[Word]) -> List[Word]:
    gens = [Word.gen(i, rank) for i in range(1, rank + 1)]
    comms = [commutator(gens[i], gens[j]) for i in range(rank) for j in range(i + 1, rank)]
    out: List[Word] = []
    for w in gens + list(relators) + comms:
        if w not in out:
            out.append(w)
    return out


def taylor_check_on_quotient(
    e: Expansion,
    relators: Sequence[Word],
    ideal: GradedIdealNC,
    samples: Optional[Sequence[Word]] = None,
) -> QuotientReport:
    """Probe whether ``e`` induces a Taylor expansion on F / <<relators>>.

    Each relator must expand to 1 modulo the ideal; each sampled word must
    be group-like modulo the ideal, checked by reducing both sides of
    Delta(a) = a (x) a in each tensor factor.
    """
    if (ideal.rank, ideal.level) != (e.rank, e.level):
        raise DomainError("ideal and expansion have different rank or level")
    free = Expansion(e.kind, e.rank, e.level)
    checks = []
    for r in relators:
        img = expand(free, r)
        residual = ideal_reduce(img - 1, ideal)
        log_res = ideal_reduce(nc_log(img), ideal)
        checks.append(RelatorCheck(r, residual.is_zero(), residual.lowest_degree(), log_res.lowest_degree()))
    if samples is None:
        samples = _default_samples(e.rank, relators)
    results = []
    for w in samples:
        a = ideal_reduce(expand(free, w), ideal)
        lhs = ideal_reduce2(coproduct(a), ideal)
        rhs = ideal_reduce2(tensor(a, a), ideal)
        results.append((w, a.constant == 1 and lhs == rhs))
    return QuotientReport(e.kind, e.level, checks, results)


def braid_exponent_sum(braid: Union[Word, Sequence[int]]) -> int:
    if isinstance(braid, Word):
        return sum(braid.exponent_sums())
    return sum(1 if b > 0 else -1 for b in braid if b != 0)


def abelianized_expansion(braid: Union[Word, Sequence[int]], level: int) -> NCSeries:
    """Rank-one expansion of B_n sending every sigma_i to exp(X)."""
    e = braid_exponent_sum(braid)
    return nc_exp(NCSeries.gen(1, 1, level).scale(Fraction(e)))
