"""Truncated Malcev Lie algebra presentations from group presentations.

Given relators r_j of a presentation and an expansion E of the free group,
the Malcev Lie algebra is the completed free Lie algebra modulo the closed
ideal generated by the Lie elements ``log E(r_j)``.  We compute those logs
through a fixed degree and compare two graded rank sequences:

* the quotient by the ideal generated by the lowest-degree parts of the logs;
* the associated graded of the quotient by the ideal generated by the full,
  inhomogeneous logs (leading forms of every ideal element up to the level).

Agreement through the level is a necessary condition for filtered
formality, never a certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .errors import DomainError
from .exactnum import EchelonBasis
from .expansions import Expansion, Kind, expand
from .liealg import (
    LiePoly,
    _ad_right,
    dynkin_project,
    lie_ideal_build,
    lie_quotient_dims,
    lyndon_basis,
)
from .ncseries import is_primitive, nc_log
from .words import GroupPresentation

__all__ = ["MalcevPresentation", "malcev_present", "ProbeReport", "graded_rank_probe", "filtration_ranks"]


@dataclass
class MalcevPresentation:
    rank: int
    level: int
    kind: Kind
    relator_logs: Tuple[LiePoly, ...]
    lowest_degree_parts: Tuple[LiePoly, ...]
    warnings: Tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "level": self.level,
            "kind": self.kind.value,
            "relator_logs": [p.to_dict() for p in self.relator_logs],
            "lowest_degree_parts": [p.to_dict() for p in self.lowest_degree_parts],
            "warnings": list(self.warnings),
        }


def malcev_present(p: GroupPresentation, e: Expansion, level: Optional[int] = None) -> MalcevPresentation:
    level = e.level if level is None else level
    if e.ideal is not None:
        raise DomainError("Malcev presentations need an expansion with free target")
    if e.rank != p.rank:
        raise DomainError(f"presentation has {p.rank} generators, expansion rank is {e.rank}")
    if level != e.level:
        e = Expansion(e.kind, e.rank, level)
    warnings: List[str] = []
    if e.kind is Kind.MAGNUS:
        warnings.append("Magnus expansion is not group-like; relator logs are Dynkin projections")
    logs, lows = [], []
    for k, r in enumerate(p.relators, 1):
        s = nc_log(expand(e, r))
        if is_primitive(s):
            lp = dynkin_project(s)
        else:
            warnings.append(f"log of relator {k} is not primitive")
            lp = dynkin_project(s, check=False)
        logs.append(lp)
        low = lp.lowest_degree()
        lows.append(lp.component(low) if low is not None else lp)
    return MalcevPresentation(p.rank, level, e.kind, tuple(logs), tuple(lows), tuple(warnings))


def filtration_ranks(logs, rank: int, level: int) -> List[int]:
    """Graded dims of lie(V) / <<logs>>, truncated at ``level``.

    The truncated ideal is spanned by iterated brackets of the logs with the
    degree-one generators; echelon columns are ordered by degree first, so a
    row's pivot degree is the degree of a leading form.
    """
    basis = EchelonBasis()
    queue: List[Dict] = []

    def push(v: Dict):
        keyed = {(len(w), w): c for w, c in v.items() if len(w) <= level}
        if keyed and basis.add(keyed):
            queue.append({w: c for (_, w), c in keyed.items()})

    for p in logs:
        if p.rank != rank:
            raise DomainError("relator log rank mismatch")
        push(p.terms)
    while queue:
        v = queue.pop()
        if min(len(w) for w in v) >= level:
            continue
        for i in range(1, rank + 1):
            push(_ad_right(v, i))
    lead = [0] * (level + 1)
    for d, _ in basis.pivots:
        lead[d] += 1
    return [len(lyndon_basis(rank, d)) - lead[d] for d in range(1, level + 1)]


@dataclass
class ProbeReport:
    ranks_holonomy_like: List[int]
    ranks_filtration: List[int]
    agree_through: int
    first_disagreement: Optional[int]

    @property
    def consistent(self) -> bool:
        return self.first_disagreement is None

    def to_dict(self) -> dict:
        return {
            "ranks_holonomy_like": self.ranks_holonomy_like,
            "ranks_filtration": self.ranks_filtration,
            "agree_through": self.agree_through,
            "first_disagreement": self.first_disagreement,
        }


def graded_rank_probe(mp: MalcevPresentation) -> ProbeReport:
    homog = lie_ideal_build([p for p in mp.lowest_degree_parts if not p.is_zero()], mp.level, rank=mp.rank)
    a = lie_quotient_dims(homog)
    b = filtration_ranks(mp.relator_logs, mp.rank, mp.level)
    first = next((d for d, (x, y) in enumerate(zip(a, b), 1) if x != y), None)
    agree = mp.level if first is None else first - 1
    return ProbeReport(a, b, agree, first)
