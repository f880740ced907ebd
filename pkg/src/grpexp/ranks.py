"""Closed-form LCS and Chen ranks for free, surface and braid-like groups."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import List, Optional, Sequence, Tuple

from .errors import DomainError

__all__ = [
    "FAMILIES",
    "RankTable",
    "mobius",
    "witt_free",
    "chen_free",
    "lcs_surface",
    "chen_surface",
    "chen_braidlike",
    "lcs_braidlike",
    "rank_table",
    "distinguish",
    "PairReport",
]

FAMILIES = ("free", "surface", "pure-braid", "mccool", "upper-mccool", "product-free")
KINDS = ("lcs", "chen")

UNKNOWN_THRESHOLD = "valid for k >> 0 only; threshold unknown"


def mobius(k: int) -> int:
    if k < 1:
        raise DomainError("mobius is defined for positive integers")
    result, p = 1, 2
    while p * p <= k:
        if k % p == 0:
            k //= p
            if k % p == 0:
                return 0
            result = -result
        p += 1
    return -result if k > 1 else result


def _divisors(k: int) -> List[int]:
    return [d for d in range(1, k + 1) if k % d == 0]


@dataclass(frozen=True)
class RankTable:
    family: str
    param: int
    kind: str
    values: Tuple[int, ...]
    flags: Tuple[Optional[str], ...] = field(default=())

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown family {self.family!r}")
        if self.kind not in KINDS:
            raise DomainError(f"unknown rank kind {self.kind!r}")
        if not self.flags:
            object.__setattr__(self, "flags", (None,) * len(self.values))
        if any(v < 0 for v in self.values):
            raise DomainError("ranks are non-negative")

    def __getitem__(self, k: int) -> int:
        """Value at degree k (1-based)."""
        return self.values[k - 1]

    @property
    def label(self) -> str:
        sym = "g" if self.family == "surface" else "n"
        return f"{self.family}({sym}={self.param})"

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "param": self.param,
            "kind": self.kind,
            "values": list(self.values),
            "flags": list(self.flags),
        }


def _check_pos(name, v, least=1):
    if v < least:
        raise DomainError(f"{name} must be >= {least}")


def witt_free(n: int, K: int) -> RankTable:
    _check_pos("n", n)
    vals = tuple(sum(mobius(d) * n ** (k // d) for d in _divisors(k)) // k for k in range(1, K + 1))
    return RankTable("free", n, "lcs", vals)


def chen_free(n: int, K: int) -> RankTable:
    _check_pos("n", n)
    vals = tuple(n if k == 1 else (k - 1) * comb(n + k - 2, k) for k in range(1, K + 1))
    return RankTable("free", n, "chen", vals)


def lcs_surface(g: int, K: int) -> RankTable:
    """Moebius inversion of the power sums of the inverse roots of 1 - 2g t + t^2."""
    _check_pos("g", g)
    s = [2, 2 * g]
    while len(s) <= K:
        s.append(2 * g * s[-1] - s[-2])
    vals = tuple(sum(mobius(d) * s[k // d] for d in _divisors(k)) // k for k in range(1, K + 1))
    return RankTable("surface", g, "lcs", vals)


def chen_surface(g: int, K: int) -> RankTable:
    _check_pos("g", g)
    vals = []
    for k in range(1, K + 1):
        if k == 1:
            vals.append(2 * g)
        elif k == 2:
            vals.append(2 * g * g - g - 1)
        else:
            vals.append((k - 1) * comb(2 * g + k - 2, k) - comb(2 * g + k - 3, k - 2))
    return RankTable("surface", g, "chen", tuple(vals))


def chen_braidlike(family: str, n: int, K: int) -> RankTable:
    _check_pos("n", n, 2)
    vals: List[int] = []
    flags: List[Optional[str]] = []
    for k in range(1, K + 1):
        flag = None
        if family == "pure-braid":
            v = comb(n, 2) if k == 1 else comb(n, 3) if k == 2 else (k - 1) * comb(n + 1, 4)
        elif family == "upper-mccool":
            if k == 1:
                v = comb(n, 2)
            elif k == 2:
                v = comb(n, 3)
            else:
                v = comb(n + 1, 4) + sum(comb(n + i - 2, i + 1) for i in range(3, k + 1))
        elif family == "mccool":
            if k == 1:
                v = n * (n - 1)  # abelianization rank, one generator per ordered pair
            else:
                v = (k - 1) * comb(n, 2) + (k * k - 1) * comb(n, 3)
                flag = UNKNOWN_THRESHOLD
        elif family == "product-free":
            v = sum(chen_free(m, k)[k] for m in range(1, n))
        else:
            raise DomainError(f"no braid-like Chen formula for family {family!r}")
        vals.append(v)
        flags.append(flag)
    return RankTable(family, n, "chen", tuple(vals), tuple(flags))


def lcs_braidlike(family: str, n: int, K: int) -> RankTable:
    """LCS ranks shared by P_n, wP_n^+ and the product F_1 x ... x F_{n-1}."""
    if family not in ("pure-braid", "upper-mccool", "product-free"):
        raise DomainError(f"no LCS formula available for family {family!r}")
    _check_pos("n", n, 2)
    vals = tuple(sum(witt_free(m, k)[k] for m in range(1, n)) for k in range(1, K + 1))
    return RankTable(family, n, "lcs", vals)


def rank_table(family: str, param: int, kind: str, K: int) -> RankTable:
    if K < 1:
        raise DomainError("K must be >= 1")
    kind = kind.lower()
    if kind not in KINDS:
        raise DomainError(f"unknown rank kind {kind!r}")
    if family == "free":
        return witt_free(param, K) if kind == "lcs" else chen_free(param, K)
    if family == "surface":
        return lcs_surface(param, K) if kind == "lcs" else chen_surface(param, K)
    if family in FAMILIES:
        return lcs_braidlike(family, param, K) if kind == "lcs" else chen_braidlike(family, param, K)
    raise DomainError(f"unknown family {family!r}")


@dataclass(frozen=True)
class PairReport:
    first: str
    second: str
    degree: Optional[int]
    values: Optional[Tuple[int, int]]

    @property
    def distinguished(self) -> bool:
        return self.degree is not None

    def to_dict(self) -> dict:
        return {
            "first": self.first,
            "second": self.second,
            "distinguished": self.distinguished,
            "degree": self.degree,
            "values": list(self.values) if self.values else None,
        }


def distinguish(tables: Sequence[RankTable]) -> List[PairReport]:
    """First degree where each pair of tables differs (None: indistinguishable)."""
    if len({t.kind for t in tables}) > 1 or len({len(t.values) for t in tables}) > 1:
        raise DomainError("tables must share kind and length")
    out = []
    for a, b in combinations(tables, 2):
        k = next((k for k, (x, y) in enumerate(zip(a.values, b.values), 1) if x != y), None)
        out.append(PairReport(a.label, b.label, k, (a[k], b[k]) if k else None))
    return out
