"""Parallel transport of logarithmic KZ-type connections along explicit loops.

Two ambients are supported:

* a punctured plane ``C \\ {p_1..p_n}`` with forms
  ``w_i = dz / (2 pi i (z - p_i))`` paired with ``X_i``;
* the configuration space of ``n`` ordered points with
  ``w_ij = dlog(z_i - z_j) / (2 pi i)`` paired with ``X_ij`` (pairs i < j in
  lexicographic order, generator index = position + 1).

The transport ``T`` solves ``T' = T . A(t)`` with ``A(t) = sum_k w_k(gamma'(t)) X_k``
and ``T(0) = 1``.  Picard iteration of this equation is the iterated-integral
series with the earliest time on the left, so transport is multiplicative
for loop concatenation.  Each truncated degree only feeds the next one, and
every segment is integrated with classical RK4, halving the step until two
successive results agree to ``tol / 10``.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import DomainError
from .ncseries import NCSeries, _unshuffles

__all__ = [
    "PuncturedPlane",
    "Configuration",
    "Line",
    "Arc",
    "Loop",
    "NumSeries",
    "transport",
    "num_mul",
    "num_grouplike_defect",
    "compare_symbolic",
    "circle_loop",
    "load_loop",
]

TWO_PI_I = 2j * math.pi
MAX_STEPS = 1 << 16


@dataclass(frozen=True)
class PuncturedPlane:
    punctures: Tuple[complex, ...]

    @property
    def rank(self) -> int:
        return len(self.punctures)

    @property
    def dim(self) -> int:
        return 1

    def form(self, z: np.ndarray, dz: np.ndarray) -> np.ndarray:
        p = np.asarray(self.punctures)
        return dz[0] / (z[0] - p) / TWO_PI_I

    def to_dict(self):
        return {"type": "punctured-plane", "punctures": [[p.real, p.imag] for p in self.punctures]}


@dataclass(frozen=True)
class Configuration:
    n: int

    @property
    def rank(self) -> int:
        return self.n * (self.n - 1) // 2

    @property
    def dim(self) -> int:
        return self.n

    def pairs(self) -> List[Tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n)]

    def form(self, z: np.ndarray, dz: np.ndarray) -> np.ndarray:
        i, j = np.triu_indices(self.n, 1)
        return (dz[i] - dz[j]) / (z[i] - z[j]) / TWO_PI_I

    def to_dict(self):
        return {"type": "configuration", "n": self.n}


Ambient = Union[PuncturedPlane, Configuration]


@dataclass(frozen=True)
class Line:
    start: Tuple[complex, ...]
    end: Tuple[complex, ...]

    def point(self, t):
        a, b = np.asarray(self.start), np.asarray(self.end)
        return a + t * (b - a)

    def velocity(self, t):
        return np.asarray(self.end) - np.asarray(self.start)

    def reversed(self) -> "Line":
        return Line(self.end, self.start)

    def to_dict(self):
        return {"type": "line", "from": _pts_out(self.start), "to": _pts_out(self.end)}


@dataclass(frozen=True)
class Arc:
    """One coordinate (``strand``) turns about ``center`` by ``sweep`` radians."""

    start: Tuple[complex, ...]
    center: complex
    sweep: float
    strand: int = 0

    @property
    def radius_vector(self) -> complex:
        return self.start[self.strand] - self.center

    @property
    def end(self) -> Tuple[complex, ...]:
        pts = list(self.start)
        pts[self.strand] = self.center + self.radius_vector * cmath.exp(1j * self.sweep)
        return tuple(pts)

    def point(self, t):
        z = np.array(self.start, dtype=complex)
        z[self.strand] = self.center + self.radius_vector * cmath.exp(1j * self.sweep * t)
        return z

    def velocity(self, t):
        v = np.zeros(len(self.start), dtype=complex)
        v[self.strand] = 1j * self.sweep * self.radius_vector * cmath.exp(1j * self.sweep * t)
        return v

    def reversed(self) -> "Arc":
        return Arc(self.end, self.center, -self.sweep, self.strand)

    def to_dict(self):
        d = {"type": "arc", "from": _pts_out(self.start), "to": _pts_out(self.end),
             "center": [self.center.real, self.center.imag],
             "sweep": self.sweep}
        if len(self.start) > 1:
            d["strand"] = self.strand + 1
        return d


Segment = Union[Line, Arc]


def _pts_out(pts):
    if len(pts) == 1:
        return [pts[0].real, pts[0].imag]
    return [[p.real, p.imag] for p in pts]


def _seg_distance_to_point(seg: Segment, k: int, q: complex) -> float:
    """Minimum over the segment of |coordinate k - q| (q fixed)."""
    if isinstance(seg, Line):
        a, b = seg.start[k], seg.end[k]
        d = b - a
        if d == 0:
            return abs(a - q)
        t = min(1.0, max(0.0, ((q - a) * d.conjugate()).real / abs(d) ** 2))
        return abs(a + t * d - q)
    if seg.strand != k:
        return abs(seg.start[k] - q)
    r = abs(seg.radius_vector)
    off = q - seg.center
    best = min(abs(seg.start[k] - q), abs(seg.end[k] - q))
    if abs(seg.sweep) >= 2 * math.pi or off == 0:
        if off == 0:
            return r
        return min(best, abs(abs(off) - r))
    # angle of the closest circle point, relative to the start direction
    phi = cmath.phase(off / seg.radius_vector)
    s = seg.sweep
    if s > 0:
        phi %= 2 * math.pi
        inside = phi <= s
    else:
        phi = -((-phi) % (2 * math.pi))
        inside = phi >= s
    if inside:
        best = min(best, abs(abs(off) - r))
    return best


def _pair_min_distance(seg: Segment, i: int, j: int) -> float:
    if isinstance(seg, Line):
        a = seg.start[i] - seg.start[j]
        d = (seg.end[i] - seg.end[j]) - a
        if d == 0:
            return abs(a)
        t = min(1.0, max(0.0, (-a * d.conjugate()).real / abs(d) ** 2))
        return abs(a + t * d)
    if seg.strand == i:
        return _seg_distance_to_point(seg, i, seg.start[j])
    if seg.strand == j:
        return _seg_distance_to_point(seg, j, seg.start[i])
    return abs(seg.start[i] - seg.start[j])


@dataclass(frozen=True)
class Loop:
    ambient: Ambient
    segments: Tuple[Segment, ...]

    def __post_init__(self):
        segs = tuple(self.segments)
        object.__setattr__(self, "segments", segs)
        dim = self.ambient.dim
        eps = 1e-12
        for s in segs:
            if len(s.start) != dim:
                raise DomainError(f"segment dimension {len(s.start)} does not match ambient {dim}")
            if isinstance(s, Arc) and not 0 <= s.strand < dim:
                raise DomainError("arc strand out of range")
        for a, b in zip(segs, segs[1:]):
            if max(abs(x - y) for x, y in zip(a.end, b.start)) > 1e-9:
                raise DomainError("segments are not contiguous")
        if segs and max(abs(x - y) for x, y in zip(segs[-1].end, segs[0].start)) > 1e-9:
            raise DomainError("loop is not closed")
        for s in segs:
            if isinstance(self.ambient, PuncturedPlane):
                for p in self.ambient.punctures:
                    if _seg_distance_to_point(s, 0, p) < eps:
                        raise DomainError(f"loop meets the puncture {p}")
            else:
                for i, j in self.ambient.pairs():
                    if _pair_min_distance(s, i, j) < eps:
                        raise DomainError(f"loop leaves the configuration space (z{i + 1} = z{j + 1})")

    @property
    def basepoint(self) -> Optional[Tuple[complex, ...]]:
        return self.segments[0].start if self.segments else None

    @property
    def rank(self) -> int:
        return self.ambient.rank

    def then(self, other: "Loop") -> "Loop":
        """Concatenation: traverse self, then other."""
        if self.ambient != other.ambient:
            raise DomainError("loops live in different ambients")
        if self.segments and other.segments and \
                max(abs(x - y) for x, y in zip(self.basepoint, other.basepoint)) > 1e-9:
            raise DomainError("loops have different basepoints")
        return Loop(self.ambient, self.segments + other.segments)

    def __mul__(self, other: "Loop") -> "Loop":
        return self.then(other)

    def inverse(self) -> "Loop":
        return Loop(self.ambient, tuple(s.reversed() for s in reversed(self.segments)))

    def refined(self, pieces: int = 2) -> "Loop":
        """Same path, each segment split into ``pieces`` parts."""
        out: List[Segment] = []
        for s in self.segments:
            for k in range(pieces):
                t0, t1 = k / pieces, (k + 1) / pieces
                if isinstance(s, Line):
                    out.append(Line(tuple(s.point(t0)), tuple(s.point(t1))))
                else:
                    out.append(Arc(tuple(s.point(t0)), s.center, s.sweep / pieces, s.strand))
        return Loop(self.ambient, tuple(out))

    def to_dict(self) -> dict:
        return {"ambient": self.ambient.to_dict(), "segments": [s.to_dict() for s in self.segments]}

    @classmethod
    def from_dict(cls, data: dict) -> "Loop":
        try:
            amb = data["ambient"]
            if amb["type"] == "punctured-plane":
                ambient: Ambient = PuncturedPlane(tuple(_cplx(p) for p in amb["punctures"]))
            elif amb["type"] == "configuration":
                ambient = Configuration(int(amb["n"]))
            else:
                raise DomainError(f"unknown ambient type {amb['type']!r}")
            segs = [_segment_from_dict(s, ambient) for s in data["segments"]]
        except (KeyError, TypeError, IndexError) as exc:
            raise DomainError(f"malformed loop JSON: {exc}") from None
        return cls(ambient, tuple(segs))


def _cplx(p) -> complex:
    if isinstance(p, (int, float)):
        return complex(p)
    re, im = p
    return complex(float(re), float(im))


def _points(v, ambient: Ambient) -> Tuple[complex, ...]:
    if isinstance(ambient, PuncturedPlane):
        return (_cplx(v),)
    pts = tuple(_cplx(p) for p in v)
    if len(pts) != ambient.n:
        raise DomainError(f"expected {ambient.n} points, got {len(pts)}")
    return pts


def _segment_from_dict(s: dict, ambient: Ambient) -> Segment:
    start = _points(s["from"], ambient)
    if s["type"] == "line":
        return Line(start, _points(s["to"], ambient))
    if s["type"] != "arc":
        raise DomainError(f"unknown segment type {s['type']!r}")
    center = _cplx(s["center"])
    strand = int(s.get("strand", 1)) - 1
    if not 0 <= strand < len(start):
        raise DomainError("arc strand out of range")
    if "sweep" in s:
        sweep = float(s["sweep"])
    else:
        end = _points(s["to"], ambient)
        r0, r1 = start[strand] - center, end[strand] - center
        if abs(abs(r0) - abs(r1)) > 1e-9 * max(1.0, abs(r0)):
            raise DomainError("arc endpoints are not on a common circle")
        ang = cmath.phase(r1 / r0)
        orient = s.get("orientation", "ccw")
        if orient not in ("ccw", "cw"):
            raise DomainError("orientation must be 'ccw' or 'cw'")
        if orient == "ccw":
            ang = ang % (2 * math.pi) or 2 * math.pi
        else:
            ang = -((-ang) % (2 * math.pi)) or -2 * math.pi
        sweep = ang
    return Arc(start, center, sweep, strand)


def load_loop(path) -> Loop:
    with open(path) as fh:
        return Loop.from_dict(json.load(fh))


def circle_loop(ambient: Ambient, center: complex, radius: float, start_angle: float = math.pi,
                turns: int = 1, basepoint: Optional[complex] = None) -> Loop:
    """Loop around ``center`` in a punctured plane.

    Without ``basepoint`` the loop is the bare circle starting at angle
    ``start_angle``; with one, it is a tail line to the circle, the circle,
    and the tail back.
    """
    if not isinstance(ambient, PuncturedPlane):
        raise DomainError("circle_loop builds loops in a punctured plane")
    on = center + radius * cmath.exp(1j * start_angle)
    arc = Arc((on,), center, 2 * math.pi * turns)
    if basepoint is None:
        return Loop(ambient, (arc,))
    b = complex(basepoint)
    return Loop(ambient, (Line((b,), (on,)), arc, Line((on,), (b,))))


# --- numeric series ----------------------------------------------------------------

class NumSeries:
    """Truncated series with complex float coefficients, dense per degree.

    ``coeffs[d]`` has length ``rank**d``; the word (a_1..a_d) sits at the
    base-``rank`` index with the last letter varying fastest.
    """

    def __init__(self, rank: int, level: int, coeffs: Sequence[np.ndarray]):
        if len(coeffs) != level + 1:
            raise DomainError("need one coefficient block per degree")
        self.rank = rank
        self.level = level
        self.coeffs = [np.asarray(c, dtype=complex).reshape(rank ** d) for d, c in enumerate(coeffs)]
        if not all(np.all(np.isfinite(c)) for c in self.coeffs):
            raise DomainError("non-finite coefficient")

    @classmethod
    def one(cls, rank, level):
        return cls(rank, level, [np.ones(1)] + [np.zeros(rank ** d) for d in range(1, level + 1)])

    @classmethod
    def from_exact(cls, s: NCSeries) -> "NumSeries":
        out = cls.one(s.rank, s.level)
        out.coeffs[0][0] = 0
        for w, c in s.terms.items():
            out.coeffs[len(w)][_index(w, s.rank)] = float(c)
        return out

    def coeff(self, word) -> complex:
        word = tuple(word)
        return complex(self.coeffs[len(word)][_index(word, self.rank)])

    def words(self):
        for d in range(self.level + 1):
            for k in range(self.rank ** d):
                yield _word(k, d, self.rank)

    def max_abs_diff(self, other: "NumSeries") -> float:
        _check_num(self, other)
        return max(float(np.max(np.abs(a - b))) for a, b in zip(self.coeffs, other.coeffs))

    def __mul__(self, other):
        return num_mul(self, other)

    def to_dict(self, threshold: float = 0.0) -> dict:
        terms = []
        for d, block in enumerate(self.coeffs):
            for k, c in enumerate(block):
                if abs(c) > threshold:
                    terms.append({"word": list(_word(k, d, self.rank)), "re": c.real, "im": c.imag})
        return {"rank": self.rank, "level": self.level, "terms": terms}

    @classmethod
    def from_dict(cls, data: dict) -> "NumSeries":
        rank, level = int(data["rank"]), int(data["level"])
        out = cls(rank, level, [np.zeros(rank ** d) for d in range(level + 1)])
        for t in data["terms"]:
            w = tuple(t["word"])
            out.coeffs[len(w)][_index(w, rank)] = complex(t["re"], t["im"])
        return out


def _index(word, rank) -> int:
    k = 0
    for a in word:
        if not 1 <= a <= rank:
            raise DomainError(f"letter {a} out of range")
        k = k * rank + (a - 1)
    return k


def _word(k: int, d: int, rank: int) -> Tuple[int, ...]:
    out = []
    for _ in range(d):
        k, r = divmod(k, rank)
        out.append(r + 1)
    return tuple(reversed(out))


def _check_num(a: NumSeries, b: NumSeries):
    if (a.rank, a.level) != (b.rank, b.level):
        raise DomainError("rank/level mismatch")


def num_mul(a: NumSeries, b: NumSeries) -> NumSeries:
    _check_num(a, b)
    out = []
    for d in range(a.level + 1):
        acc = np.zeros(a.rank ** d, dtype=complex)
        for p in range(d + 1):
            acc += np.outer(a.coeffs[p], b.coeffs[d - p]).ravel()
        out.append(acc)
    return NumSeries(a.rank, a.level, out)


def num_grouplike_defect(s: NumSeries) -> float:
    """Max-norm of Delta(s) - s (x) s over total degree <= level."""
    delta = {}
    for d in range(s.level + 1):
        for k, c in enumerate(s.coeffs[d]):
            if c == 0:
                continue
            for pair in _unshuffles(_word(k, d, s.rank)):
                delta[pair] = delta.get(pair, 0) + c
    worst = 0.0
    for du in range(s.level + 1):
        for dv in range(s.level + 1 - du):
            prod = np.outer(s.coeffs[du], s.coeffs[dv])
            for ku in range(s.rank ** du):
                u = _word(ku, du, s.rank)
                for kv in range(s.rank ** dv):
                    v = _word(kv, dv, s.rank)
                    worst = max(worst, abs(delta.get((u, v), 0) - prod[ku, kv]))
    return worst


def compare_symbolic(s: NumSeries, t: NCSeries) -> float:
    if (s.rank, s.level) != (t.rank, t.level):
        raise DomainError("rank/level mismatch")
    return s.max_abs_diff(NumSeries.from_exact(t))


# --- integrator ----------------------------------------------------------------------

def _rhs(T: List[np.ndarray], a: np.ndarray) -> List[np.ndarray]:
    out = [np.zeros_like(T[0])]
    for d in range(1, len(T)):
        out.append(np.outer(T[d - 1], a).ravel())
    return out


def _axpy(T, k, h):
    return [x + h * y for x, y in zip(T, k)]


def _rk4(ambient: Ambient, seg: Segment, T0: List[np.ndarray], steps: int) -> List[np.ndarray]:
    h = 1.0 / steps
    T = [x.copy() for x in T0]

    def A(t):
        return ambient.form(seg.point(t), seg.velocity(t))

    for m in range(steps):
        t = m * h
        a0, a1, a2 = A(t), A(t + h / 2), A(t + h)
        k1 = _rhs(T, a0)
        k2 = _rhs(_axpy(T, k1, h / 2), a1)
        k3 = _rhs(_axpy(T, k2, h / 2), a1)
        k4 = _rhs(_axpy(T, k3, h), a2)
        T = [x + h / 6 * (p + 2 * q + 2 * r + s) for x, p, q, r, s in zip(T, k1, k2, k3, k4)]
    return T


def _segment_transport(ambient, seg, K, tol):
    one = NumSeries.one(ambient.rank, K).coeffs
    steps = 16
    prev = _rk4(ambient, seg, one, steps)
    while True:
        steps *= 2
        if steps > MAX_STEPS:
            raise DomainError("step-size underflow: segment passes too close to a singularity")
        cur = _rk4(ambient, seg, one, steps)
        err = max(float(np.max(np.abs(x - y))) for x, y in zip(cur, prev))
        if err < tol / 10:
            return NumSeries(ambient.rank, K, cur)
        prev = cur


def transport(loop: Loop, K: int, tol: float = 1e-8) -> NumSeries:
    """Holonomy of the loop through degree K (estimated coefficient error <= tol)."""
    if K < 1:
        raise DomainError("K must be >= 1")
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    out = NumSeries.one(loop.rank, K)
    seg_tol = tol / max(1, len(loop.segments))
    for seg in loop.segments:
        out = num_mul(out, _segment_transport(loop.ambient, seg, K, seg_tol))
    return out
