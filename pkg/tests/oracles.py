"""Independent reference computations used to cross-check the library.

Nothing here imports the package: each oracle reaches its answer by a
different route (collection in a polycyclic presentation, explicit bracket
formulas, direct quadrature).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import numpy as np

# --- collection in F_2 / Gamma_4 ---------------------------------------------------
#
# Polycyclic generators a, b, c, d, e (indices 0..4) with
#   b a = a b c,   c a = a c d,   c b = b c e,   d and e central.
# Every element has a unique normal form a^i b^j c^k d^l e^m.
# CONJ[(x, y, s)] is the word for y^-s x y^s as a list of (letter, exponent).

A, B, C, D, E = range(5)

CONJ = {
    (B, A, 1): [(B, 1), (C, 1)],
    (B, A, -1): [(B, 1), (C, -1), (D, 1)],
    (C, A, 1): [(C, 1), (D, 1)],
    (C, A, -1): [(C, 1), (D, -1)],
    (C, B, 1): [(C, 1), (E, 1)],
    (C, B, -1): [(C, 1), (E, -1)],
}


def _conj_power(x: int, e: int, y: int, s: int) -> List[Tuple[int, int]]:
    """(x^e) conjugated by y^s, as a word."""
    img = CONJ.get((x, y, s), [(x, 1)])
    if e < 0:
        img = [(g, -t) for g, t in reversed(img)]
    return img * abs(e)


def collect_letter(nf: List[int], k: int, s: int) -> List[int]:
    """Normal form of nf * g_k^s with s = +-1."""
    tail = [(j, nf[j]) for j in range(k + 1, 5) if nf[j]]
    out = nf[: k + 1] + [0] * (4 - k)
    out[k] += s
    for j, e in tail:
        for g, t in _conj_power(j, e, k, s):
            out = collect_letter(out, g, t)
    return out


def collect(letters: Sequence[Tuple[int, int]]) -> Tuple[int, ...]:
    nf = [0] * 5
    for g, t in letters:
        step = 1 if t > 0 else -1
        for _ in range(abs(t)):
            nf = collect_letter(nf, g, step)
    return tuple(nf)


def f2_normal_form(signed_letters: Sequence[int]) -> Tuple[int, ...]:
    """Normal form in F_2/Gamma_4 of a word in x1 -> a, x2 -> b (signed indices)."""
    return collect([(abs(x) - 1, 1 if x > 0 else -1) for x in signed_letters])


# --- explicit BCH through degree 4 ------------------------------------------------------

Poly = Dict[Tuple[int, ...], Fraction]


def _mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for u, a in p.items():
        for v, b in q.items():
            out[u + v] = out.get(u + v, 0) + a * b
    return {w: c for w, c in out.items() if c}


def _add(*terms: Tuple[Fraction, Poly]) -> Poly:
    out: Poly = {}
    for c, p in terms:
        for w, a in p.items():
            out[w] = out.get(w, 0) + c * a
    return {w: c for w, c in out.items() if c}


def _br(p: Poly, q: Poly) -> Poly:
    return _add((Fraction(1), _mul(p, q)), (Fraction(-1), _mul(q, p)))


def bch_explicit(i: int, j: int) -> Poly:
    """X + Y + 1/2[X,Y] + 1/12[X,[X,Y]] - 1/12[Y,[X,Y]] - 1/24[Y,[X,[X,Y]]]."""
    X, Y = {(i,): Fraction(1)}, {(j,): Fraction(1)}
    XY = _br(X, Y)
    return _add(
        (Fraction(1), X),
        (Fraction(1), Y),
        (Fraction(1, 2), XY),
        (Fraction(1, 12), _br(X, XY)),
        (Fraction(-1, 12), _br(Y, XY)),
        (Fraction(-1, 24), _br(Y, _br(X, XY))),
    )


# --- nested quadrature of iterated integrals ------------------------------------------

def iterated_integrals_k2(path, dpath, forms, samples: int = 200001):
    """Degree <= 2 iterated integrals of 1-forms along a path on [0, 1].

    ``forms(z, dz)`` returns the vector of form values.  Returns (I1, I2) with
    I1[a] = int w_a and I2[a, b] = int_{t1 < t2} w_a(t1) w_b(t2), the earlier
    time on the left.  Composite Simpson for the outer integral, cumulative
    Simpson-corrected trapezoid for the inner one.
    """
    t = np.linspace(0.0, 1.0, samples)
    w = np.array([forms(path(s), dpath(s)) for s in t])  # (samples, rank)
    h = t[1] - t[0]
    inner = np.zeros_like(w)
    # trapezoid cumulative integral with endpoint correction (O(h^4) for smooth data)
    inner[1:] = np.cumsum((w[1:] + w[:-1]) * h / 2, axis=0)
    dw = np.gradient(w, h, axis=0)
    inner -= (h * h / 12) * (dw - dw[0])
    coeffs = np.ones(samples)
    coeffs[1:-1:2] = 4
    coeffs[2:-1:2] = 2
    simpson = coeffs * h / 3
    I1 = simpson @ w
    I2 = np.einsum("t,ta,tb->ab", simpson, inner, w)
    return I1, I2


# --- dense rational row reduction via sympy --------------------------------------------

def sympy_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    import sympy

    if not rows:
        return 0
    m = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows])
    return m.rank()


def sympy_rref(rows: Sequence[Sequence[Fraction]]):
    import sympy

    m = sympy.Matrix([[sympy.Rational(Fraction(x).numerator, Fraction(x).denominator) for x in r] for r in rows])
    r, piv = m.rref()
    return [[Fraction(int(v.p), int(v.q)) for v in r.row(i)] for i in range(r.rows)], list(piv)
