"""The ten acceptance criteria, each at its stated tolerance."""

import math
import random
from fractions import Fraction

from grpexp.expansions import Expansion, abelianized_expansion, expand, nilpotent_equal
from grpexp.kzint import (
    Arc,
    Configuration,
    Line,
    Loop,
    PuncturedPlane,
    circle_loop,
    compare_symbolic,
    num_grouplike_defect,
    num_mul,
    transport,
)
from grpexp.liealg import (
    LiePoly,
    derived_quotient_dims,
    dynkin_project,
    lie_embed,
    lie_ideal_build,
    lie_quotient_dims,
    lyndon_basis,
    pure_braid_lie_relations,
)
from grpexp.malcev import graded_rank_probe, malcev_present
from grpexp.ncseries import NCSeries, bch, hilbert_series, ideal_build, is_grouplike, nc_exp, nc_log
from grpexp.ranks import chen_free, distinguish, lcs_braidlike, lcs_surface, rank_table, witt_free
from grpexp.words import Word, braid_automorphism, commutator, FreeAutomorphism, free_abelian_presentation, surface_presentation

from oracles import bch_explicit, f2_normal_form


def pbw_product(dims, N):
    out = [1] + [0] * N
    for k, m in enumerate(dims, 1):
        for _ in range(m):
            for d in range(k, N + 1):
                out[d] += out[d - k]
    return out


def random_word(rng, rank, max_len):
    letters = [i for i in range(1, rank + 1)] + [-i for i in range(1, rank + 1)]
    return Word(rank, [rng.choice(letters) for _ in range(rng.randint(0, max_len))])


def test_01_witt_agreement(criterion):
    bad = [(n, k) for n in (1, 2, 3, 4) for k in range(1, 9) if len(lyndon_basis(n, k)) != witt_free(n, 8)[k]]
    criterion(1, "Lyndon counts equal Witt numbers (n<=4, k<=8)", not bad, f"mismatches {bad}" if bad else "32/32 exact")


def test_02_bch_and_dynkin(criterion):
    x1, x2 = NCSeries.gen(1, 2, 4), NCSeries.gen(2, 2, 4)
    target = nc_log(nc_exp(x1) * nc_exp(x2))
    b = bch(1, 2, 4)
    lie = dynkin_project(b)
    embeds = lie_embed(lie, 4) == target == b
    oracle = NCSeries(2, 4, bch_explicit(1, 2)) == b
    failures = 0
    count = 0
    for n in (1, 2, 3):
        for d in range(1, 7):
            for w in lyndon_basis(n, d):
                count += 1
                p = LiePoly.basis(w, n)
                failures += dynkin_project(lie_embed(p, 6)) != p
    ok = embeds and oracle and failures == 0
    criterion(2, "BCH at level 4 and Dynkin round trip", ok,
              f"embed={embeds} explicit-formula={oracle} round-trip {count - failures}/{count}")


def test_03_taylor_property(criterion):
    rng = random.Random(2024)
    exps = {n: Expansion("exp", n, 4) for n in (1, 2, 3)}
    bad = 0
    for _ in range(200):
        n = rng.randint(1, 3)
        bad += not is_grouplike(expand(exps[n], random_word(rng, n, 8)))
    magnus_fail = all(
        not is_grouplike(expand(Expansion("magnus", n, 2), Word.gen(i, n)))
        for n in (1, 2, 3) for i in range(1, n + 1)
    )
    criterion(3, "exponential images group-like, Magnus generators not", bad == 0 and magnus_fail,
              f"{200 - bad}/200 group-like at N=4; Magnus generators all fail at N=2: {magnus_fail}")


def test_04_malcev_surface(criterion):
    s = graded_rank_probe(malcev_present(surface_presentation(2), Expansion("exp", 4, 4)))
    z = graded_rank_probe(malcev_present(free_abelian_presentation(2), Expansion("exp", 2, 4)))
    want = list(lcs_surface(2, 4).values)
    ok = (s.ranks_holonomy_like == s.ranks_filtration == want == [4, 5, 16, 45]
          and z.ranks_holonomy_like == z.ranks_filtration == [2, 0, 0, 0])
    criterion(4, "graded rank probe on surface g=2 and Z^2", ok,
              f"surface {s.ranks_holonomy_like}/{s.ranks_filtration}, Z^2 {z.ranks_holonomy_like}/{z.ranks_filtration}")


def test_05_pure_braid_consistency(criterion):
    rels3 = pure_braid_lie_relations(3)
    dims3 = lie_quotient_dims(lie_ideal_build(rels3, 4))
    f2_times_z = [a + b for a, b in zip(witt_free(2, 4).values, (1, 0, 0, 0))]
    assoc = ideal_build([lie_embed(r, 4) for r in rels3], 4, rank=3)
    hs = hilbert_series(assoc)
    dims4 = lie_quotient_dims(lie_ideal_build(pure_braid_lie_relations(4), 4))
    pi4 = list(lcs_braidlike("product-free", 4, 4).values)
    ok = dims3 == f2_times_z == [3, 1, 2, 3] and hs == pbw_product(dims3, 4) and dims4 == pi4 == [6, 4, 10, 21]
    criterion(5, "infinitesimal pure braid quotients", ok,
              f"n=3 {dims3}, Hilbert {hs} vs PBW {pbw_product(dims3, 4)}, n=4 {dims4} vs {pi4}")


def test_06_chen_oracle(criterion):
    rows = {n: derived_quotient_dims(lie_ideal_build([], 5, rank=n), 2) for n in (1, 2, 3)}
    ok = all(rows[n] == list(chen_free(n, 5).values) for n in rows)
    criterion(6, "metabelian quotient dims equal free Chen ranks", ok, str(rows))


def test_07_chen_distinguishes(criterion):
    out = {}
    for n in (4, 5):
        tables = [rank_table(f, n, "chen", 4) for f in ("pure-braid", "upper-mccool", "product-free")]
        reps = distinguish(tables)
        out[n] = ([r.degree for r in reps], tuple(t[4] for t in tables))
    ok = out[4] == ([4, 4, 4], (15, 16, 18)) and out[5] == ([4, 4, 4], (45, 51, 63))
    criterion(7, "Chen ranks separate P_n, wP_n^+, Pi_n at k=4", ok, f"n=4 {out[4]}, n=5 {out[5]}")


def test_08_nilpotent_quotients(criterion):
    rng = random.Random(8)
    x1, x2 = Word.gen(1, 2), Word.gen(2, 2)
    c2 = commutator(x1, x2)
    weight3 = [commutator(c2, x1), commutator(c2, x2)]
    weight4 = [commutator(c, g) for c in weight3 for g in (x1, x2)]
    e = Expansion("exp", 2, 3)
    agree, equal_count = 0, 0
    for k in range(50):
        w1 = random_word(rng, 2, 8)
        g = random_word(rng, 2, 3)
        cut = rng.randint(0, len(w1.letters))
        head, tail = Word(2, w1.letters[:cut]), Word(2, w1.letters[cut:])
        if k % 2 == 0:
            ins = weight4[rng.randrange(4)] ** rng.choice([1, -1, 2])
        elif k % 4 == 1:
            ins = weight3[rng.randrange(2)] ** rng.choice([1, -1])
        else:
            ins = random_word(rng, 2, 4)
        w2 = head * g * ins * g.inverse() * tail
        lib = nilpotent_equal(e, w1, w2, 3)
        oracle = f2_normal_form(w1.letters) == f2_normal_form(w2.letters)
        agree += lib == oracle
        equal_count += oracle
    ok = agree == 50 and 0 < equal_count < 50
    criterion(8, "class-3 equality agrees with a collection oracle", ok,
              f"{agree}/50 agree ({equal_count} equal, {50 - equal_count} unequal pairs)")


def test_09_kz_numerics(criterion):
    tol = 1e-8
    one = PuncturedPlane((1 + 0j,))
    single = transport(circle_loop(one, 1 + 0j, 0.5, basepoint=0j), 4, tol)
    d_single = compare_symbolic(single, nc_exp(NCSeries.gen(1, 1, 4)))

    pts = (0j, 1 + 0j)
    a12 = Loop(Configuration(2), (Arc(pts, 1 + 0j, 2 * math.pi, strand=0),))
    t12 = transport(a12, 3, tol)
    d_a12 = abs(t12.coeff((1,)) - 1)

    C2 = PuncturedPlane((1 + 0j, 2 + 0j))
    g1 = circle_loop(C2, 1 + 0j, 0.5, basepoint=0j)
    p = 1.5 - 0.5j
    g2 = Loop(C2, (Line((0j,), (p,)), Arc((p,), 2 + 0j, 2 * math.pi), Line((p,), (0j,))))
    t1, t2, t12p = (transport(g, 3, tol) for g in (g1, g2, g1 * g2))
    defect = max(num_grouplike_defect(t) for t in (t12, t1, t2, t12p))
    mult = num_mul(t1, t2).max_abs_diff(t12p)
    ok = d_single < 1e-6 and d_a12 < 1e-6 and defect < 1e-6 and mult < 1e-6
    criterion(9, "KZ transport numerics", ok,
              f"exp(X) diff {d_single:.1e}, A12 diff {d_a12:.1e}, group-like defect {defect:.1e}, "
              f"multiplicativity {mult:.1e}")


def test_10_braid_non_faithful(criterion):
    word = [1, 2, -1, -2]
    image = abelianized_expansion(word, 6)
    nontrivial = braid_automorphism(word, 3) != FreeAutomorphism.identity(3)
    ok = image == NCSeries.one(1, 6) and len(word) > 0 and nontrivial
    criterion(10, "abelianized expansion kills a nontrivial braid commutator", ok,
              f"image {image}, braid acts nontrivially on F_3: {nontrivial}")
