"""Acceptance suite.

One test per criterion; each prints a single PASS/FAIL line (run with
`pytest tests/test_acceptance.py -v -s` to see them live).  Criterion 8
asserts the published exception list for the doubling heuristic verbatim;
on the bundled data the q=11 Semiregular 2 family also fails the
heuristic, so that test documents a genuine deviation and stays red.
"""

import itertools
import random
import time
from collections import Counter

import pytest

from tripres.abelian import determinant, invariant_factors, iso_equal, snf
from tripres.catalog import computed_mapping, invariant_catalog
from tripres.gf import SUPPORTED_Q
from tripres.plane import build_plane, check_difference_set
from tripres.presentations import (
    Correspondence,
    TrianglePresentation,
    admissible_differences,
    classify_central_forms,
    enumerate_invariant,
    is_axiom_valid,
    is_multiplier_fixed,
    is_singer_invariant,
    twist_multiplier,
    twist_translation,
)
from tripres.tables import (
    PUBLISHED_NON_Q3_FAILURES,
    format_group_cell,
    heuristic_survey,
    load_dataset,
    parse_group_cell,
    published_families,
    twice_heuristic,
    verify_abelianizations,
)

TABLE_QS = (2, 3, 4, 5, 7, 8, 9, 11)


def report(num: int, ok: bool, detail: str) -> None:
    print(f"\ncriterion {num}: {'PASS' if ok else 'FAIL'} - {detail}")


@pytest.fixture(scope="module")
def ds():
    return load_dataset()


@pytest.fixture(scope="module")
def computed():
    return computed_mapping(TABLE_QS)


def _orbit_value(q, idx, tag, computed):
    return computed[(q, (idx, tag))]


def test_criterion_1_gamma_regression(ds, computed):
    """Every enumerated class and its twists match the table cells per orbit."""
    t0 = time.time()
    rep = verify_abelianizations(ds, computed, qs=TABLE_QS)
    ok = rep.ok

    # spot anchors
    anchors_ok = True
    q2 = {str(_orbit_value(2, 0, t, computed)) for t in ("base",)}
    anchors_ok &= q2 == {"[(3)2,3]"}
    twists = {str(_orbit_value(2, 0, t, computed)) for t in ("q", "q2")}
    anchors_ok &= twists == {"[2,3,7]", "[2,3]"}
    anchors_ok &= any(
        str(o.base) == "[3,(3)5]" for o in invariant_catalog(5)
    )
    anchors_ok &= any(str(o.base) == "[(9)2,3]" for o in invariant_catalog(8))
    anchors_ok &= any(str(o.base) == "[(3)2,3]" for o in invariant_catalog(11))

    # translation twists for q in {4, 7} land on table families
    trans_ok = True
    for q in (4, 7):
        plane = build_plane(q)
        table_bases = {str(f.cells[0]) for f in published_families(ds, q)}
        from tripres.presentations import enumerate_all_invariant

        for cls in enumerate_all_invariant(plane):
            from tripres.abelian import abelianization
            from tripres.presentations import group_presentation

            for t in twist_translation(cls.representative):
                trans_ok &= str(abelianization(group_presentation(t))) in table_bases

    elapsed = time.time() - t0
    ok = ok and anchors_ok and trans_ok
    report(1, ok, f"gamma_ab regression over q={TABLE_QS} ({elapsed:.1f}s this stage)")
    assert rep.ok, [s for s in rep.sections if not s.ok]
    assert anchors_ok
    assert trans_ok


def test_criterion_2_enumeration_counts(ds):
    """Exactly 2 classes at q=2 and q=3; full family coverage for larger q."""
    n2 = len(invariant_catalog(2))
    n3 = len(invariant_catalog(3))
    coverage_ok = True
    extras = {}
    for q in (5, 7, 8, 9, 11):
        fams = published_families(ds, q)
        orbits = list(invariant_catalog(q))
        want = Counter(f.signature() for f in fams)
        have = Counter(o.signature() for o in orbits)
        covered = all(have[sig] >= cnt for sig, cnt in want.items())
        coverage_ok &= covered
        extras[q] = len(orbits) - len(fams)
    q11_families = len(published_families(ds, 11))
    ok = n2 == 2 and n3 == 2 and coverage_ok and q11_families == 8
    report(
        2,
        ok,
        f"classes q=2:{n2} q=3:{n3}; families covered for q=5,7,8,9,11 "
        f"(q=11 families: {q11_families}); derived extra classes per q: {extras}",
    )
    assert n2 == 2 and n3 == 2
    assert coverage_ok
    assert q11_families == 8


def test_criterion_3_oracle_equivalence_q2():
    """Raw axiom search over invariant triple sets equals the cycle search."""
    plane = build_plane(2)
    n = plane.n_points
    t0 = time.time()
    agree = True
    for b in range(n):
        dt = admissible_differences(plane, b)
        brute = set()
        for image in itertools.product(range(n), repeat=len(dt)):
            v = dict(zip(dt, image))
            triples = frozenset(
                (i, (i + u) % n, (i + u + v[u]) % n) for i in range(n) for u in dt
            )
            p = TrianglePresentation(
                q=2, n=n, corr=Correspondence(1, b), triples=triples
            )
            if is_axiom_valid(p) and is_singer_invariant(p):
                brute.add(triples)
        quick = {p.triples for p in enumerate_invariant(plane, b)}
        agree &= brute == quick
    report(3, agree, f"q=2 brute force matches cycle enumeration for all b ({time.time()-t0:.1f}s)")
    assert agree


def test_criterion_4_twist_algebra():
    """Triple twists are trivial; translation twists stay invariant; forms behave."""
    triple_ok = True
    for q in SUPPORTED_Q:
        plane = build_plane(q)
        n = plane.n_points
        shifts = (0, n // 3, 2 * (n // 3)) if q % 3 == 1 else (0,)
        for b in shifts:
            for p in enumerate_invariant(plane, b):
                if not is_multiplier_fixed(p):
                    continue
                t = twist_multiplier(twist_multiplier(twist_multiplier(p, 1), 1), 1)
                triple_ok &= t == p

    trans_ok = True
    forms_ok = True
    permute_ok = True
    cycle = {"a": "b", "b": "c", "c": "a"}
    for q in (4, 7, 13):
        plane = build_plane(q)
        n = plane.n_points
        for b in (0, n // 3, 2 * (n // 3)):
            for p in enumerate_invariant(plane, b):
                bp, cp = twist_translation(p)
                trans_ok &= is_singer_invariant(bp) and is_singer_invariant(cp)
                trans_ok &= is_axiom_valid(bp) and is_axiom_valid(cp)
                forms = classify_central_forms(p)
                forms_ok &= len(forms) == 2 and forms <= {"a", "b", "c"}
                permute_ok &= classify_central_forms(bp) == frozenset(
                    cycle[f] for f in forms
                )
    ok = triple_ok and trans_ok and forms_ok and permute_ok
    report(4, ok, "twist algebra: triple twist identity, invariant translation twists, two central forms, (a,b)->(b,c)")
    assert triple_ok and trans_ok and forms_ok and permute_ok


def _minors_divisors(m):
    from math import gcd

    rows, cols = len(m), len(m[0])
    out = []
    prev = 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in itertools.combinations(range(rows), k):
            for ci in itertools.combinations(range(cols), k):
                sub = [[m[i][j] for j in ci] for i in ri]
                g = gcd(g, abs(determinant(sub)))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return tuple(out)


def test_criterion_5_snf_properties():
    """1000 random matrices: exact factorization, chain, unimodularity, oracle."""
    rng = random.Random(1311)
    t0 = time.time()
    ok = True
    oracle_checked = 0
    for _ in range(1000):
        rows = rng.randint(1, 6)
        cols = rng.randint(1, 6)
        m = [[rng.randint(-20, 20) for _ in range(cols)] for _ in range(rows)]
        res = snf(m)
        u = [list(r) for r in res.u]
        v = [list(r) for r in res.v]
        um = [[sum(u[i][k] * m[k][j] for k in range(rows)) for j in range(cols)] for i in range(rows)]
        umv = [[sum(um[i][k] * v[k][j] for k in range(cols)) for j in range(cols)] for i in range(rows)]
        ok &= umv == [list(r) for r in res.d]
        diag = [res.d[i][i] for i in range(min(rows, cols))]
        nz = [x for x in diag if x]
        ok &= all(x >= 0 for x in diag)
        ok &= all(b % a == 0 for a, b in zip(nz, nz[1:]))
        ok &= abs(determinant(u)) == 1
        ok &= abs(determinant(v)) == 1
        ok &= invariant_factors(m) == res.divisors
        if rows <= 4 and cols <= 4:
            ok &= res.divisors == _minors_divisors(m)
            oracle_checked += 1
        if not ok:
            raise AssertionError(f"SNF property failed on {m}")
    report(5, ok, f"1000 random SNFs verified ({oracle_checked} vs minors oracle, {time.time()-t0:.1f}s)")
    assert ok


def test_criterion_6_difference_sets():
    """|D| = q+1, perfect difference property, qD = D for every supported q."""
    ok = True
    for q in SUPPORTED_Q:
        plane = build_plane(q)
        rep = check_difference_set(plane)
        ok &= rep.ok and len(plane.difference_set) == q + 1
    report(6, ok, f"difference sets exact for q in {SUPPORTED_Q}")
    assert ok


def test_criterion_7_notation_parser(ds):
    """Every transcribed cell round-trips through the bracket grammar."""
    cells = 0
    ok = True
    for r in ds.rows:
        for cell in (r.k0, r.k0_mod_id):
            rank, tors = parse_group_cell(cell.raw)
            ok &= rank == cell.rank and iso_equal(tors, cell.torsion)
            norm = format_group_cell(rank, tors)
            ok &= parse_group_cell(norm) == (rank, tors)
            ok &= format_group_cell(*parse_group_cell(norm)) == norm
            cells += 1
        norm = format_group_cell(None, r.gamma_ab)
        ok &= iso_equal(parse_group_cell(norm)[1], r.gamma_ab)
        cells += 1
    report(7, ok and cells >= 150, f"{cells} table cells round-tripped")
    assert ok
    assert cells >= 150


def test_criterion_8_heuristic_survey(ds):
    """The survey reproduces the published exception list exactly.

    On the bundled data this is false: away from 3, the q=11 Semiregular 2
    family has K0/<[id]> torsion equal to three copies of gamma_ab rather
    than two, so it joins {q=2 B.2, q=5 Voskuil} in the failing set.  The
    assertion is kept as published and documents the discrepancy.
    """
    sv = heuristic_survey(ds)
    subcase_ok = (
        twice_heuristic(ds.get(3, "1.2")) == "holds"
        and twice_heuristic(ds.get(3, "4.1")) == "fails"
    )
    failing = set(sv.non_q3_failures)
    published = set(PUBLISHED_NON_Q3_FAILURES)
    exact = failing == published
    exit_ok = sv.matches_published
    ok = exact and subcase_ok and exit_ok
    extra = sorted(failing - published)
    missing = sorted(published - failing)
    report(
        8,
        ok,
        "survey vs published exceptions: "
        + (f"extra failing rows {extra}" if extra else "exact")
        + (f", missing {missing}" if missing else "")
        + f"; q=3 anchors {'ok' if subcase_ok else 'WRONG'}",
    )
    assert subcase_ok
    assert exact, (
        "published non-q3 exception list not reproduced; the bundled data "
        f"also fails on {extra} (K0/<[id]> torsion is thrice gamma_ab away from 3)"
    )
    assert exit_ok
