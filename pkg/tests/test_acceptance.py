"""Acceptance criteria, one test each; a PASS/FAIL line per criterion is printed
in the pytest terminal summary (and when this file is run as a script)."""

import itertools

import pytest

from ghostclass.affine import AffineForm
from ghostclass.checks import compare_survivors
from ghostclass.ghostfilter import classify, eisenstein_threshold, survivors
from ghostclass.kostant import (closed_form_membership, dot_action, is_kostant_member,
                                kostant_representatives, label_of, w0_set)
from ghostclass.rootsys import SymbolicWeight, build_root_system, validate_highest_weight, verify_form_conjugation
from ghostclass.tables import build_table, fixture_text, parse_markdown
from ghostclass.weyl import compose, enumerate_weyl

RESULTS = {}


def criterion(num, title):
    def wrap(fn):
        def test():
            try:
                fn()
            except BaseException as exc:
                RESULTS[num] = (False, title, f"{type(exc).__name__}: {exc}".splitlines()[0][:160])
                raise
            RESULTS[num] = (True, title, "")
        test.__name__ = fn.__name__
        return test
    return wrap


def rs(n):
    return build_root_system(n)


def _table_matches(n):
    want = parse_markdown(fixture_text(n))
    got = [r.cells() for r in build_table(rs(n))]
    assert len(want) == 24 and all(len(row) == 8 for row in want)
    bad = [(w[0], k) for g, w in zip(got, want) for k, (a, b) in enumerate(zip(g, w)) if a != b]
    assert got == want, f"mismatching cells {bad[:5]}"


@criterion(1, "W^P0 table for n=5, 24 rows x 8 columns")
def test_c01_table_n5():
    _table_matches(5)


@criterion(2, "W^P0 table for n=4, 24 rows x 8 columns")
def test_c02_table_n4():
    _table_matches(4)


@criterion(3, "cardinalities of W and W^P0")
def test_c03_cardinalities():
    assert len(enumerate_weyl(rs(5))) == 48
    assert len(enumerate_weyl(rs(4))) == 24
    l = rs(5).l
    assert len(kostant_representatives(rs(5), 0)) == 24 == 4 * (l - 1) * l
    assert set(kostant_representatives(rs(4), 0)) == set(enumerate_weyl(rs(4)))


def _labels(r, elems):
    return {label_of(w, r) for w in elems}


def _w(*ks):
    return {f"w{k}" for k in ks}


@criterion(4, "set fixtures W^P2, W^P1, W_1^0, W_2^0")
def test_c04_sets():
    r4, r5 = rs(4), rs(5)
    assert _labels(r4, kostant_representatives(r4, 2)) == _w(1, 4, 6, 8, 9, 11, 13, 14, 15, 16, 17, 18)
    assert _labels(r4, kostant_representatives(r4, 1)) == _w(1, 2, 5, 19, 20, 23)
    assert _labels(r4, w0_set(r4, 1)) == _w(1, 4, 13, 16)
    assert _labels(r4, w0_set(r4, 2)) == _w(1, 2)
    assert _labels(r5, w0_set(r5, 1)) == _w(1, 4, 13, 16)
    assert _labels(r5, w0_set(r5, 2)) == _w(1, 2)
    e, s12 = sorted(w0_set(r5, 2), key=lambda w: not w.is_identity())
    assert e.is_identity() and s12.sigma == (2, 1, 3) and s12.signs == (1, 1, 1)


@criterion(5, "Eisenstein threshold from rho and Delta0")
def test_c05_threshold():
    assert eisenstein_threshold(rs(5)) == 3
    assert eisenstein_threshold(rs(4)) == 2


def _survivor_map(n):
    return {r.label: (r.degree, [o.render() for o in r.offsets()]) for r in survivors(classify(rs(n)))}


@criterion(6, "n=5 survivor map: five families, conditions, degrees, offsets")
def test_c06_survivors_n5():
    assert compare_survivors(rs(5)) == []
    assert _survivor_map(5) == {"w2": (2, ["0"]), "w3": (4, ["0"]), "w19": (9, ["1"]),
                                "w21": (6, ["0"]), "w24": (7, ["2a2+1"])}


@criterion(7, "n=4 survivor map: eight families incl. a2=-a3 cases")
def test_c07_survivors_n4():
    assert compare_survivors(rs(4)) == []
    assert _survivor_map(4) == {"w2": (2, ["0"]), "w3": (4, ["0"]), "w7": (7, ["1"]), "w9": (4, ["0"]),
                                "w12": (5, ["2a2+1"]), "w15": (4, ["0"]), "w21": (4, ["0"]),
                                "w24": (5, ["2a2+1"])}
    texts = {r.label: r.survival_text() for r in survivors(classify(rs(4)))}
    assert texts["w24"] == "a2=-a3 in {0,1}"


@criterion(8, "concrete-weight spot checks")
def test_c08_concrete_spot_checks():
    assert survivors(classify(rs(5), ((3, 2, 1), 0))) == []
    got = [(r.label, r.degree, r.offset) for r in survivors(classify(rs(5), ((1, 1, 1), 1)))]
    assert got == [("w24", 7, AffineForm.constant(3))]
    got = [(r.label, r.degree, r.offset) for r in survivors(classify(rs(4), ((1, 1, -1), 1)))]
    assert got == [("w24", 5, AffineForm.constant(3))]


@criterion(9, "closed-form membership == brute force, all w, i, 3<=n<=8")
def test_c09_oracle_equivalence():
    for n in range(3, 9):
        r = rs(n)
        for w in enumerate_weyl(r):
            for i in range(3):
                assert closed_form_membership(w, r, i) == is_kostant_member(w, r, i), (n, i, w.render())


@criterion(10, "coset bijection with additive lengths, 3<=n<=8")
def test_c10_coset_bijection():
    for n in range(3, 9):
        r = rs(n)
        p0 = kostant_representatives(r, 0)
        for i in (1, 2):
            pi = kostant_representatives(r, i)
            image = []
            for u, v in itertools.product(w0_set(r, i), pi):
                w = compose(u, v)
                assert w in p0 and p0.length_of(w) == p0.length_of(u) + pi.length_of(v)
                image.append(w)
            assert len(image) == len(set(image)) == len(p0)


@criterion(11, "dot action composition, n in {4,5}, exhaustive")
def test_c11_dot_action():
    for n in (4, 5):
        r = rs(n)
        lam = SymbolicWeight.symbolic(r.l)
        elems = enumerate_weyl(r)
        dotted = {w: dot_action(w, lam, r) for w in elems}
        for w1, w2 in itertools.product(elems, elems):
            assert dot_action(compose(w1, w2), lam, r) == dot_action(w1, dotted[w2], r)


@criterion(12, "symbolic/concrete agreement on [-6,6] box, n in {4,5}")
def test_c12_agreement():
    for n in (4, 5):
        r = rs(n)
        sym = classify(r)
        for a in itertools.product(range(-6, 7), repeat=r.l):
            for c in (0, 1):
                if not validate_highest_weight(list(a), c, n):
                    continue
                env = {f"a{i}": v for i, v in enumerate(a, 1)} | {"c": c}
                conc = classify(r, (a, c))
                assert [s.survival.evaluate(env) for s in sym] == [k.survival for k in conc], (n, a, c)


@criterion(13, "form conjugation proportional, 3<=n<=8")
def test_c13_form_conjugation():
    failing = [n for n in range(3, 9) if verify_form_conjugation(n).factor is None]
    assert not failing, f"X^t I X is not a multiple of J_n for n in {failing}"


def summary_lines():
    lines = []
    for num in sorted(RESULTS):
        ok, title, why = RESULTS[num]
        lines.append(f"{'PASS' if ok else 'FAIL'} criterion {num:2d}: {title}" + (f" -- {why}" if why else ""))
    return lines


if __name__ == "__main__":
    import sys

    for name, fn in sorted(globals().items()):
        if name.startswith("test_c"):
            try:
                fn()
            except BaseException:
                pass
    print("\n".join(summary_lines()))
    sys.exit(0 if all(ok for ok, _, _ in RESULTS.values()) else 1)
