import itertools

import pytest
from hypothesis import given, settings, strategies as st

from ghostclass.affine import AffineForm
from ghostclass.conditions import (FALSE, TRUE, Atom, atom, conj, disj, equivalent, implies, neg,
                                   satisfiable, simplify, to_dnf)
from ghostclass.errors import DomainError

NAMES = ("a1", "a2", "a3")
B = 3
BOX = list(itertools.product(range(-B, B + 1), repeat=len(NAMES)))
BOUNDS = [a for v in NAMES for a in (atom(AffineForm.var(v) + B, ">=").args[0],
                                     atom(B - AffineForm.var(v), ">=").args[0])]
x, y, z = (AffineForm.var(v) for v in NAMES)


def pt(p):
    return dict(zip(NAMES, p))


@st.composite
def lhs_forms(draw):
    k = draw(st.integers(1, 2))
    names = draw(st.lists(st.sampled_from(NAMES), min_size=k, max_size=k, unique=True))
    form = AffineForm.constant(draw(st.integers(-4, 4)))
    for v in names:
        form = form + AffineForm.var(v, draw(st.sampled_from((1, -1))))
    return form


atoms = st.builds(lambda f, r: atom(f, r), lhs_forms(), st.sampled_from(("==", ">=", "<=", ">", "<")))


def conditions(depth=2):
    return st.recursive(atoms, lambda sub: st.one_of(
        st.builds(lambda a, b: conj(a, b), sub, sub),
        st.builds(lambda a, b: disj(a, b), sub, sub),
        st.builds(neg, sub)), max_leaves=6)


def test_atom_normalisation():
    assert atom(2 * x - 3, ">=").render() == "a1>=2"
    assert atom(2 * x - 3, "==") is FALSE
    assert atom(x - y, ">").render() == "a1>=a2+1"
    assert atom(AffineForm.constant(1), ">=") is TRUE
    with pytest.raises(DomainError):
        atom(x + y + z, ">=")
    with pytest.raises(DomainError):
        atom(x, "!=")


def test_render_examples():
    assert atom(-y, ">=").render() == "a2<=0"
    assert atom(x - y, ">=").render() == "a1>=a2"
    assert atom(x - y, "==").render() == "a1=a2"


@settings(max_examples=300, deadline=None)
@given(st.lists(atoms, min_size=1, max_size=5))
def test_satisfiable_matches_enumeration(conds):
    lits = [c.args[0] for c in conds if c.op == "atom"]
    truth = any(all(a.evaluate(pt(p)) for a in lits) for p in BOX)
    assert satisfiable(BOUNDS + lits) == truth


@settings(max_examples=200, deadline=None)
@given(st.lists(atoms, min_size=1, max_size=3), conditions())
def test_implies_matches_enumeration(prem, concl):
    lits = [c.args[0] for c in prem if c.op == "atom"]
    truth = all(concl.evaluate(pt(p)) for p in BOX if all(a.evaluate(pt(p)) for a in lits))
    assert implies(BOUNDS + lits, concl) == truth


@settings(max_examples=200, deadline=None)
@given(conditions())
def test_dnf_and_negation_pointwise(c):
    for p in BOX[::7]:
        env = pt(p)
        dnf = any(all(a.evaluate(env) for a in t) for t in to_dnf(c))
        neg_dnf = any(all(a.evaluate(env) for a in t) for t in to_dnf(c, negate=True))
        assert dnf == c.evaluate(env)
        assert neg_dnf != c.evaluate(env)


@settings(max_examples=150, deadline=None)
@given(conditions())
def test_simplify_is_equivalent_on_domain(c):
    s = simplify(c, BOUNDS)
    for p in BOX:
        assert s.condition.evaluate(pt(p)) == c.evaluate(pt(p))
    assert equivalent(s.condition, c, BOUNDS)


def test_simplify_descriptions():
    dom = [atom(x - y, ">=").args[0], atom(y - z, ">=").args[0], atom(z, ">=").args[0]]
    s = simplify(conj(atom(-y, ">="), atom(x, "<=")), dom)
    assert s.text == "a1=a2=a3=0"
    s = simplify(conj(atom(y - z, "=="), atom(1 - z, ">=")), dom)
    assert s.text == "a2=a3 in {0,1}"
    assert simplify(atom(-z - 1, ">="), dom).text == "never"
    assert simplify(atom(z, ">="), dom).text == "always"


def test_simplify_keeps_negated_pairs():
    dom = [atom(y - z, ">=").args[0], atom(y + z, ">=").args[0]]
    s = simplify(conj(atom(y + z, "=="), atom(1 - y, ">=")), dom)
    assert s.text == "a2=-a3 in {0,1}"
    (term,) = s.terms
    assert term.substitute(2 * z + 1) == -2 * y + 1


def test_equivalence_detects_difference():
    assert not equivalent(atom(x, ">="), atom(x - 1, ">="))
    assert equivalent(atom(x, ">"), atom(x - 1, ">="))
