import pytest

from finloop.equivalence import EquivalenceWitness, are_equivalent
from finloop.errors import BoundExceeded, InvalidStructure
from finloop.functor import GroupoidFunctor
from finloop.group import FiniteGroup
from finloop.groupoid import (b_group, discrete, disjoint_union, indiscrete,
                              terminal, validate)
from finloop.pushout import gluing_check, induced_cocone, pushout

from corpus import subgroup_inclusion


def _span_three_object_wedge():
    """Two 2-object contractible pieces glued at one object of each."""
    y = disjoint_union([indiscrete(2), indiscrete(2)])
    a = discrete(2)
    pt = terminal()
    a_to_y = GroupoidFunctor(a, y, (0, 2), (y.identity[0], y.identity[2]), "ay")
    a_to_z = GroupoidFunctor(a, pt, (0, 0), (0, 0), "az")
    return a_to_y, a_to_z, y, pt


def test_empty_span_gives_disjoint_union():
    empty = discrete(0)
    bs3 = b_group(FiniteGroup.symmetric(3))
    d2 = discrete(2)
    po = pushout(GroupoidFunctor(empty, bs3, (), (), "e1"),
                 GroupoidFunctor(empty, d2, (), (), "e2"))
    assert po.status == "finite"
    assert validate(po.groupoid) == []
    assert isinstance(are_equivalent(po.groupoid, disjoint_union([bs3, d2])),
                      EquivalenceWitness)
    assert po.groupoid.n_objects == 3 and po.groupoid.n_morphisms == 8


def test_pushout_along_identity_leg_is_the_other_side():
    pt = terminal()
    bs3 = b_group(FiniteGroup.symmetric(3))
    po = pushout(GroupoidFunctor.identity(pt),
                 GroupoidFunctor(pt, bs3, (0,), (bs3.identity[0],), "incl"))
    assert po.status == "finite"
    assert isinstance(are_equivalent(po.groupoid, bs3), EquivalenceWitness)
    assert po.into_right.check() == []
    assert po.into_left.check() == []


def test_wedge_of_contractibles_is_contractible():
    a_to_y, a_to_z, _, _ = _span_three_object_wedge()
    po = pushout(a_to_y, a_to_z)
    assert po.status == "finite"
    assert po.groupoid.n_objects == 3
    assert validate(po.groupoid) == []
    assert isinstance(are_equivalent(po.groupoid, terminal()), EquivalenceWitness)


def test_amalgam_over_common_subgroup():
    s3 = FiniteGroup.symmetric(3)
    a3_elems = s3.generated_subgroup([s3.labels.index("(1 2 3)")])
    sub, incl = subgroup_inclusion(s3, a3_elems)
    po = pushout(incl, GroupoidFunctor.identity(incl.domain))
    assert po.status == "finite"
    assert isinstance(are_equivalent(po.groupoid, incl.codomain),
                      EquivalenceWitness)


def test_free_product_aborts():
    pt = terminal()
    bz2 = b_group(FiniteGroup.cyclic(2))
    po = pushout(GroupoidFunctor(pt, bz2, (0,), (0,), "p1"),
                 GroupoidFunctor(pt, bz2, (0,), (0,), "p2"), bound=400)
    assert po.status == "aborted"
    assert po.groupoid is None and po.reason


def test_amalgam_blowup_aborts():
    # Z4 *_{Z2} Z4 is infinite
    z4 = FiniteGroup.cyclic(4)
    sub, incl1 = subgroup_inclusion(z4, [0, 2])
    sub2, incl2 = subgroup_inclusion(z4, [0, 2])
    # make both legs leave the same domain
    leg2 = GroupoidFunctor(incl1.domain, incl2.codomain, (0,),
                           incl2.morphism_tuple(), "incl2")
    po = pushout(incl1, leg2, bound=500)
    assert po.status == "aborted"


def test_universal_property_on_cocone_corpus():
    a_to_y, a_to_z, y, pt = _span_three_object_wedge()
    po = pushout(a_to_y, a_to_z)
    w = b_group(FiniteGroup.symmetric(3))
    # cocones into B S3: collapse everything onto the object, tree morphisms
    # to arbitrary elements would break strictness, so use constant functors
    f_y = GroupoidFunctor(y, w, (0, 0, 0, 0), tuple(w.identity[0] for _ in range(y.n_morphisms)), "fy")
    f_z = GroupoidFunctor(pt, w, (0,), (w.identity[0],), "fz")
    ind = induced_cocone(po, f_y, f_z)
    assert ind.check() == []
    for m in range(y.n_morphisms):
        assert ind.on_morphism(po.into_left.on_morphism(m)) == f_y.on_morphism(m)
    assert ind.on_morphism(po.into_right.on_morphism(0)) == f_z.on_morphism(0)
    # uniqueness: every pushout morphism is a composite of letters, so the
    # stored words re-evaluate to the morphism itself inside the pushout
    p = po.groupoid
    for mid in range(p.n_morphisms):
        word = po.morphism_word(mid)
        acc = p.identity[p.source[mid]]
        for cls, sign in word:
            side, m = po.class_member(cls)
            val = po.into_left.on_morphism(m) if side == 0 \
                else po.into_right.on_morphism(m)
            if sign < 0:
                val = p.inverse(val)
            acc = p.compose(val, acc)
        assert acc == mid


def test_induced_cocone_rejects_non_cocones():
    bz2 = b_group(FiniteGroup.cyclic(2))
    po = pushout(GroupoidFunctor.identity(bz2), GroupoidFunctor.identity(bz2))
    assert po.status == "finite"
    good = GroupoidFunctor.identity(bz2)
    collapse = GroupoidFunctor(bz2, bz2, (0,), (0, 0), "collapse")
    with pytest.raises(InvalidStructure):
        induced_cocone(po, good, collapse)
    # while an honest cocone factors
    ind = induced_cocone(po, good, good)
    assert ind.check() == []


def test_gluing_square_product_case():
    empty = discrete(0)
    one = discrete(1)
    bs3 = b_group(FiniteGroup.symmetric(3))
    w = gluing_check(GroupoidFunctor(empty, one, (), (), "e1"),
                     GroupoidFunctor(empty, one, (), (), "e2"), bs3)
    w.verify()


def test_gluing_square_wedge_case():
    a_to_y, a_to_z, _, _ = _span_three_object_wedge()
    bz3 = b_group(FiniteGroup.cyclic(3))
    w = gluing_check(a_to_y, a_to_z, bz3)
    w.verify()
    # both sides are equivalent to the target itself (wedge is contractible)
    assert isinstance(are_equivalent(w.functor.domain, bz3), EquivalenceWitness)


def test_gluing_square_collapsed_interval():
    pt = terminal()
    ind2 = indiscrete(2)
    bz2 = b_group(FiniteGroup.cyclic(2))
    a_to_y = GroupoidFunctor(pt, ind2, (0,), (ind2.identity[0],), "incl")
    w = gluing_check(a_to_y, GroupoidFunctor.identity(pt), bz2)
    w.verify()


def test_gluing_check_raises_on_aborted_pushout():
    pt = terminal()
    bz2 = b_group(FiniteGroup.cyclic(2))
    with pytest.raises(BoundExceeded):
        gluing_check(GroupoidFunctor(pt, bz2, (0,), (0,), "p1"),
                     GroupoidFunctor(pt, bz2, (0,), (0,), "p2"), bz2,
                     pushout_bound=300)
