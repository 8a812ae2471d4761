import random

import pytest

from finloop.equivalence import EquivalenceWitness, are_equivalent, as_equivalence
from finloop.errors import BoundExceeded
from finloop.functor import GroupoidFunctor
from finloop.group import FiniteGroup
from finloop.groupoid import b_group, discrete, product, terminal, validate
from finloop.mapping import (estimate_functor_count, exponential_check,
                             functor_groupoid, iso_comma, point_functor,
                             postcomposition_functor, restriction_functor)

from corpus import naive_functor_count, random_groupoid


def test_map_from_point_is_the_target():
    x = b_group(FiniteGroup.symmetric(3))
    fg = functor_groupoid(terminal(), x)
    assert len(fg.functors) == naive_functor_count(terminal(), x) == 1
    assert isinstance(are_equivalent(fg.groupoid, x), EquivalenceWitness)


def test_map_bz2_to_bz2():
    bz2 = b_group(FiniteGroup.cyclic(2))
    fg = functor_groupoid(bz2, bz2)
    # two homomorphisms Z2 -> Z2; each with automorphisms Z2, no cross arrows
    assert len(fg.functors) == naive_functor_count(bz2, bz2) == 2
    assert len(fg.groupoid.pi0()) == 2
    assert [len(fg.groupoid.aut(i)) for i in range(2)] == [2, 2]
    assert validate(fg.groupoid) == []


def test_map_from_discrete_two_is_square():
    x = b_group(FiniteGroup.cyclic(2))
    fg = functor_groupoid(discrete(2), x)
    assert len(fg.functors) == naive_functor_count(discrete(2), x)
    assert isinstance(are_equivalent(fg.groupoid, product(x, x)),
                      EquivalenceWitness)


def test_functor_counts_match_naive_oracle_on_corpus():
    rng = random.Random(31)
    for _ in range(4):
        y = random_groupoid(rng, max_parts=1)
        x = random_groupoid(rng, max_parts=2, allow_fat=False)
        if estimate_functor_count(y, x) > 200 or y.n_morphisms > 8:
            continue
        fg = functor_groupoid(y, x)
        assert len(fg.functors) == naive_functor_count(y, x)


def test_every_enumerated_functor_and_transformation_is_valid():
    y = b_group(FiniteGroup.cyclic(2))
    x = b_group(FiniteGroup.symmetric(3))
    fg = functor_groupoid(y, x)
    for F in fg.functors:
        assert F.check() == []
    for mid in range(fg.groupoid.n_morphisms):
        assert fg.transformation(mid).check() == []
    assert validate(fg.groupoid) == []


def test_enumeration_bound_reports_estimate():
    y = b_group(FiniteGroup.cyclic(2))
    x = b_group(FiniteGroup.symmetric(3))
    with pytest.raises(BoundExceeded) as err:
        functor_groupoid(y, x, bound=1)
    assert err.value.estimate is not None and err.value.estimate > 1


def test_restriction_functoriality_is_strict():
    # u1: point -> B Z2 <- two composable restrictions
    bz2 = b_group(FiniteGroup.cyclic(2))
    bz4 = b_group(FiniteGroup.cyclic(4))
    x = b_group(FiniteGroup.symmetric(3))
    pt = terminal()
    u2 = GroupoidFunctor(bz2, bz4, (0,), (0, 2), "dbl").verify()
    u1 = GroupoidFunctor(pt, bz2, (0,), (0,), "pt").verify()
    f_y = functor_groupoid(bz4, x)
    f_mid = functor_groupoid(bz2, x)
    f_pt = functor_groupoid(pt, x)
    r2 = restriction_functor(f_y, f_mid, u2)
    r1 = restriction_functor(f_mid, f_pt, u1)
    r12 = restriction_functor(f_y, f_pt, u2.after(u1))
    r2.verify(), r1.verify(), r12.verify()
    for i in range(len(f_y.functors)):
        assert r1.on_object(r2.on_object(i)) == r12.on_object(i)
    for m in range(f_y.groupoid.n_morphisms):
        assert r1.on_morphism(r2.on_morphism(m)) == r12.on_morphism(m)


def test_postcomposition_functor():
    y = b_group(FiniteGroup.cyclic(2))
    bz2 = b_group(FiniteGroup.cyclic(2))
    bz4 = b_group(FiniteGroup.cyclic(4))
    v = GroupoidFunctor(bz2, bz4, (0,), (0, 2), "dbl").verify()
    fg1 = functor_groupoid(y, bz2)
    fg2 = functor_groupoid(y, bz4)
    pv = postcomposition_functor(fg1, fg2, v)
    pv.verify()


def test_exponential_law_spec_instances():
    bz2 = b_group(FiniteGroup.cyclic(2))
    bz3 = b_group(FiniteGroup.cyclic(3))
    bs3 = b_group(FiniteGroup.symmetric(3))
    # z terminal: both sides are Fun(y, x)
    exponential_check(terminal(), bz2, bs3).verify()
    # z = y = B Z2, x = B S3
    exponential_check(bz2, bz2, bs3).verify()
    # z discrete 2: left side is Fun(y, x)^2
    w = exponential_check(discrete(2), bz3, bz3)
    w.verify()
    fyx = functor_groupoid(bz3, bz3)
    both = product(fyx.groupoid, fyx.groupoid)
    assert isinstance(are_equivalent(w.functor.domain, both), EquivalenceWitness)


def test_iso_comma_identity_leg_on_corpus():
    rng = random.Random(41)
    for _ in range(4):
        x = random_groupoid(rng, max_parts=2)
        f = GroupoidFunctor.identity(x)
        ic = iso_comma(f, GroupoidFunctor.identity(x))
        assert isinstance(are_equivalent(ic.groupoid, x), EquivalenceWitness)
        assert ic.two_cell.check() == []
        assert validate(ic.groupoid) == []


def test_iso_comma_projections_and_two_cell():
    bs3 = b_group(FiniteGroup.symmetric(3))
    pt = point_functor(bs3, 0)
    ic = iso_comma(pt, GroupoidFunctor.identity(bs3))
    ic.pr_left.verify()
    ic.pr_right.verify()
    assert ic.two_cell.check() == []
    # comma of a point against the identity of BG is codiscrete on |G| objects
    assert ic.groupoid.n_objects == 6
    assert len(ic.groupoid.pi0()) == 1
    assert all(len(ic.groupoid.aut(k)) == 1 for k in range(6))
