import pytest

from finloop.equivalence import EquivalenceWitness, are_equivalent
from finloop.errors import InvalidStructure
from finloop.group import FiniteGroup, are_isomorphic
from finloop.groupoid import b_group, discrete, disjoint_union, terminal, validate
from finloop.loops import (ClutchingDatum, based_twisted_loop_group, borel_groupoid,
                           conjugacy, inertia_groupoid, loop_decomposition,
                           torsor_iso, twisted_loop_group)
from finloop.mapping import iso_comma, point_functor


def test_inertia_of_terminal_and_discrete():
    t = inertia_groupoid(terminal())
    assert (t.groupoid.n_objects, t.groupoid.n_morphisms) == (1, 1)
    d = inertia_groupoid(discrete(4))
    assert (d.groupoid.n_objects, d.groupoid.n_morphisms) == (4, 4)
    assert len(d.groupoid.pi0()) == 4


def test_inertia_of_bs3():
    inert = inertia_groupoid(b_group(FiniteGroup.symmetric(3)))
    g = inert.groupoid
    assert (g.n_objects, g.n_morphisms) == (6, 36)
    assert len(g.pi0()) == 3
    assert validate(g) == []
    assert inert.evaluation.check() == []


def test_inertia_matches_pair_enumeration_oracle():
    s3 = FiniteGroup.symmetric(3)
    x = disjoint_union([b_group(FiniteGroup.cyclic(2)), b_group(s3)])
    inert = inertia_groupoid(x)
    # oracle: loop points = (object, automorphism) pairs, enumerated raw
    pairs = [(u, m) for u in range(x.n_objects) for m in x.out(u)
             if x.target[m] == u]
    assert inert.groupoid.n_objects == len(pairs)
    assert [(p.base, p.automorphism) for p in inert.loop_points] == pairs
    # morphisms: conjugators, enumerated raw
    n_mor = 0
    for (u, gm) in pairs:
        for h in x.out(u):
            g2 = x.compose(h, x.compose(gm, x.inverse(h)))
            assert (x.target[h], g2) in set(pairs)
            n_mor += 1
    assert inert.groupoid.n_morphisms == n_mor


def test_inertia_respects_disjoint_union():
    a = b_group(FiniteGroup.cyclic(2))
    b = b_group(FiniteGroup.symmetric(3))
    both = inertia_groupoid(disjoint_union([a, b])).groupoid
    split = disjoint_union([inertia_groupoid(a).groupoid,
                            inertia_groupoid(b).groupoid])
    w = are_equivalent(both, split)
    assert isinstance(w, EquivalenceWitness)


def test_conjugacy_tables():
    assert len(conjugacy(FiniteGroup.trivial()).classes) == 1
    s3 = conjugacy(FiniteGroup.symmetric(3))
    assert sorted(len(c) for c in s3.classes) == [1, 2, 3]
    assert sorted(len(z) for z, _ in s3.centralizers) == [2, 3, 6]
    q8 = conjugacy(FiniteGroup.quaternion())
    assert len(q8.classes) == 5
    assert sorted(len(z) for z, _ in q8.centralizers) == [4, 4, 4, 8, 8]
    for table in (s3, q8):
        n = len(table.group)
        assert sum(len(c) for c in table.classes) == n
        for members, (cent, _) in zip(table.classes, table.centralizers):
            assert len(members) * len(cent) == n
        # canonical representatives are the least member
        assert all(rep == members[0]
                   for rep, members in zip(table.representatives, table.classes))


def test_twisted_loop_groups():
    s3 = FiniteGroup.symmetric(3)
    assert len(twisted_loop_group(s3, s3.identity)) == 6
    t12 = s3.labels.index("(1 2)")
    z = twisted_loop_group(s3, t12)
    assert sorted(z.labels) == ["()", "(1 2)"]
    q8 = FiniteGroup.quaternion()
    zi = twisted_loop_group(q8, q8.labels.index("i"))
    assert len(zi) == 4 and are_isomorphic(zi, FiniteGroup.cyclic(4))
    assert len(based_twisted_loop_group(s3, t12)) == 1
    with pytest.raises(InvalidStructure):
        twisted_loop_group(s3, 17)


def test_torsor_iso():
    s3 = FiniteGroup.symmetric(3)
    t12 = s3.labels.index("(1 2)")
    t13 = s3.labels.index("(1 3)")
    rot = s3.labels.index("(1 2 3)")
    assert torsor_iso(s3, t12, t12) == s3.identity
    d = torsor_iso(s3, t12, t13)
    assert d is not None and s3.conjugate(d, t12) == t13
    assert s3.labels[d] == "(2 3)"
    assert torsor_iso(s3, t12, rot) is None


def test_clutching_datum():
    s3 = FiniteGroup.symmetric(3)
    t12 = s3.labels.index("(1 2)")
    t13 = s3.labels.index("(1 3)")
    a, b = ClutchingDatum(s3, t12), ClutchingDatum(s3, t13)
    assert a.iso_witness(b) is not None
    assert sorted(a.automorphism_group().labels) == ["()", "(1 2)"]
    with pytest.raises(InvalidStructure):
        ClutchingDatum(s3, 9)


def test_torsor_iso_agrees_with_conjugacy_and_point_fibers():
    for grp in (FiniteGroup.symmetric(3), FiniteGroup.quaternion()):
        table = conjugacy(grp)
        inert = inertia_groupoid(b_group(grp))
        for alpha in range(len(grp)):
            for beta in range(len(grp)):
                delta = torsor_iso(grp, alpha, beta)
                same = table.class_of[alpha] == table.class_of[beta]
                assert (delta is not None) == same
                pa = point_functor(inert.groupoid, inert.point_index(0, alpha))
                pb = point_functor(inert.groupoid, inert.point_index(0, beta))
                fiber = iso_comma(pa, pb)
                assert (fiber.groupoid.n_objects > 0) == same
                if alpha == beta:
                    # the point self-intersection is the discrete set of
                    # conjugators, i.e. the twisted loop group's elements
                    zg = twisted_loop_group(grp, alpha)
                    assert fiber.groupoid.n_objects == len(zg)
                    assert fiber.groupoid.n_morphisms == len(zg)
                    conjugators = sorted(
                        str(inert.groupoid.morphism_label(obj[2])[1])
                        for obj in fiber.objects)
                    assert conjugators == sorted(str(l) for l in zg.labels)


def test_borel_groupoid():
    t = borel_groupoid(FiniteGroup.trivial())
    assert t.groupoid.n_objects == 1
    t.witness.verify()
    s3 = borel_groupoid(FiniteGroup.symmetric(3))
    s3.witness.verify()
    z4 = borel_groupoid(FiniteGroup.cyclic(4))
    comps = z4.groupoid.pi0()
    assert len(comps) == 4
    for c in comps:
        assert are_isomorphic(z4.groupoid.aut(c[0]), FiniteGroup.cyclic(4))


def test_loop_decomposition():
    triv = loop_decomposition(FiniteGroup.trivial())
    assert len(triv.summands) == 1 and len(triv.summands[0][1]) == 1
    s3 = loop_decomposition(FiniteGroup.symmetric(3))
    assert [len(z) for _, z in s3.summands] == [6, 2, 3]
    s3.witness.verify()
    q8 = loop_decomposition(FiniteGroup.quaternion())
    assert sorted(len(z) for _, z in q8.summands) == [4, 4, 4, 8, 8]
    q8.witness.verify()


def test_inertia_components_biject_with_classes_and_auts_are_centralizers():
    for grp in (FiniteGroup.symmetric(3), FiniteGroup.quaternion(),
                FiniteGroup.dihedral(4)):
        inert = inertia_groupoid(b_group(grp))
        table = conjugacy(grp)
        comps = inert.groupoid.pi0()
        assert len(comps) == len(table.classes)
        for rep in table.representatives:
            k = inert.point_index(0, rep)
            aut = inert.groupoid.aut(k)
            assert are_isomorphic(aut, twisted_loop_group(grp, rep))
