import random

import pytest

from finloop.equivalence import EquivalenceWitness, are_equivalent, skeleton
from finloop.errors import VerificationError
from finloop.fibration import (free_loops_via_paths, homotopy_fiber,
                               interval_groupoid, is_isofibration, omega,
                               path_groupoid, replace)
from finloop.functor import GroupoidFunctor
from finloop.group import FiniteGroup
from finloop.groupoid import (b_group, discrete, full_subgroupoid, terminal,
                              validate)
from finloop.loops import conjugacy, inertia_groupoid
from finloop.mapping import functor_groupoid

from corpus import random_groupoid, subgroup_inclusion


def test_interval_groupoid():
    i = interval_groupoid()
    assert (i.n_objects, i.n_morphisms) == (2, 4)
    assert validate(i) == []


def test_path_groupoid_of_discrete_space():
    p = path_groupoid(discrete(3))
    assert p.groupoid.n_objects == 3
    assert len(p.groupoid.pi0()) == 3


def test_path_groupoid_of_bg():
    s3 = FiniteGroup.symmetric(3)
    p = path_groupoid(b_group(s3))
    assert p.groupoid.n_objects == 6
    assert len(p.groupoid.pi0()) == 1
    p.witness.verify()
    # strict identities ev_t . const = id
    for cell in p.const_cells:
        assert cell.check() == []
        assert all(c == cell.source.codomain.identity[cell.target.on_object(u)]
                   for u, c in enumerate(cell.components))


def test_isofibration_examples():
    bz2 = b_group(FiniteGroup.cyclic(2))
    ok, cex = is_isofibration(GroupoidFunctor.identity(bz2))
    assert ok
    # the point inclusion cannot lift the nonidentity automorphism
    incl = GroupoidFunctor(terminal(), bz2, (0,), (0,), "pt")
    ok, cex = is_isofibration(incl)
    assert not ok and cex == (0, 1)
    ev0 = path_groupoid(b_group(FiniteGroup.symmetric(3))).ev0
    ok, _ = is_isofibration(ev0)
    assert ok


def test_replace_identity_on_terminal():
    rep = replace(GroupoidFunctor.identity(terminal()))
    assert isinstance(are_equivalent(rep.groupoid, terminal()),
                      EquivalenceWitness)


def test_replace_point_into_bg():
    s3 = FiniteGroup.symmetric(3)
    bs3 = b_group(s3)
    rep = replace(GroupoidFunctor(terminal(), bs3, (0,), (s3.identity,), "pt"))
    # triples (point, path, comparison): |G| paths x |G| comparisons
    assert rep.groupoid.n_objects == 36
    ok, _ = is_isofibration(rep.projection)
    assert ok
    rep.embedding_witness.verify()


def test_replace_subgroup_inclusion():
    s3 = FiniteGroup.symmetric(3)
    a3_elems = s3.generated_subgroup([s3.labels.index("(1 2 3)")])
    _, incl = subgroup_inclusion(s3, a3_elems)
    rep = replace(incl)
    assert isinstance(are_equivalent(rep.groupoid, incl.domain),
                      EquivalenceWitness)
    ok, _ = is_isofibration(rep.projection)
    assert ok
    # strict retraction and the recorded identity 2-cell
    assert rep.two_cell.check() == []
    for m in range(incl.domain.n_morphisms):
        assert rep.retraction.on_morphism(rep.embedding.on_morphism(m)) == m


def test_replace_on_random_functor_corpus():
    rng = random.Random(47)
    for _ in range(4):
        y = random_groupoid(rng, max_parts=2)
        x = random_groupoid(rng, max_parts=1)
        from finloop.mapping import estimate_functor_count
        if estimate_functor_count(x, y) > 60:
            continue
        fg = functor_groupoid(x, y)
        f = fg.functors[rng.randrange(len(fg.functors))]
        rep = replace(f)  # replace() itself verifies all three conditions
        assert rep.functor is f


def test_homotopy_fiber_of_identity_is_contractible():
    bz3 = b_group(FiniteGroup.cyclic(3))
    hf = homotopy_fiber(GroupoidFunctor.identity(bz3), 0)
    assert isinstance(are_equivalent(hf.groupoid, terminal()),
                      EquivalenceWitness)
    hf.agreement.verify()


def test_homotopy_fiber_of_subgroup_inclusion_counts_cosets():
    s3 = FiniteGroup.symmetric(3)
    a3_elems = s3.generated_subgroup([s3.labels.index("(1 2 3)")])
    _, incl = subgroup_inclusion(s3, a3_elems)
    hf = homotopy_fiber(incl, 0)
    # the fiber is the coset set: index [S3 : A3] = 2
    assert isinstance(are_equivalent(hf.groupoid, discrete(2)),
                      EquivalenceWitness)


def test_homotopy_fiber_of_point_inclusion_is_the_group():
    s3 = FiniteGroup.symmetric(3)
    bs3 = b_group(s3)
    hf = homotopy_fiber(GroupoidFunctor(terminal(), bs3, (0,), (s3.identity,), "pt"), 0)
    assert isinstance(are_equivalent(hf.groupoid, discrete(6)),
                      EquivalenceWitness)


def test_omega_of_terminal():
    hf = omega(terminal(), 0)
    assert isinstance(are_equivalent(hf.groupoid, terminal()),
                      EquivalenceWitness)


def test_omega_counts_cosets_over_all_classes():
    # based loops on B G are homotopy-discrete with one point per element:
    # the class of a splits into [G : Z(a)] many basepoint-trivialized loops
    for grp in (FiniteGroup.symmetric(3), FiniteGroup.cyclic(5)):
        hf = omega(b_group(grp), 0)
        table = conjugacy(grp)
        expected = sum(len(grp) // len(z) for z, _ in table.centralizers)
        assert expected == len(grp)
        comps = hf.groupoid.pi0()
        assert len(comps) == expected
        sk, witness = skeleton(hf.groupoid)
        assert sk.n_objects == expected
        assert all(len(sk.aut(k)) == 1 for k in range(sk.n_objects))
        assert isinstance(are_equivalent(hf.groupoid, discrete(expected)),
                          EquivalenceWitness)


def test_omega_abelian_case_matches_class_count():
    grp = FiniteGroup.cyclic(5)
    hf = omega(b_group(grp), 0)
    assert len(hf.groupoid.pi0()) == len(conjugacy(grp).classes) == 5


def test_omega_requires_declared_basepoint():
    with pytest.raises(VerificationError):
        omega(terminal(), 3)


def test_strict_preimage_of_component_counts_classes():
    # restricting the loop evaluation over one component of the base gives
    # the loops of that component: components = classes of its vertex group
    s3 = FiniteGroup.symmetric(3)
    from finloop.groupoid import disjoint_union
    x = disjoint_union([b_group(s3), b_group(FiniteGroup.cyclic(4))])
    inert = inertia_groupoid(x)
    ev = inert.evaluation
    for comp_objs, grp in zip(x.pi0(), (s3, FiniteGroup.cyclic(4))):
        keep = [k for k in range(inert.groupoid.n_objects)
                if ev.on_object(k) in comp_objs]
        sub, _, _ = full_subgroupoid(inert.groupoid, keep)
        assert len(sub.pi0()) == len(conjugacy(grp).classes)


def test_two_free_loop_models_agree():
    for grp in (FiniteGroup.cyclic(3), FiniteGroup.symmetric(3)):
        x = b_group(grp)
        via_paths = free_loops_via_paths(x)
        inert = inertia_groupoid(x)
        assert isinstance(are_equivalent(via_paths.groupoid, inert.groupoid),
                          EquivalenceWitness)
