import random

import pytest

from finloop.errors import InvalidStructure
from finloop.group import FiniteGroup, are_isomorphic
from finloop.groupoid import (action_groupoid, b_group, discrete, disjoint_union,
                              indiscrete, product, terminal, validate)

from corpus import perturb_compose_entry, random_groupoid


def test_terminal_is_clean():
    assert validate(terminal()) == []


def test_b_s3_from_generators():
    g = b_group(FiniteGroup.from_permutations(["(1 2)", "(1 2 3)"]))
    assert g.n_objects == 1 and g.n_morphisms == 6
    assert validate(g) == []
    # the associativity sweep touches every composable triple: 6^3 of them
    assert sum(len(g.out(g.target[m2])) for m2, m1 in g.composable_pairs()) == 216


def test_constructed_violation_names_the_triple():
    g = b_group(FiniteGroup.cyclic(4))
    bad = perturb_compose_entry(g, random.Random(5))
    report = validate(bad)
    assert report, "perturbed table must be rejected"
    assert any(v.axiom in ("associativity", "left-identity", "right-identity",
                           "left-inverse", "right-inverse",
                           "composition-endpoints") for v in report)
    assert all(isinstance(v.witness, tuple) for v in report)


def test_perturbations_always_rejected():
    rng = random.Random(11)
    for _ in range(25):
        g = b_group(FiniteGroup.cyclic(rng.randint(2, 6)))
        assert validate(perturb_compose_entry(g, rng)) != []


def test_b_group_examples():
    assert b_group(FiniteGroup.trivial()).n_morphisms == 1
    z4 = b_group(FiniteGroup.cyclic(4))
    assert (z4.n_objects, z4.n_morphisms) == (1, 4)


def test_action_groupoid_trivial_group():
    g = action_groupoid(FiniteGroup.trivial(), 3, lambda h, s: s)
    assert g.n_objects == 3 and g.n_morphisms == 3
    assert len(g.pi0()) == 3
    assert validate(g) == []


def test_action_groupoid_s3_conjugation():
    s3 = FiniteGroup.symmetric(3)
    g = action_groupoid(s3, 6, lambda h, s: s3.conjugate(h, s))
    assert g.n_objects == 6 and g.n_morphisms == 36
    assert validate(g) == []
    assert len(g.pi0()) == 3


def test_action_groupoid_swap():
    z2 = FiniteGroup.cyclic(2)
    g = action_groupoid(z2, 2, lambda h, s: s ^ h)
    assert len(g.pi0()) == 1
    assert all(len(g.aut(x)) == 1 for x in range(2))
    assert validate(g) == []


def test_action_axiom_violation_raises():
    z2 = FiniteGroup.cyclic(2)
    with pytest.raises(InvalidStructure):
        action_groupoid(z2, 2, lambda h, s: 0)


def test_pi0_aut_skeleton_basics():
    s3 = FiniteGroup.symmetric(3)
    g = b_group(s3)
    assert len(g.pi0()) == 1
    assert are_isomorphic(g.aut(0), s3)
    ind = indiscrete(3)
    from finloop.equivalence import skeleton
    sk, witness = skeleton(ind)
    assert sk.n_objects == 1 and sk.n_morphisms == 1
    witness.verify()


def test_disjoint_union_and_product_counts():
    assert disjoint_union([]).n_objects == 0
    a, b = b_group(FiniteGroup.cyclic(2)), b_group(FiniteGroup.cyclic(3))
    u = disjoint_union([a, b])
    assert (u.n_objects, u.n_morphisms) == (2, 5)
    assert len(u.pi0()) == len(a.pi0()) + len(b.pi0())
    p = product(a, b)
    assert (p.n_objects, p.n_morphisms) == (1, 6)
    assert validate(p) == []
    d = product(discrete(2), discrete(3))
    assert (d.n_objects, d.n_morphisms) == (6, 6)


def test_product_of_b_groups_is_b_of_product():
    from finloop.equivalence import are_equivalent, EquivalenceWitness
    p = product(b_group(FiniteGroup.cyclic(2)), b_group(FiniteGroup.cyclic(3)))
    w = are_equivalent(p, b_group(FiniteGroup.cyclic(6)))
    assert isinstance(w, EquivalenceWitness)


def test_product_auts_are_products():
    rng = random.Random(3)
    for _ in range(5):
        g, h = random_groupoid(rng, 2), random_groupoid(rng, 2)
        p = product(g, h)
        x = rng.randrange(g.n_objects)
        y = rng.randrange(h.n_objects)
        pa = p.aut(x * h.n_objects + y)
        assert are_isomorphic(pa, g.aut(x).direct_product(h.aut(y)))


def test_component_tree_paths_are_isos_from_reps():
    rng = random.Random(9)
    g = random_groupoid(rng)
    reps, path = g.component_tree()
    comp = g.component_of()
    for x in range(g.n_objects):
        m = path[x]
        assert g.source[m] == reps[comp[x]] and g.target[m] == x
