import pytest

from finloop.errors import BoundExceeded, InvalidStructure, ParseError
from finloop.group import (FiniteGroup, abelian_invariants, are_isomorphic,
                           cycle_string, element_words, find_isomorphism,
                           homomorphisms, parse_cycles)


def test_parse_cycles_roundtrip():
    assert parse_cycles("(1 2)", 3) == (1, 0, 2)
    assert parse_cycles("(1 2 3)") == (1, 2, 0)
    assert parse_cycles("(1 2)(3 4)") == (1, 0, 3, 2)
    assert parse_cycles("", 4) == (0, 1, 2, 3)
    for text in ["(1 2)", "(1 2 3)", "(1 3)(2 4)"]:
        assert cycle_string(parse_cycles(text, 4)) == text


def test_parse_cycles_rejects_garbage():
    with pytest.raises(ParseError):
        parse_cycles("(1 1)")
    with pytest.raises(ParseError):
        parse_cycles("1 2 3")
    with pytest.raises(ParseError):
        parse_cycles("(0 1)")


def test_s3_from_generators_has_order_six():
    s3 = FiniteGroup.from_permutations(["(1 2)", "(1 2 3)"])
    assert len(s3) == 6
    s3.validate()


def test_standard_groups_validate():
    for grp in [FiniteGroup.trivial(), FiniteGroup.cyclic(7),
                FiniteGroup.klein_four(), FiniteGroup.symmetric(4),
                FiniteGroup.alternating(4), FiniteGroup.dihedral(4),
                FiniteGroup.quaternion()]:
        grp.validate()
    assert len(FiniteGroup.symmetric(4)) == 24
    assert len(FiniteGroup.alternating(4)) == 12
    assert len(FiniteGroup.dihedral(4)) == 8


def test_bad_table_rejected():
    with pytest.raises(InvalidStructure):
        FiniteGroup.from_table([[0, 1], [1, 1]]).validate()
    with pytest.raises(InvalidStructure):
        FiniteGroup.from_table([[1, 0], [1, 0]])  # no identity


def test_conjugacy_and_centralizers_s3():
    s3 = FiniteGroup.symmetric(3)
    classes = s3.conjugacy_classes()
    assert sorted(len(c) for c in classes) == [1, 2, 3]
    assert sorted(len(s3.centralizer(c[0])) for c in classes) == [2, 3, 6]
    for c in classes:
        assert len(c) * len(s3.centralizer(c[0])) == 6


def test_conjugacy_q8():
    q8 = FiniteGroup.quaternion()
    classes = q8.conjugacy_classes()
    assert len(classes) == 5
    assert sorted(len(q8.centralizer(c[0])) for c in classes) == [4, 4, 4, 8, 8]


def test_abelianizations():
    assert abelian_invariants(FiniteGroup.symmetric(3).abelianization()) == (2,)
    assert abelian_invariants(FiniteGroup.alternating(4).abelianization()) == (3,)
    assert abelian_invariants(FiniteGroup.quaternion().abelianization()) == (2, 2)
    assert abelian_invariants(FiniteGroup.cyclic(12)) == (12,)
    z2xz4 = FiniteGroup.cyclic(2).direct_product(FiniteGroup.cyclic(4))
    assert abelian_invariants(z2xz4) == (2, 4)


def test_subgroup_and_quotient():
    s3 = FiniteGroup.symmetric(3)
    a3_elems = s3.generated_subgroup([s3.labels.index("(1 2 3)")])
    sub, parents = s3.subgroup(a3_elems)
    assert len(sub) == 3 and are_isomorphic(sub, FiniteGroup.cyclic(3))
    quo, coset_of = s3.quotient(a3_elems)
    assert len(quo) == 2
    t12, t13 = s3.labels.index("(1 2)"), s3.labels.index("(1 3)")
    with pytest.raises(InvalidStructure):
        s3.subgroup([s3.identity, t12, t13])  # not closed
    with pytest.raises(InvalidStructure):
        s3.quotient([s3.identity, t12])  # not normal


def test_element_words_generate():
    s3 = FiniteGroup.symmetric(3)
    gens = s3.generating_set()
    words = element_words(s3, gens)
    for i, w in enumerate(words):
        acc = s3.identity
        for k in w:
            acc = s3.mul(acc, gens[k])
        assert acc == i


def test_homomorphism_counts_against_brute_force():
    v4, s3 = FiniteGroup.klein_four(), FiniteGroup.symmetric(3)
    import itertools

    def brute(src, dst):
        n = 0
        for phi in itertools.product(range(len(dst)), repeat=len(src)):
            if phi[src.identity] != dst.identity:
                continue
            if all(phi[src.mul(a, b)] == dst.mul(phi[a], phi[b])
                   for a in range(len(src)) for b in range(len(src))):
                n += 1
        return n

    assert len(homomorphisms(v4, s3)) == brute(v4, s3) == 10
    z6 = FiniteGroup.cyclic(6)
    assert len(homomorphisms(z6, s3)) == brute(z6, s3) == 6


def test_isomorphism_search():
    z6 = FiniteGroup.cyclic(6)
    z2xz3 = FiniteGroup.cyclic(2).direct_product(FiniteGroup.cyclic(3))
    phi = find_isomorphism(z6, z2xz3)
    assert phi is not None and len(set(phi)) == 6
    assert find_isomorphism(FiniteGroup.symmetric(3), z6) is None
    assert find_isomorphism(FiniteGroup.dihedral(4), FiniteGroup.quaternion()) is None
    assert are_isomorphic(FiniteGroup.dihedral(3), FiniteGroup.symmetric(3))


def test_isomorphism_bound():
    big = FiniteGroup.cyclic(16)
    with pytest.raises(BoundExceeded):
        find_isomorphism(big, big, bound=8)
