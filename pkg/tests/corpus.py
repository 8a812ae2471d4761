"""Shared builders and independent oracles for the test suite."""

import itertools
import random

from finloop import b_group, disjoint_union
from finloop.functor import GroupoidFunctor
from finloop.group import FiniteGroup
from finloop.groupoid import FiniteGroupoid, _maybe_tabulate

GROUP_POOL = [
    ("1", FiniteGroup.trivial),
    ("Z2", lambda: FiniteGroup.cyclic(2)),
    ("Z3", lambda: FiniteGroup.cyclic(3)),
    ("Z4", lambda: FiniteGroup.cyclic(4)),
    ("V4", FiniteGroup.klein_four),
    ("Z5", lambda: FiniteGroup.cyclic(5)),
    ("Z6", lambda: FiniteGroup.cyclic(6)),
    ("S3", lambda: FiniteGroup.symmetric(3)),
]


def pool_group(k):
    return GROUP_POOL[k % len(GROUP_POOL)][1]()


def fatten(g, copies):
    """An equivalent groupoid with ``copies[x]`` objects over each object x.

    Objects are pairs (x, i); hom((x,i), (y,j)) is a relabeled copy of
    hom(x, y), so the collapse onto g is an equivalence.
    """
    objs = [(x, i) for x in range(g.n_objects) for i in range(copies[x])]
    opos = {o: k for k, o in enumerate(objs)}
    mors = [(m, i, j) for m in range(g.n_morphisms)
            for i in range(copies[g.source[m]])
            for j in range(copies[g.target[m]])]
    mpos = {m: k for k, m in enumerate(mors)}
    source = tuple(opos[(g.source[m], i)] for m, i, j in mors)
    target = tuple(opos[(g.target[m], j)] for m, i, j in mors)
    identity = tuple(mpos[(g.identity[x], i, i)] for x, i in objs)
    inverse = tuple(mpos[(g.inverse(m), j, i)] for m, i, j in mors)

    def compose(k2, k1):
        m2, i2, j2 = mors[k2]
        m1, i1, j1 = mors[k1]
        return mpos[(g.compose(m2, m1), i1, j2)]

    fat = FiniteGroupoid(len(objs), source, target, identity, inverse, compose,
                         tuple(objs), tuple(mors), f"fat({g.name})")
    return _maybe_tabulate(fat)


def random_groupoid(rng, max_parts=3, allow_fat=True):
    """Disjoint unions of small one-object groupoids, sometimes fattened."""
    parts = []
    for _ in range(rng.randint(1, max_parts)):
        g = b_group(pool_group(rng.randrange(len(GROUP_POOL))))
        if allow_fat and rng.random() < 0.3:
            g = fatten(g, [rng.randint(1, 2)])
        parts.append(g)
    return disjoint_union(parts)


def group_hom_functor(src, dst, images, name="hom"):
    """The functor B(src) -> B(dst) induced by generator images.

    ``images`` maps every element index of src to one of dst; the caller is
    responsible for it being a homomorphism (verified).
    """
    return GroupoidFunctor(b_group(src), b_group(dst), (0,), tuple(images),
                           name).verify()


def subgroup_inclusion(big, element_indices, name="incl"):
    """B(H) -> B(G) for the subgroup on the given (closed) elements."""
    sub, parents = big.subgroup(element_indices)
    return sub, GroupoidFunctor(b_group(sub), b_group(big), (0,), parents,
                                name).verify()


# ---------------------------------------------------------------------------
# independent oracles


def naive_functor_count(y, x):
    """Enumerate raw object/morphism maps and filter by functoriality."""
    count = 0
    for omap in itertools.product(range(x.n_objects), repeat=y.n_objects):
        cands = [x.hom(omap[y.source[m]], omap[y.target[m]])
                 for m in range(y.n_morphisms)]
        for mmap in itertools.product(*cands):
            if any(mmap[y.identity[u]] != x.identity[omap[u]]
                   for u in range(y.n_objects)):
                continue
            if all(mmap[y.compose(m2, m1)] == x.compose(mmap[m2], mmap[m1])
                   for m2, m1 in y.composable_pairs()):
                count += 1
    return count


def naive_equivalence_search(a, b):
    """Brute-force search for a fully faithful, essentially surjective functor."""
    for omap in itertools.product(range(b.n_objects), repeat=a.n_objects):
        cands = [b.hom(omap[a.source[m]], omap[a.target[m]])
                 for m in range(a.n_morphisms)]
        for mmap in itertools.product(*cands):
            if any(mmap[a.identity[u]] != b.identity[omap[u]]
                   for u in range(a.n_objects)):
                continue
            if not all(mmap[a.compose(m2, m1)] == b.compose(mmap[m2], mmap[m1])
                       for m2, m1 in a.composable_pairs()):
                continue
            # essentially surjective?
            hit = set()
            for x in range(a.n_objects):
                for w in range(b.n_objects):
                    if b.hom(omap[x], w):
                        hit.add(w)
            if hit != set(range(b.n_objects)):
                continue
            # fully faithful?
            if all(sorted(mmap[m] for m in a.hom(u, v)) ==
                   sorted(b.hom(omap[u], omap[v]))
                   for u in range(a.n_objects) for v in range(a.n_objects)):
                return omap, mmap
    return None


def perturb_compose_entry(g, rng):
    """Copy g with one composition entry redirected; returns the new groupoid."""
    table = dict(g.composition_table())
    keys = sorted(table)
    key = keys[rng.randrange(len(keys))]
    old = table[key]
    new = (old + 1 + rng.randrange(g.n_morphisms - 1)) % g.n_morphisms
    table[key] = new
    return FiniteGroupoid(g.n_objects, g.source, g.target, g.identity,
                          tuple(g.inverse(m) for m in range(g.n_morphisms)),
                          table, None, None, f"perturbed({g.name})")
