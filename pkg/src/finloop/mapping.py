"""Mapping groupoids: the groupoid of all functors y -> x.

Objects are functors on the nose, morphisms are natural transformations,
composition is vertical composition.  Enumeration works one component of the
domain at a time: a functor on a connected component is exactly a choice of

  * an image object c for the component's base object,
  * a group homomorphism aut(base) -> aut(c), and
  * for every non-base object an arbitrary morphism out of c,

transported along a fixed spanning tree.  This cuts the search space from
|X1|^|Y1| to |X1|^|generators| and, because every choice yields a functor,
the candidate count equals the functor count.

The same tree bookkeeping enumerates natural transformations: a
transformation is a choice, per component, of a component at the base object
commuting with the generators of aut(base).
"""

from __future__ import annotations

import itertools
from array import array
from dataclasses import dataclass, field

from .errors import BoundExceeded, InvalidStructure
from .functor import GroupoidFunctor, NaturalTransformation
from .group import element_words, homomorphisms
from .groupoid import FiniteGroupoid, _maybe_tabulate, product

FUNCTOR_BOUND = 10 ** 6


# ---------------------------------------------------------------------------
# per-component decomposition of the domain


class _Component:
    """Spanning-tree data for one connected component of the domain."""

    def __init__(self, y, base, members, path):
        self.base = base
        self.members = members              # objects, base first
        self.others = [u for u in members if u != base]
        self.aut_group, self.aut_mors = y.aut_with_morphisms(base)
        self.aut_index = {m: k for k, m in enumerate(self.aut_mors)}
        self.gen_idx = self.aut_group.generating_set()
        self.gen_mors = [self.aut_mors[k] for k in self.gen_idx]
        # every morphism of the component as (src, tgt, aut element index)
        self.mor_decomp = {}
        for u in members:
            pu = path[u]
            for m in y.out(u):
                v = y.target[m]
                a = y.compose(y.inverse(path[v]), y.compose(m, pu))
                self.mor_decomp[m] = (u, v, self.aut_index[a])


def _components_of(y):
    comp = y.component_of()
    reps, path = y.component_tree()
    members = [[] for _ in reps]
    for u, c in enumerate(comp):
        members[c].append(u)
    return [_Component(y, reps[c], members[c], path) for c in range(len(reps))], path


def estimate_functor_count(y, x):
    """Upper bound on |Fun(y, x)| from order-profile pruning alone."""
    comps, _ = _components_of(y)
    x_auts = [x.aut(c) for c in range(x.n_objects)]
    total = 1
    for comp in comps:
        per = 0
        for c in range(x.n_objects):
            hom_ub = 1
            for k in comp.gen_idx:
                og = comp.aut_group.element_order(k)
                hom_ub *= sum(1 for h in range(len(x_auts[c]))
                              if og % x_auts[c].element_order(h) == 0)
            per += hom_ub * (len(x.out(c)) ** len(comp.others))
        total *= per
    return total


# ---------------------------------------------------------------------------


@dataclass
class FunctorGroupoid:
    """Fun(domain, codomain) together with its underlying finite groupoid."""

    groupoid: FiniteGroupoid
    domain: FiniteGroupoid
    codomain: FiniteGroupoid
    functors: list
    mor_data: list                      # (i, j, components tuple)
    functor_index: dict = field(repr=False)
    transfo_index: dict = field(repr=False)

    def object_index_of(self, functor):
        key = (functor.object_tuple(), functor.morphism_tuple())
        return self.functor_index[key]

    def morphism_id(self, i, j, components):
        return self.transfo_index[(i, j, tuple(components))]

    def transformation(self, mid):
        i, j, comps = self.mor_data[mid]
        return NaturalTransformation(self.functors[i], self.functors[j], comps,
                                     f"nt{mid}")

    def evaluation_functor(self, y_object, name=None):
        """Fun(y,x) -> x evaluating at a fixed object of y."""
        obj_map = tuple(F.on_object(y_object) for F in self.functors)
        mor_map = tuple(d[2][y_object] for d in self.mor_data)
        return GroupoidFunctor(self.groupoid, self.codomain, obj_map, mor_map,
                               name or f"ev[{y_object}]")

    def constant_functor(self, name=None):
        """x -> Fun(y,x) sending u to the functor constant at u."""
        y, x = self.domain, self.codomain
        const_obj = []
        for u in range(x.n_objects):
            omap = (u,) * y.n_objects
            mmap = (x.identity[u],) * y.n_morphisms
            const_obj.append(self.functor_index[(omap, mmap)])
        const_mor = []
        for m in range(x.n_morphisms):
            comps = (m,) * y.n_objects
            const_mor.append(self.morphism_id(const_obj[x.source[m]],
                                              const_obj[x.target[m]], comps))
        return GroupoidFunctor(x, self.groupoid, tuple(const_obj),
                               tuple(const_mor), name or "const")


def functor_groupoid(y, x, bound=FUNCTOR_BOUND):
    """Enumerate Fun(y, x) completely.

    Raises BoundExceeded (with a size estimate) if more than ``bound``
    functors or natural transformations would be produced.
    """
    estimate = estimate_functor_count(y, x)
    if estimate > bound:
        raise BoundExceeded("functor enumeration", bound, estimate)
    comps, path = _components_of(y)

    x_aut_cache = [x.aut_with_morphisms(c) for c in range(x.n_objects)]

    # enumerate per-component functor fragments
    frag_lists = []
    for comp in comps:
        frags = []
        for c in range(x.n_objects):
            aut_x, aut_x_mors = x_aut_cache[c]
            outs = x.out(c)
            id_c = x.identity[c]
            for phi in homomorphisms(comp.aut_group, aut_x, bound=max(len(comp.aut_group), len(aut_x), 200)):
                phi_mor = [aut_x_mors[phi[k]] for k in range(len(comp.aut_group))]
                for schoice in itertools.product(outs, repeat=len(comp.others)):
                    s = {comp.base: id_c}
                    s.update(zip(comp.others, schoice))
                    obj_assign = {u: x.target[s[u]] for u in comp.members}
                    inv_s = {u: x.inverse(s[u]) for u in comp.members}
                    mor_assign = {}
                    for m, (u, v, k) in comp.mor_decomp.items():
                        mor_assign[m] = x.compose(s[v], x.compose(phi_mor[k], inv_s[u]))
                    frags.append((obj_assign, mor_assign))
        frag_lists.append(frags)

    functors = []
    functor_index = {}
    for combo in itertools.product(*frag_lists):
        omap = [0] * y.n_objects
        mmap = [0] * y.n_morphisms
        for obj_assign, mor_assign in combo:
            for u, c in obj_assign.items():
                omap[u] = c
            for m, fm in mor_assign.items():
                mmap[m] = fm
        omap, mmap = tuple(omap), tuple(mmap)
        functor_index[(omap, mmap)] = len(functors)
        functors.append(GroupoidFunctor(y, x, omap, mmap, f"F{len(functors)}"))

    # natural transformations
    mor_data = []
    transfo_index = {}
    n = len(functors)
    for i in range(n):
        F = functors[i]
        for j in range(n):
            G = functors[j]
            per_comp = []
            for comp in comps:
                b = comp.base
                cands = []
                for e in x.hom(F.on_object(b), G.on_object(b)):
                    if all(x.compose(G.on_morphism(a), e) ==
                           x.compose(e, F.on_morphism(a)) for a in comp.gen_mors):
                        cands.append(e)
                if not cands:
                    per_comp = None
                    break
                per_comp.append((comp, cands))
            if per_comp is None:
                continue
            for choice in itertools.product(*[c for _, c in per_comp]):
                comps_full = [0] * y.n_objects
                for (comp, _), e in zip(per_comp, choice):
                    for u in comp.members:
                        pu = path[u]
                        comps_full[u] = x.compose(
                            x.compose(G.on_morphism(pu), e),
                            x.inverse(F.on_morphism(pu)))
                comps_full = tuple(comps_full)
                transfo_index[(i, j, comps_full)] = len(mor_data)
                mor_data.append((i, j, comps_full))
                if len(mor_data) > bound:
                    raise BoundExceeded("natural transformation enumeration", bound)

    source = tuple(d[0] for d in mor_data)
    target = tuple(d[1] for d in mor_data)
    identity = tuple(transfo_index[(i, i, tuple(x.identity[functors[i].on_object(u)]
                                                for u in range(y.n_objects)))]
                     for i in range(n))

    def inverse(mid):
        i, j, comps = mor_data[mid]
        return transfo_index[(j, i, tuple(x.inverse(c) for c in comps))]

    def compose(m2, m1):
        i1, j1, c1 = mor_data[m1]
        i2, j2, c2 = mor_data[m2]
        comps = tuple(x.compose(a, b) for a, b in zip(c2, c1))
        return transfo_index[(i1, j2, comps)]

    def olabel(i):
        return ("functor", functors[i].object_tuple(), functors[i].morphism_tuple())

    g = FiniteGroupoid(n, source, target, identity, inverse, compose,
                       olabel, lambda m: mor_data[m],
                       f"Fun({y.name},{x.name})")
    g = _maybe_tabulate(g)
    return FunctorGroupoid(g, y, x, functors, mor_data, functor_index, transfo_index)


# ---------------------------------------------------------------------------
# functoriality of Fun(-,-)


def restriction_functor(fg, fg_sub, u, name=None):
    """Fun(y,x) -> Fun(y',x) induced by precomposition with u: y' -> y."""
    if u.codomain is not fg.domain or u.domain is not fg_sub.domain:
        raise InvalidStructure("restriction functor needs u: y' -> y")
    obj_map = tuple(fg_sub.object_index_of(fg.functors[i].after(u))
                    for i in range(len(fg.functors)))
    mor_map = []
    for i, j, comps in fg.mor_data:
        comps_sub = tuple(comps[u.on_object(a)] for a in range(u.domain.n_objects))
        mor_map.append(fg_sub.morphism_id(obj_map[i], obj_map[j], comps_sub))
    return GroupoidFunctor(fg.groupoid, fg_sub.groupoid, obj_map, tuple(mor_map),
                           name or f"(-o{u.name})")


def postcomposition_functor(fg, fg_post, v, name=None):
    """Fun(y,x) -> Fun(y,x') induced by postcomposition with v: x -> x'."""
    if v.domain is not fg.codomain or v.codomain is not fg_post.codomain:
        raise InvalidStructure("postcomposition functor needs v: x -> x'")
    obj_map = tuple(fg_post.object_index_of(v.after(fg.functors[i]))
                    for i in range(len(fg.functors)))
    mor_map = []
    for i, j, comps in fg.mor_data:
        comps_post = tuple(v.on_morphism(c) for c in comps)
        mor_map.append(fg_post.morphism_id(obj_map[i], obj_map[j], comps_post))
    return GroupoidFunctor(fg.groupoid, fg_post.groupoid, obj_map, tuple(mor_map),
                           name or f"({v.name}o-)")


# ---------------------------------------------------------------------------
# exponential law


def exponential_transpose(z, y, x, bound=FUNCTOR_BOUND):
    """The canonical functor Fun(z*y, x) -> Fun(z, Fun(y, x)).

    Returns (transpose, fun_zy, fun_z_yx); the two functor groupoids are the
    two sides of the exponential law.
    """
    zy = product(z, y)
    fun_zy = functor_groupoid(zy, x, bound)
    fun_yx = functor_groupoid(y, x, bound)
    fun_z_yx = functor_groupoid(z, fun_yx.groupoid, bound)
    nmh = y.n_morphisms

    def curry_object(i):
        F = fun_zy.functors[i]
        obj_of_a = []
        for a in range(z.n_objects):
            omap = tuple(F.on_object(a * y.n_objects + u) for u in range(y.n_objects))
            mmap = tuple(F.on_morphism(z.identity[a] * nmh + nn) for nn in range(nmh))
            obj_of_a.append(fun_yx.functor_index[(omap, mmap)])
        mor_of_m = []
        for m in range(z.n_morphisms):
            comps = tuple(F.on_morphism(m * nmh + y.identity[u])
                          for u in range(y.n_objects))
            mor_of_m.append(fun_yx.morphism_id(obj_of_a[z.source[m]],
                                               obj_of_a[z.target[m]], comps))
        return fun_z_yx.functor_index[(tuple(obj_of_a), tuple(mor_of_m))]

    obj_map = tuple(curry_object(i) for i in range(len(fun_zy.functors)))

    def curry_morphism(mid):
        i, j, comps = fun_zy.mor_data[mid]
        out_comps = []
        for a in range(z.n_objects):
            sub = tuple(comps[a * y.n_objects + u] for u in range(y.n_objects))
            ii = fun_z_yx.functors[obj_map[i]].on_object(a)
            jj = fun_z_yx.functors[obj_map[j]].on_object(a)
            out_comps.append(fun_yx.morphism_id(ii, jj, sub))
        return fun_z_yx.morphism_id(obj_map[i], obj_map[j], tuple(out_comps))

    mor_map = tuple(curry_morphism(mid) for mid in range(len(fun_zy.mor_data)))
    transpose = GroupoidFunctor(fun_zy.groupoid, fun_z_yx.groupoid,
                                obj_map, mor_map, "transpose")
    return transpose, fun_zy, fun_z_yx


def exponential_check(z, y, x, bound=FUNCTOR_BOUND):
    """Equivalence witness for Fun(z*y, x) = Fun(z, Fun(y, x))."""
    from .equivalence import as_equivalence
    transpose, _, _ = exponential_transpose(z, y, x, bound)
    transpose.verify()
    witness = as_equivalence(transpose)
    if witness is None:
        from .errors import VerificationError
        raise VerificationError("exponential transpose is not an equivalence")
    return witness


# ---------------------------------------------------------------------------
# iso-comma (2-fiber product)


@dataclass
class IsoCommaGroupoid:
    """Objects (x, y, phi: f(x) -> g(y)); morphisms are compatible pairs."""

    groupoid: FiniteGroupoid
    left: GroupoidFunctor
    right: GroupoidFunctor
    objects: list
    object_index: dict = field(repr=False)
    pr_left: GroupoidFunctor = None
    pr_right: GroupoidFunctor = None
    two_cell: NaturalTransformation = None
    _offsets: list = field(default=None, repr=False)

    def morphism_id(self, k, a, b):
        X, Y = self.left.domain, self.right.domain
        yo = self.objects[k][1]
        return (self._offsets[k]
                + X.position_in_out(a) * len(Y.out(yo))
                + Y.position_in_out(b))

    def morphism_parts(self, mid):
        g = self.groupoid
        return g.morphism_label(mid)  # (k, a, b) by construction


def iso_comma(f, g, name=None):
    """The groupoid of triples (x, y, phi: f(x) ~ g(y)) with both projections.

    The canonical 2-cell f . pr_left => g . pr_right has component phi at
    (x, y, phi).
    """
    if f.codomain is not g.codomain:
        raise InvalidStructure("iso_comma needs functors with a common codomain")
    X, Y, Z = f.domain, g.domain, f.codomain
    fo = [f.on_object(u) for u in range(X.n_objects)]
    go = [g.on_object(u) for u in range(Y.n_objects)]
    fm = [f.on_morphism(m) for m in range(X.n_morphisms)]
    gm = [g.on_morphism(m) for m in range(Y.n_morphisms)]

    objects = []
    object_index = {}
    for xo in range(X.n_objects):
        for yo in range(Y.n_objects):
            for phi in Z.hom(fo[xo], go[yo]):
                object_index[(xo, yo, phi)] = len(objects)
                objects.append((xo, yo, phi))

    offsets = []
    source = array("l")
    target = array("l")
    acc = 0
    z_compose = Z.compose
    z_inverse = Z.inverse
    for k, (xo, yo, phi) in enumerate(objects):
        offsets.append(acc)
        outs_a = X.out(xo)
        outs_b = Y.out(yo)
        acc += len(outs_a) * len(outs_b)
        for a in outs_a:
            left_leg = z_compose(phi, z_inverse(fm[a]))
            xt = X.target[a]
            for b in outs_b:
                phi2 = z_compose(gm[b], left_leg)
                source.append(k)
                target.append(object_index[(xt, Y.target[b], phi2)])

    # decode tables for the composition rule
    mor_a = array("l")
    mor_b = array("l")
    mor_k = array("l")
    for k, (xo, yo, phi) in enumerate(objects):
        for a in X.out(xo):
            for b in Y.out(yo):
                mor_k.append(k)
                mor_a.append(a)
                mor_b.append(b)

    y_out_len = [len(Y.out(o[1])) for o in objects]
    x_pos = X.position_in_out
    y_pos = Y.position_in_out

    def encode(k, a, b):
        return offsets[k] + x_pos(a) * y_out_len[k] + y_pos(b)

    identity = tuple(encode(k, X.identity[o[0]], Y.identity[o[1]])
                     for k, o in enumerate(objects))

    def inverse(mid):
        k, a, b = mor_k[mid], mor_a[mid], mor_b[mid]
        return encode(target[mid], X.inverse(a), Y.inverse(b))

    def compose(m2, m1):
        k1 = mor_k[m1]
        return encode(k1, X.compose(mor_a[m2], mor_a[m1]),
                      Y.compose(mor_b[m2], mor_b[m1]))

    def olabel(k):
        xo, yo, phi = objects[k]
        return (X.object_label(xo), Y.object_label(yo), Z.morphism_label(phi))

    def mlabel(mid):
        return (mor_k[mid], mor_a[mid], mor_b[mid])

    gpd = FiniteGroupoid(len(objects), source, target, identity, inverse, compose,
                         olabel, mlabel, name or f"({f.name} | {g.name})")
    gpd = _maybe_tabulate(gpd)

    pr_left = GroupoidFunctor(gpd, X, lambda k: objects[k][0],
                              lambda mid: mor_a[mid], "pr1")
    pr_right = GroupoidFunctor(gpd, Y, lambda k: objects[k][1],
                               lambda mid: mor_b[mid], "pr2")
    two_cell = NaturalTransformation(f.after(pr_left), g.after(pr_right),
                                     tuple(o[2] for o in objects), "phi")
    return IsoCommaGroupoid(gpd, f, g, objects, object_index,
                            pr_left, pr_right, two_cell, offsets)


def point_functor(g, obj, name=None):
    """The inclusion of a single object: terminal -> g."""
    from .groupoid import terminal
    pt = terminal()
    return GroupoidFunctor(pt, g, (obj,), (g.identity[obj],),
                           name or f"pt[{g.object_label(obj)}]")
