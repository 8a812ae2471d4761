"""Strict pushouts of finite groupoids along a span y <- a -> z.

The pushout is presented by the morphisms of y and z as generators (modulo
the identifications coming from a) and their composition tables as
relations.  Collapsing a spanning tree per component turns each vertex
group into a finitely presented group, which a bounded coset enumeration
either finishes (status "finite") or abandons (status "aborted" - gluing
groupoids can genuinely blow up to infinite free products).

Every resulting morphism keeps a generator word, so cocones factor through
the pushout by evaluating words; this is what the universal-property tests
exercise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BoundExceeded, InvalidStructure
from .functor import GroupoidFunctor
from .groupoid import FiniteGroupoid, _maybe_tabulate

PUSHOUT_BOUND = 10 ** 4


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra > rb:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass
class FinitePushout:
    status: str                               # "finite" | "aborted"
    groupoid: FiniteGroupoid = None
    into_left: GroupoidFunctor = None         # y -> pushout
    into_right: GroupoidFunctor = None        # z -> pushout
    left_leg: GroupoidFunctor = None          # a -> y (the input span)
    right_leg: GroupoidFunctor = None         # a -> z
    reason: str = None
    _internals: dict = field(default=None, repr=False)

    def morphism_word(self, mid):
        """The morphism as [(letter-class, sign), ...] in application order.

        Letters are morphisms of y or z transported into the pushout; every
        pushout morphism is such a composite, which is what makes induced
        cocone functors unique.
        """
        it = self._internals
        comp, u, w, g = it["decode"](mid)
        return _assemble_word(it, comp, u, w, g)

    def class_member(self, cls):
        """A concrete (side, morphism) representative of a letter class."""
        return self._internals["class_member"][cls]


def _inv_word(word):
    return [(cls, -sign) for cls, sign in reversed(word)]


def _assemble_word(internals, comp, u, w, g):
    """(u, w, g) as a letter word: path(w) . expand(g) . path(u)^-1.

    Reported in application order (first letter acts first); the enumerated
    group already stores element words in application order.
    """
    it = internals
    out = _inv_word(it["tree_path"][u])
    for x in it["enum"][comp].words[g]:
        cls = it["gen_class"][comp][x // 2]
        sign = 1 if x % 2 == 0 else -1
        ue, we = it["class_ends"][cls]
        seg = it["tree_path"][ue] + [(cls, 1)] + _inv_word(it["tree_path"][we])
        out.extend(seg if sign > 0 else _inv_word(seg))
    out.extend(it["tree_path"][w])
    return out


def pushout(a_to_y, a_to_z, bound=PUSHOUT_BOUND):
    """Strict pushout of groupoids; aborts (as a status) past ``bound`` morphisms."""
    if a_to_y.domain is not a_to_z.domain:
        raise InvalidStructure("pushout needs a span with a shared domain")
    a = a_to_y.domain
    y, z = a_to_y.codomain, a_to_z.codomain
    n_y, n_z = y.n_objects, z.n_objects

    # --- objects: coequalize along a ---------------------------------------
    verts = _UnionFind(n_y + n_z)
    for ao in range(a.n_objects):
        verts.union(a_to_y.on_object(ao), n_y + a_to_z.on_object(ao))
    vert_index = {}
    vertex_of = []
    for node in range(n_y + n_z):
        r = verts.find(node)
        if r not in vert_index:
            vert_index[r] = len(vert_index)
        vertex_of.append(vert_index[r])
    n_vertices = len(vert_index)

    # --- letters: non-identity morphisms modulo a-identifications -----------
    def letter(side, m):
        return m if side == 0 else y.n_morphisms + m

    letters = _UnionFind(y.n_morphisms + z.n_morphisms)
    trivial = set()
    for am in range(a.n_morphisms):
        my, mz = a_to_y.on_morphism(am), a_to_z.on_morphism(am)
        iy, iz = y.is_identity(my), z.is_identity(mz)
        if iy and iz:
            continue
        if iy:
            trivial.add(letters.find(letter(1, mz)))
        elif iz:
            trivial.add(letters.find(letter(0, my)))
        else:
            letters.union(letter(0, my), letter(1, mz))
    # normalize the trivial set after all unions
    trivial = {letters.find(t) for t in trivial}

    def class_of(side, m):
        r = letters.find(letter(side, m))
        return None if r in trivial else r

    # class endpoints and a concrete member per class
    class_ends = {}
    class_member = {}
    sides = ((0, y), (1, z))
    for side, grp in sides:
        for m in range(grp.n_morphisms):
            if grp.is_identity(m):
                continue
            cls = class_of(side, m)
            if cls is None:
                continue
            su = vertex_of[grp.source[m] + (0 if side == 0 else n_y)]
            tv = vertex_of[grp.target[m] + (0 if side == 0 else n_y)]
            if cls in class_ends and class_ends[cls] != (su, tv):
                raise InvalidStructure("glued morphisms have mismatched endpoints")
            class_ends.setdefault(cls, (su, tv))
            if cls not in class_member:
                class_member[cls] = (side, m)

    # --- components and spanning trees ---------------------------------------
    comp_uf = _UnionFind(n_vertices)
    for cls, (su, tv) in class_ends.items():
        comp_uf.union(su, tv)
    comp_index = {}
    comp_of = []
    for v in range(n_vertices):
        r = comp_uf.find(v)
        if r not in comp_index:
            comp_index[r] = len(comp_index)
        comp_of.append(comp_index[r])
    n_comps = len(comp_index)
    comp_vertices = [[] for _ in range(n_comps)]
    for v in range(n_vertices):
        comp_vertices[comp_of[v]].append(v)

    adj = [[] for _ in range(n_vertices)]  # v -> [(class, sign, other end)]
    for cls, (su, tv) in sorted(class_ends.items()):
        adj[su].append((cls, 1, tv))
        adj[tv].append((cls, -1, su))

    tree_path = [None] * n_vertices  # application-order letter word base -> v
    tree_classes = set()
    for vs in comp_vertices:
        base = vs[0]
        tree_path[base] = []
        frontier = [base]
        while frontier:
            nxt = []
            for v in frontier:
                for cls, sign, other in adj[v]:
                    if tree_path[other] is None:
                        tree_path[other] = tree_path[v] + [(cls, sign)]
                        tree_classes.add(cls)
                        nxt.append(other)
            frontier = nxt

    # --- presentations per component ------------------------------------------
    gen_class = [[] for _ in range(n_comps)]   # per comp: class of each generator
    gen_of_class = {}
    for cls in sorted(class_ends):
        c = comp_of[class_ends[cls][0]]
        gen_of_class[cls] = len(gen_class[c])
        gen_class[c].append(cls)

    relators = [[] for _ in range(n_comps)]
    for c in range(n_comps):
        for cls in gen_class[c]:
            if cls in tree_classes:
                relators[c].append([(gen_of_class[cls], 1)])
    for side, grp in sides:
        for m2, m1 in grp.composable_pairs():
            if grp.is_identity(m1) or grp.is_identity(m2):
                continue
            m3 = grp.compose(m2, m1)
            word = []
            comp_hint = None
            for m, sign in ((m2, 1), (m1, 1), (m3, -1)):
                if grp.is_identity(m):
                    continue
                cls = class_of(side, m)
                if cls is None:
                    continue
                word.append((gen_of_class[cls], sign))
                comp_hint = comp_of[class_ends[cls][0]]
            if word and comp_hint is not None:
                relators[comp_hint].append(word)

    # --- enumerate vertex groups -----------------------------------------------
    from .fpgroup import enumerate_fp_group
    enum = []
    total = 0
    for c in range(n_comps):
        try:
            eg = enumerate_fp_group(len(gen_class[c]), relators[c],
                                    max_cosets=4 * bound + 1000)
        except BoundExceeded as e:
            return FinitePushout("aborted", left_leg=a_to_y, right_leg=a_to_z,
                                 reason=str(e))
        enum.append(eg)
        total += len(eg.group) * len(comp_vertices[c]) ** 2
        if total > bound:
            return FinitePushout(
                "aborted", left_leg=a_to_y, right_leg=a_to_z,
                reason=f"pushout would have more than {bound} morphisms")

    # --- materialize the groupoid ----------------------------------------------
    # morphism (comp, u, w, g) encoded blockwise per component
    pos_in_comp = [0] * n_vertices
    for vs in comp_vertices:
        for k, v in enumerate(vs):
            pos_in_comp[v] = k
    block = []
    off = 0
    for c in range(n_comps):
        block.append(off)
        off += len(comp_vertices[c]) ** 2 * len(enum[c].group)
    n_mor = off

    def encode(c, u, w, g):
        nv, ng = len(comp_vertices[c]), len(enum[c].group)
        return block[c] + (pos_in_comp[u] * nv + pos_in_comp[w]) * ng + g

    def decode(mid):
        c = n_comps - 1
        while block[c] > mid:
            c -= 1
        rest = mid - block[c]
        nv, ng = len(comp_vertices[c]), len(enum[c].group)
        uw, g = divmod(rest, ng)
        pu, pw = divmod(uw, nv)
        return c, comp_vertices[c][pu], comp_vertices[c][pw], g

    source, target = [], []
    for c in range(n_comps):
        for u in comp_vertices[c]:
            for w in comp_vertices[c]:
                for g in range(len(enum[c].group)):
                    source.append(u)
                    target.append(w)
    identity = tuple(encode(comp_of[v], v, v, enum[comp_of[v]].group.identity)
                     for v in range(n_vertices))

    def inverse(mid):
        c, u, w, g = decode(mid)
        return encode(c, w, u, enum[c].group.inv(g))

    def compose(m2, m1):
        c, u, w, g = decode(m1)
        c2, w2, s, h = decode(m2)
        return encode(c, u, s, enum[c].group.mul(h, g))

    def olabel(v):
        node = next(n for n in range(n_y + n_z) if vertex_of[n] == v)
        if node < n_y:
            return ("y", y.object_label(node))
        return ("z", z.object_label(node - n_y))

    po_gpd = FiniteGroupoid(n_vertices, source, target, identity, inverse,
                            compose, olabel, lambda mid: decode(mid),
                            f"({y.name} v {z.name})")
    po_gpd = _maybe_tabulate(po_gpd)

    # --- structure functors -------------------------------------------------------
    def leg_maps(side, grp, obj_off):
        def omap(x):
            return vertex_of[x + obj_off]

        def mmap(m):
            v = vertex_of[grp.source[m] + obj_off]
            w = vertex_of[grp.target[m] + obj_off]
            c = comp_of[v]
            if grp.is_identity(m):
                return encode(c, v, v, enum[c].group.identity)
            cls = class_of(side, m)
            if cls is None:
                g = enum[c].group.identity
            else:
                # gamma(class) is exactly the presentation generator
                g = enum[c].gen_element[gen_of_class[cls]]
            return encode(c, v, w, g)

        return omap, mmap

    oy, my = leg_maps(0, y, 0)
    oz, mz = leg_maps(1, z, n_y)
    into_left = GroupoidFunctor(y, po_gpd, oy, my, "into_y")
    into_right = GroupoidFunctor(z, po_gpd, oz, mz, "into_z")

    internals = dict(decode=decode, enum=enum, tree_path=tree_path,
                     gen_class=gen_class, class_ends=class_ends,
                     class_member=class_member)
    return FinitePushout("finite", po_gpd, into_left, into_right,
                         a_to_y, a_to_z, None, internals)


def induced_cocone(po, f_y, f_z, name="induced"):
    """The unique functor pushout -> w with H.into_left = f_y, H.into_right = f_z.

    Raises InvalidStructure if (f_y, f_z) is not a strict cocone over the span.
    """
    if po.status != "finite":
        raise InvalidStructure("pushout was aborted; no groupoid to map out of")
    a = po.left_leg.domain
    w = f_y.codomain
    if f_z.codomain is not w:
        raise InvalidStructure("cocone legs must share a codomain")
    for ao in range(a.n_objects):
        if f_y.on_object(po.left_leg.on_object(ao)) != \
           f_z.on_object(po.right_leg.on_object(ao)):
            raise InvalidStructure("cocone does not agree on objects of the span")
    for am in range(a.n_morphisms):
        if f_y.on_morphism(po.left_leg.on_morphism(am)) != \
           f_z.on_morphism(po.right_leg.on_morphism(am)):
            raise InvalidStructure("cocone does not agree on morphisms of the span")

    p = po.groupoid
    y = po.into_left.domain

    obj_vals = {}
    for x in range(y.n_objects):
        obj_vals[po.into_left.on_object(x)] = f_y.on_object(x)
    z = po.into_right.domain
    for x in range(z.n_objects):
        v = po.into_right.on_object(x)
        val = f_z.on_object(x)
        if obj_vals.setdefault(v, val) != val:
            raise InvalidStructure("cocone legs disagree on a glued object")

    def letter_value(cls, sign):
        side, m = po.class_member(cls)
        val = f_y.on_morphism(m) if side == 0 else f_z.on_morphism(m)
        return val if sign > 0 else w.inverse(val)

    def mor_map(mid):
        word = po.morphism_word(mid)
        acc = w.identity[obj_vals[p.source[mid]]]
        for cls, sign in word:
            acc = w.compose(letter_value(cls, sign), acc)
        return acc

    return GroupoidFunctor(p, w, lambda v: obj_vals[v], mor_map, name)


# ---------------------------------------------------------------------------
# the gluing square


def gluing_check(a_to_y, a_to_z, x, pushout_bound=PUSHOUT_BOUND,
                 functor_bound=None):
    """Witness that Fun(y v_a z, x) is the 2-pullback of the restrictions.

    Builds the comparison functor F |-> (F.into_left, F.into_right, id) into
    the iso-comma of Fun(y,x) -> Fun(a,x) <- Fun(z,x) and certifies it as an
    equivalence.
    """
    from .equivalence import as_equivalence
    from .errors import VerificationError
    from .mapping import FUNCTOR_BOUND, functor_groupoid, iso_comma, restriction_functor

    if functor_bound is None:
        functor_bound = FUNCTOR_BOUND
    po = pushout(a_to_y, a_to_z, pushout_bound)
    if po.status != "finite":
        raise BoundExceeded("pushout", pushout_bound)
    a = a_to_y.domain
    y, z = a_to_y.codomain, a_to_z.codomain

    fun_p = functor_groupoid(po.groupoid, x, functor_bound)
    fun_y = functor_groupoid(y, x, functor_bound)
    fun_z = functor_groupoid(z, x, functor_bound)
    fun_a = functor_groupoid(a, x, functor_bound)
    rest_y = restriction_functor(fun_y, fun_a, a_to_y)
    rest_z = restriction_functor(fun_z, fun_a, a_to_z)
    comma = iso_comma(rest_y, rest_z)

    def obj_map(i):
        F = fun_p.functors[i]
        iy = fun_y.object_index_of(F.after(po.into_left))
        iz = fun_z.object_index_of(F.after(po.into_right))
        if rest_y.on_object(iy) != rest_z.on_object(iz):
            raise VerificationError("pushout square does not strictly commute")
        phi = fun_a.groupoid.identity[rest_y.on_object(iy)]
        return comma.object_index[(iy, iz, phi)]

    objs = tuple(obj_map(i) for i in range(len(fun_p.functors)))

    mor_ids = []
    for mid in range(fun_p.groupoid.n_morphisms):
        i, j, comps = fun_p.mor_data[mid]
        ky = fun_y.morphism_id(
            fun_y.object_index_of(fun_p.functors[i].after(po.into_left)),
            fun_y.object_index_of(fun_p.functors[j].after(po.into_left)),
            tuple(comps[po.into_left.on_object(u)] for u in range(y.n_objects)))
        kz = fun_z.morphism_id(
            fun_z.object_index_of(fun_p.functors[i].after(po.into_right)),
            fun_z.object_index_of(fun_p.functors[j].after(po.into_right)),
            tuple(comps[po.into_right.on_object(u)] for u in range(z.n_objects)))
        mor_ids.append(comma.morphism_id(objs[i], ky, kz))

    comparison = GroupoidFunctor(fun_p.groupoid, comma.groupoid, objs,
                                 tuple(mor_ids), "gluing-comparison")
    comparison.verify()
    witness = as_equivalence(comparison)
    if witness is None:
        raise VerificationError("gluing comparison is not an equivalence")
    return witness
