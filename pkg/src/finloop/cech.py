"""Covers of finite Alexandrov spaces and the torsor classes they carve out.

Convention, fixed once: open sets are down-sets of the specialization
preorder, so the minimal open neighborhood of p is everything below p.
Maps to a discrete-morphism groupoid are continuous iff they are constant
on order-connected components, so a cocycle on a cover stores one value per
component of each piece of the cover groupoid.

Classification quotients the disjoint union of all cocycle sets by (i)
natural isomorphism over a fixed cover (gauge moves) and (ii) pullback
along cover refinement, which is exactly the generalized-morphism
equivalence for presentations of the space.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import BoundExceeded, InvalidStructure, VerificationError
from .functor import GroupoidFunctor
from .groupoid import FiniteGroupoid

COVER_SIZE_DEFAULT = 4
COVER_FAMILY_BOUND = 5000       # max number of covers enumerated
COCYCLE_BOUND = 200_000         # max cocycles per cover


@dataclass(frozen=True)
class FiniteSpace:
    """A finite space as its specialization preorder (p <= q: p in closure q)."""

    points: tuple                 # labels
    leq: frozenset                # pairs (p, q) with p <= q, reflexive+transitive

    @property
    def n_points(self):
        return len(self.points)

    def below(self, p):
        """The minimal open neighborhood of p (a down-set)."""
        return frozenset(q for q in range(self.n_points) if (q, p) in self.leq)

    def is_open(self, subset):
        s = frozenset(subset)
        return all((q, p) not in self.leq or q in s
                   for p in s for q in range(self.n_points))

    def opens(self, include_empty=False):
        """All open sets, smallest first (sets of point indices)."""
        downs = []
        for size in range(0 if include_empty else 1, self.n_points + 1):
            for comb in itertools.combinations(range(self.n_points), size):
                if self.is_open(comb):
                    downs.append(frozenset(comb))
        return downs

    def order_components(self, subset):
        """Connected components of the comparability graph on a subset."""
        subset = sorted(subset)
        parent = {p: p for p in subset}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for p in subset:
            for q in subset:
                if (p, q) in self.leq or (q, p) in self.leq:
                    ra, rb = find(p), find(q)
                    if ra != rb:
                        parent[max(ra, rb)] = min(ra, rb)
        comps = {}
        for p in subset:
            comps.setdefault(find(p), []).append(p)
        return [tuple(comps[r]) for r in sorted(comps)]

    def minimal_cover(self):
        """The irredundant cover by minimal open neighborhoods."""
        downs = sorted({self.below(p) for p in range(self.n_points)},
                       key=lambda s: (len(s), sorted(s)))
        keep = [u for u in downs if not any(u < v for v in downs)]
        return OpenCover(self, tuple(sorted(keep, key=lambda s: (len(s), sorted(s)))))


def finite_space(points, relations):
    """Space from labels and generating pairs (p <= q), closed up."""
    idx = {p: i for i, p in enumerate(points)}
    if len(idx) != len(points):
        raise InvalidStructure("duplicate point labels")
    n = len(points)
    leq = {(i, i) for i in range(n)}
    for p, q in relations:
        leq.add((idx[p], idx[q]))
    changed = True
    while changed:
        changed = False
        for (a, b) in list(leq):
            for (c, d) in list(leq):
                if b == c and (a, d) not in leq:
                    leq.add((a, d))
                    changed = True
    return FiniteSpace(tuple(points), frozenset(leq))


def pseudo_circle():
    """The four-point space with the weak homotopy type of the circle."""
    return finite_space(("a", "b", "c", "d"),
                        [("a", "c"), ("b", "c"), ("a", "d"), ("b", "d")])


@dataclass(frozen=True)
class OpenCover:
    space: FiniteSpace
    opens: tuple                  # frozensets of point indices, canonical order

    def __post_init__(self):
        union = set()
        for u in self.opens:
            if not self.space.is_open(u):
                raise InvalidStructure(f"cover member {sorted(u)} is not open")
            union |= u
        if union != set(range(self.space.n_points)):
            raise InvalidStructure("sets do not cover the space")

    @property
    def size(self):
        return len(self.opens)


def whole_space_cover(space):
    return OpenCover(space, (frozenset(range(space.n_points)),))


def enumerate_covers(space, max_size=COVER_SIZE_DEFAULT,
                     family_bound=COVER_FAMILY_BOUND):
    """All covers by at most max_size opens, deduplicated up to reordering.

    The minimal-neighborhood cover is always present (it is enumerated as
    long as its size fits; its size never exceeds the point count).
    """
    opens = sorted(space.opens(), key=lambda s: (len(s), sorted(s)))
    total = sum(1 for r in range(1, max_size + 1)
                for _ in itertools.combinations(range(len(opens)), r))
    if total > family_bound:
        raise BoundExceeded("cover enumeration", family_bound, total)
    covers = []
    everything = set(range(space.n_points))
    for r in range(1, max_size + 1):
        for combo in itertools.combinations(opens, r):
            if set().union(*combo) == everything:
                covers.append(OpenCover(space, tuple(combo)))
    mc = space.minimal_cover()
    if mc.size <= max_size and not any(set(c.opens) == set(mc.opens) for c in covers):
        raise VerificationError("minimal cover missing from enumeration")
    return covers


# ---------------------------------------------------------------------------
# the cover groupoid


@dataclass
class CechGroupoid:
    """Pair groupoid of a cover: objects (i, p in U_i), one morphism per
    (i, j, p in U_i & U_j), together with the order-component structure that
    encodes the Alexandrov topology on each piece."""

    groupoid: FiniteGroupoid
    space: FiniteSpace
    cover: OpenCover
    obj_comps: list        # per cover index i: list of point tuples
    pair_comps: dict       # (i, j) i<j -> list of point tuples
    obj_comp_of: list      # per i: point -> component position
    pair_comp_of: dict     # (i, j) -> point -> component position


def cech_groupoid(space, cover):
    opens = cover.opens
    objects = []
    obj_index = {}
    for i, u in enumerate(opens):
        for p in sorted(u):
            obj_index[(i, p)] = len(objects)
            objects.append((i, p))

    morphisms = []
    mor_index = {}
    for i, u in enumerate(opens):
        for j, v in enumerate(opens):
            for p in sorted(u & v):
                mor_index[(i, j, p)] = len(morphisms)
                morphisms.append((i, j, p))

    source = tuple(obj_index[(i, p)] for i, j, p in morphisms)
    target = tuple(obj_index[(j, p)] for i, j, p in morphisms)
    identity = tuple(mor_index[(i, i, p)] for i, p in objects)
    inverse = tuple(mor_index[(j, i, p)] for i, j, p in morphisms)
    compose = {}
    for m1, (i, j, p) in enumerate(morphisms):
        for k in range(len(opens)):
            if p in opens[k]:
                compose[(mor_index[(j, k, p)], m1)] = mor_index[(i, k, p)]
    gpd = FiniteGroupoid(len(objects), source, target, identity, inverse, compose,
                         tuple((i, space.points[p]) for i, p in objects),
                         tuple((i, j, space.points[p]) for i, j, p in morphisms),
                         f"K[{len(opens)} opens]")

    obj_comps = [space.order_components(u) for u in opens]
    obj_comp_of = []
    for comps in obj_comps:
        table = {}
        for c, pts in enumerate(comps):
            for p in pts:
                table[p] = c
        obj_comp_of.append(table)
    pair_comps = {}
    pair_comp_of = {}
    for i in range(len(opens)):
        for j in range(i + 1, len(opens)):
            inter = opens[i] & opens[j]
            comps = space.order_components(inter) if inter else []
            pair_comps[(i, j)] = comps
            table = {}
            for c, pts in enumerate(comps):
                for p in pts:
                    table[p] = c
            pair_comp_of[(i, j)] = table
    return CechGroupoid(gpd, space, cover, obj_comps, pair_comps,
                        obj_comp_of, pair_comp_of)


# ---------------------------------------------------------------------------
# cocycles


@dataclass(frozen=True)
class CechCocycle:
    """A continuous functor from the cover groupoid to a discrete-target
    groupoid: one object of x per component of each piece U_i, one morphism
    per component of each overlap, satisfying the triple condition."""

    cech: CechGroupoid
    target: FiniteGroupoid
    obj_values: tuple       # per (i, comp) in canonical order
    pair_values: tuple      # per (i<j, comp) in canonical order

    def __post_init__(self):
        _index_slots(self.cech)
        x = self.target
        for slot, (i, j, c) in enumerate(sorted(self.cech._pair_slot,
                                                key=self.cech._pair_slot.get)):
            p = self.cech.pair_comps[(i, j)][c][0]
            m = self.pair_values[slot]
            if x.source[m] != self.value_on_object(i, p) or \
               x.target[m] != self.value_on_object(j, p):
                raise VerificationError("cocycle value has wrong endpoints")
        for tij, tjk, tik in self.cech._triples:
            if x.compose(self.pair_values[tjk], self.pair_values[tij]) != \
               self.pair_values[tik]:
                raise VerificationError("triple-overlap condition fails")

    def key(self):
        return (self.obj_values, self.pair_values)

    def value_on_object(self, i, p):
        pos = self.cech._obj_slot[(i, self.cech.obj_comp_of[i][p])]
        return self.obj_values[pos]

    def value_on_pair(self, i, j, p):
        """The x-morphism assigned over p in U_i & U_j, any i, j."""
        x = self.target
        if i == j:
            return x.identity[self.value_on_object(i, p)]
        if i < j:
            pos = self.cech._pair_slot[(i, j, self.cech.pair_comp_of[(i, j)][p])]
            return self.pair_values[pos]
        pos = self.cech._pair_slot[(j, i, self.cech.pair_comp_of[(j, i)][p])]
        return x.inverse(self.pair_values[pos])

    def as_functor(self):
        g = self.cech.groupoid
        obj_map = []
        for k in range(g.n_objects):
            i, p = g.object_label(k)
            i_p = self.cech.space.points.index(p)
            obj_map.append(self.value_on_object(i, i_p))
        mor_map = []
        for m in range(g.n_morphisms):
            i, j, p = g.morphism_label(m)
            i_p = self.cech.space.points.index(p)
            mor_map.append(self.value_on_pair(i, j, i_p))
        return GroupoidFunctor(g, self.target, tuple(obj_map), tuple(mor_map),
                               "cocycle")


def _index_slots(cech):
    """Canonical positions for (i, comp) and (i, j, comp) variables."""
    if getattr(cech, "_obj_slot", None) is not None:
        return
    obj_slot = {}
    for i, comps in enumerate(cech.obj_comps):
        for c in range(len(comps)):
            obj_slot[(i, c)] = len(obj_slot)
    pair_slot = {}
    for (i, j), comps in sorted(cech.pair_comps.items()):
        for c in range(len(comps)):
            pair_slot[(i, j, c)] = len(pair_slot)
    cech._obj_slot = obj_slot
    cech._pair_slot = pair_slot
    # triples: for each i<j<k and each component of the triple overlap,
    # the three pair components it relates (via a representative point)
    n = len(cech.cover.opens)
    triples = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                inter = cech.cover.opens[i] & cech.cover.opens[j] & cech.cover.opens[k]
                if not inter:
                    continue
                for pts in cech.space.order_components(inter):
                    p = pts[0]
                    triples.append((
                        pair_slot[(i, j, cech.pair_comp_of[(i, j)][p])],
                        pair_slot[(j, k, cech.pair_comp_of[(j, k)][p])],
                        pair_slot[(i, k, cech.pair_comp_of[(i, k)][p])]))
    cech._triples = triples


CechGroupoid._obj_slot = None
CechGroupoid._pair_slot = None
CechGroupoid._triples = None


def hom_space(cech, x, bound=COCYCLE_BOUND):
    """All continuous functors from the cover groupoid to x.

    Backtracking over object-component values then overlap-component values,
    checking each triple-overlap condition as soon as its three overlap
    values exist.
    """
    _index_slots(cech)
    obj_vars = sorted(cech._obj_slot, key=cech._obj_slot.get)
    pair_vars = sorted(cech._pair_slot, key=cech._pair_slot.get)
    # triples indexed by the last-assigned pair slot
    triples_by_last = {}
    for tij, tjk, tik in cech._triples:
        triples_by_last.setdefault(max(tij, tjk, tik), []).append((tij, tjk, tik))

    out = []
    obj_assign = [None] * len(obj_vars)
    pair_assign = [None] * len(pair_vars)

    def endpoints(slot):
        i, j, c = pair_vars[slot]
        p = cech.pair_comps[(i, j)][c][0]
        a = cech._obj_slot[(i, cech.obj_comp_of[i][p])]
        b = cech._obj_slot[(j, cech.obj_comp_of[j][p])]
        return a, b

    def rec_pairs(slot):
        if slot == len(pair_vars):
            out.append(CechCocycle(cech, x, tuple(obj_assign), tuple(pair_assign)))
            if len(out) > bound:
                raise BoundExceeded("cocycle enumeration", bound)
            return
        a, b = endpoints(slot)
        for m in x.hom(obj_assign[a], obj_assign[b]):
            pair_assign[slot] = m
            ok = True
            for tij, tjk, tik in triples_by_last.get(slot, ()):
                if x.compose(pair_assign[tjk], pair_assign[tij]) != pair_assign[tik]:
                    ok = False
                    break
            if ok:
                rec_pairs(slot + 1)
        pair_assign[slot] = None

    def rec_objs(slot):
        if slot == len(obj_vars):
            rec_pairs(0)
            return
        for u in range(x.n_objects):
            obj_assign[slot] = u
            rec_objs(slot + 1)
        obj_assign[slot] = None

    rec_objs(0)
    return out


# ---------------------------------------------------------------------------
# classification


def _component_graph(cech):
    """Vertices = object components, edges = overlap components (i<j)."""
    _index_slots(cech)
    n_v = len(cech._obj_slot)
    edges = []
    for slot, (i, j, c) in enumerate(sorted(cech._pair_slot, key=cech._pair_slot.get)):
        p = cech.pair_comps[(i, j)][c][0]
        a = cech._obj_slot[(i, cech.obj_comp_of[i][p])]
        b = cech._obj_slot[(j, cech.obj_comp_of[j][p])]
        edges.append((slot, a, b))
    return n_v, edges


def _gauge_apply(cech, x, cocycle, eta):
    """Gauge move: eta[v] is a morphism out of the current object value."""
    obj = list(cocycle.obj_values)
    pair = list(cocycle.pair_values)
    n_v, edges = _component_graph(cech)
    for v in range(n_v):
        obj[v] = x.target[eta[v]]
    for slot, a, b in edges:
        pair[slot] = x.compose(x.compose(eta[b], cocycle.pair_values[slot]),
                               x.inverse(eta[a]))
    return CechCocycle(cech, x, tuple(obj), tuple(pair))


def _tree_fixed_form(cech, x, cocycle):
    """Gauge the cocycle so that a fixed spanning forest carries identities."""
    n_v, edges = _component_graph(cech)
    adj = [[] for _ in range(n_v)]
    for slot, a, b in edges:
        adj[a].append((slot, b, 1))
        adj[b].append((slot, a, -1))
    eta = [None] * n_v
    bases = []
    for v in range(n_v):
        if eta[v] is not None:
            continue
        bases.append(v)
        eta[v] = x.identity[cocycle.obj_values[v]]
        frontier = [v]
        while frontier:
            nxt = []
            for u in frontier:
                for slot, other, direction in adj[u]:
                    if eta[other] is None:
                        g = cocycle.pair_values[slot]
                        if direction == 1:
                            eta[other] = x.compose(eta[u], x.inverse(g))
                        else:
                            eta[other] = x.compose(eta[u], g)
                        nxt.append(other)
            frontier = nxt
    return _gauge_apply(cech, x, cocycle, eta), bases


def canonical_cocycle(cech, x, cocycle):
    """Least gauge-equivalent form: tree-fix, then minimize over the
    residual constant gauges per graph component."""
    fixed, bases = _tree_fixed_form(cech, x, cocycle)
    n_v, edges = _component_graph(cech)
    comp_of = [None] * n_v
    adj = [[] for _ in range(n_v)]
    for slot, a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    for ci, v in enumerate(bases):
        stack = [v]
        comp_of[v] = ci
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if comp_of[w] is None:
                    comp_of[w] = ci
                    stack.append(w)
    for v in range(n_v):
        if comp_of[v] is None:  # isolated vertex
            comp_of[v] = bases.index(v)

    best = None
    choice_sets = [x.out(fixed.obj_values[b]) for b in bases]
    for choice in itertools.product(*choice_sets):
        eta = [choice[comp_of[v]] for v in range(n_v)]
        cand = _gauge_apply(cech, x, fixed, eta).key()
        if best is None or cand < best:
            best = cand
    return best


@dataclass
class TorsorClassification:
    space: FiniteSpace
    target: FiniteGroupoid
    covers: list                    # enumerated covers
    classes: list                   # per class: (cover position, canonical key)
    class_of_node: dict = field(repr=False)
    cocycle_counts: list = None     # per cover

    @property
    def n_classes(self):
        return len(self.classes)

    def classes_hit_by_cover(self, position):
        hit = set()
        for (pos, key), cls in self.class_of_node.items():
            if pos == position:
                hit.add(cls)
        return sorted(hit)


def _refinement_map(fine, coarse):
    """r with fine.opens[j] contained in coarse.opens[r[j]], least such; None if none."""
    r = []
    for u in fine.opens:
        i = next((i for i, v in enumerate(coarse.opens) if u <= v), None)
        if i is None:
            return None
        r.append(i)
    return r


def _pullback(cech_fine, cech_coarse, r, cocycle, x):
    """Restrict a cocycle along a refinement map."""
    _index_slots(cech_fine)
    obj = []
    for (i, c) in sorted(cech_fine._obj_slot, key=cech_fine._obj_slot.get):
        p = cech_fine.obj_comps[i][c][0]
        obj.append(cocycle.value_on_object(r[i], p))
    pair = []
    for (i, j, c) in sorted(cech_fine._pair_slot, key=cech_fine._pair_slot.get):
        p = cech_fine.pair_comps[(i, j)][c][0]
        pair.append(cocycle.value_on_pair(r[i], r[j], p))
    return CechCocycle(cech_fine, x, tuple(obj), tuple(pair))


def classify_hs(space, x, cover_max_size=COVER_SIZE_DEFAULT,
                family_bound=COVER_FAMILY_BOUND, cocycle_bound=COCYCLE_BOUND):
    """Cocycles on all enumerated covers modulo gauge moves and refinement.

    Class representatives are deterministic: least (cover position,
    canonical cocycle key).
    """
    covers = enumerate_covers(space, cover_max_size, family_bound)
    cechs = [cech_groupoid(space, cov) for cov in covers]
    all_cocycles = [hom_space(c, x, cocycle_bound) for c in cechs]

    nodes = {}
    node_reps = {}
    for pos, (cech, cocycles) in enumerate(zip(cechs, all_cocycles)):
        for cc in cocycles:
            key = canonical_cocycle(cech, x, cc)
            node = (pos, key)
            if node not in nodes:
                nodes[node] = node
                node_reps[node] = cc

    parent = {node: node for node in nodes}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for pos_f, (cov_f, cech_f) in enumerate(zip(covers, cechs)):
        for pos_c, (cov_c, cech_c) in enumerate(zip(covers, cechs)):
            if pos_f == pos_c:
                continue
            r = _refinement_map(cov_f, cov_c)
            if r is None:
                continue
            for node, rep in list(node_reps.items()):
                if node[0] != pos_c:
                    continue
                pulled = _pullback(cech_f, cech_c, r, rep, x)
                key = canonical_cocycle(cech_f, x, pulled)
                if (pos_f, key) in parent:
                    union(node, (pos_f, key))
                else:
                    # a pulled-back cocycle is itself a cocycle; it must
                    # already have been enumerated over the finer cover
                    raise VerificationError("pullback escaped the enumeration")

    roots = sorted({find(n) for n in parent})
    class_of_node = {n: roots.index(find(n)) for n in parent}
    return TorsorClassification(space, x, covers, roots, class_of_node,
                                [len(cs) for cs in all_cocycles])


@dataclass
class AtlasReport:
    classification: TorsorClassification
    minimal_cover_position: int
    whole_space_position: int
    hit_by_minimal: list
    hit_by_whole: list
    every_class_enumerated: bool

    def __str__(self):
        n = self.classification.n_classes
        return (f"{n} classes; minimal cover reaches {len(self.hit_by_minimal)}, "
                f"whole-space cover reaches {len(self.hit_by_whole)}; "
                f"atlas reaches all: {self.every_class_enumerated}")


def atlas_epimorphism_check(space, x, cover_max_size=COVER_SIZE_DEFAULT,
                            family_bound=COVER_FAMILY_BOUND,
                            cocycle_bound=COCYCLE_BOUND):
    """Confirm every torsor class is reached by a cocycle on some enumerated
    cover, and record which classes the two canonical covers already reach."""
    cls = classify_hs(space, x, cover_max_size, family_bound, cocycle_bound)
    mc = space.minimal_cover()
    pos_min = next((i for i, c in enumerate(cls.covers)
                    if set(c.opens) == set(mc.opens)), None)
    ws = whole_space_cover(space)
    pos_whole = next((i for i, c in enumerate(cls.covers)
                      if set(c.opens) == set(ws.opens)), None)
    if pos_min is None or pos_whole is None:
        raise BoundExceeded("cover enumeration (canonical covers missing)",
                            cover_max_size)
    reached = {cls.class_of_node[n] for n in cls.class_of_node}
    every = reached == set(range(cls.n_classes))
    return AtlasReport(cls, pos_min, pos_whole,
                       cls.classes_hit_by_cover(pos_min),
                       cls.classes_hit_by_cover(pos_whole), every)
