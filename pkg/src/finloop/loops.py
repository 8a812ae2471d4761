"""Free loops on a finite groupoid: the inertia construction and friends.

A functor from the circle (modelled as the one-object groupoid with
automorphism group Z) into x is determined by the image of the generating
loop, so loop points are simply pairs (object, automorphism) and the circle
itself is never materialized.  For x = BG this gives the conjugation action:
components are conjugacy classes and the automorphisms of a loop point are
the centralizer of its group element.
"""

from __future__ import annotations

from dataclasses import dataclass

from .equivalence import EquivalenceWitness, as_equivalence
from .errors import InvalidStructure, VerificationError
from .functor import GroupoidFunctor
from .group import FiniteGroup
from .groupoid import FiniteGroupoid, action_groupoid, b_group, disjoint_union, _maybe_tabulate


@dataclass(frozen=True)
class LoopPoint:
    base: int          # object of the underlying groupoid
    automorphism: int  # morphism id, an automorphism of that object


@dataclass
class InertiaGroupoid:
    groupoid: FiniteGroupoid
    base: FiniteGroupoid
    loop_points: list           # LoopPoint per object
    evaluation: GroupoidFunctor  # sends (u, g) to u

    def point_index(self, base_obj, automorphism):
        return self._index[(base_obj, automorphism)]

    _index: dict = None


def inertia_groupoid(x):
    """Objects (u, g in aut(u)); morphisms h: (u, g) -> (u', h g h^-1)."""
    points = []
    index = {}
    for u in range(x.n_objects):
        for m in x.out(u):
            if x.target[m] == u:
                index[(u, m)] = len(points)
                points.append(LoopPoint(u, m))

    # morphism (k, h) for h in out(base of k); encoded blockwise
    offsets = []
    source, target = [], []
    conj = []
    acc = 0
    for k, pt in enumerate(points):
        offsets.append(acc)
        outs = x.out(pt.base)
        acc += len(outs)
        for h in outs:
            g2 = x.compose(h, x.compose(pt.automorphism, x.inverse(h)))
            source.append(k)
            target.append(index[(x.target[h], g2)])
            conj.append(h)

    def encode(k, h):
        return offsets[k] + x.position_in_out(h)

    identity = tuple(encode(k, x.identity[pt.base]) for k, pt in enumerate(points))

    def inverse(mid):
        return encode(target[mid], x.inverse(conj[mid]))

    def compose(m2, m1):
        return encode(source[m1], x.compose(conj[m2], conj[m1]))

    def olabel(k):
        pt = points[k]
        return (x.object_label(pt.base), x.morphism_label(pt.automorphism))

    gpd = FiniteGroupoid(len(points), source, target, identity, inverse, compose,
                         olabel, lambda mid: (olabel(source[mid]),
                                              x.morphism_label(conj[mid])),
                         f"L({x.name})")
    gpd = _maybe_tabulate(gpd)
    ev = GroupoidFunctor(gpd, x, lambda k: points[k].base,
                         lambda mid: conj[mid], "ev")
    out = InertiaGroupoid(gpd, x, points, ev)
    out._index = index
    return out


# ---------------------------------------------------------------------------
# conjugacy bookkeeping


@dataclass
class ConjugacyTable:
    group: FiniteGroup
    representatives: tuple      # least element of each class
    class_of: tuple             # element -> class index
    classes: tuple              # per class: sorted member tuple
    centralizers: tuple         # per class: (FiniteGroup, parent element indices)

    def __post_init__(self):
        n = len(self.group)
        for members, (cent, _) in zip(self.classes, self.centralizers):
            if len(members) * len(cent) != n:
                raise VerificationError("class size times centralizer order != |G|")


def conjugacy(group):
    """Conjugacy classes with canonical (least) representatives."""
    classes = tuple(tuple(c) for c in group.conjugacy_classes())
    class_of = [None] * len(group)
    for i, member_list in enumerate(classes):
        for m in member_list:
            class_of[m] = i
    cents = tuple(group.subgroup(group.centralizer(c[0]),
                                 name=f"Z({group.labels[c[0]]})")
                  for c in classes)
    return ConjugacyTable(group, tuple(c[0] for c in classes),
                          tuple(class_of), classes, cents)


def twisted_loop_group(group, alpha):
    """The loops twisted by alpha: for a discrete group, its centralizer."""
    if not 0 <= alpha < len(group):
        raise InvalidStructure("alpha must be an element of the group")
    return group.subgroup(group.centralizer(alpha),
                          name=f"Z({group.labels[alpha]})")[0]


def based_twisted_loop_group(group, alpha):
    """Twisted loops sending 0 to the identity: trivial for a discrete group."""
    if not 0 <= alpha < len(group):
        raise InvalidStructure("alpha must be an element of the group")
    return FiniteGroup.trivial()


@dataclass(frozen=True)
class ClutchingDatum:
    """A torsor over the circle: trivial on an interval, glued by an element.

    Its isomorphism class is the conjugacy class of the gluing element, and
    its automorphism group is the corresponding twisted loop group.
    """

    group: FiniteGroup
    element: int

    def __post_init__(self):
        if not 0 <= self.element < len(self.group):
            raise InvalidStructure("clutching element must belong to the group")

    def automorphism_group(self):
        return twisted_loop_group(self.group, self.element)

    def iso_witness(self, other):
        if other.group is not self.group:
            raise InvalidStructure("clutching data live over different groups")
        return torsor_iso(self.group, self.element, other.element)


def torsor_iso(group, alpha, beta):
    """First delta with delta alpha delta^-1 = beta, or None if non-conjugate."""
    for d in range(len(group)):
        if group.conjugate(d, alpha) == beta:
            return d
    return None


# ---------------------------------------------------------------------------
# the decomposition of free loops on BG


@dataclass
class BorelGroupoid:
    groupoid: FiniteGroupoid          # conjugation action groupoid
    inertia: InertiaGroupoid
    witness: EquivalenceWitness       # Borel ~ inertia(BG)


def borel_groupoid(group):
    """Conjugation action groupoid of G on itself, tied to inertia(BG)."""
    act = action_groupoid(group, len(group),
                          lambda g, s: group.conjugate(g, s),
                          point_labels=group.labels)
    inert = inertia_groupoid(b_group(group))
    n = len(group)

    def mor_map(m):
        s, g = divmod(m, n)
        # inertia morphisms at loop (0, s) are indexed by out(.) = group order
        return s * n + g

    F = GroupoidFunctor(act, inert.groupoid, lambda s: inert.point_index(0, s),
                        mor_map, "borel")
    F.verify()
    witness = as_equivalence(F)
    if witness is None:
        raise VerificationError("Borel comparison failed to verify")
    return BorelGroupoid(act, inert, witness)


@dataclass
class LoopDecomposition:
    table: ConjugacyTable
    summands: tuple              # per class: (representative, centralizer group)
    groupoid: FiniteGroupoid     # disjoint union of B(centralizer)
    inertia: InertiaGroupoid
    witness: EquivalenceWitness  # summands ~ inertia(BG)


def loop_decomposition(group):
    """Free loops on BG as one centralizer summand per conjugacy class.

    The witness functor sends the unique object of the i-th summand to the
    loop point at the class representative.
    """
    table = conjugacy(group)
    inert = inertia_groupoid(b_group(group))
    parts = []
    for i, rep_ in enumerate(table.representatives):
        cent, _ = table.centralizers[i]
        parts.append(b_group(cent))
    union = disjoint_union(parts)

    # object k of the union is the unique object of summand k
    part_offsets = []
    acc = 0
    for p in parts:
        part_offsets.append(acc)
        acc += p.n_morphisms

    def obj_map(k):
        return inert.point_index(0, table.representatives[k])

    # morphism map: element z of Z(alpha_k) conjugates the loop point to itself
    def mor_map(mid):
        k = 0
        while k + 1 < len(parts) and part_offsets[k + 1] <= mid:
            k += 1
        local = mid - part_offsets[k]
        parent_elem = table.centralizers[k][1][local]
        src = inert.point_index(0, table.representatives[k])
        return src * len(group) + parent_elem

    F = GroupoidFunctor(union, inert.groupoid, obj_map, mor_map, "decomposition")
    F.verify()
    witness = as_equivalence(F)
    if witness is None:
        raise VerificationError("loop decomposition failed to verify")
    summands = tuple((table.representatives[i], table.centralizers[i][0])
                     for i in range(len(parts)))
    return LoopDecomposition(table, summands, union, inert, witness)
