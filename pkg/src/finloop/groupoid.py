"""Finite groupoids with explicit morphism sets.

Objects and morphisms are opaque integers 0..n-1 in a fixed canonical order
(the construction order), so every enumeration and tie-break downstream is
reproducible.  Composition is stored either as an explicit table (a dict over
the composable pairs) or, for groupoids produced by structured constructions
that would be too large to tabulate, as an O(1) rule evaluated on demand.
Both behave identically through :meth:`FiniteGroupoid.compose`.

Morphisms compose right-to-left: ``compose(m2, m1)`` is "first m1, then m2"
and is defined exactly when ``target(m1) == source(m2)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidStructure
from .group import FiniteGroup

# above this many composable pairs, constructions keep a rule instead of a dict
TABLE_PAIR_LIMIT = 300_000


class FiniteGroupoid:
    def __init__(self, n_objects, source, target, identity, inverse, compose,
                 object_labels=None, morphism_labels=None, name="groupoid"):
        self.n_objects = n_objects
        # large constructions pass array('l') to avoid boxing millions of ints
        self.source = tuple(source) if isinstance(source, (list, range)) else source
        self.target = tuple(target) if isinstance(target, (list, range)) else target
        self.identity = tuple(identity)
        self._inverse = inverse            # tuple | callable
        self._compose = compose            # dict[(m2, m1) -> m] | callable
        self._object_labels = object_labels      # tuple | callable | None
        self._morphism_labels = morphism_labels  # tuple | callable | None
        self.name = name
        self._out = None
        self._pos_in_out = None
        self._components = None
        if len(self.source) != len(self.target):
            raise InvalidStructure("source/target length mismatch")
        if len(self.identity) != n_objects:
            raise InvalidStructure("need one identity per object")

    # -- basic access ---------------------------------------------------------

    @property
    def n_morphisms(self):
        return len(self.source)

    def __repr__(self):
        return (f"FiniteGroupoid({self.name}: {self.n_objects} objects, "
                f"{self.n_morphisms} morphisms)")

    def compose(self, m2, m1):
        """m2 after m1; raises on non-composable input."""
        if self.target[m1] != self.source[m2]:
            raise InvalidStructure(f"morphisms {m2} o {m1} are not composable")
        if callable(self._compose):
            return self._compose(m2, m1)
        return self._compose[(m2, m1)]

    def inverse(self, m):
        if callable(self._inverse):
            return self._inverse(m)
        return self._inverse[m]

    def is_identity(self, m):
        x = self.source[m]
        return self.target[m] == x and self.identity[x] == m

    def object_label(self, x):
        if self._object_labels is None:
            return x
        if callable(self._object_labels):
            return self._object_labels(x)
        return self._object_labels[x]

    def morphism_label(self, m):
        if self._morphism_labels is None:
            return m
        if callable(self._morphism_labels):
            return self._morphism_labels(m)
        return self._morphism_labels[m]

    # -- adjacency ------------------------------------------------------------

    def _build_adjacency(self):
        out = [[] for _ in range(self.n_objects)]
        pos = [0] * self.n_morphisms
        for m, s in enumerate(self.source):
            pos[m] = len(out[s])
            out[s].append(m)
        self._out = out
        self._pos_in_out = pos

    def out(self, x):
        """Morphism ids with source x (cached adjacency)."""
        if self._out is None:
            self._build_adjacency()
        return self._out[x]

    def position_in_out(self, m):
        """Index of m within out(source(m)); used by arithmetic morphism codecs."""
        if self._pos_in_out is None:
            self._build_adjacency()
        return self._pos_in_out[m]

    def hom(self, x, y):
        return [m for m in self.out(x) if self.target[m] == y]

    def composable_pairs(self):
        """Yield every composable pair (m2, m1)."""
        for m1 in range(self.n_morphisms):
            for m2 in self.out(self.target[m1]):
                yield m2, m1

    # -- connectivity -----------------------------------------------------------

    def component_of(self):
        """Array mapping each object to its component index (by least object)."""
        if self._components is not None:
            return self._components
        parent = list(range(self.n_objects))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        src, tgt = self.source, self.target
        for m in range(self.n_morphisms):
            ra, rb = find(src[m]), find(tgt[m])
            if ra != rb:
                if ra < rb:
                    parent[rb] = ra
                else:
                    parent[ra] = rb
        comp_index = {}
        labels = []
        for x in range(self.n_objects):
            r = find(x)
            if r not in comp_index:
                comp_index[r] = len(comp_index)
            labels.append(comp_index[r])
        self._components = labels
        return labels

    def pi0(self):
        """Connected components as lists of objects, ordered by least object."""
        comp = self.component_of()
        n = max(comp, default=-1) + 1
        parts = [[] for _ in range(n)]
        for x, c in enumerate(comp):
            parts[c].append(x)
        return parts

    def component_tree(self):
        """BFS forest: for each object an iso rep -> object, id on the reps.

        Returns (reps, path) where reps[c] is the least object of component c
        and path[x] is a morphism reps[comp(x)] -> x.
        """
        comp = self.component_of()
        reps = {}
        for x, c in enumerate(comp):
            if c not in reps:
                reps[c] = x  # least object, since x runs in order
        path = [None] * self.n_objects
        for c, r in reps.items():
            path[r] = self.identity[r]
            frontier = [r]
            while frontier:
                nxt = []
                for x in frontier:
                    for m in self.out(x):
                        y = self.target[m]
                        if path[y] is None:
                            path[y] = self.compose(m, path[x])
                            nxt.append(y)
                frontier = nxt
        if any(p is None for p in path):
            raise InvalidStructure("component computation out of sync")
        return [reps[c] for c in range(len(reps))], path

    # -- automorphism groups ----------------------------------------------------

    def aut_with_morphisms(self, x):
        """(FiniteGroup, morphism ids) for the automorphisms of object x."""
        mors = [m for m in self.out(x) if self.target[m] == x]
        pos = {m: k for k, m in enumerate(mors)}
        table = []
        for a in mors:
            row = []
            for b in mors:
                c = self.compose(a, b)
                if c not in pos:
                    raise InvalidStructure(f"aut set at object {x} is not closed")
                row.append(pos[c])
            table.append(tuple(row))
        grp = FiniteGroup(tuple(table), pos[self.identity[x]],
                          tuple(self.morphism_label(m) for m in mors),
                          f"aut({self.object_label(x)})")
        return grp, tuple(mors)

    def aut(self, x):
        return self.aut_with_morphisms(x)[0]

    # -- explicit table ------------------------------------------------------------

    def composition_table(self):
        """The composition dict, materializing it from the rule if needed."""
        if not callable(self._compose):
            return self._compose
        return {(m2, m1): self.compose(m2, m1) for m2, m1 in self.composable_pairs()}


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple

    def __str__(self):
        return f"{self.axiom} fails at {self.witness}"


def validate(g, check_associativity=True):
    """Every violated groupoid axiom, each with a concrete counterexample.

    An empty report means the structure is a groupoid.  Violations are
    returned as data rather than raised.
    """
    report = []
    n, nm = g.n_objects, g.n_morphisms
    for m in range(nm):
        if not (0 <= g.source[m] < n and 0 <= g.target[m] < n):
            report.append(Violation("declared-objects", (m, g.source[m], g.target[m])))
    for x in range(n):
        e = g.identity[x]
        if not (0 <= e < nm) or g.source[e] != x or g.target[e] != x:
            report.append(Violation("identity-wiring", (x, e)))

    def comp_or_none(m2, m1):
        try:
            return g.compose(m2, m1)
        except (InvalidStructure, KeyError):
            return None

    if not callable(g._compose):
        declared = set(g._compose)
        actual = set(g.composable_pairs())
        for pair in sorted(declared - actual):
            report.append(Violation("composition-domain", pair))
        for pair in sorted(actual - declared):
            report.append(Violation("composition-totality", pair))

    for m2, m1 in g.composable_pairs():
        c = comp_or_none(m2, m1)
        if c is None:
            continue
        if not (0 <= c < nm):
            report.append(Violation("composition-range", (m2, m1, c)))
        elif g.source[c] != g.source[m1] or g.target[c] != g.target[m2]:
            report.append(Violation("composition-endpoints", (m2, m1, c)))

    for m in range(nm):
        ex, ey = g.identity[g.source[m]], g.identity[g.target[m]]
        if comp_or_none(m, ex) != m:
            report.append(Violation("right-identity", (m, ex, comp_or_none(m, ex))))
        if comp_or_none(ey, m) != m:
            report.append(Violation("left-identity", (ey, m, comp_or_none(ey, m))))

    for m in range(nm):
        try:
            w = g.inverse(m)
        except (InvalidStructure, KeyError, IndexError):
            report.append(Violation("inverse-wiring", (m,)))
            continue
        if not (0 <= w < nm) or g.source[w] != g.target[m] or g.target[w] != g.source[m]:
            report.append(Violation("inverse-wiring", (m, w)))
            continue
        if comp_or_none(w, m) != g.identity[g.source[m]]:
            report.append(Violation("left-inverse", (w, m, comp_or_none(w, m))))
        if comp_or_none(m, w) != g.identity[g.target[m]]:
            report.append(Violation("right-inverse", (m, w, comp_or_none(m, w))))

    if check_associativity:
        for m2, m1 in g.composable_pairs():
            a = comp_or_none(m2, m1)
            if a is None:
                continue
            for m3 in g.out(g.target[m2]):
                b = comp_or_none(m3, m2)
                if b is None:
                    continue
                if comp_or_none(m3, a) != comp_or_none(b, m1):
                    report.append(Violation("associativity", (m3, m2, m1)))
    return report


# ---------------------------------------------------------------------------
# constructors


def from_table(n_objects, source, target, identity, inverse, compose,
               object_labels=None, morphism_labels=None, name="groupoid"):
    return FiniteGroupoid(n_objects, source, target, identity, inverse,
                          dict(compose), object_labels, morphism_labels, name)


def terminal():
    return FiniteGroupoid(1, (0,), (0,), (0,), (0,), {(0, 0): 0},
                          ("*",), ("id",), "terminal")


def discrete(n, labels=None):
    ids = tuple(range(n))
    compose = {(i, i): i for i in range(n)}
    return FiniteGroupoid(n, ids, ids, ids, ids, compose,
                          labels, labels, f"discrete({n})")


def indiscrete(n, labels=None):
    """Exactly one morphism between any ordered pair of objects."""
    source, target = [], []
    for x in range(n):
        for y in range(n):
            source.append(x)
            target.append(y)
    identity = tuple(x * n + x for x in range(n))
    inverse = tuple((m % n) * n + (m // n) for m in range(n * n))
    compose = {}
    for m1 in range(n * n):
        for y2 in range(n):
            m2 = (m1 % n) * n + y2
            compose[(m2, m1)] = (m1 // n) * n + y2
    mlabels = tuple((x, y) for x in range(n) for y in range(n))
    return FiniteGroupoid(n, tuple(source), tuple(target), identity, inverse,
                          compose, labels, mlabels, f"indiscrete({n})")


def b_group(group):
    """One object whose automorphisms are the given group."""
    group.validate()
    n = len(group)
    compose = {(a, b): group.mul(a, b) for a in range(n) for b in range(n)}
    inverse = tuple(group.inv(a) for a in range(n))
    return FiniteGroupoid(1, (0,) * n, (0,) * n, (group.identity,), inverse,
                          compose, ("*",), group.labels, f"B({group.name})")


def action_groupoid(group, n_points, act, point_labels=None):
    """Objects the G-set, morphisms (s, g): s -> g.s; composition (s,h.g).

    ``act`` maps (g, s) -> g.s; the action axioms are checked up front.
    """
    group.validate()
    nG = len(group)
    table = [[act(g, s) for s in range(n_points)] for g in range(nG)]
    for s in range(n_points):
        if table[group.identity][s] != s:
            raise InvalidStructure(f"identity does not fix point {s}")
    for g in range(nG):
        for h in range(nG):
            gh = group.mul(g, h)
            for s in range(n_points):
                if table[g][table[h][s]] != table[gh][s]:
                    raise InvalidStructure(f"action fails at (g={g}, h={h}, s={s})")

    # morphism id = s * |G| + g
    source = tuple(m // nG for m in range(n_points * nG))
    target = tuple(table[m % nG][m // nG] for m in range(n_points * nG))
    identity = tuple(s * nG + group.identity for s in range(n_points))

    def inverse(m):
        s, g = divmod(m, nG)
        return table[g][s] * nG + group.inv(g)

    def compose(m2, m1):
        s, g = divmod(m1, nG)
        h = m2 % nG
        return s * nG + group.mul(h, g)

    def mlabel(m):
        s, g = divmod(m, nG)
        slab = s if point_labels is None else point_labels[s]
        return (slab, group.labels[g])

    g_ = FiniteGroupoid(n_points, source, target, identity, inverse, compose,
                        point_labels, mlabel,
                        f"{group.name}-action({n_points} pts)")
    return _maybe_tabulate(g_)


def disjoint_union(parts):
    """Coproduct; objects and morphisms are relabeled by (part, label)."""
    parts = list(parts)
    obj_off, mor_off = [], []
    o = m = 0
    for p in parts:
        obj_off.append(o)
        mor_off.append(m)
        o += p.n_objects
        m += p.n_morphisms
    source, target, identity = [], [], []
    part_of_mor = []
    for k, p in enumerate(parts):
        source.extend(s + obj_off[k] for s in p.source)
        target.extend(t + obj_off[k] for t in p.target)
        identity.extend(e + mor_off[k] for e in p.identity)
        part_of_mor.extend([k] * p.n_morphisms)

    def inverse(mm):
        k = part_of_mor[mm]
        return parts[k].inverse(mm - mor_off[k]) + mor_off[k]

    def compose(m2, m1):
        k = part_of_mor[m1]
        return parts[k].compose(m2 - mor_off[k], m1 - mor_off[k]) + mor_off[k]

    def olabel(x):
        for k in reversed(range(len(parts))):
            if x >= obj_off[k]:
                return (k, parts[k].object_label(x - obj_off[k]))
        raise IndexError(x)

    def mlabel(mm):
        k = part_of_mor[mm]
        return (k, parts[k].morphism_label(mm - mor_off[k]))

    g_ = FiniteGroupoid(o, tuple(source), tuple(target), tuple(identity),
                        inverse, compose, olabel, mlabel,
                        "(" + " + ".join(p.name for p in parts) + ")")
    return _maybe_tabulate(g_)


def product(g, h):
    """Cartesian product; morphism (a, b) has id a * |Mor h| + b."""
    nh, nmh = h.n_objects, h.n_morphisms
    n_obj = g.n_objects * nh
    n_mor = g.n_morphisms * nmh
    source = tuple(g.source[m // nmh] * nh + h.source[m % nmh] for m in range(n_mor))
    target = tuple(g.target[m // nmh] * nh + h.target[m % nmh] for m in range(n_mor))
    identity = tuple(g.identity[x // nh] * nmh + h.identity[x % nh]
                     for x in range(n_obj))

    def inverse(m):
        a, b = divmod(m, nmh)
        return g.inverse(a) * nmh + h.inverse(b)

    def compose(m2, m1):
        a2, b2 = divmod(m2, nmh)
        a1, b1 = divmod(m1, nmh)
        return g.compose(a2, a1) * nmh + h.compose(b2, b1)

    def olabel(x):
        return (g.object_label(x // nh), h.object_label(x % nh))

    def mlabel(m):
        return (g.morphism_label(m // nmh), h.morphism_label(m % nmh))

    g_ = FiniteGroupoid(n_obj, source, target, identity, inverse, compose,
                        olabel, mlabel, f"({g.name} x {h.name})")
    return _maybe_tabulate(g_)


def full_subgroupoid(g, objects, name=None):
    """Full subcategory on the given objects; also returns the inclusion maps.

    Returns (sub, object_incl, morphism_incl) with incl lists indexed by the
    new ids.
    """
    objects = list(objects)
    opos = {x: k for k, x in enumerate(objects)}
    keep = [m for m in range(g.n_morphisms)
            if g.source[m] in opos and g.target[m] in opos]
    mpos = {m: k for k, m in enumerate(keep)}
    source = tuple(opos[g.source[m]] for m in keep)
    target = tuple(opos[g.target[m]] for m in keep)
    identity = tuple(mpos[g.identity[x]] for x in objects)
    inverse = tuple(mpos[g.inverse(m)] for m in keep)
    compose = {}
    for k1, m1 in enumerate(keep):
        for m2 in g.out(g.target[m1]):
            if g.target[m2] in opos:
                compose[(mpos[m2], k1)] = mpos[g.compose(m2, m1)]
    sub = FiniteGroupoid(len(objects), source, target, identity, inverse, compose,
                         tuple(g.object_label(x) for x in objects),
                         tuple(g.morphism_label(m) for m in keep),
                         name or f"{g.name}-full")
    return sub, objects, keep


def skeleton_parts(g):
    """Raw skeleton data: (skeleton, reps, tree paths, object/morphism incl).

    The skeleton is the full subgroupoid on the least object of each
    component; ``path[x]`` is an iso rep -> x picked by BFS.
    """
    reps, path = g.component_tree()
    sub, obj_incl, mor_incl = full_subgroupoid(g, reps, name=f"{g.name}-skeleton")
    return sub, reps, path, obj_incl, mor_incl


def _maybe_tabulate(g):
    """Swap the composition rule for an explicit dict when it is small."""
    est = 0
    out_sizes = [0] * g.n_objects
    for s in g.source:
        out_sizes[s] += 1
    for t in g.target:
        est += out_sizes[t]
        if est > TABLE_PAIR_LIMIT:
            return g
    g._compose = {(m2, m1): g._compose(m2, m1) for m2, m1 in g.composable_pairs()}
    if callable(g._inverse):
        g._inverse = tuple(g._inverse(m) for m in range(g.n_morphisms))
    return g
