"""Finite groups as explicit multiplication tables.

Elements are referred to by index into a fixed ordering (the input order, so
every enumeration downstream is reproducible).  Groups can be built from a
raw table or from permutation generators in cycle notation; the closure of
the generators fixes the element order: identity first, then breadth-first
products in generator order.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from math import gcd

from .errors import BoundExceeded, InvalidStructure, ParseError

GROUP_ISO_BOUND = 200  # default cap for isomorphism / homomorphism searches


# ---------------------------------------------------------------------------
# permutations in cycle notation

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text, n_points=None):
    """Parse ``"(1 2)(3 4 5)"`` into a permutation tuple on points 0..n-1.

    Points are 1-based in the text, comma or whitespace separated.  ``()``
    and the empty string denote the identity.
    """
    text = text.strip()
    cycles = []
    rest = text
    while rest:
        m = _CYCLE_RE.match(rest)
        if m is None:
            raise ParseError(f"not cycle notation: {text!r}")
        body = m.group(1).replace(",", " ").split()
        cycle = [int(p) for p in body]
        if any(p < 1 for p in cycle):
            raise ParseError(f"points must be >= 1 in {text!r}")
        if len(set(cycle)) != len(cycle):
            raise ParseError(f"repeated point in cycle {m.group(0)!r}")
        cycles.append(cycle)
        rest = rest[m.end():].strip()
    top = max((p for c in cycles for p in c), default=0)
    n = top if n_points is None else n_points
    if top > n:
        raise ParseError(f"point {top} exceeds declared degree {n}")
    perm = list(range(n))
    for cycle in cycles:
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            perm[a - 1] = b - 1
    return tuple(perm)


def cycle_string(perm):
    """Inverse of :func:`parse_cycles`; fixed points are dropped."""
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cycle = [start]
        seen[start] = True
        p = perm[start]
        while p != start:
            cycle.append(p)
            seen[p] = True
            p = perm[p]
        out.append("(" + " ".join(str(p + 1) for p in cycle) + ")")
    return "".join(out) if out else "()"


def _compose_perm(p, q):
    # (p*q)(x) = p(q(x))
    return tuple(p[q[x]] for x in range(len(p)))


# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its multiplication table.

    ``table[i][j]`` is the index of ``elements[i] * elements[j]``.
    """

    table: tuple
    identity: int = 0
    labels: tuple = None
    name: str = "G"

    def __post_init__(self):
        n = len(self.table)
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(range(n)))
        if len(self.labels) != n:
            raise InvalidStructure("label count differs from table size")

    # -- basic structure ----------------------------------------------------

    def __len__(self):
        return len(self.table)

    def __repr__(self):
        return f"FiniteGroup({self.name}, order {len(self)})"

    def mul(self, i, j):
        return self.table[i][j]

    def inv(self, i):
        row = self.table[i]
        for j, prod in enumerate(row):
            if prod == self.identity:
                return j
        raise InvalidStructure(f"element {i} has no inverse")

    def conjugate(self, g, x):
        """g x g^-1."""
        return self.mul(self.mul(g, x), self.inv(g))

    def element_order(self, i):
        n = 1
        x = i
        while x != self.identity:
            x = self.mul(x, i)
            n += 1
        return n

    def is_abelian(self):
        n = len(self)
        return all(self.table[i][j] == self.table[j][i]
                   for i in range(n) for j in range(i + 1, n))

    def validate(self):
        """Check the group axioms, raising InvalidStructure on failure."""
        n = len(self)
        for row in self.table:
            if len(row) != n or any(not (0 <= v < n) for v in row):
                raise InvalidStructure("table is not a square over element indices")
        e = self.identity
        for i in range(n):
            if self.mul(e, i) != i or self.mul(i, e) != i:
                raise InvalidStructure(f"identity law fails at element {i}")
        for i in range(n):
            self.inv(i)
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.mul(self.mul(i, j), k) != self.mul(i, self.mul(j, k)):
                        raise InvalidStructure(f"associativity fails at ({i},{j},{k})")
        return self

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_table(cls, table, identity=None, labels=None, name="G"):
        table = tuple(tuple(row) for row in table)
        if identity is None:
            identity = _find_identity(table)
        return cls(table, identity, None if labels is None else tuple(labels), name)

    @classmethod
    def trivial(cls):
        return cls(((0,),), 0, ("e",), "1")

    @classmethod
    def cyclic(cls, n):
        table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
        return cls(table, 0, tuple(range(n)), f"Z/{n}")

    @classmethod
    def from_permutations(cls, generators, n_points=None, name=None, max_order=100000):
        """Closure of permutation generators; identity first, then BFS order."""
        gens = []
        for g in generators:
            gens.append(parse_cycles(g, n_points) if isinstance(g, str) else tuple(g))
        n = max((len(g) for g in gens), default=n_points or 1)
        gens = [g + tuple(range(len(g), n)) for g in gens]
        ident = tuple(range(n))
        elements = [ident]
        index = {ident: 0}
        frontier = [ident]
        while frontier:
            nxt = []
            for p in frontier:
                for g in gens:
                    q = _compose_perm(g, p)
                    if q not in index:
                        index[q] = len(elements)
                        elements.append(q)
                        nxt.append(q)
                        if len(elements) > max_order:
                            raise BoundExceeded("permutation closure", max_order)
            frontier = nxt
        table = tuple(tuple(index[_compose_perm(a, b)] for b in elements)
                      for a in elements)
        labels = tuple(cycle_string(p) for p in elements)
        return cls(table, 0, labels, name or f"perm-group({len(elements)})")

    @classmethod
    def symmetric(cls, n):
        if n <= 1:
            return cls.trivial()
        gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
        return cls.from_permutations(gens, n, name=f"S{n}")

    @classmethod
    def alternating(cls, n):
        if n <= 2:
            return cls.trivial()
        gens = []
        for i in range(n - 2):
            c = list(range(n))
            c[i], c[i + 1], c[i + 2] = c[i + 1], c[i + 2], c[i]
            gens.append(tuple(c))
        return cls.from_permutations(gens, n, name=f"A{n}")

    @classmethod
    def dihedral(cls, n):
        """Symmetries of the regular n-gon, order 2n."""
        if n == 1:
            return cls.cyclic(2)
        if n == 2:
            return cls.klein_four()
        rot = tuple((i + 1) % n for i in range(n))
        ref = tuple((-i) % n for i in range(n))
        return cls.from_permutations([rot, ref], n, name=f"D{n}")

    @classmethod
    def quaternion(cls):
        """Q8 presented by its regular action on {1,i,j,k,-1,-i,-j,-k}."""
        # order: 1, i, j, k, -1, -i, -j, -k
        def q_mul(a, b):
            sa, xa = divmod(a, 4)
            sb, xb = divmod(b, 4)
            sign = (sa + sb) % 2
            if xa == 0:
                x = xb
            elif xb == 0:
                x = xa
            elif xa == xb:
                x, sign = 0, (sign + 1) % 2
            else:
                x = ({1, 2, 3} - {xa, xb}).pop()
                # i*j=k, j*k=i, k*i=j cyclic; reversed order flips sign
                if (xa, xb) not in ((1, 2), (2, 3), (3, 1)):
                    sign = (sign + 1) % 2
            return sign * 4 + x

        table = tuple(tuple(q_mul(a, b) for b in range(8)) for a in range(8))
        labels = ("1", "i", "j", "k", "-1", "-i", "-j", "-k")
        return cls(table, 0, labels, "Q8")

    @classmethod
    def klein_four(cls):
        table = ((0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0))
        return cls(table, 0, ("e", "a", "b", "ab"), "V4")

    # -- subgroups and quotients ---------------------------------------------

    def subgroup(self, element_indices, name=None):
        """The subgroup on the given (closed) element set, reindexed.

        Returns (group, parent_indices); raises if the set is not closed.
        """
        elems = sorted(set(element_indices))
        pos = {g: k for k, g in enumerate(elems)}
        if self.identity not in pos:
            raise InvalidStructure("subgroup must contain the identity")
        table = []
        for a in elems:
            row = []
            for b in elems:
                p = self.mul(a, b)
                if p not in pos:
                    raise InvalidStructure("element set is not closed under the product")
                row.append(pos[p])
            table.append(tuple(row))
        labels = tuple(self.labels[g] for g in elems)
        grp = FiniteGroup(tuple(table), pos[self.identity], labels,
                          name or f"{self.name}-sub{len(elems)}")
        return grp, tuple(elems)

    def generated_subgroup(self, generators):
        """Indices of the subgroup generated by the given elements."""
        elems = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in generators:
                    y = self.mul(x, g)
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(elems)

    def generating_set(self):
        """A small generating set, greedily grown in element order."""
        gens = []
        closure = {self.identity}
        for g in range(len(self)):
            if g not in closure:
                gens.append(g)
                closure = set(self.generated_subgroup(gens))
                if len(closure) == len(self):
                    break
        return gens

    def centralizer(self, alpha):
        """Indices of elements commuting with alpha."""
        return [g for g in range(len(self))
                if self.mul(g, alpha) == self.mul(alpha, g)]

    def conjugacy_classes(self):
        """Classes as sorted index lists, ordered by least representative."""
        seen = [False] * len(self)
        classes = []
        for x in range(len(self)):
            if seen[x]:
                continue
            cls_ = sorted({self.conjugate(g, x) for g in range(len(self))})
            for y in cls_:
                seen[y] = True
            classes.append(cls_)
        return classes

    def commutator_subgroup(self):
        comms = {self.mul(self.mul(a, b), self.inv(self.mul(b, a)))
                 for a in range(len(self)) for b in range(len(self))}
        return self.generated_subgroup(comms)

    def quotient(self, normal_indices):
        """Quotient by a normal subgroup, as (group, coset map)."""
        nset = set(normal_indices)
        for g in range(len(self)):
            for h in nset:
                if self.conjugate(g, h) not in nset:
                    raise InvalidStructure("subgroup is not normal")
        coset_of = [-1] * len(self)
        reps = []
        for g in range(len(self)):
            if coset_of[g] >= 0:
                continue
            k = len(reps)
            reps.append(g)
            for h in nset:
                coset_of[self.mul(g, h)] = k
        table = tuple(tuple(coset_of[self.mul(a, b)] for b in reps) for a in reps)
        grp = FiniteGroup(table, coset_of[self.identity],
                          tuple(self.labels[r] for r in reps),
                          f"{self.name}/N{len(nset)}")
        return grp, tuple(coset_of)

    def abelianization(self):
        grp, _ = self.quotient(self.commutator_subgroup())
        return grp

    def direct_product(self, other):
        n, m = len(self), len(other)
        table = tuple(tuple((self.mul(a, c) * m + other.mul(b, d))
                            for c in range(n) for d in range(m))
                      for a in range(n) for b in range(m))
        labels = tuple((self.labels[a], other.labels[b])
                       for a in range(n) for b in range(m))
        return FiniteGroup(table, self.identity * m + other.identity, labels,
                           f"{self.name}x{other.name}")


def _find_identity(table):
    n = len(table)
    for e in range(n):
        if all(table[e][i] == i and table[i][e] == i for i in range(n)):
            return e
    raise InvalidStructure("table has no identity element")


# ---------------------------------------------------------------------------
# element words, homomorphisms, isomorphism search


def element_words(group, generators):
    """Each element as a word (list of generator positions), via BFS.

    Requires the generators to generate; raises otherwise.
    """
    words = {group.identity: []}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for k, g in enumerate(generators):
                y = group.mul(x, g)
                if y not in words:
                    words[y] = words[x] + [k]
                    nxt.append(y)
        frontier = nxt
    if len(words) != len(group):
        raise InvalidStructure("given elements do not generate the group")
    return [words[x] for x in range(len(group))]


def _extend_by_words(dst, images, words):
    out = []
    for w in words:
        acc = dst.identity
        for k in w:
            acc = dst.mul(acc, images[k])
        out.append(acc)
    return out


def _is_hom(src, dst, gens, phi):
    # phi(x*g) == phi(x)*phi(g) for all x and generators g suffices
    for x in range(len(src)):
        for g in gens:
            if phi[src.mul(x, g)] != dst.mul(phi[x], phi[g]):
                return False
    return True


def homomorphisms(src, dst, bound=GROUP_ISO_BOUND):
    """All group homomorphisms src -> dst as full image tuples.

    Candidates are generator-image assignments pruned by element-order
    divisibility, then checked on the whole table.
    """
    if len(src) > bound or len(dst) > bound:
        raise BoundExceeded("homomorphism search", bound, max(len(src), len(dst)))
    gens = src.generating_set()
    if not gens:
        return [tuple([dst.identity] * len(src))]
    words = element_words(src, gens)
    candidates = []
    for g in gens:
        og = src.element_order(g)
        candidates.append([h for h in range(len(dst)) if og % dst.element_order(h) == 0])
    out = []
    for images in itertools.product(*candidates):
        phi = _extend_by_words(dst, images, words)
        if _is_hom(src, dst, gens, phi):
            out.append(tuple(phi))
    return out


def find_isomorphism(src, dst, bound=GROUP_ISO_BOUND):
    """First isomorphism src -> dst in canonical search order, or None.

    Pruned by the order profile (multiset of element orders) before any
    generator-image search happens.
    """
    if len(src) != len(dst):
        return None
    if len(src) > bound:
        raise BoundExceeded("group-isomorphism search", bound, len(src))
    prof_s = sorted(src.element_order(i) for i in range(len(src)))
    prof_d = sorted(dst.element_order(i) for i in range(len(dst)))
    if prof_s != prof_d:
        return None
    gens = src.generating_set()
    if not gens:
        return (dst.identity,)
    words = element_words(src, gens)
    candidates = []
    for g in gens:
        og = src.element_order(g)
        candidates.append([h for h in range(len(dst)) if dst.element_order(h) == og])
    for images in itertools.product(*candidates):
        phi = _extend_by_words(dst, images, words)
        if len(set(phi)) == len(dst) and _is_hom(src, dst, gens, phi):
            return tuple(phi)
    return None


def are_isomorphic(src, dst, bound=GROUP_ISO_BOUND):
    return find_isomorphism(src, dst, bound) is not None


# ---------------------------------------------------------------------------
# abelian invariants


def abelian_invariants(group):
    """Invariant factors (d1 | d2 | ...) of a finite abelian group.

    Counts elements of order dividing p^k for each prime p; the jumps give
    the type of the p-primary part.
    """
    if not group.is_abelian():
        raise InvalidStructure("abelian_invariants needs an abelian group")
    n = len(group)
    primes = _prime_factors(n)
    by_prime = {}
    for p in primes:
        # s[j] = log_p #{x : x^(p^j) = e}
        exps = []
        j = 0
        prev = 1
        while True:
            j += 1
            q = p ** j
            cnt = sum(1 for x in range(n) if _power(group, x, q) == group.identity)
            layers = _int_log(cnt // prev, p)
            if layers == 0:
                break
            exps.append(layers)
            prev = cnt
            if cnt == n:
                break
        # exps[j-1] = number of cyclic factors of order >= p^j
        factors = []
        for j, k in enumerate(exps):
            nxt = exps[j + 1] if j + 1 < len(exps) else 0
            factors.extend([p ** (j + 1)] * (k - nxt))
        by_prime[p] = sorted(factors, reverse=True)
    # merge primary parts into invariant factors, largest first
    width = max((len(v) for v in by_prime.values()), default=0)
    inv = []
    for i in range(width):
        d = 1
        for p, facs in by_prime.items():
            if i < len(facs):
                d *= facs[i]
        inv.append(d)
    inv.reverse()  # ascending, each dividing the next
    return tuple(d for d in inv if d > 1)


def _power(group, x, k):
    acc = group.identity
    base = x
    while k:
        if k & 1:
            acc = group.mul(acc, base)
        base = group.mul(base, base)
        k >>= 1
    return acc


def _int_log(m, p):
    k = 0
    while m > 1:
        if m % p:
            raise InvalidStructure("element-order count is not a prime power")
        m //= p
        k += 1
    return k


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out
