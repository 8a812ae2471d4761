"""Functors between finite groupoids and their natural transformations."""

from __future__ import annotations

from .errors import InvalidStructure
from .groupoid import Violation


class GroupoidFunctor:
    """A functor given by explicit object and morphism maps (tuple or rule)."""

    def __init__(self, domain, codomain, object_map, morphism_map, name="F"):
        self.domain = domain
        self.codomain = codomain
        self._object_map = object_map
        self._morphism_map = morphism_map
        self.name = name

    def __repr__(self):
        return f"GroupoidFunctor({self.name}: {self.domain.name} -> {self.codomain.name})"

    def on_object(self, x):
        if callable(self._object_map):
            return self._object_map(x)
        return self._object_map[x]

    def on_morphism(self, m):
        if callable(self._morphism_map):
            return self._morphism_map(m)
        return self._morphism_map[m]

    def object_tuple(self):
        if callable(self._object_map):
            return tuple(self._object_map(x) for x in range(self.domain.n_objects))
        return tuple(self._object_map)

    def morphism_tuple(self):
        if callable(self._morphism_map):
            return tuple(self._morphism_map(m) for m in range(self.domain.n_morphisms))
        return tuple(self._morphism_map)

    def check(self):
        """Functoriality violations (wiring, identities, composition)."""
        report = []
        D, C = self.domain, self.codomain
        for m in range(D.n_morphisms):
            fm = self.on_morphism(m)
            if C.source[fm] != self.on_object(D.source[m]) or \
               C.target[fm] != self.on_object(D.target[m]):
                report.append(Violation("functor-wiring", (m, fm)))
        for x in range(D.n_objects):
            if self.on_morphism(D.identity[x]) != C.identity[self.on_object(x)]:
                report.append(Violation("functor-identity", (x,)))
        for m2, m1 in D.composable_pairs():
            lhs = self.on_morphism(D.compose(m2, m1))
            rhs = C.compose(self.on_morphism(m2), self.on_morphism(m1))
            if lhs != rhs:
                report.append(Violation("functor-composition", (m2, m1, lhs, rhs)))
        return report

    def verify(self):
        bad = self.check()
        if bad:
            raise InvalidStructure(f"{self.name} is not a functor: {bad[0]}")
        return self

    def after(self, other, name=None):
        """self o other (apply ``other`` first)."""
        if other.codomain is not self.domain:
            raise InvalidStructure("functors are not composable")
        return GroupoidFunctor(
            other.domain, self.codomain,
            lambda x: self.on_object(other.on_object(x)),
            lambda m: self.on_morphism(other.on_morphism(m)),
            name or f"{self.name}o{other.name}")

    @staticmethod
    def identity(g):
        return GroupoidFunctor(g, g, lambda x: x, lambda m: m, f"id_{g.name}")

    def is_injective_on_objects(self):
        seen = set()
        for x in range(self.domain.n_objects):
            y = self.on_object(x)
            if y in seen:
                return False
            seen.add(y)
        return True


class NaturalTransformation:
    """Components eta_x: F(x) -> G(x), natural in x (automatically invertible)."""

    def __init__(self, source, target, components, name="eta"):
        if source.domain is not target.domain or source.codomain is not target.codomain:
            raise InvalidStructure("transformation needs parallel functors")
        self.source = source
        self.target = target
        self.components = tuple(components)
        self.name = name

    def __repr__(self):
        return f"NaturalTransformation({self.name}: {self.source.name} => {self.target.name})"

    def check(self):
        report = []
        D = self.source.domain
        C = self.source.codomain
        for x in range(D.n_objects):
            c = self.components[x]
            if C.source[c] != self.source.on_object(x) or \
               C.target[c] != self.target.on_object(x):
                report.append(Violation("component-wiring", (x, c)))
        for m in range(D.n_morphisms):
            x, y = D.source[m], D.target[m]
            lhs = C.compose(self.target.on_morphism(m), self.components[x])
            rhs = C.compose(self.components[y], self.source.on_morphism(m))
            if lhs != rhs:
                report.append(Violation("naturality", (m, lhs, rhs)))
        return report

    def verify(self):
        bad = self.check()
        if bad:
            raise InvalidStructure(f"{self.name} is not natural: {bad[0]}")
        return self

    def then(self, later):
        """Vertical composite: ``later`` after self (self: F=>G, later: G=>H)."""
        C = self.source.codomain
        comps = tuple(C.compose(later.components[x], self.components[x])
                      for x in range(len(self.components)))
        return NaturalTransformation(self.source, later.target, comps,
                                     f"{later.name}.{self.name}")

    def inverted(self):
        C = self.source.codomain
        comps = tuple(C.inverse(c) for c in self.components)
        return NaturalTransformation(self.target, self.source, comps,
                                     f"{self.name}^-1")
