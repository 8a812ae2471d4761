"""Paths, isofibrations, fibration replacement, and homotopy fibers.

The interval is modelled by the indiscrete groupoid on {0, 1}; paths in x
are functors out of it, so path objects biject with morphisms of x and the
evaluation functors are strict.  "Fibration" means isofibration throughout:
every isomorphism starting at an image object lifts.  The replacement of
f: x -> y factors it through the iso-comma of f with evaluation at the end
of a path, exactly mirroring the classical mapping-path construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .equivalence import EquivalenceWitness, are_equivalent, as_equivalence
from .errors import VerificationError
from .functor import GroupoidFunctor, NaturalTransformation
from .groupoid import FiniteGroupoid, indiscrete
from .loops import inertia_groupoid
from .mapping import (FUNCTOR_BOUND, FunctorGroupoid, IsoCommaGroupoid,
                      functor_groupoid, iso_comma, point_functor)


def interval_groupoid():
    """The indiscrete groupoid on {0, 1}: one iso between any two objects."""
    return indiscrete(2, labels=(0, 1))


@dataclass
class PathGroupoid:
    functor_groupoid: FunctorGroupoid
    ev0: GroupoidFunctor
    ev1: GroupoidFunctor
    const: GroupoidFunctor                 # x -> Px, the constant path
    const_cells: tuple                     # identity 2-cells ev_t . const => id
    witness: EquivalenceWitness            # Px ~ x via ev0

    @property
    def groupoid(self):
        return self.functor_groupoid.groupoid


def path_groupoid(x, bound=FUNCTOR_BOUND):
    """Px = Fun(interval, x) with evaluations and the constant-path functor.

    In this discrete model ev_t . const equals the identity strictly; the
    recorded 2-cells are identities.
    """
    fg = functor_groupoid(interval_groupoid(), x, bound)
    ev0 = fg.evaluation_functor(0, "ev0")
    ev1 = fg.evaluation_functor(1, "ev1")
    const = fg.constant_functor("const")
    for t, ev in ((0, ev0), (1, ev1)):
        for u in range(x.n_objects):
            if ev.on_object(const.on_object(u)) != u:
                raise VerificationError(f"ev{t} . const is not the identity")
        for m in range(x.n_morphisms):
            if ev.on_morphism(const.on_morphism(m)) != m:
                raise VerificationError(f"ev{t} . const is not the identity")
    cells = tuple(NaturalTransformation(ev.after(const), GroupoidFunctor.identity(x),
                                        tuple(x.identity), f"alpha{t}")
                  for t, ev in ((0, ev0), (1, ev1)))
    witness = as_equivalence(ev0)
    if witness is None:
        raise VerificationError("ev0 failed to be an equivalence")
    return PathGroupoid(fg, ev0, ev1, const, cells, witness)


def is_isofibration(f):
    """(True, None) or (False, (object, unliftable iso)).

    Checks that every codomain iso starting at an image object lifts along f.
    """
    D, C = f.domain, f.codomain
    for u in range(D.n_objects):
        fu = f.on_object(u)
        images = {f.on_morphism(m) for m in D.out(u)}
        for m in C.out(fu):
            if m not in images:
                return False, (u, m)
    return True, None


@dataclass
class FibrationReplacement:
    functor: GroupoidFunctor          # the input f: x -> y
    comma: IsoCommaGroupoid           # x~ = (f | ev1 on Py)
    embedding: GroupoidFunctor        # i_f: x -> x~
    projection: GroupoidFunctor       # p_f: x~ -> y, an isofibration
    retraction: GroupoidFunctor       # r_f: x~ -> x with r_f . i_f = id
    two_cell: NaturalTransformation   # p_f . i_f => f (identity here)
    embedding_witness: EquivalenceWitness
    paths: PathGroupoid

    @property
    def groupoid(self):
        return self.comma.groupoid


def replace(f, bound=FUNCTOR_BOUND):
    """Factor f = p_f . i_f with p_f an isofibration and i_f an equivalence
    admitting the strict retraction pr1."""
    X, Y = f.domain, f.codomain
    paths = path_groupoid(Y, bound)
    comma = iso_comma(f, paths.ev1, name=f"~{X.name}")
    p_f = paths.ev0.after(comma.pr_right, name="p_f")

    const_obj = [paths.const.on_object(u) for u in range(Y.n_objects)]

    def i_obj(u):
        fu = f.on_object(u)
        return comma.object_index[(u, const_obj[fu], Y.identity[fu])]

    def i_mor(m):
        fm = f.on_morphism(m)
        return comma.morphism_id(i_obj(X.source[m]), m,
                                 paths.const.on_morphism(fm))

    i_f = GroupoidFunctor(X, comma.groupoid, i_obj, i_mor, "i_f")
    r_f = comma.pr_left

    for u in range(X.n_objects):
        if r_f.on_object(i_f.on_object(u)) != u or \
           p_f.on_object(i_f.on_object(u)) != f.on_object(u):
            raise VerificationError("replacement wiring broke at an object")
    for m in range(X.n_morphisms):
        if r_f.on_morphism(i_f.on_morphism(m)) != m or \
           p_f.on_morphism(i_f.on_morphism(m)) != f.on_morphism(m):
            raise VerificationError("replacement wiring broke at a morphism")

    two_cell = NaturalTransformation(
        p_f.after(i_f), f,
        tuple(Y.identity[f.on_object(u)] for u in range(X.n_objects)), "pi=>f")

    ok, cex = is_isofibration(p_f)
    if not ok:
        raise VerificationError(f"projection is not an isofibration at {cex}")
    witness = as_equivalence(i_f)
    if witness is None:
        raise VerificationError("embedding is not an equivalence")
    return FibrationReplacement(f, comma, i_f, p_f, r_f, two_cell, witness, paths)


@dataclass
class HomotopyFiber:
    groupoid: FiniteGroupoid          # fiber of p_f over the chosen object
    comma: IsoCommaGroupoid
    direct: FiniteGroupoid            # iso-comma of the point against f itself
    agreement: EquivalenceWitness     # fiber ~ direct
    replacement: FibrationReplacement


def homotopy_fiber(f, y_obj, bound=FUNCTOR_BOUND):
    """Fiber of the fibration replacement of f over a point of its codomain.

    The sanity cross-check against the plain iso-comma of the point with f
    is computed and attached.
    """
    rep = replace(f, bound)
    Y = f.codomain
    pt = point_functor(Y, y_obj)
    fiber = iso_comma(pt, rep.projection, name=f"hFib[{Y.object_label(y_obj)}]")
    direct = iso_comma(pt, f, name="fiber-direct")
    agreement = are_equivalent(fiber.groupoid, direct.groupoid)
    if not isinstance(agreement, EquivalenceWitness):
        raise VerificationError(f"fiber models disagree: {agreement}")
    return HomotopyFiber(fiber.groupoid, fiber, direct.groupoid, agreement, rep)


def omega(x, basepoint, bound=FUNCTOR_BOUND):
    """Based loops: the homotopy fiber of loop evaluation over the basepoint.

    The basepoint must be supplied explicitly; for a one-object groupoid
    pass its unique object.
    """
    if not 0 <= basepoint < x.n_objects:
        raise VerificationError("basepoint must be a declared object")
    inert = inertia_groupoid(x)
    return homotopy_fiber(inert.evaluation, basepoint, bound)


def free_loops_via_paths(x, bound=FUNCTOR_BOUND):
    """The other free-loop model: paths whose two endpoints are equal.

    Pulls the endpoint pair evaluation Px -> x*x back along the diagonal;
    equivalent to the inertia model (tested, not assumed).
    """
    from .groupoid import product
    paths = path_groupoid(x, bound)
    xx = product(x, x)
    n_obj, n_mor = x.n_objects, x.n_morphisms
    diag = GroupoidFunctor(x, xx, lambda u: u * n_obj + u,
                           lambda m: m * n_mor + m, "diag")
    fg = paths.functor_groupoid
    pair_obj = tuple(paths.ev0.on_object(i) * n_obj + paths.ev1.on_object(i)
                     for i in range(fg.groupoid.n_objects))
    pair_mor = tuple(paths.ev0.on_morphism(m) * n_mor + paths.ev1.on_morphism(m)
                     for m in range(fg.groupoid.n_morphisms))
    pairing = GroupoidFunctor(fg.groupoid, xx, pair_obj, pair_mor, "(ev0,ev1)")
    return iso_comma(diag, pairing, name=f"L'({x.name})")
