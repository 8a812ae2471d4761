"""Finite groupoids and their mapping, loop, homology and cover computations."""

from .equivalence import EquivalenceWitness, Refutation, are_equivalent, as_equivalence, skeleton
from .errors import BoundExceeded, FinloopError, InvalidStructure, ParseError, VerificationError
from .functor import GroupoidFunctor, NaturalTransformation
from .group import FiniteGroup
from .groupoid import (FiniteGroupoid, action_groupoid, b_group, discrete,
                       disjoint_union, indiscrete, product, terminal, validate)
from .homology import HomologyGroup, cyclic_group_homology_oracle, homology, nerve
from .loops import (ClutchingDatum, ConjugacyTable, LoopPoint, borel_groupoid,
                    conjugacy, inertia_groupoid, loop_decomposition, torsor_iso,
                    twisted_loop_group)
from .mapping import FunctorGroupoid, IsoCommaGroupoid, exponential_check, functor_groupoid, iso_comma
from .fibration import (homotopy_fiber, interval_groupoid, is_isofibration,
                        omega, path_groupoid, replace)
from .pushout import FinitePushout, gluing_check, induced_cocone, pushout
from .cech import (CechCocycle, CechGroupoid, FiniteSpace, OpenCover,
                   atlas_epimorphism_check, cech_groupoid, classify_hs,
                   enumerate_covers, finite_space, hom_space, pseudo_circle)

__version__ = "0.1.0"
