"""Integral homology of classifying spaces via the normalized nerve.

The nerve of a finite groupoid has k-simplices the composable k-tuples of
morphisms; normalized chains keep only tuples of non-identity morphisms
(faces that produce an identity are degenerate and vanish).  Homology is
read off Smith normal forms of the boundary pair.  The independent check
for cyclic groups comes from the 2-periodic resolution (multiplication by
n and the norm map), not from the nerve.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BoundExceeded, VerificationError
from .snf import smith_normal_form

NERVE_BOUND = 10 ** 5  # nondegenerate simplices allowed per degree


@dataclass
class ChainComplex:
    dims: list            # dims[k] = rank of C_k
    boundaries: list      # boundaries[k] = matrix of d_k: C_k -> C_(k-1), k >= 1
    bases: list = None    # optional simplex tuples per degree

    def check_dd_zero(self):
        for k in range(2, len(self.dims)):
            d1, d2 = self.boundaries[k - 1], self.boundaries[k]
            for j in range(self.dims[k]):
                col = [d2[i][j] for i in range(self.dims[k - 1])]
                for i in range(self.dims[k - 2]):
                    s = sum(d1[i][l] * col[l] for l in range(self.dims[k - 1]) if col[l])
                    if s:
                        raise VerificationError(
                            f"dd != 0 at degree {k}, entry ({i}, {j})")
        return self


@dataclass(frozen=True)
class HomologyGroup:
    degree: int
    betti: int
    torsion: tuple        # invariant factors > 1, each dividing the next

    def __str__(self):
        parts = []
        if self.betti == 1:
            parts.append("Z")
        elif self.betti > 1:
            parts.append(f"Z^{self.betti}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def as_invariants(self):
        """(betti, torsion) pair, the normal form used for comparisons."""
        return (self.betti, tuple(self.torsion))


def nerve(x, n, bound=NERVE_BOUND):
    """Normalized chain complex of the nerve up to degree n.

    Simplices are stored in application order: (m_1, ..., m_k) with
    target(m_i) = source(m_(i+1)); both outer faces drop an end, inner
    faces compose, and a face vanishes when the composite is an identity.
    """
    nonid = [m for m in range(x.n_morphisms) if not x.is_identity(m)]
    bases = [[(u,) for u in range(x.n_objects)],
             [(m,) for m in nonid]]
    while len(bases) <= n:
        prev = bases[-1]
        nxt = []
        for t in prev:
            for m in x.out(x.target[t[-1]]):
                if not x.is_identity(m):
                    nxt.append(t + (m,))
            if len(nxt) > bound:
                raise BoundExceeded("nerve simplices", bound)
        bases.append(nxt)
    bases = bases[:n + 1]
    for b in bases:
        if len(b) > bound:
            raise BoundExceeded("nerve simplices", bound)

    index = [{t: i for i, t in enumerate(b)} for b in bases]
    dims = [len(b) for b in bases]
    boundaries = [None]
    for k in range(1, len(bases)):
        mat = [[0] * dims[k] for _ in range(dims[k - 1])]
        for j, t in enumerate(bases[k]):
            if k == 1:
                mat[x.target[t[0]]][j] += 1
                mat[x.source[t[0]]][j] -= 1
                continue
            # face 0 drops the first morphism, face k the last
            mat[index[k - 1][t[1:]]][j] += 1
            sign = -1 if k % 2 else 1
            mat[index[k - 1][t[:-1]]][j] += sign
            for i in range(1, k):
                comp = x.compose(t[i], t[i - 1])
                if not x.is_identity(comp):
                    face = t[:i - 1] + (comp,) + t[i + 1:]
                    mat[index[k - 1][face]][j] += -1 if i % 2 else 1
        boundaries.append(mat)
    return ChainComplex(dims, boundaries, bases).check_dd_zero()


def complex_homology(cx, k_max):
    """Homology groups of a chain complex for 0 <= k <= k_max."""
    if k_max + 1 >= len(cx.dims):
        raise VerificationError("complex too short for requested degree")
    snfs = [None]
    for k in range(1, k_max + 2):
        snfs.append(smith_normal_form(cx.boundaries[k], n_cols=cx.dims[k]))
    out = []
    for k in range(k_max + 1):
        rank_in = snfs[k].rank if k >= 1 else 0
        nxt = snfs[k + 1]
        betti = cx.dims[k] - rank_in - nxt.rank
        torsion = tuple(d for d in nxt.factors if d > 1)
        if betti < 0:
            raise VerificationError(f"negative Betti number at degree {k}")
        out.append(HomologyGroup(k, betti, torsion))
    return out


def homology(x, k_max, bound=NERVE_BOUND):
    """Integral homology of the classifying space of x up to degree k_max."""
    return complex_homology(nerve(x, k_max + 1, bound), k_max)


def cyclic_group_homology_oracle(n, k_max):
    """Homology of the classifying space of Z/n from the periodic resolution.

    Tensoring the resolution ... -> Z[G] -(norm)-> Z[G] -(t-1)-> Z[G] down to
    Z leaves alternating maps 0 and n on rank-one chain groups; this never
    touches the nerve.
    """
    if n < 1:
        raise VerificationError("cyclic order must be positive")
    dims = [1] * (k_max + 2)
    boundaries = [None]
    for k in range(1, k_max + 2):
        boundaries.append([[0 if k % 2 else n]])
    return complex_homology(ChainComplex(dims, boundaries), k_max)


# ---------------------------------------------------------------------------
# normal forms for comparisons


def invariant_factors_of_sum(factor_lists):
    """Invariant factors of a direct sum of cyclic groups given factorwise.

    Used to compare nerve homology with group-theoretic predictions such as
    sums of abelianizations.
    """
    primary = {}
    for factors in factor_lists:
        for d in factors:
            dd = d
            p = 2
            while p * p <= dd:
                if dd % p == 0:
                    e = 0
                    while dd % p == 0:
                        dd //= p
                        e += 1
                    primary.setdefault(p, []).append(p ** e)
                p += 1
            if dd > 1:
                primary.setdefault(dd, []).append(dd)
    for p in primary:
        primary[p].sort(reverse=True)
    width = max((len(v) for v in primary.values()), default=0)
    out = []
    for i in range(width):
        d = 1
        for p, facs in primary.items():
            if i < len(facs):
                d *= facs[i]
        out.append(d)
    out.reverse()
    return tuple(d for d in out if d > 1)
