"""The double plane R = k[x,y,z,t]/(t^2 - F) with weights (1,1,1,s).

R-modules are handled through the ambient ring: kernels over R are computed as
kernels over k[x,y,z,t] with t^2 - F appended, then reduced to the canonical
form p + q*t.  Pushforward to P^2 uses the S_3-basis (1, t) of R.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graded import GradedModulePresentation
from .groebner import FreeModuleVector, Ideal, saturate, syzygies
from .linalg import rank_mod_p, slice_matrix
from .poly import Polynomial, RingSpec, cover_ambient_ring, jacobian_partials, p2_ring


class DoubleCoverError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class DoubleCoverRing:
    s: int
    F: Polynomial  # the branch form, in k[x,y,z]
    ambient: RingSpec  # k[x,y,z,t], weights (1,1,1,s)
    base: RingSpec  # k[x,y,z]
    _fpow: dict = field(default_factory=dict, repr=False)

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def t(self) -> Polynomial:
        return self.ambient.var(3)

    def lift(self, f: Polynomial) -> Polynomial:
        """Embed a polynomial of k[x,y,z] into the ambient ring."""
        if f.ring == self.ambient:
            return f
        return f.substitute_ring(self.ambient, (0, 1, 2))

    @property
    def F4(self) -> Polynomial:
        return self._power(1)

    @property
    def relation(self) -> Polynomial:
        """t^2 - F in the ambient ring."""
        return self.t * self.t - self.F4

    def _power(self, k: int) -> Polynomial:
        if k not in self._fpow:
            self._fpow[k] = self.lift(self.F) ** k
        return self._fpow[k]

    # -- canonical forms ----------------------------------------------------------
    def split(self, f: Polynomial):
        """(a, b) in k[x,y,z] with f ≡ a + b*t modulo t^2 - F."""
        f = self.reduce(f)
        a, b = {}, {}
        for e, c in f.coeffs.items():
            (b if e[3] else a)[e[:3]] = c
        return Polynomial(self.base, a), Polynomial(self.base, b)

    def join(self, a: Polynomial, b: Polynomial) -> Polynomial:
        return self.lift(a) + self.lift(b) * self.t

    def reduce(self, f: Polynomial) -> Polynomial:
        return reduce_mod_relation(self, f)

    def monomials(self, d: int):
        """Canonical monomials (t-exponent at most 1) of weighted degree d."""
        return tuple(e for e in self.ambient.monomials(d) if e[3] <= 1)

    def dim(self, d: int) -> int:
        return len(self.monomials(d))

    def multiply_monomial(self, m, f: Polynomial) -> dict:
        prod = Polynomial._raw(self.ambient, {tuple(a + b for a, b in zip(m, e)): c
                                              for e, c in f.coeffs.items()})
        return self.reduce(prod).coeffs


def make_double_cover(F: Polynomial, s: int) -> DoubleCoverRing:
    """Ring handle for the double cover of P^2 branched along F = 0, deg F = 2s."""
    p = F.ring.p
    if p <= 2:
        raise DoubleCoverError("characteristic must be odd")
    if (2 * s) % p == 0:
        raise DoubleCoverError(f"p = {p} divides 2s = {2 * s}; need p ∤ 2s")
    if F.ring.nvars == 4:
        if F.involves(3):
            raise DoubleCoverError("branch polynomial must not involve t")
        F = Polynomial(p2_ring(p), {e[:3]: c for e, c in F.coeffs.items()})
    elif F.ring.nvars != 3:
        raise DoubleCoverError("branch polynomial must live in k[x,y,z]")
    if F.is_zero() or not F.is_homogeneous() or F.degree() != 2 * s:
        raise DoubleCoverError(f"branch polynomial must be homogeneous of degree {2 * s}")
    base = p2_ring(p) if F.ring.names == ("x", "y", "z") and F.ring.weights == (1, 1, 1) else F.ring
    return DoubleCoverRing(s, F, cover_ambient_ring(s, p), base)


def reduce_mod_relation(dc: DoubleCoverRing, f: Polynomial) -> Polynomial:
    """Substitute t^2 -> F until every term has t-exponent at most 1."""
    if f.ring != dc.ambient:
        f = dc.lift(f)
    if all(e[3] <= 1 for e in f.coeffs):
        return f
    p = dc.p
    out = {}
    for e, c in f.coeffs.items():
        a = e[3]
        if a <= 1:
            out[e] = (out.get(e, 0) + c) % p
            continue
        Fk = dc._power(a // 2)
        base = (e[0], e[1], e[2], a % 2)
        for g, v in Fk.coeffs.items():
            k = (g[0] + base[0], g[1] + base[1], g[2] + base[2], base[3])
            out[k] = (out.get(k, 0) + c * v) % p
    return Polynomial(dc.ambient, out)


@dataclass
class BranchCurveReport:
    smooth: bool
    saturation: tuple  # generators of the saturated Jacobian ideal
    iterations: int | None = None

    def to_json(self):
        return {"smooth": self.smooth, "saturated_jacobian": [str(g) for g in self.saturation],
                "colon_iterations": self.iterations}


def is_smooth_branch(F: Polynomial) -> BranchCurveReport:
    """Saturate (F, F_x, F_y, F_z) by (x, y, z); the curve is smooth iff that is the unit ideal."""
    ring = F.ring
    J = Ideal(ring, (F,) + jacobian_partials(F))
    m = Ideal(ring, ring.gens()[:3])
    stats = {}
    sat = saturate(J, m, stats=stats)
    smooth = any(g.constant_value() not in (None, 0) for g in sat.generators)
    return BranchCurveReport(smooth, tuple(sat.generators), stats.get("iterations"))


# -- R-modules -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RModulePresentation:
    """coker( ⊕ R(-b_j) → ⊕ R(-a_i) ) with entries in canonical form."""

    ring: DoubleCoverRing
    twists: tuple
    relations: tuple = ()
    generators: tuple = ()  # embedding vectors, when the module is a submodule of a free module

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(self.twists))
        rels = []
        for col in self.relations:
            if not isinstance(col, FreeModuleVector):
                col = FreeModuleVector(self.twists, tuple(col))
            ents = tuple(self.ring.reduce(f) for f in col.entries)
            col = FreeModuleVector(self.twists, ents)
            if col.is_zero():
                continue
            col.degree()
            rels.append(col)
        object.__setattr__(self, "relations", tuple(rels))

    def relation_degrees(self):
        return [c.degree() for c in self.relations]

    def twist(self, k: int) -> "RModulePresentation":
        tw = tuple(a - k for a in self.twists)
        return RModulePresentation(self.ring, tw, tuple(FreeModuleVector(tw, c.entries) for c in self.relations))


def r_piece_dimension(M: RModulePresentation, d: int) -> int:
    """dim_k M_d by linear algebra on canonical forms (no Gröbner bases)."""
    dc = M.ring
    total = sum(dc.dim(d - a) for a in M.twists)
    if not M.relations or total == 0:
        return total
    A, _ = slice_matrix([c.entries for c in M.relations], M.relation_degrees(), M.twists, d,
                        dc.monomials, dc.multiply_monomial, dc.p)
    return total - rank_mod_p(A, dc.p)


def r_minimal_subset(dc: DoubleCoverRing, vectors, twists):
    """A minimal homogeneous generating subset of the R-module spanned by ``vectors``.

    Works degree by degree: a vector is kept iff it is not in the span of the
    R-multiples of the vectors already kept.
    """
    vecs = sorted((v for v in vectors if not v.is_zero()), key=lambda v: v.degree())
    kept = []
    p = dc.p
    for v in vecs:
        d = v.degree()
        cols = [k.entries for k in kept]
        A, basis = slice_matrix(cols, [k.degree() for k in kept], twists, d,
                                dc.monomials, dc.multiply_monomial, p)
        row = np.zeros(len(basis), dtype=np.int64)
        for i, f in enumerate(v.entries):
            for e, c in dc.reduce(f).coeffs.items():
                row[basis.index[(i, e)]] = c
        r0 = rank_mod_p(A, p) if len(A) else 0
        r1 = rank_mod_p(np.vstack([A, row[None, :]]) if len(A) else row[None, :], p)
        if r1 > r0:
            kept.append(v)
    return kept


def r_kernel(dc: DoubleCoverRing, columns, twists, minimal=True):
    """Generators of the kernel of ⊕ R(-b_j) → ⊕ R(-a_i) given by ``columns``.

    Kernel over the ambient ring of (columns, (t^2-F) e_1, ..., (t^2-F) e_m),
    projected to the first coordinates and reduced modulo t^2 - F.
    """
    m = len(twists)
    k = len(columns)
    zero = dc.ambient.zero()
    rel = dc.relation
    cols = [FreeModuleVector(tuple(twists), tuple(dc.reduce(f) for f in c.entries)) for c in columns]
    degs = [c.degree() for c in cols]
    extra = []
    for i in range(m):
        ents = [zero] * m
        ents[i] = rel
        extra.append(FreeModuleVector(tuple(twists), tuple(ents)))
    allcols = cols + extra
    alldegs = degs + [2 * dc.s + a for a in twists]
    raw = syzygies(allcols, track=range(k), degrees=alldegs)
    out = []
    seen = set()
    for v in raw:
        ents = tuple(dc.reduce(f) for f in v.entries[:k])
        w = FreeModuleVector(tuple(degs), ents)
        if w.is_zero():
            continue
        key = tuple(ents)
        if key in seen:
            continue
        seen.add(key)
        out.append(w)
    if minimal:
        out = r_minimal_subset(dc, out, tuple(degs))
    return out


def syzygy_over_R(dc: DoubleCoverRing, elements, twists=None) -> RModulePresentation:
    """The kernel of (g_1..g_k): ⊕ R(-twists) → R, presented by generators and relations.

    ``elements`` are ring elements; the default twists are their degrees so the
    map is homogeneous of degree zero.
    """
    elements = [dc.reduce(dc.lift(g)) for g in elements]
    if twists is None:
        twists = tuple(g.degree() for g in elements)
    cols = [FreeModuleVector((0,), (g,)) for g in elements]
    # column j as a map R(-twists[j]) -> R: degree bookkeeping via the twist
    for g, a in zip(elements, twists):
        if not g.is_zero() and g.degree() != a:
            raise ValueError("element degree must equal its twist")
    gens = r_kernel(dc, cols, (0,))
    return present_submodule(dc, gens, tuple(twists))


def present_submodule(dc: DoubleCoverRing, gens, ambient_twists) -> RModulePresentation:
    """Present the submodule of ⊕ R(-ambient_twists) generated by ``gens``."""
    rels = r_kernel(dc, gens, ambient_twists) if gens else []
    tw = tuple(g.degree() for g in gens)
    return RModulePresentation(dc, tw, tuple(FreeModuleVector(tw, r.entries) for r in rels), tuple(gens))


def pushforward_to_p2(M: RModulePresentation) -> GradedModulePresentation:
    """π_* M over k[x,y,z]: generator i gives summands S(-a_i) (basis 1) and S(-a_i-s) (basis t).

    Multiplication by a + b t acts on (1, t) by the block [[a, b F], [b, a]].
    """
    dc = M.ring
    s = dc.s
    tw = []
    for a in M.twists:
        tw += [a, a + s]
    tw = tuple(tw)
    zero = dc.base.zero()
    cols = []
    for col in M.relations:
        one_part = []
        t_part = []
        for f in col.entries:
            a, b = dc.split(f)
            one_part += [a, b]
            t_part += [b * dc.F if not b.is_zero() else zero, a]
        cols.append(FreeModuleVector(tw, tuple(one_part)))
        cols.append(FreeModuleVector(tw, tuple(t_part)))
    return GradedModulePresentation(dc.base, tw, tuple(cols))


def r_quotient(dc: DoubleCoverRing, generators) -> RModulePresentation:
    """R / (generators)."""
    return RModulePresentation(dc, (0,), tuple(FreeModuleVector((0,), (dc.reduce(dc.lift(g)),))
                                               for g in generators))
