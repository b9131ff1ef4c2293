"""Graded modules over k[x,y,z]: presentations, resolutions, Hilbert data, cohomology on P^2."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .groebner import FreeModuleVector, ModuleGroebnerBasis, ModuleOrder, syzygies
from .linalg import poly_multiply_monomial, rank_mod_p, slice_matrix
from .poly import RingSpec, binomial


class ResolutionTooLong(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class GradedModulePresentation:
    """coker( ⊕ S(-b_j) → ⊕ S(-a_i) ), the relation columns given as FreeModuleVectors."""

    ring: RingSpec
    twists: tuple
    relations: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(self.twists))
        rels = []
        for col in self.relations:
            if not isinstance(col, FreeModuleVector):
                col = FreeModuleVector(self.twists, tuple(col))
            if col.twists != self.twists:
                raise ValueError("relation column twists differ from generator twists")
            if col.is_zero():
                continue
            col.degree()  # raises if inhomogeneous
            rels.append(col)
        object.__setattr__(self, "relations", tuple(rels))

    @classmethod
    def free(cls, ring, twists):
        return cls(ring, tuple(twists), ())

    @classmethod
    def quotient(cls, ring, generators):
        """S / (generators)."""
        return cls(ring, (0,), tuple(FreeModuleVector((0,), (g,)) for g in generators))

    @classmethod
    def ideal(cls, ring, generators):
        """The ideal (generators) as a module, presented by the syzygies of its generators."""
        gens = [g for g in generators if not g.is_zero()]
        tw = tuple(g.degree() for g in gens)
        return cls(ring, tw, tuple(syzygies(gens)))

    @property
    def rank_free(self) -> int:
        return len(self.twists)

    def relation_degrees(self):
        return [c.degree() for c in self.relations]

    def twist(self, k: int) -> "GradedModulePresentation":
        """M(k): generator in degree a becomes degree a - k."""
        tw = tuple(a - k for a in self.twists)
        return GradedModulePresentation(
            self.ring, tw, tuple(FreeModuleVector(tw, c.entries) for c in self.relations))

    def direct_sum(self, other: "GradedModulePresentation") -> "GradedModulePresentation":
        tw = self.twists + other.twists
        zero = self.ring.zero()
        rels = [FreeModuleVector(tw, c.entries + (zero,) * len(other.twists)) for c in self.relations]
        rels += [FreeModuleVector(tw, (zero,) * len(self.twists) + c.entries) for c in other.relations]
        return GradedModulePresentation(self.ring, tw, tuple(rels))

    @cached_property
    def _minimal(self):
        return prune(self)

    @cached_property
    def _resolution(self):
        return minimal_free_resolution(self)

    def __str__(self):
        rels = "; ".join(str(c) for c in self.relations)
        return f"<gens {list(self.twists)} | {rels}>"


# -- brute-force degreewise dimension ---------------------------------------

def _mul(m, f):
    return poly_multiply_monomial(m, f)


def graded_piece_dimension(M: GradedModulePresentation, d: int) -> int:
    """dim_k M_d by plain linear algebra (independent of Gröbner bases)."""
    ring = M.ring
    total = sum(ring.dim(d - a) for a in M.twists)
    if not M.relations or total == 0:
        return total
    cols = [c.entries for c in M.relations]
    A, _ = slice_matrix(cols, M.relation_degrees(), M.twists, d, ring.monomials, _mul, ring.p)
    return total - rank_mod_p(A, ring.p)


def map_slice_rank(ring, columns, col_degrees, twists, d) -> int:
    """Rank of the degree-d part of the map ⊕S(-b_j) → ⊕S(-a_i) given by ``columns``."""
    if not columns:
        return 0
    A, _ = slice_matrix(columns, col_degrees, twists, d, ring.monomials, _mul, ring.p)
    return rank_mod_p(A, ring.p)


# -- minimalization ------------------------------------------------------------

def prune(M: GradedModulePresentation) -> GradedModulePresentation:
    """Minimal presentation: eliminate generators hit by unit entries until none remain."""
    twists, cols, _ = prune_with_map(M.twists, [list(c.entries) for c in M.relations], M.ring)
    return GradedModulePresentation(M.ring, twists, tuple(FreeModuleVector(twists, c) for c in cols))


def prune_with_map(twists, cols, ring):
    """Unit-entry elimination on a presentation.

    Returns (kept twists, remaining nonzero columns, kept generator indices).
    """
    p = ring.p
    twists = list(twists)
    kept = list(range(len(twists)))
    cols = [c for c in cols if any(not f.is_zero() for f in c)]
    while True:
        pivot = None
        for j, col in enumerate(cols):
            for i, f in enumerate(col):
                v = f.constant_value()
                if v:
                    pivot = (i, j, v)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i, j, v = pivot
        pcol = cols[j]
        inv = pow(v, p - 2, p)
        new_cols = []
        for l, col in enumerate(cols):
            if l == j:
                continue
            a = col[i]
            if not a.is_zero():
                fac = a.scale(inv)
                col = [x - fac * y if not y.is_zero() else x for x, y in zip(col, pcol)]
            col = col[:i] + col[i + 1:]
            if any(not f.is_zero() for f in col):
                new_cols.append(col)
        cols = new_cols
        del twists[i]
        del kept[i]
    return twists, cols, kept


def minimal_generators(M: GradedModulePresentation):
    """Degrees of a minimal homogeneous generating set."""
    return sorted(M._minimal.twists)


# -- resolutions ---------------------------------------------------------------

@dataclass
class BettiTable:
    entries: dict = field(default_factory=dict)  # (i, j) -> beta_ij

    @classmethod
    def from_twists(cls, twist_lists):
        t = {}
        for i, tw in enumerate(twist_lists):
            for a in tw:
                t[(i, a)] = t.get((i, a), 0) + 1
        return cls(t)

    def total(self, i: int) -> int:
        return sum(v for (k, _), v in self.entries.items() if k == i)

    @property
    def length(self) -> int:
        idx = [i for (i, _), v in self.entries.items() if v]
        return max(idx) if idx else 0

    def to_json(self):
        return {"entries": [[i, j, v] for (i, j), v in sorted(self.entries.items())],
                "text": self.render()}

    def render(self) -> str:
        """Macaulay2-style table: row r, column i holds beta_{i, i+r}."""
        if not self.entries:
            return "(zero module)"
        cols = range(self.length + 1)
        rows = sorted({j - i for (i, j) in self.entries})
        width = max(len(str(v)) for v in self.entries.values()) + 1
        lines = ["      " + "".join(f"{i:>{width}}" for i in cols)]
        for r in rows:
            cells = []
            for i in cols:
                v = self.entries.get((i, i + r), 0)
                cells.append(f"{(v if v else '.'):>{width}}")
            lines.append(f"{r:>4}: " + "".join(cells))
        return "\n".join(lines)


@dataclass
class Resolution:
    """F_0 <- F_1 <- ... ; ``maps[i]`` are the columns of F_{i+1} -> F_i."""

    ring: RingSpec
    twists: list  # twists[i] = twists of F_i
    maps: list  # maps[i] = list of columns (lists of Polynomials) of F_{i+1} -> F_i

    @property
    def betti(self) -> BettiTable:
        return BettiTable.from_twists(self.twists)

    @property
    def length(self) -> int:
        return len(self.twists) - 1


def minimal_free_resolution(M: GradedModulePresentation, max_length: int = 3) -> Resolution:
    ring = M.ring
    m = M._minimal if "_minimal" in M.__dict__ else prune(M)
    twists = [list(m.twists)]
    maps = []
    cols = [list(c.entries) for c in m.relations]
    order = ModuleOrder(ring, tuple(twists[0]), "top")
    while cols:
        if len(maps) >= max_length:
            raise ResolutionTooLong(f"resolution longer than {max_length}")
        tw_prev = twists[-1]
        degs = [FreeModuleVector(tuple(tw_prev), tuple(c)).degree() for c in cols]
        syz = syzygies([FreeModuleVector(tuple(tw_prev), tuple(c)) for c in cols], order=order)
        # pruning the syzygy presentation removes redundant columns of the current map
        new_tw, new_cols, kept = prune_with_map(degs, [list(v.entries) for v in syz], ring)
        cols = [cols[j] for j in kept]
        maps.append(cols)
        twists.append(new_tw)
        okeys = [order.encode(c) for c in cols]
        order = ModuleOrder.schreyer(order, [max(k) for k in okeys])
        cols = new_cols
    return Resolution(ring, twists, maps)


def betti_table(M: GradedModulePresentation) -> BettiTable:
    return M._resolution.betti


def is_trivial_free(M: GradedModulePresentation, r: int) -> bool:
    """True iff M ≅ S^r: r minimal generators in degree 0 and no minimal relations."""
    m = M._minimal
    return sorted(m.twists) == [0] * r and not m.relations


# -- Hilbert series --------------------------------------------------------------

def _monomial_numerator(gens, weights):
    """Numerator N(u) of the Hilbert series of S/(monomials), as dict degree -> coeff."""
    gens = _minimal_monomials(gens)
    return _num_rec(tuple(sorted(gens)), tuple(weights), {})


def _minimal_monomials(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def _num_rec(gens, weights, memo):
    if gens in memo:
        return memo[gens]
    if not gens:
        res = {0: 1}
    elif any(not any(g) for g in gens):
        res = {}
    elif all(sum(1 for e in g if e) == 1 for g in gens):
        # pure powers in distinct variables: product of (1 - u^deg)
        res = {0: 1}
        for g in gens:
            d = sum(e * w for e, w in zip(g, weights))
            nxt = {}
            for k, v in res.items():
                nxt[k] = nxt.get(k, 0) + v
                nxt[k + d] = nxt.get(k + d, 0) - v
            res = {k: v for k, v in nxt.items() if v}
    else:
        # pivot on a generator that is not a pure power
        idx = next(i for i, g in enumerate(gens) if sum(1 for e in g if e) > 1)
        m = gens[idx]
        rest = gens[:idx] + gens[idx + 1:]
        d = sum(e * w for e, w in zip(m, weights))
        a = _num_rec(tuple(sorted(_minimal_monomials(rest))), weights, memo)
        quot = [tuple(max(x - y, 0) for x, y in zip(g, m)) for g in rest]
        b = _num_rec(tuple(sorted(_minimal_monomials(quot))), weights, memo)
        res = dict(a)
        for k, v in b.items():
            res[k + d] = res.get(k + d, 0) - v
        res = {k: v for k, v in res.items() if v}
    memo[gens] = res
    return res


@dataclass
class HilbertData:
    """Hilbert series numerator over prod(1 - u^w) and, for standard grading, the Hilbert polynomial."""

    weights: tuple
    numerator: dict  # degree -> integer coefficient
    polynomial: tuple | None  # coefficients c_0, c_1, ... of HP(k), as Fractions

    def function(self, d: int) -> int:
        from .poly import monomials_of_degree
        return sum(c * len(monomials_of_degree(self.weights, d - j)) for j, c in self.numerator.items())

    def hp(self, k: int) -> Fraction:
        if self.polynomial is None:
            raise ValueError("Hilbert polynomial needs a standard grading")
        return sum((c * k ** i for i, c in enumerate(self.polynomial)), Fraction(0))

    @property
    def dimension(self) -> int:
        """Degree of the Hilbert polynomial (-1 for the zero polynomial)."""
        nz = [i for i, c in enumerate(self.polynomial) if c]
        return max(nz) if nz else -1

    def is_constant(self) -> bool:
        return self.dimension <= 0

    def leading_coefficient(self) -> Fraction:
        d = self.dimension
        return self.polynomial[d] if d >= 0 else Fraction(0)

    def regularity_index(self) -> int:
        """Smallest d0 such that HF(d) = HP(d) for all d >= d0."""
        n = len(self.weights)
        top = max(self.numerator) if self.numerator else 0
        # HF agrees with HP once d - j >= -(n-1) for every numerator exponent j
        return top - n + 1

    def numerator_text(self) -> str:
        terms = []
        for d in sorted(self.numerator):
            c = self.numerator[d]
            terms.append(f"{c:+d}*u^{d}")
        return " ".join(terms) if terms else "0"

    def polynomial_text(self) -> str:
        if self.polynomial is None:
            return "n/a"
        parts = []
        for i in reversed(range(len(self.polynomial))):
            c = self.polynomial[i]
            if c:
                parts.append(f"({c})*k^{i}" if i else f"({c})")
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        return {
            "weights": list(self.weights),
            "numerator": {str(k): v for k, v in sorted(self.numerator.items())},
            "hilbert_polynomial": None if self.polynomial is None else [str(c) for c in self.polynomial],
            "series_text": f"({self.numerator_text()}) / prod(1 - u^w)",
        }


def _poly_from_numerator(numerator, n):
    """Σ_j q_j * C(k - j + n - 1, n - 1) as Fraction coefficients in k."""
    total = [Fraction(0)] * n
    fact = 1
    for i in range(1, n):
        fact *= i
    for j, q in numerator.items():
        coeffs = [Fraction(1)]
        for i in range(1, n):
            # multiply by (k - j + i)
            shift = -j + i
            nxt = [Fraction(0)] * (len(coeffs) + 1)
            for a, c in enumerate(coeffs):
                nxt[a] += c * shift
                nxt[a + 1] += c
            coeffs = nxt
        for a, c in enumerate(coeffs):
            total[a] += q * c / fact
    while len(total) > 1 and total[-1] == 0:
        total.pop()
    return tuple(total)


def hilbert_data(M: GradedModulePresentation) -> HilbertData:
    ring = M.ring
    num = {}
    if M.relations:
        G = ModuleGroebnerBasis(ring, M.twists, M.relations, kind="pot")
        lts = [[] for _ in M.twists]
        for c, e in G.leading_terms():
            lts[c].append(e)
    else:
        lts = [[] for _ in M.twists]
    for a, gens in zip(M.twists, lts):
        for d, v in _monomial_numerator(gens, ring.weights).items():
            num[d + a] = num.get(d + a, 0) + v
    num = {k: v for k, v in num.items() if v}
    poly = None
    if all(w == 1 for w in ring.weights):
        poly = _poly_from_numerator(num, ring.nvars)
    return HilbertData(ring.weights, num, poly)


# -- cohomology on P^2 via local duality -------------------------------------------

def ext_dimension(M: GradedModulePresentation, i: int, e: int, shift: int = -3) -> int:
    """dim_k Ext^i_S(M, S(shift))_e computed from the minimal free resolution."""
    res = M._resolution
    ring = M.ring
    L = res.length

    def cdim(j):
        if j < 0 or j > L:
            return 0
        return sum(ring.dim(e + b + shift) for b in res.twists[j])

    def drank(j):
        # rank in degree e of Hom(F_j, S(shift)) -> Hom(F_{j+1}, S(shift))
        if j < 0 or j >= L:
            return 0
        src = res.twists[j]
        tgt = res.twists[j + 1]
        cols_in = res.maps[j]  # columns indexed by F_{j+1} basis, entries by F_j basis
        # transposed map: one column per F_j basis element, entries over F_{j+1}
        tcols = [[cols_in[l][a] for l in range(len(tgt))] for a in range(len(src))]
        return map_slice_rank(ring, tcols, [-b - shift for b in src], [-b - shift for b in tgt], e)

    return cdim(i) - drank(i) - drank(i - 1)


def sheaf_cohomology_p2(M: GradedModulePresentation, k: int):
    """(h^0, h^1, h^2) of the sheaf associated to M, twisted by k."""
    if M.ring.nvars != 3 or any(w != 1 for w in M.ring.weights):
        raise ValueError("cohomology on P^2 needs the standard graded ring in three variables")
    e = -k
    h2 = ext_dimension(M, 0, e)
    h1 = ext_dimension(M, 1, e)
    local0 = ext_dimension(M, 3, e)  # dim H^0_m(M)_k
    local1 = ext_dimension(M, 2, e)  # dim H^1_m(M)_k
    h0 = graded_piece_dimension(M, k) - local0 + local1
    return h0, h1, h2


@dataclass
class CohomologyTable:
    kmin: int
    kmax: int
    rows: dict  # i -> list of h^i(k) for k in [kmin, kmax]

    def value(self, i: int, k: int) -> int:
        return self.rows[i][k - self.kmin]

    def euler(self, k: int) -> int:
        return self.value(0, k) - self.value(1, k) + self.value(2, k)

    def to_json(self):
        return {"window": [self.kmin, self.kmax],
                "h0": self.rows[0], "h1": self.rows[1], "h2": self.rows[2],
                "text": self.render()}

    def render(self) -> str:
        ks = list(range(self.kmin, self.kmax + 1))
        width = max(4, max(len(str(v)) for r in self.rows.values() for v in r) + 1)
        lines = ["  k: " + "".join(f"{k:>{width}}" for k in ks)]
        for i in (2, 1, 0):
            lines.append(f" h{i}: " + "".join(f"{v:>{width}}" for v in self.rows[i]))
        return "\n".join(lines)


def cohomology_table(M: GradedModulePresentation, kmin: int = -3, kmax: int = 3) -> CohomologyTable:
    rows = {0: [], 1: [], 2: []}
    for k in range(kmin, kmax + 1):
        h = sheaf_cohomology_p2(M, k)
        for i in range(3):
            rows[i].append(h[i])
    return CohomologyTable(kmin, kmax, rows)


def is_saturated(M: GradedModulePresentation) -> bool:
    """H^0_m(M) = H^1_m(M) = 0, i.e. depth >= 2, i.e. projective dimension <= 1."""
    return M._resolution.length <= 1


def line_bundle_cohomology(k: int):
    """Closed-form cohomology of O_{P^2}(k)."""
    return binomial(k + 2, 2), 0, binomial(-k - 1, 2)
