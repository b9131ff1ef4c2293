"""Buchberger engine for graded submodules of free modules over k[x_1..x_n].

Terms ``(component, monomial)`` are encoded as integers whose natural order is
the module monomial order.  Every supported order is affine in the exponent
vector, so multiplying a term by a monomial is an integer addition; vectors are
plain ``dict[int, int]`` from term keys to coefficients.

Exponent digits are packed base ``2**DIGIT_BITS`` (variable i in digit i).
"""
from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import dataclass

from .poly import Polynomial, RingSpec, mono_lcm

DIGIT_BITS = 16
BASE = 1 << DIGIT_BITS
TIE = 1 << 16  # maximum number of components


def pack(exp) -> int:
    v = 0
    for i, e in enumerate(exp):
        v |= e << (DIGIT_BITS * i)
    return v


def unpack(packed: int, n: int):
    mask = BASE - 1
    return tuple((packed >> (DIGIT_BITS * i)) & mask for i in range(n))


class ModuleOrder:
    """Monomial order on a graded free module ``F = ⊕ S(-twists[c])``.

    ``kind`` is ``"top"`` (twisted degree, then weighted grevlex, then lower
    component first), ``"pot"`` (component first, then the ring order) or
    ``"schreyer"`` (compare images of the terms under fixed leading terms in an
    outer module, ties broken by component).  A rank one ``"top"`` order is the
    ring order itself.
    """

    def __init__(self, ring: RingSpec, twists, kind="top", outer=None, leads=None):
        self.ring = ring
        self.kind = kind
        n = ring.nvars
        self.n = n
        self.low = (1 << (DIGIT_BITS * n)) - 1
        self.top_unit = 1 << (DIGIT_BITS * n)
        self.guard = sum((BASE >> 1) << (DIGIT_BITS * i) for i in range(n))
        ring_steps = [w * self.top_unit - (1 << (DIGIT_BITS * i)) for i, w in enumerate(ring.weights)]
        if kind == "schreyer":
            self.outer = outer
            self.leads = list(leads)
            self.twists = tuple(outer.degree(L) for L in self.leads)
            self.lead_packed = [outer.decode(L)[1] for L in self.leads]
            self.steps = [TIE * s for s in outer.steps]
            self.base = [L * TIE + (TIE - 1 - c) for c, L in enumerate(self.leads)]
        else:
            self.twists = tuple(twists)
            if kind == "top":
                self.steps = [TIE * s for s in ring_steps]
                self.base = [(tw * self.top_unit + self.low) * TIE + (TIE - 1 - c)
                             for c, tw in enumerate(self.twists)]
            elif kind == "pot":
                self.steps = ring_steps
                self.base = [(TIE - 1 - c) * self.top_unit * BASE + self.low
                             for c in range(len(self.twists))]
            else:
                raise ValueError(f"unknown order kind {kind!r}")
        self.rank = len(self.twists)
        self._decode = {}

    @classmethod
    def schreyer(cls, outer: "ModuleOrder", leads):
        return cls(outer.ring, None, "schreyer", outer=outer, leads=leads)

    def key(self, c: int, exp) -> int:
        k = self.base[c]
        for e, s in zip(exp, self.steps):
            if e:
                k += e * s
        return k

    def shift(self, exp) -> int:
        k = 0
        for e, s in zip(exp, self.steps):
            if e:
                k += e * s
        return k

    def shift_packed(self, packed: int) -> int:
        k = 0
        i = 0
        mask = BASE - 1
        while packed:
            e = packed & mask
            if e:
                k += e * self.steps[i]
            packed >>= DIGIT_BITS
            i += 1
        return k

    def decode(self, key: int):
        """(component, packed exponent) of a term key."""
        r = self._decode.get(key)
        if r is not None:
            return r
        if self.kind == "top":
            c = TIE - 1 - key % TIE
            packed = self.low - (key // TIE) % self.top_unit
        elif self.kind == "pot":
            span = self.top_unit * BASE
            c = TIE - 1 - key // span
            packed = self.low - (key % span) % self.top_unit
        else:
            c = TIE - 1 - key % TIE
            packed = self.outer.decode(key // TIE)[1] - self.lead_packed[c]
        r = (c, packed)
        self._decode[key] = r
        return r

    def degree(self, key: int) -> int:
        """Twisted degree of a term."""
        if self.kind == "top":
            return (key // TIE) // self.top_unit
        if self.kind == "pot":
            c, packed = self.decode(key)
            return self.ring.degree(unpack(packed, self.n)) + self.twists[c]
        return self.outer.degree(key // TIE)

    def divides(self, pa: int, pb: int) -> bool:
        g = self.guard
        return ((pb | g) - pa) & g == g

    # -- conversion ---------------------------------------------------------
    def encode(self, entries) -> dict:
        """dict[int, int] from a sequence of polynomials (one per component)."""
        out = {}
        for c, f in enumerate(entries):
            if f is None:
                continue
            for e, v in f.coeffs.items():
                out[self.key(c, e)] = v
        return out

    def encode_poly(self, f: Polynomial, c: int = 0) -> dict:
        return {self.key(c, e): v for e, v in f.coeffs.items()}

    def to_entries(self, vec: dict):
        rows = [dict() for _ in range(self.rank)]
        n = self.n
        for k, v in vec.items():
            c, packed = self.decode(k)
            rows[c][unpack(packed, n)] = v
        return [Polynomial._raw(self.ring, r) for r in rows]


def vec_axpy(acc: dict, vec: dict, shift: int, coef: int, p: int):
    """acc += coef * x^m * vec, with x^m given by its key shift."""
    get = acc.get
    for k, v in vec.items():
        nk = k + shift
        w = (get(nk, 0) + coef * v) % p
        if w:
            acc[nk] = w
        else:
            del acc[nk]


class _Elem:
    __slots__ = ("vec", "lead", "comp", "packed", "deg", "rep", "tail")

    def __init__(self, vec, lead, comp, packed, deg, rep):
        self.vec = vec
        self.lead = lead
        self.comp = comp
        self.packed = packed
        self.deg = deg
        self.rep = rep
        self.tail = [(k, v) for k, v in vec.items() if k != lead]


class Buchberger:
    """Buchberger's algorithm with normal pair selection and strict chain criteria.

    With ``track`` set, each basis element carries its expression in the input
    vectors, restricted to the source coordinates listed in ``track``; every
    discarded or reduced S-pair leaves behind a lifted syzygy of the basis.
    """

    def __init__(self, order: ModuleOrder, track=None, source: ModuleOrder | None = None):
        self.order = order
        self.p = order.ring.p
        self.basis: list[_Elem] = []
        self.by_comp = defaultdict(list)
        self.pairs = []
        self.alive = set()
        self.track = None if track is None else list(track)
        self.source = source
        self.lifts = []  # syzygies of the basis, as lists of (index, packed mono, coeff)
        self.input_syzygies = []  # source-coordinate syzygies from zero inputs
        self.ideal_case = order.rank == 1
        self.stats = {"pairs": 0, "zero_reductions": 0, "chain_pruned": 0, "coprime": 0}

    # -- reduction ------------------------------------------------------------
    def find_divisor(self, key):
        c, packed = self.order.decode(key)
        divides = self.order.divides
        basis = self.basis
        for idx in self.by_comp.get(c, ()):
            g = basis[idx]
            if divides(g.packed, packed):
                return idx, packed - g.packed
        return None

    def reduce(self, vec: dict, quotients=None, full=True) -> dict:
        p = self.p
        h = dict(vec)
        heap = [-k for k in h]
        heapq.heapify(heap)
        rem = {}
        basis = self.basis
        find = self.find_divisor
        while heap:
            k = -heapq.heappop(heap)
            c = h.get(k)
            if c is None:
                continue
            hit = find(k)
            if hit is None:
                rem[k] = c
                del h[k]
                if not full:
                    rem.update(h)
                    break
                continue
            idx, mono = hit
            g = basis[idx]
            shift = k - g.lead
            del h[k]
            neg = p - c
            for gk, gv in g.tail:
                nk = gk + shift
                v = h.get(nk)
                if v is None:
                    h[nk] = neg * gv % p
                    heapq.heappush(heap, -nk)
                else:
                    v = (v + neg * gv) % p
                    if v:
                        h[nk] = v
                    else:
                        del h[nk]
            if quotients is not None:
                quotients.append((idx, mono, c))
        return rem

    # -- basis maintenance ----------------------------------------------------
    def _rep_combination(self, terms, scale):
        """Σ coeff * x^mono * rep[idx] over ``terms``, times ``scale``."""
        out = {}
        p = self.p
        src = self.source
        for idx, mono, coef in terms:
            vec_axpy(out, self.basis[idx].rep, src.shift_packed(mono), coef * scale % p, p)
        return out

    def add(self, vec: dict, rep=None) -> int:
        p = self.p
        lead = max(vec)
        lc = vec[lead]
        if lc != 1:
            inv = pow(lc, p - 2, p)
            vec = {k: v * inv % p for k, v in vec.items()}
            if rep is not None:
                rep = {k: v * inv % p for k, v in rep.items()}
        comp, packed = self.order.decode(lead)
        elem = _Elem(vec, lead, comp, packed, self.order.degree(lead), rep)
        new = len(self.basis)
        self.basis.append(elem)
        self._update_pairs(new)
        self.by_comp[comp].append(new)
        return new

    def _lcm_packed(self, a, b):
        n = self.order.n
        return pack(mono_lcm(unpack(a, n), unpack(b, n)))

    def _update_pairs(self, k):
        order = self.order
        gk = self.basis[k]
        same = self.by_comp.get(gk.comp, [])
        divides = order.divides
        # criterion B on existing pairs: gk's lead divides lcm(i,j) strictly on both sides
        if self.alive:
            drop = []
            for pair in self.alive:
                i, j, L = pair
                if self.basis[i].comp != gk.comp or not divides(gk.packed, L):
                    continue
                if self._lcm_packed(self.basis[i].packed, gk.packed) != L and \
                        self._lcm_packed(self.basis[j].packed, gk.packed) != L:
                    drop.append(pair)
            for pair in drop:
                self.alive.discard(pair)
                self.stats["chain_pruned"] += 1
        new_pairs = {}
        for i in same:
            new_pairs[i] = self._lcm_packed(self.basis[i].packed, gk.packed)
        for i, L in new_pairs.items():
            redundant = False
            for j, Lj in new_pairs.items():
                if j == i:
                    continue
                if divides(self.basis[j].packed, L) and Lj != L and \
                        self._lcm_packed(self.basis[i].packed, self.basis[j].packed) != L:
                    redundant = True
                    break
            if redundant:
                self.stats["chain_pruned"] += 1
                continue
            gi = self.basis[i]
            if self.ideal_case and L == gi.packed + gk.packed:
                self.stats["coprime"] += 1
                if self.track is not None:
                    self._koszul_lift(i, k)
                continue
            pair = (i, k, L)
            self.alive.add(pair)
            lkey = order.base[gk.comp] + order.shift_packed(L)
            heapq.heappush(self.pairs, (order.degree(lkey), lkey, i, k, L))

    def _koszul_lift(self, i, j):
        gi, gj = self.basis[i], self.basis[j]
        decode = self.order.decode
        terms = []
        for k, v in gj.vec.items():
            terms.append((i, decode(k)[1], v))
        p = self.p
        for k, v in gi.vec.items():
            terms.append((j, decode(k)[1], p - v))
        self.lifts.append(terms)

    def spoly(self, i, j, L):
        p = self.p
        gi, gj = self.basis[i], self.basis[j]
        out = {}
        vec_axpy(out, gi.vec, self.order.shift_packed(L - gi.packed), 1, p)
        vec_axpy(out, gj.vec, self.order.shift_packed(L - gj.packed), p - 1, p)
        return out

    def run(self):
        p = self.p
        while self.pairs:
            deg, lkey, i, j, L = heapq.heappop(self.pairs)
            pair = (i, j, L)
            if pair not in self.alive:
                continue
            self.alive.discard(pair)
            self.stats["pairs"] += 1
            s = self.spoly(i, j, L)
            quots = [] if self.track is not None else None
            h = self.reduce(s, quots)
            if self.track is not None:
                gi, gj = self.basis[i], self.basis[j]
                lift = [(i, L - gi.packed, 1), (j, L - gj.packed, p - 1)]
                lift.extend((idx, mono, (p - c) % p) for idx, mono, c in quots)
            if not h:
                self.stats["zero_reductions"] += 1
                if self.track is not None:
                    self.lifts.append(lift)
                continue
            rep = None
            if self.track is not None:
                rep = self._rep_combination(lift, 1)
            new = len(self.basis)
            lc = h[max(h)]
            if self.track is not None:
                lift.append((new, 0, (p - lc) % p))
                self.lifts.append(lift)
            self.add(h, rep)

    # -- outputs ----------------------------------------------------------------
    def syzygies_in_source(self):
        """Lifted syzygies mapped to source coordinates (restricted to tracked ones)."""
        out = []
        for lift in self.lifts:
            v = self._rep_combination(lift, 1)
            if v:
                out.append(v)
        out.extend(self.input_syzygies)
        return out

    def reduced_basis(self):
        """Reduced Gröbner basis as a list of monic key-dicts, sorted by leading key."""
        basis = self.basis
        keep = []
        for idx, g in enumerate(basis):
            redundant = False
            for jdx, h in enumerate(basis):
                if jdx == idx or h.comp != g.comp:
                    continue
                if self.order.divides(h.packed, g.packed):
                    if h.packed != g.packed or jdx < idx:
                        redundant = True
                        break
            if not redundant:
                keep.append(idx)
        sub = Buchberger(self.order)
        for idx in keep:
            g = basis[idx]
            e = _Elem(g.vec, g.lead, g.comp, g.packed, g.deg, None)
            sub.basis.append(e)
            sub.by_comp[g.comp].append(len(sub.basis) - 1)
        out = []
        for pos, idx in enumerate(keep):
            g = basis[idx]
            # reduce tail by the other minimal elements (leads are pairwise non-divisible)
            saved = sub.by_comp[g.comp]
            sub.by_comp[g.comp] = [q for q in saved if q != pos]
            tail = {k: v for k, v in g.vec.items() if k != g.lead}
            red = sub.reduce(tail)
            sub.by_comp[g.comp] = saved
            red[g.lead] = 1
            out.append(red)
        out.sort(key=max, reverse=True)
        return out


def groebner_keys(vectors, order: ModuleOrder, track=None, source=None):
    """Run Buchberger on key-dict ``vectors``; returns the engine."""
    eng = Buchberger(order, track=track, source=source)
    for j, v in enumerate(vectors):
        rep = None
        if track is not None:
            rep = {source.key(j, (0,) * order.n): 1} if j in eng.track else {}
        if not v:
            if track is not None and rep:
                eng.input_syzygies.append(rep)
            continue
        eng.add(dict(v), rep)
    eng.run()
    return eng


# ---------------------------------------------------------------------------
# Polynomial-level API
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FreeModuleVector:
    """An element of ⊕ S(-twists[i]) given by one polynomial per summand."""

    twists: tuple
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(self.twists))
        object.__setattr__(self, "entries", tuple(self.entries))
        if len(self.twists) != len(self.entries):
            raise ValueError("one entry per twist")

    @property
    def ring(self):
        return self.entries[0].ring

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.entries)

    def degree(self):
        """Common value of deg(entry_i) + twist_i over nonzero entries; None for zero."""
        degs = set()
        for f, a in zip(self.entries, self.twists):
            for d in f.degrees():
                degs.add(d + a)
        if len(degs) > 1:
            raise ValueError(f"inhomogeneous module element (degrees {sorted(degs)})")
        return degs.pop() if degs else None

    def is_homogeneous(self) -> bool:
        try:
            self.degree()
        except ValueError:
            return False
        return True

    def __str__(self):
        return "[" + ", ".join(str(f) for f in self.entries) + "]"


@dataclass(frozen=True)
class Ideal:
    ring: RingSpec
    generators: tuple

    def __init__(self, ring, generators=()):
        gens = tuple(g for g in generators if not g.is_zero())
        for g in gens:
            if g.ring != ring:
                raise ValueError("generator from a different ring")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", gens)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.generators + other.generators)

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


class GroebnerBasis:
    """Reduced Gröbner basis of an ideal for the weighted grevlex order."""

    order_tag = "wgrevlex"

    def __init__(self, ring: RingSpec, basis, _order=None):
        self.ring = ring
        self.basis = tuple(basis)
        self._order = _order or ModuleOrder(ring, (0,))
        self._eng = None

    @property
    def order(self):
        return self.order_tag

    def _engine(self):
        if self._eng is None:
            eng = Buchberger(self._order)
            for g in self.basis:
                vec = self._order.encode_poly(g)
                lead = max(vec)
                c, packed = self._order.decode(lead)
                eng.basis.append(_Elem(vec, lead, c, packed, self._order.degree(lead), None))
                eng.by_comp[c].append(len(eng.basis) - 1)
            self._eng = eng
        return self._eng

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise ValueError("ring mismatch")
        rem = self._engine().reduce(self._order.encode_poly(f))
        return self._order.to_entries(rem)[0]

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def is_unit(self) -> bool:
        return any(g.constant_value() not in (None, 0) for g in self.basis)

    def leading_exponents(self):
        return [g.lead_exp() for g in self.basis]

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return self.ring == other.ring and self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def dump(self) -> str:
        return "\n".join(str(g) for g in self.basis)


def reduced_groebner_basis(I: Ideal) -> GroebnerBasis:
    ring = I.ring
    order = ModuleOrder(ring, (0,))
    eng = groebner_keys([order.encode_poly(g) for g in I.generators], order)
    basis = [order.to_entries(v)[0] for v in eng.reduced_basis()]
    return GroebnerBasis(ring, basis, order)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    return G.normal_form(f)


def ideal_membership(f: Polynomial, I: Ideal) -> bool:
    return reduced_groebner_basis(I).contains(f)


def ideals_equal(I: Ideal, J: Ideal) -> bool:
    return reduced_groebner_basis(I) == reduced_groebner_basis(J)


def ideal_contains(I: Ideal, J: Ideal) -> bool:
    """True if J ⊆ I."""
    G = reduced_groebner_basis(I)
    return all(G.contains(g) for g in J.generators)


def _column_order(ring, twists, order):
    if order is None:
        return ModuleOrder(ring, twists, "top")
    return order


def syzygy_keys(columns, target: ModuleOrder, track=None):
    """Syzygies of key-dict ``columns`` in ``target``.

    Returns (syzygy key-dicts, source order).  The source order is the Schreyer
    order induced by the leading terms of the columns (zero columns get the
    ring order at their own twist position, appended after).
    """
    leads = [max(c) for c in columns if c]
    if len(leads) == len(columns):
        source = ModuleOrder.schreyer(target, leads)
    else:
        # zero columns have no leading term; use a degree-compatible top order
        twists = []
        for c in columns:
            twists.append(target.degree(max(c)) if c else 0)
        source = ModuleOrder(target.ring, twists, "top")
    if track is None:
        track = range(len(columns))
    eng = groebner_keys(columns, target, track=set(track), source=source)
    return eng.syzygies_in_source(), source


def syzygies(columns, order: ModuleOrder | None = None, track=None, degrees=None):
    """Generators of the kernel of ⊕ S(-b_j) → F sending e_j to ``columns[j]``.

    ``columns`` are FreeModuleVector (all with the same twists) or Polynomials
    (the rank one case).  Returned vectors have twists b_j = degree of column j
    and are homogeneous.  With ``track`` only the listed coordinates of the
    syzygies are computed; the others come back as zero.
    """
    if not columns:
        return []
    if isinstance(columns[0], Polynomial):
        ring = columns[0].ring
        columns = [FreeModuleVector((0,), (f,)) for f in columns]
    ring = columns[0].ring
    twists = columns[0].twists
    target = _column_order(ring, twists, order)
    keyed = [target.encode(c.entries) for c in columns]
    degs = list(degrees) if degrees is not None else []
    if degrees is None:
        for c in columns:
            d = c.degree()
            if d is None:
                raise ValueError("zero column: its degree must be given by the caller")
            degs.append(d)
    raw, source = syzygy_keys(keyed, target, track)
    out = []
    for v in raw:
        ents = source.to_entries(v)
        out.append(FreeModuleVector(tuple(degs), tuple(ents)))
    return out


def apply_columns(columns, v: FreeModuleVector):
    """Σ v_j * columns[j] as a list of polynomials."""
    acc = None
    for coef, col in zip(v.entries, columns):
        if coef.is_zero():
            continue
        ents = [coef * c for c in col.entries] if isinstance(col, FreeModuleVector) else [coef * col]
        acc = ents if acc is None else [a + b for a, b in zip(acc, ents)]
    return acc


def intersect_ideals(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J as first coordinates of Syz((1,1), (f_i,0), (0,g_j))."""
    ring = I.ring
    if not I.generators or not J.generators:
        return Ideal(ring, ())
    one, zero = ring.one(), ring.zero()
    cols = [FreeModuleVector((0, 0), (one, one))]
    cols += [FreeModuleVector((0, 0), (f, zero)) for f in I.generators]
    cols += [FreeModuleVector((0, 0), (zero, g)) for g in J.generators]
    syz = syzygies(cols, ModuleOrder(ring, (0, 0), "pot"), track=[0])
    gens = [v.entries[0] for v in syz if not v.entries[0].is_zero()]
    return minimalize(Ideal(ring, gens))


def minimalize(I: Ideal) -> Ideal:
    """Replace the generators by the reduced Gröbner basis."""
    return Ideal(I.ring, reduced_groebner_basis(I).basis)


def colon_by_element(I: Ideal, g: Polynomial) -> Ideal:
    """[I : g], read off the last coordinates of Syz(gens(I), g)."""
    ring = I.ring
    if g.is_zero():
        return Ideal(ring, (ring.one(),))
    if not I.generators:
        return Ideal(ring, ())
    cols = list(I.generators) + [g]
    syz = syzygies(cols, track=[len(cols) - 1])
    gens = [v.entries[-1] for v in syz if not v.entries[-1].is_zero()]
    return minimalize(Ideal(ring, gens))


def colon_ideal(I: Ideal, J: Ideal) -> Ideal:
    """[I : J] = ∩ over generators g of J of [I : g]."""
    ring = I.ring
    if not J.generators:
        return Ideal(ring, (ring.one(),))
    result = None
    for g in J.generators:
        part = colon_by_element(I, g)
        result = part if result is None else intersect_ideals(result, part)
    return result


class SaturationBoundExceeded(RuntimeError):
    pass


def _is_irrelevant(J: Ideal) -> bool:
    ring = J.ring
    vars_ = {ring.var(i) for i in range(ring.nvars)}
    gens = set()
    for g in J.generators:
        lc = g.lead_coeff()
        gens.add(g.scale(pow(lc, ring.p - 2, ring.p)))
    return gens == vars_


def _has_pure_powers(G: GroebnerBasis) -> bool:
    n = G.ring.nvars
    found = set()
    for e in G.leading_exponents():
        nz = [i for i, k in enumerate(e) if k]
        if len(nz) == 1:
            found.add(nz[0])
        if not nz:
            return True
    return len(found) == n


def saturate(I: Ideal, J: Ideal, max_iter: int = 50, stats=None) -> Ideal:
    """[I : J^∞] by iterating colons until the reduced Gröbner basis stabilizes.

    Shortcut: when J is the ideal of all variables and I is already primary to
    it (its leading terms include a pure power of every variable), the answer
    is the unit ideal.
    """
    ring = I.ring
    G = reduced_groebner_basis(I)
    if G.is_unit():
        return Ideal(ring, (ring.one(),))
    if _is_irrelevant(J) and _has_pure_powers(G):
        if stats is not None:
            stats["iterations"] = 0
            stats["shortcut"] = True
        return Ideal(ring, (ring.one(),))
    current = Ideal(ring, G.basis)
    for it in range(1, max_iter + 1):
        nxt = colon_ideal(current, J)
        Gn = reduced_groebner_basis(nxt)
        if Gn == G:
            if stats is not None:
                stats["iterations"] = it
            return current
        G = Gn
        current = Ideal(ring, Gn.basis)
        if Gn.is_unit():
            if stats is not None:
                stats["iterations"] = it
            return current
    raise SaturationBoundExceeded(f"saturation did not stabilize within {max_iter} colon steps")


# ---------------------------------------------------------------------------
# Submodules
# ---------------------------------------------------------------------------

class ModuleGroebnerBasis:
    """Reduced Gröbner basis of a graded submodule (position-over-term by default)."""

    def __init__(self, ring, twists, columns, kind="pot"):
        self.ring = ring
        self.twists = tuple(twists)
        self.order = ModuleOrder(ring, self.twists, kind)
        eng = groebner_keys([self.order.encode(c.entries) for c in columns], self.order)
        self._keys = eng.reduced_basis()
        self.basis = [FreeModuleVector(self.twists, self.order.to_entries(v)) for v in self._keys]

    def leading_terms(self):
        """(component, exponent tuple) of each basis element."""
        out = []
        for v in self._keys:
            c, packed = self.order.decode(max(v))
            out.append((c, unpack(packed, self.order.n)))
        return out

    def normal_form(self, v: FreeModuleVector) -> FreeModuleVector:
        eng = Buchberger(self.order)
        for vec in self._keys:
            lead = max(vec)
            c, packed = self.order.decode(lead)
            eng.basis.append(_Elem(vec, lead, c, packed, 0, None))
            eng.by_comp[c].append(len(eng.basis) - 1)
        rem = eng.reduce(self.order.encode(v.entries))
        return FreeModuleVector(self.twists, self.order.to_entries(rem))
