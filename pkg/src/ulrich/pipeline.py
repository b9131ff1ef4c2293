"""Build the rank-2 bundle E = Syz_R(f1, f2, t)(2s) on a double plane and certify it is Ulrich.

Every cohomological statement is computed on P^2 through pushforward modules.
A passing certificate over F_p is evidence for the complex statement, not a
proof of it.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .double_cover import (
    DoubleCoverRing, RModulePresentation, is_smooth_branch, make_double_cover,
    pushforward_to_p2, r_quotient, syzygy_over_R,
)
from .graded import (
    GradedModulePresentation, betti_table, cohomology_table, graded_piece_dimension, hilbert_data,
    is_saturated, is_trivial_free, minimal_generators, sheaf_cohomology_p2,
)
from .groebner import Ideal, colon_ideal, ideals_equal, reduced_groebner_basis, saturate
from .poly import DEFAULT_PRIME, Polynomial, binomial, is_prime, p2_ring, random_homogeneous

CHECK_NAMES = (
    "membership",
    "finiteness",
    "smoothness",
    "colon_identity",
    "dimension_identities",
    "saturation",
    "freeness",
    "ulrich_vanishing",
    "special_ulrich",
)

DEFAULT_WINDOW = (-3, 3)
DEFAULT_BUDGET = 100
MAX_BUDGET = 4096  # attempts are packed into 12 bits of the derived seed


class InstanceError(ValueError):
    """Precondition violated by (s, p) or by supplied polynomials."""


class ResampleBudgetExhausted(RuntimeError):
    pass


def check_parameters(s: int, p: int):
    if s < 3:
        raise InstanceError(f"s = {s}: need s >= 3")
    if not is_prime(p) or p == 2:
        raise InstanceError(f"p = {p}: need an odd prime")
    if (2 * s) % p == 0:
        raise InstanceError(f"p = {p} divides 2s = {2 * s}: need p ∤ 2s")


@dataclass
class Instance:
    p: int
    s: int
    seed: int
    F1: Polynomial
    F2: Polynomial
    F: Polynomial
    A: Polynomial | None = None
    B: Polynomial | None = None
    resamples: int = 0

    @property
    def ring(self):
        return self.F.ring

    def to_json(self):
        d = {"p": self.p, "s": self.s, "seed": self.seed,
             "F1": str(self.F1), "F2": str(self.F2), "F": str(self.F)}
        if self.A is not None:
            d["A"] = str(self.A)
        if self.B is not None:
            d["B"] = str(self.B)
        d["resamples"] = self.resamples
        return d

    @classmethod
    def from_json(cls, d, budget: int = DEFAULT_BUDGET):
        p = int(d.get("p", DEFAULT_PRIME))
        s = int(d["s"])
        seed = int(d.get("seed", 0))
        check_parameters(s, p)
        if "F1" not in d:
            return generate_instance(s, p, seed, budget)
        S = p2_ring(p)
        F1, F2 = S.parse(d["F1"]), S.parse(d["F2"])
        A = S.parse(d["A"]) if "A" in d else None
        B = S.parse(d["B"]) if "B" in d else None
        if "F" in d:
            F = S.parse(d["F"])
        elif A is not None and B is not None:
            F = A * F1 + B * F2
        else:
            raise InstanceError("instance needs F, or A and B")
        for name, g, deg in (("F1", F1, s), ("F2", F2, s), ("F", F, 2 * s)):
            if g.is_zero() or not g.is_homogeneous() or g.degree() != deg:
                raise InstanceError(f"{name} must be a nonzero form of degree {deg}")
        return cls(p, s, seed, F1, F2, F, A, B, int(d.get("resamples", 0)))


def _subseed(seed: int, attempt: int, role: int) -> int:
    return (seed * MAX_BUDGET + attempt) * 4 + role


def generate_instance(s: int, p: int = DEFAULT_PRIME, seed: int = 0,
                      budget: int = DEFAULT_BUDGET) -> Instance:
    """Random F = A F1 + B F2, resampled until F1, F2 meet in finitely many points and F = 0 is smooth."""
    check_parameters(s, p)
    if not 0 <= budget <= MAX_BUDGET:
        raise InstanceError(f"budget must lie in [0, {MAX_BUDGET}]")
    S = p2_ring(p)
    for attempt in range(budget):
        F1, F2, A, B = (random_homogeneous(s, S, _subseed(seed, attempt, r)) for r in range(4))
        F = A * F1 + B * F2
        if F.is_zero() or F1.is_zero() or F2.is_zero():
            continue
        if not complete_intersection_length(F1, F2)[0]:
            continue
        if not is_smooth_branch(F).smooth:
            continue
        return Instance(p, s, seed, F1, F2, F, A, B, resamples=attempt)
    raise ResampleBudgetExhausted(f"no admissible draw in {budget} attempts (s={s}, p={p})")


def complete_intersection_length(F1: Polynomial, F2: Polynomial):
    """(finite?, constant Hilbert value) of k[x,y,z]/(F1, F2)."""
    H = hilbert_data(GradedModulePresentation.quotient(F1.ring, [F1, F2]))
    if not H.is_constant():
        return False, None
    return True, int(H.polynomial[0])


# -- construction ----------------------------------------------------------------

@dataclass
class ResidualScheme:
    ring: DoubleCoverRing
    I_Z1: Ideal
    I_Z2: Ideal
    I_Z: Ideal
    saturated_Z: Ideal
    saturated_Z2: Ideal
    raw_equal: bool
    saturated_equal: bool


def build_residual_scheme(inst: Instance, dc: DoubleCoverRing | None = None) -> ResidualScheme:
    """I_Z = [I_Z1 : I_Z2] in R, computed in the ambient ring with t^2 - F adjoined."""
    dc = dc or make_double_cover(inst.F, inst.s)
    S4 = dc.ambient
    f1, f2, t = dc.lift(inst.F1), dc.lift(inst.F2), dc.t
    rel = dc.relation
    I_Z1 = Ideal(S4, (f1, f2, rel))
    I_Z2 = Ideal(S4, (f1, f2, t, rel))
    I_Z = colon_ideal(I_Z1, I_Z2)
    m = Ideal(S4, tuple(dc.lift(v) for v in dc.base.gens()))
    sat_Z = saturate(I_Z, m)
    sat_Z2 = saturate(I_Z2, m)
    return ResidualScheme(dc, I_Z1, I_Z2, I_Z, sat_Z, sat_Z2,
                          ideals_equal(I_Z, I_Z2), ideals_equal(sat_Z, sat_Z2))


@dataclass
class UlrichCandidate:
    instance: Instance
    ring: DoubleCoverRing
    E: RModulePresentation  # generators in degree 0, embedded in R(s)^3
    residual: ResidualScheme
    pushforward: GradedModulePresentation  # π_* E
    pushforward_IZ: GradedModulePresentation  # π_* I_Z, I_Z = image of (f1, f2, t): R(-s)^3 -> R
    pushforward_OZ: GradedModulePresentation  # π_* O_Z
    rank: Fraction
    c1: int
    c2: int | None


def build_ulrich_module(inst: Instance, residual: ResidualScheme) -> UlrichCandidate:
    dc = residual.ring
    s = inst.s
    f1, f2, t = dc.lift(inst.F1), dc.lift(inst.F2), dc.t
    K = syzygy_over_R(dc, [f1, f2, t])  # kernel inside R(-s)^3
    E = K.twist(2 * s)
    push_E = pushforward_to_p2(E)
    # I_Z as R(-s)^3 / K
    IZ = RModulePresentation(dc, (s, s, s), tuple(K.generators))
    push_IZ = pushforward_to_p2(IZ)
    push_OZ = pushforward_to_p2(r_quotient(dc, residual.I_Z.generators))
    H_E = hilbert_data(push_E)
    # deg(π) = 2 and HP(π_*E) has leading coefficient rank(π_*E)/2
    rank = H_E.leading_coefficient() * 2 / 2 if H_E.dimension == 2 else Fraction(0)
    H_Z = hilbert_data(push_OZ)
    c2 = int(H_Z.polynomial[0]) if H_Z.is_constant() else None
    c1 = 3 * s - 2 * s  # E -> O_X(s)^3 -> I_Z(2s)
    return UlrichCandidate(inst, dc, E, residual, push_E, push_IZ, push_OZ, rank, c1, c2)


# -- certificate -------------------------------------------------------------------

@dataclass
class Check:
    name: str
    status: str
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self):
        return {"name": self.name, "status": self.status, "data": self.data}


@dataclass
class Certificate:
    instance: dict
    checks: list
    timings_ms: dict
    betti: dict | None = None
    cohomology: dict | None = None

    @property
    def verdict(self) -> str:
        return "pass" if self.checks and all(c.passed for c in self.checks) else "fail"

    @property
    def first_failure(self):
        for c in self.checks:
            if not c.passed:
                return c.name
        return None

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self):
        return {
            "verdict": self.verdict,
            "first_failure": self.first_failure,
            "checks": [c.to_json() for c in self.checks],
            "instance": self.instance,
            "timings_ms": self.timings_ms,
            "betti": self.betti,
            "cohomology": self.cohomology,
        }


def h0_ideal_sheaf(I: Ideal, k: int) -> int:
    """h^0(P^2, I~(k)) as the degree-k part of the saturation of I."""
    ring = I.ring
    sat = saturate(I, Ideal(ring, ring.gens()))
    return ring.dim(k) - graded_piece_dimension(GradedModulePresentation.quotient(ring, sat.generators), k)


class _Runner:
    def __init__(self):
        self.checks = []
        self.timings = {}

    def run(self, name, fn):
        t0 = time.perf_counter()
        try:
            ok, data = fn()
            status = "pass" if ok else "fail"
        except Exception as exc:  # a crashing check is a failing check
            status, data = "fail", {"error": f"{type(exc).__name__}: {exc}"}
        self.timings[name] = round((time.perf_counter() - t0) * 1000, 3)
        self.checks.append(Check(name, status, _jsonable(data)))
        return status == "pass"


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return int(obj) if obj.denominator == 1 else str(obj)
    if isinstance(obj, (Polynomial,)):
        return str(obj)
    return obj


def certify(candidate: UlrichCandidate, window=DEFAULT_WINDOW, bound: int | None = None) -> Certificate:
    """Run the nine checks in order on a built candidate."""
    return _certify(candidate.instance, candidate, None, window, bound)


def certify_instance(inst: Instance, window=DEFAULT_WINDOW, bound: int | None = None) -> Certificate:
    """Build the candidate from an instance and certify it; construction failures fail the dependent checks."""
    t0 = time.perf_counter()
    cand, err = None, None
    try:
        dc = make_double_cover(inst.F, inst.s)
        residual = build_residual_scheme(inst, dc)
        cand = build_ulrich_module(inst, residual)
    except Exception as exc:
        err = f"{type(exc).__name__}: {exc}"
    build_ms = round((time.perf_counter() - t0) * 1000, 3)
    cert = _certify(inst, cand, err, window, bound)
    cert.timings_ms["construction"] = build_ms
    return cert


def _certify(inst: Instance, cand: UlrichCandidate | None, build_error, window, bound) -> Certificate:
    s = inst.s
    S = inst.F.ring
    kmin, kmax = window
    D = 3 * s + 2 if bound is None else bound
    h0s = binomial(s + 2, 2)
    r = _Runner()

    def need():
        if cand is None:
            raise RuntimeError(f"construction failed: {build_error}")
        return cand

    def membership():
        G = reduced_groebner_basis(Ideal(S, (inst.F1, inst.F2)))
        nf = G.normal_form(inst.F)
        return nf.is_zero(), {"normal_form": str(nf)}

    def finiteness():
        finite, length = complete_intersection_length(inst.F1, inst.F2)
        return finite and length == s * s, {"finite": finite, "length": length, "expected_length": s * s}

    def smoothness():
        rep = is_smooth_branch(inst.F)
        return rep.smooth, {**rep.to_json(), "surface_smooth": "inferred from the branch curve"}

    def colon_identity():
        res = need().residual
        return res.saturated_equal, {
            "I_Z": [str(g) for g in res.I_Z.generators],
            "raw_equal_to_(f1,f2,t)": res.raw_equal,
            "saturated_equal": res.saturated_equal,
        }

    cache = {}

    def dimension_identities():
        c = need()
        I_Zp = Ideal(S, (inst.F1, inst.F2))
        vals = {
            "h0_P2_IZprime_2s": (h0_ideal_sheaf(I_Zp, 2 * s), 2 * h0s - 1, "2*h0(O(s)) - 1"),
            "h0_X_IZ_2s": (sheaf_cohomology_p2(c.pushforward_IZ, 2 * s)[0], 3 * h0s - 1, "3*h0(O(s)) - 1"),
            "h0_P2_IZprime_s": (h0_ideal_sheaf(I_Zp, s), 2, "2"),
            "h0_P2_pushIZ_s": (sheaf_cohomology_p2(c.pushforward_IZ, s)[0], 3, "3"),
        }
        hE = sheaf_cohomology_p2(c.pushforward, 0)
        cache["hE0"] = hE
        vals["h0_P2_pushE"] = (hE[0], 4, "4")
        vals["h1_P2_pushE"] = (hE[1], 0, "0")
        data = {k: {"value": v, "expected": e, "formula": f} for k, (v, e, f) in vals.items()}
        split = vals["h0_X_IZ_2s"][0] == vals["h0_P2_IZprime_2s"][0] + h0s
        h1_seq = vals["h0_X_IZ_2s"][0] + hE[0] - 3 - 3 * h0s
        data["split_sequence_count"] = split
        data["h1_from_sequence"] = h1_seq
        ok = all(v == e for v, e, _ in vals.values()) and split and h1_seq == 0
        return ok, data

    def saturation():
        c = need()
        P = c.pushforward
        degrees = sorted(set(range(kmin, kmax + 1)) | set(range(0, D + 1)))
        mismatch = {}
        for k in degrees:
            h0 = sheaf_cohomology_p2(P, k)[0]
            dim = graded_piece_dimension(P, k)
            if h0 != dim:
                mismatch[k] = {"module": dim, "sections": h0}
        sat = is_saturated(P)
        return sat and not mismatch, {"depth_at_least_2": sat, "mismatches": mismatch,
                                      "degrees_checked": [degrees[0], degrees[-1]]}

    def freeness():
        c = need()
        gens = minimal_generators(c.pushforward)
        ok = is_trivial_free(c.pushforward, 4)
        return ok, {"minimal_generator_degrees": gens, "rank": 4,
                    "betti": betti_table(c.pushforward).to_json()["entries"]}

    def ulrich_vanishing():
        c = need()
        table = cohomology_table(c.pushforward, kmin, kmax)
        cache["table"] = table
        need_zero = {
            "h1(E(-1))": table.value(1, -1),
            "h2(E(-2))": table.value(2, -2),
            "h0(E(-1))": table.value(0, -1),
            "h1(E(-2))": table.value(1, -2),
        }
        H = hilbert_data(c.pushforward)
        chi_ok = all(table.euler(k) == H.hp(k) for k in range(kmin, kmax + 1))
        ok = all(v == 0 for v in need_zero.values()) and chi_ok
        return ok, {"values": need_zero, "euler_matches_hilbert_polynomial": chi_ok,
                    "window": [kmin, kmax]}

    def special_ulrich():
        c = need()
        H = hilbert_data(c.pushforward)
        # Riemann-Roch on X (H^2 = 2, K = (s-3)H): the linear and constant terms of
        # χ(E(k)) - 2χ(O_X(k)) are 2*c1 and 3s - c2 when c1 = s
        H_O = hilbert_data(pushforward_to_p2(r_quotient(c.ring, ())))
        diff1 = (H.hp(1) - H.hp(0)) - 2 * (H_O.hp(1) - H_O.hp(0))
        diff_quad = (H.hp(2) - 2 * H.hp(1) + H.hp(0)) - 2 * (H_O.hp(2) - 2 * H_O.hp(1) + H_O.hp(0))
        lin = diff1 - diff_quad / 2
        c1_rr = lin / 2
        const = H.hp(0) - 2 * H_O.hp(0)
        c1_sq, c1_K = 2 * c1_rr * c1_rr, 2 * c1_rr * (s - 3)
        c2_rr = (c1_sq - c1_K) / 2 - const
        ok = (c.rank == 2 and c.c1 == s and c.c1 == (s - 3) + 3 and c.c2 == s * s
              and c1_rr == s and c2_rr == s * s)
        return ok, {"rank": c.rank, "c1_twist": c.c1, "canonical_twist": s - 3,
                    "c1_equals_K_plus_3": c.c1 == (s - 3) + 3, "c2_length_Z": c.c2,
                    "expected_c2": s * s, "c1_riemann_roch": c1_rr, "c2_riemann_roch": c2_rr}

    for name, fn in zip(CHECK_NAMES, (membership, finiteness, smoothness, colon_identity,
                                      dimension_identities, saturation, freeness,
                                      ulrich_vanishing, special_ulrich)):
        r.run(name, fn)

    betti = coh = None
    if cand is not None:
        try:
            betti = betti_table(cand.pushforward).to_json()
            table = cache.get("table") or cohomology_table(cand.pushforward, kmin, kmax)
            coh = table.to_json()
        except Exception:
            pass
    return Certificate(inst.to_json(), r.checks, r.timings, betti, coh)


def run(s: int, p: int = DEFAULT_PRIME, seed: int = 0, window=DEFAULT_WINDOW, bound=None,
        budget: int = DEFAULT_BUDGET) -> Certificate:
    """generate -> build -> certify."""
    inst = generate_instance(s, p, seed, budget)
    return certify_instance(inst, window, bound)
