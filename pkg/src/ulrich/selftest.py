"""Oracle suite run by ``ulrich selftest``: every engine result is compared with linear algebra."""
from __future__ import annotations

from .double_cover import syzygy_over_R
from .graded import (
    GradedModulePresentation, hilbert_data, line_bundle_cohomology, minimal_free_resolution,
    sheaf_cohomology_p2,
)
from .groebner import FreeModuleVector, Ideal, reduced_groebner_basis, saturate, syzygies
from .linalg import poly_multiply_monomial
from .oracles import (
    colon_mismatches, hilbert_mismatches, ideal_pieces_equal, in_ideal, saturation_mismatches,
    syzygy_mismatches,
)
from .pipeline import build_residual_scheme, build_ulrich_module, generate_instance
from .poly import p2_ring, random_homogeneous


def resolution_mismatches(res, bound):
    """Consecutive maps compose to zero, and degreewise ranks satisfy rank-nullity."""
    from .graded import map_slice_rank
    ring = res.ring
    bad = []
    for i in range(1, len(res.maps)):
        outer, inner = res.maps[i - 1], res.maps[i]
        for col in inner:
            for r in range(len(res.twists[i - 1])):
                acc = ring.zero()
                for c, f in zip(outer, col):
                    if not f.is_zero() and not c[r].is_zero():
                        acc = acc + f * c[r]
                if not acc.is_zero():
                    bad.append(("composition", i))
                    break
    for i, cols in enumerate(res.maps):
        degs = [FreeModuleVector(tuple(res.twists[i]), tuple(c)).degree() for c in cols]
        for d in range(bound + 1):
            rank_in = map_slice_rank(ring, cols, degs, res.twists[i], d)
            src = sum(ring.dim(d - b) for b in res.twists[i + 1])
            if i + 1 < len(res.maps):
                nxt = res.maps[i + 1]
                nd = [FreeModuleVector(tuple(res.twists[i + 1]), tuple(c)).degree() for c in nxt]
                rank_next = map_slice_rank(ring, nxt, nd, res.twists[i + 1], d)
            else:
                rank_next = 0
            if src - rank_in != rank_next:
                bad.append(("exactness", i, d))
    return bad


def run_selftest(s: int = 3, p: int = 32003, seed: int = 0, bound: int | None = None, log=print):
    D = 3 * s + 2 if bound is None else bound
    S = p2_ring(p)
    failures = []

    def report(name, bad):
        if bad:
            failures.append((name, bad))
            log(f"FAIL {name}: {bad[:3]}")
        else:
            log(f"ok   {name}")

    # Gröbner bases of random ideals vs spans of multiples
    gens = [random_homogeneous(d, S, seed * 10 + i) for i, d in enumerate((2, 3, 3))]
    G = reduced_groebner_basis(Ideal(S, gens))
    report("groebner basis spans the ideal", ideal_pieces_equal(S, gens, G.basis, D))
    member = gens[0] * random_homogeneous(2, S, seed * 10 + 5) + gens[1] * S.var("x")
    outsider = random_homogeneous(2, S, seed * 10 + 6)
    agree = [f for f in (member, outsider) if G.contains(f) != in_ideal(f, gens)]
    report("membership agrees with linear algebra", [str(f) for f in agree])

    cols = [FreeModuleVector((0, 0), (random_homogeneous(2, S, seed * 10 + 7 + i),
                                      random_homogeneous(2, S, seed * 10 + 9 + i))) for i in range(3)]
    syz = syzygies(cols)
    report("syzygies of a random 2x3 matrix",
           syzygy_mismatches([c.entries for c in cols], [2, 2, 2], (0, 0), [v.entries for v in syz], D,
                             S.monomials, poly_multiply_monomial, p))

    for k in range(-5, 6):
        got = sheaf_cohomology_p2(GradedModulePresentation.free(S, (0,)), k)
        if got != line_bundle_cohomology(k):
            report(f"cohomology of O({k})", [(got, line_bundle_cohomology(k))])
            break
    else:
        report("cohomology of O(k), k in [-5, 5]", [])

    # the construction at this seed
    inst = generate_instance(s, p, seed)
    res = build_residual_scheme(inst)
    cand = build_ulrich_module(inst, res)
    dc = cand.ring
    mods = {
        "pushforward of E": cand.pushforward,
        "pushforward of I_Z": cand.pushforward_IZ,
        "pushforward of O_Z": cand.pushforward_OZ,
        "O_Z'": GradedModulePresentation.quotient(S, [inst.F1, inst.F2]),
    }
    for name, M in mods.items():
        report(f"Hilbert series of {name}", hilbert_mismatches(M, D))
        report(f"resolution of {name}", resolution_mismatches(minimal_free_resolution(M), D))
    report("constant Hilbert value of O_Z' is s^2",
           [] if hilbert_data(mods["O_Z'"]).function(3 * s) == s * s else ["length"])

    f1, f2, t = dc.lift(inst.F1), dc.lift(inst.F2), dc.t
    K = syzygy_over_R(dc, [f1, f2, t])
    report("syzygies over R of (f1, f2, t)",
           syzygy_mismatches([(f1,), (f2,), (t,)], [s, s, s], (0,), [g.entries for g in K.generators], D,
                             dc.monomials, dc.multiply_monomial, p, reduce=dc.reduce))
    S4 = dc.ambient
    report("colon [I_Z1 : I_Z2]",
           colon_mismatches(S4, res.I_Z1.generators, res.I_Z2.generators, res.I_Z.generators, D))
    m = [dc.lift(v) for v in S.gens()]
    stats = {}
    sat = saturate(res.I_Z, Ideal(S4, tuple(m)), stats=stats)
    report("saturation of I_Z",
           saturation_mismatches(S4, res.I_Z.generators, m, sat.generators, D,
                                 max(1, stats.get("iterations", 1))))
    log("selftest: " + ("all oracles agree" if not failures else f"{len(failures)} mismatches"))
    return failures
