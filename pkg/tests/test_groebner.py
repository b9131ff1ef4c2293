import pytest
import sympy
from hypothesis import given, strategies as st

from ulrich.groebner import (
    FreeModuleVector, Ideal, ModuleGroebnerBasis, SaturationBoundExceeded, colon_ideal,
    ideal_contains, ideal_membership, ideals_equal, intersect_ideals, reduced_groebner_basis,
    saturate, syzygies,
)
from ulrich.linalg import poly_multiply_monomial
from ulrich.oracles import (
    colon_mismatches, ideal_piece, ideal_pieces_equal, in_ideal, saturation_mismatches,
    syzygy_mismatches,
)
from ulrich.poly import cover_ambient_ring, jacobian_partials, mono_divides, p2_ring, random_homogeneous

S = p2_ring()
P = S.p
seeds = st.integers(0, 10**6)
degree_lists = st.lists(st.integers(1, 3), min_size=1, max_size=3)


def random_ideal(seed, degrees, ring=S):
    return Ideal(ring, tuple(random_homogeneous(d, ring, seed * 7 + i) for i, d in enumerate(degrees)))


def sympy_basis(gens):
    x, y, z = sympy.symbols("x y z")
    exprs = [sum(c * x ** e[0] * y ** e[1] * z ** e[2] for e, c in g.coeffs.items()) for g in gens]
    G = sympy.groebner(exprs, x, y, z, modulus=P, order="grevlex")
    return {frozenset((e, c % P) for e, c in g.as_dict().items()) for g in G.polys}


@given(seeds, degree_lists)
def test_reduced_basis_matches_sympy(seed, degrees):
    I = random_ideal(seed, degrees)
    G = reduced_groebner_basis(I)
    mine = {frozenset(g.coeffs.items()) for g in G.basis}
    assert mine == sympy_basis(I.generators)


def test_sympy_cross_check_on_a_structured_ideal():
    x, y, z = S.gens()
    I = Ideal(S, (x * x + y * z, x * y - z * z))
    assert {frozenset(g.coeffs.items()) for g in reduced_groebner_basis(I)} == sympy_basis(I.generators)


@given(seeds, degree_lists)
def test_basis_spans_ideal_degreewise(seed, degrees):
    I = random_ideal(seed, degrees)
    G = reduced_groebner_basis(I)
    assert ideal_pieces_equal(S, I.generators, G.basis, 6) == []


@given(seeds, degree_lists, seeds)
def test_normal_form_properties(seed, degrees, fseed):
    I = random_ideal(seed, degrees)
    G = reduced_groebner_basis(I)
    f = random_homogeneous(4, S, fseed)
    r = G.normal_form(f)
    assert in_ideal(f - r, I.generators)
    leads = G.leading_exponents()
    assert not any(mono_divides(l, e) for e in r.coeffs for l in leads)
    assert G.contains(f) == in_ideal(f, I.generators)


def test_membership_of_combinations():
    I = random_ideal(5, (2, 3))
    f1, f2 = I.generators
    f = f1 * random_homogeneous(2, S, 9) + f2 * S.var("z")
    assert ideal_membership(f, I)
    assert not ideal_membership(random_homogeneous(4, S, 11), I)


def test_unit_and_equality():
    x, y, z = S.gens()
    assert reduced_groebner_basis(Ideal(S, (x, y, z, S.one()))).is_unit()
    I = Ideal(S, (x * y, y * z))
    J = Ideal(S, (y * z + x * y, x * y))
    assert ideals_equal(I, J)
    assert ideal_contains(I, Ideal(S, (x * y * z,)))
    assert not ideal_contains(I, Ideal(S, (x * x,)))


def test_dump_is_parseable():
    G = reduced_groebner_basis(random_ideal(3, (2, 2)))
    back = [S.parse(line) for line in G.dump().splitlines()]
    assert tuple(back) == G.basis


def test_weighted_ring_basis_spans():
    R4 = cover_ambient_ring(3)
    t = R4.var("t")
    F = random_homogeneous(6, p2_ring(), 1).substitute_ring(R4, (0, 1, 2))
    f1 = random_homogeneous(3, p2_ring(), 2).substitute_ring(R4, (0, 1, 2))
    gens = (t * t - F, f1, t * R4.var("x"))
    G = reduced_groebner_basis(Ideal(R4, gens))
    assert ideal_pieces_equal(R4, gens, G.basis, 11) == []


@given(seeds, st.integers(1, 3), st.integers(2, 4))
def test_syzygies_are_complete(seed, rows, ncols):
    cols = [tuple(random_homogeneous(2, S, seed * 13 + 5 * j + i) for i in range(rows)) for j in range(ncols)]
    syz = syzygies([FreeModuleVector((0,) * rows, c) for c in cols])
    assert syzygy_mismatches(cols, [2] * ncols, (0,) * rows, [v.entries for v in syz], 7,
                             S.monomials, poly_multiply_monomial, P) == []


def test_syzygies_with_mixed_degrees_and_twists():
    x, y, z = S.gens()
    cols = [(x, y * y), (y, x * z), (z, S.zero()), (x * y, y * y * z)]
    tw = (1, 0)
    vecs = [FreeModuleVector(tw, c) for c in cols]
    degs = [v.degree() for v in vecs]
    assert degs == [2, 2, 2, 3]
    syz = syzygies(vecs)
    assert syzygy_mismatches(cols, degs, tw, [v.entries for v in syz], 8, S.monomials,
                             poly_multiply_monomial, P) == []


def test_koszul_syzygies_of_a_regular_sequence():
    x, y, z = S.gens()
    syz = syzygies([x, y, z])
    assert len(syz) == 3 and all(v.degree() == 2 for v in syz)


def test_weighted_syzygies():
    R4 = cover_ambient_ring(3)
    t = R4.var("t")
    f = random_homogeneous(3, p2_ring(), 8).substitute_ring(R4, (0, 1, 2))
    g = random_homogeneous(3, p2_ring(), 9).substitute_ring(R4, (0, 1, 2))
    syz = syzygies([f, g, t])
    assert syzygy_mismatches([(f,), (g,), (t,)], [3, 3, 3], (0,), [v.entries for v in syz], 11,
                             R4.monomials, poly_multiply_monomial, P) == []


@given(seeds)
def test_intersection_dimension_formula(seed):
    I = random_ideal(seed, (2, 2))
    J = random_ideal(seed + 1, (1, 3))
    K = intersect_ideals(I, J)
    for d in range(7):
        dI = len(ideal_piece(S, I.generators, d)[0])
        dJ = len(ideal_piece(S, J.generators, d)[0])
        dsum = len(ideal_piece(S, I.generators + J.generators, d)[0])
        assert len(ideal_piece(S, K.generators, d)[0]) == dI + dJ - dsum
    assert all(in_ideal(k, I.generators) and in_ideal(k, J.generators) for k in K.generators)


@given(seeds)
def test_colon_matches_linear_algebra(seed):
    x, y, z = S.gens()
    I = Ideal(S, tuple(random_homogeneous(2, S, seed * 3 + i) * x for i in range(2)) + (y ** 3,))
    J = Ideal(S, (x, y))
    K = colon_ideal(I, J)
    assert colon_mismatches(S, I.generators, J.generators, K.generators, 6) == []


def test_colon_by_unit_and_by_empty():
    I = random_ideal(2, (2, 2))
    assert ideals_equal(colon_ideal(I, Ideal(S, (S.one(),))), I)
    assert reduced_groebner_basis(colon_ideal(I, Ideal(S, ()))).is_unit()


def test_saturation_of_singular_locus():
    """The Jacobian ideal of a nodal product saturates to the ideal of the nodes."""
    F1, F2 = random_homogeneous(2, S, 1), random_homogeneous(2, S, 2)
    F = F1 * F2
    Jac = Ideal(S, tuple(jacobian_partials(F)) + (F,))
    m = Ideal(S, S.gens())
    stats = {}
    sat = saturate(Jac, m, stats=stats)
    assert stats["iterations"] >= 1
    assert not reduced_groebner_basis(sat).is_unit()
    assert ideals_equal(sat, saturate(Ideal(S, (F1, F2)), m))
    assert saturation_mismatches(S, Jac.generators, S.gens(), sat.generators, 6, stats["iterations"]) == []


def test_saturation_shortcut_for_smooth_curve():
    F = random_homogeneous(6, S, 7)
    Jac = Ideal(S, tuple(jacobian_partials(F)))
    stats = {}
    assert reduced_groebner_basis(saturate(Jac, Ideal(S, S.gens()), stats=stats)).is_unit()
    assert stats == {"iterations": 0, "shortcut": True}


def test_saturation_bound():
    x, y, z = S.gens()
    I = Ideal(S, (x ** 4 * z, y ** 4 * z))
    with pytest.raises(SaturationBoundExceeded):
        saturate(I, Ideal(S, (x, y)), max_iter=2)
    assert ideals_equal(saturate(I, Ideal(S, (x, y))), Ideal(S, (z,)))


def test_module_basis_leading_terms():
    x, y, z = S.gens()
    cols = [FreeModuleVector((0, 0), (x, y)), FreeModuleVector((0, 0), (y, z))]
    G = ModuleGroebnerBasis(S, (0, 0), cols)
    lts = G.leading_terms()
    assert (0, (1, 0, 0)) in lts
    v = FreeModuleVector((0, 0), (x * y, y * y))
    assert G.normal_form(v).is_zero()
