"""Small hand-checkable cases across the modules."""
from math import factorial

from ulrich.double_cover import make_double_cover, pushforward_to_p2, r_quotient, syzygy_over_R
from ulrich.graded import (
    GradedModulePresentation, betti_table, graded_piece_dimension, hilbert_data, is_trivial_free,
    line_bundle_cohomology, minimal_generators, sheaf_cohomology_p2,
)
from ulrich.groebner import (
    Ideal, colon_ideal, ideal_membership, ideals_equal, reduced_groebner_basis,
    saturate, syzygies,
)
from ulrich.oracles import in_ideal
from ulrich.poly import binomial, cover_ambient_ring, jacobian_partials, p2_ring, random_homogeneous

S = p2_ring()
x, y, z = S.gens()


def test_parsing_small_field():
    S7 = p2_ring(7)
    f = S7.parse("x^2 + 2*y*z")
    assert len(f.coeffs) == 2 and f.degree() == 2
    assert S7.parse("7*x").is_zero()
    R4 = cover_ambient_ring(3)
    g = R4.parse("t^2 - x^6")
    assert g.is_homogeneous() and g.degree() == 6


def test_frobenius_against_multinomial_expansion():
    S7 = p2_ring(7)
    a, b = S7.var("x"), S7.var("y")
    lhs = (a + b) ** 7
    assert lhs == a ** 7 + b ** 7
    # brute-force binomial expansion, reduced mod 7
    coeffs = {(i, 7 - i, 0): factorial(7) // (factorial(i) * factorial(7 - i)) % 7 for i in range(8)}
    assert lhs.coeffs == {e: c for e, c in coeffs.items() if c}


def test_small_products():
    assert (x + y) * (x - y) == x * x - y * y
    assert (x * 0).is_zero()


def test_partials():
    assert jacobian_partials(x * x) == (2 * x, S.zero(), S.zero())
    assert jacobian_partials(x * y * z) == (y * z, x * z, x * y)


def test_small_groebner_bases():
    assert reduced_groebner_basis(Ideal(S, (x, y))).basis == (x, y)
    G = reduced_groebner_basis(Ideal(S, (x * x - y * y, x - y)))
    assert G.basis == (x - y,)
    gens = [random_homogeneous(2, S, i) for i in range(3)]
    assert reduced_groebner_basis(Ideal(S, gens)) == reduced_groebner_basis(Ideal(S, gens[::-1]))


def test_small_normal_forms():
    G = reduced_groebner_basis(Ideal(S, (x,)))
    assert G.normal_form(x * x + y) == y
    I = Ideal(S, (random_homogeneous(2, S, 1), random_homogeneous(3, S, 2)))
    G = reduced_groebner_basis(I)
    assert all(G.normal_form(g).is_zero() for g in I.generators)
    f, g = random_homogeneous(3, S, 3), random_homogeneous(3, S, 4)
    assert G.normal_form(f * 5 + g) == G.normal_form(f) * 5 + G.normal_form(g)


def test_membership_small_and_random():
    assert not ideal_membership(x, Ideal(S, (x * x, x * y)))
    F1, F2 = random_homogeneous(3, S, 5), random_homogeneous(3, S, 6)
    for seed in range(4):
        G = random_homogeneous(6, S, 100 + seed)
        assert ideal_membership(G, Ideal(S, (F1, F2))) == in_ideal(G, [F1, F2])
    assert ideal_membership(random_homogeneous(3, S, 7) * F1 + random_homogeneous(3, S, 8) * F2, Ideal(S, (F1, F2)))


def test_koszul_syzygies():
    syz = syzygies([x, y])
    assert len(syz) == 1 and set(syz[0].entries) in ({y, -x}, {-y, x})
    assert len(syzygies([x, y, z])) == 3
    F1, F2 = random_homogeneous(2, S, 9), random_homogeneous(2, S, 10)
    syz = syzygies([F1, F2])
    assert len(syz) == 1 and syz[0].degree() == 4
    a, b = syz[0].entries
    assert (a * F1 + b * F2).is_zero()


def test_small_colons_and_saturations():
    assert ideals_equal(colon_ideal(Ideal(S, (x * x, x * y)), Ideal(S, (x,))), Ideal(S, (x, y)))
    I = Ideal(S, (x * x, x * y))
    assert ideals_equal(colon_ideal(I, Ideal(S, (S.one(),))), I)
    m = Ideal(S, (x, y, z))
    assert ideals_equal(saturate(I, Ideal(S, (x, y))), Ideal(S, (x,)))
    CI = Ideal(S, (random_homogeneous(2, S, 11), random_homogeneous(2, S, 12)))
    sat = saturate(CI, m)
    assert ideals_equal(sat, CI)
    assert ideals_equal(saturate(sat, m), sat)


def test_small_graded_pieces():
    assert graded_piece_dimension(GradedModulePresentation.free(S, (0,)), 2) == 6
    k = GradedModulePresentation.quotient(S, [x, y, z])
    assert graded_piece_dimension(k, 0) == 1 and graded_piece_dimension(k, 1) == 0
    CI = GradedModulePresentation.quotient(S, [random_homogeneous(2, S, 13), random_homogeneous(2, S, 14)])
    assert graded_piece_dimension(CI, 9) == 4 and hilbert_data(CI).polynomial == (4,)


def test_small_minimal_generators():
    M = GradedModulePresentation(S, (0, 0), [(S.one(), -S.one())])
    assert minimal_generators(M) == [0]
    assert minimal_generators(GradedModulePresentation.free(S, (0, 2))) == [0, 2]
    redundant = GradedModulePresentation(S, (0,) * 5, [(S.one(), S.zero(), S.zero(), S.zero(), -S.one())])
    assert is_trivial_free(redundant, 4)
    assert not is_trivial_free(GradedModulePresentation.free(S, (0, 3)), 2)


def test_ideal_of_two_forms_resolution():
    F1, F2 = random_homogeneous(3, S, 15), random_homogeneous(3, S, 16)
    B = betti_table(GradedModulePresentation.ideal(S, [F1, F2]))
    assert B.entries == {(0, 3): 2, (1, 6): 1}
    assert betti_table(GradedModulePresentation.free(S, (0, 1))).length == 0


def test_hilbert_of_polynomial_ring():
    H = hilbert_data(GradedModulePresentation.free(S, (0,)))
    assert H.numerator == {0: 1}
    assert all(H.hp(k) == binomial(k + 2, 2) for k in range(8))


def test_ideal_sheaf_of_a_point():
    pt = GradedModulePresentation.ideal(S, [x, y])
    assert sheaf_cohomology_p2(pt, 1)[0] == 2
    assert all(sheaf_cohomology_p2(pt, k)[1] == 0 for k in range(0, 5))


def test_double_cover_arithmetic():
    dc = make_double_cover(x ** 6 + y ** 6 + z ** 6, 3)
    t = dc.t
    assert dc.reduce(t * t) == dc.F4
    assert dc.reduce(t ** 3) == dc.F4 * t
    a, b, c, d = (random_homogeneous(2, S, 20 + i) for i in range(4))
    lhs = dc.reduce(dc.join(a, b) * dc.join(c, d))
    assert dc.split(lhs) == (a * c + b * d * dc.F, a * d + b * c)


def test_small_R_syzygies():
    dc = make_double_cover(random_homogeneous(6, S, 30), 3)
    assert syzygy_over_R(dc, [dc.t]).twists == ()
    f1, f2 = dc.lift(random_homogeneous(3, S, 31)), dc.lift(random_homogeneous(3, S, 32))
    K = syzygy_over_R(dc, [f1, f2])
    assert len(K.generators) == 1
    a, b = K.generators[0].entries
    c = a.lead_coeff() * pow(f2.lead_coeff(), dc.p - 2, dc.p)
    assert a == f2.scale(c) and b == f1.scale(-c)


def test_small_pushforwards():
    dc = make_double_cover(random_homogeneous(6, S, 33), 3)
    R = pushforward_to_p2(r_quotient(dc, ()))
    assert R.twists == (0, 3) and not R.relations
    H = hilbert_data(R)
    assert all(H.hp(k) == binomial(k + 2, 2) + binomial(k - 1, 2) for k in range(3, 10))
    Rt = hilbert_data(pushforward_to_p2(r_quotient(dc, (dc.t,))))
    SF = hilbert_data(GradedModulePresentation.quotient(S, [dc.F]))
    assert all(Rt.function(d) == SF.function(d) for d in range(12))


def test_certified_pushforward_cohomology(candidate3):
    for k in range(-3, 4):
        assert sheaf_cohomology_p2(candidate3.pushforward, k) == tuple(4 * v for v in line_bundle_cohomology(k))
    assert minimal_generators(candidate3.pushforward) == [0, 0, 0, 0]
