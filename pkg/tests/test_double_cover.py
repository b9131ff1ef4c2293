import pytest
from hypothesis import given, strategies as st

from ulrich.double_cover import (
    DoubleCoverError, RModulePresentation, is_smooth_branch, make_double_cover, pushforward_to_p2,
    r_piece_dimension, r_quotient, syzygy_over_R,
)
from ulrich.graded import graded_piece_dimension, hilbert_data, is_trivial_free
from ulrich.linalg import poly_multiply_monomial
from ulrich.oracles import hilbert_mismatches, syzygy_mismatches
from ulrich.poly import binomial, cover_ambient_ring, p2_ring, random_homogeneous

S = p2_ring()
x, y, z = S.gens()
seeds = st.integers(0, 10**6)


@pytest.fixture(scope="module")
def dc():
    return make_double_cover(random_homogeneous(6, S, 21), 3)


def test_preconditions():
    F = random_homogeneous(6, S, 1)
    with pytest.raises(DoubleCoverError, match="degree 8"):
        make_double_cover(F, 4)
    with pytest.raises(DoubleCoverError, match="divides"):
        make_double_cover(random_homogeneous(6, p2_ring(3), 1), 3)
    R4 = cover_ambient_ring(3)
    with pytest.raises(DoubleCoverError, match="t"):
        make_double_cover(R4.var("t") ** 2, 3)
    with pytest.raises(DoubleCoverError):
        make_double_cover(F + x, 3)
    assert make_double_cover(F.substitute_ring(R4, (0, 1, 2)), 3).F == F


def test_canonical_form(dc):
    t = dc.t
    F = dc.F4
    assert dc.reduce(t * t).coeffs == F.coeffs
    assert dc.reduce(t ** 5) == dc.reduce(F * F * t)
    a, b = dc.split(t ** 3 + dc.lift(x ** 3))
    assert a == x ** 3 and b == dc.F
    assert dc.reduce(dc.join(a, b)) == dc.reduce(t ** 3 + dc.lift(x ** 3))


@pytest.mark.parametrize("d", range(12))
def test_graded_dimension_of_R(dc, d):
    assert dc.dim(d) == binomial(d + 2, 2) + binomial(d - 1, 2)


@given(seeds, seeds)
def test_reduction_is_a_ring_map(dc, a, b):
    f = dc.join(random_homogeneous(3, S, a), random_homogeneous(0, S, a + 1))
    g = dc.join(random_homogeneous(4, S, b), random_homogeneous(1, S, b + 1))
    assert dc.reduce(f * g) == dc.reduce(dc.reduce(f) * dc.reduce(g))


def test_pushforward_of_structure_sheaf(dc):
    P = pushforward_to_p2(r_quotient(dc, ()))
    assert P.twists == (0, 3)
    assert is_trivial_free(P, 1) is False
    H = hilbert_data(P)
    assert all(H.function(d) == dc.dim(d) for d in range(12))


@given(seeds)
def test_pushforward_dimensions_match_R_dimensions(dc, seed):
    f = dc.lift(random_homogeneous(2, S, seed))
    g = dc.join(random_homogeneous(3, S, seed + 1), S.one())
    M = RModulePresentation(dc, (0, 1), [(f * dc.lift(x), f), (g, S.zero())])
    push = pushforward_to_p2(M)
    for d in range(-1, 10):
        assert r_piece_dimension(M, d) == graded_piece_dimension(push, d)


def test_smooth_branch_curves():
    fermat = x ** 6 + y ** 6 + z ** 6
    rep = is_smooth_branch(fermat)
    assert rep.smooth and rep.to_json()["smooth"] is True
    assert is_smooth_branch(random_homogeneous(6, S, 4)).smooth


@pytest.mark.parametrize("make", [
    lambda: random_homogeneous(3, S, 1) * random_homogeneous(3, S, 2),
    lambda: random_homogeneous(3, S, 3) ** 2,
    lambda: x ** 2 * (x ** 4 + y ** 4 + z ** 4),
])
def test_singular_branch_curves(make):
    rep = is_smooth_branch(make())
    assert not rep.smooth
    assert rep.iterations and rep.iterations >= 1


def test_syzygies_over_R_are_complete():
    F1, F2, A, B = (random_homogeneous(3, S, 31 + i) for i in range(4))
    dc = make_double_cover(A * F1 + B * F2, 3)
    f1, f2 = dc.lift(F1), dc.lift(F2)
    K = syzygy_over_R(dc, [f1, f2, dc.t])
    # Koszul-type syzygies (f2,-f1,0), (t,0,-f1), (0,t,-f2) and (A, B, -t)
    assert K.twists == (6, 6, 6, 6)
    assert syzygy_mismatches([(f1,), (f2,), (dc.t,)], [3, 3, 3], (0,), [g.entries for g in K.generators], 11,
                             dc.monomials, dc.multiply_monomial, dc.p, reduce=dc.reduce) == []
    push = pushforward_to_p2(K.twist(6))
    assert hilbert_mismatches(push, 11) == []
    assert is_trivial_free(push, 4)


def test_syzygies_over_R_without_membership(dc):
    f1 = dc.lift(random_homogeneous(3, S, 31))
    f2 = dc.lift(random_homogeneous(3, S, 32))
    K = syzygy_over_R(dc, [f1, f2, dc.t])
    assert K.twists[:3] == (6, 6, 6)
    assert syzygy_mismatches([(f1,), (f2,), (dc.t,)], [3, 3, 3], (0,), [g.entries for g in K.generators], 11,
                             dc.monomials, dc.multiply_monomial, dc.p, reduce=dc.reduce) == []
    assert not is_trivial_free(pushforward_to_p2(K.twist(6)), 4)


def test_weighted_oracle_agrees_with_plain_multiplication(dc):
    f = dc.lift(random_homogeneous(2, S, 5))
    m = (1, 0, 0, 1)
    prod = dc.reduce(f * dc.ambient.var("x") * dc.t)
    assert dc.multiply_monomial(m, f) == prod.coeffs
    assert poly_multiply_monomial(m, f) == (f * dc.ambient.var("x") * dc.t).coeffs
