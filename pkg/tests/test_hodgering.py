import random
from fractions import Fraction

import pytest

from hodgelab import hodgering as hr
from hodgelab.gradedpoly import substitute
from hodgelab.hodgering import A, B, C, D, G, ABCD, XYZ, HodgeDiamond, PresentationElement
from hodgelab.intlattice import span_equal, span_equal_mod
from hodgelab.report import VerificationFailure

x, y, z = XYZ.gens()
a, b, c = hr.ABC.gens()
ZERO, ONE = hr.ABC.zero(), hr.ABC.one()
P1 = HodgeDiamond.from_matrix([[1, 0], [0, 1]])
E = HodgeDiamond.from_matrix([[1, 1], [1, 1]])
P2 = HodgeDiamond.from_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def r_n(n):
    return ((n + 1) ** 2 + 1) // 2


@pytest.mark.parametrize("n,r", [(0, 1), (1, 2), (2, 5), (4, 13)])
def test_rank_examples(n, r):
    assert hr.rank_H(n) == r


def test_rank_formula_and_basis():
    for n in range(13):
        assert hr.rank_H(n) == r_n(n) == len(hr.basis_H(n))
        assert all(b.is_member for b in hr.basis_H(n))


def test_basis_examples():
    assert [b.to_poly() for b in hr.basis_H(0)] == [XYZ.one()]
    assert {b.to_poly() for b in hr.basis_H(1)} == {(1 + x * y) * z, (x + y) * z}
    b2 = [b.to_poly() for b in hr.basis_H(2)]
    assert len(b2) == 5 and x * y * z**2 in b2


def test_membership():
    assert hr.is_member(P1)
    assert not hr.is_member(HodgeDiamond.from_matrix([[1, 0], [0, 0]]))
    assert hr.is_member(HodgeDiamond.zero(3))


def test_kunneth():
    assert (P1 * P1).to_poly() == (1 + 2 * x * y + x**2 * y**2) * z**2
    ee = E * E
    assert ee.h[1][1] == 4
    assert ee.h[1][0] == ee.h[0][1] == ee.h[2][1] == ee.h[1][2] == 2
    assert ee.h[0][0] == ee.h[2][2] == ee.h[0][2] == ee.h[2][0] == 1
    assert P2 * HodgeDiamond.from_matrix([[1]]) == P2


def test_phi_examples():
    assert hr.phi_n(A, 1) == P1
    assert hr.phi_n(A**2 - C, 2) == P2
    assert hr.phi(G) == {}


def test_normal_form_examples():
    assert hr.normal_form(D**2) == PresentationElement(-a**2 * c - b**2 * c + 4 * c**2, a * b)
    a3 = hr.normal_form(A**3)
    assert a3.P0 == a**3 and a3.P1.is_zero()
    d3_direct = hr.normal_form(D**3)
    d3_stepwise = hr.normal_form(D * hr.normal_form(D**2).to_poly())
    assert d3_direct == d3_stepwise


def test_nf_mul_examples():
    one_d = PresentationElement(ZERO, ONE)
    assert hr.nf_mul(one_d, one_d) == PresentationElement(-a**2 * c - b**2 * c + 4 * c**2, a * b)
    ea = PresentationElement(a, ZERO)
    eb = PresentationElement(b, ZERO)
    assert hr.nf_mul(ea, eb) == PresentationElement(a * b, ZERO)


def test_phi_respects_normal_form():
    rng = random.Random(3)
    for _ in range(30):
        P = sum((rng.randint(-3, 3) * ABCD.monomial(e) for e in hr.monomials(4)), ABCD.zero())
        assert hr.phi_poly(hr.normal_form(P)) == hr.phi_poly(P)


def test_decompose_examples():
    assert hr.decompose(P2) == PresentationElement(a**2 - c, ZERO)
    phid = HodgeDiamond.from_poly((x + x * y**2) * z**2, 2)
    assert hr.decompose(phid) == PresentationElement(ZERO, ONE)
    assert hr.decompose(E) == PresentationElement(a + b, ZERO)


def test_decompose_rejects_non_members():
    with pytest.raises(hr.NotSerreDual):
        hr.decompose(HodgeDiamond.from_matrix([[1, 0], [0, 0]]))


def test_relations_examples():
    assert hr.relations(0) == []
    r1 = [f.vector() for f in hr.relations(1)]
    assert span_equal(r1, [(1, 0, 0, -1), (0, 1, -1, 0)], 4)
    assert len(hr.relations(2)) == 4
    assert span_equal([f.vector() for f in hr.relations(2)], hr.serre_vectors(2), 9)


def test_congruence_examples():
    for n, m in [(2, 5), (3, 4), (1, 2)]:
        got = [f.vector() for f in hr.congruences(n, m)]
        assert span_equal_mod(got, hr.serre_vectors(n), m, (n + 1) ** 2)
    assert span_equal_mod([(1, 0, 0, 1), (0, 1, 1, 0)], hr.serre_vectors(1), 2, 4)


def test_birational_ideal_basis():
    assert [b.to_poly() for b in hr.birational_ideal_basis(2)] == [x * y * z**2]
    assert {b.to_poly() for b in hr.birational_ideal_basis(3)} == {
        (x * y + x**2 * y**2) * z**3, (x**2 * y + x * y**2) * z**3}
    assert hr.birational_ideal_basis(1) == []


def test_birational_verdicts():
    v = hr.is_birational_invariant(hr.LinearFunctional.unit(2, 1, 1))
    assert not v.invariant
    assert v.witness.to_poly() == x * y * z**2 and v.witness_value == 1
    assert v.witness_label == "Bl_pt(P2) - P2"
    assert hr.is_birational_invariant(hr.LinearFunctional.unit(2, 0, 1)).invariant
    assert hr.is_birational_invariant(hr.LinearFunctional.unit(2, 0, 2)).invariant
    f = hr.LinearFunctional.unit(3, 1, 1).vector()
    g = hr.LinearFunctional.unit(3, 2, 2).vector()
    v3 = hr.is_birational_invariant(hr.LinearFunctional.from_vector(3, [a + b for a, b in zip(f, g)]))
    assert not v3.invariant and v3.witness_value == 2


def test_birational_rational_and_modular():
    half = hr.LinearFunctional.from_vector(2, [Fraction(1, 2) if k == 1 else 0 for k in range(9)])
    assert hr.is_birational_invariant(half).invariant
    # 2 * e11 vanishes mod 2, so it is trivially invariant there
    two = hr.LinearFunctional.from_vector(2, [2 if k == 4 else 0 for k in range(9)], modulus=2)
    assert hr.is_birational_invariant(two).invariant


def test_functional_json_round_trip():
    f = hr.LinearFunctional.from_vector(1, [1, Fraction(-3, 4), 0, 2])
    assert hr.LinearFunctional.from_json(f.to_json()) == f


def test_diamond_json_round_trip():
    assert HodgeDiamond.from_json(P2.to_json()) == P2


def test_verify_runs():
    assert hr.verify_presentation(0).ok
    assert hr.verify_presentation(6).ok
    assert hr.verify_relations(4).ok
    assert hr.verify_birational(5).ok


def test_verify_presentation_negative_control():
    bad = dict(hr.PHI_IMAGES)
    bad["D"] = (x + y) * z**2
    with pytest.raises(VerificationFailure) as exc:
        hr.verify_presentation(4, images=bad)
    assert not exc.value.report.ok


def test_phi_is_ring_hom_on_random_pairs():
    rng = random.Random(11)
    for _ in range(20):
        p = sum((rng.randint(-2, 2) * ABCD.monomial(e) for e in hr.monomials(2)), ABCD.zero())
        q = sum((rng.randint(-2, 2) * ABCD.monomial(e) for e in hr.monomials(3)), ABCD.zero())
        assert hr.phi_n(p * q, 5) == hr.phi_n(p, 2) * hr.phi_n(q, 3)
        assert substitute(p * q, hr.PHI_IMAGES) == hr.phi_poly(p) * hr.phi_poly(q)
