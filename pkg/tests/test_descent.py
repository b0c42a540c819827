"""Order-2 descent on plane curves and the symmetric quartic family."""

import random

import pytest

from oddsig.descent import (
    CYCLE,
    DescentVerdict,
    FamilyTriple,
    NEGATE_AB,
    NEGATE_BC,
    SWAP,
    bielliptic_quartic,
    family_aut_generators,
    family_curve,
    family_invariants,
    family_isomorphic,
    family_moduli_field,
    family_rational_descent,
    family_real_definability,
    family_symmetries,
    isomorphism_orbit,
    weil_descent_order2,
)
from oddsig.errors import (
    DegenerateTriple,
    HypothesisViolation,
    ImageTooLarge,
    ImpossibleCase,
    NotAnIsomorphism,
)
from oddsig.exactnum import CyclotomicElement
from oddsig.matgroup import closure
from oddsig.plane import PlaneCurve, ProjMap, is_automorphism, is_smooth, require_isomorphism
from oddsig.polyring import SparsePoly
from oddsig.ramify import Signature, signature

I = CyclotomicElement.zeta(4, 1)


def quartic_nu():
    return ProjMap.diagonal(4, 1, -1, 1)


def quartic_mu():
    return ProjMap(4, [[0, 0, -1], [0, I, 0], [1, 0, 0]])


def quartic_fixture():
    # a1 real, a2*a3 real: a2*a3 = (1+i)*2(i-1) = -4
    return bielliptic_quartic(1, I + 1, I * 2 - 2, 4)


def fermat_quartic(order=4):
    one = CyclotomicElement.one(order)
    return PlaneCurve(SparsePoly.build(order, 3, [
        (one, (4, 0, 0)), (one, (0, 4, 0)), (one, (0, 0, 4))]))


def test_bielliptic_quartic_shape():
    curve = quartic_fixture()
    assert curve.degree == 4
    assert curve.genus() == 3
    assert is_smooth(curve)
    with pytest.raises(DegenerateTriple):
        bielliptic_quartic(0, I + 1, 3, 4)


def test_quartic_involution_and_signature():
    curve = quartic_fixture()
    ok, lam = is_automorphism(curve, quartic_nu())
    assert ok and lam.is_one()
    group = closure([quartic_nu()])
    assert len(group) == 2
    assert signature(curve, group) == Signature(1, (2, 2, 2, 2))


def test_isomorphism_orbit_lists_supplied_map_first():
    curve = quartic_fixture()
    mu, nu = quartic_mu(), quartic_nu()
    orbit = isomorphism_orbit(curve, mu, [nu])
    assert orbit[0] == mu
    assert set(phi.key() for phi in orbit) == {mu.key(), (mu @ nu).key()}
    twin = curve.conjugate()
    for phi in orbit:
        require_isomorphism(curve, twin, phi)
    assert isomorphism_orbit(curve, mu, []) == [mu]


def test_quartic_descent_obstructed_with_defect_nu():
    curve = quartic_fixture()
    mu, nu = quartic_mu(), quartic_nu()
    verdict = weil_descent_order2(curve, mu, [nu])
    assert verdict.status == "OBSTRUCTED"
    assert verdict.witness is None
    assert len(verdict.defects) == 2
    assert all(defect == nu for _, defect in verdict.defects)
    report = verdict.to_dict()
    assert report["status"] == "OBSTRUCTED"
    assert len(report["defects"]) == 2


def test_quartic_verdict_stable_under_candidate_choice():
    curve = quartic_fixture()
    mu, nu = quartic_mu(), quartic_nu()
    seeded = weil_descent_order2(curve, mu @ nu, [nu])
    assert seeded.status == "OBSTRUCTED"
    assert sorted(d.key() for _, d in seeded.defects) == sorted(
        d.key() for _, d in weil_descent_order2(curve, mu, [nu]).defects)


def test_quartic_conjugate_pairing_needs_real_product():
    # a2*a3 = (1-i)*2(i-1) = 4i is not real, so mu cannot reach the conjugate
    bad = bielliptic_quartic(1, 1 - I, I * 2 - 2, 4)
    with pytest.raises(NotAnIsomorphism):
        weil_descent_order2(bad, quartic_mu(), [quartic_nu()])


def test_not_an_isomorphism_on_perturbed_map():
    curve = quartic_fixture()
    skew = ProjMap(4, [[0, 0, -1], [0, 1, 0], [1, 0, 0]])
    with pytest.raises(NotAnIsomorphism):
        isomorphism_orbit(curve, skew, [quartic_nu()])


def test_rational_curve_descends_with_identity():
    verdict = weil_descent_order2(fermat_quartic(), ProjMap.identity(4), [])
    assert verdict.status == "DEFINABLE"
    assert verdict.witness.is_identity()
    assert verdict.field == "R"


def test_verdict_validation():
    with pytest.raises(ValueError):
        DescentVerdict("OBSTRUCTED", ProjMap.identity(4), (), (), "test")
    with pytest.raises(ValueError):
        DescentVerdict("DEFINABLE", None, (), (), "test")
    with pytest.raises(ValueError):
        DescentVerdict("MAYBE", None, (), (), "test")


# family triples ----------------------------------------------------------------

def test_family_triple_guards():
    with pytest.raises(DegenerateTriple):
        FamilyTriple(1, 1, 5)
    with pytest.raises(DegenerateTriple):
        FamilyTriple(1, -1, 5)
    with pytest.raises(DegenerateTriple):
        FamilyTriple(2, 3, 5)
    # a^2 + b^2 + c^2 - abc = 4 with distinct squares, none equal to 4
    from fractions import Fraction
    with pytest.raises(DegenerateTriple):
        FamilyTriple(Fraction(5, 2), Fraction(10, 3), Fraction(37, 6))
    t = FamilyTriple(1, 3, 5)
    assert t.order == 1 and t.is_real()
    lifted = t.lift_to(4)
    assert lifted == t and lifted.order == 4


def test_singularity_screen_matches_smoothness_oracle():
    for trip in [(1, 3, 5), (I + 1, I * 2, 3), (1, I, 3)]:
        assert is_smooth(family_curve(FamilyTriple(*trip)))
    one = CyclotomicElement.one(1)

    def raw_curve(a, b, c):
        entries = [(one, (4, 0, 0)), (one, (0, 4, 0)), (one, (0, 0, 4)),
                   (CyclotomicElement.from_rational(a, 1), (2, 2, 0)),
                   (CyclotomicElement.from_rational(b, 1), (2, 0, 2)),
                   (CyclotomicElement.from_rational(c, 1), (0, 2, 2))]
        return PlaneCurve(SparsePoly.build(1, 3, entries))

    from fractions import Fraction
    assert not is_smooth(raw_curve(2, 3, 5))
    assert not is_smooth(raw_curve(Fraction(5, 2), Fraction(10, 3), Fraction(37, 6)))


def test_family_invariants():
    t = FamilyTriple(1, 3, 5)
    j1, j2, j3, j4, j5 = family_invariants(t)
    assert (j1, j2, j3, j4, j5) == (15, 35, 707, 9, 153)
    for move in family_symmetries(True):
        image = family_invariants(move.apply(t))
        assert image[:3] == (j1, j2, j3)
    for move in family_symmetries(False):
        assert family_invariants(move.apply(t)) == (j1, j2, j3, j4, j5)


def test_symmetry_group_structure():
    full = family_symmetries(True)
    plain = family_symmetries(False)
    assert len(full) == 24 and len(plain) == 6
    keys = {m.key() for m in full}
    assert {m.key() for m in plain} <= keys
    assert all(m.plain() for m in plain)
    # closure and inverses inside the key algebra
    for u in full:
        assert any(u.compose(v).is_identity() and v.compose(u).is_identity()
                   for v in full)
        for v in full:
            assert u.compose(v).key() in keys
    # permutation moves carry permutation matrices exactly
    for m in plain:
        for row in m.map.entries:
            assert sum(0 if c.is_zero() else 1 for c in row) == 1
            assert all(c.is_zero() or c.is_one() for c in row)


def test_symmetry_action_is_functorial():
    t = FamilyTriple(I * 2 + 1, 3, I)
    full = family_symmetries(True)
    for u in full:
        require_isomorphism(family_curve(t), family_curve(u.apply(t)), u.map)
    for u in full:
        for v in full:
            assert u.compose(v).apply(t) == u.apply(v.apply(t))


def random_triple(rng):
    pool = [1, 2, 3, 5, -1, -3, I, I * 2, I * 3, I + 1, I - 1,
            I * 2 + 1, I + 2, -I - 2, I * 2 - 1, I + 3]
    while True:
        try:
            return FamilyTriple(rng.choice(pool), rng.choice(pool), rng.choice(pool))
        except DegenerateTriple:
            continue


def test_family_isomorphic_examples():
    t = FamilyTriple(1, 3, 5)
    hit = family_isomorphic(t, FamilyTriple(3, 1, 5))
    assert hit is not None and hit.key() == ((1, 0, 2), (1, 1, 1))
    hit = family_isomorphic(t, FamilyTriple(-1, -3, 5))
    assert hit is not None and hit.key() == ((0, 1, 2), (-1, -1, 1))
    assert family_isomorphic(t, FamilyTriple(1, 3, 7)) is None
    assert family_isomorphic(t, FamilyTriple(-1, -3, 5),
                             field_contains_i=False) is None
    hit = family_isomorphic(t, FamilyTriple(3, 1, 5), field_contains_i=False)
    assert hit is not None


def test_family_isomorphic_matches_moves_exactly():
    rng = random.Random(40961)
    moves = family_symmetries(True)
    for _ in range(120):
        t = random_triple(rng)
        m = rng.choice(moves)
        found = family_isomorphic(t, m.apply(t))
        assert found is not None and found.key() == m.key()
        j = family_invariants(t)[:3]
        assert family_invariants(m.apply(t))[:3] == j
        # trivial stabilizer: only the identity fixes a valid triple
        fixers = [u for u in moves if u.apply(t) == t]
        assert len(fixers) == 1 and fixers[0].is_identity()


def test_real_descent_swap_case():
    t = FamilyTriple(I * 2 + 1, 1 - I * 2, 3)
    for kwargs in ({}, {"case": SWAP}):
        verdict = family_real_definability(t, **kwargs)
        assert verdict.status == "DEFINABLE"
        assert verdict.witness == ProjMap.permutation(4, [0, 2, 1])


def test_real_descent_sign_cases():
    t = FamilyTriple(I, I * 2, 3)
    for kwargs in ({}, {"case": NEGATE_AB}):
        verdict = family_real_definability(t, **kwargs)
        assert verdict.status == "DEFINABLE"
        assert verdict.witness == ProjMap.diagonal(4, I, 1, 1)
    t = FamilyTriple(3, I, I * 2)
    for kwargs in ({}, {"case": NEGATE_BC}):
        verdict = family_real_definability(t, **kwargs)
        assert verdict.status == "DEFINABLE"
        assert verdict.witness == ProjMap.diagonal(4, 1, 1, I)


def test_real_descent_real_triple_is_trivial():
    verdict = family_real_definability(FamilyTriple(1, 3, 5))
    assert verdict.status == "DEFINABLE"
    assert verdict.witness.is_identity()


def test_real_descent_inconclusive_when_orbit_misses_conjugate():
    verdict = family_real_definability(FamilyTriple(I * 2 + 1, 3, 5))
    assert verdict.status == "INCONCLUSIVE"
    assert verdict.witness is None and verdict.defects == ()


def test_real_descent_case_guards():
    with pytest.raises(ImpossibleCase):
        family_real_definability(FamilyTriple(1, 3, 5), case=CYCLE)
    with pytest.raises(HypothesisViolation):
        family_real_definability(FamilyTriple(I, I * 2, 3), case=SWAP)
    with pytest.raises(HypothesisViolation):
        family_real_definability(FamilyTriple(1, 3, 5), case="bogus")


def test_moduli_field_generators():
    t = FamilyTriple(I * 2 + 1, 1 - I * 2, 3)
    report = family_moduli_field(t)
    assert report["rational"] and report["field"] == "Q"
    gens = report["generators"]
    assert gens["j1"] == 15 and gens["j2"] == 3 and gens["j3"] == 67
    report = family_moduli_field(t, field_contains_i=False)
    assert report["rational"] and report["field"] == "Q"
    assert report["generators"]["j4"] == 5 and report["generators"]["j5"] == 5
    report = family_moduli_field(FamilyTriple(I * 2 + 1, 3, 5))
    assert not report["rational"]
    assert report["field"] == "Q(j1, j2, j3)"


def test_rational_descent_closing_example():
    t = FamilyTriple(I * 2 + 1, 1 - I * 2, 3)
    verdict = family_rational_descent(t)
    assert verdict.status == "DEFINABLE" and verdict.field == "Q"
    assert verdict.witness == ProjMap.permutation(4, [0, 2, 1])
    assert (verdict.witness @ verdict.witness).is_identity()
    assert dict(verdict.assignment).keys() == {1, 3}
    assert all(defect.is_identity() for _, defect in verdict.defects)
    report = verdict.to_dict()
    assert report["field"] == "Q" and len(report["assignment"]) == 2


def test_rational_descent_needs_permutation_action():
    with pytest.raises(ImageTooLarge):
        family_rational_descent(FamilyTriple(I, I * 2, 3))


def test_rational_descent_real_triple():
    verdict = family_rational_descent(FamilyTriple(1, 3, 5))
    assert verdict.status == "DEFINABLE" and verdict.field == "Q"
    assert verdict.witness.is_identity()
    assert all(m.is_identity() for _, m in verdict.assignment)


def test_rational_descent_inconclusive_off_orbit():
    verdict = family_rational_descent(FamilyTriple(I * 2 + 1, 3, 5))
    assert verdict.status == "INCONCLUSIVE"


def test_aut_generators_are_automorphisms():
    t = FamilyTriple(I * 2 + 1, 3, I)
    curve = family_curve(t)
    gens = family_aut_generators(t.order)
    assert len(closure([g.lift_to(4) for g in gens])) == 4
    for g in gens:
        ok, lam = is_automorphism(curve, g)
        assert ok and lam.is_one()
