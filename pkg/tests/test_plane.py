import random
from fractions import Fraction

import pytest

from oddsig.errors import (NotAnIsomorphism, OrderMismatch, SchemaError,
                           VariableCountMismatch, ZeroPolynomial)
from oddsig.exactnum import CyclotomicElement
from oddsig.plane import (PlaneCurve, ProjMap, conjugate_curve,
                          has_common_affine_zero, is_automorphism,
                          is_isomorphism_onto, is_smooth, require_isomorphism,
                          restrict_to_line)
from oddsig.polyring import SparsePoly


def P(order, nvars, items):
    return SparsePoly.build(order, nvars, items)


def fermat_quartic():
    return PlaneCurve(P(4, 3, [(1, (4, 0, 0)), (1, (0, 4, 0)), (1, (0, 0, 4))]))


def klein_quartic():
    return PlaneCurve(P(7, 3, [(1, (3, 0, 1)), (1, (1, 3, 0)), (1, (0, 1, 3))]))


def quartic_family(a, b, c, order=1):
    items = [(1, (4, 0, 0)), (1, (0, 4, 0)), (1, (0, 0, 4)),
             (a, (2, 2, 0)), (b, (2, 0, 2)), (c, (0, 2, 2))]
    return PlaneCurve(P(order, nvars=3, items=[t for t in items if t[0] != 0]))


def rational(order, value):
    return CyclotomicElement.from_rational(value, order)


def proj_equal(p, q):
    n = len(p)
    return all((p[i] * q[j] - p[j] * q[i]).is_zero() for i in range(n) for j in range(i + 1, n))


def random_map(rng, order):
    while True:
        rows = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)]
        try:
            return ProjMap(order, rows)
        except ValueError:
            continue


def test_projmap_normalization_and_equality():
    a = ProjMap(4, [[2, 0, 0], [0, 2, 0], [0, 0, 2]])
    assert a.is_identity()
    b = ProjMap(4, [[0, 3, 0], [3, 0, 0], [0, 0, 3]])
    c = ProjMap(4, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    assert b == c
    assert hash(b) == hash(c)
    assert b.is_diagonal() is False
    assert ProjMap.diagonal(4, 1, 2, 3).is_diagonal()


def test_projmap_compose_inverse_power():
    rng = random.Random(97531)
    for _ in range(25):
        a = random_map(rng, 4)
        b = random_map(rng, 4)
        v = [rational(4, rng.randint(-4, 4)) for _ in range(3)]
        if all(x.is_zero() for x in v):
            v[0] = rational(4, 1)
        assert proj_equal((a @ b).apply(v), a.apply(b.apply(v)))
        assert (a @ a.inverse()).is_identity()
        assert a.power(3) == a @ a @ a
        assert a.power(-2) == (a.inverse()) @ (a.inverse())


def test_projmap_validation():
    with pytest.raises(ValueError):
        ProjMap(4, [[0, 0, 0], [0, 0, 0], [0, 0, 0]])
    with pytest.raises(ValueError):
        ProjMap(4, [[1, 0, 0], [2, 0, 0], [0, 0, 1]])  # singular
    with pytest.raises(VariableCountMismatch):
        ProjMap(4, [[1, 0], [0, 1]])
    a = ProjMap(4, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    b = ProjMap(8, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(OrderMismatch):
        a.compose(b)


def test_projmap_permutation_matches_point_action():
    # images[j] is the slot coordinate j lands in: (x:y:z) -> (y:z:x) cycles 0->2, 1->0, 2->1
    cyc = ProjMap.permutation(4, [2, 0, 1])
    one, two, three = rational(4, 1), rational(4, 2), rational(4, 3)
    assert proj_equal(cyc.apply([one, two, three]), (two, three, one))


def test_projmap_serialization_round_trip():
    zeta = CyclotomicElement.zeta(8, 1)
    a = ProjMap(8, [[zeta, 1, 0], [0, 1, 0], [Fraction(1, 2), 0, 1]])
    again = ProjMap.from_dict(a.to_dict())
    assert again == a
    with pytest.raises(SchemaError):
        ProjMap.from_dict({"order": 8})
    with pytest.raises(SchemaError):
        ProjMap.from_dict({"order": 0, "entries": [[["1"]] * 3] * 3})
    bad = a.to_dict()
    bad["entries"][0] = bad["entries"][0][:2]
    with pytest.raises(SchemaError):
        ProjMap.from_dict(bad)
    singular = ProjMap.identity(4).to_dict()
    singular["entries"][1] = singular["entries"][0]
    with pytest.raises(SchemaError):
        ProjMap.from_dict(singular)


def test_plane_curve_validation_and_genus():
    with pytest.raises(ValueError):
        PlaneCurve(P(4, 3, [(1, (4, 0, 0)), (1, (1, 0, 0))]))
    with pytest.raises(ZeroPolynomial):
        PlaneCurve(SparsePoly.zero(4, 3))
    with pytest.raises(VariableCountMismatch):
        PlaneCurve(P(4, 2, [(1, (4, 0))]))
    assert fermat_quartic().genus() == 3
    assert klein_quartic().genus() == 3
    septic = PlaneCurve(P(1, 3, [(1, (7, 0, 0)), (1, (0, 7, 0)), (1, (0, 0, 7))]))
    assert septic.genus() == 15
    assert fermat_quartic().degree == 4


def test_conjugate_curve():
    i = CyclotomicElement.zeta(4, 1)
    curve = PlaneCurve(P(4, 3, [(1, (3, 0, 0)), (i, (0, 3, 0)), (1, (0, 0, 3))]))
    conj = conjugate_curve(curve)
    assert conj.poly.coefficient((0, 3, 0)) == -i
    assert conjugate_curve(conj) == curve


def test_fermat_automorphisms():
    x4 = fermat_quartic()
    i = CyclotomicElement.zeta(4, 1)
    ok, lam = is_automorphism(x4, ProjMap.diagonal(4, i, 1, 1))
    assert ok and lam == rational(4, 1)
    ok, lam = is_automorphism(x4, ProjMap.permutation(4, [2, 0, 1]))
    assert ok and lam == rational(4, 1)
    ok, lam = is_automorphism(x4, ProjMap.permutation(4, [1, 0, 2]))
    assert ok and lam == rational(4, 1)
    shear = ProjMap(4, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    ok, lam = is_automorphism(x4, shear)
    assert not ok and lam is None
    ok, lam = is_automorphism(x4, ProjMap.diagonal(4, 2, 1, 1))
    assert not ok


def test_klein_automorphisms():
    k = klein_quartic()
    z = [CyclotomicElement.zeta(7, j) for j in range(7)]
    # the stored representative is diag(1, z, z^3), so the multiplier is z^3
    diag = ProjMap.diagonal(7, z[1], z[2], z[4])
    ok, lam = is_automorphism(k, diag)
    assert ok and lam == z[3]
    cyc = ProjMap.permutation(7, [2, 0, 1])
    ok, lam = is_automorphism(k, cyc)
    assert ok and lam == rational(7, 1)
    rows = [
        [z[1] - z[6], z[4] - z[3], z[2] - z[5]],
        [z[4] - z[3], z[2] - z[5], z[1] - z[6]],
        [z[2] - z[5], z[1] - z[6], z[4] - z[3]],
    ]
    # this representative satisfies F o T = 49 F and T^2 = -7 id
    assert k.poly.substitute_linear(rows) == k.poly * 49
    t = ProjMap(7, rows)
    ok, lam = is_automorphism(k, t)
    assert ok and lam is not None
    assert (t @ t).is_identity()


def test_isomorphism_onto():
    x4 = fermat_quartic()
    target = PlaneCurve(P(4, 3, [(1, (4, 0, 0)), (16, (0, 4, 0)), (1, (0, 0, 4))]))
    a = ProjMap(4, [[1, 0, 0], [0, Fraction(1, 2), 0], [0, 0, 1]])
    ok, lam = is_isomorphism_onto(x4, target, a)
    assert ok and lam == rational(4, 1)
    assert require_isomorphism(x4, target, a) == rational(4, 1)
    shear = ProjMap(4, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(NotAnIsomorphism):
        require_isomorphism(x4, target, shear)


def test_restrict_to_line():
    f = fermat_quartic().poly
    one, zero = rational(4, 1), rational(4, 0)
    form = restrict_to_line(f, (one, zero, zero), (zero, one, zero))
    assert form == P(4, 2, [(1, (4, 0)), (1, (0, 4))])


def test_smooth_classics():
    assert is_smooth(fermat_quartic())
    assert is_smooth(klein_quartic())
    conic = PlaneCurve(P(1, 3, [(1, (2, 0, 0)), (1, (0, 2, 0)), (1, (0, 0, 2))]))
    assert is_smooth(conic)
    nodal = PlaneCurve(P(1, 3, [(1, (0, 2, 1)), (-1, (3, 0, 0)), (-1, (2, 0, 1))]))
    assert not is_smooth(nodal)
    cusp = PlaneCurve(P(1, 3, [(1, (0, 2, 1)), (-1, (3, 0, 0))]))
    assert not is_smooth(cusp)
    crossing = PlaneCurve(P(1, 3, [(1, (1, 1, 0))]))
    assert not is_smooth(crossing)
    double_line = PlaneCurve(P(1, 3, [(1, (2, 0, 0)), (2, (1, 1, 0)), (1, (0, 2, 0))]))
    assert not is_smooth(double_line)
    reducible = PlaneCurve(
        P(1, 3, [(1, (2, 0, 0)), (1, (0, 2, 0)), (1, (0, 0, 2))])
        * P(1, 3, [(1, (1, 0, 0)), (1, (0, 1, 0)), (1, (0, 0, 1))]))
    assert not is_smooth(reducible)


def test_smooth_singularity_on_line_at_infinity():
    # a = 2 forces the double points (1 : +-i : 0) with z = 0
    assert not is_smooth(quartic_family(2, 3, 5))
    assert is_smooth(quartic_family(1, 3, 5))


def test_smooth_matches_family_criterion():
    rng = random.Random(192837)
    triples = [(1, 1, -1), (3, 3, 7), (2, 0, 0), (0, 2, 0), (0, 0, -2),
               (1, 3, 5), (1, 2, 5), (0, 0, 0)]
    while len(triples) < 28:
        triples.append((rng.randint(-6, 6), rng.randint(-6, 6), rng.randint(-6, 6)))
    for a, b, c in triples:
        expected = not (a * a + b * b + c * c - a * b * c == 4
                        or 4 in (a * a, b * b, c * c))
        assert is_smooth(quartic_family(a, b, c)) is expected, (a, b, c)


def biv(order, items):
    return P(order, 2, items)


def test_has_common_affine_zero_basics():
    x2_minus_2 = biv(1, [(1, (2, 0)), (-2, (0, 0))])
    y_minus_x = biv(1, [(1, (0, 1)), (-1, (1, 0))])
    assert has_common_affine_zero([x2_minus_2, y_minus_x])
    unit = biv(1, [(1, (0, 0))])
    assert not has_common_affine_zero([unit, y_minus_x])
    assert has_common_affine_zero([])
    assert has_common_affine_zero([SparsePoly.zero(1, 2)])
    assert has_common_affine_zero([y_minus_x])


def test_has_common_affine_zero_constraint_branches():
    x2_minus_2 = biv(1, [(1, (2, 0)), (-2, (0, 0))])
    # (x^2 - 3) y - 1: invertible multiplier over the branch, zero exists
    p = biv(1, [(1, (2, 1)), (-3, (0, 1)), (-1, (0, 0))])
    assert has_common_affine_zero([x2_minus_2, p])
    # (x^2 - 2) y - 1: degenerates to -1 over every root of the modulus
    q = biv(1, [(1, (2, 1)), (-2, (0, 1)), (-1, (0, 0))])
    assert not has_common_affine_zero([x2_minus_2, q])
    # xy - 1 with x = 0 forced
    assert not has_common_affine_zero([
        biv(1, [(1, (1, 1)), (-1, (0, 0))]),
        biv(1, [(1, (1, 0))]),
    ])


def test_has_common_affine_zero_modulus_splitting():
    # modulus x^2 - 1 splits; (x - 1) y - 1 is a zero divisor times y minus one
    x2_minus_1 = biv(1, [(1, (2, 0)), (-1, (0, 0))])
    p = biv(1, [(1, (1, 1)), (-1, (0, 1)), (-1, (0, 0))])
    assert has_common_affine_zero([x2_minus_1, p])
    # same shape but no branch survives
    dead = biv(1, [(1, (2, 0)), (-1, (1, 0))])  # x^2 - x = x(x-1)
    q = biv(1, [(1, (1, 1)), (-1, (0, 0))])     # xy - 1: dies at x=0
    r = biv(1, [(1, (1, 1)), (-1, (0, 1)), (-1, (0, 0))])  # (x-1)y - 1: dies at x=1
    assert not has_common_affine_zero([dead, q, r])


def test_has_common_affine_zero_shared_factor_split():
    y_minus_x = biv(1, [(1, (0, 1)), (-1, (1, 0))])
    a = y_minus_x * biv(1, [(1, (0, 1)), (1, (1, 0)), (1, (0, 0))])
    b = y_minus_x * biv(1, [(1, (0, 1)), (-5, (0, 0))])
    x_minus_3 = biv(1, [(1, (1, 0)), (-3, (0, 0))])
    assert has_common_affine_zero([a, b, x_minus_3])
    # removing the shared factor leaves inconsistent constraints
    a2 = biv(1, [(1, (0, 1)), (1, (1, 0)), (1, (0, 0))])
    b2 = biv(1, [(1, (0, 1)), (-5, (0, 0))])
    assert not has_common_affine_zero([a2, b2, x_minus_3])


def test_has_common_affine_zero_resultant_path():
    parabola = biv(1, [(1, (0, 1)), (-1, (2, 0))])
    cubic = biv(1, [(1, (0, 2)), (-1, (3, 0)), (-1, (1, 0))])
    assert has_common_affine_zero([parabola, cubic])
    # shifted circle pair with empty intersection over the closure is rare;
    # two coprime conics meeting only outside the rationals still intersect
    circle = biv(1, [(1, (2, 0)), (1, (0, 2)), (-1, (0, 0))])
    line_far = biv(1, [(1, (1, 0)), (1, (0, 1)), (-10, (0, 0))])
    assert has_common_affine_zero([circle, line_far])


def test_has_common_affine_zero_closure_points():
    # x^2 + 1 = 0 has no rational roots but the engine works over the closure
    x2_plus_1 = biv(1, [(1, (2, 0)), (1, (0, 0))])
    y = biv(1, [(1, (0, 1))])
    assert has_common_affine_zero([x2_plus_1, y])
