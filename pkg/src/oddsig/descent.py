"""Order-2 Galois descent on plane curves and the symmetric quartic family.

The conjugation case of Weil's criterion: a curve X with X isomorphic to its
conjugate descends to the reals exactly when some isomorphism phi onto the
conjugate curve has identity cocycle defect conj(phi) o phi. The candidate
isomorphisms form a single orbit under Aut(X), so the check is a finite
enumeration once the automorphisms are known.

The second half implements the quartic family

    x^4 + y^4 + z^4 + a x^2 y^2 + b x^2 z^2 + c y^2 z^2 = 0

whose members are classified up to isomorphism by sign-and-permutation moves
on the triple (a, b, c). Each move is realized by an explicit projective map
that works uniformly in the triple, which turns Galois descent questions
about a member into finite searches through a 24-element group.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

from .errors import (
    CocycleFailure,
    DegenerateTriple,
    HypothesisViolation,
    ImageTooLarge,
    ImpossibleCase,
)
from .exactnum import CyclotomicElement, common_order
from .matgroup import DEFAULT_BOUND, closure
from .plane import (
    PlaneCurve,
    ProjMap,
    conjugate_curve,
    is_automorphism,
    require_isomorphism,
)
from .polyring import SparsePoly

DEFINABLE = "DEFINABLE"
OBSTRUCTED = "OBSTRUCTED"
INCONCLUSIVE = "INCONCLUSIVE"

SWAP = "swap"
CYCLE = "cycle"
NEGATE_AB = "negate-ab"
NEGATE_BC = "negate-bc"


@dataclass(frozen=True)
class DescentVerdict:
    """Outcome of a descent check, with the evidence that produced it."""

    status: str
    witness: Optional[ProjMap]
    defects: tuple
    assumptions: tuple[str, ...]
    citation: str
    field: Optional[str] = None
    assignment: Optional[tuple] = None

    def __post_init__(self):
        if self.status not in (DEFINABLE, OBSTRUCTED, INCONCLUSIVE):
            raise ValueError(f"unknown verdict status {self.status!r}")
        if (self.witness is not None) != (self.status == DEFINABLE):
            raise ValueError("witness is present exactly for definable verdicts")

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "witness": None if self.witness is None else self.witness.to_dict(),
            "defects": [{"candidate": cand.to_dict() if isinstance(cand, ProjMap)
                         else list(cand),
                         "defect": dft.to_dict()} for cand, dft in self.defects],
            "assumptions": list(self.assumptions),
            "citation": self.citation,
            "field": self.field,
            "assignment": None if self.assignment is None else
            [{"exponent": k, "map": f.to_dict()} for k, f in self.assignment],
        }


_ORDER2_CITATION = ("Weil cocycle criterion for the order-2 Galois action: "
                    "some isomorphism onto the conjugate curve must have "
                    "identity defect conj(phi) o phi")


def isomorphism_orbit(curve: PlaneCurve, mu: ProjMap,
                      aut_generators: Sequence[ProjMap],
                      bound: int = DEFAULT_BOUND) -> list[ProjMap]:
    """All isomorphisms onto the conjugate curve: the orbit mu o Aut(X).

    Complete exactly when the generators produce the full automorphism
    group; the supplied isomorphism comes first, the rest follow in a
    canonical order."""
    twin = conjugate_curve(curve)
    require_isomorphism(curve, twin, mu)
    order = common_order(curve.order, mu.order,
                         *[g.order for g in aut_generators])
    if aut_generators:
        for g in aut_generators:
            require_isomorphism(curve, curve, g)
        group = closure([g.lift_to(order) for g in aut_generators], bound)
    else:
        group = [ProjMap.identity(order)]
    lifted = mu.lift_to(order)
    out = {}
    for alpha in group:
        cand = lifted @ alpha
        out[cand.key()] = cand
    out.pop(lifted.key(), None)
    return [lifted] + [out[k] for k in sorted(out)]


def weil_descent_order2(curve: PlaneCurve, mu: ProjMap,
                        aut_generators: Sequence[ProjMap],
                        bound: int = DEFAULT_BOUND) -> DescentVerdict:
    """Decide real definability given one isomorphism onto the conjugate.

    Every candidate differs from mu by an automorphism, so the verdict does
    not depend on which isomorphism is supplied."""
    candidates = isomorphism_orbit(curve, mu, aut_generators, bound)
    lifted = curve.lift_to(candidates[0].order) if candidates else curve
    defects = []
    witness = None
    for phi in candidates:
        defect = phi.conjugate() @ phi
        ok, _ = is_automorphism(lifted, defect)
        assert ok, "cocycle defect fell outside the automorphism group"
        if defect.is_identity() and witness is None:
            witness = phi
        defects.append((phi, defect))
    return DescentVerdict(
        status=DEFINABLE if witness is not None else OBSTRUCTED,
        witness=witness,
        defects=tuple(defects),
        assumptions=("the supplied generators produce the full automorphism "
                     "group; with extra automorphisms the candidate list "
                     "would be larger",),
        citation=_ORDER2_CITATION,
        field="R" if witness is not None else None,
    )


def bielliptic_quartic(a1, a2, a3, order: int) -> PlaneCurve:
    """y^4 + y^2 (x - a1 z)(x + z/a1) + prod_{i=2,3} (x - ai z)(x + z/conj(ai)).

    Smooth members are genus-3 curves with the visible involution
    (x : -y : z); the shape of the degree-4 part ties the curve to its
    conjugate whenever a1 is real and a2 a3 is real."""
    vals = []
    for v in (a1, a2, a3):
        if not isinstance(v, CyclotomicElement):
            v = CyclotomicElement.from_rational(v, order)
        v = v.lift_to(order)
        if v.is_zero():
            raise DegenerateTriple("coefficients must be nonzero")
        vals.append(v)
    a1, a2, a3 = vals
    one = CyclotomicElement.one(order)

    def pair(root, coroot):
        # (x - root z)(x + coroot z) as coefficients on x^2, xz, z^2
        return [one, coroot - root, -(root * coroot)]

    def mul2(p, q):
        out = [CyclotomicElement.zero(order)] * (len(p) + len(q) - 1)
        for i, pi in enumerate(p):
            for j, qj in enumerate(q):
                out[i + j] = out[i + j] + pi * qj
        return out

    quad = pair(a1, a1.inverse())
    quart = mul2(pair(a2, a2.conjugate().inverse()),
                 pair(a3, a3.conjugate().inverse()))
    entries = [(one, (0, 4, 0))]
    for i, coeff in enumerate(quad):
        if not coeff.is_zero():
            entries.append((coeff, (2 - i, 2, i)))
    for i, coeff in enumerate(quart):
        if not coeff.is_zero():
            entries.append((coeff, (4 - i, 0, i)))
    return PlaneCurve(SparsePoly.build(order, 3, entries))


# the symmetric quartic family --------------------------------------------------

class FamilyTriple:
    """Coefficient triple (a, b, c) of a smooth member with distinct squares."""

    __slots__ = ("order", "values")

    def __init__(self, a, b, c, order: Optional[int] = None):
        orders = [order or 1]
        for v in (a, b, c):
            if isinstance(v, CyclotomicElement):
                orders.append(v.order)
        o = common_order(*orders)
        vals = []
        for v in (a, b, c):
            if isinstance(v, CyclotomicElement):
                vals.append(v.lift_to(o))
            else:
                vals.append(CyclotomicElement.from_rational(v, o))
        squares = [v * v for v in vals]
        for i in range(3):
            for j in range(i + 1, 3):
                if squares[i] == squares[j]:
                    raise DegenerateTriple(
                        "coefficient squares must be pairwise distinct")
        four = CyclotomicElement.from_rational(4, o)
        if any(s == four for s in squares):
            raise DegenerateTriple("singular member: a coefficient square is 4")
        if squares[0] + squares[1] + squares[2] - vals[0] * vals[1] * vals[2] == four:
            raise DegenerateTriple(
                "singular member: a^2 + b^2 + c^2 - abc equals 4")
        object.__setattr__(self, "order", o)
        object.__setattr__(self, "values", tuple(vals))

    def __setattr__(self, *_):
        raise AttributeError("FamilyTriple is immutable")

    @property
    def a(self) -> CyclotomicElement:
        return self.values[0]

    @property
    def b(self) -> CyclotomicElement:
        return self.values[1]

    @property
    def c(self) -> CyclotomicElement:
        return self.values[2]

    def lift_to(self, order: int) -> "FamilyTriple":
        return FamilyTriple(*[v.lift_to(order) for v in self.values])

    def galois(self, exponent: int) -> "FamilyTriple":
        return FamilyTriple(*[v.galois(exponent) for v in self.values])

    def conjugate(self) -> "FamilyTriple":
        return self.galois(-1)

    def is_real(self) -> bool:
        return all(v.conjugate() == v for v in self.values)

    def __eq__(self, other):
        if not isinstance(other, FamilyTriple):
            return NotImplemented
        order = common_order(self.order, other.order)
        return ([v.lift_to(order) for v in self.values]
                == [v.lift_to(order) for v in other.values])

    def __hash__(self):
        return hash((self.order, self.values))

    def __repr__(self):
        return f"FamilyTriple{self.values!r}"


def family_curve(t: FamilyTriple) -> PlaneCurve:
    order = t.order
    one = CyclotomicElement.one(order)
    entries = [(one, (4, 0, 0)), (one, (0, 4, 0)), (one, (0, 0, 4))]
    for coeff, exps in ((t.a, (2, 2, 0)), (t.b, (2, 0, 2)), (t.c, (0, 2, 2))):
        if not coeff.is_zero():
            entries.append((coeff, exps))
    return PlaneCurve(SparsePoly.build(order, 3, entries))


def family_invariants(t: FamilyTriple):
    """(abc, sum of squares, sum of fourth powers, sum, sum of cubes)."""
    a, b, c = t.values
    j1 = a * b * c
    j2 = a * a + b * b + c * c
    j3 = a ** 4 + b ** 4 + c ** 4
    j4 = a + b + c
    j5 = a ** 3 + b ** 3 + c ** 3
    return j1, j2, j3, j4, j5


@dataclass(frozen=True)
class TripleMove:
    """One symmetry of the family: permute the triple, then flip signs."""

    perm: tuple[int, int, int]
    signs: tuple[int, int, int]
    map: ProjMap

    def apply(self, t: FamilyTriple) -> FamilyTriple:
        vals = [t.values[self.perm[i]] * self.signs[i] for i in range(3)]
        return FamilyTriple(*vals)

    def compose(self, other: "TripleMove") -> "TripleMove":
        """self applied after other."""
        perm = tuple(other.perm[self.perm[i]] for i in range(3))
        signs = tuple(self.signs[i] * other.signs[self.perm[i]] for i in range(3))
        return TripleMove(perm, signs, self.map @ other.map)

    def is_identity(self) -> bool:
        return self.perm == (0, 1, 2) and self.signs == (1, 1, 1)

    def plain(self) -> bool:
        """True for pure permutations, the moves defined without i."""
        return self.signs == (1, 1, 1)

    def key(self):
        return (self.perm, self.signs)


def _generator_moves() -> dict[str, TripleMove]:
    i = CyclotomicElement.zeta(4, 1)
    return {
        SWAP: TripleMove((1, 0, 2), (1, 1, 1), ProjMap.permutation(4, [0, 2, 1])),
        CYCLE: TripleMove((1, 2, 0), (1, 1, 1), ProjMap.permutation(4, [1, 2, 0])),
        NEGATE_AB: TripleMove((0, 1, 2), (-1, -1, 1), ProjMap.diagonal(4, i, 1, 1)),
        NEGATE_BC: TripleMove((0, 1, 2), (1, -1, -1), ProjMap.diagonal(4, 1, 1, i)),
    }


_MOVE_CACHE: dict[bool, list[TripleMove]] = {}


def family_symmetries(include_signs: bool = True) -> list[TripleMove]:
    """The 24 triple moves, or the 6 pure permutations."""
    if include_signs not in _MOVE_CACHE:
        gens = _generator_moves()
        names = [SWAP, CYCLE] + ([NEGATE_AB, NEGATE_BC] if include_signs else [])
        identity = TripleMove((0, 1, 2), (1, 1, 1), ProjMap.identity(4))
        seen = {identity.key(): identity}
        queue = [identity]
        while queue:
            cur = queue.pop(0)
            for name in names:
                nxt = gens[name].compose(cur)
                if nxt.key() not in seen:
                    seen[nxt.key()] = nxt
                    queue.append(nxt)
        _MOVE_CACHE[include_signs] = [seen[k] for k in sorted(seen)]
    return list(_MOVE_CACHE[include_signs])


def family_isomorphic(t: FamilyTriple, t2: FamilyTriple,
                      field_contains_i: bool = True) -> Optional[TripleMove]:
    """The unique move carrying t to t2, or None.

    Uniqueness holds because distinct squares leave no move fixing a valid
    triple; searched over all 24 moves, or the 6 permutations when the
    coefficient field lacks i."""
    order = common_order(t.order, t2.order)
    t, t2 = t.lift_to(order), t2.lift_to(order)
    for move in family_symmetries(field_contains_i):
        if move.apply(t) == t2:
            return move
    return None


def family_aut_generators(order: int = 1) -> list[ProjMap]:
    """Sign involutions generating the automorphisms of a generic member."""
    o = common_order(order, 2)
    minus = CyclotomicElement.from_rational(-1, o)
    return [ProjMap.diagonal(o, minus, 1, 1), ProjMap.diagonal(o, 1, minus, 1)]


def family_real_definability(t: FamilyTriple,
                             case: Optional[str] = None) -> DescentVerdict:
    """Real descent for a family member via the conjugate-matching move.

    With case given, insists the conjugate triple matches that one
    generator; the pure cycle case is impossible, since it forces
    a = b = c real against the distinct-squares requirement."""
    twin = t.conjugate()
    if case is not None:
        if case == CYCLE:
            raise ImpossibleCase(
                "conjugation matching the pure cycle forces a = b = c real, "
                "excluded by the distinct-squares requirement")
        gens = _generator_moves()
        if case not in gens:
            raise HypothesisViolation(f"unknown case {case!r}")
        move = gens[case]
        if move.apply(t) != twin:
            raise HypothesisViolation(
                f"conjugate triple does not match the {case} move")
    else:
        move = family_isomorphic(t, twin, field_contains_i=True)
        if move is None:
            return DescentVerdict(
                status=INCONCLUSIVE,
                witness=None,
                defects=(),
                assumptions=("no family symmetry carries the triple to its "
                             "conjugate, so the real moduli field is larger "
                             "than the reals and descent is not the question",),
                citation="family classification by sign-and-permutation moves",
            )
    curve = family_curve(t)
    return weil_descent_order2(curve, move.map.lift_to(common_order(t.order, 4)),
                               family_aut_generators(t.order))


def family_moduli_field(t: FamilyTriple, field_contains_i: bool = True,
                        base_label: str = "Q") -> dict:
    """Generators of the moduli field: (j1, j2, j3), or (j2, j4, j5) without i."""
    j1, j2, j3, j4, j5 = family_invariants(t)
    gens = (j1, j2, j3) if field_contains_i else (j2, j4, j5)
    names = ("j1", "j2", "j3") if field_contains_i else ("j2", "j4", "j5")
    rational = all(g.is_rational() for g in gens)
    label = base_label if rational else f"{base_label}({', '.join(names)})"
    return {
        "generators": dict(zip(names, gens)),
        "rational": rational,
        "field": label,
    }


def _galois_exponents(order: int) -> list[int]:
    return [k for k in range(1, max(order, 2)) if gcd(k, order) == 1]


def family_rational_descent(t: FamilyTriple) -> DescentVerdict:
    """Descent to the rational moduli field via an explicit cocycle.

    Every field automorphism fixing the invariants moves the triple by a
    pure permutation; assigning each one its permutation map and verifying
    the cocycle identity over all pairs certifies a model over the field
    generated by (j1, j2, j3)."""
    t = t.lift_to(common_order(t.order, 4))
    order = t.order
    exponents = _galois_exponents(order)
    assignment = {}
    for k in exponents:
        image = t.galois(k)
        move = family_isomorphic(t, image, field_contains_i=True)
        if move is None:
            return DescentVerdict(
                status=INCONCLUSIVE,
                witness=None,
                defects=(),
                assumptions=("some field automorphism moves the triple off "
                             "its symmetry orbit, so the moduli field is "
                             "larger than the fixed field of the invariants",),
                citation="family classification by sign-and-permutation moves",
            )
        if not move.plain():
            raise ImageTooLarge(
                "a field automorphism acts through a sign flip; the cocycle "
                "construction needs the action to stay inside the pure "
                "permutations")
        assignment[k] = move
    defects = []
    for k in exponents:
        for l in exponents:
            kl = (k * l) % order or order
            composed = assignment[l].compose(assignment[k])
            expected = assignment[kl]
            defect = expected.map.inverse() @ composed.map
            defects.append(((k, l), defect))
            if composed.key() != expected.key() or not defect.is_identity():
                raise CocycleFailure(
                    f"cocycle identity fails at exponents ({k}, {l}); "
                    f"defect table: {[(p, d.key()) for p, d in defects]}")
    j1, j2, j3 = family_invariants(t)[:3]
    rational = all(j.is_rational() for j in (j1, j2, j3))
    conj = order - 1 if order > 2 else 1
    return DescentVerdict(
        status=DEFINABLE,
        witness=assignment[conj].map,
        defects=tuple(defects),
        assumptions=("the assigned permutation maps have rational entries, "
                     "so twisting by a field automorphism fixes them",),
        citation="Weil cocycle criterion over the invariant field, verified "
                 "on all pairs of field automorphisms",
        field="Q" if rational else "Q(j1, j2, j3)",
        assignment=tuple(sorted((k, m.map) for k, m in assignment.items())),
    )
