"""Plane projective curves and PGL_3 maps over cyclotomic fields.

Maps are stored as 3x3 matrices normalized so the first nonzero entry in
row-major order is 1; equality of normalized matrices is equality in PGL_3
(for matrices over the same field the proportionality scalar lies in it).

Smoothness is decided exactly: a curve is singular iff its three partial
derivatives share a projective zero. The line z = 0 is checked through
binary-form gcds; the affine chart z = 1 reduces to candidate x-values via
pairwise resultants, and candidates are verified by gcd computations in
(K[x]/(d))[y], splitting the modulus whenever a zero divisor appears.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import (
    NotAnIsomorphism,
    OrderMismatch,
    SchemaError,
    VariableCountMismatch,
    ZeroPolynomial,
)
from .exactnum import CyclotomicElement, common_order
from .polyring import (
    SparsePoly,
    resultant,
    uni_divmod,
    uni_gcd,
    uni_is_zero,
    uni_monic,
    uni_mul,
    uni_squarefree,
    uni_sub,
    uni_trim,
    uni_xgcd,
)

Entry = Union[int, Fraction, CyclotomicElement]


class ProjMap:
    """An element of PGL_3 over Q(zeta_order), stored in canonical form."""

    __slots__ = ("order", "entries")

    def __init__(self, order: int, entries: Sequence[Sequence[Entry]]):
        if len(entries) != 3 or any(len(row) != 3 for row in entries):
            raise VariableCountMismatch("projective map needs a 3x3 matrix")
        rows = []
        for row in entries:
            out = []
            for e in row:
                c = e if isinstance(e, CyclotomicElement) else CyclotomicElement.from_rational(e, order)
                out.append(c.lift_to(order) if c.order != order else c)
            rows.append(out)
        pivot = next((c for row in rows for c in row if not c.is_zero()), None)
        if pivot is None:
            raise ValueError("zero matrix is not a projective map")
        inv = pivot.inverse()
        rows = tuple(tuple(c * inv for c in row) for row in rows)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "entries", rows)
        if self.det().is_zero():
            raise ValueError("projective map must be invertible")

    def __setattr__(self, *_):
        raise AttributeError("ProjMap is immutable")

    @classmethod
    def identity(cls, order: int) -> "ProjMap":
        return cls(order, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    @classmethod
    def diagonal(cls, order: int, d0: Entry, d1: Entry, d2: Entry) -> "ProjMap":
        return cls(order, [[d0, 0, 0], [0, d1, 0], [0, 0, d2]])

    @classmethod
    def permutation(cls, order: int, images: Sequence[int]) -> "ProjMap":
        """Coordinate permutation sending point coordinate j to slot images[j]."""
        rows = [[0, 0, 0] for _ in range(3)]
        for j, i in enumerate(images):
            rows[i][j] = 1
        return cls(order, rows)

    def det(self) -> CyclotomicElement:
        m = self.entries
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )

    def compose(self, other: "ProjMap") -> "ProjMap":
        """self after other (matrix product self * other)."""
        if other.order != self.order:
            raise OrderMismatch("compose requires a common field; lift first")
        a, b = self.entries, other.entries
        zero = CyclotomicElement.zero(self.order)
        rows = [[sum((a[r][k] * b[k][c] for k in range(3)), zero) for c in range(3)] for r in range(3)]
        return ProjMap(self.order, rows)

    def __matmul__(self, other):
        return self.compose(other)

    def inverse(self) -> "ProjMap":
        m = self.entries
        cof = [
            [m[1][1] * m[2][2] - m[1][2] * m[2][1],
             m[0][2] * m[2][1] - m[0][1] * m[2][2],
             m[0][1] * m[1][2] - m[0][2] * m[1][1]],
            [m[1][2] * m[2][0] - m[1][0] * m[2][2],
             m[0][0] * m[2][2] - m[0][2] * m[2][0],
             m[0][2] * m[1][0] - m[0][0] * m[1][2]],
            [m[1][0] * m[2][1] - m[1][1] * m[2][0],
             m[0][1] * m[2][0] - m[0][0] * m[2][1],
             m[0][0] * m[1][1] - m[0][1] * m[1][0]],
        ]
        return ProjMap(self.order, cof)

    def is_identity(self) -> bool:
        return self == ProjMap.identity(self.order)

    def is_diagonal(self) -> bool:
        return all(self.entries[r][c].is_zero() for r in range(3) for c in range(3) if r != c)

    def apply(self, point: Sequence[CyclotomicElement]) -> tuple[CyclotomicElement, ...]:
        zero = CyclotomicElement.zero(self.order)
        return tuple(sum((self.entries[r][c] * point[c] for c in range(3)), zero) for r in range(3))

    def galois(self, exponent: int) -> "ProjMap":
        return ProjMap(self.order, [[c.galois(exponent) for c in row] for row in self.entries])

    def conjugate(self) -> "ProjMap":
        return self.galois(-1)

    def lift_to(self, order: int) -> "ProjMap":
        if order == self.order:
            return self
        return ProjMap(order, [[c.lift_to(order) for c in row] for row in self.entries])

    def power(self, exponent: int) -> "ProjMap":
        base = self if exponent >= 0 else self.inverse()
        e = abs(exponent)
        result = ProjMap.identity(self.order)
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def key(self) -> tuple:
        return (self.order, tuple(tuple(c.coords for c in row) for row in self.entries))

    def __eq__(self, other):
        if not isinstance(other, ProjMap):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"ProjMap(order={self.order}, entries={[[str(c.coords) for c in row] for row in self.entries]})"

    def to_dict(self) -> dict:
        return {
            "kind": "projective_map",
            "order": self.order,
            "entries": [[[str(x) for x in c.coords] for c in row] for row in self.entries],
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "ProjMap":
        if "order" not in obj or "entries" not in obj:
            raise SchemaError("projective map document needs 'order' and 'entries'")
        order = obj["order"]
        entries = obj["entries"]
        if not isinstance(order, int) or order < 1:
            raise SchemaError(f"bad order: {order!r}")
        if not isinstance(entries, list) or len(entries) != 3 or any(not isinstance(r, list) or len(r) != 3 for r in entries):
            raise SchemaError("entries must be a 3x3 array")
        try:
            rows = [[CyclotomicElement.from_dict({"order": order, "coords": c}) for c in row] for row in entries]
            return cls(order, rows)
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc


class PlaneCurve:
    """A plane projective curve F(x, y, z) = 0 with F homogeneous."""

    __slots__ = ("poly",)

    def __init__(self, poly: SparsePoly):
        if poly.nvars != 3:
            raise VariableCountMismatch("plane curve needs three variables")
        if poly.is_zero():
            raise ZeroPolynomial("zero polynomial does not define a curve")
        if not poly.is_homogeneous():
            raise ValueError("plane curve polynomial must be homogeneous")
        if poly.total_degree() < 1:
            raise ValueError("plane curve polynomial must be nonconstant")
        object.__setattr__(self, "poly", poly)

    def __setattr__(self, *_):
        raise AttributeError("PlaneCurve is immutable")

    @property
    def order(self) -> int:
        return self.poly.order

    @property
    def degree(self) -> int:
        return self.poly.total_degree()

    def genus(self) -> int:
        """Genus of a smooth plane curve of this degree."""
        d = self.degree
        return (d - 1) * (d - 2) // 2

    def lift_to(self, order: int) -> "PlaneCurve":
        return PlaneCurve(self.poly.lift_to(order))

    def galois(self, exponent: int) -> "PlaneCurve":
        return PlaneCurve(self.poly.galois(exponent))

    def conjugate(self) -> "PlaneCurve":
        return self.galois(-1)

    def contains(self, point: Sequence[CyclotomicElement]) -> bool:
        return self.poly.evaluate(point).is_zero()

    def __eq__(self, other):
        if not isinstance(other, PlaneCurve):
            return NotImplemented
        return self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def __repr__(self):
        return f"PlaneCurve({self.poly!r})"


def conjugate_curve(curve: PlaneCurve, exponent: int = -1) -> PlaneCurve:
    return curve.galois(exponent)


def common_field(curve: PlaneCurve, mapping: ProjMap) -> tuple[PlaneCurve, ProjMap]:
    order = common_order(curve.order, mapping.order)
    return curve.lift_to(order), mapping.lift_to(order)


def is_isomorphism_onto(source: PlaneCurve, target: PlaneCurve, mapping: ProjMap):
    """Test F_target o A = lambda * F_source; returns (bool, lambda or None)."""
    order = common_order(source.order, target.order, mapping.order)
    f = source.poly.lift_to(order)
    g = target.poly.lift_to(order)
    a = mapping.lift_to(order)
    composed = g.substitute_linear(a.entries)
    if set(composed.terms) != set(f.terms):
        return False, None
    exps, lead = f.leading_term()
    lam = composed.terms[exps] / lead
    for e, c in f.terms.items():
        if composed.terms[e] != c * lam:
            return False, None
    return True, lam


def is_automorphism(curve: PlaneCurve, mapping: ProjMap):
    """Test F o A = lambda * F; returns (bool, lambda or None)."""
    return is_isomorphism_onto(curve, curve, mapping)


def require_isomorphism(source: PlaneCurve, target: PlaneCurve, mapping: ProjMap) -> CyclotomicElement:
    ok, lam = is_isomorphism_onto(source, target, mapping)
    if not ok:
        raise NotAnIsomorphism("map does not carry the source curve onto the target curve")
    return lam


def restrict_to_line(poly: SparsePoly, u: Sequence[CyclotomicElement], w: Sequence[CyclotomicElement]) -> SparsePoly:
    """Binary form F(s*u + t*w) in (s, t) for a spanning pair u, w."""
    matrix = [[u[i], w[i]] for i in range(3)]
    return poly.substitute_linear(matrix)


# smoothness ------------------------------------------------------------------

def _dehomogenize(poly: SparsePoly, var: int) -> SparsePoly:
    """Set variable var to 1 and drop it."""
    terms: dict[tuple[int, ...], CyclotomicElement] = {}
    for exps, coeff in poly.terms.items():
        key = tuple(e for i, e in enumerate(exps) if i != var)
        terms[key] = terms[key] + coeff if key in terms else coeff
    return SparsePoly(poly.order, poly.nvars - 1, terms)


def _set_var_zero(poly: SparsePoly, var: int) -> SparsePoly:
    terms = {tuple(e for i, e in enumerate(exps) if i != var): coeff
             for exps, coeff in poly.terms.items() if exps[var] == 0}
    return SparsePoly(poly.order, poly.nvars - 1, terms)


def _binary_common_root(forms: list[SparsePoly], order: int) -> bool:
    """Do nonzero binary forms share a projective root? (empty list: the whole line)"""
    forms = [f for f in forms if not f.is_zero()]
    if not forms:
        return True
    one = CyclotomicElement.one(order)
    zero = CyclotomicElement.zero(order)
    if all(f.evaluate([one, zero]).is_zero() for f in forms):
        return True
    g: Optional[list[CyclotomicElement]] = None
    for f in forms:
        dense = [CyclotomicElement.zero(order) for _ in range(f.degree_in(0) + 1)]
        for exps, coeff in f.terms.items():
            dense[exps[0]] = dense[exps[0]] + coeff
        dense = uni_trim(dense)
        g = dense if g is None else uni_gcd(g, dense, order)
        if len(g) == 1:
            return False
    return len(g) > 1


# bivariate helpers for the affine chart: polynomials in y over K[x],
# represented as lists (index = y-degree) of dense x-coefficient lists.

def _to_ylists(p: SparsePoly) -> list[list[CyclotomicElement]]:
    dy = p.degree_in(1)
    dx = p.degree_in(0)
    zero = CyclotomicElement.zero(p.order)
    out = [[zero] * (dx + 1) for _ in range(dy + 1)]
    for (ex, ey), coeff in p.terms.items():
        out[ey][ex] = coeff
    return [uni_trim(row) for row in out]


def _y_trim(f: list[list[CyclotomicElement]]) -> list[list[CyclotomicElement]]:
    while f and not f[-1]:
        f.pop()
    return f


def _y_content(f: list[list[CyclotomicElement]], order: int) -> list[CyclotomicElement]:
    g: list[CyclotomicElement] = []
    for row in f:
        if row:
            g = uni_gcd(g, row, order) if g else uni_monic(row)
            if len(g) == 1:
                break
    return g


def _y_divide_content(f, content, order):
    out = []
    for row in f:
        if not row:
            out.append([])
        else:
            q, r = uni_divmod(row, content, order)
            assert not r, "content must divide"
            out.append(q)
    return out


def _y_prem(f, g, order):
    """Pseudo-remainder of f by g in y (coefficients in K[x])."""
    dg = len(g) - 1
    lc = g[-1]
    r = [row[:] for row in f]
    while len(r) - 1 >= dg and _y_trim(r):
        r = _y_trim(r)
        if len(r) - 1 < dg:
            break
        dr = len(r) - 1
        top = r[-1]
        new = [uni_mul(row, lc, order) for row in r]
        shift = dr - dg
        for i, gi in enumerate(g):
            new[i + shift] = uni_sub(new[i + shift], uni_mul(top, gi, order), order)
        new[dr] = []
        r = _y_trim(new)
    return r


def _y_gcd(f, g, order):
    """Full gcd in K[x][y]: content gcd times primitive-PRS gcd."""
    f, g = _y_trim([r[:] for r in f]), _y_trim([r[:] for r in g])
    if not f:
        return g
    if not g:
        return f
    cf, cg = _y_content(f, order), _y_content(g, order)
    pf, pg = _y_divide_content(f, cf, order), _y_divide_content(g, cg, order)
    a, b = (pf, pg) if len(pf) >= len(pg) else (pg, pf)
    while _y_trim(b):
        r = _y_prem(a, b, order)
        r = _y_trim(r)
        if r:
            rc = _y_content(r, order)
            r = _y_divide_content(r, rc, order)
        a, b = b, r
    # normalize: monic leading x-coefficient
    lead = a[-1]
    inv = lead[-1].inverse()
    a = [[c * inv for c in row] for row in a]
    content = uni_gcd(cf, cg, order)
    if len(content) == 1:
        return a
    return [uni_mul(row, content, order) if row else [] for row in a]


def _y_degree(f) -> int:
    return len(_y_trim([r[:] for r in f])) - 1


def _from_ylists(f, order: int) -> SparsePoly:
    terms = {}
    for ey, row in enumerate(f):
        for ex, c in enumerate(row):
            if not c.is_zero():
                terms[(ex, ey)] = c
    return SparsePoly(order, 2, terms)


class _NeedSplit(Exception):
    def __init__(self, factor):
        self.factor = factor


def _mod_reduce(row, modulus, order):
    _, r = uni_divmod(row, modulus, order)
    return r


def _branch_has_common_root(modulus, ypolys, order) -> bool:
    """Decide whether some root x0 of the squarefree modulus admits a common
    y-root of all polynomials; raises _NeedSplit when the modulus must split."""
    reduced = []
    for f in ypolys:
        g = _y_trim([_mod_reduce(row, modulus, order) for row in f])
        if g:
            reduced.append(g)
    if not reduced:
        return True

    def invert_or_split(c):
        g, s, _ = uni_xgcd(c, modulus, order)
        if len(g) == 1:
            return s
        if len(g) <= len(modulus) - 1:
            raise _NeedSplit(g)
        return None  # c is zero mod modulus; callers strip zeros first

    # y-degree-0 entries are pure constraints c(x) = 0
    work = []
    for f in reduced:
        if len(f) == 1:
            g = uni_gcd(f[0], modulus, order)
            if len(g) == 1:
                return False
            if len(g) < len(modulus):
                raise _NeedSplit(g)
            # g == modulus means c = 0 mod modulus: no constraint (cannot happen: stripped)
        else:
            work.append(f)
    if not work:
        return True
    # fold gcds in (K[x]/modulus)[y]
    current = work[0]
    for nxt in work[1:]:
        a, b = current, nxt
        while True:
            b = _y_trim([row[:] for row in b])
            # strip top coefficients that vanish modulo the branch
            while b and uni_is_zero(_mod_reduce(b[-1], modulus, order)):
                b.pop()
            if not b:
                break
            if len(b) == 1:
                g = uni_gcd(b[0], modulus, order)
                if len(g) == 1:
                    return False
                if len(g) < len(modulus):
                    raise _NeedSplit(g)
                break
            if len(a) < len(b):
                a, b = b, a
                continue
            inv = invert_or_split(b[-1])
            bm = [ _mod_reduce(uni_mul(row, inv, order), modulus, order) for row in b]
            bm[-1] = [CyclotomicElement.one(order)]
            # reduce a by monic bm
            r = [ _mod_reduce(row, modulus, order) for row in a]
            r = _y_trim(r)
            while len(r) >= len(bm):
                top = r[-1]
                shift = len(r) - len(bm)
                for i, gi in enumerate(bm):
                    r[i + shift] = _mod_reduce(uni_sub(r[i + shift], uni_mul(top, gi, order), order), modulus, order)
                r[len(r) - 1] = []
                r = _y_trim(r)
            a, b = bm, r
        current = _y_trim(a)
        if not current:
            return True  # both reduced to zero: no constraint on this branch
    # survivors: current is the branch gcd
    while current and uni_is_zero(_mod_reduce(current[-1], modulus, order)):
        current.pop()
    if not current:
        return True
    if len(current) == 1:
        g = uni_gcd(current[0], modulus, order)
        if len(g) == 1:
            return False
        if len(g) < len(modulus):
            raise _NeedSplit(g)
        return True
    return True  # positive y-degree gcd: common root above every branch point


def _candidates_have_common_root(d, ypolys, order) -> bool:
    """Dynamic evaluation driver over the squarefree candidate modulus d."""
    stack = [uni_monic(d)]
    while stack:
        modulus = stack.pop()
        if len(modulus) <= 1:
            continue
        try:
            if _branch_has_common_root(modulus, ypolys, order):
                return True
        except _NeedSplit as split:
            g = uni_monic(split.factor)
            q, r = uni_divmod(modulus, g, order)
            assert not r, "split factor must divide the modulus"
            stack.append(g)
            stack.append(q)
    return False


def has_common_affine_zero(polys: list[SparsePoly]) -> bool:
    """Do bivariate polynomials share a zero over the algebraic closure?"""
    live = [p for p in polys if not p.is_zero()]
    if not live:
        return True
    order = live[0].order
    if any(p.total_degree() == 0 for p in live):
        return False
    if len(live) == 1:
        return True
    xonly = [p for p in live if p.degree_in(1) == 0]
    ypos = [p for p in live if p.degree_in(1) > 0]
    if not ypos:
        g: list[CyclotomicElement] = []
        for p in xonly:
            dense = _to_ylists(p)[0]
            g = uni_gcd(g, dense, order) if g else uni_monic(dense)
        return len(g) > 1
    # split off common factors between y-positive polynomials
    for i in range(len(ypos)):
        for j in range(i + 1, len(ypos)):
            fi, fj = _to_ylists(ypos[i]), _to_ylists(ypos[j])
            h = _y_gcd(fi, fj, order)
            hp = _from_ylists(h, order)
            if hp.total_degree() == 0:
                continue
            rest = xonly + [p for k, p in enumerate(ypos) if k not in (i, j)]
            if has_common_affine_zero([hp] + rest):
                return True
            fi_red = ypos[i].exact_div(hp)
            fj_red = ypos[j].exact_div(hp)
            return has_common_affine_zero([fi_red, fj_red] + rest)
    # now the y-positive polynomials are pairwise coprime in K[x][y]
    candidates: list[list[CyclotomicElement]] = []
    for p in xonly:
        candidates.append(_to_ylists(p)[0])
    for i in range(len(ypos)):
        for j in range(i + 1, len(ypos)):
            res = resultant(ypos[i], ypos[j], 1)
            assert not res.is_zero(), "coprime polynomials have nonzero resultant"
            candidates.append(_to_ylists(res)[0])
    d: list[CyclotomicElement] = []
    for c in candidates:
        d = uni_gcd(d, c, order) if d else uni_monic(c)
        if len(d) == 1:
            return False
    if len(d) == 1:
        return False
    d = uni_squarefree(d, order)
    return _candidates_have_common_root(d, [_to_ylists(p) for p in ypos], order)


def is_smooth(curve: PlaneCurve) -> bool:
    """Exact smoothness test for a plane projective curve."""
    f = curve.poly
    partials = [f.derivative(v) for v in range(3)]
    # the line z = 0
    line_forms = [_set_var_zero(p, 2) for p in partials]
    if _binary_common_root(line_forms, f.order):
        return False
    # the affine chart z = 1
    chart = [_dehomogenize(p, 2) for p in partials]
    return not has_common_affine_zero(chart)
