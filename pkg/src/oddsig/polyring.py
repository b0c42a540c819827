"""Sparse multivariate polynomials over a fixed cyclotomic field.

Terms map exponent tuples to nonzero CyclotomicElement coefficients; the
canonical term order is graded lexicographic with earlier variables larger.
Univariate helpers (dense coefficient lists, low degree first) back the gcd,
squarefree and root-counting machinery; the resultant uses a Sylvester matrix
with fraction-free (Bareiss) elimination so entries stay polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import (
    OrderMismatch,
    SchemaError,
    VariableCountMismatch,
    ZeroPolynomial,
)
from .exactnum import CyclotomicElement, common_order

Coeff = Union[int, Fraction, CyclotomicElement]


def _gl_key(exponents: tuple[int, ...]) -> tuple:
    return (sum(exponents), exponents)


class SparsePoly:
    """A polynomial in nvars variables over Q(zeta_order)."""

    __slots__ = ("order", "nvars", "terms")

    def __init__(self, order: int, nvars: int, terms: dict[tuple[int, ...], CyclotomicElement]):
        clean: dict[tuple[int, ...], CyclotomicElement] = {}
        for exps, coeff in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise VariableCountMismatch(f"bad exponent vector {exps} for {nvars} variables")
            if coeff.order != order:
                raise OrderMismatch("coefficient order differs from polynomial order")
            if not coeff.is_zero():
                clean[exps] = coeff
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *_):
        raise AttributeError("SparsePoly is immutable")

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, order: int, nvars: int) -> "SparsePoly":
        return cls(order, nvars, {})

    @classmethod
    def constant(cls, value: Coeff, order: int, nvars: int) -> "SparsePoly":
        c = value if isinstance(value, CyclotomicElement) else CyclotomicElement.from_rational(value, order)
        return cls(order, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, index: int, order: int, nvars: int) -> "SparsePoly":
        exps = [0] * nvars
        exps[index] = 1
        return cls(order, nvars, {tuple(exps): CyclotomicElement.one(order)})

    @classmethod
    def build(cls, order: int, nvars: int, entries: Iterable[tuple[Coeff, Sequence[int]]]) -> "SparsePoly":
        """Sum of coeff * x^exps entries (duplicates accumulate)."""
        acc: dict[tuple[int, ...], CyclotomicElement] = {}
        for coeff, exps in entries:
            c = coeff if isinstance(coeff, CyclotomicElement) else CyclotomicElement.from_rational(coeff, order)
            c = c.lift_to(order) if c.order != order else c
            key = tuple(int(e) for e in exps)
            acc[key] = acc[key] + c if key in acc else c
        return cls(order, nvars, acc)

    # basic structure ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no degree")
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degrees = {sum(e) for e in self.terms}
        return len(degrees) <= 1

    def degree_in(self, var: int) -> int:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no degree")
        return max(e[var] for e in self.terms)

    def coefficient(self, exps: Sequence[int]) -> CyclotomicElement:
        return self.terms.get(tuple(exps), CyclotomicElement.zero(self.order))

    def leading_term(self) -> tuple[tuple[int, ...], CyclotomicElement]:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        exps = max(self.terms, key=_gl_key)
        return exps, self.terms[exps]

    def sorted_terms(self) -> list[tuple[tuple[int, ...], CyclotomicElement]]:
        return [(e, self.terms[e]) for e in sorted(self.terms, key=_gl_key, reverse=True)]

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> Optional["SparsePoly"]:
        if isinstance(other, SparsePoly):
            if other.order != self.order:
                raise OrderMismatch("polynomial orders differ; lift first")
            if other.nvars != self.nvars:
                raise VariableCountMismatch("variable counts differ")
            return other
        if isinstance(other, (int, Fraction, CyclotomicElement)):
            return SparsePoly.constant(other, self.order, self.nvars)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for exps, coeff in o.terms.items():
            out[exps] = out[exps] + coeff if exps in out else coeff
        return SparsePoly(self.order, self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly(self.order, self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[tuple[int, ...], CyclotomicElement] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                out[key] = out[key] + prod if key in out else prod
        return SparsePoly(self.order, self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = SparsePoly.constant(1, self.order, self.nvars)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicElement)):
            other = SparsePoly.constant(other, self.order, self.nvars)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return (self.order, self.nvars, self.terms) == (other.order, other.nvars, other.terms)

    def __hash__(self):
        return hash((self.order, self.nvars, tuple(self.sorted_terms())))

    def __repr__(self):
        if not self.terms:
            return "SparsePoly(0)"
        bits = []
        for exps, coeff in self.sorted_terms():
            mono = "*".join(f"v{i}^{e}" for i, e in enumerate(exps) if e) or "1"
            bits.append(f"({[str(c) for c in coeff.coords]})*{mono}")
        return "SparsePoly(" + " + ".join(bits) + ")"

    # evaluation and substitution ----------------------------------------
    def evaluate(self, point: Sequence[CyclotomicElement]) -> CyclotomicElement:
        if len(point) != self.nvars:
            raise VariableCountMismatch("point dimension differs from variable count")
        total = CyclotomicElement.zero(self.order)
        for exps, coeff in self.terms.items():
            val = coeff
            for x, e in zip(point, exps):
                if e:
                    val = val * x ** e
            total = total + val
        return total

    def substitute_linear(self, matrix: Sequence[Sequence[CyclotomicElement]]) -> "SparsePoly":
        """Compose with a linear change of variables.

        matrix has one row per current variable; row i gives the linear form
        (in the new variables) substituted for variable i. For a projective
        map A acting on points, the pullback F o A is substitute_linear(A).
        """
        if len(matrix) != self.nvars:
            raise VariableCountMismatch("matrix row count differs from variable count")
        new_nvars = len(matrix[0])
        forms = []
        for row in matrix:
            if len(row) != new_nvars:
                raise VariableCountMismatch("ragged substitution matrix")
            forms.append(SparsePoly(self.order, new_nvars,
                                    {tuple(1 if j == k else 0 for j in range(new_nvars)): c
                                     for k, c in enumerate(row) if not c.is_zero()}))
        # precompute powers of each linear form
        max_pow = [0] * self.nvars
        for exps in self.terms:
            for i, e in enumerate(exps):
                max_pow[i] = max(max_pow[i], e)
        powers: list[list[SparsePoly]] = []
        for i in range(self.nvars):
            row_powers = [SparsePoly.constant(1, self.order, new_nvars)]
            for _ in range(max_pow[i]):
                row_powers.append(row_powers[-1] * forms[i])
            powers.append(row_powers)
        total = SparsePoly.zero(self.order, new_nvars)
        for exps, coeff in self.terms.items():
            term = SparsePoly.constant(coeff, self.order, new_nvars)
            for i, e in enumerate(exps):
                if e:
                    term = term * powers[i][e]
            total = total + term
        return total

    def derivative(self, var: int) -> "SparsePoly":
        out: dict[tuple[int, ...], CyclotomicElement] = {}
        for exps, coeff in self.terms.items():
            e = exps[var]
            if e:
                key = tuple(x - 1 if i == var else x for i, x in enumerate(exps))
                c = coeff * e
                out[key] = out[key] + c if key in out else c
        return SparsePoly(self.order, self.nvars, out)

    # field structure ----------------------------------------------------
    def galois(self, exponent: int) -> "SparsePoly":
        return SparsePoly(self.order, self.nvars, {e: c.galois(exponent) for e, c in self.terms.items()})

    def conjugate(self) -> "SparsePoly":
        return self.galois(-1)

    def lift_to(self, order: int) -> "SparsePoly":
        if order == self.order:
            return self
        return SparsePoly(order, self.nvars, {e: c.lift_to(order) for e, c in self.terms.items()})

    def exact_div(self, divisor: "SparsePoly") -> "SparsePoly":
        """Quotient self / divisor when the division is exact.

        Repeated graded-lex leading-term reduction; raises ValueError if a
        remainder survives (callers only divide when exactness is guaranteed).
        """
        d = self._coerce(divisor)
        if d is None or d.is_zero():
            raise ZeroPolynomial("division by zero polynomial")
        lt_d, lc_d = d.leading_term()
        quotient: dict[tuple[int, ...], CyclotomicElement] = {}
        rem = self
        while not rem.is_zero():
            lt_r, lc_r = rem.leading_term()
            diff = tuple(a - b for a, b in zip(lt_r, lt_d))
            if any(x < 0 for x in diff):
                raise ValueError("division is not exact")
            q = lc_r / lc_d
            quotient[diff] = q
            rem = rem - SparsePoly(self.order, self.nvars, {diff: q}) * d
        return SparsePoly(self.order, self.nvars, quotient)

    # serialization ------------------------------------------------------
    def to_dict(self, variables: Sequence[str]) -> dict:
        if len(variables) != self.nvars:
            raise VariableCountMismatch("variable name count differs")
        return {
            "order": self.order,
            "variables": list(variables),
            "terms": [
                {"exponents": list(e), "coefficient": [str(x) for x in c.coords]}
                for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "SparsePoly":
        for key in ("order", "variables", "terms"):
            if key not in obj:
                raise SchemaError(f"polynomial document missing '{key}'")
        order, variables, raw_terms = obj["order"], obj["variables"], obj["terms"]
        if not isinstance(order, int) or order < 1:
            raise SchemaError(f"bad order: {order!r}")
        if not isinstance(variables, list) or not variables:
            raise SchemaError("variables must be a nonempty list")
        nvars = len(variables)
        if not isinstance(raw_terms, list):
            raise SchemaError("terms must be a list")
        acc: dict[tuple[int, ...], CyclotomicElement] = {}
        for item in raw_terms:
            if not isinstance(item, dict) or "exponents" not in item or "coefficient" not in item:
                raise SchemaError("each term needs 'exponents' and 'coefficient'")
            exps = item["exponents"]
            if not isinstance(exps, list) or len(exps) != nvars or any(not isinstance(e, int) or e < 0 for e in exps):
                raise SchemaError(f"bad exponent vector: {exps!r}")
            coeff = CyclotomicElement.from_dict({"order": order, "coords": item["coefficient"]})
            key = tuple(exps)
            if key in acc:
                raise SchemaError(f"duplicate exponent vector: {exps!r}")
            acc[key] = coeff
        return cls(order, nvars, acc)


# univariate helpers (dense lists of CyclotomicElement, low degree first) ----

def uni_trim(c: list[CyclotomicElement]) -> list[CyclotomicElement]:
    while c and c[-1].is_zero():
        c.pop()
    return c


def uni_is_zero(c: Sequence[CyclotomicElement]) -> bool:
    return all(x.is_zero() for x in c)


def uni_add(a: Sequence[CyclotomicElement], b: Sequence[CyclotomicElement], order: int) -> list[CyclotomicElement]:
    out = [CyclotomicElement.zero(order) for _ in range(max(len(a), len(b)))]
    for i, x in enumerate(a):
        out[i] = out[i] + x
    for i, x in enumerate(b):
        out[i] = out[i] + x
    return uni_trim(out)


def uni_neg(a: Sequence[CyclotomicElement]) -> list[CyclotomicElement]:
    return [-x for x in a]


def uni_sub(a, b, order: int) -> list[CyclotomicElement]:
    return uni_add(a, uni_neg(b), order)


def uni_mul(a: Sequence[CyclotomicElement], b: Sequence[CyclotomicElement], order: int) -> list[CyclotomicElement]:
    if not a or not b:
        return []
    out = [CyclotomicElement.zero(order) for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if not x.is_zero():
            for j, y in enumerate(b):
                if not y.is_zero():
                    out[i + j] = out[i + j] + x * y
    return uni_trim(out)


def uni_scale(a: Sequence[CyclotomicElement], s: CyclotomicElement) -> list[CyclotomicElement]:
    return uni_trim([x * s for x in a])


def uni_divmod(a: Sequence[CyclotomicElement], b: Sequence[CyclotomicElement], order: int):
    """Euclidean division in K[x] for the cyclotomic field K."""
    if not b:
        raise ZeroPolynomial("univariate division by zero")
    a = list(a)
    q = [CyclotomicElement.zero(order) for _ in range(max(0, len(a) - len(b) + 1))]
    inv_lead = b[-1].inverse()
    for i in range(len(a) - len(b), -1, -1):
        coef = a[i + len(b) - 1] * inv_lead
        if not coef.is_zero():
            q[i] = coef
            for j, bj in enumerate(b):
                a[i + j] = a[i + j] - coef * bj
    return uni_trim(q), uni_trim(a)


def uni_monic(a: Sequence[CyclotomicElement]) -> list[CyclotomicElement]:
    a = uni_trim(list(a))
    if not a:
        return a
    return uni_scale(a, a[-1].inverse())


def uni_gcd(a: Sequence[CyclotomicElement], b: Sequence[CyclotomicElement], order: int) -> list[CyclotomicElement]:
    """Monic gcd via the Euclidean algorithm (K is a field, no content issues)."""
    r0, r1 = uni_trim(list(a)), uni_trim(list(b))
    while r1:
        _, r = uni_divmod(r0, r1, order)
        r0, r1 = r1, uni_monic(r)
    return uni_monic(r0)


def uni_xgcd(a: Sequence[CyclotomicElement], b: Sequence[CyclotomicElement], order: int):
    """(g, s, t) with s*a + t*b = g, g monic (or zero)."""
    one = [CyclotomicElement.one(order)]
    r0, r1 = uni_trim(list(a)), uni_trim(list(b))
    s0, s1 = list(one), []
    t0, t1 = [], list(one)
    while r1:
        q, r = uni_divmod(r0, r1, order)
        r0, r1 = r1, r
        s0, s1 = s1, uni_sub(s0, uni_mul(q, s1, order), order)
        t0, t1 = t1, uni_sub(t0, uni_mul(q, t1, order), order)
    if not r0:
        return [], [], []
    lead_inv = r0[-1].inverse()
    return uni_scale(r0, lead_inv), uni_scale(s0, lead_inv), uni_scale(t0, lead_inv)


def uni_derivative(a: Sequence[CyclotomicElement]) -> list[CyclotomicElement]:
    return uni_trim([a[i] * i for i in range(1, len(a))])


def uni_squarefree(a: Sequence[CyclotomicElement], order: int) -> list[CyclotomicElement]:
    """Squarefree part a / gcd(a, a') in characteristic zero."""
    a = uni_trim(list(a))
    if not a:
        raise ZeroPolynomial("zero polynomial has no squarefree part")
    if len(a) == 1:
        return uni_monic(a)
    g = uni_gcd(a, uni_derivative(a), order)
    q, r = uni_divmod(a, g, order)
    assert not r, "gcd must divide"
    return uni_monic(q)


def uni_eval(a: Sequence[CyclotomicElement], x: CyclotomicElement, order: int) -> CyclotomicElement:
    total = CyclotomicElement.zero(order)
    for c in reversed(list(a)):
        total = total * x + c
    return total


def poly_to_uni(p: SparsePoly, var: int = 0) -> list[CyclotomicElement]:
    """Dense coefficient list of a polynomial using only variable var."""
    for exps in p.terms:
        if any(e and i != var for i, e in enumerate(exps)):
            raise VariableCountMismatch("polynomial is not univariate in the requested variable")
    if p.is_zero():
        return []
    out = [CyclotomicElement.zero(p.order) for _ in range(p.degree_in(var) + 1)]
    for exps, coeff in p.terms.items():
        out[exps[var]] = coeff
    return out


def uni_to_poly(coeffs: Sequence[CyclotomicElement], order: int, nvars: int = 1, var: int = 0) -> SparsePoly:
    terms = {}
    for i, c in enumerate(coeffs):
        if not c.is_zero():
            exps = [0] * nvars
            exps[var] = i
            terms[tuple(exps)] = c
    return SparsePoly(order, nvars, terms)


# binary forms ---------------------------------------------------------------

def distinct_root_count(form: SparsePoly) -> int:
    """Number of distinct projective roots of a nonzero binary form."""
    if form.nvars != 2:
        raise VariableCountMismatch("binary form must have exactly two variables")
    if form.is_zero():
        raise ZeroPolynomial("zero form has no root count")
    if not form.is_homogeneous():
        raise ValueError("form must be homogeneous")
    order = form.order
    # root at [1:0] iff the second variable divides the form
    min_y = min(e[1] for e in form.terms)
    at_infinity = 1 if min_y >= 1 else 0
    # finite roots [x:1]: distinct roots of form(x, 1)
    dense = [CyclotomicElement.zero(order) for _ in range(form.degree_in(0) + 1)] if any(e[0] for e in form.terms) else [CyclotomicElement.zero(order)]
    for exps, coeff in form.terms.items():
        dense[exps[0]] = dense[exps[0]] + coeff
    dense = uni_trim(dense)
    if not dense:
        # form is a power of y times zero? cannot happen for nonzero form
        raise ZeroPolynomial("unexpected zero dehomogenization")
    if len(dense) == 1:
        return at_infinity
    return at_infinity + (len(uni_squarefree(dense, order)) - 1)


def squarefree_part(p: SparsePoly, var: int = 0) -> SparsePoly:
    """Monic squarefree part of a univariate polynomial."""
    return uni_to_poly(uni_squarefree(poly_to_uni(p, var), p.order), p.order, p.nvars, var)


# resultants -----------------------------------------------------------------

def _poly_coeffs_in(p: SparsePoly, var: int) -> list[SparsePoly]:
    """Coefficient list of p in variable var; entries keep all variables."""
    deg = p.degree_in(var)
    rows: list[dict] = [{} for _ in range(deg + 1)]
    for exps, coeff in p.terms.items():
        rest = tuple(0 if i == var else e for i, e in enumerate(exps))
        rows[exps[var]][rest] = coeff
    return [SparsePoly(p.order, p.nvars, r) for r in rows]


def _bareiss_det(matrix: list[list[SparsePoly]], order: int, nvars: int) -> SparsePoly:
    n = len(matrix)
    if n == 0:
        return SparsePoly.constant(1, order, nvars)
    m = [row[:] for row in matrix]
    sign = 1
    denom = SparsePoly.constant(1, order, nvars)
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot = next((r for r in range(k + 1, n) if not m[r][k].is_zero()), None)
            if pivot is None:
                return SparsePoly.zero(order, nvars)
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(denom)
            m[i][k] = SparsePoly.zero(order, nvars)
        denom = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant(f: SparsePoly, g: SparsePoly, var: int) -> SparsePoly:
    """Sylvester resultant eliminating variable var.

    The result does not involve var. Raises ZeroPolynomial on zero inputs.
    """
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomial("resultant of zero polynomial")
    fo = f._coerce(g)
    assert fo is g
    order, nvars = f.order, f.nvars
    fc = _poly_coeffs_in(f, var)
    gc = _poly_coeffs_in(g, var)
    n, m = len(fc) - 1, len(gc) - 1
    if n == 0 and m == 0:
        return SparsePoly.constant(1, order, nvars)
    if n == 0:
        return fc[0] ** m
    if m == 0:
        return gc[0] ** n
    size = n + m
    zero = SparsePoly.zero(order, nvars)
    rows = []
    for shift in range(m):  # m rows of f coefficients, descending powers
        row = [zero] * size
        for idx, c in enumerate(reversed(fc)):
            row[shift + idx] = c
        rows.append(row)
    for shift in range(n):
        row = [zero] * size
        for idx, c in enumerate(reversed(gc)):
            row[shift + idx] = c
        rows.append(row)
    return _bareiss_det(rows, order, nvars)


def lift_pair(a: SparsePoly, b: SparsePoly) -> tuple[SparsePoly, SparsePoly]:
    target = common_order(a.order, b.order)
    return a.lift_to(target), b.lift_to(target)
