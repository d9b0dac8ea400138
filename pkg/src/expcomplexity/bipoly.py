"""Sparse bivariate polynomials over F_p under the graded lexicographic order.

Monomials are exponent pairs (a1, a2) for x^a1 * y^a2.  The grlex order
compares total degree first, then the y-exponent; `grlex_key` turns a
monomial into a sortable key realizing exactly that order.

Includes leading data, composition with a truncated power series, the
linear substitution y -> y + a*x + b, exact division, and a budgeted
irreducibility test by normalized trial division.
"""

from __future__ import annotations

import itertools
from math import comb

from .errors import BudgetExceeded, InvalidParam, ZeroPolynomial
from .field import NEG_INF, PrimeField, UniPoly, poly_gcd, uni_is_irreducible

DEFAULT_BUDGET = 2_000_000

Monomial = tuple  # (a1, a2), exponents of x and y


def grlex_key(m):
    """Sort key: ascending by this key is ascending grlex."""
    return (m[0] + m[1], m[1])


def grlex_cmp(m1, m2) -> int:
    """-1, 0 or 1 as m1 <, =, > m2 under grlex."""
    k1, k2 = grlex_key(m1), grlex_key(m2)
    return (k1 > k2) - (k1 < k2)


def monomial_str(m) -> str:
    a1, a2 = m
    parts = []
    if a1:
        parts.append("x" if a1 == 1 else f"x^{a1}")
    if a2:
        parts.append("y" if a2 == 1 else f"y^{a2}")
    return "*".join(parts) if parts else "1"


class BiPoly:
    """Bivariate polynomial; `terms` maps monomials to nonzero coefficients."""

    __slots__ = ("field", "terms", "_lead")

    def __init__(self, field: PrimeField, terms=None):
        p = field.p
        clean = {}
        for m, c in (terms or {}).items():
            c %= p
            if c:
                clean[(int(m[0]), int(m[1]))] = c
        self.field = field
        self.terms = clean
        self._lead = max(clean, key=grlex_key) if clean else None

    # constructors ------------------------------------------------------------

    @classmethod
    def zero(cls, field):
        return cls(field, {})

    @classmethod
    def constant(cls, field, c):
        return cls(field, {(0, 0): c})

    @classmethod
    def monomial(cls, field, m, c=1):
        return cls(field, {m: c})

    @classmethod
    def from_unipoly(cls, f: UniPoly, y_power: int = 0) -> "BiPoly":
        """Embed f(x) * y^y_power."""
        return cls(f.field, {(i, y_power): c for i, c in enumerate(f.coeffs)})

    # structure ---------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def lead_exponent(self):
        if self._lead is None:
            raise ZeroPolynomial("zero polynomial has no leading exponent")
        return self._lead

    @property
    def lead_coeff(self) -> int:
        return self.terms[self.lead_exponent]

    def leading_data(self):
        """(LE, LM string, LC) of the grlex-largest term."""
        le = self.lead_exponent
        return le, monomial_str(le), self.terms[le]

    @property
    def total_degree(self) -> int:
        le = self.lead_exponent  # under grlex, |LE| is the total degree
        return le[0] + le[1]

    def y_degree(self) -> int:
        if self.is_zero:
            raise ZeroPolynomial("zero polynomial has no degree")
        return max(m[1] for m in self.terms)

    def x_degree(self) -> int:
        if self.is_zero:
            raise ZeroPolynomial("zero polynomial has no degree")
        return max(m[0] for m in self.terms)

    def coeff_of_y(self, b: int) -> UniPoly:
        """Coefficient of y^b as a univariate polynomial in x."""
        if self.is_zero:
            return UniPoly(self.field, ())
        width = max((m[0] for m in self.terms if m[1] == b), default=-1) + 1
        coeffs = [0] * width
        for (a1, a2), c in self.terms.items():
            if a2 == b:
                coeffs[a1] = c
        return UniPoly(self.field, coeffs)

    def sorted_terms(self, descending=True):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=descending)

    def __eq__(self, other):
        return (
            isinstance(other, BiPoly)
            and other.field.p == self.field.p
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((self.field.p, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"BiPoly(p={self.field.p}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            if m == (0, 0):
                parts.append(str(c))
            elif c == 1:
                parts.append(monomial_str(m))
            else:
                parts.append(f"{c}*{monomial_str(m)}")
        return " + ".join(parts)

    # arithmetic ---------------------------------------------------------------

    def __add__(self, other):
        out = dict(self.terms)
        p = self.field.p
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return BiPoly(self.field, out)

    def __neg__(self):
        return BiPoly(self.field, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        p = self.field.p
        out = {}
        for (a1, a2), c in self.terms.items():
            for (b1, b2), d in other.terms.items():
                m = (a1 + b1, a2 + b2)
                v = (out.get(m, 0) + c * d) % p
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return BiPoly(self.field, out)

    __rmul__ = __mul__

    def scale(self, c: int):
        return BiPoly(self.field, {m: v * c for m, v in self.terms.items()})

    def term_mul(self, m, c=1):
        """Multiply by c * x^m[0] * y^m[1]."""
        da, db = m
        return BiPoly(
            self.field, {(a1 + da, a2 + db): v * c for (a1, a2), v in self.terms.items()}
        )

    def monic(self) -> "BiPoly":
        if self.is_zero:
            return self
        return self.scale(self.field.inv(self.lead_coeff))

    def normalized(self) -> "BiPoly":
        """Scale so the grlex-first (leading) nonzero coefficient is 1."""
        return self.monic()

    # composition & substitution ------------------------------------------------

    def compose_mod(self, g: UniPoly, n: int) -> UniPoly:
        """h(x, g(x)) mod x^n by Horner evaluation in y."""
        if self.is_zero:
            return UniPoly(self.field, ())
        acc = UniPoly(self.field, ())
        for b in range(self.y_degree(), -1, -1):
            acc = acc.mul_trunc(g, n) + self.coeff_of_y(b).truncate(n)
        return acc.truncate(n)

    def substitute_linear(self, a: int, b: int) -> "BiPoly":
        """h(x, y + a*x + b); preserves LE, LM, LC whenever |LE| >= 2."""
        if self.is_zero:
            return self
        lin = BiPoly(self.field, {(0, 1): 1, (1, 0): a, (0, 0): b})
        acc = BiPoly.zero(self.field)
        for deg in range(self.y_degree(), -1, -1):
            acc = acc * lin + BiPoly.from_unipoly(self.coeff_of_y(deg))
        return acc


def compose_mod(h: BiPoly, g: UniPoly, n: int) -> UniPoly:
    return h.compose_mod(g, n)


def substitute_linear(h: BiPoly, a: int, b: int) -> BiPoly:
    return h.substitute_linear(a, b)


def leading_data(h: BiPoly):
    return h.leading_data()


def total_degree(h: BiPoly) -> int:
    return h.total_degree


def divide_exact(d: BiPoly, h: BiPoly):
    """Quotient q with h = d * q when d divides h exactly, else None."""
    if d.is_zero:
        raise ZeroPolynomial("division by the zero polynomial")
    if h.is_zero:
        return BiPoly.zero(h.field)
    p = h.field.p
    dl = d.lead_exponent
    dlc_inv = h.field.inv(d.lead_coeff)
    work = dict(h.terms)
    quo = {}
    while work:
        m = max(work, key=grlex_key)
        da, db = m[0] - dl[0], m[1] - dl[1]
        if da < 0 or db < 0:
            return None  # leading term not cancellable: nonzero remainder
        c = work[m] * dlc_inv % p
        quo[(da, db)] = c
        for (b1, b2), v in d.terms.items():
            key = (b1 + da, b2 + db)
            nv = (work.get(key, 0) - c * v) % p
            if nv:
                work[key] = nv
            else:
                work.pop(key, None)
    return BiPoly(h.field, quo)


def _monomials_upto(deg):
    # ascending grlex
    return [(d - b, b) for d in range(deg + 1) for b in range(d + 1)]


def _candidate_divisors(field, max_deg):
    # every monic bivariate polynomial of total degree 1..max_deg, enumerated
    # by leading monomial (ascending grlex) with free lower coefficients
    p = field.p
    for t in range(1, max_deg + 1):
        for lead in [(t - b, b) for b in range(t + 1)]:
            lower = [m for m in _monomials_upto(t) if grlex_key(m) < grlex_key(lead)]
            for coeffs in itertools.product(range(p), repeat=len(lower)):
                terms = {lead: 1}
                for m, c in zip(lower, coeffs):
                    if c:
                        terms[m] = c
                yield BiPoly(field, terms)


def find_proper_factor(h: BiPoly, budget: int = DEFAULT_BUDGET):
    """A factorization (f, g) of h with both total degrees >= 1, or None.

    Fast paths: total degree 1, divisibility by x or y, y-degree <= 1 (gcd of
    y-coefficients), pure univariate content.  Otherwise exhaustive trial
    division by all monic divisors of total degree <= deg(h)//2, guarded by
    a budget on the candidate count p^C(deg//2 + 2, 2).
    """
    if h.is_zero:
        raise ZeroPolynomial("irreducibility of 0 is undefined")
    d = h.total_degree
    if d < 1:
        raise InvalidParam("irreducibility needs total degree >= 1")
    if d == 1:
        return None
    field = h.field
    # divisibility by the variables
    if all(m[0] >= 1 for m in h.terms):
        x = BiPoly.monomial(field, (1, 0))
        return x, divide_exact(x, h)
    if all(m[1] >= 1 for m in h.terms):
        y = BiPoly.monomial(field, (0, 1))
        return y, divide_exact(y, h)
    ydeg = h.y_degree()
    if ydeg == 0:
        f = h.coeff_of_y(0)
        if uni_is_irreducible(f):
            return None
    elif h.x_degree() == 0:
        # univariate in y: mirror of the y-free case
        g = UniPoly(field, [h.terms.get((0, b), 0) for b in range(ydeg + 1)])
        if uni_is_irreducible(g):
            return None
    elif ydeg == 1:
        # c1(x) y + c0(x): only possible proper factor is a common x-divisor
        g = poly_gcd(h.coeff_of_y(1), h.coeff_of_y(0))
        if g.degree == 0:
            return None
        gb = BiPoly.from_unipoly(g)
        return gb, divide_exact(gb, h)
    if field.p ** comb(d // 2 + 2, 2) > budget:
        raise BudgetExceeded(
            f"trial division over ~p^{comb(d // 2 + 2, 2)} candidates exceeds budget {budget}"
        )
    hle = h.lead_exponent
    for cand in _candidate_divisors(field, d // 2):
        le = cand.lead_exponent
        if le[0] > hle[0] or le[1] > hle[1]:
            continue  # LE is additive under products, so LE(cand) must divide LE(h)
        q = divide_exact(cand, h)
        if q is not None and not q.is_zero and q.total_degree >= 1:
            return cand, q
    return None


def is_irreducible(h: BiPoly, budget: int = DEFAULT_BUDGET) -> bool:
    """True iff h has no factorization into two factors of total degree >= 1."""
    return find_proper_factor(h, budget) is None
