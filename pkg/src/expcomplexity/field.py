"""Exact arithmetic over F_p.

Provides the prime-field context, dense univariate polynomials (ascending
coefficient lists, no trailing zeros), truncated power-series products,
Hasse derivatives, binomial coefficients mod p via base-p digits, gcd /
squarefree machinery and finite sequence prefixes.

Field elements are plain Python ints in [0, p); the `PrimeField` context
owns the modulus and validates primality once.
"""

from __future__ import annotations

import functools
import itertools

from .errors import BothZero, InvalidParam, ZeroInput, ZeroInverse

NEG_INF = float("-inf")  # degree of the zero polynomial

# Deterministic Miller-Rabin witnesses for n < 3_215_031_751 (> 2**31).
_MR_BASES = (2, 3, 5, 7)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@functools.lru_cache(maxsize=None)
def _fact_tables(p):
    # factorials and inverse factorials mod p, for table-sized primes
    fact = [1] * p
    for i in range(1, p):
        fact[i] = fact[i - 1] * i % p
    inv_last = pow(fact[p - 1], p - 2, p)
    ifact = [1] * p
    ifact[p - 1] = inv_last
    for i in range(p - 1, 0, -1):
        ifact[i - 1] = ifact[i] * i % p
    return fact, ifact


def _binom_digit(n, r, p):
    # C(n, r) mod p for 0 <= r <= n < p
    if p <= 1 << 16:
        fact, ifact = _fact_tables(p)
        return fact[n] * ifact[r] % p * ifact[n - r] % p
    r = min(r, n - r)
    num, den = 1, 1
    for i in range(r):
        num = num * ((n - i) % p) % p
        den = den * (i + 1) % p
    return num * pow(den, p - 2, p) % p


def binom_mod(n: int, r: int, p: int) -> int:
    """C(n, r) mod p by Lucas' theorem, digit by digit in base p."""
    if r < 0 or n < 0:
        raise InvalidParam("binomial arguments must be nonnegative")
    if r > n:
        return 0
    out = 1
    while n or r:
        ni, ri = n % p, r % p
        if ri > ni:
            return 0
        out = out * _binom_digit(ni, ri, p) % p
        n //= p
        r //= p
    return out


class PrimeField:
    """Context for F_p arithmetic on plain ints reduced to [0, p)."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int) or p < 2 or p >= 1 << 31 or not is_prime(p):
            raise InvalidParam(f"modulus must be a prime below 2**31, got {p!r}")
        self.p = p

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def elem(self, v: int) -> int:
        return v % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroInverse(f"0 has no inverse mod {self.p}")
        return pow(a, self.p - 2, self.p)

    def pow(self, a, e):
        return pow(a % self.p, e, self.p)

    def binom(self, n, r):
        return binom_mod(n, r, self.p)

    # polynomial constructors -------------------------------------------------

    def poly(self, coeffs) -> "UniPoly":
        return UniPoly(self, coeffs)

    def zero_poly(self) -> "UniPoly":
        return UniPoly(self, ())

    def one_poly(self) -> "UniPoly":
        return UniPoly(self, (1,))

    def x_poly(self, k: int = 1, c: int = 1) -> "UniPoly":
        """The monomial c * x^k."""
        return UniPoly(self, (0,) * k + (c,))


def _mul_lists(a, b, p):
    # schoolbook product of coefficient lists; numpy convolution when the
    # operands are big enough to matter and int64 cannot overflow
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return []
    if min(la, lb) >= 16 and (p - 1) * (p - 1) * min(la, lb) < 1 << 62:
        import numpy as np

        out = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        return [int(v) for v in out % p]
    out = [0] * (la + lb - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


class UniPoly:
    """Dense univariate polynomial over F_p, ascending coefficients."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: PrimeField, coeffs):
        p = field.p
        cs = [c % p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    # basic structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self):
        """Degree as an int; NEG_INF for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, UniPoly)
            and other.field.p == self.field.p
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.field.p, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"UniPoly(p={self.field.p}, {self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for n in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[n]
            if not c:
                continue
            if n == 0:
                parts.append(str(c))
            else:
                var = "x" if n == 1 else f"x^{n}"
                parts.append(var if c == 1 else f"{c}*{var}")
        return " + ".join(parts)

    # ring operations ---------------------------------------------------------

    def _like(self, coeffs):
        return UniPoly(self.field, coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return self._like(out)

    def __neg__(self):
        return self._like([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return self._like(_mul_lists(self.coeffs, other.coeffs, self.field.p))

    __rmul__ = __mul__

    def scale(self, c: int):
        c %= self.field.p
        if c == 0:
            return self._like(())
        return self._like([v * c for v in self.coeffs])

    def mul_trunc(self, other: "UniPoly", n: int) -> "UniPoly":
        """(self * other) mod x^n."""
        a, b = self.coeffs[:n], other.coeffs[:n]
        return self._like(_mul_lists(a, b, self.field.p)[:n])

    def shift(self, k: int) -> "UniPoly":
        """Multiply by x^k."""
        if self.is_zero:
            return self
        return self._like((0,) * k + self.coeffs)

    def truncate(self, n: int) -> "UniPoly":
        return self._like(self.coeffs[:n])

    def __divmod__(self, other):
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        p = self.field.p
        rem = list(self.coeffs)
        dn = len(other.coeffs) - 1
        lead_inv = pow(other.coeffs[-1], p - 2, p)
        quo = [0] * max(len(rem) - dn, 0)
        for i in range(len(rem) - 1, dn - 1, -1):
            c = rem[i] % p
            if c:
                c = c * lead_inv % p
                quo[i - dn] = c
                for j, bc in enumerate(other.coeffs):
                    rem[i - dn + j] = (rem[i - dn + j] - c * bc) % p
        return self._like(quo), self._like(rem[:dn])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e: int):
        out = self.field.one_poly()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __call__(self, x: int) -> int:
        p = self.field.p
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % p
        return acc

    def monic(self) -> "UniPoly":
        if self.is_zero:
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    # calculus ----------------------------------------------------------------

    def derivative(self) -> "UniPoly":
        return self._like([(i + 1) * c for i, c in enumerate(self.coeffs[1:])])

    def hasse(self, r: int) -> "UniPoly":
        """r-th Hasse derivative: x^n maps to C(n, r) x^(n-r)."""
        if r < 0:
            raise InvalidParam("Hasse derivative order must be nonnegative")
        if r == 0:
            return self
        p = self.field.p
        return self._like(
            [binom_mod(n, r, p) * c for n, c in enumerate(self.coeffs)][r:]
        )


def hasse_derivative(f: UniPoly, r: int) -> UniPoly:
    return f.hasse(r)


def series_mul_trunc(f: UniPoly, g: UniPoly, n: int) -> UniPoly:
    return f.mul_trunc(g, n)


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd; gcd(f, 0) is the monic multiple of f."""
    if f.is_zero and g.is_zero:
        raise BothZero("gcd(0, 0) is undefined")
    a, b = f, g
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def _pth_root(f: UniPoly) -> UniPoly:
    # valid when f' = 0, i.e. nonzero coefficients sit at multiples of p;
    # over F_p the coefficient-wise p-th root is the identity (Fermat)
    p = f.field.p
    return UniPoly(f.field, f.coeffs[::p])


def squarefree_part(f: UniPoly) -> UniPoly:
    """Monic product of the distinct irreducible factors of f.

    Handles characteristic p fully: factors whose multiplicity is divisible
    by p hide inside gcd(f, f') and are recovered through p-th roots.
    """
    if f.is_zero:
        raise ZeroInput("squarefree part of 0 is undefined")
    f = f.monic()
    if f.degree == 0:
        return f.field.one_poly()
    d = f.derivative()
    if d.is_zero:
        return squarefree_part(_pth_root(f))
    g = poly_gcd(f, d)
    w = (f // g).monic()  # factors with multiplicity not divisible by p
    c = g
    while True:
        h = poly_gcd(c, w)
        if h.degree == 0:
            break
        c = c // h
    if c.degree == 0:
        return w
    return (w * squarefree_part(_pth_root(c.monic()))).monic()


def uni_pow_mod(base: UniPoly, e: int, mod: UniPoly) -> UniPoly:
    out = base.field.one_poly() % mod
    base = base % mod
    while e:
        if e & 1:
            out = (out * base) % mod
        base = (base * base) % mod
        e >>= 1
    return out


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def uni_is_irreducible(f: UniPoly) -> bool:
    """Irreducibility over F_p via Frobenius powers of x modulo f."""
    d = f.degree
    if d is NEG_INF or d == 0:
        return False
    if d == 1:
        return True
    field = f.field
    f = f.monic()
    x = field.x_poly()
    # x^(p^d) must reduce to x ...
    xp = x
    frob = [x]
    for _ in range(d):
        xp = uni_pow_mod(xp, field.p, f)
        frob.append(xp)
    if frob[d] != x % f:
        return False
    # ... and x^(p^(d/t)) - x must be coprime to f for every prime t | d
    for t in _prime_divisors(d):
        g = poly_gcd(frob[d // t] - x, f)
        if g.degree != 0:
            return False
    return True


class Sequence:
    """A finite prefix (s_0, ..., s_{N-1}) of a sequence over F_p."""

    __slots__ = ("field", "terms")

    def __init__(self, field: PrimeField, values):
        terms = tuple(v % field.p for v in values)
        if not terms:
            raise InvalidParam("sequence prefix must have length >= 1")
        self.field = field
        self.terms = terms

    @classmethod
    def over(cls, p: int, values) -> "Sequence":
        return cls(PrimeField(p), values)

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, i):
        return self.terms[i]

    def __iter__(self):
        return iter(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, Sequence)
            and other.field.p == self.field.p
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((self.field.p, self.terms))

    def __repr__(self):
        head = ",".join(map(str, self.terms[:12]))
        tail = ",..." if len(self.terms) > 12 else ""
        return f"Sequence(p={self.field.p}, [{head}{tail}])"

    def prefix(self, n: int) -> "Sequence":
        return Sequence(self.field, self.terms[:n])

    def is_zero_prefix(self, n=None) -> bool:
        n = len(self.terms) if n is None else n
        return not any(itertools.islice(self.terms, n))

    def generating_poly(self, n=None) -> UniPoly:
        """Generating polynomial of the first n terms (all by default)."""
        n = len(self.terms) if n is None else n
        return UniPoly(self.field, self.terms[:n])


def generating_polynomial(s: Sequence, n=None) -> UniPoly:
    return s.generating_poly(n)
