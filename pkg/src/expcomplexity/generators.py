"""Benchmark sequence families and their differential-operator identities.

Families: the explicit inversive generator s_n = (a n - b)^{-1} (0 at the
undefined index), binomial-coefficient sequences C(n+k, k) mod p, the
counter-dependent recurrence s_n = n s_{n-1} + 1, linear-feedback
recurrences, and a counter-based deterministic uniform generator.

The differential side: operators T(G) = f_{k+1} D^(k)(G) + ... + f_1 G + f_0
built from Hasse derivatives, residual verification of T(G) mod x^M, the
gcd-based singularity check that licenses the quadratic expansion bound
E (E + F) >= N, and the linear-complexity floor (N - F + 2)/(k + 4).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .complexity import ProfileCheck, expansion_complexity_gb
from .errors import InvalidParam, PrefixTooShort
from .field import NEG_INF, PrimeField, Sequence, UniPoly, poly_gcd, squarefree_part

__all__ = [
    "DiffOperator",
    "GeneratorSpec",
    "generate",
    "gen_inversive",
    "gen_binomial",
    "gen_sw",
    "gen_lfsr",
    "gen_random",
    "apply_diff_operator",
    "inversive_ode",
    "inversive_window_ops",
    "binomial_ode",
    "sw_ode",
    "check_ode_singularity",
    "min_expansion_from_ode",
    "linear_complexity_floor",
    "expansion_check_from_ode",
    "linear_floor_check",
    "inversive_bound_report",
    "InversiveBoundReport",
]


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------


def gen_inversive(p: int, a: int, b: int, length: int) -> Sequence:
    """s_n = (a n - b)^{-1} mod p, and 0 at the unique n with a n = b."""
    field = PrimeField(p)
    if p == 2:
        raise InvalidParam("inversive generator needs p >= 3")
    a, b = a % p, b % p
    if a == 0:
        raise InvalidParam("inversive parameter a must be nonzero")
    if length < 1:
        raise InvalidParam("length must be >= 1")
    out = []
    for n in range(length):
        v = (a * n - b) % p
        out.append(field.inv(v) if v else 0)
    return Sequence(field, out)


def gen_binomial(p: int, k: int, length: int) -> Sequence:
    """s_n = C(n + k, k) mod p, computed digit-by-digit in base p."""
    field = PrimeField(p)
    if k < 0:
        raise InvalidParam("binomial parameter k must be >= 0")
    return Sequence(field, [field.binom(n + k, k) for n in range(length)])


def gen_sw(p: int, s0: int, length: int) -> Sequence:
    """Counter-dependent recurrence s_0 given, s_n = n s_{n-1} + 1."""
    field = PrimeField(p)
    if length < 1:
        raise InvalidParam("length must be >= 1")
    out = [s0 % p]
    for n in range(1, length):
        out.append((n * out[-1] + 1) % p)
    return Sequence(field, out)


def gen_lfsr(p: int, taps, init, length: int) -> Sequence:
    """s_{n+m} = taps[m-1] s_{n+m-1} + ... + taps[0] s_n from the given fill."""
    field = PrimeField(p)
    taps = [t % p for t in taps]
    init = [v % p for v in init]
    if not taps or len(init) != len(taps):
        raise InvalidParam("need len(init) == len(taps) >= 1")
    if length < 1:
        raise InvalidParam("length must be >= 1")
    m = len(taps)
    out = list(init[:length])
    while len(out) < length:
        n = len(out)
        out.append(sum(taps[j] * out[n - m + j] for j in range(m)) % p)
    return Sequence(field, out)


def gen_random(p: int, length: int, seed: int) -> Sequence:
    """Uniform elements of F_p from a counter-based hash stream with
    rejection sampling; fully determined by (seed, p, length)."""
    field = PrimeField(p)
    if length < 1:
        raise InvalidParam("length must be >= 1")
    lim = (1 << 64) // p * p
    out = []
    counter = 0
    while len(out) < length:
        block = hashlib.sha256(f"{seed}:{p}:{counter}".encode()).digest()
        counter += 1
        for i in range(0, 32, 8):
            v = int.from_bytes(block[i : i + 8], "big")
            if v < lim:
                out.append(v % p)
                if len(out) == length:
                    break
    return Sequence(field, out)


@dataclass(frozen=True)
class GeneratorSpec:
    """CLI-addressable description of one generator invocation."""

    kind: str
    p: int
    length: int
    a: int | None = None
    b: int | None = None
    k: int | None = None
    s0: int | None = None
    taps: tuple | None = None
    init: tuple | None = None
    seed: int | None = None


def generate(spec: GeneratorSpec) -> Sequence:
    if spec.kind == "inversive":
        return gen_inversive(spec.p, spec.a, spec.b, spec.length)
    if spec.kind == "binomial":
        return gen_binomial(spec.p, spec.k, spec.length)
    if spec.kind == "sw":
        return gen_sw(spec.p, spec.s0, spec.length)
    if spec.kind == "lfsr":
        return gen_lfsr(spec.p, spec.taps, spec.init, spec.length)
    if spec.kind == "random":
        return gen_random(spec.p, spec.length, spec.seed)
    raise InvalidParam(f"unknown generator kind {spec.kind!r}")


# ---------------------------------------------------------------------------
# differential operators
# ---------------------------------------------------------------------------


class DiffOperator:
    """T(G) = f_{k+1} D^(k)(G) + ... + f_2 D^(1)(G) + f_1 G + f_0 with the
    coefficients stored ascending (f_0, f_1, ..., f_{k+1})."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: PrimeField, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) < 2:
            raise InvalidParam("need at least (f0, f1)")
        if all(c.is_zero for c in coeffs):
            raise InvalidParam("all operator coefficients are zero")
        self.field = field
        self.coeffs = coeffs

    @property
    def order(self) -> int:
        """Highest Hasse-derivative order k."""
        return len(self.coeffs) - 2

    def degree_max(self) -> int:
        """max deg f_i: the F entering the linear-complexity floor."""
        return int(max(c.degree for c in self.coeffs if not c.is_zero))

    def residual(self, seq: Sequence, m: int) -> UniPoly:
        """T(G) mod x^m with G built from the whole available prefix.

        Using every known term keeps truncation noise out of the top
        residual coefficients; supply len(seq) >= m + k when the lowest
        f_{i>=1} valuation is 0 to make a zero residual conclusive.
        """
        if m < 1 or m > len(seq):
            raise PrefixTooShort(f"need 1 <= M <= {len(seq)}, got M={m}")
        g = seq.generating_poly()
        acc = self.coeffs[0].truncate(m)
        for order in range(self.order + 1):
            acc = acc + self.coeffs[order + 1].mul_trunc(g.hasse(order), m)
        return acc.truncate(m)

    def __repr__(self):
        inner = ", ".join(str(c) for c in self.coeffs)
        return f"DiffOperator(p={self.field.p}, [{inner}])"


def apply_diff_operator(op: DiffOperator, seq: Sequence, m: int) -> UniPoly:
    return op.residual(seq, m)


def inversive_ode(p: int, a: int, b: int) -> DiffOperator:
    """a x (1-x)^p G' - b (1-x)^p G - (1-x)^{p-1} + x^e = 0 for the inversive
    sequence, with e = b/a mod p taken in [0, p-1]."""
    field = PrimeField(p)
    a, b = a % p, b % p
    if p == 2 or a == 0:
        raise InvalidParam("need p >= 3 and a != 0")
    e = b * field.inv(a) % p
    # char p shortcuts: (1-x)^p = 1 - x^p, (1-x)^{p-1} = 1 + x + ... + x^{p-1}
    one_minus_x_p = field.poly([1] + [0] * (p - 1) + [-1])
    geometric = field.poly([1] * p)
    f2 = one_minus_x_p.shift(1).scale(a)
    f1 = one_minus_x_p.scale(-b)
    f0 = -geometric + field.x_poly(e)
    return DiffOperator(field, (f0, f1, f2))


def inversive_window_ops(p: int, a: int, b: int):
    """The two truncated first-order identities behind the quadratic
    expansion bounds, as ((operator, window M), ...):

    * a x (1-x) G' - b (1-x) G - 1            vanishes mod x^e,
    * a x (1-x) G' - b (1-x) G - 1 + x^e(1-x) vanishes mod x^p,

    where e = b/a mod p.  Requires b != 0 (so e >= 1)."""
    field = PrimeField(p)
    a, b = a % p, b % p
    if p == 2 or a == 0:
        raise InvalidParam("need p >= 3 and a != 0")
    if b == 0:
        raise InvalidParam("window identities need b != 0")
    e = b * field.inv(a) % p
    f2 = field.poly([0, 1, -1]).scale(a)  # a x (1 - x)
    f1 = field.poly([1, -1]).scale(-b)
    f0_head = field.poly([-1])
    f0_tail = field.poly([-1]) + field.x_poly(e) - field.x_poly(e + 1)
    return (
        (DiffOperator(field, (f0_head, f1, f2)), e),
        (DiffOperator(field, (f0_tail, f1, f2)), p),
    )


def binomial_ode(p: int, k: int) -> DiffOperator:
    """(x - 1) G' + (k + 1) G = 0 for the binomial-coefficient sequence.

    Equivalent to (1 - x) G' = (k + 1) G, the identity differentiating
    G = (1 - x)^(-1-k) yields directly.
    """
    field = PrimeField(p)
    if k < 0:
        raise InvalidParam("binomial parameter k must be >= 0")
    return DiffOperator(
        field,
        (field.zero_poly(), field.poly([k + 1]), field.poly([-1, 1])),
    )


def sw_ode(p: int, s0: int) -> DiffOperator:
    """x^2 (1-x) G' - (1-x)^2 G - (s0 - 1) x + s0 = 0 for s_n = n s_{n-1}+1."""
    field = PrimeField(p)
    return DiffOperator(
        field,
        (
            field.poly([s0, -(s0 - 1)]),
            field.poly([-1, 2, -1]),
            field.poly([0, 0, 1, -1]),
        ),
    )


# ---------------------------------------------------------------------------
# bound machinery
# ---------------------------------------------------------------------------


def check_ode_singularity(f0: UniPoly, f1: UniPoly, f2: UniPoly):
    """(ok, F) for a first-order operator f2 G' + f1 G + f0.

    ok is True iff some alpha in the algebraic closure has f2(alpha) =
    f1(alpha) = 0 while f2'(alpha) f0(alpha) != 0, decided purely by gcds:
    alpha ranges over the roots of the squarefree part of gcd(f1, f2), and
    a qualifying root exists iff stripping the roots of f2'*f0 leaves
    positive degree.  F = max(deg f2 - 1, deg f1, deg f0 - 1).
    """
    if f2.is_zero:
        raise InvalidParam("f2 must be nonzero")
    fdeg = max(f2.degree - 1, f1.degree, f0.degree - 1)
    fdeg = -1 if fdeg is NEG_INF else int(fdeg)
    g = poly_gcd(f1, f2)
    if g.degree == 0:
        return False, fdeg
    h = squarefree_part(g)
    w = f2.derivative() * f0
    stripped = h // poly_gcd(h, w)
    return stripped.degree >= 1, fdeg


def min_expansion_from_ode(n: int, offset: int, p: int) -> int:
    """Least E with E (E + offset) >= n or E >= p."""
    if n < 1 or offset < 0:
        raise InvalidParam("need n >= 1 and offset >= 0")
    e = 1
    while e * (e + offset) < n and e < p:
        e += 1
    return e


def linear_complexity_floor(n: int, coeff_degree_max: int, order: int) -> int:
    """ceil((n - F + 2) / (k + 4)) clamped at 0."""
    if order < 0:
        raise InvalidParam("order must be >= 0")
    v = n - coeff_degree_max + 2
    return -(-v // (order + 4)) if v > 0 else 0


def expansion_check_from_ode(op: DiffOperator, window: int, name: str = "ode_E_bound"):
    """ProfileCheck asserting E_N >= the quadratic bound inside the window
    deg f0 + 1 < N <= window; None when the singularity test fails."""
    if op.order != 1:
        raise InvalidParam("expansion bound applies to first-order operators")
    f0, f1, f2 = op.coeffs
    ok, offset = check_ode_singularity(f0, f1, f2)
    if not ok:
        return None
    p = op.field.p
    floor_n = int(f0.degree) + 1  # f0 != 0 whenever ok

    def fn(n, e, l):
        if not floor_n < n <= window:
            return None
        return e >= min_expansion_from_ode(n, offset, p)

    return ProfileCheck(name, fn)


def linear_floor_check(op: DiffOperator, window: int, name: str = "ode_L_bound"):
    """ProfileCheck asserting L_N >= (N - F + 2)/(k + 4) for N <= window."""
    fmax = op.degree_max()
    k = op.order

    def fn(n, e, l):
        if n > window:
            return None
        return l >= linear_complexity_floor(n, fmax, k)

    return ProfileCheck(name, fn)


@dataclass(frozen=True)
class InversiveBoundReport:
    p: int
    a: int
    b: int
    shift: int  # e = b/a mod p
    expansion: tuple  # E_N for N = 2..nmax
    head_failures: tuple  # N in [2, b] with E(E+1) < N
    tail_failures: tuple  # N in [b+3, p-1] with E(E+b) < N and E < p
    min_quartic_ratio: float  # min E_N / N^(1/4)
    ok: bool


def inversive_bound_report(p: int, a: int, b: int, nmax: int | None = None) -> InversiveBoundReport:
    """Measure E_N of the inversive sequence and check the exact quadratic
    consequences E(E+1) >= N on 2 <= N <= b and E(E+b) >= N on
    b+3 <= N <= p-1; also report the empirical fourth-root growth ratio
    (the absolute constant in that bound is not asserted)."""
    field = PrimeField(p)
    a, b = a % p, b % p
    if p == 2 or a == 0:
        raise InvalidParam("need p >= 3 and a != 0")
    nmax = p - 1 if nmax is None else nmax
    if nmax < 2:
        raise InvalidParam("need nmax >= 2")
    seq = gen_inversive(p, a, b, nmax)
    evals = {n: expansion_complexity_gb(seq, n).value for n in range(2, nmax + 1)}
    head = tuple(
        n for n in range(2, min(b, nmax) + 1) if evals[n] * (evals[n] + 1) < n
    )
    tail = tuple(
        n
        for n in range(b + 3, min(p - 1, nmax) + 1)
        if evals[n] < p and evals[n] * (evals[n] + b) < n
    )
    ratio = min(evals[n] / n**0.25 for n in evals)
    return InversiveBoundReport(
        p,
        a,
        b,
        b * field.inv(a) % p,
        tuple(evals[n] for n in sorted(evals)),
        head,
        tail,
        ratio,
        not head and not tail,
    )
