"""Complexity measures of sequence prefixes.

Expansion complexity E_N by two independent routes: the minimum leading
degree over a reduced grlex Groebner basis of <y - G_N, x^N>, and a kernel
search over the linear evaluation maps h -> h(x, G_N(x)) mod x^N per total
degree d (dimension C(d+2, 2)).  Both return a normalized witness that
vanishes mod x^N.

i-expansion complexity E*_N is bracketed from the basis leading degrees and,
budget permitting, pinned exactly by exhaustively scanning normalized kernel
representatives for an irreducible element.

Linear complexity L_N comes from Berlekamp-Massey over F_p, with a one-pass
profile variant.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from math import comb

import numpy as np

from .bipoly import DEFAULT_BUDGET, BiPoly, find_proper_factor, grlex_key, is_irreducible
from .errors import BudgetExceeded, PrefixTooShort, ZeroPrefix
from .field import Sequence, UniPoly
from .groebner import defining_ideal_basis
from .modlinalg import nullspace_mod

__all__ = [
    "ComplexityResult",
    "IExpansionBounds",
    "ProfileCheck",
    "ProfileRow",
    "expansion_complexity_gb",
    "expansion_complexity_kernel",
    "dimension_upper_bound",
    "i_expansion_bounds",
    "i_expansion_exact",
    "berlekamp_massey",
    "linear_complexity_profile",
    "complexity_profile",
    "cross_measure_check",
]


@dataclass(frozen=True)
class ComplexityResult:
    """E_N plus a vanishing witness of that total degree (none when E_N=0)."""

    N: int
    value: int
    witness: BiPoly | None
    method: str
    engine: str | None = None


@dataclass(frozen=True)
class IExpansionBounds:
    """Bracket for E*_N from basis leading degrees; exact value if affordable."""

    lower: int
    upper: int
    upper_irred: int | None
    exact: int | None


def _check_window(seq, n):
    if not 1 <= n <= len(seq):
        raise PrefixTooShort(f"need 1 <= N <= {len(seq)}, got N={n}")


# ---------------------------------------------------------------------------
# expansion complexity
# ---------------------------------------------------------------------------


def expansion_complexity_gb(seq: Sequence, n: int, engine: str = "fglm") -> ComplexityResult:
    """E_N as the minimal |LE| over the reduced basis; witness is a basis
    element attaining the minimum (grlex-smallest leading exponent on ties)."""
    _check_window(seq, n)
    if seq.is_zero_prefix(n):
        return ComplexityResult(n, 0, None, "groebner", engine)
    basis = defining_ideal_basis(seq, n, engine)
    best = min(basis.elements, key=lambda e: grlex_key(e.lead_exponent))
    return ComplexityResult(n, best.total_degree, best.normalized(), "groebner", engine)


def _monomials_upto(d):
    # ascending grlex
    return [(t - b, b) for t in range(d + 1) for b in range(t + 1)]


def _nf_columns(seq, n, d):
    """Matrix of normal forms: column j = x^a G^b mod x^n for monomial j."""
    p = seq.field.p
    g = np.zeros(n, dtype=np.int64)
    g[: min(n, len(seq))] = seq.terms[:n]
    powers = [np.zeros(n, dtype=np.int64)]
    powers[0][0] = 1
    for _ in range(d):
        powers.append(np.convolve(powers[-1], g)[:n] % p)
    mons = _monomials_upto(d)
    cols = np.zeros((n, len(mons)), dtype=np.int64)
    for j, (a, b) in enumerate(mons):
        if a < n:
            cols[a:, j] = powers[b][: n - a]
    return cols, mons


def _vector_to_bipoly(field, vec, mons) -> BiPoly:
    return BiPoly(field, {m: int(c) for m, c in zip(mons, vec) if c})


def expansion_complexity_kernel(seq: Sequence, n: int) -> ComplexityResult:
    """Independent oracle: least d whose degree-<=d evaluation map has a
    nontrivial kernel; witness from the first free column, made monic."""
    _check_window(seq, n)
    if seq.is_zero_prefix(n):
        return ComplexityResult(n, 0, None, "kernel")
    p = seq.field.p
    for d in range(1, dimension_upper_bound(n) + 1):
        cols, mons = _nf_columns(seq, n, d)
        basis = nullspace_mod(cols, p)
        if basis:
            witness = _vector_to_bipoly(seq.field, basis[0], mons)
            return ComplexityResult(n, d, witness.normalized(), "kernel")
    raise AssertionError("dimension count guarantees a kernel")  # pragma: no cover


def dimension_upper_bound(n: int) -> int:
    """Least d with (d+1)(d+2)/2 > n; E_N never exceeds it."""
    d = 1
    while (d + 1) * (d + 2) // 2 <= n:
        d += 1
    return d


# ---------------------------------------------------------------------------
# i-expansion complexity
# ---------------------------------------------------------------------------


def _basis_istar_data(seq, n, budget):
    basis = defining_ideal_basis(seq, n, "fglm")
    lead_degs = basis.lead_degrees()
    irred_degs = []
    for e in basis.elements:
        try:
            if is_irreducible(e, budget):
                irred_degs.append(e.total_degree)
        except BudgetExceeded:
            continue  # that element stays unclassified
    upper_irred = min(irred_degs) if irred_degs else None
    return basis, min(lead_degs), max(lead_degs), upper_irred


def i_expansion_bounds(seq: Sequence, n: int, budget: int = DEFAULT_BUDGET) -> IExpansionBounds:
    """E*_N bracket [min |LE|, max |LE|], tightened by irreducible basis
    elements; `exact` is filled only when the exhaustive search fits the
    budget."""
    _check_window(seq, n)
    if seq.is_zero_prefix(n):
        raise ZeroPrefix("i-expansion bounds need a nonzero prefix")
    _, lower, upper, upper_irred = _basis_istar_data(seq, n, budget)
    try:
        exact = i_expansion_exact(seq, n, budget)
    except BudgetExceeded:
        exact = None
    return IExpansionBounds(lower, upper, upper_irred, exact)


def _kernel_combinations(null_basis, p, chunk=4096):
    """All nonzero kernel vectors, one per scalar class: first nonzero
    combination coordinate fixed to 1; yielded as (chunk, dim) blocks."""
    dim = len(null_basis)
    mat = np.array(null_basis, dtype=np.int64)
    for leadidx in range(dim):
        free = dim - leadidx - 1
        block = []
        for tail in itertools.product(range(p), repeat=free):
            coeffs = np.zeros(dim, dtype=np.int64)
            coeffs[leadidx] = 1
            if free:
                coeffs[leadidx + 1 :] = tail
            block.append(coeffs)
            if len(block) == chunk:
                yield np.array(block) @ mat % p
                block = []
        if block:
            yield np.array(block) @ mat % p


def i_expansion_exact(seq: Sequence, n: int, budget: int = DEFAULT_BUDGET) -> int:
    """Exact E*_N: scan degrees upward from E_N; at each degree exhaust the
    normalized kernel representatives for an irreducible element, short-
    circuiting once the degree of an irreducible basis element is reached."""
    _check_window(seq, n)
    if seq.is_zero_prefix(n):
        raise ZeroPrefix("i-expansion complexity needs a nonzero prefix")
    p = seq.field.p
    _, e_n, upper, upper_irred = _basis_istar_data(seq, n, budget)
    d = e_n
    while True:
        if upper_irred is not None and d == upper_irred:
            return d
        if d == 1:
            return 1  # any degree-1 vanishing polynomial is irreducible
        cols, mons = _nf_columns(seq, n, d)
        null = nullspace_mod(cols, p)
        if p ** len(null) > budget:
            raise BudgetExceeded(
                f"kernel at degree {d} has dimension {len(null)}: "
                f"p^dim exceeds budget {budget}"
            )
        deg_col = np.array([a + b for a, b in mons], dtype=np.int64)
        x_free = np.array([a == 0 for a, _ in mons])  # monomials with no x
        y_free = np.array([b == 0 for _, b in mons])
        for block in _kernel_combinations(null, p):
            nz = block != 0
            # exact degree d, and not divisible by x or y (cheap bulk rejects)
            interesting = (
                ((nz & (deg_col == d)[None, :]).any(axis=1))
                & (nz & x_free[None, :]).any(axis=1)
                & (nz & y_free[None, :]).any(axis=1)
            )
            for row in block[interesting]:
                h = _vector_to_bipoly(seq.field, row, mons)
                if is_irreducible(h, budget):
                    return d
        d += 1
        if d > max(upper, dimension_upper_bound(n)) + 2 and upper_irred is None:
            # no irreducible element surfaced where theory predicts one
            raise BudgetExceeded(
                f"no irreducible vanishing polynomial found up to degree {d - 1}"
            )


# ---------------------------------------------------------------------------
# linear complexity
# ---------------------------------------------------------------------------


def _massey(terms, p):
    """Berlekamp-Massey; yields L after each processed term and finally the
    feedback polynomial coefficients."""
    n_total = len(terms)
    c = [1] + [0] * n_total
    b = [1] + [0] * n_total
    length, m, bb = 0, 1, 1
    profile = []
    for n in range(n_total):
        d = 0
        for i in range(length + 1):
            d = (d + c[i] * terms[n - i]) % p
        if d == 0:
            m += 1
        elif 2 * length <= n:
            t = c.copy()
            coef = d * pow(bb, p - 2, p) % p
            for i in range(m, n_total + 1):
                c[i] = (c[i] - coef * b[i - m]) % p
            length, b, bb, m = n + 1 - length, t, d, 1
        else:
            coef = d * pow(bb, p - 2, p) % p
            for i in range(m, n_total + 1):
                c[i] = (c[i] - coef * b[i - m]) % p
            m += 1
        profile.append(length)
    return profile, length, c


def berlekamp_massey(seq: Sequence):
    """(L_N, recurrence coefficients (c_0, ..., c_{L-1})) such that
    s_{n+L} = c_{L-1} s_{n+L-1} + ... + c_0 s_n on the whole prefix."""
    p = seq.field.p
    _, length, c = _massey(seq.terms, p)
    # feedback polynomial satisfies s_n = -sum_{i>=1} c_i s_{n-i}
    coeffs = tuple(-c[length - j] % p for j in range(length))
    return length, coeffs


def linear_complexity_profile(seq: Sequence):
    """[L_1, ..., L_N] in one Berlekamp-Massey pass."""
    return _massey(seq.terms, seq.field.p)[0]


# ---------------------------------------------------------------------------
# profiles
# ---------------------------------------------------------------------------


class ProfileCheck:
    """Named per-row predicate; fn(N, E, L) -> True/False, or None when the
    row is outside the check's validity range."""

    __slots__ = ("name", "fn")

    def __init__(self, name, fn):
        self.name = name
        self.fn = fn


def cross_measure_check() -> ProfileCheck:
    """L_N >= min(E_N - 1, (N+3)/2), valid on every row."""

    def fn(n, e, l):
        return 2 * l >= min(2 * e - 2, n + 3)

    return ProfileCheck("cross_measure", fn)


@dataclass
class ProfileRow:
    N: int
    expansion: int
    linear: int
    istar: IExpansionBounds | None = None
    checks: dict = dc_field(default_factory=dict)


def complexity_profile(
    seq: Sequence,
    nmax: int,
    engine: str = "fglm",
    cross_check: bool = False,
    istar: str = "none",
    budget: int = DEFAULT_BUDGET,
    checks=(),
) -> list:
    """Rows for N = 1..nmax: E_N (selected engine, optionally cross-checked
    against the kernel oracle), L_N, optional E*_N data and named checks."""
    _check_window(seq, nmax)
    if istar not in ("none", "bounds", "exact"):
        raise ValueError(f"unknown istar mode {istar!r}")
    lprofile = linear_complexity_profile(seq)
    rows = []
    for n in range(1, nmax + 1):
        res = expansion_complexity_gb(seq, n, engine)
        if cross_check:
            other = expansion_complexity_kernel(seq, n)
            if other.value != res.value:
                raise AssertionError(
                    f"engine disagreement at N={n}: groebner={res.value} "
                    f"kernel={other.value}"
                )
        bounds = None
        if istar != "none" and not seq.is_zero_prefix(n):
            if istar == "bounds":
                _, lo, hi, hi_irred = _basis_istar_data(seq, n, budget)
                bounds = IExpansionBounds(lo, hi, hi_irred, None)
            else:
                bounds = i_expansion_bounds(seq, n, budget)
        row = ProfileRow(n, res.value, lprofile[n - 1], bounds)
        for check in checks:
            row.checks[check.name] = check.fn(n, row.expansion, row.linear)
        rows.append(row)
    return rows
