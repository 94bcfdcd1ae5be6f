"""Exact Groebner-basis verification of the two-variable quadric family.

For n = 2 the spanning quadrics live in the d+1 variables
u_{d,0}, u_{d-1,1}, ..., u_{0,d}.  Under the weighted term order that
gives u_{i,(d-i)} weight i (ties broken lexicographically with u_{d,0}
largest) the family is claimed to be a Groebner basis whose initial terms
are squarefree, and whose standard monomials certify that the cut-out
variety has dimension 3.  This module checks all three claims exactly
over the rationals: no floating point is involved anywhere.

Monomials are exponent tuples of length d+1; position j corresponds to
the variable u_{(d-j), j}, so plain tuple comparison is the lexicographic
tie-break.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "TermOrder2",
    "BinPoly",
    "GroebnerReport",
    "DimensionCertificate",
    "generators_n2",
    "compare",
    "s_polynomial",
    "reduce_poly",
    "buchberger_verify",
    "squarefree_initial_check",
    "dimension_certificate",
    "report_to_dict",
]

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class TermOrder2:
    """Weighted order (variable u_{i,(d-i)} has weight i) refined by lex."""

    d: int

    def weight(self, mono: Monomial) -> int:
        return sum(e * (self.d - j) for j, e in enumerate(mono))

    def key(self, mono: Monomial):
        return (self.weight(mono), mono)


def compare(m1: Monomial, m2: Monomial, order: TermOrder2) -> int:
    """-1, 0 or +1 as m1 precedes, equals or dominates m2 under the order."""
    k1, k2 = order.key(m1), order.key(m2)
    return (k1 > k2) - (k1 < k2)


def _var(d: int, first_exp: int) -> Monomial:
    """Exponent tuple of the single variable u_{i,(d-i)} for i = first_exp."""
    mono = [0] * (d + 1)
    mono[d - first_exp] = 1
    return tuple(mono)


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple(a + b for a, b in zip(m1, m2))


def _mono_divides(m1: Monomial, m2: Monomial) -> bool:
    return all(a <= b for a, b in zip(m1, m2))


def _mono_div(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple(a - b for a, b in zip(m1, m2))


def _mono_lcm(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple(max(a, b) for a, b in zip(m1, m2))


def _var_name(d: int, pos: int) -> str:
    i = d - pos
    if d <= 9:
        return "u%d%d" % (i, d - i)
    return "u[%d,%d]" % (i, d - i)


class BinPoly:
    """Polynomial with exact rational coefficients over the d+1 u-variables."""

    __slots__ = ("d", "terms")

    def __init__(self, d: int, terms: dict[Monomial, Fraction] | None = None):
        self.d = d
        self.terms: dict[Monomial, Fraction] = {
            m: c for m, c in (terms or {}).items() if c
        }

    def is_zero(self) -> bool:
        return not self.terms

    def leading(self, order: TermOrder2) -> tuple[Monomial, Fraction]:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        mono = max(self.terms, key=order.key)
        return mono, self.terms[mono]

    def sorted_terms(self, order: TermOrder2) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def sub_scaled(self, coeff: Fraction, shift: Monomial, other: "BinPoly") -> "BinPoly":
        """self - coeff * x^shift * other."""
        out = dict(self.terms)
        for m, c in other.terms.items():
            key = _mono_mul(m, shift)
            val = out.get(key, Fraction(0)) - coeff * c
            if val:
                out[key] = val
            else:
                out.pop(key, None)
        return BinPoly(self.d, out)

    def __eq__(self, other):
        return isinstance(other, BinPoly) and self.d == other.d and self.terms == other.terms

    def __hash__(self):
        return hash((self.d, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        order = TermOrder2(self.d)
        parts = []
        for mono, coeff in self.sorted_terms(order):
            body = "*".join(
                _var_name(self.d, p) + ("^%d" % e if e > 1 else "")
                for p, e in enumerate(mono)
                if e
            ) or "1"
            sign = "-" if coeff < 0 else ("+" if parts else "")
            mag = abs(coeff)
            parts.append(("%s " % sign if sign else "") + ("" if mag == 1 else "%s*" % mag) + body)
        return " ".join(parts).strip()


def generators_n2(d: int) -> list[BinPoly]:
    """The spanning quadrics for n = 2, as polynomials in the u-variables.

    One candidate per pair (a, b) with 0 <= a <= d-2 and 1 <= b <= d-1:

        u[a+1] u[b+1] - u[a+2] u[b] + u[a] u[b] - u[a+1] u[b-1],

    writing u[i] for u_{i,(d-i)}.  Choices with b = a+1 cancel to zero and
    are dropped; the (a, b) and (b-1, a+1) choices produce the same
    polynomial up to sign, so generators are sign-normalized (leading
    coefficient +1) and deduplicated.  Empty for d = 2.
    """
    if d < 2:
        raise ValueError("need d >= 2")
    order = TermOrder2(d)
    out: list[BinPoly] = []
    seen = set()
    for a in range(d - 1):
        for b in range(1, d):
            acc: dict[Monomial, Fraction] = {}
            for sign, i1, i2 in (
                (1, a + 1, b + 1),
                (-1, a + 2, b),
                (1, a, b),
                (-1, a + 1, b - 1),
            ):
                mono = _mono_mul(_var(d, i1), _var(d, i2))
                val = acc.get(mono, Fraction(0)) + sign
                if val:
                    acc[mono] = val
                else:
                    acc.pop(mono, None)
            poly = BinPoly(d, acc)
            if poly.is_zero():
                continue
            if poly.leading(order)[1] < 0:
                poly = BinPoly(d, {m: -c for m, c in poly.terms.items()})
            key = frozenset(poly.terms.items())
            if key not in seen:
                seen.add(key)
                out.append(poly)
    return out


def reduce_poly(p: BinPoly, basis: list[BinPoly], order: TermOrder2) -> BinPoly:
    """Normal form of ``p`` modulo ``basis`` (first divisor in list order).

    No term of the result is divisible by any leading term of the basis;
    the routine is deterministic for a fixed basis ordering.
    """
    leads = [g.leading(order) for g in basis]
    remainder: dict[Monomial, Fraction] = {}
    work = BinPoly(p.d, dict(p.terms))
    while not work.is_zero():
        mono, coeff = work.leading(order)
        for g, (gm, gc) in zip(basis, leads):
            if _mono_divides(gm, mono):
                work = work.sub_scaled(coeff / gc, _mono_div(mono, gm), g)
                break
        else:
            remainder[mono] = coeff
            del work.terms[mono]
    return BinPoly(p.d, remainder)


def s_polynomial(f: BinPoly, g: BinPoly, order: TermOrder2) -> BinPoly:
    fm, fc = f.leading(order)
    gm, gc = g.leading(order)
    lcm = _mono_lcm(fm, gm)
    zero = BinPoly(f.d)
    return zero.sub_scaled(Fraction(-1) / fc, _mono_div(lcm, fm), f).sub_scaled(
        Fraction(1) / gc, _mono_div(lcm, gm), g
    )


@dataclass
class GroebnerReport:
    d: int
    generator_count: int
    spairs_total: int
    spairs_skipped: int
    is_groebner: bool


def buchberger_verify(
    d: int, use_chain_criterion: bool = False, d_cap: int = 16
) -> GroebnerReport:
    """Check that the n = 2 generators form a Groebner basis, exactly.

    Forms every S-pair, skipping (and counting) pairs with coprime leading
    terms, optionally also pairs eliminated by the chain criterion, and
    reduces the rest to normal form.  ``is_groebner`` is True iff every
    reduction ends at zero.  Pairs are processed in ascending term order
    of their lcm so reports are deterministic.

    The generator count grows quadratically with ``d``; ``d_cap`` keeps
    accidental huge runs out (raise it explicitly for bigger checks).
    """
    if d > d_cap:
        raise ValueError("d=%d exceeds the verification cap %d" % (d, d_cap))
    order = TermOrder2(d)
    basis = generators_n2(d)
    leads = [g.leading(order)[0] for g in basis]

    pairs = []
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            lcm = _mono_lcm(leads[i], leads[j])
            pairs.append((order.key(lcm), i, j, lcm))
    pairs.sort()

    done: set[tuple[int, int]] = set()
    skipped = 0
    ok = True
    for _, i, j, lcm in pairs:
        if lcm == _mono_mul(leads[i], leads[j]):
            skipped += 1  # coprime leading terms: S-pair reduces to zero
            done.add((i, j))
            continue
        if use_chain_criterion and any(
            k != i
            and k != j
            and _mono_divides(leads[k], lcm)
            and tuple(sorted((i, k))) in done
            and tuple(sorted((j, k))) in done
            for k in range(len(basis))
        ):
            skipped += 1
            done.add((i, j))
            continue
        if not reduce_poly(s_polynomial(basis[i], basis[j], order), basis, order).is_zero():
            ok = False
        done.add((i, j))
    return GroebnerReport(d, len(basis), len(pairs), skipped, ok)


def squarefree_initial_check(d: int) -> bool:
    """True iff every generator's leading monomial has all exponents <= 1."""
    if d < 3:
        raise ValueError("need d >= 3 (no nonzero generators below)")
    order = TermOrder2(d)
    return all(max(g.leading(order)[0]) <= 1 for g in generators_n2(d))


@dataclass
class DimensionCertificate:
    four_subsets_hit: bool
    three_subset_free: bool


def dimension_certificate(d: int) -> DimensionCertificate:
    """Standard-monomial certificate that the cut-out variety has dimension 3.

    ``four_subsets_hit``: every 4-subset of the variables supports some
    leading term, so no 4 variables are simultaneously free (dimension
    at most 3).  ``three_subset_free``: no leading term is supported
    inside {u_{2,(d-2)}, u_{1,(d-1)}, u_{0,d}}, so those 3 variables are
    free (dimension at least 3).  For d = 3 only 4 variables exist and the
    single 4-subset is checked.
    """
    if d < 3:
        raise ValueError("need d >= 3")
    order = TermOrder2(d)
    supports = [
        frozenset(p for p, e in enumerate(g.leading(order)[0]) if e)
        for g in generators_n2(d)
    ]
    hit = all(
        any(sup <= set(subset) for sup in supports)
        for subset in itertools.combinations(range(d + 1), min(4, d + 1))
    )
    free_vars = {d - 2, d - 1, d}  # positions of u_{2,(d-2)}, u_{1,(d-1)}, u_{0,d}
    free = not any(sup <= free_vars for sup in supports)
    return DimensionCertificate(hit, free)


def report_to_dict(d: int, use_chain_criterion: bool = False, d_cap: int = 16) -> dict:
    """Combined JSON-ready verification report for one degree."""
    rep = buchberger_verify(d, use_chain_criterion, d_cap)
    cert = dimension_certificate(d)
    return {
        "d": d,
        "generator_count": rep.generator_count,
        "spairs_total": rep.spairs_total,
        "spairs_skipped": rep.spairs_skipped,
        "is_groebner": rep.is_groebner,
        "squarefree": squarefree_initial_check(d),
        "dim_certificate": {
            "four_subsets_hit": cert.four_subsets_hit,
            "three_subset_free": cert.three_subset_free,
        },
    }
