"""Two-bridge (rational) knots from continued fractions.

A term list [a1, a2, ..., am] encodes the continued fraction

    p/q = a1 + 1/(a2 + 1/(... + 1/am))

and hence the two-bridge knot or link b(p, q).  Term lists of even length
whose entries are all even, [2a1, 2b1, ..., 2am, 2bm], additionally encode a
genus-m Seifert surface obtained by plumbing m twisted annuli; from its
Seifert matrix we get the Alexander polynomial and, via resultants, the exact
order of the first homology of every finite cyclic branched cover.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from .intlinalg import det_bareiss, resultant


class Infinite:
    """Sentinel for an infinite group order."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"


INFINITE = Infinite()


def cf_value(terms: Sequence[int]) -> Fraction:
    """Evaluate a continued fraction [a1,...,am] to a reduced fraction.

    Works projectively (never divides), so zero partial quotients are fine
    anywhere except a fraction that collapses to 1/0 overall.
    """
    if not terms:
        raise ValueError("empty continued fraction")
    num, den = terms[-1], 1
    for a in reversed(terms[:-1]):
        # a + 1/(num/den) = (a*num + den)/num
        num, den = a * num + den, num
    if den == 0:
        raise ValueError(f"continued fraction {list(terms)} has value 1/0")
    return Fraction(num, den)


def mirror_terms(terms: Sequence[int]) -> List[int]:
    """Term list of the mirror-image knot: negate every entry."""
    return [-a for a in terms]


def _signed_q(fr: Fraction) -> Tuple[int, int]:
    """Normalize p/q to p > 0 by folding the sign into q; return (|p|, q mod |p|)."""
    p, q = fr.numerator, fr.denominator
    if p < 0:
        p, q = -p, -q
    return p, q % p if p > 1 else 0


def same_knot(f1: Fraction, f2: Fraction) -> bool:
    """Unoriented-equivalence test for two-bridge knots b(p, q).

    b(p, q) and b(p', q') are the same knot iff |p| = |p'| and
    q' is congruent to q or to q**-1 modulo p.  Mirror images (q vs -q)
    count as different knots unless amphichiral.
    """
    for f in (f1, f2):
        if f.numerator % 2 == 0:
            raise ValueError(f"numerator {f.numerator} is even: not a knot (two components)")
    p1, q1 = _signed_q(f1)
    p2, q2 = _signed_q(f2)
    if p1 != p2:
        return False
    if p1 == 1:
        return True  # both unknots
    return q2 == q1 or (q2 * q1) % p1 == 1


class EvenExpansion:
    """Even continued-fraction expansion [2a1, 2b1, ..., 2am, 2bm].

    The length must be even and every entry a non-zero even integer; m is the
    genus of the associated plumbing surface.
    """

    def __init__(self, terms: Sequence[int]):
        terms = list(terms)
        if not terms or len(terms) % 2 != 0:
            raise ValueError(f"even expansion needs an even, positive number of terms: {terms}")
        for a in terms:
            if a == 0 or a % 2 != 0:
                raise ValueError(f"even expansion entries must be non-zero even integers: {terms}")
        self.terms = terms

    @property
    def genus(self) -> int:
        return len(self.terms) // 2

    @property
    def pairs(self) -> List[Tuple[int, int]]:
        """[(a1, b1), ..., (am, bm)] with terms [2a1, 2b1, ...]."""
        halves = [a // 2 for a in self.terms]
        return list(zip(halves[0::2], halves[1::2]))

    def fraction(self) -> Fraction:
        return cf_value(self.terms)

    def mirror(self) -> "EvenExpansion":
        return EvenExpansion(mirror_terms(self.terms))

    def __repr__(self):
        return f"EvenExpansion({self.terms})"

    def __eq__(self, other):
        return isinstance(other, EvenExpansion) and self.terms == other.terms


ExpansionLike = Union[EvenExpansion, Sequence[int]]


def _coerce_expansion(e: ExpansionLike) -> EvenExpansion:
    return e if isinstance(e, EvenExpansion) else EvenExpansion(e)


def even_expansion_from_fraction(fr: Fraction) -> EvenExpansion:
    """An even expansion of the knot b(p, q) (|p| odd).

    The denominator is first shifted by p if needed to make it even (this
    does not change the knot); then even partial quotients are extracted
    greedily, always leaving an odd remainder.
    """
    p, q = fr.numerator, fr.denominator
    if p % 2 == 0:
        raise ValueError(f"numerator {p} is even: not a knot")
    if abs(p) == 1:
        raise ValueError("the unknot has no even expansion")
    if p < 0:
        return even_expansion_from_fraction(-fr).mirror()
    # Shift q by p (same knot) until it is even and 0 < |q| < p.
    q %= p
    if q % 2 != 0:
        q -= p
    terms: List[int] = []
    while True:
        # Extract p/q = 2a + r/q with |r| < |q|.  The states alternate
        # between (p odd, q even) with r forced odd, and (p even, q odd)
        # with r forced even; r = 0 can only occur at the latter, so the
        # term list always comes out with even length.
        base = p // (2 * q)
        for cand in (base, base + 1):
            r = p - 2 * cand * q
            if abs(r) < abs(q):
                a = cand
                break
        else:
            raise AssertionError(f"no even quotient for {p}/{q}")
        if a == 0:
            raise AssertionError(f"zero quotient for {p}/{q}")
        terms.append(2 * a)
        if r == 0:
            break
        p, q = q, r
    return EvenExpansion(terms)


def seifert_matrix(e: ExpansionLike) -> List[List[int]]:
    """Seifert matrix of the plumbing surface for [2a1, 2b1, ..., 2am, 2bm].

    The 2m x 2m ladder has diagonal (a1, -b1, a2, -b2, ...) and ones on the
    superdiagonal.  The sign convention is pinned down by the requirement
    |Alexander(-1)| = |p| for every expansion (checked wholesale in tests).
    """
    exp = _coerce_expansion(e)
    n = 2 * exp.genus
    v = [[0] * n for _ in range(n)]
    for i, (a, b) in enumerate(exp.pairs):
        v[2 * i][2 * i] = a
        v[2 * i + 1][2 * i + 1] = -b
    for i in range(n - 1):
        v[i][i + 1] = 1
    return v


def alexander(e: ExpansionLike) -> List[int]:
    """Alexander polynomial det(V - t*V^T) as ascending coefficients.

    Normalized so the lowest-degree coefficient is positive.  The degree is
    exactly twice the genus and the constant term is non-zero.
    """
    exp = _coerce_expansion(e)
    v = seifert_matrix(exp)
    n = len(v)
    degree = n
    # The entries of V - t*V^T are linear in t, so det is a polynomial of
    # degree <= n: interpolate it exactly from n+1 integer evaluations.
    points = range(-(degree // 2), degree - degree // 2 + 1)
    values = []
    for t in points:
        m = [[v[i][j] - t * v[j][i] for j in range(n)] for i in range(n)]
        values.append(det_bareiss(m))
    coeffs = _interpolate_int_poly(list(points), values)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if coeffs[0] == 0:
        raise AssertionError(f"Alexander polynomial with zero constant term: {coeffs}")
    if coeffs[0] < 0:
        coeffs = [-c for c in coeffs]
    return coeffs


def _interpolate_int_poly(xs: List[int], ys: List[int]) -> List[int]:
    """Lagrange interpolation returning exact integer coefficients."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        # Build the i-th Lagrange basis polynomial by multiplying out the
        # factors (x - xs[j]); new[k] = old[k-1] - xs[j]*old[k].
        basis = [Fraction(1)]
        denom = 1
        for j in range(n):
            if j == i:
                continue
            denom *= xs[i] - xs[j]
            new = [Fraction(0)] * (len(basis) + 1)
            for k, c in enumerate(basis):
                new[k + 1] += c
                new[k] -= xs[j] * c
            basis = new
        scale = Fraction(ys[i], denom)
        for k, c in enumerate(basis):
            coeffs[k] += scale * c
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise AssertionError(f"non-integer interpolation coefficient {c}")
        out.append(int(c))
    return out


def link_determinant(e: ExpansionLike) -> int:
    """|Alexander(-1)|, the determinant of the knot (= |p|)."""
    delta = alexander(e)
    return abs(sum(c * (-1) ** i for i, c in enumerate(delta)))


def h1_cyclic_cover_order(e: ExpansionLike, n: int) -> Union[int, Infinite]:
    """Exact order of H_1 of the n-fold cyclic branched cover.

    Computed as |Res((t**n - 1)/(t - 1), Alexander(t))| with an integer
    Sylvester determinant; a zero resultant means infinite homology.
    """
    if n < 1:
        raise ValueError(f"cover degree must be >= 1, got {n}")
    if n == 1:
        return 1
    delta = alexander(e)
    cyclo = [1] * n  # 1 + t + ... + t**(n-1)
    order = abs(resultant(cyclo, delta))
    return order if order else INFINITE


# Small dictionary of rational-knot names, used only for display.
_KNOT_NAMES = {
    3: {frozenset({1, 2}): "3_1"},
    5: {frozenset({1, 4}): "5_1", frozenset({2, 3}): "4_1"},
    7: {frozenset({1, 6}): "7_1", frozenset({2, 4}): "5_2", frozenset({3, 5}): "5_2"},
    9: {frozenset({1, 8}): "9_1", frozenset({2, 5}): "6_1", frozenset({4, 7}): "6_1"},
}


def knot_name(fr: Fraction) -> Union[str, None]:
    p, q = _signed_q(fr)
    if p == 1:
        return "0_1"
    classes = _KNOT_NAMES.get(p)
    if not classes:
        return None
    qinv = pow(q, -1, p)
    for cls, name in classes.items():
        if q in cls or qinv in cls:
            return name
    return None
