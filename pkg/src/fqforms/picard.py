"""Picard groups of quadratic orders B = A[sqrt(D)] over A = F_q[t].

For square-free D0 of odd degree 2g+1 the order A[sqrt(D0)] is maximal
and its Picard group is the group of reduced Mumford divisors (u, v) on
y^2 = D0(t): u monic of degree <= g, deg v < deg u, u | v^2 - D0, with
the usual composition-and-reduction group law.  Non-maximal orders
B = A[sqrt(f^2 D0)] get their order from the conductor exact sequence:

    |Pic B| = |Pic O| * |(O/fO)^x| / (|(A/fA)^x| * |O^x : B^x|)

with the middle factor a product of local terms that depend only on the
splitting of each prime divisor of f in O.  For constant D0 (= delta up
to squares) O = F_{q^2}[t] has trivial Picard group and unit index q+1.
For square-free D0 of even degree and non-square leading coefficient the
curve is rational and the place at infinity is inert of degree 2, which
pins |Pic O| = 2; group structure is not computed in that case.

The composition bridge: the proper primitive classes of discriminant
exactly D number 2 |Pic B| once deg D >= 1.  For constant D the unit norm
F_{q^2} -> F_q is onto, the square-class kernel collapses, and the count
is |Pic B| itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CapabilityError
from .ffpoly import factor, residue_char, squarefree_decompose, xgcd


@dataclass(frozen=True)
class MumfordDivisor:
    """Reduced divisor (u, v) on y^2 = curve(t)."""

    u: object
    v: object
    curve: object

    def __post_init__(self):
        if self.u.is_zero() or self.u.lc() != 1:
            raise ValueError("u must be monic")
        if self.v.degree >= self.u.degree:
            raise ValueError("v must have degree < deg u")
        if not ((self.v * self.v - self.curve) % self.u).is_zero():
            raise ValueError("u does not divide v^2 - curve")

    def is_identity(self):
        return self.u.degree == 0

    def __repr__(self):
        return f"MumfordDivisor(({self.u}, {self.v}))"


def _check_curve(d0):
    if d0.degree % 2 == 0 or d0.degree < 1:
        raise ValueError("curve polynomial must have odd degree")
    f0, g, _ = squarefree_decompose(d0)
    if g.degree > 0 or f0.degree != d0.degree:
        raise ValueError("curve polynomial must be square-free")
    return (d0.degree - 1) // 2


def divisor_identity(d0):
    F = d0.field
    return MumfordDivisor(F.one, F.zero, d0)


def divisor_negate(p):
    return MumfordDivisor(p.u, (-p.v) % p.u, p.curve)


def cantor_add(p1, p2):
    """Group law on reduced divisors of y^2 = D0, D0 square-free odd degree."""
    if p1.curve != p2.curve:
        raise ValueError("divisors live on different curves")
    d0 = p1.curve
    genus = _check_curve(d0)
    F = d0.field
    # composition
    d1, e1, e2 = xgcd(p1.u, p2.u)
    vsum = p1.v + p2.v
    if vsum.is_zero():
        d, c1, c3 = d1, F.one, F.zero
    else:
        d, c1, c3 = xgcd(d1, vsum)
    s1, s2, s3 = c1 * e1, c1 * e2, c3
    u = (p1.u * p2.u) // (d * d)
    v = (s1 * p1.u * p2.v + s2 * p2.u * p1.v + s3 * (p1.v * p2.v + d0)) // d
    v = v % u
    # reduction
    while u.degree > genus:
        u = (d0 - v * v) // u
        v = (-v) % u
    u = u.monic()
    return MumfordDivisor(u, v % u, d0)


def divisor_order(p):
    acc = p
    n = 1
    while not acc.is_identity():
        acc = cantor_add(acc, p)
        n += 1
        if n > 10**6:
            raise AssertionError("runaway divisor order")
    return n


@dataclass(frozen=True)
class AbelianStructure:
    """Invariant factors d_1 | d_2 | ... with product the group order."""

    factors: tuple

    def __repr__(self):
        return "AbelianStructure" + repr(self.factors)


@dataclass
class PicGroup:
    order: int
    structure: AbelianStructure
    elements: list


def enumerate_reduced_divisors(d0):
    """All reduced Mumford divisors of y^2 = D0 (deg u <= genus)."""
    genus = _check_curve(d0)
    F = d0.field
    out = [divisor_identity(d0)]
    for du in range(1, genus + 1):
        for low in range(F.q**du):
            u = F.poly_from_key(low + F.q**du)  # monic of degree du
            for vkey in range(F.q**du):
                v = F.poly_from_key(vkey)
                if ((v * v - d0) % u).is_zero():
                    out.append(MumfordDivisor(u, v, d0))
    return out


def pic_group(d0):
    """(order, invariant factors, elements) of Pic(A[sqrt(D0)]), genus <= 2."""
    genus = _check_curve(d0)
    if genus > 2:
        raise CapabilityError("full group enumeration supports genus <= 2")
    elements = enumerate_reduced_divisors(d0)
    order = len(elements)
    structure = _abelian_structure(elements, order)
    return PicGroup(order=order, structure=structure, elements=elements)


def _abelian_structure(elements, order):
    if order == 1:
        return AbelianStructure(())
    orders = [divisor_order(p) for p in elements if not p.is_identity()]
    exponent = 1
    for n in orders:
        exponent = exponent * n // math.gcd(exponent, n)
    counts = {}
    for m in _divisors(exponent):
        counts[m] = 1 + sum(1 for n in orders if m % n == 0)
    for chain in _invariant_factor_chains(order, exponent):
        if all(
            counts[m] == math.prod(math.gcd(d, m) for d in chain)
            for m in counts
        ):
            return AbelianStructure(chain)
    raise AssertionError("no abelian group matches the order statistics")


def _divisors(n):
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _invariant_factor_chains(order, exponent):
    """All chains d_1 | d_2 | ... | d_k = exponent with product = order."""
    chains = []

    def extend(remaining, cap, acc):
        if remaining == 1:
            chains.append(tuple(reversed(acc)))
            return
        for d in _divisors(cap):
            if d > 1 and remaining % d == 0:
                extend(remaining // d, d, acc + [d])

    if order % exponent == 0:
        extend(order // exponent, exponent, [exponent])
    return chains


def affine_point_count(d0):
    """|{(x, y) in F_q^2 : y^2 = D0(x)}|, the genus-1 order oracle."""
    F = d0.field
    total = 0
    for x in F.elements():
        c = F.char(d0(x))
        total += 1 + c if c >= 0 else 0
    return total


def pic_order_with_conductor(d0, f):
    """|Pic(A[sqrt(f^2 D0)])| from the conductor exact sequence."""
    if f.is_zero() or f.lc() != 1:
        raise ValueError("conductor must be monic")
    F = d0.field
    q = F.q
    if d0.degree == 0:
        if F.is_square(d0.lc()):
            raise ValueError("constant D0 must be a non-square")
        base = 1
        # B = A[f sqrt(D0)] has constant units only once deg f >= 1; for
        # f = 1 it is the maximal order F_{q^2}[t] itself
        unit_index = q + 1 if f.degree >= 1 else 1
    else:
        f0, g, _ = squarefree_decompose(d0)
        if g.degree > 0:
            raise ValueError("D0 must be square-free")
        if d0.degree % 2:
            base = pic_group(d0).order
        else:
            if F.is_square(d0.lc()):
                raise ValueError("even-degree D0 needs a non-square leading coefficient")
            base = 2  # rational curve, inert infinite place of degree 2
        unit_index = 1
    numerator = base
    denominator = unit_index
    for p, k in factor(f)[1]:
        d = p.degree
        sym = residue_char(d0, p)
        if sym == 1:
            w = (q**d - 1) ** 2
        elif sym == -1:
            w = q ** (2 * d) - 1
        else:
            w = q**d * (q**d - 1)
        numerator *= q ** (2 * d * (k - 1)) * w
        denominator *= q ** (d * (k - 1)) * (q**d - 1)
    out, rem = divmod(numerator, denominator)
    if rem:
        raise AssertionError("conductor order formula did not divide exactly")
    return out


@dataclass
class CompReport:
    """The composition bridge |G_D| = (2 if deg D >= 1 else 1) * |Pic(B)|."""

    disc: object
    proper_classes: int
    pic_order: int
    expected: int
    passed: bool


def comp_sequence_check(disc):
    from .classify import is_definite_disc, proper_class_count

    if not is_definite_disc(disc):
        raise ValueError("discriminant is not definite-shaped")
    F = disc.field
    f0, g, unit = squarefree_decompose(disc)
    d0 = F.constant(unit) * f0
    pic = pic_order_with_conductor(d0, g)
    gd = proper_class_count(F, disc, primitive_only=True)
    expected = 2 * pic if disc.degree >= 1 else pic
    return CompReport(
        disc=disc,
        proper_classes=gd,
        pic_order=pic,
        expected=expected,
        passed=(gd == expected),
    )
