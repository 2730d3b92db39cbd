"""Common nonzero left multiples of skew polynomials.

Uniformity spot checks need, for nonzero u and v, multipliers p and q with
p*u = q*v != 0. When u and v commute this is just cross multiplication; when
they do not, the pair is computed by the extended right-division Euclidean
algorithm over the fraction field of the coefficient ring (rational
functions), then cleared of denominators. Coefficients of the coefficient
ring act on skew polynomials from the left without rewriting, so clearing
denominators on the left is sound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import factoring
from .fields import RationalField
from .rings import IntPolyRing, PolyRing, RingError, SkewPolyRing


@dataclass(frozen=True)
class RatFunc:
    """num/den over a base field, den monic, gcd(num, den) = 1."""

    num: tuple
    den: tuple


class RationalFunctionField:
    """Field of rational functions over a base field; payloads are RatFunc."""

    def __init__(self, base):
        self.base = base
        self.zero = RatFunc((), (base.one,))
        self.one = RatFunc((base.one,), (base.one,))

    def make(self, num: tuple, den: tuple) -> RatFunc:
        F = self.base
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return self.zero
        g = factoring.pgcd(F, num, den)
        if factoring.pdeg(g) >= 1:
            num = factoring.pdivmod(F, num, g)[0]
            den = factoring.pdivmod(F, den, g)[0]
        lead_inv = F.inv(den[-1])
        num = factoring.pscale(F, lead_inv, num)
        den = factoring.pscale(F, lead_inv, den)
        return RatFunc(num, den)

    def from_poly(self, num: tuple) -> RatFunc:
        return self.make(num, (self.base.one,))

    def add(self, a: RatFunc, b: RatFunc) -> RatFunc:
        F = self.base
        num = factoring.padd(F, factoring.pmul(F, a.num, b.den),
                             factoring.pmul(F, b.num, a.den))
        return self.make(num, factoring.pmul(F, a.den, b.den))

    def neg(self, a: RatFunc) -> RatFunc:
        return RatFunc(factoring.pneg(self.base, a.num), a.den)

    def sub(self, a: RatFunc, b: RatFunc) -> RatFunc:
        return self.add(a, self.neg(b))

    def mul(self, a: RatFunc, b: RatFunc) -> RatFunc:
        F = self.base
        return self.make(factoring.pmul(F, a.num, b.num), factoring.pmul(F, a.den, b.den))

    def inv(self, a: RatFunc) -> RatFunc:
        if not a.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return self.make(a.den, a.num)

    def is_zero(self, a: RatFunc) -> bool:
        return not a.num


def _field_and_lift(coeff_ring):
    """Base field of Frac(R) plus the payload lift R -> F[x]."""
    if isinstance(coeff_ring, IntPolyRing):
        F = RationalField()
        return F, lambda c: tuple(Fraction(t) for t in c)
    if isinstance(coeff_ring, PolyRing):
        return coeff_ring.field, lambda c: c
    raise RingError(f"unsupported coefficient ring {coeff_ring!r}")


class _SkewOverFractions:
    """R[y; sigma, delta] lifted over K = Frac(R); payloads are RatFunc tuples."""

    def __init__(self, ring: SkewPolyRing):
        self.ring = ring
        F, lift = _field_and_lift(ring.coeff)
        self.F = F
        self.K = RationalFunctionField(F)
        self._lift_coeff = lift

    def lift(self, payload) -> tuple[RatFunc, ...]:
        return tuple(self.K.from_poly(self._lift_coeff(c)) for c in payload)

    def sigma(self, a: RatFunc) -> RatFunc:
        ring = self.ring
        if ring._sigma_trivial:
            return a
        power = ring.descriptor.sigma[1]
        fr = ring.coeff.frobenius_map
        return self.K.make(fr(a.num, power), fr(a.den, power))

    def delta(self, a: RatFunc) -> RatFunc:
        ring, K, F = self.ring, self.K, self.F
        if ring._delta_zero:
            return K.zero
        dn = factoring.pderiv(F, a.num)
        dd = factoring.pderiv(F, a.den)
        num = factoring.psub(F, factoring.pmul(F, dn, a.den),
                             factoring.pmul(F, a.num, dd))
        return K.make(num, factoring.pmul(F, a.den, a.den))

    def _trim(self, cs: list) -> tuple:
        while cs and self.K.is_zero(cs[-1]):
            cs.pop()
        return tuple(cs)

    def add(self, f, g):
        n = max(len(f), len(g))
        return self._trim([self.K.add(f[i] if i < len(f) else self.K.zero,
                                      g[i] if i < len(g) else self.K.zero)
                           for i in range(n)])

    def sub(self, f, g):
        return self.add(f, tuple(self.K.neg(c) for c in g))

    def scale_left(self, c: RatFunc, f):
        return self._trim([self.K.mul(c, a) for a in f])

    def _y_shift(self, g: list) -> list:
        out = [self.K.zero] * (len(g) + 1)
        for j, c in enumerate(g):
            out[j + 1] = self.K.add(out[j + 1], self.sigma(c))
            out[j] = self.K.add(out[j], self.delta(c))
        return out

    def mul(self, f, g):
        if not f or not g:
            return ()
        out = [self.K.zero] * (len(f) + len(g) - 1)
        shifted = list(g)
        for i, ca in enumerate(f):
            if i > 0:
                shifted = self._y_shift(shifted)
            if self.K.is_zero(ca):
                continue
            for j, cb in enumerate(shifted):
                out[j] = self.K.add(out[j], self.K.mul(ca, cb))
        return self._trim(out)

    def monomial(self, c: RatFunc, j: int):
        return self._trim([self.K.zero] * j + [c])

    def sigma_power(self, a: RatFunc, j: int) -> RatFunc:
        for _ in range(j):
            a = self.sigma(a)
        return a

    def right_divmod(self, f, g):
        """f = q*g + r with deg r < deg g, over the fraction field."""
        if not g:
            raise ZeroDivisionError("skew division by zero")
        q = ()
        r = f
        while len(r) >= len(g):
            j = len(r) - len(g)
            lead = self.K.mul(r[-1], self.K.inv(self.sigma_power(g[-1], j)))
            term = self.monomial(lead, j)
            q = self.add(q, term)
            r = self.sub(r, self.mul(term, g))
        return q, r


def common_left_multiple(ring: SkewPolyRing, u, v):
    """(p, q) in the skew ring with p*u = q*v != 0, for nonzero u, v payloads."""
    if ring.is_zero(u) or ring.is_zero(v):
        raise RingError("common multiples need nonzero inputs")
    lifted = _SkewOverFractions(ring)
    K = lifted.K
    f, g = lifted.lift(u), lifted.lift(v)
    # extended Euclid tracking r_i = s_i * f + t_i * g
    r0, r1 = f, g
    s0, s1 = (K.one,), ()
    t0, t1 = (), (K.one,)
    while r1:
        qq, rr = lifted.right_divmod(r0, r1)
        r0, r1 = r1, rr
        s0, s1 = s1, lifted.sub(s0, lifted.mul(qq, s1))
        t0, t1 = t1, lifted.sub(t0, lifted.mul(qq, t1))
    # now s1 * f + t1 * g = 0 with both cofactors nonzero
    p_frac, q_frac = s1, tuple(K.neg(c) for c in t1)
    if not p_frac or not q_frac:
        raise RuntimeError("internal error: degenerate cofactors in skew Euclid")
    # scale BOTH cofactors by one common left multiplier d from the coefficient
    # ring; (d p) u = d (p u) = d (q v) = (d q) v by associativity alone
    F = lifted.F
    d = _den_lcm_poly(F, [c.den for c in p_frac] + [c.den for c in q_frac])

    def clear(frac):
        return [factoring.pmul(F, factoring.pdivmod(F, d, c.den)[0], c.num) for c in frac]

    p_polys, q_polys = clear(p_frac), clear(q_frac)
    if isinstance(ring.coeff, IntPolyRing):
        from math import lcm
        dens = [t.denominator for poly in p_polys + q_polys for t in poly]
        m = lcm(*dens) if dens else 1
        p = tuple(tuple(int(t * m) for t in poly) for poly in p_polys)
        q = tuple(tuple(int(t * m) for t in poly) for poly in q_polys)
    else:
        p, q = tuple(p_polys), tuple(q_polys)
    left = ring.mul(p, u)
    right = ring.mul(q, v)
    if left != right or ring.is_zero(left):
        raise RuntimeError("internal error: skew common multiple failed verification")
    return p, q


def _den_lcm_poly(F, dens: list[tuple]) -> tuple:
    acc = (F.one,)
    for d in dens:
        g = factoring.pgcd(F, acc, d)
        acc = factoring.pmul(F, acc, factoring.pdivmod(F, d, g)[0])
    return acc
