"""Structural predicates for ring elements and certified designated data.

This module decides unit-ness, associateness, centrality and irreducibility
for the supported instances, produces checkable irreducibility tags, and
computes comaximality (Bezout) witnesses in the commutative core of each
instance. Designated irreducibles and their witness table are collected in a
``DesignatedSet``, the context object threaded through fraction and module
arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import factoring
from .fields import RationalField
from .rings import (IntegerRing, IntPolyRing, LocalizedIntegerRing, PolyRing,
                    Ring, RingElement, RingError, SkewPolyRing)


class NotIrreducibleError(ValueError):
    """Raised when an element certified for irreducibility factors."""

    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}


@dataclass(frozen=True)
class IrreducibleTag:
    """A designated irreducible with its decision evidence.

    ``certificate_kind`` is "Proven" when the instance supports a full
    decision and "Asserted" (with ``warning`` set) when it does not.
    """

    id: str
    element: RingElement
    certificate_kind: str
    justification: tuple = ()
    warning: str = ""

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "element": repr(self.element),
            "kind": self.certificate_kind,
            "justification": [list(j) for j in self.justification],
            "warning": self.warning,
        }


def is_unit(x: RingElement) -> bool:
    return x.ring.is_unit(x.data)


def is_central(x: RingElement) -> bool:
    return x.ring.is_central(x.data)


def are_associates(x: RingElement, y: RingElement) -> bool:
    """Left associateness x = u*y; two-sided for the central elements we use."""
    if x.ring.descriptor != y.ring.descriptor:
        raise RingError("ring descriptor mismatch")
    if x.is_zero() or y.is_zero():
        raise RingError("associateness is undefined for zero")
    return x.ring.are_associates(x.data, y.data)


def exact_divide_central(x: RingElement, c: RingElement) -> RingElement | None:
    """Return q with x = c*q when it exists; c must be central and nonzero."""
    if x.ring.descriptor != c.ring.descriptor:
        raise RingError("ring descriptor mismatch")
    if c.is_zero():
        raise ZeroDivisionError("division by zero")
    if not c.is_central():
        raise RingError("divisor must be central")
    q = x.ring.exact_divide_central(x.data, c.data)
    return None if q is None else RingElement(x.ring, q)


def _justify(*pairs) -> tuple:
    return tuple((str(k), str(v)) for k, v in pairs)


def certify_irreducible(x: RingElement) -> IrreducibleTag:
    """Decide irreducibility of x where the instance allows, else assert it.

    Raises ``NotIrreducibleError`` on refutation and ``RingError`` for zero
    or unit input.
    """
    ring = x.ring
    if x.is_zero() or x.is_unit():
        raise RingError("irreducibility is undefined for zero and units")
    ident = repr(x)

    def tag(kind: str, justification: tuple, warning: str = "") -> IrreducibleTag:
        return IrreducibleTag(ident, x, kind, justification, warning)

    if isinstance(ring, IntegerRing):
        ok, why = factoring.is_prime(x.data)
        if not ok:
            raise NotIrreducibleError(f"{ident} is composite", why)
        return tag("Proven", _justify(("method", why["method"]),))

    if isinstance(ring, LocalizedIntegerRing):
        vals = ring.valuations(x.data)
        total = sum(vals.values())
        if total == 0:
            raise RingError(f"{ident} is a unit in the localization")
        if total > 1:
            raise NotIrreducibleError(f"{ident} has localized valuation {total}",
                                      {"valuations": vals})
        p = next(p for p, v in vals.items() if v == 1)
        return tag("Proven", _justify(("method", "localized_valuation"), ("prime", p)))

    if isinstance(ring, PolyRing):
        if ring.deg(x.data) < 1:
            raise RingError("constants are zero or units over a field")
        if isinstance(ring.field, RationalField):
            decision = factoring.rational_irreducible_low_degree(x.data)
            if decision is None:
                return tag("Asserted", _justify(("method", "undecided"),),
                           warning="degree above the rational-root bound; asserted only")
            ok, why = decision
            if not ok:
                raise NotIrreducibleError(f"{ident} factors over Q", why)
            return tag("Proven", _justify(*why.items()))
        ok, why = factoring.is_irreducible_over_finite_field(ring.field, x.data)
        if not ok:
            raise NotIrreducibleError(f"{ident} factors over the base field", why)
        return tag("Proven", _justify(*why.items()))

    if isinstance(ring, IntPolyRing):
        if ring.deg(x.data) == 0:
            ok, why = factoring.is_prime(x.data[0])
            if not ok:
                raise NotIrreducibleError(f"{ident} is a composite constant", why)
            return tag("Proven", _justify(("method", why["method"]),))
        if ring.deg(x.data) == 1 and gcd(x.data[0], x.data[1]) == 1:
            return tag("Proven", _justify(("method", "primitive_linear"),))
        return tag("Asserted", _justify(("method", "undecided"),),
                   warning="nonlinear integer polynomial; asserted only")

    if isinstance(ring, SkewPolyRing):
        if ring.deg(x.data) == 0:
            inner = certify_irreducible(RingElement(ring.coeff, x.data[0]))
            if inner.certificate_kind == "Proven":
                just = _justify(("method", "degree0_lift"),) + inner.justification
                return tag("Proven", just)
            return tag("Asserted", inner.justification,
                       warning="coefficient-ring irreducibility only asserted")
        return tag("Asserted", _justify(("method", "undecided"),),
                   warning="positive skew degree; noncommutative factorization not attempted")

    raise RingError(f"unsupported ring kind {ring.descriptor.kind!r}")


def prime_reason(tag: IrreducibleTag) -> str | None:
    """Structural justification that a Proven irreducible is prime, or None."""
    if tag.certificate_kind != "Proven":
        return None
    ring = tag.element.ring
    if isinstance(ring, IntegerRing):
        return "prime integer"
    if isinstance(ring, LocalizedIntegerRing):
        return "associate of a localized prime"
    if isinstance(ring, PolyRing):
        return "irreducible in a principal ideal domain"
    if isinstance(ring, IntPolyRing):
        if ring.deg(tag.element.data) == 0:
            return "prime integer constant; the quotient is a polynomial ring over F_p"
        return "primitive linear polynomial; the quotient is a domain"
    if isinstance(ring, SkewPolyRing):
        data = tag.element.data
        if ring.deg(data) != 0 or not ring.is_central(data):
            return None
        inner = prime_reason(IrreducibleTag(tag.id, RingElement(ring.coeff, data[0]),
                                            "Proven", tag.justification))
        if inner is None:
            return None
        return ("central degree-0 lift of a coefficient prime; the quotient is a "
                "skew polynomial ring over a domain (" + inner + ")")
    return None


# ---------------------------------------------------------------------------
# Bezout witnesses in the commutative core

def _int_xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _poly_xgcd(F, a: tuple, b: tuple) -> tuple[tuple, tuple, tuple]:
    r0, r1 = a, b
    s0, s1 = (F.one,), ()
    t0, t1 = (), (F.one,)
    while r1:
        q, r = factoring.pdivmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, factoring.psub(F, s0, factoring.pmul(F, q, s1))
        t0, t1 = t1, factoring.psub(F, t0, factoring.pmul(F, q, t1))
    return r0, s0, t0


def bezout_witness(c: RingElement, d: RingElement):
    """Return (u, v) with u*c + v*d = 1, or None when no witness exists.

    Witnesses are computed in the commutative core of the instance (Z, or
    field[x]); associate inputs are rejected.
    """
    ring = c.ring
    if ring.descriptor != d.ring.descriptor:
        raise RingError("ring descriptor mismatch")
    if c.is_zero() or d.is_zero():
        raise RingError("comaximality is undefined for zero")
    if not (c.is_central() and d.is_central()):
        raise RingError("comaximality witnesses need central inputs")
    if are_associates(c, d):
        raise RingError(f"{c!r} and {d!r} are associates")

    pair = _core_bezout(ring, c.data, d.data)
    if pair is None:
        return None
    u, v = (RingElement(ring, p) for p in pair)
    if not (u * c + v * d == RingElement(ring, ring.one)):
        raise RuntimeError("internal error: bezout witness failed re-multiplication")
    return u, v


def _core_bezout(ring: Ring, a, b):
    if isinstance(ring, IntegerRing):
        g, u, v = _int_xgcd(a, b)
        if g == -1:
            g, u, v = 1, -u, -v
        return (u, v) if g == 1 else None

    if isinstance(ring, LocalizedIntegerRing):
        def core(x: Fraction) -> int:
            n = 1
            for p, k in ring.valuations(x).items():
                n *= p**k
            return n

        ca, cb = core(a), core(b)
        g, u, v = _int_xgcd(ca, cb)
        if g != 1:
            return None
        # divide out the unit parts so the identity lands on a and b themselves
        return (Fraction(u) / (a / ca), Fraction(v) / (b / cb))

    if isinstance(ring, IntPolyRing):
        if len(a) == 1 and len(b) == 1:
            g, u, v = _int_xgcd(a[0], b[0])
            if g == -1:
                g, u, v = 1, -u, -v
            if g != 1:
                return None
            return ((u,) if u else (), (v,) if v else ())
        Q = RationalField()
        fa = tuple(Fraction(t) for t in a)
        fb = tuple(Fraction(t) for t in b)
        g, u, v = _poly_xgcd(Q, fa, fb)
        if len(g) != 1:
            return None
        u = factoring.pscale(Q, Q.inv(g[0]), u)
        v = factoring.pscale(Q, Q.inv(g[0]), v)
        if any(t.denominator != 1 for t in u) or any(t.denominator != 1 for t in v):
            return None  # conservative: no integral witness found by scaled xgcd
        return (tuple(int(t) for t in u), tuple(int(t) for t in v))

    if isinstance(ring, PolyRing):
        g, u, v = _poly_xgcd(ring.field, a, b)
        if len(g) != 1:
            return None
        inv = ring.field.inv(g[0])
        return (factoring.pscale(ring.field, inv, u), factoring.pscale(ring.field, inv, v))

    if isinstance(ring, SkewPolyRing):
        got = _core_bezout(ring.coeff, a[0], b[0])
        if got is None:
            return None
        return (ring.from_coeff(got[0]), ring.from_coeff(got[1]))

    raise RingError(f"unsupported ring kind {ring.descriptor.kind!r}")


# ---------------------------------------------------------------------------
# designated irreducibles

@dataclass
class DesignatedSet:
    """Registry of designated central irreducibles with their witness table.

    Tag ids are the canonical renderings of the elements; ``order`` is the
    declaration order (gamma pairs first, then the delta list), which fixes
    every deterministic choice downstream.
    """

    ring: Ring
    tags: dict[str, IrreducibleTag] = field(default_factory=dict)
    gamma_pairs: list[tuple[str, str]] = field(default_factory=list)
    delta_ids: list[str] = field(default_factory=list)
    bezout: dict[tuple[str, str], tuple[RingElement, RingElement]] = field(default_factory=dict)
    validated: bool = False

    def ids(self) -> list[str]:
        return list(self.tags.keys())

    def has(self, tag_id: str) -> bool:
        return tag_id in self.tags

    def element(self, tag_id: str) -> RingElement:
        return self.tags[tag_id].element

    def order(self, tag_id: str) -> int:
        return list(self.tags.keys()).index(tag_id)

    def sort_ids(self, ids) -> list[str]:
        return sorted(ids, key=self.order)

    def gamma_ids(self) -> set[str]:
        return {i for pair in self.gamma_pairs for i in pair}

    def is_delta(self, tag_id: str) -> bool:
        return tag_id in self.delta_ids

    def witness_for(self, a_id: str, b_id: str) -> tuple[RingElement, RingElement]:
        """(u, v) with u*a + v*b = 1, oriented to the argument order."""
        if (a_id, b_id) in self.bezout:
            return self.bezout[(a_id, b_id)]
        v, u = self.bezout[(b_id, a_id)]
        return u, v

    def inverse_unit(self, c_id: str, mod_id: str) -> RingElement:
        """u with u*c = 1 modulo the designated irreducible ``mod_id``."""
        u, _ = self.witness_for(c_id, mod_id)
        return u

    def monomial_element(self, exponents: dict[str, int]) -> RingElement:
        acc = RingElement(self.ring, self.ring.one)
        for tag_id in self.sort_ids(exponents):
            acc = acc * self.element(tag_id) ** exponents[tag_id]
        return acc

    def monomial_inverse_unit(self, exponents: dict[str, int], mod_id: str) -> RingElement:
        """Product of Bezout inverses for a denominator monomial, mod ``mod_id``."""
        acc = RingElement(self.ring, self.ring.one)
        for tag_id in self.sort_ids(exponents):
            acc = acc * self.inverse_unit(tag_id, mod_id) ** exponents[tag_id]
        return acc
