"""Supported Ore domain instances and their exact element arithmetic.

Four configurable domains are provided: the integers, integers localized at
a finite set of primes, polynomials over a base field, and skew polynomial
rings R[y; sigma, delta] whose coefficient ring R is Z[x] or a polynomial
ring over a field. Elements are immutable payloads in canonical form; the
ring object owns the operations and is obtained from a ``RingDescriptor``
via ``make_ring``.

The skew product is driven entirely by the rewriting rule
``y * r = sigma(r) * y + delta(r)`` extended by linearity; left
multiplication by a coefficient never rewrites, so payloads are coefficient
sequences indexed by y-degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import factoring
from .fields import FieldSpec, RationalField


class RingError(ValueError):
    """Descriptor mismatch or malformed ring data."""


TOP_LEVEL_KINDS = ("integers", "localized_integers", "poly", "skew")
SKEW_COEFF_KINDS = ("int_poly", "poly")


@dataclass(frozen=True)
class RingDescriptor:
    """Serializable description of a supported ring instance."""

    kind: str
    primes: tuple[int, ...] = ()
    field: FieldSpec | None = None
    coeff: "RingDescriptor | None" = None
    sigma: tuple = ("identity",)
    delta: str = "zero"

    def to_json(self) -> dict:
        if self.kind == "integers":
            return {"kind": "integers"}
        if self.kind == "localized_integers":
            return {"kind": "localized_integers", "primes": list(self.primes)}
        if self.kind == "int_poly":
            return {"kind": "int_poly"}
        if self.kind == "poly":
            return {"kind": "poly", "field": self.field.to_json()}
        if self.kind == "skew":
            sigma = ({"kind": "identity"} if self.sigma[0] == "identity"
                     else {"kind": "frobenius", "power": self.sigma[1]})
            return {"kind": "skew", "coeff": self.coeff.to_json(),
                    "sigma": sigma, "delta": {"kind": self.delta}}
        raise RingError(f"unknown ring kind {self.kind!r}")

    @classmethod
    def from_json(cls, obj: dict) -> "RingDescriptor":
        kind = obj.get("kind")
        if kind == "integers":
            return cls("integers")
        if kind == "localized_integers":
            return cls("localized_integers", primes=tuple(sorted(set(int(p) for p in obj["primes"]))))
        if kind == "int_poly":
            return cls("int_poly")
        if kind == "poly":
            return cls("poly", field=FieldSpec.from_json(obj["field"]))
        if kind == "skew":
            sig = obj.get("sigma", {"kind": "identity"})
            sigma = (("identity",) if sig.get("kind") == "identity"
                     else ("frobenius", int(sig.get("power", 1))))
            delta = obj.get("delta", {"kind": "zero"}).get("kind", "zero")
            return cls("skew", coeff=cls.from_json(obj["coeff"]), sigma=sigma, delta=delta)
        raise RingError(f"unknown ring kind {kind!r}")


_RING_CACHE: dict[RingDescriptor, "Ring"] = {}


def make_ring(descriptor: RingDescriptor) -> "Ring":
    ring = _RING_CACHE.get(descriptor)
    if ring is None:
        ring = _build_ring(descriptor)
        _RING_CACHE[descriptor] = ring
    return ring


def _build_ring(d: RingDescriptor) -> "Ring":
    if d.kind == "integers":
        return IntegerRing(d)
    if d.kind == "localized_integers":
        return LocalizedIntegerRing(d)
    if d.kind == "int_poly":
        return IntPolyRing(d)
    if d.kind == "poly":
        return PolyRing(d)
    if d.kind == "skew":
        return SkewPolyRing(d)
    raise RingError(f"unknown ring kind {d.kind!r}")


class Ring:
    """Common surface of all ring instances. Payloads are hashable values."""

    commutative = True
    descriptor: RingDescriptor

    def element(self, data) -> "RingElement":
        return RingElement(self, data)

    def from_int(self, n: int):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def symbol(self, name: str):
        """Payload of a named generator ('x', 'y', 'g') or None."""
        return None

    def random_nonzero(self, rng, bound: int = 9):
        for _ in range(1000):
            a = self.random_element(rng, bound)
            if not self.is_zero(a):
                return a
        raise RuntimeError("sampler failed to produce a nonzero element")

    def __eq__(self, other):
        return isinstance(other, Ring) and other.descriptor == self.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    def __repr__(self):
        return f"<ring {self.descriptor.kind}>"


class IntegerRing(Ring):
    def __init__(self, descriptor: RingDescriptor):
        self.descriptor = descriptor
        self.zero = 0
        self.one = 1

    def from_int(self, n: int):
        return int(n)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a) -> bool:
        return a == 0

    def is_unit(self, a) -> bool:
        return a in (1, -1)

    def is_central(self, a) -> bool:
        return True

    def are_associates(self, a, b) -> bool:
        return abs(a) == abs(b)

    def exact_divide_central(self, x, c):
        if c == 0:
            raise ZeroDivisionError("division by zero")
        q, r = divmod(x, c)
        return q if r == 0 else None

    def reduce_mod_central(self, x, c):
        return x % abs(c)

    def deg(self, a) -> int:
        return 0 if a != 0 else -1

    def render(self, a) -> str:
        return str(a)

    def random_element(self, rng, bound: int = 9):
        return rng.randint(-bound, bound)


class LocalizedIntegerRing(Ring):
    """Z localized at the complement of a finite prime set P.

    Elements are reduced rationals n/d with d coprime to every p in P; the
    irreducibles are, up to units, exactly the members of P.
    """

    def __init__(self, descriptor: RingDescriptor):
        primes = descriptor.primes
        if not primes:
            raise RingError("localized_integers needs a nonempty prime set")
        for p in primes:
            ok, _ = factoring.is_prime(p)
            if not ok:
                raise RingError(f"localization set contains the non-prime {p}")
        self.descriptor = descriptor
        self.primes = primes
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def in_ring(self, a: Fraction) -> bool:
        return all(a.denominator % p != 0 for p in self.primes)

    def coerce(self, a: Fraction) -> Fraction:
        a = Fraction(a)
        if not self.in_ring(a):
            raise RingError(f"{a} has a denominator divisible by a localized prime")
        return a

    def from_int(self, n: int):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a) -> bool:
        return a == 0

    def is_unit(self, a) -> bool:
        return a != 0 and all(a.numerator % p != 0 for p in self.primes)

    def is_central(self, a) -> bool:
        return True

    def valuations(self, a: Fraction) -> dict[int, int]:
        out = {}
        n = abs(a.numerator)
        for p in self.primes:
            v = 0
            while n and n % p == 0:
                n //= p
                v += 1
            out[p] = v
        return out

    def are_associates(self, a, b) -> bool:
        if a == 0 or b == 0:
            return a == b
        return self.valuations(a) == self.valuations(b)

    def exact_divide_central(self, x, c):
        if c == 0:
            raise ZeroDivisionError("division by zero")
        q = x / c
        return q if self.in_ring(q) else None

    def reduce_mod_central(self, x, c):
        vals = self.valuations(c)
        live = [p for p, v in vals.items() if v > 0]
        if len(live) != 1 or vals[live[0]] != 1:
            raise RingError("modular reduction needs an irreducible modulus")
        p = live[0]
        n = x.numerator % p
        d = x.denominator % p
        return Fraction(n * pow(d, -1, p) % p)

    def deg(self, a) -> int:
        return 0 if a != 0 else -1

    def render(self, a) -> str:
        return str(a)

    def random_element(self, rng, bound: int = 9):
        num = rng.randint(-bound, bound)
        den = 1
        for _ in range(rng.randint(0, 2)):
            d = rng.randint(2, max(2, bound))
            if all(d % p != 0 for p in self.primes):
                den *= d
        return Fraction(num, den)


def _render_int_coeff_poly(coeffs, var: str) -> str:
    """Render a dense int/Fraction coefficient polynomial, high degree first."""
    if not coeffs:
        return "0"
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        negative = c < 0
        mag = -c if negative else c
        if i == 0:
            body = str(mag)
        else:
            vp = var if i == 1 else f"{var}^{i}"
            body = vp if mag == 1 else f"{mag}*{vp}"
        parts.append(("-" if negative else "+", body))
    out = ""
    for sign, body in parts:
        if not out:
            out = body if sign == "+" else f"-{body}"
        else:
            out += f" {sign} {body}"
    return out


class IntPolyRing(Ring):
    """Z[x]; dense integer coefficient tuples, low degree first."""

    var = "x"

    def __init__(self, descriptor: RingDescriptor):
        self.descriptor = descriptor
        self.zero = ()
        self.one = (1,)

    def _trim(self, cs: list) -> tuple:
        while cs and cs[-1] == 0:
            cs.pop()
        return tuple(cs)

    def from_int(self, n: int):
        return (int(n),) if n else ()

    def symbol(self, name: str):
        return (0, 1) if name == "x" else None

    def add(self, a, b):
        n = max(len(a), len(b))
        return self._trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                           for i in range(n)])

    def neg(self, a):
        return tuple(-c for c in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return self._trim(out)

    def is_zero(self, a) -> bool:
        return not a

    def is_unit(self, a) -> bool:
        return a in ((1,), (-1,))

    def is_central(self, a) -> bool:
        return True

    def are_associates(self, a, b) -> bool:
        return a == b or a == self.neg(b)

    def exact_divide_central(self, x, c):
        if not c:
            raise ZeroDivisionError("division by zero polynomial")
        if not x:
            return ()
        if len(c) == 1:
            d = c[0]
            if any(coeff % d for coeff in x):
                return None
            return tuple(coeff // d for coeff in x)
        Q = RationalField()
        fx = tuple(Fraction(v) for v in x)
        fc = tuple(Fraction(v) for v in c)
        q, r = factoring.pdivmod(Q, fx, fc)
        if r:
            return None
        if any(v.denominator != 1 for v in q):
            return None
        return self._trim([int(v) for v in q])

    def reduce_mod_central(self, x, c):
        if len(c) != 1:
            raise RingError("modular reduction implemented for constant moduli only")
        p = abs(c[0])
        return self._trim([v % p for v in x])

    def derivative(self, a):
        return self._trim([i * a[i] for i in range(1, len(a))])

    def deg(self, a) -> int:
        return len(a) - 1

    def render(self, a) -> str:
        return _render_int_coeff_poly(a, self.var)

    def random_element(self, rng, bound: int = 5):
        degree = rng.randint(0, 2)
        return self._trim([rng.randint(-bound, bound) for _ in range(degree + 1)])


class PolyRing(Ring):
    """field[x]; dense coefficient tuples of field payloads, low degree first."""

    var = "x"

    def __init__(self, descriptor: RingDescriptor):
        self.descriptor = descriptor
        self.field = descriptor.field.make()
        self.zero = ()
        self.one = (self.field.one,)

    def from_int(self, n: int):
        c = self.field.from_int(n)
        return () if self.field.is_zero(c) else (c,)

    def constant(self, c):
        return () if self.field.is_zero(c) else (c,)

    def symbol(self, name: str):
        if name == "x":
            return (self.field.zero, self.field.one)
        if name == "g" and self.field.generator is not None:
            return (self.field.generator,)
        return None

    def add(self, a, b):
        return factoring.padd(self.field, a, b)

    def neg(self, a):
        return factoring.pneg(self.field, a)

    def mul(self, a, b):
        return factoring.pmul(self.field, a, b)

    def is_zero(self, a) -> bool:
        return not a

    def is_unit(self, a) -> bool:
        return len(a) == 1

    def is_central(self, a) -> bool:
        return True

    def are_associates(self, a, b) -> bool:
        if not a or not b:
            return a == b
        if len(a) != len(b):
            return False
        ratio = self.field.mul(a[-1], self.field.inv(b[-1]))
        return a == factoring.pscale(self.field, ratio, b)

    def exact_divide_central(self, x, c):
        if not c:
            raise ZeroDivisionError("division by zero polynomial")
        q, r = factoring.pdivmod(self.field, x, c)
        return q if not r else None

    def reduce_mod_central(self, x, c):
        return factoring.pmod(self.field, x, c)

    def derivative(self, a):
        return factoring.pderiv(self.field, a)

    def frobenius_map(self, a, power: int):
        return tuple(self.field.frobenius(c, power) for c in a)

    def deg(self, a) -> int:
        return len(a) - 1

    def render(self, a) -> str:
        if isinstance(self.field, RationalField):
            return _render_int_coeff_poly(a, self.var)
        if not a:
            return "0"
        parts = []
        for i in range(len(a) - 1, -1, -1):
            c = a[i]
            if self.field.is_zero(c):
                continue
            ctext = self.field.render(c)
            if i == 0:
                body = ctext
            else:
                vp = self.var if i == 1 else f"{self.var}^{i}"
                if ctext == "1":
                    body = vp
                elif "+" in ctext or "-" in ctext:
                    body = f"({ctext})*{vp}"
                else:
                    body = f"{ctext}*{vp}"
            parts.append(body)
        return " + ".join(parts)

    def random_element(self, rng, bound: int = 5):
        degree = rng.randint(0, 2)
        cs = [self.field.random(rng, bound) for _ in range(degree + 1)]
        return factoring._trim(self.field, cs)


class SkewPolyRing(Ring):
    """R[y; sigma, delta] for R = Z[x] or field[x].

    Payloads are tuples of coefficient-ring payloads indexed by y-degree.
    The instance must be genuinely noncommutative: sigma a nontrivial
    automorphism or delta a nonzero derivation.
    """

    commutative = False
    var = "y"

    def __init__(self, descriptor: RingDescriptor):
        coeff_desc = descriptor.coeff
        if coeff_desc is None or coeff_desc.kind not in SKEW_COEFF_KINDS:
            raise RingError("skew coefficient ring must be int_poly or poly")
        self.coeff = make_ring(coeff_desc)
        self.descriptor = descriptor
        sig = descriptor.sigma
        if sig[0] == "identity":
            self._sigma_trivial = True
        elif sig[0] == "frobenius":
            if coeff_desc.kind != "poly" or self.coeff.field.char == 0:
                raise RingError("frobenius twist needs a finite base field")
            k = getattr(self.coeff.field, "k", 1)
            self._sigma_trivial = sig[1] % k == 0
        else:
            raise RingError(f"unknown automorphism spec {sig!r}")
        if descriptor.delta == "zero":
            self._delta_zero = True
        elif descriptor.delta == "d_dx":
            self._delta_zero = False
        else:
            raise RingError(f"unknown derivation spec {descriptor.delta!r}")
        if self._sigma_trivial and self._delta_zero:
            raise RingError("skew instance with sigma = id and delta = 0 is commutative; "
                            "use a plain polynomial ring instead")
        self.zero = ()
        self.one = (self.coeff.one,)

    def sigma(self, c):
        if self._sigma_trivial:
            return c
        return self.coeff.frobenius_map(c, self.descriptor.sigma[1])

    def delta(self, c):
        if self._delta_zero:
            return self.coeff.zero
        return self.coeff.derivative(c)

    def _trim(self, cs: list) -> tuple:
        while cs and self.coeff.is_zero(cs[-1]):
            cs.pop()
        return tuple(cs)

    def from_int(self, n: int):
        c = self.coeff.from_int(n)
        return () if self.coeff.is_zero(c) else (c,)

    def from_coeff(self, c):
        return () if self.coeff.is_zero(c) else (c,)

    def symbol(self, name: str):
        if name == "y":
            return (self.coeff.zero, self.coeff.one)
        c = self.coeff.symbol(name)
        return self.from_coeff(c) if c is not None else None

    def add(self, a, b):
        n = max(len(a), len(b))
        out = []
        for i in range(n):
            ca = a[i] if i < len(a) else self.coeff.zero
            cb = b[i] if i < len(b) else self.coeff.zero
            out.append(self.coeff.add(ca, cb))
        return self._trim(out)

    def neg(self, a):
        return tuple(self.coeff.neg(c) for c in a)

    def _y_shift(self, g: list) -> list:
        """Coefficients of y * g, from y * r = sigma(r) y + delta(r)."""
        out = [self.coeff.zero] * (len(g) + 1)
        for j, c in enumerate(g):
            out[j + 1] = self.coeff.add(out[j + 1], self.sigma(c))
            out[j] = self.coeff.add(out[j], self.delta(c))
        return out

    def mul(self, a, b):
        if not a or not b:
            return ()
        out = [self.coeff.zero] * (len(a) + len(b) - 1)
        shifted = list(b)  # y^i * b, starting at i = 0
        for i, ca in enumerate(a):
            if i > 0:
                shifted = self._y_shift(shifted)
            if self.coeff.is_zero(ca):
                continue
            for j, cb in enumerate(shifted):
                if not self.coeff.is_zero(cb):
                    out[j] = self.coeff.add(out[j], self.coeff.mul(ca, cb))
        return self._trim(out)

    def is_zero(self, a) -> bool:
        return not a

    def is_unit(self, a) -> bool:
        return len(a) == 1 and self.coeff.is_unit(a[0])

    def is_central(self, a) -> bool:
        # Degree-0 criterion: sigma fixes the coefficient and delta kills it.
        # Exact for y-degree 0; higher-degree elements are reported non-central.
        if not a:
            return True
        if len(a) > 1:
            return False
        c = a[0]
        return c == self.sigma(c) and self.coeff.is_zero(self.delta(c))

    def are_associates(self, a, b) -> bool:
        if not a or not b:
            return a == b
        if len(a) != len(b):
            return False
        j = next(i for i, c in enumerate(b) if not self.coeff.is_zero(c))
        if self.coeff.is_zero(a[j]):
            return False
        if self.descriptor.coeff.kind == "int_poly":
            candidates = [(1,), (-1,)]
        else:
            fld = self.coeff.field
            xs, ys = a[j], b[j]
            if len(xs) != len(ys):
                return False
            candidates = [(fld.mul(xs[-1], fld.inv(ys[-1])),)]
        for u in candidates:
            if not self.coeff.is_unit(u):
                continue
            if all(self.coeff.mul(u, cb) == ca for ca, cb in zip(a, b)):
                return True
        return False

    def exact_divide_central(self, x, c):
        if self.is_zero(c):
            raise ZeroDivisionError("division by zero")
        if not self.is_central(c):
            raise RingError("divisor must be central")
        c0 = c[0]
        out = []
        for cx in x:
            q = self.coeff.exact_divide_central(cx, c0)
            if q is None:
                return None
            out.append(q)
        return self._trim(out)

    def reduce_mod_central(self, x, c):
        if not self.is_central(c):
            raise RingError("modulus must be central")
        c0 = c[0]
        return self._trim([self.coeff.reduce_mod_central(cx, c0) for cx in x])

    def deg(self, a) -> int:
        return len(a) - 1

    def render(self, a) -> str:
        if not a:
            return "0"
        parts = []
        for j in range(len(a) - 1, -1, -1):
            c = a[j]
            if self.coeff.is_zero(c):
                continue
            ctext = self.coeff.render(c)
            if j == 0:
                body, sign = ctext, "+"
                if body.startswith("-") and " " not in body:
                    sign, body = "-", body[1:]
            else:
                vp = self.var if j == 1 else f"{self.var}^{j}"
                sign = "+"
                if ctext == "1":
                    body = vp
                elif ctext == "-1":
                    sign, body = "-", vp
                elif " + " in ctext or " - " in ctext:
                    body = f"({ctext})*{vp}"
                elif ctext.startswith("-"):
                    sign, body = "-", f"{ctext[1:]}*{vp}"
                else:
                    body = f"{ctext}*{vp}"
            parts.append((sign, body))
        out = ""
        for sign, body in parts:
            if not out:
                out = body if sign == "+" else f"-{body}"
            else:
                out += f" {sign} {body}"
        return out

    def random_element(self, rng, bound: int = 5):
        degree = rng.randint(0, 2)
        return self._trim([self.coeff.random_element(rng, bound) for _ in range(degree + 1)])


@dataclass(frozen=True)
class RingElement:
    """An immutable element of a configured ring instance."""

    ring: Ring
    data: object

    def _check(self, other: "RingElement"):
        if not isinstance(other, RingElement) or other.ring.descriptor != self.ring.descriptor:
            raise RingError("ring descriptor mismatch")

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.ring.add(self.data, other.data))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.ring.sub(self.data, other.data))

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.data))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.ring.mul(self.data, other.data))

    def __rmul__(self, other):
        if isinstance(other, int):
            return RingElement(self.ring, self.ring.mul(self.ring.from_int(other), self.data))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise RingError("negative powers are not ring elements")
        acc = RingElement(self.ring, self.ring.one)
        for _ in range(n):
            acc = acc * self
        return acc

    def _coerce(self, other):
        if isinstance(other, int):
            return RingElement(self.ring, self.ring.from_int(other))
        if not isinstance(other, RingElement):
            return NotImplemented
        self._check(other)
        return other

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.data)

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.data)

    def is_central(self) -> bool:
        return self.ring.is_central(self.data)

    def __eq__(self, other):
        return (isinstance(other, RingElement)
                and other.ring.descriptor == self.ring.descriptor
                and other.data == self.data)

    def __hash__(self):
        return hash((self.ring.descriptor, self.data))

    def __repr__(self):
        return self.ring.render(self.data)


# descriptor shorthands used across the package and the tests

ZZ = RingDescriptor("integers")


def localized_descriptor(primes) -> RingDescriptor:
    return RingDescriptor("localized_integers", primes=tuple(sorted(set(primes))))


def poly_descriptor(field_spec: FieldSpec) -> RingDescriptor:
    return RingDescriptor("poly", field=field_spec)


INT_POLY = RingDescriptor("int_poly")


def skew_descriptor(coeff: RingDescriptor, sigma=("identity",), delta: str = "zero") -> RingDescriptor:
    return RingDescriptor("skew", coeff=coeff, sigma=sigma, delta=delta)


def weyl_style_descriptor() -> RingDescriptor:
    """Z[x][y; d/dx], the derivation instance used throughout the tests."""
    return skew_descriptor(INT_POLY, ("identity",), "d_dx")


def frobenius_descriptor(field_spec: FieldSpec, power: int = 1) -> RingDescriptor:
    return skew_descriptor(poly_descriptor(field_spec), ("frobenius", power), "zero")
