"""Base fields for polynomial coefficient domains.

Three fields are supported: the rationals, prime fields F_p, and extension
fields F_{p^k} presented modulo an irreducible defining polynomial. Field
elements are plain hashable payloads (``fractions.Fraction`` for Q, ``int``
in [0, p) for F_p, and a length-k tuple of ints for F_{p^k}); the field
object owns the operations, is immutable, and is shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import factoring


class FieldError(ValueError):
    """Malformed field specification or payload."""


@dataclass(frozen=True)
class FieldSpec:
    """Serializable description of a base field."""

    kind: str  # "Q" | "Fp" | "Fq"
    p: int = 0
    k: int = 1
    modulus: tuple[int, ...] = ()  # defining polynomial, low degree first, monic

    def to_json(self) -> dict:
        if self.kind == "Q":
            return {"field": "Q"}
        if self.kind == "Fp":
            return {"field": "Fp", "p": self.p}
        return {"field": "Fq", "p": self.p, "k": self.k, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> "FieldSpec":
        kind = obj.get("field")
        if kind == "Q":
            return cls("Q")
        if kind == "Fp":
            return cls("Fp", p=int(obj["p"]))
        if kind == "Fq":
            return cls("Fq", p=int(obj["p"]), k=int(obj["k"]),
                       modulus=tuple(int(c) for c in obj["modulus"]))
        raise FieldError(f"unknown field kind: {kind!r}")

    def make(self):
        if self.kind == "Q":
            return RationalField()
        if self.kind == "Fp":
            return PrimeField(self.p)
        if self.kind == "Fq":
            return ExtensionField(self.p, self.k, self.modulus)
        raise FieldError(f"unknown field kind: {self.kind!r}")


class RationalField:
    """The rationals; elements are ``fractions.Fraction``."""

    char = 0
    order = None
    generator = None

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)
        self.spec = FieldSpec("Q")

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def pow(self, a, n: int):
        return a**n

    def is_zero(self, a) -> bool:
        return a == 0

    def from_int(self, n: int):
        return Fraction(n)

    def render(self, a) -> str:
        return str(a)

    def random(self, rng, bound: int = 9):
        return Fraction(rng.randint(-bound, bound), rng.randint(1, 4))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


class PrimeField:
    """F_p; elements are ints in [0, p)."""

    def __init__(self, p: int):
        ok, _ = factoring.is_prime(p)
        if not ok:
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.order = p
        self.zero = 0
        self.one = 1 % p
        self.generator = None
        self.spec = FieldSpec("Fp", p=p)

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def pow(self, a, n: int):
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def from_int(self, n: int):
        return n % self.p

    def frobenius(self, a, power: int = 1):
        return pow(a, self.p**power, self.p)

    def in_prime_field(self, a) -> bool:
        return True

    def elements(self):
        return range(self.p)

    def render(self, a) -> str:
        return str(a % self.p)

    def random(self, rng, bound: int = 0):
        return rng.randrange(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


class ExtensionField:
    """F_{p^k} as F_p[t]/(modulus); elements are length-k tuples of ints.

    The residue class of t is exposed as ``generator`` and rendered as ``g``.
    """

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        base = PrimeField(p)
        if k < 2:
            raise FieldError("extension degree must be >= 2 (use Fp otherwise)")
        mod = tuple(c % p for c in modulus)
        while mod and mod[-1] == 0:
            mod = mod[:-1]
        if len(mod) != k + 1:
            raise FieldError(f"defining polynomial must have degree {k}")
        ok, why = factoring.is_irreducible_over_finite_field(base, mod)
        if not ok:
            raise FieldError(f"defining polynomial is reducible over F_{p}: {why}")
        self.p = p
        self.k = k
        self.modulus = mod
        self.base = base
        self.char = p
        self.order = p**k
        self.zero = (0,) * k
        self.one = tuple([1 % p] + [0] * (k - 1))
        self.generator = tuple([0, 1] + [0] * (k - 2))
        self.spec = FieldSpec("Fq", p=p, k=k, modulus=mod)

    def _norm(self, cs) -> tuple[int, ...]:
        cs = [c % self.p for c in cs]
        if len(cs) > self.k:
            cs = list(factoring.pmod(self.base, factoring._trim(self.base, cs), self.modulus))
        cs = cs + [0] * (self.k - len(cs))
        return tuple(cs[: self.k])

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def mul(self, a, b):
        prod = factoring.pmul(self.base, factoring._trim(self.base, list(a)),
                              factoring._trim(self.base, list(b)))
        return self._norm(list(prod))

    def inv(self, a):
        fa = factoring._trim(self.base, list(a))
        if not fa:
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid in F_p[t]
        r0, r1 = self.modulus, fa
        s0, s1 = (), (self.base.one,)
        while r1:
            q, r = factoring.pdivmod(self.base, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, factoring.psub(self.base, s0, factoring.pmul(self.base, q, s1))
        c = self.base.inv(r0[0])  # r0 is a nonzero constant
        return self._norm(list(factoring.pscale(self.base, c, s0)))

    def pow(self, a, n: int):
        if n < 0:
            a, n = self.inv(a), -n
        result = self.one
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def is_zero(self, a) -> bool:
        return all(c % self.p == 0 for c in a)

    def from_int(self, n: int):
        return tuple([n % self.p] + [0] * (self.k - 1))

    def frobenius(self, a, power: int = 1):
        return self.pow(a, self.p**power)

    def in_prime_field(self, a) -> bool:
        return all(c % self.p == 0 for c in a[1:])

    def elements(self):
        def rec(i):
            if i == self.k:
                yield ()
                return
            for rest in rec(i + 1):
                for c in range(self.p):
                    yield (c,) + rest

        return (tuple(e) for e in rec(0))

    def render(self, a) -> str:
        terms = []
        for i in range(self.k - 1, -1, -1):
            c = a[i] % self.p
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                gpow = "g" if i == 1 else f"g^{i}"
                terms.append(gpow if c == 1 else f"{c}*{gpow}")
        return " + ".join(terms) if terms else "0"

    def random(self, rng, bound: int = 0):
        return tuple(rng.randrange(self.p) for _ in range(self.k))

    def __eq__(self, other):
        return (isinstance(other, ExtensionField) and other.p == self.p
                and other.k == self.k and other.modulus == self.modulus)

    def __hash__(self):
        return hash(("Fq", self.p, self.k, self.modulus))


# canonical desk-scale instance used throughout the tests
F9_SPEC = FieldSpec("Fq", p=3, k=2, modulus=(1, 0, 1))  # t^2 + 1
