"""Fractions with designated central denominators, and finite-support vectors.

A ``Fraction`` is an element of the quotient ring written as m^{-1} * n where
m is a monomial in designated central irreducibles; since m is central this
equals n * m^{-1} and the usual commutative bookkeeping applies on the
denominator side even over noncommutative instances. A ``VectorE`` is a
finite-support map from component ids to fractions.

Both types are canonical: fractions are fully cancelled against their
denominator tags and vectors store no zero components, so equality is
structural.
"""

from __future__ import annotations

from dataclasses import dataclass

from .kernel import DesignatedSet, exact_divide_central
from .rings import RingElement, RingError


class FractionError(ValueError):
    """Non-designated tag or context mismatch."""


DenExponents = tuple[tuple[str, int], ...]  # ((tag id, exponent), ...) in spec order


@dataclass(frozen=True)
class Fraction:
    """num over a designated central denominator monomial, in canonical form."""

    ctx: DesignatedSet
    num: RingElement
    den: DenExponents = ()

    @property
    def den_map(self) -> dict[str, int]:
        return dict(self.den)

    def support(self) -> set[str]:
        return {t for t, _ in self.den}

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_integral(self) -> bool:
        return not self.den

    def __add__(self, other: "Fraction") -> "Fraction":
        return frac_add(self, other)

    def __sub__(self, other: "Fraction") -> "Fraction":
        return frac_add(self, frac_neg(other))

    def __neg__(self) -> "Fraction":
        return frac_neg(self)

    def __rmul__(self, r) -> "Fraction":
        if isinstance(r, (RingElement, int)):
            return frac_scale(r, self)
        return NotImplemented

    def __eq__(self, other) -> bool:
        return (isinstance(other, Fraction) and other.num == self.num
                and other.den == self.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        if not self.den:
            return repr(self.num)
        parts = []
        for tag, e in self.den:
            base = tag if _is_atom(tag) else f"({tag})"
            parts.append(base if e == 1 else f"{base}^{e}")
        den = "*".join(parts)
        if len(parts) > 1:
            den = f"({den})"
        num = repr(self.num)
        if " " in num or num.startswith("-"):
            num = f"({num})"
        return f"{num}/{den}"

    def to_json(self) -> dict:
        return {"num": repr(self.num),
                "den": [{"irr": t, "exp": e} for t, e in self.den]}


def _is_atom(text: str) -> bool:
    return all(ch not in text for ch in "+- *")


def _sorted_den(ctx: DesignatedSet, exps: dict[str, int]) -> DenExponents:
    for tag, e in exps.items():
        if not ctx.has(tag):
            raise FractionError(f"denominator tag {tag!r} is not designated")
        if e < 0:
            raise FractionError("denominator exponents must be nonnegative")
    return tuple((t, exps[t]) for t in ctx.sort_ids(exps) if exps[t] > 0)


def make_fraction(ctx: DesignatedSet, num: RingElement, den: dict[str, int] | None = None) -> Fraction:
    """Build and normalize a fraction from a numerator and denominator exponents."""
    if num.ring.descriptor != ctx.ring.descriptor:
        raise RingError("numerator belongs to a different ring")
    return normalize(Fraction(ctx, num, _sorted_den(ctx, den or {})))


def integral(ctx: DesignatedSet, num: RingElement) -> Fraction:
    return make_fraction(ctx, num)


def zero_fraction(ctx: DesignatedSet) -> Fraction:
    return Fraction(ctx, RingElement(ctx.ring, ctx.ring.zero), ())


def normalize(f: Fraction) -> Fraction:
    """Cancel denominator tags that exactly divide the numerator.

    Denominator elements are central primes, so the cancellation order is
    immaterial; the spec-order sweep below is for determinism only.
    """
    ctx = f.ctx
    num = f.num
    if num.is_zero():
        return zero_fraction(ctx)
    exps = dict(f.den)
    for tag in ctx.sort_ids(exps):
        element = ctx.element(tag)
        while exps[tag] > 0:
            q = exact_divide_central(num, element)
            if q is None:
                break
            num = q
            exps[tag] -= 1
    return Fraction(ctx, num, _sorted_den(ctx, exps))


def _common_den(f: Fraction, g: Fraction) -> dict[str, int]:
    out = dict(f.den)
    for tag, e in g.den:
        out[tag] = max(out.get(tag, 0), e)
    return out


def frac_add(f: Fraction, g: Fraction) -> Fraction:
    if f.ctx is not g.ctx and f.ctx.ring.descriptor != g.ctx.ring.descriptor:
        raise FractionError("fraction context mismatch")
    ctx = f.ctx
    lcm = _common_den(f, g)
    fmap, gmap = f.den_map, g.den_map
    mult_f = ctx.monomial_element({t: e - fmap.get(t, 0) for t, e in lcm.items()})
    mult_g = ctx.monomial_element({t: e - gmap.get(t, 0) for t, e in lcm.items()})
    num = mult_f * f.num + mult_g * g.num
    return normalize(Fraction(ctx, num, _sorted_den(ctx, lcm)))


def frac_neg(f: Fraction) -> Fraction:
    return Fraction(f.ctx, -f.num, f.den)


def frac_scale(r, f: Fraction) -> Fraction:
    """Left multiplication by r in the ground ring."""
    ctx = f.ctx
    if isinstance(r, int):
        r = RingElement(ctx.ring, ctx.ring.from_int(r))
    if r.ring.descriptor != ctx.ring.descriptor:
        raise RingError("scalar belongs to a different ring")
    return normalize(Fraction(ctx, r * f.num, f.den))


def frac_divide_by_tag(f: Fraction, tag: str, power: int = 1) -> Fraction:
    """The fraction tag^-power * f: bump the exponent, then renormalize."""
    exps = f.den_map
    exps[tag] = exps.get(tag, 0) + power
    return normalize(Fraction(f.ctx, f.num, _sorted_den(f.ctx, exps)))


@dataclass(frozen=True)
class VectorE:
    """Finite-support vector of fractions, indexed by component id strings."""

    ctx: DesignatedSet
    components: tuple[tuple[str, Fraction], ...] = ()

    @property
    def comp_map(self) -> dict[str, Fraction]:
        return dict(self.components)

    def support(self) -> set[str]:
        return {c for c, _ in self.components}

    def component(self, comp: str) -> Fraction:
        for c, f in self.components:
            if c == comp:
                return f
        return zero_fraction(self.ctx)

    def is_zero(self) -> bool:
        return not self.components

    def __add__(self, other: "VectorE") -> "VectorE":
        return vec_add(self, other)

    def __sub__(self, other: "VectorE") -> "VectorE":
        return vec_add(self, vec_scale(-1, other))

    def __rmul__(self, r) -> "VectorE":
        if isinstance(r, (RingElement, int)):
            return vec_scale(r, self)
        return NotImplemented

    def __eq__(self, other) -> bool:
        return isinstance(other, VectorE) and other.components == self.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self) -> str:
        if not self.components:
            return "0"
        return " + ".join(f"({f!r})*e[{c}]" for c, f in self.components)

    def to_json(self) -> dict:
        return {"components": {c: f.to_json() for c, f in self.components}}


def make_vector(ctx: DesignatedSet, parts: dict[str, Fraction]) -> VectorE:
    items = tuple((c, f) for c, f in sorted(parts.items()) if not f.is_zero())
    return VectorE(ctx, items)


def unit_vector(ctx: DesignatedSet, comp: str, f: Fraction) -> VectorE:
    return make_vector(ctx, {comp: f})


def vec_add(u: VectorE, v: VectorE) -> VectorE:
    parts = u.comp_map
    for c, f in v.components:
        parts[c] = frac_add(parts[c], f) if c in parts else f
    return make_vector(u.ctx, parts)


def vec_scale(r, u: VectorE) -> VectorE:
    return make_vector(u.ctx, {c: frac_scale(r, f) for c, f in u.components})


def vec_eq(u: VectorE, v: VectorE) -> bool:
    return u == v
