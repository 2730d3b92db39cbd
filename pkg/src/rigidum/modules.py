"""Presentations of localization sums and glued modules, with decision
procedures for membership, divisibility, and infinite divisibility.

A ``LocalizationSum`` with support A stands for the submodule of the quotient
ring spanned by the inverses of the designated irreducibles in A; with the
pairwise comaximality witnesses recorded in the designated set, that module
is exactly the set of fractions whose denominator support lies in A, which
is what the membership test checks.

A ``GluedModule`` is the direct sum of such components enlarged by one glue
generator xi^-1 (a e_comp + b e_base) per non-base component. Membership is
decided by solving, per component, the residue equation that the glue
coefficient must satisfy modulo xi (Bezout-witness inversion), subtracting
the glue part, and checking that the remainder lies in the direct sum.
"""

from __future__ import annotations

from dataclasses import dataclass

from .central_fractions import (Fraction, VectorE, frac_divide_by_tag,
                                make_fraction, make_vector, normalize,
                                unit_vector, vec_scale)
from .kernel import DesignatedSet, bezout_witness, exact_divide_central
from .rings import RingElement, RingError

MEMBER = "MEMBER"
NOT_MEMBER = "NOT_MEMBER"
NOT_REPRESENTABLE = "NOT_REPRESENTABLE"


class ModuleDecisionError(ValueError):
    """Precondition failure of a module decision procedure."""


@dataclass(frozen=True)
class LocalizationSum:
    """Support set A of designated ids; empty support denotes the ground ring."""

    support: frozenset[str]

    def to_json(self, ctx: DesignatedSet) -> list[str]:
        return ctx.sort_ids(self.support)


@dataclass(frozen=True)
class GlueGenerator:
    component: str
    xi: str
    a_elem: RingElement
    b_elem: RingElement

    def to_json(self) -> dict:
        return {"component": self.component, "xi": self.xi,
                "a": repr(self.a_elem), "b": repr(self.b_elem)}


@dataclass(frozen=True)
class GluedModule:
    """Components, base component id, and exactly one glue generator per
    non-base component."""

    components: tuple[tuple[str, LocalizationSum], ...]
    base: str
    glue: tuple[GlueGenerator, ...]
    label: str = ""  # the subset S this module was built for, if any

    @property
    def comp_map(self) -> dict[str, LocalizationSum]:
        return dict(self.components)

    def component_ids(self) -> list[str]:
        return [c for c, _ in self.components]

    def glue_for(self, comp: str) -> GlueGenerator | None:
        for g in self.glue:
            if g.component == comp:
                return g
        return None

    def xi_ids(self) -> set[str]:
        return {g.xi for g in self.glue}

    def validate_shape(self):
        ids = set(self.component_ids())
        if self.base not in ids:
            raise ModuleDecisionError("base component missing from the component map")
        glue_ids = [g.component for g in self.glue]
        if sorted(glue_ids) != sorted(ids - {self.base}):
            raise ModuleDecisionError("glue generators must cover exactly the non-base components")

    def to_json(self, ctx: DesignatedSet) -> dict:
        return {
            "label": self.label,
            "base": self.base,
            "components": {c: sum_.to_json(ctx) for c, sum_ in self.components},
            "glue": [g.to_json() for g in self.glue],
        }


def make_glued(ctx: DesignatedSet, components: dict[str, LocalizationSum], base: str,
               glue: list[GlueGenerator], label: str = "") -> GluedModule:
    module = GluedModule(tuple(sorted(components.items())), base, tuple(
        sorted(glue, key=lambda g: g.component)), label)
    module.validate_shape()
    return module


def generator_vector(ctx: DesignatedSet, g: GlueGenerator, base: str) -> VectorE:
    """The glue generator xi^-1 (a e_comp + b e_base) as a vector."""
    a_part = make_fraction(ctx, g.a_elem, {g.xi: 1})
    b_part = make_fraction(ctx, g.b_elem, {g.xi: 1})
    return make_vector(ctx, {g.component: a_part, base: b_part}) if g.component != base \
        else make_vector(ctx, {base: a_part + b_part})


@dataclass(frozen=True)
class MembershipResult:
    status: str
    witness: tuple[tuple[str, RingElement], ...] = ()
    failing_component: str = ""
    reason: str = ""

    def __bool__(self) -> bool:
        return self.status == MEMBER

    @property
    def witness_map(self) -> dict[str, RingElement]:
        return dict(self.witness)

    def to_json(self) -> dict:
        return {"status": self.status,
                "witness": {c: repr(r) for c, r in self.witness},
                "failing_component": self.failing_component,
                "reason": self.reason}


def member_localization(f: Fraction, A: LocalizationSum, ctx: DesignatedSet) -> bool:
    """f lies in the localization sum iff its denominator support is in A."""
    f = normalize(f)
    for tag in f.support() | set(A.support):
        if not ctx.has(tag):
            raise ModuleDecisionError(f"tag {tag!r} is not designated")
    return f.support() <= set(A.support)


def _residue_inverse(ctx: DesignatedSet, elem: RingElement, mod_id: str) -> RingElement | None:
    """u with u * elem = 1 modulo the designated irreducible mod_id.

    Returns None when the residue of elem is zero (the modulus divides it),
    which makes the residue equation unsolvable; raises for glue elements
    outside the scope of Bezout-witness inversion.
    """
    ident = repr(elem)
    if ctx.has(ident) and ident != mod_id:
        return ctx.inverse_unit(ident, mod_id)
    if elem.is_zero():
        return None
    if not elem.is_central():
        raise ModuleDecisionError(
            f"glue element {elem!r} is outside the scope of residue solving "
            f"(central elements only)")
    mod_elem = ctx.element(mod_id)
    if elem.ring.are_associates(elem.data, mod_elem.data):
        return None  # the modulus divides the element
    got = bezout_witness(elem, mod_elem)
    return got[0] if got else None


def member_glued(x: VectorE, M: GluedModule, ctx: DesignatedSet) -> MembershipResult:
    """Decide x in M, with the glue-coefficient witness on success.

    Per non-base component the glue coefficient is unique modulo xi, so a
    single residue solve per component suffices; any lift works because
    shifting the coefficient by a multiple of xi moves the remainder inside
    the direct sum of the components.
    """
    if not ctx.validated:
        raise ModuleDecisionError("designated set has not been validated")
    comp_ids = set(M.component_ids())
    for comp in x.support():
        if comp not in comp_ids:
            return MembershipResult(NOT_REPRESENTABLE, failing_component=comp,
                                    reason="component outside the module index set")
    for _, f in x.components:
        for tag in f.support():
            if not ctx.has(tag):
                return MembershipResult(NOT_REPRESENTABLE, failing_component="",
                                        reason=f"denominator tag {tag!r} is not designated")

    witness: list[tuple[str, RingElement]] = []
    for g in M.glue:
        f = x.component(g.component)
        if f.is_zero():
            continue
        den = f.den_map
        delta_tags = [t for t in den if ctx.is_delta(t)]
        if not delta_tags:
            continue  # coefficient 0 modulo xi
        if set(delta_tags) != {g.xi}:
            return MembershipResult(
                NOT_MEMBER, failing_component=g.component,
                reason=f"denominator carries glue tags {sorted(set(delta_tags) - {g.xi})} "
                       f"not provided at this component")
        if den[g.xi] >= 2:
            return MembershipResult(
                NOT_MEMBER, failing_component=g.component,
                reason=f"glue tag {g.xi} appears with exponent {den[g.xi]} > 1")
        gamma_exps = {t: e for t, e in den.items() if t != g.xi}
        inv_monomial = ctx.monomial_inverse_unit(gamma_exps, g.xi)
        inv_a = _residue_inverse(ctx, g.a_elem, g.xi)
        if inv_a is None:
            return MembershipResult(
                NOT_MEMBER, failing_component=g.component,
                reason=f"residue equation modulo {g.xi} is unsolvable "
                       f"(glue element {g.a_elem!r} is not invertible)")
        r = f.num * (inv_monomial * inv_a)
        r = RingElement(ctx.ring, ctx.ring.reduce_mod_central(r.data, ctx.element(g.xi).data))
        if not r.is_zero():
            witness.append((g.component, r))

    y = x
    for comp, r in witness:
        g = M.glue_for(comp)
        y = y - vec_scale(r, generator_vector(ctx, g, M.base))
    for comp, f in y.components:
        A = M.comp_map[comp]
        outside = f.support() - set(A.support)
        if outside:
            return MembershipResult(
                NOT_MEMBER, failing_component=comp,
                reason=f"residual denominator support {ctx.sort_ids(outside)} lies outside "
                       f"the component support")
    return MembershipResult(MEMBER, witness=tuple(sorted(witness)))


def divides_in_localization(tag_id: str, f: Fraction, A: LocalizationSum,
                            ctx: DesignatedSet) -> bool:
    if not ctx.has(tag_id):
        raise ModuleDecisionError(f"tag {tag_id!r} is not designated")
    if not member_localization(f, A, ctx):
        raise ModuleDecisionError("element is not a member of the localization sum")
    return member_localization(frac_divide_by_tag(f, tag_id), A, ctx)


def divides_in_glued(tag_id: str, x: VectorE, M: GluedModule, ctx: DesignatedSet) -> bool:
    if not ctx.has(tag_id):
        raise ModuleDecisionError(f"tag {tag_id!r} is not designated")
    if not member_glued(x, M, ctx):
        raise ModuleDecisionError("element is not a member of the glued module")
    scaled = make_vector(ctx, {c: frac_divide_by_tag(f, tag_id) for c, f in x.components})
    return bool(member_glued(scaled, M, ctx))


def divides_in_module(tag_id: str, x, target, ctx: DesignatedSet) -> bool:
    """Divisibility of x by a designated irreducible inside the target module."""
    if isinstance(target, GluedModule):
        return divides_in_glued(tag_id, x, target, ctx)
    if isinstance(target, LocalizationSum):
        if isinstance(x, VectorE):
            raise ModuleDecisionError("localization sums decide single fractions")
        return divides_in_localization(tag_id, x, target, ctx)
    raise ModuleDecisionError(f"unsupported target {target!r}")


def tag_valuation(ctx: DesignatedSet, tag_id: str, elem: RingElement) -> int | None:
    """Largest n with tag^n dividing elem in the ground ring; None for zero."""
    if elem.is_zero():
        return None
    t = ctx.element(tag_id)
    v = 0
    cur = elem
    while True:
        q = exact_divide_central(cur, t)
        if q is None:
            return v
        cur = q
        v += 1


def divisibility_evidence(tag_id: str, f: Fraction, A: LocalizationSum,
                          ctx: DesignatedSet, depth: int = 8) -> dict:
    """Empirical record for the infinite-divisibility rule, depth-bounded.

    For a nonzero member and a tag outside A the observed maximal division
    depth must equal the tag valuation of the numerator (capped at depth);
    any mismatch with the structural rule is an implementation bug and
    raises.
    """
    if not member_localization(f, A, ctx):
        raise ModuleDecisionError("element is not a member of the localization sum")
    rule = f.is_zero() or tag_id in A.support
    observed = 0
    for n in range(1, depth + 1):
        if member_localization(frac_divide_by_tag(f, tag_id, n), A, ctx):
            observed = n
        else:
            break
    record = {"tag": tag_id, "rule": rule, "depth": depth, "max_observed": observed}
    if f.is_zero() or tag_id in A.support:
        consistent = observed == depth
        record["valuation"] = None
    else:
        v = tag_valuation(ctx, tag_id, f.num)
        record["valuation"] = v
        consistent = observed == min(depth, v)
    record["consistent"] = consistent
    if not consistent:
        raise RuntimeError(f"internal error: infinite-divisibility rule and empirical "
                           f"check disagree: {record}")
    return record


def infinitely_divisible(tag_id: str, f: Fraction, A: LocalizationSum,
                         ctx: DesignatedSet, depth: int = 8) -> bool:
    """True iff f = 0 or the tag lies in A; cross-checked empirically."""
    record = divisibility_evidence(tag_id, f, A, ctx, depth)
    return record["rule"]
