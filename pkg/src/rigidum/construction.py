"""Validation of designated irreducibles and construction of the module family.

The construction consumes gamma pairs (a, b) and a delta list of central
irreducibles, validates every hypothesis they must satisfy (Proven
irreducibility, structural primality, pairwise non-associateness, pairwise
comaximality with recorded witnesses), and then builds the selection-set
family: one component per choice of a-or-b out of every gamma pair, glued
over a chosen base component by one generator per non-base component with
denominators drawn from a nonempty delta subset.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .kernel import (DesignatedSet, IrreducibleTag, NotIrreducibleError,
                     bezout_witness, certify_irreducible, exact_divide_central,
                     prime_reason)
from .modules import GlueGenerator, GluedModule, LocalizationSum, make_glued
from .rings import Ring, RingElement, RingError

HARD_THETA_CAP = 64
MAX_KAPPA = 6


class ConstructionError(ValueError):
    """Inconsistent construction choices."""


@dataclass
class ValidationEntry:
    check: str
    status: str  # "ok" | "fail" | "warn"
    subject: str = ""
    detail: str = ""

    def to_json(self) -> dict:
        return {"check": self.check, "status": self.status,
                "subject": self.subject, "detail": self.detail}


@dataclass
class ValidationReport:
    entries: list[ValidationEntry] = field(default_factory=list)

    def add(self, check: str, status: str, subject: str = "", detail: str = ""):
        self.entries.append(ValidationEntry(check, status, subject, detail))

    @property
    def ok(self) -> bool:
        return all(e.status != "fail" for e in self.entries)

    def failures(self) -> list[ValidationEntry]:
        return [e for e in self.entries if e.status == "fail"]

    def to_json(self) -> dict:
        return {"ok": self.ok, "entries": [e.to_json() for e in self.entries]}


@dataclass
class ConstructionSpec:
    """Designated data plus its validation report."""

    designated: DesignatedSet
    report: ValidationReport
    gamma_elements: list[tuple[RingElement, RingElement]]
    delta_elements: list[RingElement]

    @property
    def ring(self) -> Ring:
        return self.designated.ring

    @property
    def kappa1(self) -> int:
        return len(self.gamma_elements)

    @property
    def kappa2(self) -> int:
        return len(self.delta_elements)

    @property
    def ok(self) -> bool:
        return self.report.ok

    def to_json(self) -> dict:
        ds = self.designated
        return {
            "ring": ds.ring.descriptor.to_json(),
            "gamma_pairs": [[a, b] for a, b in ds.gamma_pairs],
            "delta": list(ds.delta_ids),
            "tags": [ds.tags[i].to_json() for i in ds.ids()],
            "bezout": [
                {"pair": [i, j], "u": repr(u), "v": repr(v)}
                for (i, j), (u, v) in sorted(ds.bezout.items())
            ],
            "validation": self.report.to_json(),
        }


def build_spec(ring: Ring, gamma_elements: list[tuple[RingElement, RingElement]],
               delta_elements: list[RingElement]) -> ConstructionSpec:
    """Assemble and validate a construction spec; failures become report entries."""
    report = ValidationReport()
    ds = DesignatedSet(ring=ring)

    if len(gamma_elements) > MAX_KAPPA:
        report.add("kappa_cap", "fail", detail=f"kappa1 = {len(gamma_elements)} exceeds {MAX_KAPPA}")
    if len(delta_elements) > MAX_KAPPA:
        report.add("kappa_cap", "fail", detail=f"kappa2 = {len(delta_elements)} exceeds {MAX_KAPPA}")
    if not gamma_elements:
        report.add("degenerate", "warn", detail="kappa1 = 0: a single component and no glue")
    if not delta_elements:
        report.add("degenerate", "warn", detail="kappa2 = 0: no glue denominators, empty family")

    ordered: list[tuple[str, RingElement]] = []
    for i, (a, b) in enumerate(gamma_elements):
        ordered.append((f"gamma[{i}].a", a))
        ordered.append((f"gamma[{i}].b", b))
    for i, c in enumerate(delta_elements):
        ordered.append((f"delta[{i}]", c))

    role_ids: dict[str, str] = {}
    for role, elem in ordered:
        subject = f"{role} = {elem!r}"
        if elem.ring.descriptor != ring.descriptor:
            report.add("ring", "fail", subject, "element belongs to a different ring")
            continue
        if elem.is_zero():
            report.add("nonzero", "fail", subject, "designated element is zero")
            continue
        if elem.is_unit():
            report.add("non_unit", "fail", subject, "designated element is a unit")
            continue
        if not elem.is_central():
            report.add("central", "fail", subject, "designated element is not central")
            continue
        try:
            tag = certify_irreducible(elem)
        except NotIrreducibleError as exc:
            report.add("irreducible", "fail", subject, f"{exc} ({exc.witness})")
            continue
        if tag.certificate_kind != "Proven":
            report.add("irreducible", "fail", subject,
                       f"only an Asserted certificate is available: {tag.warning}")
            continue
        reason = prime_reason(tag)
        if reason is None:
            report.add("prime", "fail", subject, "no structural primality justification")
            continue
        report.add("designated", "ok", subject, f"Proven irreducible; prime: {reason}")
        if tag.id in ds.tags:
            report.add("distinct", "fail", subject, "duplicate designated element")
            continue
        ds.tags[tag.id] = tag
        role_ids[role] = tag.id

    for i in range(len(gamma_elements)):
        a_id = role_ids.get(f"gamma[{i}].a")
        b_id = role_ids.get(f"gamma[{i}].b")
        if a_id and b_id:
            ds.gamma_pairs.append((a_id, b_id))
    for i in range(len(delta_elements)):
        c_id = role_ids.get(f"delta[{i}]")
        if c_id:
            ds.delta_ids.append(c_id)

    ids = ds.ids()
    for i, id_a in enumerate(ids):
        for id_b in ids[i + 1:]:
            ea, eb = ds.element(id_a), ds.element(id_b)
            if ea.ring.are_associates(ea.data, eb.data):
                report.add("non_associate", "fail", f"({id_a}, {id_b})",
                           "designated elements are associates")
                continue
            try:
                got = bezout_witness(ea, eb)
            except (RingError, ZeroDivisionError) as exc:
                report.add("comaximal", "fail", f"({id_a}, {id_b})", str(exc))
                continue
            if got is None:
                report.add("comaximal", "fail", f"({id_a}, {id_b})",
                           "no Bezout witness exists in the commutative core")
                continue
            u, v = got
            ds.bezout[(id_a, id_b)] = (u, v)
            report.add("comaximal", "ok", f"({id_a}, {id_b})",
                       f"({u!r})*({id_a}) + ({v!r})*({id_b}) = 1")

    report.add("no_infinite_divisibility", "ok", "",
               "noetherian-style instance: no nonzero element is infinitely divisible")
    report.add("unit_ratio_central", "ok", "",
               "associates among central elements differ by a central unit, so "
               "left and right associateness coincide for all designated elements")

    ds.validated = report.ok
    return ConstructionSpec(ds, report, gamma_elements, delta_elements)


def validate_spec(spec: ConstructionSpec) -> ValidationReport:
    """Recompute every certificate and invariant from the raw elements."""
    fresh = build_spec(spec.ring, spec.gamma_elements, spec.delta_elements)
    spec.designated.validated = fresh.report.ok
    spec.report = fresh.report
    return fresh.report


# ---------------------------------------------------------------------------
# the selection-set family

@dataclass(frozen=True)
class ThetaSet:
    """One selection of a-or-b out of every gamma pair."""

    id: str  # e.g. "ab" = a from the first pair, b from the second
    selection: tuple[str, ...]

    @property
    def support(self) -> frozenset[str]:
        return frozenset(self.selection)


def theta_cap() -> int:
    env = os.environ.get("RIGIDUM_MAX_THETA")
    if env is None:
        return HARD_THETA_CAP
    try:
        return min(HARD_THETA_CAP, max(1, int(env)))
    except ValueError:
        return HARD_THETA_CAP


def build_theta(spec: ConstructionSpec) -> list[ThetaSet]:
    """All 2^kappa1 selection sets, lexicographic in the a/b choice bits."""
    if not spec.designated.validated:
        raise ConstructionError("spec has not passed validation")
    pairs = spec.designated.gamma_pairs
    k = len(pairs)
    if 2**k > theta_cap():
        raise ConstructionError(f"|Theta| = 2^{k} exceeds the cap {theta_cap()}")
    if k == 0:
        return [ThetaSet("o", ())]
    out = []
    for mask in range(2**k):
        bits = [(mask >> (k - 1 - i)) & 1 for i in range(k)]
        ident = "".join("b" if b else "a" for b in bits)
        selection = tuple(pairs[i][bits[i]] for i in range(k))
        out.append(ThetaSet(ident, selection))
    return out


@dataclass
class RigidSystemChoice:
    """Free choices of the glued construction; None selects the defaults.

    Defaults: the base is the all-a selection set, xi cycles through S in
    canonical order, and the glue elements are the coordinate-0 members of
    the component and base supports.
    """

    subset: list[str] = field(default_factory=list)  # S, ids from delta
    base: str | None = None
    xi_assignment: dict[str, str] | None = None
    ab_assignment: dict[str, tuple[RingElement, RingElement]] | None = None
    relax_ab: bool = False


def build_glued(spec: ConstructionSpec, choice: RigidSystemChoice,
                components_override: dict[str, list[str]] | None = None) -> GluedModule:
    """Build the glued module for one delta subset S.

    ``components_override`` replaces the selection-set supports and exists for
    negative-control experiments; overridden supports still have to consist
    of designated gamma-side ids.
    """
    ds = spec.designated
    if not ds.validated:
        raise ConstructionError("spec has not passed validation")
    S = list(choice.subset)
    if not S:
        raise ConstructionError("the glue subset S must be nonempty")
    for s in S:
        if s not in ds.delta_ids:
            raise ConstructionError(f"glue tag {s!r} is not in the delta set")

    theta = build_theta(spec)
    if components_override is not None:
        gamma_side = ds.gamma_ids()
        for comp, ids in components_override.items():
            bad = [i for i in ids if i not in gamma_side]
            if bad:
                raise ConstructionError(f"override support {bad} is not gamma-side designated")
        supports = {comp: frozenset(ids) for comp, ids in components_override.items()}
    else:
        supports = {t.id: t.support for t in theta}

    base = choice.base if choice.base is not None else sorted(supports)[0]
    if base not in supports:
        raise ConstructionError(f"base component {base!r} is not a component")

    non_base = [c for c in sorted(supports) if c != base]
    S_sorted = ds.sort_ids(S)
    xi_map = dict(choice.xi_assignment or {})
    for i, comp in enumerate(non_base):
        xi_map.setdefault(comp, S_sorted[i % len(S_sorted)])
    for comp, xi in xi_map.items():
        if xi not in S:
            raise ConstructionError(f"xi assignment {xi!r} at {comp!r} is outside S")

    def default_pick(comp: str) -> RingElement:
        ids = ds.sort_ids(supports[comp])
        if not ids:
            raise ConstructionError(f"component {comp!r} has empty support; no glue pick exists")
        return ds.element(ids[0])

    ab_map = dict(choice.ab_assignment or {})
    glue = []
    for comp in non_base:
        if comp in ab_map:
            a_elem, b_elem = ab_map[comp]
        else:
            a_elem, b_elem = default_pick(comp), default_pick(base)
        for name, elem, home in (("a", a_elem, comp), ("b", b_elem, base)):
            ident = repr(elem)
            designated_home = ds.has(ident) and ident in supports[home]
            if not designated_home and not choice.relax_ab:
                raise ConstructionError(
                    f"glue element {name} = {ident} at {comp!r} is not a designated member "
                    f"of the {home!r} support (pass relax_ab to allow it)")
            if not designated_home and not elem.is_central():
                raise ConstructionError(
                    f"relaxed glue element {ident} must be central for residue solving")
        glue.append(GlueGenerator(comp, xi_map[comp], a_elem, b_elem))

    label = ",".join(ds.sort_ids(S))
    module = make_glued(ds, {c: LocalizationSum(supports[c]) for c in supports},
                        base, glue, label=label)
    module.validate_shape()
    return module


def glue_precheck(spec: ConstructionSpec, module: GluedModule) -> list[dict]:
    """Record, per glue generator, whether xi divides the glue elements.

    With default choices xi lies off the gamma side so neither division
    succeeds; a successful division is the condition-3/4 sabotage that
    certification must name.
    """
    ds = spec.designated
    out = []
    for g in module.glue:
        xi_elem = ds.element(g.xi)
        for name, elem in (("a", g.a_elem), ("b", g.b_elem)):
            divisible = elem.is_zero() or exact_divide_central(elem, xi_elem) is not None
            out.append({"component": g.component, "element": name, "xi": g.xi,
                        "divisible": divisible})
    return out


def nonempty_subsets(spec: ConstructionSpec) -> list[list[str]]:
    """All nonempty delta subsets in canonical bitmask order."""
    ids = list(spec.designated.delta_ids)
    out = []
    for mask in range(1, 2 ** len(ids)):
        out.append([ids[i] for i in range(len(ids)) if mask & (1 << i)])
    return out


def build_family(spec: ConstructionSpec,
                 subsets: list[list[str]] | None = None,
                 choices: dict[str, RigidSystemChoice] | None = None) -> list[GluedModule]:
    """One glued module per nonempty delta subset."""
    ds = spec.designated
    subset_list = subsets if subsets is not None else nonempty_subsets(spec)
    seen = set()
    out = []
    for S in subset_list:
        key = frozenset(S)
        if key in seen:
            raise ConstructionError(f"duplicate subset {sorted(S)}")
        seen.add(key)
        label = ",".join(ds.sort_ids(S))
        choice = (choices or {}).get(label) or RigidSystemChoice(subset=list(S))
        choice.subset = list(S)
        out.append(build_glued(spec, choice))
    return out
