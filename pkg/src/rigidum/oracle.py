"""Brute-force membership oracle and the member_glued agreement suite.

The oracle decides membership without the Bezout-inversion shortcut that
``member_glued`` uses: for every glue generator it sweeps ALL candidate
residues for the glue coefficient (the coefficient only matters modulo xi,
and any valid choice leaves a remainder inside the direct sum), subtracts,
and checks denominator supports. Over the integer instances the sweep runs
on raw integer arithmetic, fully independent of the package's kernel; over
the localized instance it runs on stdlib rationals; over polynomial and
skew instances it enumerates candidate coefficient payloads with the raw
ring arithmetic, independent of the membership algorithm but not of the
arithmetic core.

``run_oracle_check`` drives two directions over a deterministic bounded
grid derived from the oracle bounds (coefficient bound C, denominator
exponent bound K): every generated combination of glue generators and base
fractions must be a member under both deciders, and on every grid point the
two deciders must agree exactly. The grid consists of all single-component
vectors and, for every glue generator, all pairs supported on its component
and the base: numerators sweep the full coefficient range on the glue side
and a fixed structured set on the base side, against a curated family of
denominator monomials (inside and outside the component support, glue tags
with exponents up to 2, and foreign tags).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as QQ
from itertools import product

from .central_fractions import Fraction, VectorE, make_fraction, make_vector
from .construction import ConstructionSpec
from .kernel import DesignatedSet
from .modules import GluedModule, member_glued, member_localization
from .rings import (IntegerRing, IntPolyRing, LocalizedIntegerRing, PolyRing,
                    RingElement, SkewPolyRing)


@dataclass
class OracleBounds:
    coeff: int = 30
    exp: int = 2
    depth: int = 8
    residue_cap: int = 200_000

    def to_json(self) -> dict:
        return {"coeff": self.coeff, "exp": self.exp, "depth": self.depth}


class OracleCapacityError(ValueError):
    """The residue sweep would exceed the configured cap."""


# ---------------------------------------------------------------------------
# integer decider (raw int arithmetic, independent of the kernel)

class _IntDecider:
    def __init__(self, M: GluedModule, ds: DesignatedSet, bounds: OracleBounds):
        self.M = M
        self.bounds = bounds
        self.prime = {t: abs(int(ds.element(t).data)) for t in ds.ids()}
        self.outside = {comp: {self.prime[t] for t in self.prime
                               if t not in A.support}
                        for comp, A in M.components}
        self.glue = [(g.component, self.prime[g.xi], int(g.a_elem.data),
                      int(g.b_elem.data)) for g in M.glue]

    @staticmethod
    def _clears(N: int, exps: list[tuple[int, int]]) -> bool:
        """v_p(N) >= e for every (p, e); zero clears everything."""
        if N == 0:
            return True
        for p, e in exps:
            for _ in range(e):
                if N % p:
                    return False
                N //= p
        return True

    def _component_exps(self, comp: str, f: Fraction, extra_primes: dict[int, int]):
        """Denominator prime exponents of f combined with extra glue poles,
        keeping only primes outside the component support."""
        exps: dict[int, int] = {}
        for t, e in f.den:
            exps[self.prime[t]] = e
        for p, e in extra_primes.items():
            exps[p] = max(exps.get(p, 0), e)
        outside = self.outside[comp]
        return exps, [(p, e) for p, e in sorted(exps.items()) if p in outside]

    def decide(self, x: VectorE) -> bool:
        M = self.M
        vals = {comp: (0, {}) for comp, _ in M.components}  # numerator, den exps
        for comp, f in x.components:
            den = {self.prime[t]: e for t, e in f.den}
            vals[comp] = (int(f.num.data), den)

        candidate_sets: list[list[int]] = []
        total = 1
        for comp, xi, a_val, _ in self.glue:
            n, den = vals[comp]
            lden = dict(den)
            lden[xi] = max(lden.get(xi, 0), 1)
            scale_f = 1
            for p, e in lden.items():
                scale_f *= p ** (e - den.get(p, 0))
            dxi = 1
            for p, e in lden.items():
                dxi *= p ** (e - (1 if p == xi else 0))
            outside = [(p, e) for p, e in sorted(lden.items())
                       if p in self.outside[comp]]
            passing = [r for r in range(xi)
                       if self._clears(n * scale_f - r * a_val * dxi, outside)]
            candidate_sets.append(passing)
            total *= max(1, len(passing))
            if total > self.bounds.residue_cap:
                raise OracleCapacityError("residue sweep exceeds the configured cap")
            if not passing:
                return False

        n0, den0 = vals[M.base]
        base_exps = dict(den0)
        for _, xi, _, _ in self.glue:
            base_exps[xi] = max(base_exps.get(xi, 0), 1)
        L = 1
        for p, e in base_exps.items():
            L *= p**e
        D0 = 1
        for p, e in den0.items():
            D0 *= p**e
        outside0 = [(p, e) for p, e in sorted(base_exps.items())
                    if p in self.outside[M.base]]
        for combo in product(*candidate_sets):
            N = n0 * (L // D0)
            for (comp, xi, _, b_val), r in zip(self.glue, combo):
                N -= r * b_val * (L // xi)
            if self._clears(N, outside0):
                return True
        return False


# ---------------------------------------------------------------------------
# localized decider (stdlib rationals)

class _RationalDecider:
    def __init__(self, M: GluedModule, ds: DesignatedSet, bounds: OracleBounds):
        self.M = M
        self.ds = ds
        self.bounds = bounds
        self.prime_of = {t: self._int_core(QQ(ds.element(t).data)) for t in ds.ids()}
        self.designated = sorted(set(self.prime_of.values()))
        self.allowed = {comp: {self.prime_of[t] for t in A.support}
                        for comp, A in M.components}
        self.values = {t: QQ(ds.element(t).data) for t in ds.ids()}

    @staticmethod
    def _int_core(v: QQ) -> int:
        return abs(v.numerator)

    def _den_ok(self, value: QQ, comp: str) -> bool:
        d = value.denominator
        allowed = self.allowed[comp]
        for p in self.designated:
            if p not in allowed and d % p == 0:
                return False
        return True

    def _value(self, f: Fraction) -> QQ:
        v = QQ(f.num.data)
        for t, e in f.den:
            v /= self.values[t] ** e
        return v

    def decide(self, x: VectorE) -> bool:
        M = self.M
        vals = {comp: QQ(0) for comp, _ in M.components}
        for comp, f in x.components:
            vals[comp] = self._value(f)
        candidate_sets = []
        rows = []
        total = 1
        for g in M.glue:
            xi_q = self.values[g.xi]
            xi = self.prime_of[g.xi]
            a_val = QQ(g.a_elem.data)
            b_val = QQ(g.b_elem.data)
            rows.append((g.component, xi_q, a_val, b_val))
            f = vals[g.component]
            passing = [r for r in range(xi)
                       if self._den_ok(f - QQ(r) * a_val / xi_q, g.component)]
            candidate_sets.append(passing)
            total *= max(1, len(passing))
            if total > self.bounds.residue_cap:
                raise OracleCapacityError("residue sweep exceeds the configured cap")
            if not passing:
                return False
        for combo in product(*candidate_sets):
            base_val = vals[M.base]
            for (comp, xi_q, a_val, b_val), r in zip(rows, combo):
                base_val -= QQ(r) * b_val / xi_q
            if self._den_ok(base_val, M.base):
                return True
        return False


# ---------------------------------------------------------------------------
# polynomial / skew decider (residue payload sweep on ring arithmetic)

class _SweepDecider:
    def __init__(self, M: GluedModule, ds: DesignatedSet, bounds: OracleBounds):
        self.M = M
        self.ds = ds
        self.bounds = bounds

    def _residue_candidates(self, xi_id: str, hint) -> list:
        ds = self.ds
        ring = ds.ring
        xi = ds.element(xi_id).data
        if isinstance(ring, PolyRing):
            deg = len(xi) - 1
            fld = ring.field
            if fld.order is None:
                raise OracleCapacityError("infinite residue field; sweep impossible")
            if fld.order ** deg > self.bounds.residue_cap:
                raise OracleCapacityError("residue sweep exceeds the configured cap")
            cands = [()]
            for _ in range(deg):
                cands = [c + (e,) for c in cands for e in fld.elements()]
            out = set()
            for c in cands:
                cs = list(c)
                while cs and fld.is_zero(cs[-1]):
                    cs.pop()
                out.add(tuple(cs))
            return sorted(out)
        if isinstance(ring, SkewPolyRing):
            ydeg, xdeg = hint
            coeff = ring.coeff
            if isinstance(coeff, IntPolyRing):
                p = abs(xi[0][0])
                inner = [()]
                for _ in range(xdeg + 1):
                    inner = [c + (e,) for c in inner for e in range(p)]
                coeff_cands = sorted({coeff._trim(list(c)) for c in inner})
            else:
                from . import factoring
                fld = coeff.field
                width = max(len(xi[0]) - 1, xdeg + 1)
                inner = [()]
                for _ in range(width):
                    inner = [c + (e,) for c in inner for e in fld.elements()]
                coeff_cands = sorted({factoring._trim(fld, list(c)) for c in inner})
            if len(coeff_cands) ** (ydeg + 1) > self.bounds.residue_cap:
                raise OracleCapacityError("residue sweep exceeds the configured cap")
            cands = [()]
            for _ in range(ydeg + 1):
                cands = [c + (e,) for c in cands for e in coeff_cands]
            return sorted({ring._trim(list(c)) for c in cands})
        raise OracleCapacityError(f"no residue sweep for ring kind {ring.descriptor.kind!r}")

    def decide(self, x: VectorE) -> bool:
        M, ds = self.M, self.ds
        ring = ds.ring
        candidate_sets = []
        gens = []
        for g in M.glue:
            f = x.component(g.component)
            if isinstance(ring, SkewPolyRing):
                w = f.num.data
                ydeg = max(len(w) - 1, 0)
                xdeg = 0
                for c in w:
                    xdeg = max(xdeg, len(c) - 1)
                hint = (ydeg, xdeg)
            else:
                hint = None
            a_over_xi = make_fraction(ds, g.a_elem, {g.xi: 1})
            passing = []
            for c in self._residue_candidates(g.xi, hint):
                r = RingElement(ring, c)
                cand = f - (r * a_over_xi)
                if member_localization(cand, M.comp_map[g.component], ds):
                    passing.append(r)
            if not passing:
                return False
            candidate_sets.append(passing)
            gens.append(g)
        for combo in product(*candidate_sets):
            base = x.component(M.base)
            for g, r in zip(gens, combo):
                base = base - (r * make_fraction(ds, g.b_elem, {g.xi: 1}))
            if member_localization(base, M.comp_map[M.base], ds):
                return True
        return False


def make_decider(M: GluedModule, spec: ConstructionSpec, bounds: OracleBounds):
    ds = spec.designated
    ring = ds.ring
    if isinstance(ring, IntegerRing):
        return _IntDecider(M, ds, bounds)
    if isinstance(ring, LocalizedIntegerRing):
        return _RationalDecider(M, ds, bounds)
    return _SweepDecider(M, ds, bounds)


def oracle_member(x: VectorE, M: GluedModule, spec: ConstructionSpec,
                  bounds: OracleBounds) -> bool:
    """Independent membership decision by bounded residue sweep."""
    if any(comp not in M.comp_map for comp in x.support()):
        return False
    return make_decider(M, spec, bounds).decide(x)


# ---------------------------------------------------------------------------
# bounded generation (soundness direction)

def _den_monomials(ds: DesignatedSet, tags: list[str], K: int) -> list[dict[str, int]]:
    outs: list[dict[str, int]] = [{}]
    for t in tags:
        outs = [dict(m, **({t: e} if e else {})) for m in outs for e in range(K + 1)]
    return outs


def _base_numerators(ring, C: int) -> list:
    out = [ring.from_int(n) for n in range(-C, C + 1) if n]
    for name in ("x", "y"):
        sym = ring.symbol(name)
        if sym is not None:
            out.append(sym)
            out.append(ring.add(sym, ring.one))
    return out


def generate_members(M: GluedModule, spec: ConstructionSpec, bounds: OracleBounds,
                     limit: int = 20_000):
    """Deterministic bounded combinations r*g + base, all true members."""
    from .modules import generator_vector

    ds = spec.designated
    ring = ds.ring
    C, K = bounds.coeff, bounds.exp
    count = 0
    small = [ring.from_int(n) for n in (-2, -1, 1, 2, 3)]
    for comp, A in M.components:
        tags = ds.sort_ids(A.support)
        for num in _base_numerators(ring, min(C, 8)):
            for den in _den_monomials(ds, tags, K):
                yield make_vector(ds, {comp: make_fraction(ds, RingElement(ring, num), den)})
                count += 1
                if count >= limit:
                    return
    for g in M.glue:
        gv = generator_vector(ds, g, M.base)
        for n in range(-C, C + 1):
            yield RingElement(ring, ring.from_int(n)) * gv
            count += 1
            if count >= limit:
                return
        tags_c = ds.sort_ids(M.comp_map[g.component].support)
        tags_b = ds.sort_ids(M.comp_map[M.base].support)
        for r in small:
            rx = RingElement(ring, r) * gv
            for nc in small:
                for den_c in _den_monomials(ds, tags_c, 1):
                    for nb in small:
                        for den_b in _den_monomials(ds, tags_b, 1):
                            yield rx + make_vector(ds, {
                                g.component: make_fraction(ds, RingElement(ring, nc), den_c),
                                M.base: make_fraction(ds, RingElement(ring, nb), den_b)})
                            count += 1
                            if count >= limit:
                                return


# ---------------------------------------------------------------------------
# the agreement grid

_SECONDARY_NUMERATORS = (-30, -22, -13, -11, -6, -5, -4, -3, -2, -1,
                         1, 2, 3, 4, 5, 6, 11, 13, 22, 30)


def _grid_denominators(ds: DesignatedSet, M: GluedModule, comp: str, K: int,
                       secondary: bool = False) -> list[dict[str, int]]:
    A = ds.sort_ids(M.comp_map[comp].support)
    gamma = ds.sort_ids(ds.gamma_ids())
    foreign_gamma = next((t for t in gamma if t not in A), None)
    if comp == M.base:
        xis = ds.sort_ids(M.xi_ids())
    else:
        xis = [M.glue_for(comp).xi]
    foreign_delta = next((t for t in ds.delta_ids if t not in M.xi_ids()), None)
    dens: list[dict[str, int]] = [{}]
    if A:
        d1 = A[0]
        dens.append({d1: 1})
        if not secondary:
            dens.append({d1: K})
        if len(A) > 1:
            dens.append({A[0]: 1, A[1]: 1})
    for xi in xis:
        dens.append({xi: 1})
        if not secondary:
            dens.append({xi: 2})
        if A:
            dens.append({xi: 1, A[0]: 1})
    if foreign_gamma:
        dens.append({foreign_gamma: 1})
        if not secondary and xis:
            dens.append({foreign_gamma: 1, xis[0]: 1})
    if foreign_delta and not secondary:
        dens.append({foreign_delta: 1})
    seen: list[dict[str, int]] = []
    for d in dens:
        if d not in seen:
            seen.append(d)
    return seen


def _grid_numerators(ring, values) -> list:
    return [ring.from_int(n) for n in values if n != 0]


def agreement_grid(M: GluedModule, spec: ConstructionSpec, bounds: OracleBounds):
    """Deterministic grid: singles on every component, pairs on every glue pair."""
    ds = spec.designated
    ring = ds.ring
    C, K = bounds.coeff, bounds.exp
    primary = _grid_numerators(ring, range(-C, C + 1))
    secondary = _grid_numerators(ring, [n for n in _SECONDARY_NUMERATORS if abs(n) <= max(C, 13)])
    if not ring.commutative:
        x_sym = ring.symbol("x")
        y_sym = ring.symbol("y")
        extra = [ring.add(x_sym, ring.from_int(2)), y_sym,
                 ring.add(ring.mul(x_sym, y_sym), ring.one)]
        primary = _grid_numerators(ring, range(-9, 10)) + extra
        secondary = _grid_numerators(ring, range(-5, 6)) + extra[:1]
    elif isinstance(ring, PolyRing):
        x_sym = ring.symbol("x")
        extra = [ring.add(x_sym, ring.one), ring.mul(x_sym, x_sym)]
        primary = _grid_numerators(ring, range(-min(C, 9), min(C, 9) + 1)) + extra
        secondary = _grid_numerators(ring, range(-4, 5)) + extra[:1]

    yield make_vector(ds, {})
    for comp, _ in M.components:
        for den in _grid_denominators(ds, M, comp, K):
            for n in primary:
                yield make_vector(ds, {comp: make_fraction(ds, RingElement(ring, n), den)})
    for g in M.glue:
        dens_c = _grid_denominators(ds, M, g.component, K)
        dens_b = _grid_denominators(ds, M, M.base, K, secondary=True)
        for den_c in dens_c:
            for nc in primary:
                fc = make_fraction(ds, RingElement(ring, nc), den_c)
                for den_b in dens_b:
                    for nb in secondary:
                        yield make_vector(ds, {
                            g.component: fc,
                            M.base: make_fraction(ds, RingElement(ring, nb), den_b)})


# ---------------------------------------------------------------------------
# the agreement run

@dataclass
class OracleReport:
    module: str
    bounds: OracleBounds
    generated_checked: int = 0
    generated_failures: list = field(default_factory=list)
    grid_points: int = 0
    grid_members: int = 0
    disagreements: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.generated_failures and not self.disagreements

    def to_json(self) -> dict:
        return {"module": self.module, "bounds": self.bounds.to_json(),
                "generated_checked": self.generated_checked,
                "generated_failures": self.generated_failures,
                "grid_points": self.grid_points, "grid_members": self.grid_members,
                "disagreements": self.disagreements, "ok": self.ok}


def run_oracle_check(M: GluedModule, spec: ConstructionSpec,
                     bounds: OracleBounds, generation_limit: int = 20_000) -> OracleReport:
    report = OracleReport(M.label, bounds)
    ds = spec.designated
    decider = make_decider(M, spec, bounds)
    for x in generate_members(M, spec, bounds, generation_limit):
        report.generated_checked += 1
        direct = bool(member_glued(x, M, ds))
        indep = decider.decide(x)
        if not (direct and indep):
            report.generated_failures.append(
                {"vector": repr(x), "member_glued": direct, "oracle": indep})
    for v in agreement_grid(M, spec, bounds):
        report.grid_points += 1
        direct = bool(member_glued(v, M, ds))
        indep = decider.decide(v)
        if direct:
            report.grid_members += 1
        if direct != indep:
            report.disagreements.append(
                {"vector": repr(v), "member_glued": direct, "oracle": indep})
    return report
