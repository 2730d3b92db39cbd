"""Irreducibility and factorization decision procedures.

Everything here is deterministic: integer primality uses trial division with
a deterministic Miller-Rabin fallback, and polynomial factorization over
finite fields uses squarefree / distinct-degree / equal-degree splitting with
a fixed candidate sweep instead of random splitting polynomials. Polynomials
are dense coefficient tuples (low degree first, no trailing zeros) over a
field object that provides ``zero``, ``one``, ``add``, ``neg``, ``mul``,
``inv``, ``is_zero``, ``char`` and, for finite fields, ``order`` and
``elements()``.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

# ---------------------------------------------------------------------------
# integer primality

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_TRIAL_BOUND = 1_000_000


def is_prime(n: int) -> tuple[bool, dict]:
    """Decide primality of ``|n|`` and return a checkable witness record."""
    n = abs(n)
    if n < 2:
        return False, {"method": "trivial", "value": n}
    for p in (2, 3):
        if n == p:
            return True, {"method": "trial_division", "bound": p}
        if n % p == 0:
            return False, {"method": "trial_division", "factor": p}
    limit = min(isqrt(n), _TRIAL_BOUND)
    d = 5
    while d <= limit:
        if n % d == 0:
            return False, {"method": "trial_division", "factor": d}
        if n % (d + 2) == 0:
            return False, {"method": "trial_division", "factor": d + 2}
        d += 6
    if isqrt(n) <= _TRIAL_BOUND:
        return True, {"method": "trial_division", "bound": isqrt(n)}
    # Deterministic Miller-Rabin; the base set decides all n < 3.3e24.
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False, {"method": "miller_rabin", "witness": a}
    return True, {"method": "miller_rabin", "bases": list(_MR_BASES)}


# ---------------------------------------------------------------------------
# dense polynomial arithmetic over a field object

def _trim(F, cs: list) -> tuple:
    while cs and F.is_zero(cs[-1]):
        cs.pop()
    return tuple(cs)


def pdeg(f: tuple) -> int:
    return len(f) - 1


def padd(F, f: tuple, g: tuple) -> tuple:
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else F.zero
        b = g[i] if i < len(g) else F.zero
        out.append(F.add(a, b))
    return _trim(F, out)


def pneg(F, f: tuple) -> tuple:
    return tuple(F.neg(c) for c in f)


def psub(F, f: tuple, g: tuple) -> tuple:
    return padd(F, f, pneg(F, g))


def pmul(F, f: tuple, g: tuple) -> tuple:
    if not f or not g:
        return ()
    out = [F.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if F.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return _trim(F, out)


def pscale(F, c, f: tuple) -> tuple:
    if F.is_zero(c):
        return ()
    return _trim(F, [F.mul(c, a) for a in f])


def pdivmod(F, f: tuple, g: tuple) -> tuple[tuple, tuple]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if len(f) < len(g):
        return (), f
    inv_lead = F.inv(g[-1])
    rem = list(f)
    q = [F.zero] * (len(f) - len(g) + 1)
    for k in range(len(f) - len(g), -1, -1):
        c = F.mul(rem[k + len(g) - 1], inv_lead)
        q[k] = c
        if not F.is_zero(c):
            for j, b in enumerate(g):
                rem[k + j] = F.add(rem[k + j], F.neg(F.mul(c, b)))
    return _trim(F, q), _trim(F, rem[: len(g) - 1])


def pmod(F, f: tuple, g: tuple) -> tuple:
    return pdivmod(F, f, g)[1]


def pmonic(F, f: tuple) -> tuple:
    if not f:
        return ()
    return pscale(F, F.inv(f[-1]), f)


def pgcd(F, f: tuple, g: tuple) -> tuple:
    while g:
        f, g = g, pmod(F, f, g)
    return pmonic(F, f)


def ppowmod(F, f: tuple, n: int, m: tuple) -> tuple:
    result = (F.one,)
    base = pmod(F, f, m)
    while n:
        if n & 1:
            result = pmod(F, pmul(F, result, base), m)
        base = pmod(F, pmul(F, base, base), m)
        n >>= 1
    return result


def pderiv(F, f: tuple) -> tuple:
    out = []
    for i in range(1, len(f)):
        c = f[i]
        acc = F.zero
        for _ in range(i):
            acc = F.add(acc, c)
        out.append(acc)
    return _trim(F, out)


def peval(F, f: tuple, x):
    acc = F.zero
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


# ---------------------------------------------------------------------------
# factorization over finite fields

def _pth_root(F, f: tuple) -> tuple:
    """Given f with zero derivative (f = g(x^p)), return g; finite F only."""
    p = F.char
    q = F.order
    out = []
    for i in range(0, len(f), p):
        # coefficient c of x^(p i) becomes c^(q/p) at x^i
        out.append(F.pow(f[i], q // p))
    return _trim(F, out)


def squarefree_part_factors(F, f: tuple) -> list[tuple[tuple, int]]:
    """Split monic f into squarefree factors with multiplicities (Yun-style)."""
    factors: list[tuple[tuple, int]] = []

    def rec(g: tuple, mult: int):
        if pdeg(g) < 1:
            return
        d = pderiv(F, g)
        if not d:
            rec(_pth_root(F, g), mult * F.char)
            return
        w = pgcd(F, g, d)
        s = pdivmod(F, g, w)[0]  # product of squarefree distinct factors
        i = 1
        while pdeg(s) >= 1:
            y = pgcd(F, s, w)
            part = pdivmod(F, s, y)[0]
            if pdeg(part) >= 1:
                factors.append((pmonic(F, part), mult * i))
            s = y
            w = pdivmod(F, w, y)[0]
            i += 1
        if pdeg(w) >= 1:
            rec(w, mult)

    rec(pmonic(F, f), 1)
    return factors


def distinct_degree_split(F, f: tuple) -> list[tuple[tuple, int]]:
    """Split squarefree monic f into products of irreducibles of equal degree.

    Returns pairs (product, degree of each irreducible factor in it).
    """
    q = F.order
    out = []
    x = (F.zero, F.one)
    h = x
    rest = f
    d = 0
    while pdeg(rest) >= 1:
        d += 1
        if 2 * d > pdeg(rest):
            out.append((rest, pdeg(rest)))
            break
        h = ppowmod(F, h, q, rest)
        g = pgcd(F, psub(F, h, pmod(F, x, rest)), rest)
        if pdeg(g) >= 1:
            out.append((g, d))
            rest = pdivmod(F, rest, g)[0]
            h = pmod(F, h, rest)
    return out


def _candidate_polys(F, max_deg: int):
    """Deterministic sweep of nonconstant monic-ish candidates for splitting."""
    elems = list(F.elements())
    for deg in range(1, max_deg + 1):
        idx = [0] * deg

        def build(idx):
            cs = [elems[i] for i in idx] + [F.one]
            return tuple(cs)

        while True:
            yield build(idx)
            j = 0
            while j < deg:
                idx[j] += 1
                if idx[j] < len(elems):
                    break
                idx[j] = 0
                j += 1
            if j == deg:
                break


def equal_degree_split(F, f: tuple, d: int) -> list[tuple]:
    """Fully split squarefree monic f whose irreducible factors all have degree d."""
    n = pdeg(f)
    if n == d:
        return [f]
    q = F.order
    found: list[tuple] = []

    def split(g: tuple):
        if pdeg(g) == d:
            found.append(g)
            return
        for t in _candidate_polys(F, pdeg(g) - 1):
            if F.char == 2:
                # trace map T(t) = t + t^2 + t^4 + ... + t^(q^d / 2) over GF(q^d)
                h = pmod(F, t, g)
                acc = h
                m, bits = q, 0
                while m > 1:
                    m //= 2
                    bits += 1
                cur = h
                for _ in range(d * bits - 1):
                    cur = pmod(F, pmul(F, cur, cur), g)
                    acc = padd(F, acc, cur)
                w = pgcd(F, acc, g)
            else:
                e = (q**d - 1) // 2
                h = ppowmod(F, t, e, g)
                w = pgcd(F, psub(F, h, (F.one,)), g)
            if 1 <= pdeg(w) < pdeg(g):
                split(w)
                split(pdivmod(F, g, w)[0])
                return
        raise RuntimeError("equal-degree split exhausted its candidate sweep")

    split(f)
    return sorted(found)


def factor_over_finite_field(F, f: tuple) -> list[tuple[tuple, int]]:
    """Full factorization of f over a finite field; returns (monic factor, mult)."""
    if pdeg(f) < 1:
        raise ValueError("cannot factor a constant")
    result: list[tuple[tuple, int]] = []
    for sqf, mult in squarefree_part_factors(F, f):
        for prod, d in distinct_degree_split(F, sqf):
            for irr in equal_degree_split(F, prod, d):
                result.append((irr, mult))
    return sorted(result)


def is_irreducible_over_finite_field(F, f: tuple) -> tuple[bool, dict]:
    """Deterministic irreducibility decision; witness names a factor on refutation."""
    n = pdeg(f)
    if n < 1:
        return False, {"method": "degree", "detail": "constant"}
    if n == 1:
        return True, {"method": "degree_one"}
    g = pmonic(F, f)
    if not pderiv(F, g):
        return False, {"method": "derivative_zero", "detail": "p-th power"}
    q = F.order
    x = (F.zero, F.one)
    h = x
    for d in range(1, n // 2 + 1):
        h = ppowmod(F, h, q, g)
        w = pgcd(F, psub(F, h, x), g)
        if pdeg(w) >= 1:
            return False, {"method": "distinct_degree", "factor_degree": pdeg(w)}
    return True, {"method": "distinct_degree", "sweep": n // 2}


# ---------------------------------------------------------------------------
# rationals: bounded irreducibility via the rational root argument

def rational_irreducible_low_degree(f: tuple[Fraction, ...]) -> tuple[bool, dict] | None:
    """Decide irreducibility over the rationals for degree <= 3; None if undecided."""
    n = len(f) - 1
    if n < 1:
        return False, {"method": "degree", "detail": "constant"}
    if n == 1:
        return True, {"method": "degree_one"}
    if n > 3:
        return None
    # clear denominators to a primitive integer polynomial
    from math import gcd, lcm

    den = lcm(*[c.denominator for c in f])
    ints = [int(c * den) for c in f]
    content = 0
    for c in ints:
        content = gcd(content, c)
    ints = [c // content for c in ints]
    a0, an = ints[0], ints[-1]
    if a0 == 0:
        return False, {"method": "rational_root", "root": "0"}

    def divisors(m: int) -> list[int]:
        m = abs(m)
        out = [d for d in range(1, isqrt(m) + 1) if m % d == 0]
        return sorted(set(out + [m // d for d in out]))

    for p in divisors(a0):
        for q in divisors(an):
            if gcd(p, q) != 1:
                continue
            for sign in (1, -1):
                num, dden = sign * p, q
                val = 0
                for i, c in enumerate(ints):
                    val += c * (num**i) * (dden ** (n - i))
                if val == 0:
                    return False, {"method": "rational_root", "root": f"{num}/{dden}"}
    # degree 2 or 3 with no rational root is irreducible over Q
    return True, {"method": "rational_root", "detail": "no root, degree <= 3"}
