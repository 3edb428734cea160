"""Exact roots in Q(i) of polynomials over Q(i).

Roots are found p-adically: embed Z[i] into Z/p^k through both square roots of -1
modulo a prime p = 1 (mod 4), lift the simple roots mod p with Newton iteration,
pair the two embeddings to recover real and imaginary parts, rationally
reconstruct them, and keep only candidates that are exact roots.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from slocc2mn.exactmath.gaussrat import GaussRat
from slocc2mn.exactmath.poly import UniPoly, squarefree_part


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def _primes_1mod4(start: int = 1009):
    n = start
    while True:
        if n % 4 == 1 and _is_prime(n):
            yield n
        n += 1


def _sqrt_minus_one(p: int) -> int:
    for a in range(2, p):
        s = pow(a, (p - 1) // 4, p)
        if s * s % p == p - 1:
            return s
    raise ArithmeticError(f"no sqrt(-1) mod {p}")


def _lift_sqrt_minus_one(s: int, mod: int) -> int:
    for _ in range(200):
        err = (s * s + 1) % mod
        if err == 0:
            return s
        s = (s - err * pow(2 * s, -1, mod)) % mod
    raise ArithmeticError("Hensel lift of sqrt(-1) did not converge")


def _eval_mod(coeffs: list[int], x: int, mod: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % mod
    return acc


def _poly_mod_gcd_is_one(coeffs: list[int], p: int) -> bool:
    """True iff gcd(f, f') = 1 over F_p (f has invertible leading coefficient)."""

    def strip(a):
        while a and a[-1] % p == 0:
            a.pop()
        return a

    a = strip([c % p for c in coeffs])
    b = strip([(k * c) % p for k, c in enumerate(coeffs)][1:])
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            f = a[-1] * inv % p
            shift = len(a) - len(b)
            for j, bc in enumerate(b):
                a[shift + j] = (a[shift + j] - f * bc) % p
            strip(a)
            if not a:
                break
        a, b = b, a
    return len(a) == 1


def _ratrecon(u: int, mod: int, nbound: int, dbound: int) -> Fraction | None:
    r0, r1 = mod, u % mod
    t0, t1 = 0, 1
    while r1 > nbound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > dbound or gcd(r1, abs(t1)) != 1:
        return None
    return Fraction(r1, t1)


def _candidate_roots(g: UniPoly) -> set[GaussRat]:
    den = 1
    for c in g.coeffs:
        den = den * c.re.denominator // gcd(den, c.re.denominator)
        den = den * c.im.denominator // gcd(den, c.im.denominator)
    re_c = [int(c.re * den) for c in g.coeffs]
    im_c = [int(c.im * den) for c in g.coeffs]
    height = max(isqrt(a * a + b * b) + 1 for a, b in zip(re_c, im_c))
    lead = re_c[-1]  # g is monic, so the scaled leading coefficient is the real integer den
    dbound = lead * lead
    nbound = (1 + height) * dbound
    need = 2 * nbound * dbound

    for p in _primes_1mod4():
        if lead % p == 0:
            continue
        s = _sqrt_minus_one(p)
        emb = [[(a + sign * s * b) % p for a, b in zip(re_c, im_c)] for sign in (1, -1)]
        if not all(_poly_mod_gcd_is_one(e, p) for e in emb):
            continue
        k = 1
        mod = p
        while mod <= need:
            k *= 2
            mod = p ** k
        s_k = _lift_sqrt_minus_one(s, mod)
        lifted = []
        for sign in (1, -1):
            coeffs = [(a + sign * s_k * b) % mod for a, b in zip(re_c, im_c)]
            dcoeffs = [(j * c) % mod for j, c in enumerate(coeffs)][1:]
            roots = []
            for r in range(p):
                if _eval_mod(coeffs, r, p) != 0:
                    continue
                x = r
                for _ in range(2 * k + 8):
                    fx = _eval_mod(coeffs, x, mod)
                    if fx == 0:
                        break
                    x = (x - fx * pow(_eval_mod(dcoeffs, x, mod), -1, mod)) % mod
                roots.append(x)
            lifted.append(roots)
        inv2 = pow(2, -1, mod)
        inv2s = pow(2 * s_k, -1, mod)
        found = set()
        for r1 in lifted[0]:
            for r2 in lifted[1]:
                x = _ratrecon((r1 + r2) * inv2 % mod, mod, nbound, dbound)
                y = _ratrecon((r1 - r2) * inv2s % mod, mod, nbound, dbound)
                if x is None or y is None:
                    continue
                cand = GaussRat(x, y)
                if g(cand).is_zero():
                    found.add(cand)
        return found
    raise AssertionError("unreachable: prime search is unbounded")


def roots_in_field(p: UniPoly) -> tuple[dict[GaussRat, int], bool]:
    """All roots of ``p`` lying in Q(i) with multiplicities, and whether p splits completely."""
    if p.is_zero():
        raise ValueError("roots of the zero polynomial are undefined")
    if p.degree == 0:
        return {}, True
    g = squarefree_part(p)
    if g.degree == 1:
        cands = {-g.coeffs[0]}
    else:
        cands = _candidate_roots(g)
    out: dict[GaussRat, int] = {}
    for r in sorted(cands, key=GaussRat.sort_key):
        lin = UniPoly([-r, 1])
        q = p
        mult = 0
        while True:
            quo, rem = divmod(q, lin)
            if not rem.is_zero():
                break
            mult += 1
            q = quo
        out[r] = mult
    return out, sum(out.values()) == p.degree
