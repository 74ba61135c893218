"""Elementary number theory helpers: symbols, local squares, unit groups.

Everything is exact integer arithmetic on small inputs; no probabilistic
primality or factoring shortcuts.
"""

from __future__ import annotations

from math import gcd, isqrt


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_up_to(bound: int) -> list[int]:
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, isqrt(bound) + 1):
        if sieve[p]:
            sieve[p * p::p] = b"\x00" * len(sieve[p * p::p])
    return [i for i, b in enumerate(sieve) if b]


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| by trial division."""
    n = abs(n)
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def squarefree_part(n: int) -> int:
    if n == 0:
        raise ValueError("squarefree part of zero")
    sign = -1 if n < 0 else 1
    out = sign
    for p, e in factorize(n).items():
        if e % 2:
            out *= p
    return out


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) for odd prime p."""
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n)."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -sign
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            sign = -sign
    a %= n
    # Jacobi on the odd part
    result = sign
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def least_nonresidue(p: int) -> int:
    """Least positive quadratic nonresidue mod an odd prime."""
    for u in range(2, p):
        if legendre(u, p) == -1:
            return u
    raise ValueError("no nonresidue found (p must be an odd prime > 2)")


def is_local_square(a: int, place) -> bool:
    """Is the nonzero integer a a square in the completion at the place?

    place is "inf", 2, or an odd prime.
    """
    if a == 0:
        raise ValueError("zero has no square class")
    if place == "inf":
        return a > 0
    p = int(place)
    v = valuation(a, p)
    if v % 2:
        return False
    u = a // p ** v
    if p == 2:
        return u % 8 == 1
    return legendre(u, p) == 1


def sqrt_mod_prime(a: int, p: int) -> int:
    """A square root of a mod odd prime p (Tonelli-Shanks); a must be a QR."""
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        raise ValueError("not a quadratic residue")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = least_nonresidue(p)
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = tt * tt % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t = t * c % p
        r = r * b % p
    return r


def sqrt_mod_prime_power(a: int, p: int, k: int) -> int:
    """Hensel-lifted square root mod p^k (odd p, a a unit square mod p)."""
    x = sqrt_mod_prime(a, p)
    mod = p
    while mod < p ** k:
        mod *= p
        # Newton step: x <- x - (x^2 - a) / (2x)
        inv = pow(2 * x % mod, -1, mod)
        x = (x - (x * x - a) * inv) % mod
    return x % p ** k


def sqrt_2adic(a: int, k: int) -> int:
    """Square root of a in Z_2 mod 2^k; a must be 1 mod 8 (up to 4-powers)."""
    v = valuation(a, 2)
    if v % 2:
        raise ValueError("not a 2-adic square")
    u = a >> v
    if u % 8 != 1:
        raise ValueError("not a 2-adic square")
    mod = 8
    x = 1
    while mod < 2 ** (k + 1):
        mod <<= 1
        if (x * x - u) % (2 * mod) != 0:
            x += mod // 2
    return (x << (v // 2)) % (2 ** k)


def unit_group_structure(m: int) -> list[tuple[int, int]]:
    """Generators with orders for (Z/m)^*, via CRT over prime powers.

    Returns [(g_i, n_i)] with (Z/m)^* the internal direct product of the
    cyclic groups <g_i> of order n_i.
    """
    if m == 1:
        return []
    parts = []
    fac = factorize(m)
    for p, e in sorted(fac.items()):
        pe = p ** e
        rest = m // pe
        if p == 2:
            if e == 1:
                continue
            gens = [(-1 % pe, 2)] if e >= 2 else []
            if e >= 3:
                gens = [(-1 % pe, 2), (5, 2 ** (e - 2))]
            elif e == 2:
                gens = [(3, 2)]
            for g, order in gens:
                parts.append((_crt_lift(g, pe, rest), order))
        else:
            g = _primitive_root(pe, p)
            parts.append((_crt_lift(g, pe, rest), (p - 1) * p ** (e - 1)))
    return parts


def _crt_lift(g: int, pe: int, rest: int) -> int:
    """Residue that is g mod pe and 1 mod rest."""
    if rest == 1:
        return g % pe
    m = pe * rest
    inv_pe = pow(pe, -1, rest)
    inv_rest = pow(rest, -1, pe)
    x = (g * rest * inv_rest + 1 * pe * inv_pe) % m
    return x


def _primitive_root(pe: int, p: int) -> int:
    """Primitive root mod p^e for odd p."""
    phi_p = p - 1
    fac = factorize(phi_p)
    g = None
    for cand in range(2, p):
        if all(pow(cand, phi_p // q, p) != 1 for q in fac):
            g = cand
            break
    if g is None:
        raise ValueError("no primitive root found")
    if pe == p:
        return g
    # lift to p^e: g or g + p works
    phi = (p - 1) * (pe // p)
    if pow(g, phi // p, pe) == 1:
        g += p
    return g % pe
