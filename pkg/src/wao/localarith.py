"""True local arithmetic over Q at exponent 2: square-class groups,
Hilbert symbols with a solvability oracle, global square classes,
reciprocity, and the provider's local H^1 groups.

Fixed bases: {-1} at infinity, {2, -1, 5} at 2, {p, u_p} at odd p with u_p
the least positive nonresidue.  Induced coefficients are handled through
the quadratic field Q(sqrt(d)): split completions give two plain copies,
odd inert primes give the unramified quadratic extension, everything else
is refused explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .abgroup import PresentedAbelianGroup
from .intmat import IntMatrix
from .numtheory import (factorize, is_local_square, is_prime, kronecker,
                        least_nonresidue, legendre, primes_up_to, sqrt_2adic,
                        sqrt_mod_prime_power, squarefree_part, valuation)


class ProviderRefusal(ValueError):
    """The concrete local provider does not support the requested shape."""


# -- square classes -----------------------------------------------------------


class SquareClassGroup:
    """Q_v^* / squares with its fixed basis."""

    def __init__(self, place):
        self.place = str(place)
        if self.place == "inf":
            self.basis = (-1,)
        elif self.place == "2":
            self.basis = (2, -1, 5)
        else:
            p = int(self.place)
            if not is_prime(p) or p == 2:
                raise ValueError(f"bad place for square classes: {place!r}")
            self.basis = (p, least_nonresidue(p))
        self.dim = len(self.basis)

    def class_of(self, n: int) -> tuple[int, ...]:
        """Coordinates of a nonzero integer over the basis."""
        if n == 0:
            raise ValueError("zero has no square class")
        if self.place == "inf":
            return (1 if n < 0 else 0,)
        p = int(self.place)
        v = valuation(n, p)
        u = n // p ** v
        if p == 2:
            u %= 8
            unit_bits = {1: (0, 0), 3: (1, 1), 5: (0, 1), 7: (1, 0)}[u]
            return (v % 2,) + unit_bits
        return (v % 2, 0 if legendre(u, p) == 1 else 1)

    def representative(self, bits) -> int:
        n = 1
        for b, x in zip(self.basis, bits):
            if x % 2:
                n *= b
        return n


def square_class_group(place) -> SquareClassGroup:
    return SquareClassGroup(place)


@dataclass(frozen=True)
class GlobalSquareClass:
    """Element of Q^*/squares: a sign and a squarefree positive support."""

    sign: int
    factors: tuple[int, ...]  # sorted distinct primes

    @staticmethod
    def from_int(n: int) -> "GlobalSquareClass":
        if n == 0:
            raise ValueError("zero has no square class")
        sf = squarefree_part(n)
        return GlobalSquareClass(-1 if sf < 0 else 1,
                                 tuple(sorted(factorize(sf))))

    @property
    def value(self) -> int:
        n = self.sign
        for p in self.factors:
            n *= p
        return n

    def __mul__(self, other: "GlobalSquareClass") -> "GlobalSquareClass":
        return GlobalSquareClass.from_int(self.value * other.value)

    def localize(self, place) -> tuple[int, ...]:
        return SquareClassGroup(place).class_of(self.value)

    def serialize(self) -> dict:
        return {"sign": self.sign, "factors": {str(p): 1 for p in self.factors}}


def localize_global(g: GlobalSquareClass, place) -> tuple[int, ...]:
    return g.localize(place)


# -- Hilbert symbols ----------------------------------------------------------


def hilbert_symbol(a: int, b: int, place) -> int:
    """(a, b)_v by the tame formula, the explicit 2-adic formula, or signs."""
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    v = str(place)
    if v == "inf":
        return -1 if (a < 0 and b < 0) else 1
    p = int(v)
    if p == 2:
        alpha, beta = valuation(a, 2), valuation(b, 2)
        u, w = a >> alpha, b >> beta
        eps_u = (u - 1) // 2 % 2
        eps_w = (w - 1) // 2 % 2
        om_u = (u * u - 1) // 8 % 2
        om_w = (w * w - 1) // 8 % 2
        e = eps_u * eps_w + alpha * om_w + beta * om_u
        return -1 if e % 2 else 1
    alpha, beta = valuation(a, p), valuation(b, p)
    u, w = a // p ** alpha, b // p ** beta
    s = 1
    if (alpha * beta * (p - 1) // 2) % 2:
        s = -s
    if beta % 2 and legendre(u, p) == -1:
        s = -s
    if alpha % 2 and legendre(w, p) == -1:
        s = -s
    return s


def hilbert_symbol_oracle(a: int, b: int, place) -> int:
    """Solvability of z^2 = a x^2 + b y^2 over the completion, by search.

    Scaling makes one of x, y a unit, so solvability is equivalent to
    a + b w^2 or b + a w^2 being a square (or zero) for some w in Z_p,
    searched exhaustively modulo p^(v_p(4ab) + 3); the candidate values are
    exact integers, so each square test is exact.
    """
    if a == 0 or b == 0:
        raise ValueError("oracle needs nonzero arguments")
    v = str(place)
    if v == "inf":
        return 1 if (a > 0 or b > 0) else -1
    p = int(v)
    k = valuation(4 * a * b, p) + 3
    mod = p ** k
    for (c, d) in ((a, b), (b, a)):
        seen = set()
        for w in range(mod):
            ww = w * w % mod
            if ww in seen:
                continue
            seen.add(ww)
            val = c + d * w * w
            if val == 0:
                return 1
            if is_local_square(val, p):
                return 1
        # w with p | w up to the modulus are covered by the w-range above
    return -1


def reciprocity_check(a: int, b: int) -> dict:
    """Product formula over inf, 2 and the odd primes dividing a*b."""
    places = ["inf", "2"]
    for p in sorted(factorize(a * b)):
        if p != 2:
            places.append(str(p))
    symbols = {v: hilbert_symbol(a, b, v) for v in places}
    prod = 1
    for s in symbols.values():
        prod *= s
    return {"a": a, "b": b, "symbols": symbols, "product": prod,
            "ok": prod == 1}


# -- the unramified quadratic extension at an odd prime -----------------------


class UnramifiedQuadratic:
    """E = Q_p(sqrt(d)) for an odd prime p with d a unit nonsquare at p.

    Elements are integer pairs (x, y) meaning x + y*sqrt(d).  The residue
    field is F_{p^2}; square classes have the basis {p, w} with w a lifted
    nonsquare unit.
    """

    def __init__(self, p: int, d: int):
        if p == 2 or not is_prime(p):
            raise ValueError("odd prime required")
        if valuation(d, p) != 0 or legendre(d % p, p) != -1:
            raise ValueError("d must be a unit nonsquare at p")
        self.p = p
        self.d = d
        self.nonsquare_unit = self._find_nonsquare_unit()
        self.dim = 2

    # residue-field arithmetic in F_{p^2} = F_p(sqrt(d))
    def _ff_mul(self, x, y):
        p, d = self.p, self.d
        return ((x[0] * y[0] + d * x[1] * y[1]) % p,
                (x[0] * y[1] + x[1] * y[0]) % p)

    def _ff_pow(self, x, e):
        r = (1, 0)
        while e:
            if e & 1:
                r = self._ff_mul(r, x)
            x = self._ff_mul(x, x)
            e >>= 1
        return r

    def residue_is_square(self, x, y) -> bool:
        r = self._ff_pow((x % self.p, y % self.p), (self.p * self.p - 1) // 2)
        return r == (1, 0)

    def _find_nonsquare_unit(self):
        # an F_p-rational unit is always a square in F_{p^2}; search pairs
        for y in range(1, self.p):
            for x in range(self.p):
                if (x or y) and not self.residue_is_square(x, y):
                    return (x, y)
        raise AssertionError("no nonsquare found in F_{p^2}")

    def mul(self, a, b):
        return (a[0] * b[0] + self.d * a[1] * b[1],
                a[0] * b[1] + a[1] * b[0])

    def valuation(self, a) -> int:
        if a == (0, 0):
            raise ValueError("valuation of zero")
        vx = valuation(a[0], self.p) if a[0] else 10 ** 9
        vy = valuation(a[1], self.p) if a[1] else 10 ** 9
        return min(vx, vy)

    def class_of(self, a) -> tuple[int, int]:
        """Square-class bits over the basis (p, w)."""
        v = self.valuation(a)
        q = self.p ** v
        unit = (a[0] // q, a[1] // q)
        return (v % 2, 0 if self.residue_is_square(*unit) else 1)

    def representative(self, bits):
        r = (1, 0)
        if bits[0] % 2:
            r = (self.p, 0)
        if bits[1] % 2:
            r = self.mul(r, self.nonsquare_unit)
        return r

    def hilbert(self, a, b) -> int:
        """Tame symbol over E; (p^2-1)/2 is even so the (-1) factor drops."""
        va, vb = self.valuation(a), self.valuation(b)
        qa, qb = self.p ** va, self.p ** vb
        ua = (a[0] // qa, a[1] // qa)
        ub = (b[0] // qb, b[1] // qb)
        s = 1
        if vb % 2 and not self.residue_is_square(*ua):
            s = -s
        if va % 2 and not self.residue_is_square(*ub):
            s = -s
        return s


# -- embeddings of Q(sqrt(d)) into completions --------------------------------


def split_embeddings(d: int, place) -> list:
    """The two local square roots of d at a split place, as evaluators.

    Returns two functions taking (x, y) to the square-class bits of
    x + y*sqrt(d) in Q_v.
    """
    v = str(place)
    scg = SquareClassGroup(v)
    if v == "inf":
        if d <= 0:
            raise ProviderRefusal("sqrt(d) is not real")

        def make(sign_root):
            def embed(pair):
                x, y = pair
                if x == 0 and y == 0:
                    raise ValueError("zero element")
                # sign of x + y*sign_root*sqrt(d) with exact integer tests
                ys = y * sign_root
                if ys == 0:
                    s = 1 if x > 0 else -1
                elif x == 0:
                    s = 1 if ys > 0 else -1
                elif x > 0 and ys > 0:
                    s = 1
                elif x < 0 and ys < 0:
                    s = -1
                else:
                    s = 1 if (x * x > d * y * y) == (x > 0) else (-1 if x > 0 else 1)
                return scg.class_of(s)
            return embed

        return [make(1), make(-1)]

    p = int(v)
    if p == 2:
        if d % 8 != 1 or valuation(d, 2) != 0:
            raise ProviderRefusal("2 is not split in Q(sqrt(d))")
    else:
        if valuation(d, p) != 0 or legendre(d % p, p) != 1:
            raise ProviderRefusal(f"{p} is not split in Q(sqrt(d))")

    def make_padic(sign_root):
        def embed(pair):
            x, y = pair
            if x == 0 and y == 0:
                raise ValueError("zero element")
            k = 16
            while True:
                if p == 2:
                    s = sqrt_2adic(d, k)
                else:
                    s = sqrt_mod_prime_power(d, p, k)
                t = (x + y * sign_root * s) % p ** k
                if t == 0:
                    k *= 2
                    continue
                val = valuation(t, p)
                margin = 3 if p == 2 else 1
                if val + margin > k:
                    k *= 2
                    continue
                unit = (t // p ** val) % p ** margin if p == 2 else (t // p ** val)
                if p == 2:
                    unit = (t >> val) % 8
                    bitmap = {1: (0, 0), 3: (1, 1), 5: (0, 1), 7: (1, 0)}
                    return (val % 2,) + bitmap[unit]
                return (val % 2, 0 if legendre(unit % p, p) == 1 else 1)
        return embed

    return [make_padic(1), make_padic(-1)]


# -- local H^1 groups ---------------------------------------------------------


@dataclass
class LocalComponent:
    kind: str              # "rational" | "quad_ext" | "zero"
    place: str
    data: object           # SquareClassGroup | UnramifiedQuadratic | None

    @property
    def dim(self) -> int:
        if self.kind == "zero":
            return 0
        return self.data.dim


class LocalH1:
    """Provider-level H^1 at one place for a supported exponent-2 shape."""

    def __init__(self, place: str, descriptor: dict,
                 components: list[LocalComponent]):
        self.place = str(place)
        self.descriptor = dict(descriptor)
        self.components = components
        dims = sum(c.dim for c in self.components)
        self.group = PresentedAbelianGroup(
            dims, IntMatrix.diagonal([2] * dims, dims, dims))

    @property
    def dim(self) -> int:
        return self.group.n

    def split_bits(self, bits) -> list[tuple[int, ...]]:
        out = []
        off = 0
        for c in self.components:
            out.append(tuple(x % 2 for x in bits[off:off + c.dim]))
            off += c.dim
        return out

    def describe(self) -> dict:
        comps = []
        for c in self.components:
            if c.kind == "rational":
                comps.append({"kind": "rational", "basis": list(c.data.basis)})
            elif c.kind == "quad_ext":
                comps.append({"kind": "quad_ext", "p": c.data.p, "d": c.data.d})
            else:
                comps.append({"kind": "zero"})
        return {"place": self.place, "descriptor": self.descriptor,
                "dim": self.dim, "components": comps}


def local_h1(place, descriptor: dict) -> LocalH1:
    """Assemble the provider group at a place for a supported descriptor.

    mu2/z2 shapes give copies of the square-class group; induced shapes go
    through the quadratic field Q(sqrt(d)) and are supported where the
    completion is split (any place), an unramified quadratic extension at an
    odd place, or complex at infinity.  Everything else is refused.
    """
    v = str(place)
    kind = descriptor.get("kind")
    copies = int(descriptor.get("copies", 1))
    comps: list[LocalComponent] = []
    if kind in ("mu2", "z2"):
        for _ in range(copies):
            comps.append(LocalComponent("rational", v, SquareClassGroup(v)))
        return LocalH1(v, descriptor, comps)
    if kind == "induced":
        d = squarefree_part(int(descriptor["d"]))
        if d == 1:
            raise ProviderRefusal("induced descriptor needs a nonsquare d")
        for _ in range(copies):
            if v == "inf":
                if d > 0:
                    comps.append(LocalComponent("rational", v, SquareClassGroup(v)))
                    comps.append(LocalComponent("rational", v, SquareClassGroup(v)))
                else:
                    comps.append(LocalComponent("zero", v, None))
            elif v == "2":
                if d % 8 == 1:
                    comps.append(LocalComponent("rational", v, SquareClassGroup(v)))
                    comps.append(LocalComponent("rational", v, SquareClassGroup(v)))
                else:
                    raise ProviderRefusal(
                        "induced shape at 2 is supported only when split")
            else:
                p = int(v)
                if valuation(d, p) != 0:
                    raise ProviderRefusal(
                        f"induced shape ramified at {p} is unsupported")
                if legendre(d % p, p) == 1:
                    comps.append(LocalComponent("rational", v, SquareClassGroup(v)))
                    comps.append(LocalComponent("rational", v, SquareClassGroup(v)))
                else:
                    comps.append(LocalComponent("quad_ext", v,
                                                UnramifiedQuadratic(p, d)))
        return LocalH1(v, descriptor, comps)
    raise ProviderRefusal(f"unsupported local descriptor: {kind!r}")


# -- global elements for the supported shapes ---------------------------------


@dataclass(frozen=True)
class GlobalClass:
    """Global datum localizing into the provider groups.

    For mu2/z2 shapes: a tuple of square classes, one per copy.  For induced
    shapes: a tuple of nonzero elements x + y*sqrt(d), one per copy.
    """

    descriptor_kind: str
    entries: tuple

    def serialize(self) -> dict:
        if self.descriptor_kind in ("mu2", "z2"):
            return {"kind": self.descriptor_kind,
                    "entries": [e.serialize() for e in self.entries]}
        return {"kind": self.descriptor_kind,
                "entries": [list(e) for e in self.entries]}


def localize_class(g: GlobalClass, lh: LocalH1) -> tuple[int, ...]:
    """Image of a global class in the provider group at one place."""
    kind = lh.descriptor.get("kind")
    if g.descriptor_kind != kind:
        raise ValueError("global class does not match the descriptor")
    bits: list[int] = []
    if kind in ("mu2", "z2"):
        for e in g.entries:
            bits.extend(e.localize(lh.place))
        return tuple(bits)
    d = squarefree_part(int(lh.descriptor["d"]))
    comps_per_copy = []
    i = 0
    copies = int(lh.descriptor.get("copies", 1))
    per_copy = len(lh.components) // copies
    for c in range(copies):
        comps_per_copy.append(lh.components[i:i + per_copy])
        i += per_copy
    for entry, comps in zip(g.entries, comps_per_copy):
        x, y = entry
        if len(comps) == 2:
            embeds = split_embeddings(d, lh.place)
            bits.extend(embeds[0]((x, y)))
            bits.extend(embeds[1]((x, y)))
        elif comps[0].kind == "quad_ext":
            bits.extend(comps[0].data.class_of((x, y)))
        else:  # complex place: zero group
            pass
    return tuple(bits)


def local_invariant_pairing(lh_left: LocalH1, left_bits,
                            lh_right: LocalH1, right_bits) -> Fraction:
    """Sum of local invariants of cup products, via Hilbert symbols.

    Both sides must be provider groups at the same place with matching
    component structure (the two shapes paired by the duality).
    """
    if lh_left.place != lh_right.place:
        raise ValueError("pairing needs a single place")
    lc, rc = lh_left.components, lh_right.components
    if len(lc) != len(rc) or any(a.kind != b.kind for a, b in zip(lc, rc)):
        raise ValueError("descriptor mismatch in the local pairing")
    total = 0
    for comp_l, comp_r, bl, br in zip(lc, rc, lh_left.split_bits(left_bits),
                                      lh_right.split_bits(right_bits)):
        if comp_l.kind == "zero":
            continue
        if comp_l.kind == "rational":
            a = comp_l.data.representative(bl)
            b = comp_r.data.representative(br)
            if hilbert_symbol(a, b, comp_l.place) == -1:
                total += 1
        else:
            ext = comp_l.data
            if ext.hilbert(ext.representative(bl),
                           ext.representative(br)) == -1:
                total += 1
    return Fraction(total % 2, 2) if total % 2 else Fraction(0)


# -- spanning searches --------------------------------------------------------


def _f2_span_add(span: list[int], vec: int) -> bool:
    """Add a bit-vector (as int) to an F2 span; True if it was new."""
    v = vec
    for b in span:
        v = min(v, v ^ b)
    if v:
        span.append(v)
        span.sort(reverse=True)
        return True
    return False


def _bits_to_int(bits) -> int:
    out = 0
    for i, b in enumerate(bits):
        if b % 2:
            out |= 1 << i
    return out


def surjectivity_search(descriptor: dict, locals_: list[LocalH1],
                        bound: int = 200) -> dict:
    """Global classes spanning (or not) the product of provider groups.

    Searches the deterministic family -1, 2, odd primes <= bound (inserted
    into each copy slot), plus small x + y*sqrt(d) elements for induced
    shapes.  Failure to span is a bound problem, not a theorem violation.
    """
    kind = descriptor.get("kind")
    copies = int(descriptor.get("copies", 1))
    total_dim = sum(lh.dim for lh in locals_)
    span: list[int] = []
    gens: list[GlobalClass] = []

    def try_class(g: GlobalClass):
        bits: list[int] = []
        for lh in locals_:
            bits.extend(localize_class(g, lh))
        if _f2_span_add(span, _bits_to_int(bits)):
            gens.append(g)

    if kind in ("mu2", "z2"):
        candidates = [GlobalSquareClass.from_int(-1),
                      GlobalSquareClass.from_int(2)]
        candidates += [GlobalSquareClass.from_int(p)
                       for p in primes_up_to(bound) if p != 2]
        one = GlobalSquareClass.from_int(1)
        for slot in range(copies):
            for c in candidates:
                entries = tuple(c if i == slot else one for i in range(copies))
                try_class(GlobalClass(kind, entries))
                if len(span) == total_dim:
                    break
            if len(span) == total_dim:
                break
    elif kind == "induced":
        d = squarefree_part(int(descriptor["d"]))
        cands = [(-1, 0), (2, 0)]
        cands += [(p, 0) for p in primes_up_to(bound) if p != 2]
        small = min(bound, 40)
        for x in range(-small, small + 1):
            for y in range(1, small + 1):
                if gcd(x, y) == 1:
                    cands.append((x, y))
        one = (1, 0)
        for slot in range(copies):
            for c in cands:
                entries = tuple(c if i == slot else one for i in range(copies))
                try_class(GlobalClass(kind, entries))
                if len(span) == total_dim:
                    break
            if len(span) == total_dim:
                break
    else:
        raise ProviderRefusal(f"no search family for descriptor {kind!r}")

    return {
        "descriptor": descriptor,
        "places": [lh.place for lh in locals_],
        "span_dim": len(span),
        "target_dim": total_dim,
        "generators": gens,
        "full": len(span) == total_dim,
        "bound": bound,
    }
