"""Arithmetic site data over Q: a finite Galois group together with labeled
places, decomposition subgroups, Frobenius data and ramification flags.

Concrete constructors cover cyclotomic and multiquadratic fields; an
abstract escape hatch accepts explicit tables (at the cost of provider
support downstream).  Unramified places are never materialized eagerly:
only the special places and whatever finite set S mentions ever exist.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .fingroup import FiniteGroup, product_of_cyclic_groups, unit_group_mod
from .numtheory import (factorize, is_local_square, is_prime, kronecker,
                        primes_up_to, squarefree_part, valuation)


@dataclass(frozen=True)
class Place:
    """One place of Q with its decomposition data inside the datum's group."""

    label: str
    kind: str  # "unramified" | "ramified" | "archimedean"
    decomposition: tuple[int, ...]
    frobenius: int | None = None
    completion: dict = field(default_factory=dict, compare=False)

    @property
    def is_special(self) -> bool:
        return self.kind != "unramified"


class GaloisDatum:
    """Finite Galois group with place structure over Q."""

    def __init__(self, group: FiniteGroup, special: dict[str, Place],
                 frobenius_rule, ramified_labels: tuple[str, ...],
                 description: dict):
        self.group = group
        self.special = dict(special)
        self._frobenius_rule = frobenius_rule
        self.ramified_labels = tuple(ramified_labels)
        self.description = dict(description)
        for label, pl in self.special.items():
            if label != pl.label:
                raise ValueError("special place label mismatch")
            if not group.is_subgroup(pl.decomposition):
                raise ValueError(
                    f"decomposition set at {label} is not a subgroup")

    def place(self, label: str) -> Place:
        """Place data for 'inf', a special label, or an unramified prime."""
        label = str(label)
        if label in self.special:
            return self.special[label]
        if label == "inf":
            raise ValueError("datum has no archimedean place registered")
        if not label.isdigit() or not is_prime(int(label)):
            raise ValueError(f"unknown place label: {label!r}")
        p = int(label)
        if label in self.ramified_labels:
            raise ValueError(f"ramified place {label} missing from specials")
        frob = self._frobenius_rule(p)
        if frob is None:
            raise ValueError(f"no Frobenius data for the prime {p}")
        dec = self.group.generated_subgroup([frob])
        return Place(label, "unramified", dec, frob, {"prime": p})

    def places(self, labels) -> list[Place]:
        """The finite set S, validated for duplicates."""
        labels = [str(x) for x in labels]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate place labels in S")
        return [self.place(x) for x in labels]

    def special_places(self) -> list[Place]:
        return [self.special[x] for x in sorted(self.special)]

    def __repr__(self) -> str:
        return f"GaloisDatum({self.description})"


def cyclotomic_datum(m: int) -> GaloisDatum:
    """Splitting data of the m-th cyclotomic field over Q (m >= 3)."""
    if m < 3:
        raise ValueError("cyclotomic datum needs m >= 3")
    group = unit_group_mod(m)
    residues = group.residues  # type: ignore[attr-defined]
    index = {r: i for i, r in enumerate(residues)}
    special: dict[str, Place] = {}
    conj = index[(-1) % m]
    special["inf"] = Place("inf", "archimedean",
                           group.generated_subgroup([conj]), None,
                           {"real": False})
    ram = []
    for p in sorted(factorize(m)):
        v = valuation(m, p)
        mp = m // p ** v
        powers = {1 % mp}
        x = p % mp if mp > 1 else 0
        if mp > 1:
            y = 1
            while True:
                y = (y * p) % mp
                if y in powers:
                    break
                powers.add(y)
        dec = tuple(sorted(index[r] for r in residues
                           if mp == 1 or r % mp in powers))
        # |Gamma_p| = e*f with e = phi(p^v), f = ord of p mod m/p^v
        e = (p - 1) * p ** (v - 1)
        f = 1
        if mp > 1:
            y, f = p % mp, 1
            while y != 1 % mp:
                y = (y * p) % mp
                f += 1
        if len(dec) != e * f:
            raise AssertionError("cyclotomic decomposition size mismatch")
        special[str(p)] = Place(str(p), "ramified", dec, None, {"prime": p})
        ram.append(str(p))

    def frobenius_rule(p: int):
        if gcd(p, m) != 1:
            return None
        return index[p % m]

    return GaloisDatum(group, special, frobenius_rule, tuple(ram),
                       {"type": "cyclotomic", "m": m})


def multiquadratic_datum(a: int, b: int) -> GaloisDatum:
    """Splitting data of Q(sqrt(a), sqrt(b)) over Q.

    Group elements are sign pairs (i, j): the element flips sqrt(a) iff
    i = 1 and sqrt(b) iff j = 1.
    """
    if a == 1 or b == 1 or a == b:
        raise ValueError("need distinct squarefree integers != 1")
    if a == 0 or b == 0 or squarefree_part(a) != a or squarefree_part(b) != b:
        raise ValueError("need distinct squarefree integers != 1")
    group = product_of_cyclic_groups([2, 2])
    # element index: (i, j) -> 2*i + j by construction of the product group
    def idx(i, j):
        return 2 * i + j

    ab = squarefree_part(a * b)
    ram_primes = set()
    for d in (a, b, ab):
        for p in factorize(d):
            ram_primes.add(p)
        if d % 4 != 1:
            ram_primes.add(2)
    special: dict[str, Place] = {}
    conj = idx(1 if a < 0 else 0, 1 if b < 0 else 0)
    special["inf"] = Place("inf", "archimedean",
                           group.generated_subgroup([conj]), None,
                           {"real": a > 0 and b > 0})
    ram = []
    for p in sorted(ram_primes):
        sq_a = is_local_square(a, p)
        sq_b = is_local_square(b, p)
        sq_ab = is_local_square(a * b, p)
        dec = tuple(sorted(idx(i, j) for i in (0, 1) for j in (0, 1)
                           if (not sq_a or i == 0)
                           and (not sq_b or j == 0)
                           and (not sq_ab or (i + j) % 2 == 0)))
        special[str(p)] = Place(str(p), "ramified", dec, None, {"prime": p})
        ram.append(str(p))

    def frobenius_rule(p: int):
        if p in ram_primes:
            return None
        i = 0 if kronecker(a, p) == 1 else 1
        j = 0 if kronecker(b, p) == 1 else 1
        if p == 2:
            i = 0 if a % 8 == 1 else 1
            j = 0 if b % 8 == 1 else 1
        return idx(i, j)

    return GaloisDatum(group, special, frobenius_rule, tuple(ram),
                       {"type": "multiquadratic", "a": a, "b": b})


def abstract_datum(group: FiniteGroup, special: dict[str, dict],
                   frobenius: dict[str, int]) -> GaloisDatum:
    """Explicit-table datum; group-theoretic consistency only."""
    places: dict[str, Place] = {}
    ram = []
    for label, spec in special.items():
        kind = spec.get("kind", "ramified")
        dec = tuple(sorted(int(x) for x in spec["decomposition"]))
        frob = spec.get("frobenius")
        places[label] = Place(label, kind, dec,
                              int(frob) if frob is not None else None, {})
        if kind == "ramified":
            ram.append(label)
    frob_map = {int(k): int(v) for k, v in frobenius.items()}

    def frobenius_rule(p: int):
        return frob_map.get(p)

    return GaloisDatum(group, places, frobenius_rule, tuple(ram),
                       {"type": "abstract"})


def validate_datum(datum: GaloisDatum, bound: int = 500) -> dict:
    """Chebotarev smoke test plus subgroup axioms for all special places.

    Verifies that every group element occurs as the Frobenius of some
    unramified prime up to the bound, and that every stored decomposition
    set is a subgroup (cyclic and Frobenius-generated when unramified).
    """
    g = datum.group
    failures: list[str] = []
    hits: dict[int, int] = {}
    ram = {int(x) for x in datum.ramified_labels}
    for p in primes_up_to(bound):
        if p in ram:
            continue
        try:
            pl = datum.place(str(p))
        except ValueError:
            continue
        if pl.frobenius is not None and pl.frobenius not in hits:
            hits[pl.frobenius] = p
    for e in range(g.order):
        if e not in hits:
            failures.append(
                f"element {g.labels[e]} not hit by any Frobenius <= {bound}")
    for pl in datum.special_places():
        if not g.is_subgroup(pl.decomposition):
            failures.append(f"place {pl.label}: decomposition not a subgroup")
    for label in list(datum.ramified_labels):
        if label not in datum.special:
            failures.append(f"ramified label {label} missing")
    return {
        "bound": bound,
        "frobenius_witnesses": {g.labels[e]: p for e, p in sorted(hits.items())},
        "failures": failures,
        "ok": not failures,
    }
