"""Finite groups as validated multiplication tables.

Elements are indices 0..N-1 with string labels.  Construction checks
associativity, identity and inverses; subgroups are built with their own
tables plus an embedding back into the ambient group so cohomology can be
computed over them directly.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Sequence


class FiniteGroup:
    """Group given by a full multiplication table on indices."""

    def __init__(self, table: Sequence[Sequence[int]],
                 labels: Sequence[str] | None = None, check: bool = True):
        self.order = len(table)
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        if labels is None:
            labels = [str(i) for i in range(self.order)]
        self.labels = tuple(str(x) for x in labels)
        if len(self.labels) != self.order:
            raise ValueError("label count mismatch")
        if check:
            self._validate()
        self.identity = self._find_identity()
        self.inverse = tuple(self._find_inverse(g) for g in range(self.order))

    def _validate(self):
        n = self.order
        for row in self.table:
            if len(row) != n or any(not 0 <= x < n for x in row):
                raise ValueError("multiplication table is not closed")
        for a, b, c in product(range(n), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise ValueError(
                    f"table is not associative at triple "
                    f"({self.labels[a]}, {self.labels[b]}, {self.labels[c]})")

    def _find_identity(self) -> int:
        for e in range(self.order):
            if all(self.table[e][x] == x and self.table[x][e] == x
                   for x in range(self.order)):
                return e
        raise ValueError("table has no identity element")

    def _find_inverse(self, g: int) -> int:
        for h in range(self.order):
            if self.table[g][h] == self.identity and self.table[h][g] == self.identity:
                return h
        raise ValueError(f"element {self.labels[g]} has no inverse")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.table[x][g]
            k += 1
        return k

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a]
                   for a in range(self.order) for b in range(self.order))

    # -- subgroups ----------------------------------------------------------

    def generated_subgroup(self, gens: Iterable[int]) -> tuple[int, ...]:
        seen = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.table[x][g]
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return tuple(sorted(seen))

    def cyclic_subgroups(self) -> list[tuple[int, ...]]:
        """All cyclic subgroups, deduplicated, deterministic order."""
        out: list[tuple[int, ...]] = []
        seen = set()
        for g in range(self.order):
            s = self.generated_subgroup([g])
            if s not in seen:
                seen.add(s)
                out.append(s)
        return out

    def is_subgroup(self, elems: Sequence[int]) -> bool:
        s = set(elems)
        if self.identity not in s:
            return False
        return all(self.table[a][b] in s and self.inverse[a] in s
                   for a in s for b in s)

    def conjugate_subgroup(self, elems: Sequence[int], g: int) -> tuple[int, ...]:
        gi = self.inverse[g]
        return tuple(sorted(self.table[self.table[g][x]][gi] for x in elems))

    def subgroup(self, elems: Sequence[int]) -> "Subgroup":
        return Subgroup(self, elems)

    def left_cosets(self, elems: Sequence[int]) -> list[tuple[int, ...]]:
        """Left cosets of a subgroup, each sorted, ordered by least element."""
        if not self.is_subgroup(elems):
            raise ValueError("not a subgroup")
        done = set()
        cosets = []
        for x in range(self.order):
            if x in done:
                continue
            cs = tuple(sorted(self.table[x][h] for h in elems))
            done.update(cs)
            cosets.append(cs)
        return cosets

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"


class Subgroup(FiniteGroup):
    """Subgroup with its own indexing and the embedding into the ambient group."""

    def __init__(self, ambient: FiniteGroup, elems: Sequence[int]):
        elems = tuple(sorted(dict.fromkeys(int(x) for x in elems)))
        if not ambient.is_subgroup(elems):
            raise ValueError("element set is not closed under product/inverse")
        self.ambient = ambient
        self.ambient_index = elems
        pos = {g: i for i, g in enumerate(elems)}
        table = [[pos[ambient.table[a][b]] for b in elems] for a in elems]
        super().__init__(table, [ambient.labels[g] for g in elems], check=False)


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group needs order >= 1")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(table, [str(a) for a in range(n)], check=False)


def product_of_cyclic_groups(orders: Sequence[int]) -> FiniteGroup:
    orders = [int(n) for n in orders]
    if any(n < 1 for n in orders):
        raise ValueError("cyclic factors need order >= 1")
    elems = list(product(*[range(n) for n in orders]))
    pos = {e: i for i, e in enumerate(elems)}
    table = [[pos[tuple((a + b) % n for a, b, n in zip(x, y, orders))]
              for y in elems] for x in elems]
    labels = ["(" + ",".join(str(c) for c in e) + ")" for e in elems]
    return FiniteGroup(table, labels, check=False)


def unit_group_mod(m: int) -> FiniteGroup:
    """(Z/m)^* with residue labels; residues exposed for character work."""
    if m < 1:
        raise ValueError("modulus must be positive")
    from math import gcd

    residues = [r for r in range(1, max(m, 2)) if gcd(r, m) == 1] or [1]
    if m == 1:
        residues = [0]
    pos = {r: i for i, r in enumerate(residues)}
    table = [[pos[(a * b) % m] if m > 1 else 0 for b in residues] for a in residues]
    g = FiniteGroup(table, [str(r) for r in residues], check=False)
    g.residues = tuple(residues)  # type: ignore[attr-defined]
    g.modulus = m  # type: ignore[attr-defined]
    return g


def group_from_table(table: Sequence[Sequence[int]],
                     labels: Sequence[str] | None = None) -> FiniteGroup:
    """Explicit table constructor; validation errors name a failing triple."""
    return FiniteGroup(table, labels, check=True)


def build_group(spec: dict) -> FiniteGroup:
    """Group from a scenario-style spec dict."""
    kind = spec.get("type")
    if kind == "cyclic":
        return cyclic_group(int(spec["n"]))
    if kind == "product":
        return product_of_cyclic_groups([int(x) for x in spec["orders"]])
    if kind == "units_mod":
        return unit_group_mod(int(spec["m"]))
    if kind == "table":
        return group_from_table(spec["table"], spec.get("labels"))
    raise ValueError(f"unknown group spec type: {kind!r}")
