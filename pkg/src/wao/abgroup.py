"""Finitely presented abelian groups, homomorphisms, kernels and cokernels.

A group is Z^n modulo the row span of an integer relation matrix.  Elements
are coordinate vectors reduced to a unique normal form through the Smith
decomposition of the relations, so equality is decidable and deterministic.
Direct powers get a dedicated subclass that works blockwise instead of
materializing huge block-diagonal relation matrices; the cochain complexes
downstream depend on that.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, lcm
from typing import Callable, Iterator, Sequence

from .intmat import ColumnEchelon, IntMatrix, smith_normal_form


def invariant_factors_from_mods(mods: Sequence[int]) -> tuple[int, ...]:
    """Canonical divisibility chain (1s dropped, 0 = free factor at the end)."""
    free = sum(1 for m in mods if m == 0)
    torsion = [m for m in mods if m > 1]
    buckets: dict[int, list[int]] = {}
    for m in torsion:
        d = m
        p = 2
        while p * p <= d:
            if d % p == 0:
                e = 0
                while d % p == 0:
                    d //= p
                    e += 1
                buckets.setdefault(p, []).append(p ** e)
            p += 1
        if d > 1:
            buckets.setdefault(d, []).append(d)
    for v in buckets.values():
        v.sort(reverse=True)
    depth = max((len(v) for v in buckets.values()), default=0)
    chain = []
    for i in range(depth):
        f = 1
        for v in buckets.values():
            if i < len(v):
                f *= v[i]
        chain.append(f)
    chain.reverse()
    return tuple(chain) + (0,) * free


class PresentedAbelianGroup:
    """Z^n modulo the row span of an integer relation matrix."""

    def __init__(self, n: int, relations: IntMatrix | Sequence[Sequence[int]]):
        if not isinstance(relations, IntMatrix):
            rows = [list(r) for r in relations]
            relations = IntMatrix(rows, len(rows), n) if rows else IntMatrix.zeros(0, n)
        if relations.cols != n:
            raise ValueError(
                f"relation rows have {relations.cols} columns, expected {n}")
        self.n = n
        self._relations = relations
        self._nf: tuple[IntMatrix, IntMatrix, tuple[int, ...]] | None = None

    # -- decomposition ----------------------------------------------------

    def _normal_form(self):
        if self._nf is None:
            s = smith_normal_form(self._relations.transpose())
            k = min(self.n, self._relations.rows)
            mods = list(s.diag[:k]) + [0] * (self.n - k)
            self._nf = (s.U, s.Uinv, tuple(mods))
        return self._nf

    @property
    def mods(self) -> tuple[int, ...]:
        """Per-coordinate moduli in the Smith basis (0 means a free factor)."""
        return self._normal_form()[2]

    def snf_coords(self, coords: Sequence[int]) -> tuple[int, ...]:
        return self._normal_form()[0].apply(coords)

    def from_snf_coords(self, y: Sequence[int]) -> tuple[int, ...]:
        return self._normal_form()[1].apply(y)

    # -- relations --------------------------------------------------------

    @property
    def relations(self) -> IntMatrix:
        return self._relations

    def relation_rows_sparse(self) -> Iterator[dict[int, int]]:
        for row in self._relations.data:
            d = {j: x for j, x in enumerate(row) if x}
            if d:
                yield d

    def lattice_columns(self) -> list[dict[int, int]]:
        """Sparse columns generating the relation lattice."""
        return list(self.relation_rows_sparse())

    # -- element arithmetic ------------------------------------------------

    def normalize(self, coords: Sequence[int]) -> tuple[int, ...]:
        y = list(self.snf_coords(coords))
        for i, m in enumerate(self.mods):
            if m:
                y[i] %= m
        return self.from_snf_coords(y)

    def in_lattice(self, coords: Sequence[int]) -> bool:
        y = self.snf_coords(coords)
        return all((x % m == 0) if m else (x == 0)
                   for x, m in zip(y, self.mods))

    def in_lattice_sparse(self, coords: dict[int, int]) -> bool:
        dense = [0] * self.n
        for i, x in coords.items():
            dense[i] = x
        return self.in_lattice(dense)

    def element(self, coords: Sequence[int]) -> "GroupElement":
        if len(coords) != self.n:
            raise ValueError("coordinate length mismatch")
        return GroupElement(self, self.normalize(coords))

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.n)

    def gen(self, i: int) -> "GroupElement":
        return self.element([1 if j == i else 0 for j in range(self.n)])

    def gens(self) -> list["GroupElement"]:
        return [self.gen(i) for i in range(self.n)]

    # -- structure ----------------------------------------------------------

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return invariant_factors_from_mods(self.mods)

    @property
    def is_finite(self) -> bool:
        return all(m != 0 for m in self.mods)

    @property
    def order(self) -> int | None:
        if not self.is_finite:
            return None
        o = 1
        for m in self.mods:
            o *= m
        return o

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    @property
    def exponent(self) -> int:
        if not self.is_finite:
            raise ValueError("exponent of an infinite group")
        e = 1
        for m in self.mods:
            if m > 1:
                e = lcm(e, m)
        return e

    def elements(self) -> Iterator["GroupElement"]:
        if not self.is_finite:
            raise ValueError("cannot enumerate an infinite group")
        ranges = [range(m) for m in self.mods]
        for y in product(*ranges):
            yield GroupElement(self, self.from_snf_coords(y))

    def __repr__(self) -> str:
        return f"AbGroup(invariants={list(self.invariant_factors)})"


class DirectPowerGroup(PresentedAbelianGroup):
    """k-fold direct power of a presented group, handled blockwise."""

    def __init__(self, factor: PresentedAbelianGroup, copies: int):
        self.factor = factor
        self.copies = copies
        self.n = factor.n * copies
        self._mods = factor.mods * copies

    @property
    def mods(self) -> tuple[int, ...]:
        return self._mods

    def snf_coords(self, coords: Sequence[int]) -> tuple[int, ...]:
        f, k = self.factor, self.factor.n
        out = []
        for b in range(self.copies):
            out.extend(f.snf_coords(coords[b * k:(b + 1) * k]))
        return tuple(out)

    def from_snf_coords(self, y: Sequence[int]) -> tuple[int, ...]:
        f, k = self.factor, self.factor.n
        out = []
        for b in range(self.copies):
            out.extend(f.from_snf_coords(y[b * k:(b + 1) * k]))
        return tuple(out)

    @property
    def relations(self) -> IntMatrix:
        rel = self.factor.relations
        rows = []
        for b in range(self.copies):
            for r in rel.data:
                if any(r):
                    row = [0] * self.n
                    row[b * self.factor.n:(b + 1) * self.factor.n] = r
                    rows.append(row)
        return IntMatrix(rows, len(rows), self.n)

    def relation_rows_sparse(self) -> Iterator[dict[int, int]]:
        k = self.factor.n
        for b in range(self.copies):
            off = b * k
            for d in self.factor.relation_rows_sparse():
                yield {off + j: x for j, x in d.items()}

    def lattice_columns(self) -> list[dict[int, int]]:
        return list(self.relation_rows_sparse())

    def in_lattice_sparse(self, coords: dict[int, int]) -> bool:
        k = self.factor.n
        blocks: dict[int, list[int]] = {}
        for i, x in coords.items():
            blocks.setdefault(i // k, [0] * k)[i % k] = x
        return all(self.factor.in_lattice(v) for v in blocks.values())

    def block(self, coords: Sequence[int], b: int) -> tuple[int, ...]:
        k = self.factor.n
        return tuple(coords[b * k:(b + 1) * k])


class GroupElement:
    """Element of a presented group, stored in normal form."""

    __slots__ = ("group", "coords")

    def __init__(self, group: PresentedAbelianGroup, coords: tuple[int, ...]):
        self.group = group
        self.coords = tuple(coords)

    def __add__(self, other: "GroupElement") -> "GroupElement":
        if other.group is not self.group:
            raise ValueError("elements of different groups")
        return self.group.element([a + b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "GroupElement":
        return self.group.element([-a for a in self.coords])

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __rmul__(self, c: int) -> "GroupElement":
        return self.group.element([c * a for a in self.coords])

    def __eq__(self, other) -> bool:
        return (isinstance(other, GroupElement) and other.group is self.group
                and other.coords == self.coords)

    def __hash__(self) -> int:
        return hash((id(self.group), self.coords))

    @property
    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def order(self) -> int:
        y = self.group.snf_coords(self.coords)
        o = 1
        for x, m in zip(y, self.group.mods):
            if m == 0:
                if x:
                    raise ValueError("element of infinite order")
                continue
            x %= m
            if x:
                o = lcm(o, m // gcd(m, x))
        return o

    def __repr__(self) -> str:
        return f"GroupElement{self.coords}"


class AbHom:
    """Homomorphism between presented groups, given by an integer matrix.

    The matrix acts on column coordinate vectors.  Construction checks that
    every source relation lands in the target relation lattice, i.e. the map
    is well defined on the quotients.
    """

    def __init__(self, source: PresentedAbelianGroup,
                 target: PresentedAbelianGroup, matrix: IntMatrix,
                 check: bool = True):
        if matrix.rows != target.n or matrix.cols != source.n:
            raise ValueError(
                f"matrix is {matrix.rows}x{matrix.cols}, expected "
                f"{target.n}x{source.n}")
        self.source = source
        self.target = target
        self.matrix = matrix
        self._cols: list[dict[int, int]] | None = None
        if check:
            self._check_well_defined()

    def _columns(self) -> list[dict[int, int]]:
        if self._cols is None:
            cols: list[dict[int, int]] = [dict() for _ in range(self.matrix.cols)]
            for i, j, x in self.matrix.nonzero():
                cols[j][i] = x
            self._cols = cols
        return self._cols

    def _check_well_defined(self):
        cols = self._columns()
        for row in self.source.relation_rows_sparse():
            img: dict[int, int] = {}
            for j, c in row.items():
                for i, x in cols[j].items():
                    y = img.get(i, 0) + c * x
                    if y:
                        img[i] = y
                    else:
                        del img[i]
            if not self.target.in_lattice_sparse(img):
                raise ValueError("matrix does not preserve the relations")

    def apply_coords(self, coords: Sequence[int]) -> tuple[int, ...]:
        return self.target.normalize(self.matrix.apply(coords))

    def apply_sparse(self, coords: dict[int, int]) -> dict[int, int]:
        cols = self._columns()
        img: dict[int, int] = {}
        for j, c in coords.items():
            if c:
                for i, x in cols[j].items():
                    y = img.get(i, 0) + c * x
                    if y:
                        img[i] = y
                    else:
                        del img[i]
        return img

    def __call__(self, elem: GroupElement) -> GroupElement:
        if elem.group is not self.source:
            raise ValueError("element not in the source group")
        return self.target.element(self.matrix.apply(elem.coords))

    def compose(self, inner: "AbHom") -> "AbHom":
        """self after inner."""
        if inner.target is not self.source:
            raise ValueError("homs are not composable")
        return AbHom(inner.source, self.target, self.matrix * inner.matrix,
                     check=False)

    def equals_mod_target(self, other: "AbHom") -> bool:
        if self.source is not other.source or self.target is not other.target:
            return False
        diff = self.matrix - other.matrix
        return all(self.target.in_lattice(diff.col(j))
                   for j in range(diff.cols))

    def is_zero_hom(self) -> bool:
        return all(self.target.in_lattice(self.matrix.col(j))
                   for j in range(self.matrix.cols))

    def __repr__(self) -> str:
        return f"AbHom({self.source!r} -> {self.target!r})"


def identity_hom(group: PresentedAbelianGroup) -> AbHom:
    return AbHom(group, group, IntMatrix.identity(group.n), check=False)


def zero_hom(source: PresentedAbelianGroup, target: PresentedAbelianGroup) -> AbHom:
    return AbHom(source, target, IntMatrix.zeros(target.n, source.n), check=False)


class SubgroupSolver:
    """Expresses elements through a generating set, modulo relations.

    Given columns G in Z^n and the ambient group A = Z^n/L, solves
    G*c = v (mod L) for integer c, answering membership in the subgroup
    generated by the columns.
    """

    def __init__(self, group: PresentedAbelianGroup, columns: Sequence[Sequence[int]]):
        self.group = group
        self.k = len(columns)
        cols = [{i: x for i, x in enumerate(col) if x} for col in columns]
        cols.extend(group.lattice_columns())
        self._ech = ColumnEchelon(cols, group.n)

    def solve(self, coords: Sequence[int]) -> tuple[int, ...] | None:
        sol = self._ech.solve(coords)
        if sol is None:
            return None
        return sol[:self.k]

    def contains(self, coords: Sequence[int]) -> bool:
        return self.solve(coords) is not None


def kernel_of_hom(f: AbHom) -> tuple[PresentedAbelianGroup, AbHom]:
    """Kernel with its inclusion, computed from an integer kernel lattice."""
    src, tgt = f.source, f.target
    cols = [dict(c) for c in f._columns()]
    cols.extend(tgt.lattice_columns())
    ech = ColumnEchelon(cols, tgt.n)
    gens: list[tuple[int, ...]] = []
    for vec in ech.kernel_basis():
        x = vec[:src.n]
        if any(x):
            gens.append(tuple(x))
    # relations among the found generators, modulo the source lattice
    g_cols = [{i: v for i, v in enumerate(g) if v} for g in gens]
    rel_ech = ColumnEchelon(g_cols + src.lattice_columns(), src.n)
    rel_rows = [vec[:len(gens)] for vec in rel_ech.kernel_basis()]
    rel_rows = [r for r in rel_rows if any(r)]
    K = PresentedAbelianGroup(len(gens),
                              IntMatrix(rel_rows, len(rel_rows), len(gens)))
    incl = AbHom(K, src, IntMatrix.from_columns(gens, src.n), check=False)
    return K, incl


def cokernel_of_hom(f: AbHom) -> tuple[PresentedAbelianGroup, AbHom]:
    """Cokernel with its projection (target presented plus image rows)."""
    tgt = f.target
    rows = [list(r) for r in tgt.relations.data]
    for j in range(f.matrix.cols):
        rows.append(list(f.matrix.col(j)))
    C = PresentedAbelianGroup(tgt.n, IntMatrix(rows, len(rows), tgt.n))
    proj = AbHom(tgt, C, IntMatrix.identity(tgt.n), check=False)
    return C, proj


def image_invariants(f: AbHom) -> tuple[int, ...]:
    """Invariant factors of im(f) = source/ker(f)."""
    _, incl = kernel_of_hom(f)
    rows = [list(r) for r in f.source.relations.data]
    for j in range(incl.matrix.cols):
        rows.append(list(incl.matrix.col(j)))
    Q = PresentedAbelianGroup(f.source.n, IntMatrix(rows, len(rows), f.source.n))
    return Q.invariant_factors


def dual_finite(A: PresentedAbelianGroup):
    """Dual group Hom(A, Q/Z) of a finite A with its evaluation pairing.

    The dual is presented on one generator per Smith coordinate of A; the
    pairing is bi-additive and nondegenerate by construction.
    """
    if not A.is_finite:
        raise ValueError("dual_finite needs a finite group")
    mods = A.mods
    dual = PresentedAbelianGroup(A.n, IntMatrix.diagonal(mods, A.n, A.n))

    def eval_pairing(a: GroupElement, f: GroupElement) -> Fraction:
        if a.group is not A or f.group is not dual:
            raise ValueError("pairing arguments in wrong groups")
        y = A.snf_coords(a.coords)
        fy = dual.snf_coords(f.coords)
        total = Fraction(0)
        for yi, fi, m in zip(y, fy, mods):
            total += Fraction(yi * fi, m)
        return total % 1

    return dual, eval_pairing


@dataclass
class LadderKernels:
    """Kernel sequence of a commuting ladder, with its exactness certificate."""

    ker_a: PresentedAbelianGroup
    ker_b: PresentedAbelianGroup
    ker_c: PresentedAbelianGroup
    incl_a: AbHom
    incl_b: AbHom
    incl_c: AbHom
    f_star: AbHom
    g_star: AbHom
    certificate: dict


def _check_row_exact(f: AbHom, g: AbHom, name: str):
    if f.target is not g.source:
        raise ValueError(f"row {name}: maps not composable")
    K, _ = kernel_of_hom(f)
    if not K.is_trivial:
        raise ValueError(f"row {name}: first map is not injective")
    if not g.compose(f).is_zero_hom():
        raise ValueError(f"row {name}: composite is not zero")
    Kg, incl = kernel_of_hom(g)
    solver = SubgroupSolver(f.target,
                            [f.matrix.col(j) for j in range(f.matrix.cols)])
    for j in range(incl.matrix.cols):
        if not solver.contains(incl.matrix.col(j)):
            raise ValueError(f"row {name}: kernel exceeds image (not exact)")


def exact_ladder_kernels(f: AbHom, g: AbHom, f2: AbHom, g2: AbHom,
                         lam_a: AbHom, lam_b: AbHom, lam_c: AbHom) -> LadderKernels:
    """Induced sequence 0 -> ker lam_A -> ker lam_B -> ker lam_C.

    Both rows must be exact as given (0 -> A -> B -> C) and both squares must
    commute; violations raise errors naming the failing part.  The returned
    certificate records the injectivity and image-equals-kernel computations
    proving exactness at ker lam_A and ker lam_B.
    """
    _check_row_exact(f, g, "top")
    _check_row_exact(f2, g2, "bottom")
    if not lam_b.compose(f).equals_mod_target(f2.compose(lam_a)):
        raise ValueError("square A-B does not commute")
    if not lam_c.compose(g).equals_mod_target(g2.compose(lam_b)):
        raise ValueError("square B-C does not commute")

    ka, ia = kernel_of_hom(lam_a)
    kb, ib = kernel_of_hom(lam_b)
    kc, ic = kernel_of_hom(lam_c)

    def induce(hom: AbHom, ksrc, isrc, ktgt, itgt) -> AbHom:
        solver = SubgroupSolver(hom.target,
                                [itgt.matrix.col(j) for j in range(itgt.matrix.cols)])
        cols = []
        for j in range(isrc.matrix.cols):
            w = hom.matrix.apply(isrc.matrix.col(j))
            c = solver.solve(w)
            if c is None:
                raise ValueError("image of a kernel generator left the kernel")
            cols.append(c)
        return AbHom(ksrc, ktgt, IntMatrix.from_columns(cols, ktgt.n), check=False)

    f_star = induce(f, ka, ia, kb, ib)
    g_star = induce(g, kb, ib, kc, ic)

    cert: dict = {
        "ker_a_invariants": list(ka.invariant_factors),
        "ker_b_invariants": list(kb.invariant_factors),
        "ker_c_invariants": list(kc.invariant_factors),
    }
    kf, _ = kernel_of_hom(f_star)
    cert["exact_at_ker_a"] = kf.is_trivial
    comp_zero = g_star.compose(f_star).is_zero_hom()
    solver = SubgroupSolver(kb, [f_star.matrix.col(j)
                                 for j in range(f_star.matrix.cols)])
    kg, kg_incl = kernel_of_hom(g_star)
    ker_in_im = all(solver.contains(kg_incl.matrix.col(j))
                    for j in range(kg_incl.matrix.cols))
    cert["exact_at_ker_b"] = comp_zero and ker_in_im
    if not (cert["exact_at_ker_a"] and cert["exact_at_ker_b"]):
        raise ValueError(f"kernel sequence failed exactness: {cert}")
    return LadderKernels(ka, kb, kc, ia, ib, ic, f_star, g_star, cert)
