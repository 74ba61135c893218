"""Modules with an action of a finite group: permutation modules, twisted
duals, quasi-trivial resolutions, and the unit/Picard kernel-cokernel pair
for a character-lattice morphism.

Conventions: the dual twisted by a character chi mod n acts by
(g.f)(m) = chi(g) * f(g^{-1} m), which makes the evaluation pairing
M x M^dual -> Z/n(chi) equivariant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .abgroup import (AbHom, PresentedAbelianGroup, SubgroupSolver,
                      cokernel_of_hom, kernel_of_hom)
from .fingroup import FiniteGroup, Subgroup
from .intmat import IntMatrix


class GammaModule:
    """Finitely presented abelian group with a group action by matrices."""

    def __init__(self, group: FiniteGroup, underlying: PresentedAbelianGroup,
                 action: Sequence[IntMatrix], perm_sets=None, check: bool = True):
        if len(action) != group.order:
            raise ValueError("need one action matrix per group element")
        self.group = group
        self.underlying = underlying
        self.action = tuple(action)
        self.perm_sets = tuple(tuple(p) for p in perm_sets) if perm_sets else None
        if check:
            self._validate()

    def _validate(self):
        G, A = self.group, self.underlying
        n = A.n
        for g, m in enumerate(self.action):
            if m.rows != n or m.cols != n:
                raise ValueError("action matrix has wrong shape")
            AbHom(A, A, m)  # endomorphism well-definedness
        ident = self.action[G.identity]
        for j in range(n):
            col = list(ident.col(j))
            col[j] -= 1
            if not A.in_lattice(col):
                raise ValueError("identity does not act trivially")
        for g in range(G.order):
            for h in range(G.order):
                lhs = self.action[g] * self.action[h]
                rhs = self.action[G.mul(g, h)]
                diff = lhs - rhs
                for j in range(n):
                    if not A.in_lattice(diff.col(j)):
                        raise ValueError(
                            f"action is not a homomorphism at pair "
                            f"({G.labels[g]}, {G.labels[h]})")

    @property
    def is_permutation(self) -> bool:
        return self.perm_sets is not None

    def act_coords(self, g: int, coords: Sequence[int]) -> tuple[int, ...]:
        return self.underlying.normalize(self.action[g].apply(coords))

    def restrict(self, sub: Subgroup) -> "GammaModule":
        """Same underlying group, action only through the subgroup."""
        if sub.ambient is not self.group:
            raise ValueError("subgroup of a different group")
        acts = [self.action[g] for g in sub.ambient_index]
        perms = None
        if self.perm_sets is not None:
            perms = [self.perm_sets[g] for g in sub.ambient_index]
        return GammaModule(sub, self.underlying, acts, perms, check=False)

    def __repr__(self) -> str:
        return (f"GammaModule(|G|={self.group.order}, "
                f"invariants={list(self.underlying.invariant_factors)})")


def trivial_module(group: FiniteGroup,
                   underlying: PresentedAbelianGroup) -> GammaModule:
    ident = IntMatrix.identity(underlying.n)
    return GammaModule(group, underlying, [ident] * group.order, check=False)


class ModuleMap:
    """Equivariant homomorphism between modules over the same group."""

    def __init__(self, source: GammaModule, target: GammaModule,
                 hom: AbHom, check: bool = True):
        if source.group is not target.group:
            raise ValueError("modules over different groups")
        if hom.source is not source.underlying or hom.target is not target.underlying:
            raise ValueError("hom does not match the modules")
        self.source = source
        self.target = target
        self.hom = hom
        if check:
            self._validate()

    def _validate(self):
        T = self.target.underlying
        for g in range(self.source.group.order):
            diff = self.hom.matrix * self.source.action[g] \
                - self.target.action[g] * self.hom.matrix
            for j in range(diff.cols):
                if not T.in_lattice(diff.col(j)):
                    raise ValueError(
                        "map does not commute with the action at "
                        f"{self.source.group.labels[g]}")

    def compose(self, inner: "ModuleMap") -> "ModuleMap":
        return ModuleMap(inner.source, self.target,
                         self.hom.compose(inner.hom), check=False)


class CyclotomicCharacter:
    """Multiplicative map from a finite group into (Z/n)^*."""

    def __init__(self, group: FiniteGroup, modulus: int,
                 values: Sequence[int]):
        from math import gcd

        self.group = group
        self.modulus = int(modulus)
        self.values = tuple(int(v) % self.modulus for v in values)
        if len(self.values) != group.order:
            raise ValueError("need one value per group element")
        if self.values[group.identity] % self.modulus != 1 % self.modulus:
            raise ValueError("character must send identity to 1")
        for v in self.values:
            if gcd(v, self.modulus) != 1:
                raise ValueError("character values must be units")
        for a in range(group.order):
            for b in range(group.order):
                if (self.values[a] * self.values[b] - self.values[group.mul(a, b)]) % self.modulus:
                    raise ValueError("character is not multiplicative")

    def __call__(self, g: int) -> int:
        return self.values[g]


def trivial_character(group: FiniteGroup, modulus: int) -> CyclotomicCharacter:
    return CyclotomicCharacter(group, modulus, [1] * group.order)


def unit_action_character(group: FiniteGroup, modulus: int) -> CyclotomicCharacter:
    """For a (Z/m)^* group: reduce residues mod a divisor n of m."""
    residues = getattr(group, "residues", None)
    if residues is None:
        raise ValueError("group does not carry residue labels")
    return CyclotomicCharacter(group, modulus, [r % modulus for r in residues])


def chi_module(group: FiniteGroup, n: int, chi: CyclotomicCharacter) -> GammaModule:
    """Rank-one module Z/n with the group acting through chi."""
    und = PresentedAbelianGroup(1, IntMatrix([[n]]))
    acts = [IntMatrix([[chi(g)]]) for g in range(group.order)]
    return GammaModule(group, und, acts, check=False)


# -- permutation modules ---------------------------------------------------


def permutation_module(group: FiniteGroup,
                       perms: Sequence[Sequence[int]]) -> GammaModule:
    """Free module on a finite set permuted by the group."""
    k = len(perms[0])
    for g, p in enumerate(perms):
        if sorted(p) != list(range(k)):
            raise ValueError(f"action of {group.labels[g]} is not a permutation")
    for g in range(group.order):
        for h in range(group.order):
            gh = group.mul(g, h)
            if any(perms[g][perms[h][i]] != perms[gh][i] for i in range(k)):
                raise ValueError("permutations do not compose like the group")
    und = PresentedAbelianGroup(k, IntMatrix.zeros(0, k))
    mats = []
    for g in range(group.order):
        m = [[0] * k for _ in range(k)]
        for i in range(k):
            m[perms[g][i]][i] = 1
        mats.append(IntMatrix(m))
    return GammaModule(group, und, mats, perm_sets=perms, check=False)


def regular_module(group: FiniteGroup) -> GammaModule:
    perms = [[group.mul(g, h) for h in range(group.order)]
             for g in range(group.order)]
    return permutation_module(group, perms)


def coset_module(group: FiniteGroup, subgroup_elems: Sequence[int]) -> GammaModule:
    cosets = group.left_cosets(subgroup_elems)
    pos = {c: i for i, c in enumerate(cosets)}
    perms = []
    for g in range(group.order):
        perms.append([pos[tuple(sorted(group.mul(g, x) for x in c))]
                      for c in cosets])
    return permutation_module(group, perms)


# -- twisted duals -----------------------------------------------------------


def _exponent_divides(M: GammaModule, n: int) -> bool:
    A = M.underlying
    return all(A.in_lattice([n if i == j else 0 for i in range(A.n)])
               for j in range(A.n))


def twisted_dual(M: GammaModule, n: int, chi: CyclotomicCharacter) -> GammaModule:
    """Hom(M, Z/n) with (g.f)(m) = chi(g) * f(g^{-1} m).

    Presented on one generator per Smith coordinate of M, so the evaluation
    pairing has the diagonal form sum f_j * y_j(m) * (n / d_j).
    """
    A = M.underlying
    if not A.is_finite:
        raise ValueError("twisted dual needs a finite module")
    if not _exponent_divides(M, n):
        raise ValueError("module exponent does not divide the twist modulus")
    if chi.modulus != n:
        raise ValueError("character modulus mismatch")
    mods = A.mods
    und = PresentedAbelianGroup(A.n, IntMatrix.diagonal(mods, A.n, A.n))
    acts = []
    G = M.group
    for g in range(G.order):
        ginv = G.inv(g)
        # action of g^{-1} on M, written in Smith coordinates
        raw = M.action[ginv]
        cols = [A.snf_coords(raw.apply(A.from_snf_coords(
            [1 if i == j else 0 for i in range(A.n)]))) for j in range(A.n)]
        c = chi(g)
        mat = [[0] * A.n for _ in range(A.n)]
        for j in range(A.n):
            for k in range(A.n):
                num = mods[k] * cols[j][k]
                if num % mods[j]:
                    raise AssertionError("dual action divisibility failed")
                mat[k][j] = c * (num // mods[j])
        acts.append(IntMatrix(mat))
    dual = GammaModule(G, und, acts, check=False)
    dual.dual_of = M  # type: ignore[attr-defined]
    dual.twist = (n, chi)  # type: ignore[attr-defined]
    return dual


@dataclass
class BilinearPairing:
    """Equivariant bi-additive map left x right -> target."""

    left: GammaModule
    right: GammaModule
    target: GammaModule
    values: list[list[tuple[int, ...]]]  # [i][j] -> target coords

    def __post_init__(self):
        L, R, T = self.left.underlying, self.right.underlying, self.target.underlying
        for row in self.left.underlying.relations.data:
            for j in range(R.n):
                acc = [0] * T.n
                for i, c in enumerate(row):
                    if c:
                        for t, v in enumerate(self.values[i][j]):
                            acc[t] += c * v
                if not T.in_lattice(acc):
                    raise ValueError("pairing does not kill left relations")
        for row in self.right.underlying.relations.data:
            for i in range(L.n):
                acc = [0] * T.n
                for j, c in enumerate(row):
                    if c:
                        for t, v in enumerate(self.values[i][j]):
                            acc[t] += c * v
                if not T.in_lattice(acc):
                    raise ValueError("pairing does not kill right relations")
        G = self.left.group
        for g in range(G.order):
            for i in range(L.n):
                gx = self.left.action[g].col(i)
                for j in range(R.n):
                    gy = self.right.action[g].col(j)
                    lhs = self.evaluate(gx, gy)
                    rhs = self.target.act_coords(g, self.evaluate(
                        [1 if t == i else 0 for t in range(L.n)],
                        [1 if t == j else 0 for t in range(R.n)]))
                    if tuple(lhs) != tuple(rhs):
                        raise ValueError(
                            f"pairing is not equivariant at {G.labels[g]}")

    def evaluate(self, xcoords: Sequence[int], ycoords: Sequence[int]) -> tuple[int, ...]:
        T = self.target.underlying
        acc = [0] * T.n
        for i, xi in enumerate(xcoords):
            if not xi:
                continue
            for j, yj in enumerate(ycoords):
                if not yj:
                    continue
                v = self.values[i][j]
                for t in range(T.n):
                    acc[t] += xi * yj * v[t]
        return T.normalize(acc)


def evaluation_pairing(M: GammaModule, dual: GammaModule) -> BilinearPairing:
    """The canonical pairing M x twisted_dual(M) -> Z/n(chi)."""
    if getattr(dual, "dual_of", None) is not M:
        raise ValueError("second argument is not the twisted dual of the first")
    n, chi = dual.twist  # type: ignore[attr-defined]
    A = M.underlying
    mods = A.mods
    target = chi_module(M.group, n, chi)
    values: list[list[tuple[int, ...]]] = []
    for i in range(A.n):
        y = A.snf_coords([1 if t == i else 0 for t in range(A.n)])
        row = []
        for j in range(A.n):
            row.append(((n // mods[j]) * y[j] % n,))
        values.append(row)
    return BilinearPairing(M, dual, target, values)


def double_dual_map(M: GammaModule, dual: GammaModule,
                    double: GammaModule) -> ModuleMap:
    """Natural map M -> (M^dual)^dual; an isomorphism for finite M."""
    if getattr(double, "dual_of", None) is not dual:
        raise ValueError("third argument is not the dual of the second")
    A = M.underlying
    # in the chosen coordinates the natural map is the Smith transform of M
    rows = [list(A.snf_coords([1 if t == j else 0 for t in range(A.n)]))
            for j in range(A.n)]
    mat = IntMatrix(list(zip(*rows)), A.n, A.n)
    return ModuleMap(M, double, AbHom(A, double.underlying, mat))


def dual_module_map(f: ModuleMap, src_dual: GammaModule,
                    tgt_dual: GammaModule) -> ModuleMap:
    """Contravariant dual of f: dual(target) -> dual(source)."""
    if getattr(src_dual, "dual_of", None) is not f.source:
        raise ValueError("src_dual is not the dual of f.source")
    if getattr(tgt_dual, "dual_of", None) is not f.target:
        raise ValueError("tgt_dual is not the dual of f.target")
    A, B = f.source.underlying, f.target.underlying
    amods, bmods = A.mods, B.mods
    # f in Smith coordinates on both sides
    ft = [[0] * A.n for _ in range(B.n)]
    for j in range(A.n):
        col = B.snf_coords(f.hom.matrix.apply(
            A.from_snf_coords([1 if t == j else 0 for t in range(A.n)])))
        for i in range(B.n):
            ft[i][j] = col[i]
    mat = [[0] * B.n for _ in range(A.n)]
    for j in range(B.n):
        for k in range(A.n):
            num = amods[k] * ft[j][k]
            if num % bmods[j]:
                raise AssertionError("dual map divisibility failed")
            mat[k][j] = num // bmods[j]
    return ModuleMap(tgt_dual, src_dual,
                     AbHom(tgt_dual.underlying, src_dual.underlying,
                           IntMatrix(mat)))


# -- kernels, cokernels, resolutions ----------------------------------------


def kernel_module(f: ModuleMap) -> tuple[GammaModule, ModuleMap]:
    """Kernel with inherited action and its inclusion."""
    K, incl = kernel_of_hom(f.hom)
    src = f.source
    cols = [incl.matrix.col(j) for j in range(incl.matrix.cols)]
    solver = SubgroupSolver(src.underlying, cols)
    acts = []
    for g in range(src.group.order):
        new_cols = []
        for j in range(K.n):
            w = src.action[g].apply(cols[j])
            c = solver.solve(list(w))
            if c is None:
                raise AssertionError("kernel is not action-stable")
            new_cols.append(c)
        acts.append(IntMatrix.from_columns(new_cols, K.n))
    Kmod = GammaModule(src.group, K, acts)
    return Kmod, ModuleMap(Kmod, src, incl, check=False)


def cokernel_module(f: ModuleMap) -> tuple[GammaModule, ModuleMap]:
    """Cokernel with inherited action and its projection."""
    C, proj = cokernel_of_hom(f.hom)
    tgt = f.target
    Cmod = GammaModule(tgt.group, C, tgt.action)
    return Cmod, ModuleMap(tgt, Cmod, proj, check=False)


def units_module(phi: ModuleMap) -> GammaModule:
    """Kernel of a character-map; the invertible-functions module."""
    return kernel_module(phi)[0]


def picard_module(phi: ModuleMap) -> GammaModule:
    """Cokernel of a character-map; the geometric Picard module."""
    return cokernel_module(phi)[0]


def quasi_trivial_resolution(M: GammaModule):
    """Surjection from a direct sum of group rings, one per generator of M.

    Returns (P, pi, K, incl) with P permutation, pi onto, K = ker(pi)
    torsion-free.
    """
    G = M.group
    N = G.order
    gens = M.underlying.n
    if gens == 0:
        und = PresentedAbelianGroup(0, IntMatrix.zeros(0, 0))
        P = GammaModule(G, und, [IntMatrix.zeros(0, 0)] * N, perm_sets=None,
                        check=False)
        pi = ModuleMap(P, M, AbHom(und, M.underlying,
                                   IntMatrix.zeros(M.underlying.n, 0)),
                       check=False)
        K, incl = kernel_module(pi)
        return P, pi, K, incl
    # block b covers generator b with a regular summand; index = b*N + h
    perms = []
    for g in range(N):
        p = [0] * (gens * N)
        for b in range(gens):
            for h in range(N):
                p[b * N + h] = b * N + G.mul(g, h)
        perms.append(p)
    P = permutation_module(G, perms)
    cols = []
    for b in range(gens):
        e_b = [1 if t == b else 0 for t in range(gens)]
        for h in range(N):
            cols.append(M.action[h].apply(e_b))
    pi = ModuleMap(P, M, AbHom(P.underlying, M.underlying,
                               IntMatrix.from_columns(cols, M.underlying.n),
                               check=False))
    C, _ = cokernel_of_hom(pi.hom)
    if not C.is_trivial:
        raise AssertionError("resolution map is not surjective")
    K, incl = kernel_module(pi)
    if any(d != 0 for d in K.underlying.invariant_factors):
        raise AssertionError("resolution kernel has torsion")
    return P, pi, K, incl


def induced_module(group: FiniteGroup, sub: Subgroup, M: GammaModule) -> GammaModule:
    """Induction from a subgroup: blocks indexed by left cosets."""
    if M.group is not sub:
        raise ValueError("module must live over the subgroup")
    cosets = group.left_cosets(sub.ambient_index)
    reps = [min(c) for c in cosets]
    coset_of = {}
    for i, c in enumerate(cosets):
        for x in c:
            coset_of[x] = i
    sub_pos = {g: i for i, g in enumerate(sub.ambient_index)}
    k = M.underlying.n
    n = len(cosets) * k
    rel = M.underlying.relations
    rows = []
    for b in range(len(cosets)):
        for r in rel.data:
            if any(r):
                row = [0] * n
                row[b * k:(b + 1) * k] = r
                rows.append(row)
    und = PresentedAbelianGroup(n, IntMatrix(rows, len(rows), n))
    acts = []
    for g in range(group.order):
        m = [[0] * n for _ in range(n)]
        for i in range(len(cosets)):
            gi = group.mul(g, reps[i])
            j = coset_of[gi]
            delta = group.mul(group.inv(reps[j]), gi)
            a = M.action[sub_pos[delta]]
            for cc in range(k):
                for rr in range(k):
                    m[j * k + rr][i * k + cc] = a[rr, cc]
        acts.append(IntMatrix(m))
    return GammaModule(group, und, acts)
