"""Group cohomology of finite groups in degrees 0..2 via unnormalized
inhomogeneous cochains, plus restriction, connecting maps, cup products,
an induced-module comparison, and an exhaustive enumeration oracle.

Cochains in degree q live in the direct power M^(|G|^q) indexed by tuples in
lexicographic order.  Degree is capped at 2 for cohomology groups and 3 for
differentials; nothing here needs more.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .abgroup import (AbHom, DirectPowerGroup, GroupElement,
                      PresentedAbelianGroup, SubgroupSolver, cokernel_of_hom,
                      invariant_factors_from_mods, kernel_of_hom)
from .fingroup import FiniteGroup, Subgroup
from .gmodule import BilinearPairing, GammaModule, ModuleMap
from .intmat import ColumnEchelon, IntMatrix

MAX_DEGREE = 2


class CochainSpace:
    """C^q(G, M) as a direct power of the underlying group of M."""

    def __init__(self, module: GammaModule, q: int):
        if q < 0 or q > MAX_DEGREE + 1:
            raise ValueError("cochain degree out of range")
        self.module = module
        self.q = q
        N = module.group.order
        self.tuples: list[tuple[int, ...]] = list(product(range(N), repeat=q))
        self.tuple_index = {t: i for i, t in enumerate(self.tuples)}
        self.block = module.underlying.n
        self.group = DirectPowerGroup(module.underlying, len(self.tuples))

    @property
    def dim(self) -> int:
        return self.group.n

    def offset(self, tup: tuple[int, ...]) -> int:
        return self.tuple_index[tup] * self.block

    def value(self, coords: Sequence[int], tup: tuple[int, ...]) -> tuple[int, ...]:
        o = self.offset(tup)
        return self.module.underlying.normalize(coords[o:o + self.block])


@dataclass
class Cochain:
    """Inhomogeneous cochain: one element of the product group."""

    space: CochainSpace
    coords: tuple[int, ...]

    def __post_init__(self):
        self.coords = tuple(self.space.group.normalize(self.coords))

    @property
    def degree(self) -> int:
        return self.space.q

    def evaluate(self, *args: int) -> tuple[int, ...]:
        return self.space.value(self.coords, tuple(args))

    def add(self, other: "Cochain") -> "Cochain":
        return Cochain(self.space,
                       tuple(a + b for a, b in zip(self.coords, other.coords)))

    def neg(self) -> "Cochain":
        return Cochain(self.space, tuple(-a for a in self.coords))


def _differential_columns(module: GammaModule, q: int,
                          src: CochainSpace, tgt: CochainSpace):
    """Sparse columns of d_q: C^q -> C^{q+1}."""
    G = module.group
    n = module.underlying.n
    cols: list[dict[int, int]] = [dict() for _ in range(src.dim)]

    def add_entry(col, row, val):
        x = col.get(row, 0) + val
        if x:
            col[row] = x
        else:
            col.pop(row, None)

    act_cols = [[module.action[g].col(j) for j in range(n)]
                for g in range(G.order)]
    for T in tgt.tuples:
        t_off = tgt.offset(T)
        head, rest = T[0], T[1:]
        s_off = src.offset(rest)
        for j in range(n):
            col = cols[s_off + j]
            for r, v in enumerate(act_cols[head][j]):
                if v:
                    add_entry(col, t_off + r, v)
        sign = -1
        for i in range(q):
            merged = T[:i] + (G.mul(T[i], T[i + 1]),) + T[i + 2:]
            s_off = src.offset(merged)
            for j in range(n):
                add_entry(cols[s_off + j], t_off + j, sign)
            sign = -sign
        s_off = src.offset(T[:q])
        for j in range(n):
            add_entry(cols[s_off + j], t_off + j, sign)
    return cols


def _matrix_from_sparse_columns(cols, nrows) -> IntMatrix:
    rows = [[0] * len(cols) for _ in range(nrows)]
    for j, col in enumerate(cols):
        for i, v in col.items():
            rows[i][j] = v
    return IntMatrix(rows, nrows, len(cols))


def differential(module: GammaModule, q: int) -> AbHom:
    """The bar differential d_q as a homomorphism C^q -> C^{q+1}."""
    if q > MAX_DEGREE:
        raise ValueError("differential degree capped at 2")
    src = CochainSpace(module, q)
    tgt = CochainSpace(module, q + 1)
    cols = _differential_columns(module, q, src, tgt)
    return AbHom(src.group, tgt.group,
                 _matrix_from_sparse_columns(cols, tgt.dim))


class CohGroup:
    """H^q(G, M) with functional lift/project between classes and cocycles.

    Three computation strategies, picked by coefficient shape:

    * degree 0 or mixed torsion/free coefficients: direct integer echelon
      (these instances are small);
    * finite coefficients: integer echelon with the cochain-lattice columns
      placed first, so every pivot divides the exponent and entries stay
      bounded;
    * torsion-free coefficients in degree >= 1: |G| times any cocycle is a
      coboundary (explicit averaging homotopy), so the cocycle lattice is
      spanned by the coboundaries together with the |G|-torsion of
      C^q/im(d), which the Smith form of the small previous differential
      hands over directly.
    """

    def __init__(self, module: GammaModule, q: int):
        if q > MAX_DEGREE:
            raise ValueError("cohomology degree capped at 2")
        self.module = module
        self.degree = q
        self.space = CochainSpace(module, q)
        self._tgt_space = CochainSpace(module, q + 1)
        self._d_cols = _differential_columns(module, q, self.space,
                                             self._tgt_space)
        prev_cols: list[dict[int, int]] = []
        if q > 0:
            prev_src = CochainSpace(module, q - 1)
            prev_cols = _differential_columns(module, q - 1, prev_src,
                                              self.space)
        mods = module.underlying.mods
        finite = all(m > 0 for m in mods)
        free = all(m == 0 or m == 1 for m in mods)
        if q >= 1 and free and module.underlying.n > 0:
            self._init_torsion_free(prev_cols)
        else:
            self._init_generic(prev_cols, lattice_first=finite and q >= 1)

    def _init_generic(self, prev_cols, lattice_first: bool):
        tgt_lat = self._tgt_space.group.lattice_columns()
        d_cols = [dict(c) for c in self._d_cols]
        if lattice_first:
            ech = ColumnEchelon(tgt_lat + d_cols, self._tgt_space.dim)
            off = len(tgt_lat)
        else:
            ech = ColumnEchelon(d_cols + tgt_lat, self._tgt_space.dim)
            off = 0
        gens: list[tuple[int, ...]] = []
        for vec in ech.kernel_basis():
            x = (vec[off:off + self.space.dim] if lattice_first
                 else vec[:self.space.dim])
            if any(x):
                gens.append(tuple(x))
        self._gens = gens
        gen_cols = [{i: v for i, v in enumerate(g) if v} for g in gens]
        src_lat = self.space.group.lattice_columns()
        pcols = [dict(c) for c in prev_cols]
        self._mod_cols = src_lat + pcols + gen_cols
        self._gen_slice = len(src_lat) + len(pcols)
        self._solver = ColumnEchelon(self._mod_cols, self.space.dim)
        rel_rows = [vec[self._gen_slice:] for vec in self._solver.kernel_basis()]
        rel_rows = [r for r in rel_rows if any(r)]
        self.group = PresentedAbelianGroup(
            len(gens), IntMatrix(rel_rows, len(rel_rows), len(gens)))

    def _init_torsion_free(self, prev_cols):
        from .intmat import smith_normal_form

        N = self.module.group.order
        dim = self.space.dim
        pcols = [dict(c) for c in prev_cols]
        B = _matrix_from_sparse_columns(pcols, dim)
        s = smith_normal_form(B)
        # candidates for cocycles outside im(d_prev): lifts of the N-torsion
        # of C^q/im(d_prev); N * Z^q(G,M) <= im(d_prev) via the averaging
        # homotopy, so these candidates together with the coboundaries span
        # the full cocycle lattice.
        taus: list[tuple[int, ...]] = []
        from math import gcd as _gcd

        for i, d in enumerate(s.diag):
            if d <= 1:
                continue
            g = _gcd(N, d)
            if g == 1:
                continue
            scale = d // g
            taus.append(tuple(scale * s.Uinv[r, i] for r in range(dim)))
        # keep only combinations that are genuine cocycles
        img_cols = []
        for t in taus:
            img: dict[int, int] = {}
            for j, c in enumerate(t):
                if c:
                    for r, v in self._d_cols[j].items():
                        x = img.get(r, 0) + c * v
                        if x:
                            img[r] = x
                        else:
                            del img[r]
            img_cols.append(img)
        filt = ColumnEchelon(img_cols, self._tgt_space.dim)
        gens: list[tuple[int, ...]] = []
        for vec in filt.kernel_basis():
            acc = [0] * dim
            for j, c in enumerate(vec):
                if c:
                    t = taus[j]
                    for r in range(dim):
                        acc[r] += c * t[r]
            if any(acc):
                gens.append(tuple(acc))
        self._gens = gens
        gen_cols = [{i: v for i, v in enumerate(g) if v} for g in gens]
        self._mod_cols = pcols + gen_cols
        self._gen_slice = len(pcols)
        self._solver = ColumnEchelon(self._mod_cols, dim)
        rel_rows = [vec[self._gen_slice:] for vec in self._solver.kernel_basis()]
        rel_rows = [r for r in rel_rows if any(r)]
        self.group = PresentedAbelianGroup(
            len(gens), IntMatrix(rel_rows, len(rel_rows), len(gens)))

    def lift(self, coords: Sequence[int]) -> Cochain:
        """A genuine cocycle representing the given class coordinates."""
        acc = [0] * self.space.dim
        for j, c in enumerate(coords):
            if c:
                g = self._gens[j]
                for i in range(self.space.dim):
                    acc[i] += c * g[i]
        return Cochain(self.space, tuple(acc))

    def is_cocycle(self, coords: Sequence[int]) -> bool:
        img: dict[int, int] = {}
        for j, c in enumerate(coords):
            if c:
                for i, v in self._d_cols[j].items():
                    x = img.get(i, 0) + c * v
                    if x:
                        img[i] = x
                    else:
                        del img[i]
        return self._tgt_space.group.in_lattice_sparse(img)

    def project(self, coords: Sequence[int]) -> GroupElement:
        """Class of a cocycle; rejects non-cocycles."""
        if not self.is_cocycle(coords):
            raise ValueError("not a cocycle")
        sol = self._solver.solve(list(coords))
        if sol is None:
            raise AssertionError("cocycle escaped the cocycle lattice")
        return self.group.element(sol[self._gen_slice:self._gen_slice + self.group.n])

    def classes(self):
        return list(self.group.elements())

    def zero_class(self) -> GroupElement:
        return self.group.zero()

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self.group.invariant_factors

    def __repr__(self) -> str:
        return (f"H^{self.degree}(|G|={self.module.group.order}; "
                f"{list(self.invariant_factors)})")


def cohomology(module: GammaModule, q: int) -> CohGroup:
    return CohGroup(module, q)


def assert_dd_zero(module: GammaModule, q: int):
    """d_{q+1} after d_q kills every generator exactly (matrix identity)."""
    src = CochainSpace(module, q)
    mid = CochainSpace(module, q + 1)
    tgt = CochainSpace(module, q + 2)
    d1 = _differential_columns(module, q, src, mid)
    d2 = _differential_columns(module, q + 1, mid, tgt)
    for col in d1:
        acc: dict[int, int] = {}
        for i, v in col.items():
            for r, w in d2[i].items():
                x = acc.get(r, 0) + v * w
                if x:
                    acc[r] = x
                else:
                    del acc[r]
        if acc:
            raise AssertionError("d o d is not zero")


# -- restriction -------------------------------------------------------------


def restrict_cochain(c: Cochain, sub_space: CochainSpace) -> Cochain:
    """Precompose a cochain with the inclusion of a subgroup."""
    sub = sub_space.module.group
    if not isinstance(sub, Subgroup):
        raise ValueError("target space is not over a subgroup")
    coords = []
    for t in sub_space.tuples:
        amb = tuple(sub.ambient_index[g] for g in t)
        coords.extend(c.space.value(c.coords, amb))
    return Cochain(sub_space, tuple(coords))


def restrict_class(cls: GroupElement, src: CohGroup, tgt: CohGroup) -> GroupElement:
    """Restriction of a cohomology class to a subgroup-level group."""
    rep = src.lift(cls.coords)
    return tgt.project(restrict_cochain(rep, tgt.space).coords)


def restriction_hom(src: CohGroup, tgt: CohGroup) -> AbHom:
    cols = []
    for i in range(src.group.n):
        e = [1 if j == i else 0 for j in range(src.group.n)]
        cols.append(restrict_class(src.group.element(e), src, tgt).coords)
    return AbHom(src.group, tgt.group,
                 IntMatrix.from_columns(cols, tgt.group.n), check=False)


def conjugation_iso(src: CohGroup, tgt: CohGroup, g: int,
                    ambient: GammaModule) -> AbHom:
    """H^q(D, M) -> H^q(gDg^{-1}, M), f |-> (x.. -> g.f(g^{-1}x g, ..))."""
    D = src.module.group
    E = tgt.module.group
    amb = D.ambient  # type: ignore[attr-defined]
    gi = amb.inv(g)
    cols = []
    for i in range(src.group.n):
        rep = src.lift([1 if j == i else 0 for j in range(src.group.n)])
        coords = []
        for t in tgt.space.tuples:
            back = tuple(D.ambient_index.index(
                amb.mul(amb.mul(gi, E.ambient_index[x]), g)) for x in t)
            val = rep.space.value(rep.coords, back)
            coords.extend(ambient.action[g].apply(val))
        cols.append(tgt.project(Cochain(tgt.space, tuple(coords)).coords).coords)
    return AbHom(src.group, tgt.group,
                 IntMatrix.from_columns(cols, tgt.group.n), check=False)


# -- short exact sequences and connecting maps -------------------------------


class ShortExactSequence:
    """0 -> A -> B -> C -> 0 of modules; exactness checked on construction."""

    def __init__(self, iota: ModuleMap, pi: ModuleMap):
        if iota.target is not pi.source:
            raise ValueError("maps do not share the middle module")
        self.iota = iota
        self.pi = pi
        K, _ = kernel_of_hom(iota.hom)
        if not K.is_trivial:
            raise ValueError("first map is not injective")
        C, _ = cokernel_of_hom(pi.hom)
        if not C.is_trivial:
            raise ValueError("second map is not surjective")
        if not pi.hom.compose(iota.hom).is_zero_hom():
            raise ValueError("composite is not zero")
        Kp, incl = kernel_of_hom(pi.hom)
        solver = SubgroupSolver(iota.target.underlying,
                                [iota.hom.matrix.col(j)
                                 for j in range(iota.hom.matrix.cols)])
        for j in range(incl.matrix.cols):
            if not solver.contains(incl.matrix.col(j)):
                raise ValueError("kernel of the quotient map exceeds the image")
        B = iota.target.underlying
        self._lift_solver = ColumnEchelon(
            [{i: v for i, v in enumerate(pi.hom.matrix.col(j)) if v}
             for j in range(B.n)] + pi.target.underlying.lattice_columns(),
            pi.target.underlying.n)
        A = iota.source.underlying
        self._pull_solver = ColumnEchelon(
            [{i: v for i, v in enumerate(iota.hom.matrix.col(j)) if v}
             for j in range(A.n)] + B.lattice_columns(),
            B.n)

    @property
    def a(self) -> GammaModule:
        return self.iota.source

    @property
    def b(self) -> GammaModule:
        return self.iota.target

    @property
    def c(self) -> GammaModule:
        return self.pi.target

    def lift_through_pi(self, coords: Sequence[int]) -> tuple[int, ...]:
        sol = self._lift_solver.solve(list(coords))
        if sol is None:
            raise AssertionError("quotient map lift failed")
        return self.b.underlying.normalize(sol[:self.b.underlying.n])

    def pull_through_iota(self, coords: Sequence[int]) -> tuple[int, ...]:
        sol = self._pull_solver.solve(list(coords))
        if sol is None:
            raise ValueError("element is not in the image of the submodule")
        return self.a.underlying.normalize(sol[:self.a.underlying.n])


def connecting_class(ses: ShortExactSequence, cls: GroupElement,
                     src: CohGroup, tgt: CohGroup,
                     shift: Cochain | None = None) -> GroupElement:
    """Connecting map H^q(C) -> H^{q+1}(A) for q = 0, 1.

    Lifts the representative through pi (deterministic particular solution,
    optionally shifted by a B-valued cochain for the independence re-check),
    differentiates, and rewrites the result through iota.
    """
    if src.module is not ses.c:
        raise ValueError("class does not live over the quotient module")
    q = src.degree
    if q > 1:
        raise ValueError("connecting map implemented for degrees 0 and 1")
    rep = src.lift(cls.coords)
    bspace = CochainSpace(ses.b, q)
    bcoords: list[int] = []
    for t in bspace.tuples:
        bcoords.extend(ses.lift_through_pi(rep.space.value(rep.coords, t)))
    if shift is not None:
        if shift.space.module is not ses.b or shift.degree != q:
            raise ValueError("shift must be a B-valued cochain of the same degree")
        bcoords = [a + b for a, b in zip(bcoords, shift.coords)]
    d_cols = _differential_columns(ses.b, q, bspace, CochainSpace(ses.b, q + 1))
    out_space = CochainSpace(ses.b, q + 1)
    img = [0] * out_space.dim
    for j, c in enumerate(bcoords):
        if c:
            for i, v in d_cols[j].items():
                img[i] += c * v
    acoords: list[int] = []
    for t in out_space.tuples:
        o = out_space.offset(t)
        block = img[o:o + ses.b.underlying.n]
        acoords.extend(ses.pull_through_iota(block))
    return tgt.project(tuple(acoords))


# -- cup products -------------------------------------------------------------


def cup(f: Cochain, t: Cochain, pairing: BilinearPairing) -> Cochain:
    """(f cup t)(g.., h..) = <f(g..), (g_1...g_p) . t(h..)>."""
    if f.space.module is not pairing.left or t.space.module is not pairing.right:
        raise ValueError("cochain modules do not match the pairing")
    G = pairing.left.group
    p, q = f.degree, t.degree
    out = CochainSpace(pairing.target, p + q)
    coords: list[int] = []
    for T in out.tuples:
        gs, hs = T[:p], T[p:]
        gprod = G.identity
        for g in gs:
            gprod = G.mul(gprod, g)
        fv = f.space.value(f.coords, gs)
        tv = pairing.right.act_coords(gprod, t.space.value(t.coords, hs))
        coords.extend(pairing.evaluate(fv, tv))
    return Cochain(out, tuple(coords))


def cup_classes(c1: GroupElement, h1: CohGroup, c2: GroupElement, h2: CohGroup,
                pairing: BilinearPairing, target: CohGroup) -> GroupElement:
    if h1.degree + h2.degree != target.degree:
        raise ValueError("degree mismatch in class cup product")
    w = cup(h1.lift(c1.coords), h2.lift(c2.coords), pairing)
    return target.project(w.coords)


# -- induced-module comparison ------------------------------------------------


def shapiro_compare(group: FiniteGroup, sub: Subgroup, M: GammaModule,
                    q: int) -> dict:
    """Orders of H^q(G, Ind M) vs H^q(sub, M), with an order/exponent verdict."""
    from .gmodule import induced_module

    ind = induced_module(group, sub, M)
    hg = cohomology(ind, q)
    hd = cohomology(M, q)
    gi, di = hg.invariant_factors, hd.invariant_factors
    if 0 in gi or 0 in di:
        raise ValueError("induced comparison expects finite cohomology")
    order_g = 1
    for d in gi:
        order_g *= d
    order_d = 1
    for d in di:
        order_d *= d
    exp_g = gi[-1] if gi else 1
    exp_d = di[-1] if di else 1
    return {
        "degree": q,
        "induced_invariants": list(gi),
        "subgroup_invariants": list(di),
        "orders": [order_g, order_d],
        "exponents": [exp_g, exp_d],
        "isomorphic_by_order_and_exponent": gi == di,
    }


# -- exhaustive oracle --------------------------------------------------------

ORACLE_GUARD = 10 ** 6


class EnumerationGuardError(ValueError):
    """Raised when the brute-force search space exceeds the guard."""


@dataclass
class BruteForceResult:
    degree: int
    invariant_factors: tuple[int, ...]
    num_cocycles: int
    num_coboundaries: int

    @property
    def order(self) -> int:
        o = 1
        for d in self.invariant_factors:
            o *= d
        return o


def brute_force_cohomology(module: GammaModule, q: int,
                           guard: int = ORACLE_GUARD) -> BruteForceResult:
    """H^q by exhaustive cochain enumeration; independent of the SNF path.

    Invariant factors are reconstructed from order statistics of the class
    group, never from matrix normal forms.
    """
    A = module.underlying
    if not A.is_finite:
        raise ValueError("oracle needs finite coefficients")
    G = module.group
    N = G.order
    els = [e.coords for e in A.elements()]
    size = len(els)
    if size ** (N ** q) > guard:
        raise EnumerationGuardError(
            f"|M|^(|G|^q) = {size}^{N ** q} exceeds the enumeration guard")
    index = {e: i for i, e in enumerate(els)}
    zero = index[A.normalize((0,) * A.n)]
    add = [[index[A.normalize(tuple(x + y for x, y in zip(a, b)))]
            for b in els] for a in els]
    neg = [index[A.normalize(tuple(-x for x in a))] for a in els]
    act = [[index[module.act_coords(g, e)] for e in els] for g in range(N)]

    if q == 0:
        fixed = [i for i in range(size)
                 if all(act[g][i] == i for g in range(N))]
        invs = _group_structure_from_set(fixed, add, neg, zero)
        return BruteForceResult(0, invs, len(fixed), 1)

    tuples = list(product(range(N), repeat=q))
    tpos = {t: i for i, t in enumerate(tuples)}
    T = len(tuples)
    checks = []
    for full in product(range(N), repeat=q + 1):
        if q == 1:
            g, h = full
            checks.append((act[g], tpos[(h,)], tpos[(G.mul(g, h),)],
                           tpos[(g,)]))
        else:
            g, h, k = full
            checks.append((act[g], tpos[(h, k)], tpos[(G.mul(g, h), k)],
                           tpos[(g, G.mul(h, k))], tpos[(g, h)]))

    cocycles = []
    if q == 1:
        for f in product(range(size), repeat=T):
            ok = True
            for actg, ih, igh, ig in checks:
                if add[actg[f[ih]]][f[ig]] != f[igh]:
                    ok = False
                    break
            if ok:
                cocycles.append(f)
    else:
        for f in product(range(size), repeat=T):
            ok = True
            for actg, ihk, ighk, ighk2, igh in checks:
                # g.f(h,k) - f(gh,k) + f(g,hk) - f(g,h) = 0
                lhs = add[actg[f[ihk]]][f[ighk2]]
                rhs = add[f[ighk]][f[igh]]
                if lhs != rhs:
                    ok = False
                    break
            if ok:
                cocycles.append(f)

    prev_tuples = list(product(range(N), repeat=q - 1))
    ppos = {t: i for i, t in enumerate(prev_tuples)}
    coboundaries = set()
    for w in product(range(size), repeat=len(prev_tuples)):
        img = []
        for t in tuples:
            if q == 1:
                (g,) = t
                v = add[act[g][w[0]]][neg[w[0]]]
            else:
                g, h = t
                v = add[act[g][w[ppos[(h,)]]]][
                    add[neg[w[ppos[(G.mul(g, h),)]]]][w[ppos[(g,)]]]]
            img.append(v)
        coboundaries.add(tuple(img))

    cob = sorted(coboundaries)
    class_of: dict[tuple, int] = {}
    reps: list[tuple] = []
    for z in cocycles:
        if z in class_of:
            continue
        cid = len(reps)
        reps.append(z)
        for b in cob:
            shifted = tuple(add[x][y] for x, y in zip(z, b))
            class_of[shifted] = cid

    def class_add(i, j):
        s = tuple(add[x][y] for x, y in zip(reps[i], reps[j]))
        return class_of[s]

    ids = list(range(len(reps)))
    invs = _group_structure_from_table(ids, class_add,
                                       class_of[tuple(zero for _ in range(T))])
    return BruteForceResult(q, invs, len(cocycles), len(cob))


def _group_structure_from_table(ids, addfn, zero_id) -> tuple[int, ...]:
    """Invariant factors of a finite abelian group from order statistics.

    For each prime p, the p-part of #{x : p^k x = 0} equals
    p^(sum_i min(k, e_i)) over the cyclic p-power factors p^(e_i); the
    successive differences of those exponents recover the multiset {e_i}.
    """
    orders = {}
    for i in ids:
        k, x = 1, i
        while x != zero_id:
            x = addfn(x, i)
            k += 1
        orders[i] = k
    primes: set[int] = set()
    for k in orders.values():
        d, kk = 2, k
        while d * d <= kk:
            if kk % d == 0:
                primes.add(d)
                while kk % d == 0:
                    kk //= d
            d += 1
        if kk > 1:
            primes.add(kk)
    powers: list[int] = []
    for p in sorted(primes):
        max_e = max(_exact_p_log(o, p) for o in orders.values())
        logs = []
        for k in range(max_e + 1):
            c = sum(1 for i in ids if _p_part(orders[i], p) <= p ** k)
            logs.append(_exact_p_log(c, p))
        ge = [logs[k + 1] - logs[k] for k in range(max_e)]  # #factors with e > k
        for k in range(max_e):
            nxt = ge[k + 1] if k + 1 < max_e else 0
            powers.extend([p ** (k + 1)] * (ge[k] - nxt))
    return invariant_factors_from_mods(tuple(powers))


def _p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def _exact_p_log(c: int, p: int) -> int:
    e = 0
    while c % p == 0:
        c //= p
        e += 1
    return e


def _group_structure_from_set(members, add, neg, zero) -> tuple[int, ...]:
    ids = list(members)
    pos = {m: i for i, m in enumerate(ids)}

    def addfn(i, j):
        return pos[add[ids[i]][ids[j]]]

    return _group_structure_from_table(list(range(len(ids))), addfn, pos[zero])
