import random

import pytest

from wao.abgroup import AbHom, PresentedAbelianGroup
from wao.fingroup import (build_group, cyclic_group, group_from_table,
                          product_of_cyclic_groups, unit_group_mod)
from wao.gmodule import (CyclotomicCharacter, GammaModule, ModuleMap,
                         coset_module, double_dual_map, dual_module_map,
                         evaluation_pairing, induced_module, kernel_module,
                         permutation_module, picard_module,
                         quasi_trivial_resolution, regular_module,
                         trivial_character, trivial_module,
                         unit_action_character, units_module, twisted_dual)
from wao.intmat import IntMatrix


def Zmod(*mods):
    return PresentedAbelianGroup(len(mods), IntMatrix.diagonal(mods))


def test_group_builders():
    c4 = cyclic_group(4)
    assert c4.order == 4 and c4.element_order(1) == 4
    u8 = unit_group_mod(8)
    assert u8.order == 4
    assert all(u8.element_order(g) <= 2 for g in range(4))
    v4 = product_of_cyclic_groups([2, 2])
    assert v4.order == 4 and v4.is_abelian()
    assert build_group({"type": "cyclic", "n": 3}).order == 3


def test_bad_table_names_triple():
    # left translation table of a non-associative magma
    table = [[0, 1, 2], [1, 2, 0], [2, 1, 0]]
    with pytest.raises(ValueError):
        group_from_table(table)


def test_subgroups():
    u8 = unit_group_mod(8)
    subs = u8.cyclic_subgroups()
    assert len(subs) == 4  # trivial plus three order-2 subgroups
    s = u8.subgroup(u8.generated_subgroup([u8.identity]))
    assert s.order == 1
    cosets = u8.left_cosets(subs[1])
    assert len(cosets) == 2


def mu8_module():
    """Z/8 with (Z/8)^* acting by multiplication."""
    g = unit_group_mod(8)
    und = Zmod(8)
    acts = [IntMatrix([[r]]) for r in g.residues]
    return g, GammaModule(g, und, acts)


def test_module_validation():
    g, m = mu8_module()
    assert not m.is_permutation
    szbad = [IntMatrix([[1]]), IntMatrix([[3]]), IntMatrix([[5]]),
             IntMatrix([[6]])]  # 6 is not invertible mod 8
    with pytest.raises(ValueError):
        GammaModule(g, Zmod(8), szbad)


def test_permutation_modules():
    v4 = product_of_cyclic_groups([2, 2])
    reg = regular_module(v4)
    assert reg.is_permutation and reg.underlying.n == 4
    one = permutation_module(v4, [[0]] * 4)
    assert one.underlying.n == 1
    sub = v4.generated_subgroup([1])
    cm = coset_module(v4, sub)
    assert cm.underlying.n == 2


def test_twisted_dual_examples():
    c2 = cyclic_group(2)
    m = trivial_module(c2, Zmod(2))
    d = twisted_dual(m, 2, trivial_character(c2, 2))
    assert d.underlying.invariant_factors == (2,)
    assert all(a == IntMatrix.identity(1) for a in d.action)

    chi = CyclotomicCharacter(c2, 4, [1, 3])
    m4 = trivial_module(c2, Zmod(4))
    d4 = twisted_dual(m4, 4, chi)
    assert d4.action[1] == IntMatrix([[3]])


def test_double_dual_is_iso():
    g, m = mu8_module()
    chi = unit_action_character(g, 8)
    d = twisted_dual(m, 8, chi)
    dd = twisted_dual(d, 8, chi)
    nat = double_dual_map(m, d, dd)
    # bijective: kernel trivial and surjective
    K, _ = kernel_module(nat)
    assert K.underlying.is_trivial
    from wao.abgroup import cokernel_of_hom
    C, _ = cokernel_of_hom(nat.hom)
    assert C.is_trivial


def test_evaluation_pairing_equivariant():
    g, m = mu8_module()
    chi = unit_action_character(g, 8)
    d = twisted_dual(m, 8, chi)
    pair = evaluation_pairing(m, d)  # construction validates equivariance
    v = pair.evaluate((1,), (1,))
    assert v != (0,)


def test_dual_module_map():
    c2 = cyclic_group(2)
    big = trivial_module(c2, Zmod(4))
    small = trivial_module(c2, Zmod(2))
    f = ModuleMap(small, big, AbHom(small.underlying, big.underlying,
                                    IntMatrix([[2]])))
    chi = trivial_character(c2, 4)
    db, ds = twisted_dual(big, 4, chi), twisted_dual(small, 4, chi)
    fd = dual_module_map(f, ds, db)
    assert fd.source is db and fd.target is ds


def test_units_picard_examples():
    c2 = cyclic_group(2)
    zero = trivial_module(c2, PresentedAbelianGroup(0, IntMatrix.zeros(0, 0)))
    zn = trivial_module(c2, Zmod(6))
    phi = ModuleMap(zero, zn, AbHom(zero.underlying, zn.underlying,
                                    IntMatrix.zeros(1, 0)))
    assert units_module(phi).underlying.is_trivial
    assert picard_module(phi).underlying.invariant_factors == (6,)

    z = trivial_module(c2, PresentedAbelianGroup(1, IntMatrix.zeros(0, 1)))
    dbl = ModuleMap(z, z, AbHom(z.underlying, z.underlying, IntMatrix([[2]])))
    assert units_module(dbl).underlying.is_trivial
    assert picard_module(dbl).underlying.invariant_factors == (2,)


def test_resolution_shapes():
    c2 = cyclic_group(2)
    z = trivial_module(c2, PresentedAbelianGroup(1, IntMatrix.zeros(0, 1)))
    # free rank-1 trivial module: the resolution loses nothing
    P, pi, K, _ = quasi_trivial_resolution(z)
    assert P.underlying.n == 2
    assert all(d == 0 for d in K.underlying.invariant_factors)

    zn = trivial_module(c2, Zmod(5))
    P, pi, K, _ = quasi_trivial_resolution(zn)
    assert P.underlying.n == 2 and K.underlying.invariant_factors == (0, 0)

    g, m = mu8_module()
    P, pi, K, _ = quasi_trivial_resolution(m)
    assert P.underlying.n == 4
    assert K.underlying.invariant_factors == (0, 0, 0, 0)
    # order bookkeeping: |P/K| = |M| on the finite part via surjectivity
    from wao.abgroup import cokernel_of_hom
    C, _ = cokernel_of_hom(pi.hom)
    assert C.is_trivial


def test_units_lattice_for_mu8_resolution():
    g, m = mu8_module()
    P, pi, K, _ = quasi_trivial_resolution(m)
    u = units_module(pi)
    assert all(d == 0 for d in u.underlying.invariant_factors)
    p = picard_module(pi)
    assert p.underlying.is_trivial


def test_induced_module():
    v4 = product_of_cyclic_groups([2, 2])
    delta = v4.subgroup(v4.generated_subgroup([1]))
    m = trivial_module(delta, Zmod(2))
    ind = induced_module(v4, delta, m)
    assert ind.underlying.n == 2
    assert ind.underlying.invariant_factors == (2, 2)
    # action of an element outside delta swaps the blocks
    outside = [g for g in range(4) if g not in delta.ambient_index][0]
    assert ind.action[outside][0, 0] == 0


def test_restrict():
    g, m = mu8_module()
    sub = g.subgroup(g.generated_subgroup([g.identity]))
    r = m.restrict(sub)
    assert r.group.order == 1
