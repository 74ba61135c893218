import pytest

from wao.fingroup import cyclic_group
from wao.numtheory import (is_local_square, kronecker, least_nonresidue,
                           legendre, sqrt_mod_prime_power,
                           unit_group_structure)
from wao.places import (abstract_datum, cyclotomic_datum,
                        multiquadratic_datum, validate_datum)


def test_symbols_basic():
    assert legendre(2, 7) == 1
    assert legendre(3, 7) == -1
    assert kronecker(2, 15) == kronecker(2, 3) * kronecker(2, 5)
    assert least_nonresidue(7) == 3
    assert least_nonresidue(5) == 2


def test_local_squares():
    assert is_local_square(4, "inf")
    assert not is_local_square(-4, "inf")
    assert is_local_square(17, 2)   # 17 = 1 mod 8
    assert not is_local_square(5, 2)
    assert is_local_square(2, 7)
    assert not is_local_square(7, 7)


def test_sqrt_mod_prime_power():
    for p, a, k in [(7, 2, 3), (13, 3, 2), (5, -1, 4)]:
        r = sqrt_mod_prime_power(a, p, k)
        assert (r * r - a) % p ** k == 0


def test_unit_group_structure():
    for m in (3, 8, 12, 15, 16, 24, 40):
        gens = unit_group_structure(m)
        total = 1
        for _, n in gens:
            total *= n
        from math import gcd
        phi = sum(1 for r in range(1, m) if gcd(r, m) == 1)
        assert total == phi
        for g, n in gens:
            assert pow(g, n, m) == 1
            assert all(pow(g, n // q, m) != 1
                       for q in set_factors(n))


def set_factors(n):
    out = set()
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def test_cyclotomic_m12_infinity():
    d = cyclotomic_datum(12)
    inf = d.place("inf")
    labels = {d.group.labels[i] for i in inf.decomposition}
    assert labels == {"1", "11"}


def test_cyclotomic_m8():
    d = cyclotomic_datum(8)
    two = d.place("2")
    assert two.kind == "ramified"
    assert len(two.decomposition) == 4  # phi(8): totally ramified
    three = d.place("3")
    assert three.kind == "unramified"
    assert d.group.labels[three.frobenius] == "3"


def test_cyclotomic_m5_frobenius_order():
    d = cyclotomic_datum(5)
    two = d.place("2")
    assert d.group.labels[two.frobenius] == "2"
    assert len(two.decomposition) == 4  # 2 has order 4 mod 5


def test_cyclotomic_rejects_small():
    with pytest.raises(ValueError):
        cyclotomic_datum(2)


def test_multiquadratic_13_17():
    d = multiquadratic_datum(13, 17)
    assert len(d.place("inf").decomposition) == 1  # totally real
    g3 = d.place("3")
    # (13|3) = 1, (17|3) = -1: fixes sqrt(13), flips sqrt(17)
    assert g3.kind == "unramified"
    assert d.group.labels[g3.frobenius] == "(0,1)"
    g2 = d.place("2")
    # 13 = 5 mod 8 inert, 17 = 1 mod 8 split
    assert g2.kind == "unramified"
    assert d.group.labels[g2.frobenius] == "(1,0)"
    assert {p.label for p in d.special_places()} == {"13", "17", "inf"}


def test_multiquadratic_klein_places():
    d = multiquadratic_datum(2, 5)
    # at 5: 2 is a nonresidue mod 5, so f = 2 on top of e = 2
    assert len(d.place("5").decomposition) == 4
    assert len(d.place("2").decomposition) == 4
    d2 = multiquadratic_datum(-1, 3)
    assert len(d2.place("3").decomposition) == 4
    assert len(d2.place("inf").decomposition) == 2


def test_multiquadratic_rejects_degenerate():
    with pytest.raises(ValueError):
        multiquadratic_datum(4, 5)
    with pytest.raises(ValueError):
        multiquadratic_datum(5, 5)
    with pytest.raises(ValueError):
        multiquadratic_datum(1, 5)


def test_place_lookup_errors():
    d = cyclotomic_datum(8)
    with pytest.raises(ValueError):
        d.place("15")  # not prime
    with pytest.raises(ValueError):
        d.places(["3", "3"])  # duplicates


def test_validate_datum_bundled():
    for d in [cyclotomic_datum(5), cyclotomic_datum(8), cyclotomic_datum(12),
              cyclotomic_datum(24), multiquadratic_datum(13, 17),
              multiquadratic_datum(-1, 3), multiquadratic_datum(2, 5)]:
        rep = validate_datum(d, 500)
        assert rep["ok"], rep["failures"]


def test_validate_abstract_failure_path():
    g = cyclic_group(4)
    d = abstract_datum(g, {"inf": {"kind": "archimedean",
                                   "decomposition": [0, 2]}}, {"3": 1})
    rep = validate_datum(d, 50)
    assert not rep["ok"]  # most Frobenius classes are missing


def test_abstract_rejects_nonsubgroup():
    g = cyclic_group(4)
    with pytest.raises(ValueError):
        abstract_datum(g, {"7": {"kind": "ramified",
                                 "decomposition": [0, 1]}}, {})
