import pytest

from arcforms.field import (
    CONWAY_POLYNOMIALS,
    NotPrimeError,
    ReduciblePolynomialError,
    UnsupportedFieldError,
    _is_irreducible,
    field_from_json,
    make_field,
)

SMALL_Q = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4)]


def test_make_field_prime():
    gf = make_field(5, 1)
    assert (gf.p, gf.h, gf.q) == (5, 1, 5)
    assert gf.irreducible == (0, 1)


def test_make_field_f4_explicit_polynomial():
    gf = make_field(2, 2, [1, 1, 1])
    assert gf.q == 4


def test_make_field_rejects_reducible():
    # x^2 + 1 = (x + 1)^2 over F_2
    with pytest.raises(ReduciblePolynomialError):
        make_field(2, 2, [1, 0, 1])


def test_make_field_rejects_composite_characteristic():
    with pytest.raises(NotPrimeError):
        make_field(4, 1)


def test_make_field_unsupported_without_polynomial():
    with pytest.raises(UnsupportedFieldError):
        make_field(2, 9)  # q = 512 > 256, no table entry


def test_conway_table_covers_all_prime_powers_up_to_256():
    expected = set()
    for p in (2, 3, 5, 7, 11, 13):
        h = 2
        while p**h <= 256:
            expected.add((p, h))
            h += 1
    assert set(CONWAY_POLYNOMIALS) == expected


@pytest.mark.parametrize("p,h", sorted(CONWAY_POLYNOMIALS))
def test_conway_polynomials_irreducible_and_primitive(p, h):
    poly = CONWAY_POLYNOMIALS[(p, h)]
    assert len(poly) == h + 1 and poly[-1] == 1
    assert _is_irreducible(list(poly), p)
    # x generates the multiplicative group
    gf = make_field(p, h)
    x = gf.from_coeffs([0, 1] + [0] * (h - 2))
    seen = set()
    acc = 1
    for _ in range(gf.q - 1):
        acc = gf.mul(acc, x)
        seen.add(acc)
    assert len(seen) == gf.q - 1


def test_arith_examples():
    f5 = make_field(5)
    assert f5.mul(2, 4) == 3
    f7 = make_field(7)
    assert f7.inv(3) == 5
    f4 = make_field(2, 2)
    x, x1 = 2, 3
    assert f4.mul(x, x1) == 1


def test_arith_dispatch():
    f7 = make_field(7)
    assert f7.arith("add", 3, 6) == 2
    assert f7.arith("sub", 3, 6) == 4
    assert f7.arith("neg", 3) == 4
    assert f7.arith("inv", 3) == 5
    assert f7.arith("pow", 3, 6) == 1
    with pytest.raises(ValueError):
        f7.arith("add", 3)


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        make_field(7).inv(0)


@pytest.mark.parametrize("p,h", SMALL_Q)
def test_field_axioms_exhaustive(p, h):
    gf = make_field(p, h)
    for a in gf.elements():
        assert gf.add(a, gf.neg(a)) == 0
        for b in gf.elements():
            assert gf.mul(a, b) == gf.mul(b, a)
            assert gf.add(a, b) == gf.add(b, a)
            assert gf.sub(gf.add(a, b), b) == a
    for a in gf.nonzero():
        assert gf.mul(a, gf.inv(a)) == 1
        assert gf.pow(a, gf.q - 1) == 1  # Fermat
    # distributivity spot sweep
    for a in gf.elements():
        for b in gf.elements():
            for c in (0, 1, gf.q - 1):
                lhs = gf.mul(a, gf.add(b, c))
                rhs = gf.add(gf.mul(a, b), gf.mul(a, c))
                assert lhs == rhs


def test_pow_negative_exponent():
    gf = make_field(7)
    assert gf.pow(3, -1) == gf.inv(3)
    assert gf.pow(3, 0) == 1
    assert gf.pow(0, 5) == 0
    assert gf.pow(0, 0) == 1


def test_coeffs_roundtrip():
    gf = make_field(3, 2)
    for a in gf.elements():
        assert gf.from_coeffs(gf.coeffs(a)) == a


def test_element_check():
    gf = make_field(5)
    with pytest.raises(ValueError):
        gf.check(5)
    with pytest.raises(ValueError):
        gf.check(-1)
    assert gf.check(4) == 4


def test_json_roundtrip():
    for p, h in [(5, 1), (2, 3), (3, 2)]:
        gf = make_field(p, h)
        assert field_from_json(gf.to_json()) == gf
        for a in gf.elements():
            assert gf.element_from_json(gf.element_to_json(a)) == a
    # h = 1 elements serialize as bare ints, extensions as digit lists
    assert make_field(5).element_to_json(3) == 3
    assert make_field(2, 2).element_to_json(3) == [1, 1]


def test_field_equality_and_hash():
    assert make_field(5) == make_field(5)
    assert make_field(2, 2) == make_field(2, 2, [1, 1, 1])
    assert make_field(5) != make_field(7)
    assert hash(make_field(3, 2)) == hash(make_field(3, 2))


def test_h1_placeholder_modulus():
    gf = make_field(7, 1, [0, 1])
    assert gf.q == 7
    with pytest.raises(ValueError):
        make_field(7, 1, [1, 1])
