import cmath
import math

import numpy as np
import pytest
from sympy import factorint, totient

from explicit_lb.characters import (
    character_from_label,
    count_primitive,
    enumerate_characters,
    euler_phi,
    factorize,
    is_primitive,
    mobius,
    primitive_characters,
)
from explicit_lb.errors import CapacityError, DomainError


def _chi4():
    return next(c for c in enumerate_characters(4) if not c.is_principal)


def _order4_mod5():
    return next(c for c in enumerate_characters(5) if c.evaluate(2) == 1j)


def test_factorize_matches_sympy():
    for n in list(range(1, 3000)) + [2**61 - 1, 600851475143, 10**12 + 39]:
        assert factorize(n) == dict(factorint(n)), n


def test_euler_phi_and_mobius():
    for n in range(1, 500):
        assert euler_phi(n) == totient(n)
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


def test_counts():
    assert len(enumerate_characters(1)) == 1
    for q in range(1, 120):
        assert len(enumerate_characters(q)) == euler_phi(q)
        assert len(primitive_characters(q)) == count_primitive(q)
    # no primitive characters mod q = 2 (mod 4)
    assert primitive_characters(6) == [] and primitive_characters(10) == []


def test_mod4():
    chars = enumerate_characters(4)
    assert len(chars) == 2
    chi = _chi4()
    assert chi.evaluate(3) == -1 and chi.evaluate(7) == -1
    assert is_primitive(chi) and chi.parity_a == 1 and chi.is_real


def test_mod5_order4():
    chi = _order4_mod5()
    assert chi.order == 4
    assert chi.evaluate(4) == -1
    assert chi.conjugate().evaluate(2) == -1j
    assert chi.conjugate().parity_a == chi.parity_a


def test_principal_and_induced_not_primitive():
    assert not is_primitive(enumerate_characters(7)[0])
    # the mod-6 character induced by the quadratic character mod 3
    induced = [c for c in enumerate_characters(6) if not c.is_principal]
    assert len(induced) == 1 and induced[0].conductor() == 3 and not is_primitive(induced[0])


@pytest.mark.parametrize("q", [3, 8, 12, 15, 16, 24, 45, 63, 97])
def test_character_axioms(q):
    for chi in enumerate_characters(q):
        assert chi.evaluate(1) == 1
        for a in range(q):
            v = chi.evaluate(a)
            assert (v == 0) == (math.gcd(a, q) > 1)
        v = chi.values()
        r = np.arange(q)
        assert np.allclose(v[np.outer(r, r) % q], np.outer(v, v), atol=1e-12)
        assert chi.parity_a == (0 if chi.evaluate(-1) == 1 else 1)
        assert chi.conjugate().conjugate() == chi


def test_orthogonality():
    q = 21
    chars = enumerate_characters(q)
    for a in range(q):
        s = sum(c.evaluate(a) for c in chars)
        expected = euler_phi(q) if a % q == 1 else 0
        assert abs(s - expected) < 1e-9


def test_values_array_matches_evaluate():
    for chi in enumerate_characters(40):
        vals = chi.values()
        for a in range(40):
            assert cmath.isclose(vals[a], chi.evaluate(a), abs_tol=1e-14)


def test_real_character_conjugate_is_itself():
    chi = _chi4()
    assert chi.conjugate() == chi


def test_conductor_against_definition():
    # conductor: least d | q such that chi is trivial on units = 1 mod d
    for q in (8, 9, 16, 20, 36, 48):
        for chi in enumerate_characters(q):
            units = [a for a in range(1, q) if math.gcd(a, q) == 1]
            d = next(d for d in range(1, q + 1) if q % d == 0
                     and all(chi.evaluate(a) == 1 for a in units if (a - 1) % d == 0))
            assert chi.conductor() == d, (q, chi.label)


def test_labels_round_trip():
    for chi in enumerate_characters(35):
        assert character_from_label(chi.label) == chi
    assert character_from_label("5.0").is_principal


@pytest.mark.parametrize("label", ["5", "x.1", "5.4", "5.-1"])
def test_bad_labels(label):
    with pytest.raises(DomainError):
        character_from_label(label)


def test_modulus_bounds():
    with pytest.raises(CapacityError):
        enumerate_characters(0)
    with pytest.raises(DomainError):
        factorize(0)
