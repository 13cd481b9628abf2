import random
from fractions import Fraction

import pytest

from bessel_tr.correlators import CorrelatorTable, in_support
from bessel_tr.pseries import (
    PSeries,
    free_energy,
    mono,
    mono_degree,
    mono_str,
    partition_function,
)


def M(*pairs):
    return mono(pairs)


def test_mono_rejects_even_or_negative():
    with pytest.raises(ValueError):
        mono([(2, 1)])
    with pytest.raises(ValueError):
        mono([(1, -1)])
    assert mono([(3, 0)]) == ()


def test_free_energy_order_three():
    F = free_energy(CorrelatorTable(), 3)
    assert F.terms == {
        M((1, 1)): Fraction(1, 8),
        M((1, 2)): Fraction(1, 16),
        M((3, 1)): Fraction(3, 128),
        M((1, 3)): Fraction(1, 24),
    }


def test_free_energy_order_six_selected():
    F = free_energy(CorrelatorTable(), 6)
    assert F.coefficient(M((3, 1), (1, 3))) == Fraction(15, 64)
    assert F.coefficient(M((3, 2))) == Fraction(63, 1024)
    assert len(F.terms) == 13


def test_free_energy_order_zero():
    assert free_energy(CorrelatorTable(), 0).is_zero()


def test_free_energy_grading():
    # every emitted monomial is a support index: weight = 2g - 2 + n
    F = free_energy(CorrelatorTable(), 8)
    for m in F.terms:
        parts = []
        for i, e in m:
            parts += [i] * e
        d = mono_degree(m)
        n = len(parts)
        assert in_support((d - n) // 2 + 1, tuple(parts))


def test_exp_examples():
    assert PSeries.zero(4).exp() == PSeries.one(4)
    a = PSeries({M((1, 1)): Fraction(1, 8)}, 2)
    assert a.exp() == PSeries(
        {(): 1, M((1, 1)): Fraction(1, 8), M((1, 2)): Fraction(1, 128)}, 2
    )
    with pytest.raises(ValueError):
        PSeries.one(2).exp()


def test_log_examples():
    assert PSeries.one(4).log() == PSeries.zero(4)
    one_plus_p1 = PSeries({(): 1, M((1, 1)): 1}, 2)
    assert one_plus_p1.log() == PSeries(
        {M((1, 1)): 1, M((1, 2)): Fraction(-1, 2)}, 2
    )
    with pytest.raises(ValueError):
        PSeries.zero(2).log()


def test_log_exp_round_trip():
    F = free_energy(CorrelatorTable(), 6)
    assert F.exp().log() == F


def test_partial_examples():
    p1sq = PSeries({M((1, 2)): 1}, 4)
    assert p1sq.partial(1) == PSeries({M((1, 1)): 2}, 4)
    p3p1 = PSeries({M((3, 1), (1, 1)): 1}, 4)
    assert p3p1.partial(3) == PSeries({M((1, 1)): 1}, 4)
    p1cu = PSeries({M((1, 3)): 1}, 4)
    assert p1cu.partial(5).is_zero()


def test_ring_examples():
    p1 = PSeries.variable(1, 6)
    p3 = PSeries.variable(3, 6)
    assert p1 * p3 == PSeries({M((1, 1), (3, 1)): 1}, 6)
    one = PSeries.one(6)
    assert (one + p1) * (one - p1) == PSeries({(): 1, M((1, 2)): -1}, 6)
    assert (p1 * 0).is_zero()
    assert p1 * Fraction(3, 2) == PSeries({M((1, 1)): Fraction(3, 2)}, 6)


def test_mul_truncates_at_min_order():
    a = PSeries({M((1, 2)): 1}, 2)
    b = PSeries({M((1, 1)): 1}, 8)
    assert (a * b).order == 2
    assert (a * b).is_zero()


def _random_series(rng, order=8):
    terms = {}
    for _ in range(rng.randint(1, 6)):
        pairs = [(rng.choice((1, 3, 5)), rng.randint(1, 2)) for _ in range(rng.randint(1, 3))]
        terms[mono(pairs)] = Fraction(rng.randint(-6, 6), rng.randint(1, 6))
    return PSeries(terms, order)


def test_leibniz_rule():
    rng = random.Random(23)
    for _ in range(40):
        a, b = _random_series(rng), _random_series(rng)
        for i in (1, 3, 5):
            lhs = (a * b).partial(i)
            rhs = a.partial(i) * b + a * b.partial(i)
            # the truncated product only knows derivatives through degree 8 - i
            assert lhs.truncated(8 - i) == rhs.truncated(8 - i)


def test_partition_function_matches_exp():
    t = CorrelatorTable()
    assert partition_function(t, 5) == free_energy(t, 5).exp()


def test_canonical_term_order():
    Z = partition_function(CorrelatorTable(), 6)
    degree_six = [m for m, _ in Z.sorted_terms() if mono_degree(m) == 6]
    assert [mono_str(m) for m in degree_six] == ["p5*p1", "p3^2", "p3*p1^3", "p1^6"]


def test_json_round_trip():
    F = free_energy(CorrelatorTable(), 6)
    data = F.to_json_dict()
    assert data["order"] == 6
    assert {"mono": {"1": 1}, "coeff": "1/8"} in data["terms"]
    assert PSeries.from_json_dict(data) == F


def test_restrict():
    F = free_energy(CorrelatorTable(), 6)
    restricted = F.restrict((1, 3))
    assert restricted.coefficient(M((5, 1), (1, 1))) == 0
    assert restricted.coefficient(M((3, 2))) == Fraction(63, 1024)
