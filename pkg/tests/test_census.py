import math

import pytest

from legtors.census import (REFERENCE_TABLE, census, classes, closure_order, congruence_group_generators,
                            expected_order, format_table, orbit_components, validate_classes)
from legtors.divpoly import delta


def test_generator_closure_orders():
    assert closure_order(congruence_group_generators(3), 3) == 48
    assert closure_order(congruence_group_generators(4), 4) == 16
    assert expected_order(4) == 16 and expected_order(3) == 48
    for L in (5, 6, 8, 9, 12):
        gens = congruence_group_generators(L)
        want = 1
        for p in (2, 3, 5):
            a = 0
            while L % p ** (a + 1) == 0:
                a += 1
            if a:
                want *= expected_order(p ** a)
        assert closure_order(gens, L) == want, L


def test_trivial_level_two():
    gens = congruence_group_generators(2)
    assert closure_order(gens, 2) == 1


def test_class_examples():
    c3 = [c for c in classes(3) if c.n == 3]
    assert len(c3) == 1 and c3[0].size == 4
    c4 = [c for c in classes(4) if c.n == 4]
    assert len(c4) == 3 and all(c.size == 2 for c in c4)
    c6 = [c for c in classes(6) if c.n == 6]
    assert len(c6) == 3 and all(c.size == 4 for c in c6)


@pytest.mark.parametrize("n", range(3, 17))
def test_one_or_three_classes(n):
    assert validate_classes(n)


def test_orbit_sizes_respect_lcm():
    for n, n2 in ((3, 4), (3, 3), (4, 4), (5, 3), (6, 4)):
        step = math.lcm(2 * delta(n), 2 * delta(n2))
        for comp in orbit_components(n, n2):
            assert comp.size % step == 0
            assert comp.bidegree[0] == comp.bidegree[1]
    assert any(c.size == 2 for c in orbit_components(4, 4))


def test_census_small():
    res = census(2)
    assert {k: res.counts[k] for k in ((1, 1), (1, 2), (2, 1), (2, 2))} == {(1, 1): 3, (1, 2): 3, (2, 1): 3,
                                                                          (2, 2): 18}
    res = census(4)
    assert res.counts[(2, 4)] == 4 and res.counts[(4, 2)] == 4 and res.counts[(4, 4)] == 45
    assert not res.violations
    table = format_table(census(2))
    assert "(2,2)     18" in table


def test_census_full_table():
    res = census(24)
    for key, count in REFERENCE_TABLE.items():
        assert res.counts.get(key, 0) == count, key
    assert not res.violations


def test_census_json_rows():
    rows = census(2).to_json()["rows"]
    r11 = next(r for r in rows if r["bidegree"] == [1, 1])
    assert r11["count"] == 3
    assert all(len(s) == 5 for s in r11["sources"])
