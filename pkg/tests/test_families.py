import json
from fractions import Fraction

import pytest

from puiseux_atoms.families import (
    PRIME_PAIR,
    Certificate,
    ExplicitFamily,
    SearchBudget,
    certificate_value,
    family_from_config,
    generator_value,
    load_family,
)


@pytest.mark.parametrize("i, g", [(1, Fraction(1, 10)), (2, Fraction(1, 21)), (3, Fraction(1, 55))])
def test_prime_pair_generators(i, g):
    assert generator_value(PRIME_PAIR, i) == g


def test_generators_strictly_decreasing():
    vals = [PRIME_PAIR.value(i) for i in range(1, 1001)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("counts, value", [({1: 5, 2: 7}, Fraction(5, 6)), ({}, Fraction(0)), ({1: 10}, Fraction(1))])
def test_certificate_value(counts, value):
    assert certificate_value(PRIME_PAIR, Certificate.of(counts)) == value


def test_certificate_canonical_and_json():
    a = Certificate.of([(2, 7), (1, 5)])
    assert a == Certificate.of({1: 5, 2: 7})
    assert a.to_json() == {"1": 5, "2": 7}
    assert a.length == 12
    assert Certificate.of({3: 0}) == Certificate()
    with pytest.raises(ValueError):
        Certificate(((1, 0),))


def test_explicit_family_validation():
    fam = ExplicitFamily(["1/2", "1/3"])
    assert fam.value(2) == Fraction(1, 3)
    with pytest.raises(IndexError):
        fam.value(3)
    with pytest.raises(ValueError):
        ExplicitFamily(["1/2", "2/4"])
    with pytest.raises(ValueError):
        ExplicitFamily(["0"])


def test_family_configs(tmp_path):
    path = tmp_path / "fam.json"
    path.write_text(json.dumps({"generators": ["1/10", "1/21"]}))
    assert load_family(path) == ExplicitFamily([Fraction(1, 10), Fraction(1, 21)])
    assert family_from_config({"family": "prime-pair"}) is PRIME_PAIR
    assert family_from_config(load_family(path).to_json()) == load_family(path)
    with pytest.raises(ValueError):
        family_from_config({"family": "nope"})


def test_certificate_index_validity():
    with pytest.raises(IndexError):
        certificate_value(ExplicitFamily(["1/2"]), Certificate.of({2: 1}))


def test_budget_validation():
    with pytest.raises(ValueError):
        SearchBudget(max_index=0)
