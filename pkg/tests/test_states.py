import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dispersim.states import (
    CaseId,
    Correlation,
    CrystalParams,
    Family,
    Interferometer,
    case_catalog,
    case_letters,
    gaussian_envelope,
    get_case,
)

TABLE = {
    "A": (1, "MZ", "Fock", "notApplicable"),
    "B": (1, "MZ", "N00N", "notApplicable"),
    "C": (2, "MZ", "Fock", "none"),
    "D": (2, "MZ", "DualFock", "none"),
    "E": (2, "MZ", "N00N", "none"),
    "F": (2, "MZ", "Fock", "anticorrelated"),
    "G": (2, "MZ", "N00N", "anticorrelated"),
    "H": (2, "MZ", "DualFock", "anticorrelated"),
    "I": (1, "HOM", "N00N", "notApplicable"),
    "J": (2, "HOM", "N00N", "none"),
    "K": (2, "HOM", "N00N", "anticorrelated"),
    "L": (2, "MZ", "SPDCFock", "anticorrelated"),
}


def test_catalog_matches_table():
    cat = case_catalog()
    assert len(cat) == 12
    assert [c.id.value for c in cat] == list(TABLE)
    for c in cat:
        photons, ifo, fam, corr = TABLE[c.id.value]
        assert (c.photons, c.interferometer.value, c.family.value, c.correlation.value) == (photons, ifo, fam, corr)


def test_catalog_examples():
    cat = case_catalog()
    assert (cat[0].id, cat[0].photons, cat[0].interferometer, cat[0].family, cat[0].correlation) == (
        CaseId.A, 1, Interferometer.MZ, Family.FOCK, Correlation.NOT_APPLICABLE)
    assert (cat[10].id, cat[10].photons, cat[10].interferometer, cat[10].family, cat[10].correlation) == (
        CaseId.K, 2, Interferometer.HOM, Family.N00N, Correlation.ANTICORRELATED)


def test_catalog_is_a_copy():
    cat = case_catalog()
    cat.clear()
    assert len(case_catalog()) == 12


def test_parse():
    assert CaseId.parse("f") is CaseId.F
    assert CaseId.parse(" k ") is CaseId.K
    assert get_case("L").anticorrelated
    assert case_letters() == "ABCDEFGHIJKL"
    with pytest.raises(ValueError, match="A, B, C"):
        CaseId.parse("Z")


def test_envelope_examples():
    assert gaussian_envelope(1, 0) == 1.0
    assert gaussian_envelope(1, math.sqrt(2)) == pytest.approx(math.exp(-1), rel=1e-15)
    assert gaussian_envelope(4, 1) == pytest.approx(math.exp(-2), rel=1e-15)
    with pytest.raises(ValueError):
        gaussian_envelope(0, 1)


@given(st.floats(0.1, 10), st.floats(0, 5), st.floats(0.01, 1))
def test_envelope_even_and_decreasing(sigma, x, dx):
    assert gaussian_envelope(sigma, x) == gaussian_envelope(sigma, -x)
    if gaussian_envelope(sigma, x) > 0:
        assert gaussian_envelope(sigma, x + dx) < gaussian_envelope(sigma, x)


def test_crystal_derived():
    c = CrystalParams(2.0, 10.0, 3.0)
    assert c.b == 6.0
    assert c.lambda_ratio == 5.0
    d = CrystalParams.from_ratios(6.0, 5.0, 3.0)
    assert (d.lambda_p, d.lambda_big) == (2.0, 10.0)
    assert c.mismatch(1.0, 0.5) == 7.0
    np.testing.assert_allclose(c.mismatch(np.array([0.0, 1.0]), 1.0), [10.0, 12.0])


def test_crystal_validation():
    with pytest.raises(ValueError):
        CrystalParams(1.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        CrystalParams(1.0, 0.0)
    with pytest.raises(ValueError):
        CrystalParams(0.0, 1.0).lambda_ratio
