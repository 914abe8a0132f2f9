import math
from fractions import Fraction

import pytest

from periodlines.constants import (
    AcylUnavailable,
    ConstantsProfile,
    C_and_f,
    F_of_r,
    K_of_r,
    ProfileError,
    default_mu,
    epsilon_of_r,
    k_trim,
    kappa_eps_zero,
    pipeline_report,
)


def fixture_profile():
    return ConstantsProfile.create(
        0, 2, 1, "user-supplied",
        {24: (10, 5), 48: (10, 5)})


def test_create_validation():
    with pytest.raises(ProfileError):
        ConstantsProfile.create(-1, 1, 0, "user-supplied", {})
    with pytest.raises(ProfileError):
        ConstantsProfile.create(0, 0, 0, "user-supplied", {})
    with pytest.raises(ProfileError):
        ConstantsProfile.create(0, 1, 0, "guessed", {})
    with pytest.raises(ProfileError):
        ConstantsProfile.create(0, 1, 0, "user-supplied", {0: (1, 0)})


def test_mu_rounding_once():
    # mu is raised minimally so 2*delta + 2*mu is an integer
    p = ConstantsProfile.create(Fraction(1, 2), 1, Fraction(1, 4), "estimated", {})
    assert (2 * p.delta + 2 * p.mu).denominator == 1
    assert p.mu == Fraction(1, 2)
    assert p.r_base == 2


def test_kappa_eps_zero():
    p = fixture_profile()
    assert (p.kappa0, p.eps0) == (3, 4)
    params = kappa_eps_zero(p)
    assert params.kappa == 3 and params.eps == 4
    # large delta pushes kappa0 above the floor of 3
    q = ConstantsProfile.create(10, Fraction(1, 2), 0, "user-supplied", {})
    assert q.kappa0 == math.ceil((8 * 10 + 1) / Fraction(1, 2)) == 162
    assert q.eps0 == 4 * 81


def test_fixture_pipeline_exact():
    p = fixture_profile()
    assert epsilon_of_r(p, 0) == 24
    assert K_of_r(p, 0) == 48
    assert F_of_r(p, 0) == 163
    assert F_of_r(p, 2) == 175
    C, f = C_and_f(p)
    assert C == 180
    for r in range(5):
        assert f(r) == r + 180
    assert k_trim(p, 0) == 2


def test_acyl_table_exact_keys_only():
    p = fixture_profile()
    with pytest.raises(AcylUnavailable):
        K_of_r(p, 1)  # eps = 30 not tabulated; no interpolation


def test_negative_r_rejected():
    p = fixture_profile()
    for fn in (K_of_r, F_of_r, k_trim):
        with pytest.raises(ProfileError):
            fn(p, -1)


def test_f_monotone_and_trim_nonneg():
    p = fixture_profile()
    _, f = C_and_f(p)
    values = [f(r) for r in range(10)]
    assert values == sorted(values)
    ks = [k_trim(p, r) for r in range(10)]
    assert all(k >= 0 for k in ks)
    assert ks == sorted(ks)


def test_default_mu_positive():
    assert default_mu(Fraction(1), Fraction(3), Fraction(4)) > 0


def test_pipeline_report():
    p = fixture_profile()
    report = pipeline_report(p, [0, 1])
    assert report["C"] == "180"
    assert report["rows"][0]["K"] == 48
    assert "unavailable" in report["rows"][1]["K"]
