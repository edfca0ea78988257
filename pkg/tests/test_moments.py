"""Moment specs: closed forms, symmetry dispatch, ingestion."""

import json
import math

import numpy as np
import pytest

from symcub import (
    DegreeOutOfRangeError,
    DimensionMismatchError,
    InvalidDimensionError,
    InvalidMomentSpecError,
    Region,
    RegionId,
    cube_spec,
    load_spec,
    moment_of_monomial,
    region_monomial_moment,
    region_spec,
    sector_spec,
    simplex_spec,
    spec_from_dict,
)

REL = 1e-14


def _assert_close(value, expected, rel=REL):
    assert value == pytest.approx(expected, rel=rel, abs=1e-300)


def test_simplex_spec_n3_values():
    spec = simplex_spec(3)
    _assert_close(spec.m_1, 1 / 6)
    _assert_close(spec.m_x, 1 / 24)
    _assert_close(spec.m_xx, 1 / 60)
    _assert_close(spec.m_xy, 1 / 120)
    _assert_close(spec.m_xxx, 1 / 120)
    _assert_close(spec.m_xxy, 1 / 360)
    _assert_close(spec.m_xyz, 1 / 720)


def test_simplex_spec_n2_values():
    # alpha!/(2 + |alpha|)! evaluated by hand
    spec = simplex_spec(2)
    _assert_close(spec.m_1, 1 / 2)
    _assert_close(spec.m_x, 1 / 6)
    _assert_close(spec.m_xx, 1 / 12)
    _assert_close(spec.m_xy, 1 / 24)
    _assert_close(spec.m_xxx, 1 / 20)
    _assert_close(spec.m_xxy, 1 / 60)
    assert spec.m_xyz == 0.0


def test_simplex_spec_n4_mass():
    _assert_close(simplex_spec(4).m_1, 1 / 24)


def test_simplex3_pair_gap_positive():
    spec = simplex_spec(3)
    _assert_close(spec.m_xx - spec.m_xy, 1 / 120)
    assert spec.m_xx - spec.m_xy > 0


def test_sector_mass_equals_orthant_share_of_ball_volume():
    # independent oracle: vol(B_n) / 2^n with vol from the gamma function
    for n in range(2, 7):
        ball = math.pi ** (n / 2) / math.gamma(n / 2 + 1)
        _assert_close(sector_spec(n).m_1, ball / 2**n, rel=1e-13)


def test_sector_spec_n3_values():
    spec = sector_spec(3)
    _assert_close(spec.m_1, math.pi / 6)
    _assert_close(spec.m_x, math.pi / 16)
    _assert_close(spec.m_xx, math.pi / 30)
    _assert_close(spec.m_xy, 1 / 15)
    _assert_close(spec.m_xxx, math.pi / 48)
    _assert_close(spec.m_xxy, math.pi / 96)
    _assert_close(spec.m_xyz, 1 / 48)


def test_sector_spec_n2_first_moment():
    # quarter disk: integral of x over x, y >= 0, x^2 + y^2 <= 1 is 1/3
    _assert_close(sector_spec(2).m_x, 1 / 3)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_cube_spec_values_independent_of_n(n):
    spec = cube_spec(n)
    expected = (1.0, 1 / 2, 1 / 3, 1 / 4, 1 / 4, 1 / 6, 1 / 8)
    got = (spec.m_1, spec.m_x, spec.m_xx, spec.m_xy, spec.m_xxx, spec.m_xxy, spec.m_xyz)
    if n == 2:
        got = got[:-1]
        expected = expected[:-1]
    for g, e in zip(got, expected):
        _assert_close(g, e)


def test_moment_dispatch():
    spec = simplex_spec(3)
    _assert_close(moment_of_monomial(spec, (0, 2, 0)), 1 / 60)
    _assert_close(moment_of_monomial(spec, (0, 0, 0)), spec.m_1)
    _assert_close(moment_of_monomial(simplex_spec(4), (1, 0, 1, 1)), 1 / 5040)


def test_moment_permutation_invariance():
    rng = np.random.default_rng(7)
    for make, n in [(simplex_spec, 3), (sector_spec, 4), (cube_spec, 5)]:
        spec = make(n)
        for exps in [(0,) * n, (1,) + (0,) * (n - 1), (2,) + (0,) * (n - 1),
                     (1, 1) + (0,) * (n - 2), (3,) + (0,) * (n - 1),
                     (2, 1) + (0,) * (n - 2), (1, 1, 1) + (0,) * (n - 3)]:
            base = moment_of_monomial(spec, exps)
            for _ in range(10):
                perm = tuple(int(v) for v in rng.permutation(exps))
                assert moment_of_monomial(spec, perm) == base


@pytest.mark.parametrize("region", list(Region))
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_spec_consistent_with_region_closed_form(region, n):
    rid = RegionId(region, n)
    spec = region_spec(rid)
    import itertools

    for degree in range(4):
        for positions in itertools.combinations_with_replacement(range(n), degree):
            exps = [0] * n
            for p in positions:
                exps[p] += 1
            _assert_close(
                moment_of_monomial(spec, exps), region_monomial_moment(rid, exps)
            )


def _simplex3_quadrature(exponents, points=24):
    # iterated Gauss-Legendre over x1+x2+x3 <= 1; exact for polynomials
    nodes, weights = np.polynomial.legendre.leggauss(points)
    nodes = (nodes + 1) / 2
    weights = weights / 2
    total = 0.0
    a, b, c = exponents
    for x, wx in zip(nodes, weights):
        for y_unit, wy in zip(nodes, weights):
            y = y_unit * (1 - x)
            z_max = 1 - x - y
            # integral of z^c over [0, z_max]
            inner = z_max ** (c + 1) / (c + 1)
            total += wx * wy * (1 - x) * x**a * y**b * inner
    return total


def test_simplex_degree4_moment_vs_quadrature():
    rid = RegionId(Region.SIMPLEX, 3)
    assert region_monomial_moment(rid, (4, 0, 0)) == pytest.approx(1 / 210, rel=1e-14)
    assert region_monomial_moment(rid, (4, 0, 0)) == pytest.approx(
        _simplex3_quadrature((4, 0, 0)), rel=1e-12
    )
    assert region_monomial_moment(rid, (2, 2, 0)) == pytest.approx(
        _simplex3_quadrature((2, 2, 0)), rel=1e-12
    )


def test_sector_degree4_moment():
    # spherical oracle: integral of x1^2 over the n=3 sector is
    # (1/8) * (1/3) * 4*pi/5 = pi/30 ... and for x1^2 via the formula
    rid = RegionId(Region.BALL_SECTOR, 3)
    _assert_close(region_monomial_moment(rid, (2, 0, 0)), (1 / 15) * (math.pi / 2))
    # integral of x1^4 over the full ball: (4*pi/35); sector gets 1/8
    _assert_close(region_monomial_moment(rid, (4, 0, 0)), (4 * math.pi / 35) / 8, rel=1e-13)


def test_cube_moment_any_degree():
    rid = RegionId(Region.CUBE, 2)
    _assert_close(region_monomial_moment(rid, (3, 1)), 1 / 8)


def test_degree_cap_and_validation():
    spec = simplex_spec(3)
    with pytest.raises(DegreeOutOfRangeError):
        moment_of_monomial(spec, (4, 0, 0))
    with pytest.raises(DegreeOutOfRangeError):
        moment_of_monomial(spec, (-1, 0, 0))
    with pytest.raises(DimensionMismatchError):
        moment_of_monomial(spec, (1, 0))


def test_invalid_dimension():
    with pytest.raises(InvalidDimensionError):
        simplex_spec(1)
    with pytest.raises(InvalidDimensionError):
        sector_spec(0)


@pytest.mark.parametrize(
    "kwargs, fragment",
    [
        (dict(m_1=0.0), "m_1 > 0"),
        (dict(m_xx=-0.1), "m_xx > 0"),
        (dict(m_xy=0.5), "m_xx - m_xy > 0"),
        (dict(m_x=1.0), "m_1*m_xx - m_x^2 >= 0"),
    ],
)
def test_spec_invariants_name_the_inequality(kwargs, fragment):
    base = dict(n=3, m_1=1.0, m_x=0.25, m_xx=0.2, m_xy=0.1, m_xxx=0.1, m_xxy=0.05, m_xyz=0.02)
    base.update(kwargs)
    with pytest.raises(InvalidMomentSpecError, match=fragment.replace("*", r"\*").replace("^", r"\^")):
        spec_from = base
        from symcub import SymmetricMomentSpec

        SymmetricMomentSpec(**spec_from)


def _cube_dict(n=3):
    return {
        "n": n,
        "m1": 1.0,
        "mx": 0.5,
        "mxx": 1 / 3,
        "mxy": 0.25,
        "mxxx": 0.25,
        "mxxy": 1 / 6,
        "mxyz": 0.125,
    }


def test_spec_file_roundtrip(tmp_path):
    path = tmp_path / "cube.json"
    path.write_text(json.dumps(_cube_dict()))
    spec = load_spec(path)
    assert spec.n == 3
    _assert_close(spec.m_xy, 0.25)


def test_spec_dict_rejects_unknown_keys():
    data = _cube_dict()
    data["extra"] = 1.0
    with pytest.raises(InvalidMomentSpecError, match="unknown keys"):
        spec_from_dict(data)


def test_spec_dict_requires_mxyz_for_n3():
    data = _cube_dict()
    del data["mxyz"]
    with pytest.raises(InvalidMomentSpecError, match="mxyz"):
        spec_from_dict(data)


def test_spec_dict_ignores_mxyz_for_n2():
    data = _cube_dict(n=2)
    data["mxyz"] = 123.0
    spec = spec_from_dict(data)
    assert spec.m_xyz == 0.0
    del data["mxyz"]
    assert spec_from_dict(data).m_xyz == 0.0


def test_spec_dict_rejects_non_numeric():
    data = _cube_dict()
    data["mx"] = "a half"
    with pytest.raises(InvalidMomentSpecError, match="must be a number"):
        spec_from_dict(data)


def test_load_spec_rejects_non_object(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("[1, 2, 3]")
    with pytest.raises(InvalidMomentSpecError, match="JSON object"):
        load_spec(path)


def test_load_spec_rejects_bad_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(InvalidMomentSpecError):
        load_spec(path)
