"""Disk geometry: group action, distances, Busemann brackets, horocycles."""
import math

import numpy as np
import pytest

from horowave.geometry import (
    BoundaryPoint,
    DiskPoint,
    GroupElement,
    Horocycle,
    act,
    busemann,
    busemann_array,
    cartan_norm,
    distance_array,
    geodesic_distance,
    horocycle_coordinates,
    horocycle_point,
    horocycle_through,
    iwasawa,
    nilpotent_flow,
)

RNG = np.random.default_rng(7)


def random_group():
    t = RNG.uniform(-2.5, 2.5)
    p1, p2 = RNG.uniform(0, 2 * math.pi, 2)
    return (GroupElement.rotation(p1)
            .compose(GroupElement.translation(t))
            .compose(GroupElement.rotation(p2)))


def random_point(rmax=0.9):
    return DiskPoint(RNG.uniform(0, rmax) * np.exp(1j * RNG.uniform(0, 2 * math.pi)))


def test_disk_point_rejects_boundary():
    with pytest.raises(ValueError):
        DiskPoint(1.0 + 0j)
    with pytest.raises(ValueError):
        DiskPoint(0.8 + 0.7j)


def test_boundary_point_angle_normalized():
    assert BoundaryPoint(2 * math.pi + 0.3).theta == pytest.approx(0.3)
    assert abs(BoundaryPoint(0.3).b) == pytest.approx(1.0)


def test_group_element_determinant_enforced():
    with pytest.raises(ValueError):
        GroupElement(1.5 + 0j, 0j)


def test_identity_and_inverse():
    for _ in range(20):
        g = random_group()
        gi = g.compose(g.inverse())
        assert abs(gi.alpha - 1.0) < 1e-12
        assert abs(gi.beta) < 1e-12


def test_long_composition_stays_in_group():
    g = GroupElement.rotation(0.37).compose(GroupElement.translation(0.11))
    acc = GroupElement.identity()
    for _ in range(5000):
        acc = acc.compose(g)
    det = abs(acc.alpha) ** 2 - abs(acc.beta) ** 2
    assert abs(det - 1.0) < 1e-12


def test_distance_closed_form():
    # d(0, r) = log((1 + r)/(1 - r))
    for r in (0.1, 0.5, 0.9):
        d = geodesic_distance(DiskPoint(0j), DiskPoint(r + 0j))
        assert d == pytest.approx(math.log((1 + r) / (1 - r)), abs=1e-13)


def test_distance_isometry_invariance():
    for _ in range(100):
        g = random_group()
        z, w = random_point(), random_point()
        assert abs(geodesic_distance(z, w)
                   - geodesic_distance(act(g, z), act(g, w))) < 1e-11


def test_translation_moves_origin_along_axis():
    g = GroupElement.translation(1.3)
    z = act(g, DiskPoint(0j)).z
    assert z.imag == pytest.approx(0.0, abs=1e-15)
    assert geodesic_distance(DiskPoint(0j), DiskPoint(z)) == pytest.approx(1.3)


def test_busemann_radial_closed_form():
    b = BoundaryPoint(1.3)
    assert abs(busemann(DiskPoint(0.5 * b.b), b) - math.log(3.0)) < 1e-12


def test_busemann_zero_at_origin():
    assert busemann(DiskPoint(0j), BoundaryPoint(2.1)) == pytest.approx(0.0, abs=1e-15)


def test_busemann_constant_on_horocycle():
    h = Horocycle(BoundaryPoint(0.9), -0.4)
    vals = [busemann(horocycle_point(h, s), h.direction) for s in (-3.0, -0.5, 0.0, 2.2)]
    assert max(abs(v + 0.4) for v in vals) < 1e-12


def test_busemann_cocycle_under_translation():
    # B(g.z, g.b) - B(z, b) is independent of z for g fixing the direction
    b = BoundaryPoint(0.0)
    g = GroupElement.translation(0.8)  # fixes b = 1
    deltas = [busemann(act(g, z), b) - busemann(z, b)
              for z in (DiskPoint(0j), DiskPoint(0.3 + 0.2j), DiskPoint(-0.5j))]
    assert max(abs(d - deltas[0]) for d in deltas) < 1e-12
    assert deltas[0] == pytest.approx(0.8, abs=1e-12)


def test_iwasawa_round_trip():
    for _ in range(300):
        g = random_group()
        h = iwasawa(g).recompose()
        assert abs(g.alpha - h.alpha) < 1e-10
        assert abs(g.beta - h.beta) < 1e-10


def test_iwasawa_pure_factors():
    f = iwasawa(GroupElement.translation(0.9))
    assert f.t == pytest.approx(0.9, abs=1e-12)
    assert f.s == pytest.approx(0.0, abs=1e-12)
    f = iwasawa(nilpotent_flow(BoundaryPoint(0.0), 1.7))
    assert f.t == pytest.approx(0.0, abs=1e-12)
    assert f.s == pytest.approx(1.7, abs=1e-12)


def test_cartan_norm_is_distance_to_translated_origin():
    for _ in range(50):
        g = random_group()
        d = geodesic_distance(DiskPoint(0j), act(g, DiskPoint(0j)))
        assert cartan_norm(g) == pytest.approx(d, abs=1e-12)


def test_horocycle_arc_length_law():
    h = Horocycle(BoundaryPoint(0.7), 0.0)
    y0 = horocycle_point(h, 0.0)
    for s in np.linspace(-6, 6, 25):
        d = geodesic_distance(y0, horocycle_point(h, float(s)))
        assert abs(math.cosh(d) - (1.0 + s * s / 2.0)) < 1e-9


def test_horocycle_coordinates_invert_parametrization():
    h = Horocycle(BoundaryPoint(1.9), -0.6)
    for s in (-2.0, 0.0, 0.7, 3.1):
        p = horocycle_point(h, s)
        beta, u = horocycle_coordinates(p, h.direction)
        assert beta == pytest.approx(-0.6, abs=1e-12)
        assert u == pytest.approx(s, abs=1e-12)


def test_horocycle_through_recovers_level():
    x = DiskPoint(0.3 - 0.4j)
    b = BoundaryPoint(0.2)
    h = horocycle_through(b, x)
    assert h.busemann_value == pytest.approx(busemann(x, b), abs=1e-15)


def test_nilpotent_flow_shifts_arc_length():
    b = BoundaryPoint(1.1)
    h = Horocycle(b, 0.0)
    n = nilpotent_flow(b, 0.9)
    for u in (-1.0, 0.0, 2.0):
        moved = act(n, horocycle_point(h, u))
        expect = horocycle_point(h, u + 0.9)
        assert abs(moved.z - expect.z) < 1e-12


def test_nilpotent_flow_fixes_direction_level():
    b = BoundaryPoint(1.1)
    n = nilpotent_flow(b, 2.3)
    x = DiskPoint(0.2 + 0.1j)
    assert busemann(act(n, x), b) == pytest.approx(busemann(x, b), abs=1e-12)


def test_array_helpers_match_scalars():
    z = np.array([0.1 + 0.2j, -0.4j, 0.55])
    th = 0.8
    expect = [busemann(DiskPoint(v), BoundaryPoint(th)) for v in z]
    np.testing.assert_allclose(busemann_array(z, th), expect, atol=1e-14)
    w = np.array([0.3, -0.2 + 0.1j, 0j])
    expect = [geodesic_distance(DiskPoint(a), DiskPoint(b)) for a, b in zip(z, w)]
    np.testing.assert_allclose(distance_array(z, w), expect, atol=1e-13)
