import json
import math

import pytest

import udg_py as udg


def test_counts():
    assert len(udg.construct("H")) == 7
    assert len(udg.construct("H^2")) == 31
    assert len(udg.construct("MOSER").edges) == 11


def test_edges_are_unit_length():
    g = udg.construct("H^1")
    xy = g.coordinates()
    for u, v in g.edges:
        (a, b), (c, d) = xy[u], xy[v]
        assert math.isclose(math.hypot(a - c, b - d), 1.0, abs_tol=1e-12)


def test_coloring():
    m = udg.construct("MOSER")
    assert udg.chromatic_number(m, 5) == 4
    assert not udg.is_k_colorable(m, 3)
    assert udg.key_property(m, 3)
    assert not udg.key_property(m, 4)


def test_mono_pair():
    d = udg.construct("D")
    tips = [i for i, p in enumerate(d.vertices) if p in ("(0; 0)", "(0; sqrt(3))")]
    assert len(tips) == 2
    assert udg.is_mono_pair(d, tips[0], tips[1], 3)
    with pytest.raises(udg.VacuousError):
        m = udg.construct("MOSER")
        adjacent = set(m.edges)
        u, v = next((u, v) for u in range(len(m)) for v in range(u + 1, len(m)) if (u, v) not in adjacent)
        udg.is_mono_pair(m, u, v, 3)


def test_text_round_trip():
    g = udg.construct("H^2 (+) H")
    again = udg.UnitGraph.from_text(g.to_text())
    assert again.vertices == g.vertices
    assert json.loads(g.to_json())["edges"]


def test_external_backend_missing():
    with pytest.raises(udg.BackendError):
        udg.key_property(udg.construct("MOSER"), 3, backend="external:/nonexistent/solver")


def test_minimize_keeps_spindle():
    pts = udg.construct("MOSER").vertices + ["(10; 7)", "(13; 7)"]
    m, set_m, log = udg.minimize(udg.UnitGraph.from_points(pts), 3)
    assert len(m) == 7
    assert len(set_m) >= 1
    assert all(json.loads(line) for line in log)
