import json
import math

import numpy as np
import pytest

import shellspec as ss


def test_bessel_reference():
    assert ss.bessel_k(0, 1.0) == pytest.approx(0.42102443824070834, rel=1e-14)
    assert ss.bessel_k(1, 1.0) == pytest.approx(0.60190723019723458, rel=1e-14)


def test_transition_point():
    r = ss.essential_spectrum(ss.InteractionParams(eta=2.0))
    assert r.isolated_points == [0.0]
    assert [tuple(b) for b in r.bands] == [(-math.inf, -1.0), (1.0, math.inf)]
    assert json.loads(r.to_json())["points"] == [0.0]


def test_scalar_gap_edge():
    r = ss.essential_spectrum(ss.InteractionParams(tau=-1.0))
    assert r.bands[0].hi == pytest.approx(-0.6)
    assert r.bands[1].lo == pytest.approx(0.6)
    assert ss.isospectral_partner(ss.InteractionParams(tau=-1.0)).tau == pytest.approx(-4.0)


def test_green_kernel_value():
    g = ss.green_kernel(0.0, 1.0, 0.0, ss.InteractionParams())
    assert g.shape == (2, 2)
    assert g[0, 1] == pytest.approx(0.60190723019723458 / (2 * math.pi) * 1j)
    assert g[0, 0].real == pytest.approx(0.42102443824070834 / (2 * math.pi))


def test_curve_geometry():
    c = ss.smoothed_corner(math.pi / 6)
    assert c.family == "smoothed_corner"
    assert np.linalg.norm(c.tangent(0.3)) == pytest.approx(1.0)
    p, q = c.point(2.0), c.point(-2.0)
    assert p[0] == pytest.approx(q[0]) and p[1] == pytest.approx(-q[1])


def test_identity_defect_small():
    d = ss.identity_defect(ss.straight_line(), ss.InteractionParams(), 0.0, nodes=300)
    assert d < 5e-2


def test_certificate():
    r = ss.certify(ss.CertificateInput(tau=-1.0, L=20.0, omega=1e-3))
    assert r.certified
    assert r.bracket == pytest.approx(-7.21, abs=5e-3)
    star = ss.find_omega_star(-1.0)
    assert 2.5e-3 < star.omega_star < 4e-3


def test_corner_scan_finds_bound_state():
    res = ss.scan(ss.smoothed_corner(0.05), ss.InteractionParams(tau=-1.0), 0.42, 0.48, nodes=300, steps=5)
    assert len(res.eigenvalues) == 1
    assert res.eigenvalues[0].z == pytest.approx(0.45476, abs=1e-3)


def test_schrodinger_corner():
    r = ss.schrodinger_eigenvalues(ss.smoothed_corner(math.pi / 6), 1.0, -1.0, -0.6, -0.5005, nodes=300, max_roots=1)
    assert len(r) == 1 and r[0].z < -0.5


def test_run_bands_job(tmp_path):
    code, log = ss.run({"command": "bands", "params": {"eta": 1.0}, "out": str(tmp_path)})
    assert code == 0
    data = json.loads((tmp_path / "spectrum.json").read_text())
    assert data["bands"][0][1] == pytest.approx(-0.6)


def test_bad_config_raises():
    with pytest.raises(Exception):
        ss.run({"command": "nope"})
