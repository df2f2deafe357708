import math

import numpy as np
import pytest

import finsleroid as fs


def test_param_and_euclidean_norm():
    p = fs.Param(0.0)
    assert p.h == 1.0
    assert fs.fmf(p, fs.Space(2), np.array([3.0, 4.0])) == pytest.approx(5.0, abs=1e-14)


def test_out_of_range_raises():
    with pytest.raises(fs.FinsleroidError):
        fs.Param(2.0)


def test_metric_det_law():
    p = fs.Param(0.4)
    sp = fs.Space(3)
    R = np.array([0.3, -0.7, 1.1])
    J = fs.scalar_forms(p, sp, R).J
    assert np.linalg.det(fs.metric(p, sp, R)) == pytest.approx(J**6, rel=1e-10)


def test_sigma_mu_roundtrip_and_angle():
    p = fs.Param(-0.9)
    sp = fs.Space(np.array([[2.0, 0.3], [0.3, 1.0]]))
    R1 = np.array([0.4, 0.2, -0.5])
    R2 = np.array([-0.1, 0.8, 0.3])
    assert np.allclose(fs.mu(p, sp, fs.sigma(p, sp, R1)), R1, atol=1e-12)
    alpha, _, _ = fs.fins_angle(p, sp, R1, R2)
    assert alpha == pytest.approx(fs.qe_angle(p, sp, fs.sigma(p, sp, R1), fs.sigma(p, sp, R2)), abs=1e-10)


def test_plane_and_shape():
    p = fs.Param(0.6)
    assert fs.indicatrix_length(p) == pytest.approx(2 * math.pi / p.h)
    rep = fs.shape_report(p)
    assert rep["altitude"] == pytest.approx(2 * math.cosh(p.G * math.pi / 4))
    prof = fs.indicatrix_profile(p, 64)
    assert len(prof) == 64


def test_checks_pass():
    res = fs.run_checks(samples=5)
    assert all(ok for (_, _, ok) in res.values())
