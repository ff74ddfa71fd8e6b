import json
import math

import numpy as np
import pytest

rbcpy = pytest.importorskip("rbcpy")


def test_grid_and_conduction_state():
    g = rbcpy.make_grid(4.0, 8.0, 16, 33)
    assert g.dz == pytest.approx(4.0 / 32)
    st = rbcpy.Stepper(g)
    s = st.init_state("conduction", 0.0, 1)
    assert s.theta.shape == (33, 16)
    assert np.all(s.theta == 0.0)
    z = np.linspace(0.0, 4.0, 33)
    assert np.allclose(s.T[:, 0], 1.0 - z / 4.0)
    nu = rbcpy.nusselt(s)
    assert nu["flux_z0"] * 4.0 == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        rbcpy.make_grid(-1.0, 8.0, 16, 33)


def test_stepping_keeps_fields_finite():
    g = rbcpy.make_grid(8.0, 16.0, 32, 33)
    st = rbcpy.Stepper(g)
    s = st.advance(st.init_state("perturbed", 0.2, 3), 1.0)
    assert s.t == pytest.approx(1.0)
    assert np.isfinite(s.w).all()
    tmin, tmax, _ = rbcpy.max_principle(s)
    assert -1e-6 <= tmin <= tmax <= 1 + 1e-6


def test_make_state_rejects_bad_shape():
    st = rbcpy.Stepper(rbcpy.make_grid(4.0, 8.0, 16, 33))
    with pytest.raises(ValueError):
        st.make_state(np.zeros((16, 33)))


def test_checkpoint_round_trip(tmp_path):
    g = rbcpy.make_grid(4.0, 8.0, 16, 33)
    s = rbcpy.Stepper(g).init_state("perturbed", 0.1, 2)
    rbcpy.save_checkpoint(str(tmp_path / "ck"), s)
    r = rbcpy.load_checkpoint(str(tmp_path / "ck"))
    assert np.array_equal(r.theta, s.theta)
    assert np.array_equal(r.v, s.v)


def test_config_defaults_and_run():
    cfg = json.loads(rbcpy.parse_config('{"H": 5}'))
    assert cfg["Lambda"] == 10.0
    out = rbcpy.run(json.dumps({"H": 5, "Nx": 16, "Nz": 33, "t_spin": 5, "t_avg": 5}))
    assert out["nu_flux_z0"] * 5 == pytest.approx(1.0, abs=1e-3)
    assert all(math.isfinite(f["ratio"]) for f in out["analysis"]["functionals"])
    with pytest.raises(ValueError):
        rbcpy.parse_config('{"t_avg": -1}')


def test_suites_and_bank():
    assert "hardy" in rbcpy.suite_names()
    res = rbcpy.run_suite("narrowband", 1)
    assert all(r["pass"] for r in res)
    assert set(res[0]) == {"name", "lhs", "rhs", "constant_used", "pass", "witness"}
    assert rbcpy.lp_band(1.0, 0) + rbcpy.lp_band(1.0, -1) + rbcpy.lp_band(1.0, 1) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        rbcpy.run_suite("bogus", 1)
