import numpy as np
import pytest

from bladegauge.blade import validate_frame
from bladegauge.em import monopole_blade
from bladegauge.errors import ConfigError, ParameterError
from bladegauge.fields import MINKOWSKI4, SPHERICAL3, euclidean
from bladegauge.gauge import field_strength
from bladegauge.linalg import max_abs
from bladegauge.scenarios import (constant_f_potential, dump_blade,
                                  load_blade_dump, load_frame, load_potential,
                                  resolve_spacetime, scenario_schema,
                                  tabulated_field, validate_config)


def test_schema_loads_and_validates_good_configs():
    schema = scenario_schema()
    assert schema["title"].startswith("bladegauge")
    validate_config({"scenario": "planewave",
                     "params": {"k": [1, 0, 0, 1], "n": [0, 1, 0, 0]}})
    validate_config({"scenario": "monopole", "params": {"g": 0.5}, "seed": 3})
    validate_config({"scenario": "darboux",
                     "params": {"pairs": [{"pi": "x0", "phi": "x1"}],
                                "domain": {"lo": [-1, -1, -1, -1],
                                           "hi": [1, 1, 1, 1]}}})


def test_schema_rejects_bad_configs():
    with pytest.raises(ConfigError) as err:
        validate_config({"scenario": "warp_drive"})
    assert err.value.schema_path == ["scenario"]
    with pytest.raises(ConfigError):
        validate_config({"scenario": "monopole", "params": {"g": "half"}})
    with pytest.raises(ConfigError):
        validate_config({"scenario": "planewave", "extra_key": 1})


def test_resolve_spacetime():
    assert resolve_spacetime({"scenario": "monopole"}) is SPHERICAL3
    assert resolve_spacetime({"scenario": "planewave"}) is MINKOWSKI4
    st = resolve_spacetime({"scenario": "planewave", "signature": [1, -1]})
    assert st.dim == 2


def test_load_potential_builtins(points4):
    a = load_potential("plane_wave", k=[1, 0, 0, 1], n=[0, 1, 0, 0])
    x = points4[0]
    assert abs(a.at(x, 1)[0, 0] - np.sin(x[0] + x[3])) < 1e-12
    ap = load_potential("monopole_plus", g=0.5)
    assert abs(ap.at(np.array([1.0, np.pi / 2, 0.1]), 2)[0, 0] - 0.5) < 1e-13
    apure = load_potential("pure_gauge", seed=4, rank=2)
    fs = field_strength(apure)
    assert max_abs(fs.at(x, 0, 1)) < 1e-5
    with pytest.raises(ParameterError):
        load_potential("nope")


def test_constant_f_builtin(points4):
    a = constant_f_potential(MINKOWSKI4, 2.0)
    fs = field_strength(a)
    for x in points4[:2]:
        assert abs(fs.at(x, 1, 2)[0, 0] - 2.0) < 1e-9
        assert abs(fs.at(x, 0, 3)[0, 0]) < 1e-12


def test_load_frame_builtins(points4):
    v = load_frame("plane_wave", k=[1, 0, 0, 1], n=[0, 1, 0, 0])
    validate_frame(v, points4[0])
    vm = load_frame("monopole", g=0.5)
    validate_frame(vm, np.array([1.0, 1.0, 2.0]))
    vr = load_frame("random_smooth", ambient=4, rank=2, seed=1)
    assert (vr.N, vr.n) == (4, 2)
    vd = load_frame({"scenario": "darboux",
                     "params": {"pairs": [{"pi": "x0", "phi": "x1"}],
                                "domain": {"lo": [-0.8] * 4, "hi": [0.8] * 4}}})
    assert vd.N == 2
    with pytest.raises(ParameterError):
        load_frame("nope")


def test_tabulated_field_interpolation():
    axes = [np.linspace(0, 1, 9), np.linspace(0, 1, 9)]
    grid_vals = np.zeros((9, 9, 2))
    for i, u in enumerate(axes[0]):
        for j, w in enumerate(axes[1]):
            grid_vals[i, j] = [u + 2 * w, 0.0]
    f = tabulated_field(axes, grid_vals, euclidean(2), ())
    assert abs(f(np.array([0.25, 0.5])) - 1.25) < 1e-12


def test_tabulated_potential_and_frame_roundtrip():
    # tabulate the plane-wave potential on a coarse grid; the loader must give
    # back a hermitian interpolant close to the original
    st2 = euclidean(2)
    axes = [np.linspace(-1, 1, 21), np.linspace(-1, 1, 21)]
    vals = np.zeros((21, 21, 2, 1, 1, 2))
    for i, t in enumerate(axes[0]):
        for j, y in enumerate(axes[1]):
            a_val = np.sin(t + y)
            vals[i, j, 1, 0, 0] = [a_val, 0.0]
    cfg = {"scenario": "planewave", "signature": [1, -1],
           "tabulated": {"axes": [list(a) for a in axes], "values": vals.tolist()}}
    a = load_potential(cfg)
    x = np.array([0.3, 0.4])
    assert abs(a.at(x, 1)[0, 0] - np.sin(0.7)) < 5e-3

    vframe = np.zeros((21, 21, 2, 1, 2))
    for i, t in enumerate(axes[0]):
        for j, y in enumerate(axes[1]):
            vframe[i, j, :, 0] = [[np.cos(0.3 * t), 0.0], [np.sin(0.3 * t), 0.0]]
    cfgf = {"scenario": "planewave", "signature": [1, -1],
            "tabulated": {"axes": [list(a) for a in axes], "values": vframe.tolist()}}
    v = load_frame(cfgf)
    validate_frame(v, x)  # polar projection restores orthonormality exactly


def test_fd_step_is_wired_through_loaders():
    cfg = {"scenario": "planewave", "fd_step": 5e-3,
           "params": {"k": [1, 0, 0, 1], "n": [0, 1, 0, 0]}}
    assert load_frame(cfg).V.fd_step == 5e-3
    assert all(c.fd_step == 5e-3 for c in load_potential(cfg).components)


def test_blade_dump_roundtrip(tmp_path):
    blade = monopole_blade(0.5)
    pts = [np.array([1.0, 0.7, 0.3]), np.array([1.0, 1.9, 4.0])]
    path = tmp_path / "blade.json"
    dump_blade(blade, pts, str(path))
    loaded_pts, loaded_rs = load_blade_dump(str(path))
    assert np.allclose(loaded_pts, np.array(pts))
    for x, r in zip(pts, loaded_rs):
        assert max_abs(r - blade.at(x)) < 1e-12
