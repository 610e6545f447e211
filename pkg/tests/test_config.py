import json
import shutil

import pytest

from fusionforge import DomainError, build, load_config, locality_precheck
from fusionforge.config import ENV_VAR, available_configs, config_dir

SHIPPED = ["a1_z5", "no11_su7_7", "no20_spin12_5", "no67_a1a1", "no9_a1a1", "su2_8_z2", "su4_6_su10_1",
           "su5_5_spin24"]


def test_bundled_configs():
    assert available_configs() == SHIPPED


@pytest.mark.parametrize("name", SHIPPED)
def test_configs_build(name):
    cfg = build(name)
    for st in cfg.stages:
        assert st.spec.index >= 1
        assert st.spec.theta.multiplicity(st.spec.base.labels[0]) == 1


@pytest.mark.parametrize("name", [n for n in SHIPPED if n != "a1_z5"])
def test_shipped_spectra_are_local(name):
    for st in build(name).stages:
        rep = locality_precheck(st.spec)
        assert rep.passed, (name, st.name, rep.offending)


def test_a1_z5_weights_reported():
    spec = build("a1_z5").stage().spec
    hs = sorted(spec.base.conformal_weight(lab) for lab, _ in spec.theta.items())
    assert hs == [0, 2, 2, 3, 3]
    assert locality_precheck(spec).passed


def test_tau_validation():
    with pytest.raises(DomainError):
        load_config("no9_a1a1", tau=[1, 1, 2, 3, 4])
    assert load_config("no9_a1a1")["parameters"]["tau"] == [1, 2, 3, 4, 5]


def test_unknown_config():
    with pytest.raises(DomainError):
        load_config("no_such_config")


def test_env_override(tmp_path, monkeypatch):
    shutil.copy(config_dir() / "su2_8_z2.json", tmp_path / "mine.json")
    monkeypatch.setenv(ENV_VAR, str(tmp_path))
    assert available_configs() == ["mine"]
    assert build("mine").stage().spec.index == pytest.approx(2)


def test_load_by_path(tmp_path):
    data = {"algebra": {"series": "A", "rank": 1, "level": 4},
            "spectrum": [{"weight": [0]}, {"weight": [4]}], "generators": [[2]]}
    p = tmp_path / "z2.json"
    p.write_text(json.dumps(data))
    st = build(str(p)).stage()
    assert st.spec.index == pytest.approx(2)
    assert st.generators == ["2"]


def test_missing_stage():
    with pytest.raises(DomainError):
        build("su2_8_z2").stage("nope")
