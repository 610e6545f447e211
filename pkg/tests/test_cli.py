import json
import subprocess
import sys

import pytest

from fusionforge.cli import main

SU2_8 = ["--series", "A", "--rank", "1", "--level", "8"]
SU5_5 = ["--series", "A", "--rank", "4", "--level", "5"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("flags,rows", [
    (SU2_8, 9), (["--series", "A", "--rank", "1", "--level", "1"], 2), (SU5_5, 126),
])
def test_weights_rows(capsys, flags, rows):
    code, out, _ = run(capsys, "weights", *flags)
    assert code == 0
    assert len([l for l in out.splitlines() if not l.startswith("#")]) == rows


def test_weights_json(capsys):
    _, out, _ = run(capsys, "weights", *SU2_8, "--json")
    data = json.loads(out)
    assert data["weights"][8] == {"weight": "8", "color": 0, "h": "2", "d": pytest.approx(1.0)}


def test_bad_flags_exit_nonzero():
    with pytest.raises(SystemExit) as exc:
        main(["weights", "--series", "Q"])
    assert exc.value.code != 0


def test_fuse_adjoint(capsys):
    _, out, _ = run(capsys, "fuse", *SU5_5, "1,0,0,1", "1,0,0,1")
    assert out.strip() == "[0,0,0,0] + [0,1,0,2] + [0,1,1,0] + 2[1,0,0,1] + [2,0,0,2] + [2,0,1,0]"


def test_fuse_vacuum_echo(capsys):
    _, out, _ = run(capsys, "fuse", *SU5_5, "0,0,0,0", "0,1,0,2")
    assert out.strip() == "[0,1,0,2]"


def test_fuse_su2_and_halfint(capsys):
    _, out, _ = run(capsys, "fuse", *SU2_8, "4", "4")
    assert out.strip() == "[0] + [2] + [4] + [6] + [8]"
    _, out, _ = run(capsys, "fuse", *SU2_8, "--halfint", "2", "2")
    assert out.strip() == "[0] + [1] + [2] + [3] + [4]"


def test_dim_seven_digits(capsys):
    _, out, _ = run(capsys, "dim", *SU2_8, "--halfint", "2")
    assert out.startswith("d = 3.236068 (Weyl); 3.236068 (S-matrix)")


def test_smatrix_json(capsys):
    _, out, _ = run(capsys, "smatrix", "--series", "A", "--rank", "1", "--level", "2", "--json")
    data = json.loads(out)
    assert len(data["entries"]) == 3 and len(data["entries"][0][0]) == 2
    assert data["entries"][0][0][0] == pytest.approx(0.5)


def test_mu(capsys):
    _, out, _ = run(capsys, "mu", *SU2_8)
    assert "52.36068" in out
    _, out, _ = run(capsys, "mu", "--config", "su2_8_z2", "--json")
    assert json.loads(out)["mu_extension"] == pytest.approx(13.09017, rel=1e-6)


def test_induce_su5_5(capsys):
    _, out, _ = run(capsys, "induce", "--config", "su5_5_spin24", "--stage", "su5_5")
    assert "<alpha_1,0,0,1, alpha_1,0,0,1> = 3" in out
    assert "[alpha_1,0,0,1] = [sigma1] + [A] + [sigma1*A]" in out


def test_induce_su2_8(capsys):
    _, out, _ = run(capsys, "induce", "--config", "su2_8_z2", "--json")
    data = json.loads(out)
    dims = {x["name"]: x["d"] for x in data["irreducibles"]}
    assert dims["b1"] == pytest.approx(1.6180340, abs=1e-6)
    assert dims["b2"] == pytest.approx(1.6180340, abs=1e-6)


def test_induce_identity(capsys):
    _, out, _ = run(capsys, "induce", "--series", "A", "--rank", "1", "--level", "4", "1", "2", "--json")
    data = json.loads(out)
    assert data["gram"] == {"1": 1, "2": 1}


def test_graph_outputs(capsys, tmp_path):
    p = tmp_path / "fib.dot"
    _, out, _ = run(capsys, "graph", "--ring", "fibonacci", "--principal", "--iota", "tau", "--out", str(p),
                    "--json")
    assert json.loads(out)["edges"] == 3
    assert p.read_text().count(" -- ") == 3
    _, out, _ = run(capsys, "graph", "--ring", "fibonacci", "--principal", "--iota", "1")
    assert out.count("shape=") == 2
    _, first, _ = run(capsys, "graph", "--config", "su2_8_z2", "--principal")
    _, second, _ = run(capsys, "graph", "--config", "su2_8_z2", "--principal")
    assert first == second and first.count("shape=box") == 5


def test_graph_json_fusion(capsys):
    _, out, _ = run(capsys, "graph", "--ring", "Z10", "--generator", "g", "--format", "json")
    assert len(json.loads(out)["edges"]) == 10


def test_invariants(capsys):
    _, out, _ = run(capsys, "invariants", "--series", "A", "--rank", "1", "--level", "4", "--json")
    assert len(json.loads(out)["invariants"]) == 2


def test_verify_su2_8(capsys):
    code, out, _ = run(capsys, "verify", "su2_8")
    assert code == 0
    assert out.count("PASS") == 6


def test_verify_unknown_suite():
    with pytest.raises(SystemExit):
        main(["verify", "nope"])


def test_domain_errors_exit_2(capsys):
    code, _, err = run(capsys, "fuse", "--series", "D", "--rank", "6", "--level", "5", "1,0,0,0,0,0", "0,0,0,0,0,0")
    assert code == 2 and err.startswith("error:")


def test_env_var_config_dir(tmp_path):
    env = {"FUSIONFORGE_CONFIG_DIR": str(tmp_path), "PATH": ""}
    (tmp_path / "only.json").write_text("{}")
    out = subprocess.run([sys.executable, "-m", "fusionforge.cli", "configs"], capture_output=True, text=True,
                         env=env)
    assert out.stdout.split() == ["only"]
