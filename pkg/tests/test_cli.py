"""Exit-code contract and file outputs of the command-line front end."""

import numpy as np
import pytest

import orliczkit as ok
from orliczkit.cli import main

FAMILY_P2 = """\
family = power
p.kind = constant
p.coeffs = 2
"""

SOLVE_CONFIG = """\
family.family = power
family.p.kind = constant
family.p.coeffs = 4
reaction.example = power
reaction.q.kind = constant
reaction.q.coeffs = 2
lambda = 1.0
grid.dim = 1
grid.extents = 0 1
grid.nodes = 101
u0.kind = constant
u0.value = 0.3
"""


@pytest.fixture()
def family_file(tmp_path):
    p = tmp_path / "powI_p2.cfg"
    p.write_text(FAMILY_P2)
    return str(p)


@pytest.fixture()
def solve_config(tmp_path):
    p = tmp_path / "energy.cfg"
    p.write_text(SOLVE_CONFIG)
    return str(p)


def test_norm_constant(family_file, capsys):
    code = main(["norm", "--family", family_file, "--const", "2",
                 "--domain", "0", "1", "--nodes", "101"])
    assert code == 0
    assert float(capsys.readouterr().out.strip()) == pytest.approx(2.0, abs=1e-8)


def test_modular_constant(family_file, capsys):
    code = main(["modular", "--family", family_file, "--const", "2",
                 "--domain", "0", "1", "--nodes", "101"])
    assert code == 0
    assert float(capsys.readouterr().out.strip()) == pytest.approx(4.0, rel=1e-12)


def test_conjugate_constant(family_file, capsys):
    # conjugate of t^2 is s^2/4, so the conjugate norm of u = 2 is 1
    code = main(["conjugate", "--family", family_file, "--const", "2",
                 "--domain", "0", "1", "--nodes", "101"])
    assert code == 0
    assert float(capsys.readouterr().out.strip()) == pytest.approx(1.0, abs=1e-7)


def test_norm_missing_family_file(tmp_path, capsys):
    missing = str(tmp_path / "nope.cfg")
    code = main(["norm", "--family", missing, "--const", "1",
                 "--domain", "0", "1", "--nodes", "11"])
    assert code == 3
    assert "nope.cfg" in capsys.readouterr().err


def test_norm_function_file(family_file, tmp_path, capsys):
    g = ok.make_grid(1, [(0.0, 1.0)], [51])
    u = ok.random_function(g, 3, 1.0, 2)
    path = tmp_path / "field.dat"
    ok.save_function(u, path)
    code = main(["norm", "--family", family_file, "--function", str(path)])
    assert code == 0
    fam = ok.power_family(ok.ExponentField.constant(2.0))
    expected = ok.luxemburg_norm(fam, u)
    assert float(capsys.readouterr().out.strip()) == pytest.approx(expected, rel=1e-9)


def test_solve_constant_recovery(solve_config, tmp_path, capsys):
    sol = tmp_path / "sol.dat"
    traj = tmp_path / "traj.csv"
    rep = tmp_path / "report.txt"
    code = main(["solve", "--config", solve_config, "--out", str(sol),
                 "--trajectory", str(traj), "--report", str(rep)])
    assert code == 0
    u = ok.load_function(sol)
    assert np.max(np.abs(u.values - 2.0 ** -0.5)) <= 1e-4
    lines = traj.read_text().strip().splitlines()
    assert lines[0] == "iteration,energy,residual_sup"
    energies = [float(ln.split(",")[1]) for ln in lines[1:]]
    assert all(b <= a for a, b in zip(energies, energies[1:]))
    assert "converged = True" in rep.read_text()


def test_solve_nonconvergence_exit(solve_config):
    code = main(["solve", "--config", solve_config, "--max-iters", "1",
                 "--tol-res", "1e-12"])
    assert code == 2


def test_solve_bad_config(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("family.family = power\n")   # missing everything else
    assert main(["solve", "--config", str(bad)]) == 3


def test_sweep(solve_config, tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    code = main(["sweep", "--config", solve_config,
                 "--lambdas", "0.5,2,6", "--out", str(out)])
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "lambda,min_energy,residual_sup,solution_norm,nontrivial_flag,iterations"
    energies = [float(ln.split(",")[1]) for ln in lines[1:]]
    assert all(b <= a + 1e-10 for a, b in zip(energies, energies[1:]))


def test_verify_pass(tmp_path, capsys):
    out = tmp_path / "report.json"
    csv = tmp_path / "summary.csv"
    code = main(["verify", "--samples", "2", "--seed", "0",
                 "--families", "power", "--out", str(out), "--csv", str(csv)])
    assert code == 0
    assert '"overall": true' in out.read_text()
    assert csv.read_text().startswith("property,samples,passes,worst_margin")
    assert "overall = True" in capsys.readouterr().out


def test_verify_negative_control(capsys):
    code = main(["verify", "--samples", "2", "--families", "broken-delta2"])
    assert code == 1
    assert "FAIL" in capsys.readouterr().out


def test_verify_zero_samples():
    assert main(["verify", "--samples", "0"]) == 3


def test_unknown_family_name():
    assert main(["verify", "--samples", "1", "--families", "mystery"]) == 3


def test_usage_error_maps_to_bad_input(capsys):
    assert main(["norm"]) == 3      # missing required --family
