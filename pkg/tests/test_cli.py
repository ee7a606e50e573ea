import io
import json
import sys

import pytest

from alphalandau import alphamap, cli, coefficients, landau, specialfns, verify
from alphalandau.landau import LandauInput, solve_rho0

OPERATIONS = [
    specialfns.gamma, specialfns.pochhammer, specialfns.hyp2f1, specialfns.hyp2f1_at_one,
    specialfns.hyp2f1_derivative,
    alphamap.evaluate, alphamap.wirtinger, alphamap.dilations, alphamap.sup_Lambda, alphamap.kernel,
    alphamap.poisson_solve, alphamap.t_alpha_residual,
    coefficients.g_factor, coefficients.extract, coefficients.theorem21_lhs,
    coefficients.corollary22_bound, coefficients.longwang_term_bound,
    landau.a_constant, landau.phi, landau.solve_rho0, landau.r0_lower_bound, landau.corollary33,
    landau.classical_m_constant,
    verify.random_admissible_map, verify.check_injectivity, verify.check_schlicht,
]


def run(argv):
    out = io.StringIO()
    code = cli.main(argv, out=out)
    return code, out.getvalue()


def run_json(argv):
    code, text = run(argv)
    assert code == 0, text
    return json.loads(text)


@pytest.fixture
def files(tmp_path):
    paths = {}

    def write(name, obj):
        path = tmp_path / name
        path.write_text(json.dumps(obj))
        paths[name] = str(path)

    write("id.json", {"alpha": 0, "coefficients": [{"k": 1, "re": 1, "im": 0}]})
    write("s.json", {"alpha": 1, "coefficients": [
        {"k": 1, "re": 1, "im": 0}, {"k": -3, "re": 0.1, "im": -0.2}, {"k": 2, "re": 0.05, "im": 0.02}]})
    write("even.json", {"alpha": 2, "coefficients": [{"k": 1, "re": 1, "im": 0}]})
    write("bad.json", {"alpha": 1, "coefficients": [{"k": 1, "re": 1, "im": 0, "x": 0}]})
    write("b.json", {"samples": [{"re": 1, "im": 0}] * 64})
    paths["dir"] = str(tmp_path)
    return paths


def test_radii_matches_library():
    payload = run_json(["radii", "--alpha", "1", "--beta", "1", "--Lambda", "1"])
    assert set(payload) == {"a", "rho0", "R0_lower", "phi_residual", "positive_R0"}
    assert payload["rho0"] == solve_rho0(LandauInput(1.0, 1.0, 1.0)).rho0
    assert payload["positive_R0"] is True


def test_radii_domain_error(capsys):
    code, text = run(["radii", "--alpha", "2.5", "--beta", "1", "--Lambda", "1"])
    assert code == 2 and text == ""
    assert "alpha in (0, 2)" in capsys.readouterr().err


def test_radii_corollary_flag():
    flagged = run_json(["radii", "--alpha", "1", "--beta", "2", "--Lambda", "2", "--corollary33"])
    plain = run_json(["radii", "--alpha", "1", "--beta", "1", "--Lambda", "2"])
    assert flagged == plain


def test_sweep_rows_and_round_trip():
    code, text = run(["sweep", "--alpha-min", "0.5", "--alpha-max", "1.5", "--steps", "2",
                      "--beta", "1", "--Lambda", "1"])
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "alpha,a,rho0,R0_lower,error"
    assert len(lines) == 3
    assert cli.format_sweep_csv(cli.read_sweep_csv(text)) == text


def test_sweep_monotone_in_lambda():
    tables = []
    for Lambda in ("1", "2"):
        _, text = run(["sweep", "--alpha-min", "0.2", "--alpha-max", "1.8", "--steps", "9",
                       "--beta", "1", "--Lambda", Lambda])
        tables.append(cli.read_sweep_csv(text))
    for one, two in zip(*tables):
        assert two["rho0"] < one["rho0"]


def test_sweep_failed_rows_continue():
    _, text = run(["sweep", "--alpha-min", "0", "--alpha-max", "2", "--steps", "5",
                   "--beta", "1", "--Lambda", "1"])
    rows = cli.read_sweep_csv(text)
    assert len(rows) == 5
    assert rows[0]["error"] and rows[-1]["error"] and rows[0]["rho0"] is None
    assert all(not r["error"] for r in rows[1:-1])
    assert cli.format_sweep_csv(rows) == text


def test_sweep_needs_two_steps():
    code, _ = run(["sweep", "--alpha-min", "0.5", "--alpha-max", "1", "--steps", "1",
                   "--beta", "1", "--Lambda", "1"])
    assert code == 2


def test_sweep_parallel_safe_ordering_is_input_order():
    rows = cli.sweep_rows(0.1, 1.9, 7, 1.0, 1.0)
    assert [r["alpha"] for r in rows] == sorted(r["alpha"] for r in rows)


def test_eval_identity(files):
    payload = run_json(["eval", "--spectrum", files["id.json"], "--z", "0.3,0.4"])
    assert payload["value"] == "0.3+0.4i"


def test_derivs(files):
    payload = run_json(["derivs", "--spectrum", files["s.json"], "--z", "0.2,0.3"])
    pair = alphamap.wirtinger(alphamap.load_map(files["s.json"]), 0.2 + 0.3j)
    assert payload["dz"] == cli.format_complex(pair.dz)
    assert payload["Lambda"] >= payload["lambda"] >= 0
    assert payload["t_alpha_residual"] <= 1e-4


def test_derivs_without_room_for_stencil(files, capsys):
    payload = run_json(["derivs", "--spectrum", files["s.json"], "--z", "0.99,0", "--h", "0.01"])
    assert payload["t_alpha_residual"] is None
    assert "skipped" in capsys.readouterr().err


def test_extract(files):
    payload = run_json(["extract", "--spectrum", files["s.json"], "--k", "3", "--r", "0.6"])
    c_minus = complex(payload["c_minus"].replace("i", "j"))
    assert abs(c_minus - (0.1 - 0.2j)) <= 1e-10
    assert payload["quadrature_points"] == 256


def test_extract_degenerate_exit_code(files):
    code, _ = run(["extract", "--spectrum", files["id.json"], "--k", "1"])
    assert code == 2


def test_check_bound_matches_library(files):
    payload = run_json(["check-bound", "--spectrum", files["s.json"], "--k", "1"])
    fmap = alphamap.load_map(files["s.json"])
    lhs, Lambda = coefficients.theorem21_check(fmap, 1)
    assert payload["lhs"] == lhs and payload["Lambda_est"] == Lambda
    assert payload["holds"] is True
    assert payload["longwang_max_lhs"] <= payload["longwang_rhs"]


def test_check_bound_even_alpha(files, capsys):
    payload = run_json(["check-bound", "--spectrum", files["even.json"], "--k", "1", "--Lambda", "5"])
    assert payload["corollary22_bound"] is None
    assert payload["lhs"] == 0.0
    assert "explicit bound" in capsys.readouterr().err


def test_verify_generated_and_file_agree(files, capsys):
    emitted = files["dir"] + "/gen.json"
    generated = run_json(["verify", "--alpha", "1", "--beta", "0.8", "--Lambda", "1", "--seed", "4",
                          "--n-samples", "600", "--emit-spectrum", emitted])
    assert "collisions: 0" in capsys.readouterr().err
    from_file = run_json(["verify", "--spectrum", emitted, "--beta", "0.8", "--Lambda", "1", "--seed", "4",
                          "--n-samples", "600"])
    assert generated == from_file
    assert generated["v"] == 1 and generated["hypothesis_ok"]
    assert generated["coverage_misses"] == 0


def test_verify_seed_from_environment(monkeypatch):
    monkeypatch.setenv(cli.SEED_ENV, "17")
    payload = run_json(["verify", "--alpha", "1.5", "--beta", "0.8", "--Lambda", "1", "--n-samples", "300"])
    assert payload["seed"] == 17
    monkeypatch.delenv(cli.SEED_ENV)
    assert run_json(["verify", "--alpha", "1.5", "--beta", "0.8", "--Lambda", "1",
                     "--n-samples", "300"])["seed"] == 0


def test_verify_needs_a_source():
    code, _ = run(["verify", "--beta", "0.8", "--Lambda", "1"])
    assert code == 2


def test_poisson(files):
    payload = run_json(["poisson", "--alpha", "1", "--boundary", files["b.json"], "--z", "0,0"])
    value = complex(payload["value"].replace("i", "j"))
    assert value == pytest.approx(alphamap.kernel_constant(1.0), rel=1e-14)


def test_m_constant():
    payload = run_json(["m-constant"])
    assert payload["m"] == pytest.approx(6.85, abs=0.005)


@pytest.mark.parametrize("argv", [
    ["eval", "--spectrum", "missing.json", "--z", "0,0"],
    ["eval", "--spectrum", "BAD", "--z", "0,0"],
    ["eval", "--spectrum", "ID", "--z", "0.3"],
    ["eval", "--spectrum", "ID", "--z", "1,0"],
])
def test_input_errors_exit_2(files, argv):
    argv = [files["bad.json"] if a == "BAD" else files["id.json"] if a == "ID" else a for a in argv]
    code, text = run(argv)
    assert code == 2 and text == ""


def test_accuracy_errors_exit_3(monkeypatch):
    from alphalandau.errors import RootBoundaryError

    def fail(*args, **kwargs):
        raise RootBoundaryError("no sign change", bracket=(0.5, 1.0))

    monkeypatch.setattr(landau, "landau_radii", fail)
    code, _ = run(["radii", "--alpha", "1", "--beta", "1", "--Lambda", "1"])
    assert code == 3


def test_outputs_are_byte_stable(files):
    commands = [
        ["radii", "--alpha", "0.7", "--beta", "1.3", "--Lambda", "4"],
        ["derivs", "--spectrum", files["s.json"], "--z=-0.1,0.5"],
        ["verify", "--alpha", "0.5", "--beta", "0.8", "--Lambda", "1", "--seed", "2", "--n-samples", "400"],
        ["sweep", "--alpha-min", "0.1", "--alpha-max", "1.9", "--steps", "4", "--beta", "1", "--Lambda", "3"],
    ]
    for argv in commands:
        assert run(argv) == run(argv)


def test_every_operation_is_reachable(files):
    targets = {op.__code__ for op in OPERATIONS}
    reached = set()

    def tracer(frame, event, arg):
        if event == "call" and frame.f_code in targets:
            reached.add(frame.f_code)
        return None

    commands = [
        ["radii", "--alpha", "1", "--beta", "1", "--Lambda", "2", "--corollary33"],
        ["eval", "--spectrum", files["s.json"], "--z", "0.2,0.1"],
        ["derivs", "--spectrum", files["s.json"], "--z", "0.2,0.1"],
        ["extract", "--spectrum", files["s.json"], "--k", "2"],
        ["check-bound", "--spectrum", files["s.json"], "--k", "1"],
        ["verify", "--alpha", "1", "--beta", "0.8", "--Lambda", "1", "--n-samples", "200"],
        ["poisson", "--alpha", "1", "--boundary", files["b.json"], "--z", "0.3,0"],
        ["m-constant"],
    ]
    sys.settrace(tracer)
    try:
        for argv in commands:
            run(argv)
    finally:
        sys.settrace(None)
    missing = sorted(code.co_name for code in targets - reached)
    assert not missing, f"not reachable from the CLI: {missing}"
