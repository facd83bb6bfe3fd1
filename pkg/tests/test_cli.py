import json
import math

import pytest

from mixedfp import apply_A, sup_metric
from mixedfp.cli import (
    EXIT_CHECK_FAILED,
    EXIT_CONFIG_ERROR,
    EXIT_NO_CONVERGENCE,
    EXIT_OK,
    build_problem,
    load_config,
    main,
)
from mixedfp.funcspace import load_csv


def write_config(tmp_path, **overrides):
    cfg = dict(overrides)
    path = tmp_path / "config.json"
    path.write_text(json.dumps(cfg))
    return str(path)


class TestConfig:
    def test_defaults(self):
        cfg = load_config(None, {})
        assert cfg["problem"] == "paper-example"
        assert cfg["quadrature"] == {"panels": 32, "points": 8}

    def test_file_overrides_defaults(self, tmp_path):
        path = write_config(tmp_path, alpha=3.0, tolerances={"residual": 1e-6})
        cfg = load_config(path, {})
        assert cfg["alpha"] == 3.0
        assert cfg["tolerances"]["residual"] == 1e-6
        assert cfg["tolerances"]["step"] == 1e-10  # nested merge keeps defaults

    def test_flag_wins_over_file(self, tmp_path):
        path = write_config(tmp_path, alpha=3.0)
        cfg = load_config(path, {"alpha": 5.0, "T": None})
        assert cfg["alpha"] == 5.0

    def test_custom_problem(self):
        cfg = load_config(None, {})
        cfg.update(
            problem="custom", kernel="constant",
            nonlinearities=["zero", "zero"], forcing="linear",
            domain_floor=0.0,
        )
        problem = build_problem(cfg)
        x = problem.grid.sample(lambda t: 2.0 * t)
        assert sup_metric(apply_A(problem, (x, x)), x) < 1e-12


class TestExitCodes:
    def test_check_passes(self, capsys):
        assert main(["check", "--alpha", "2", "--T", "2"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["passed"]
        assert report["kernel_bound"] == pytest.approx(1.0, abs=1e-10)

    def test_check_eta_overridden_fails(self, tmp_path, capsys):
        path = write_config(tmp_path, eta=[5.0, 1.0])
        assert main(["check", "--config", path]) == EXIT_CHECK_FAILED
        report = json.loads(capsys.readouterr().out)
        assert not report["eta_ok"]

    def test_malformed_json(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        assert main(["check", "--config", str(path)]) == EXIT_CONFIG_ERROR

    def test_solve_converges(self, tmp_path):
        out = tmp_path / "out"
        code = main(["solve", "--alpha", "2", "--T", "2", "--out", str(out)])
        assert code == EXIT_OK
        assert (out / "solution.csv").exists()
        assert (out / "trace.csv").exists()
        report = json.loads((out / "report.json").read_text())
        assert report["converged"] and report["collapsed"] and report["monotone_ok"]

    def test_loose_tolerance_converges_fast(self, tmp_path):
        cfg = write_config(tmp_path, tolerances={"step": 1e-2, "residual": 1e-2},
                           grid={"n": 50})
        out = tmp_path / "out"
        assert main(["solve", "--config", cfg, "--out", str(out)]) == EXIT_OK
        tight = json.loads((out / "report.json").read_text())
        assert tight["iterations"] < 10

    def test_max_iters_one_fails(self, tmp_path):
        cfg = write_config(tmp_path, max_iters=1)
        out = tmp_path / "out"
        code = main(["solve", "--config", cfg, "--out", str(out)])
        assert code == EXIT_NO_CONVERGENCE
        assert (out / "trace.csv").read_text().count("\n") == 2  # header + 1 row

    def test_verify_passes(self, capsys):
        assert main(["verify", "--alpha", "2", "--T", "2", "--seed", "42"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["contraction_ok"] and report["mixed_monotone_ok"]

    def test_verify_seed_changes_samples_not_verdict(self, capsys):
        assert main(["verify", "--alpha", "2", "--T", "2", "--seed", "7"]) == EXIT_OK
        first = json.loads(capsys.readouterr().out)
        assert main(["verify", "--alpha", "2", "--T", "2", "--seed", "8"]) == EXIT_OK
        second = json.loads(capsys.readouterr().out)
        assert first["contraction_min_slack"] != second["contraction_min_slack"]

    def test_verify_broken_nonlinearity_fails(self, tmp_path, capsys):
        # f1 scaled by 3 leaves the log(1 + .) band
        cfg = write_config(
            tmp_path, problem="custom", kernel="log-product",
            nonlinearities=["triple-log-shift", "neg-log-product"],
            forcing="linear-minus-log",
        )
        from mixedfp.cli import NONLINEARITIES

        NONLINEARITIES["triple-log-shift"] = lambda alpha, T: (
            lambda s, x: 3.0 * math.log(s + x)
        )
        try:
            assert main(["verify", "--config", cfg, "--seed", "42"]) == EXIT_CHECK_FAILED
        finally:
            del NONLINEARITIES["triple-log-shift"]


class TestReproducibility:
    def test_solve_bit_identical(self, tmp_path):
        outs = []
        for name in ("a", "b"):
            out = tmp_path / name
            assert main(["solve", "--alpha", "2", "--T", "2", "--out", str(out)]) == EXIT_OK
            outs.append(out)
        for fname in ("solution.csv", "trace.csv", "report.json"):
            assert (outs[0] / fname).read_bytes() == (outs[1] / fname).read_bytes()

    def test_solution_round_trip_residual(self, tmp_path):
        out = tmp_path / "out"
        assert main(["solve", "--alpha", "2", "--T", "2", "--out", str(out)]) == EXIT_OK
        report = json.loads((out / "report.json").read_text())
        solution = load_csv(out / "solution.csv")
        problem = build_problem(load_config(None, {"alpha": 2.0, "T": 2.0}))
        recomputed = sup_metric(
            solution, apply_A(problem, (solution,) * problem.k)
        )
        assert abs(recomputed - report["solution_residual"]) < 1e-12
