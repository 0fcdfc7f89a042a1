"""Command-line surface: formats, determinism, exit codes."""

import json

import pytest

from sidonlab.cli import main
from sidonlab.sets import erdos_turan, read_set_file


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestConstruct:
    def test_erdos_turan_file(self, tmp_path, capsys):
        out = tmp_path / "s.txt"
        code, stdout, _ = run(capsys, "construct", "erdos-turan", "--p", "5",
                              "--out", str(out))
        assert code == 0
        assert read_set_file(out) == erdos_turan(5)
        doc = json.loads(stdout)
        assert doc["schema"] == 1
        assert doc["size"] == 5 and doc["ambient_n"] == 50
        assert doc["is_sidon"] is True
        assert doc["eta"] == {"numerator": 0, "denominator": 1}

    def test_mian_chowla_last_element(self, tmp_path, capsys):
        out = tmp_path / "mc.txt"
        code, stdout, _ = run(capsys, "construct", "mian-chowla", "--k", "10",
                              "--out", str(out))
        assert code == 0
        assert read_set_file(out).elements[-1] == 81

    def test_stdout_mode(self, capsys):
        code, stdout, stderr = run(capsys, "construct", "erdos-turan", "--p", "3")
        assert code == 0
        assert stdout.startswith("N 18\n")
        assert json.loads(stderr)["size"] == 3

    def test_perturb_extra_zero_byte_identical(self, tmp_path, capsys):
        src = tmp_path / "in.txt"
        code, _, _ = run(capsys, "construct", "erdos-turan", "--p", "7",
                         "--out", str(src))
        assert code == 0
        out1 = tmp_path / "a.txt"
        out2 = tmp_path / "b.txt"
        run(capsys, "construct", "perturb", "--in", str(src), "--extra", "0",
            "--seed", "7", "--out", str(out1))
        run(capsys, "construct", "perturb", "--in", str(src), "--extra", "0",
            "--seed", "9", "--out", str(out2))
        assert out1.read_bytes() == src.read_bytes() == out2.read_bytes()

    def test_nonprime_exit_2(self, capsys):
        code, _, stderr = run(capsys, "construct", "erdos-turan", "--p", "4")
        assert code == 2
        assert "prime" in stderr


class TestEnergy:
    def test_fields(self, tmp_path, capsys):
        out = tmp_path / "s.txt"
        run(capsys, "construct", "erdos-turan", "--p", "7", "--out", str(out))
        code, stdout, _ = run(capsys, "energy", "--set", str(out))
        assert code == 0
        doc = json.loads(stdout)
        assert doc["energy"] == 91
        assert doc["delta"] == {"numerator": 7, "denominator": 10}


class TestCount:
    def test_interval_progressions(self, capsys):
        code, stdout, _ = run(capsys, "count", "--coeffs", "1,1,-2",
                              "--interval", "5")
        assert code == 0
        doc = json.loads(stdout)
        assert doc["value_numerator"] == 13
        assert doc["value_denominator"] == 1
        assert doc["half_power"] == 0

    def test_diagonal_is_size(self, tmp_path, capsys):
        out = tmp_path / "s.txt"
        run(capsys, "construct", "erdos-turan", "--p", "11", "--out", str(out))
        code, stdout, _ = run(capsys, "count", "--coeffs", "1,-1",
                              "--sets", str(out))
        assert json.loads(stdout)["value_numerator"] == 11

    def test_distinct(self, tmp_path, capsys):
        f = tmp_path / "t.txt"
        f.write_text("N 3\n1\n2\n3\n")
        code, stdout, _ = run(capsys, "count", "--coeffs", "1,1,-2",
                              "--sets", str(f), "--distinct")
        assert code == 0
        assert json.loads(stdout)["value_numerator"] == 2

    def test_oracle_agreement_exit_zero(self, capsys):
        code, stdout, _ = run(capsys, "count", "--coeffs", "1,1,-2",
                              "--interval", "6", "--oracle")
        assert code == 0
        assert json.loads(stdout)["oracle_agrees"] is True

    def test_budget_exit_3(self, capsys, monkeypatch):
        monkeypatch.setenv("SIDONLAB_BUDGET", "10")
        code, _, stderr = run(capsys, "count", "--coeffs", "1,1,-2",
                              "--interval", "10", "--oracle")
        assert code == 3
        assert "budget" in stderr

    def test_bad_coeffs_exit_2(self, capsys):
        code, _, _ = run(capsys, "count", "--coeffs", "1,x", "--interval", "4")
        assert code == 2

    def test_oracle_mismatch_exit_1(self, capsys, monkeypatch):
        # exit-status contract for a verdict failure, forced by doctoring
        # the oracle (an honest mismatch would be an engine bug)
        from fractions import Fraction

        import sidonlab.cli as cli
        from sidonlab.counting import SolutionCount

        monkeypatch.setattr(
            cli, "brute_force_count",
            lambda *a, **k: SolutionCount(Fraction(-1), 0, None),
        )
        code, stdout, _ = run(capsys, "count", "--coeffs", "1,-1",
                              "--interval", "4", "--oracle")
        assert code == 1
        assert json.loads(stdout)["oracle_agrees"] is False

    def test_determinism(self, capsys):
        _, out1, _ = run(capsys, "count", "--coeffs", "1,1,-2", "--interval", "9")
        _, out2, _ = run(capsys, "count", "--coeffs", "1,1,-2", "--interval", "9")
        assert out1 == out2


class TestSpectrum:
    def test_tsv_shape(self, tmp_path, capsys):
        out = tmp_path / "s.txt"
        run(capsys, "construct", "erdos-turan", "--p", "5", "--out", str(out))
        code, stdout, _ = run(capsys, "spectrum", "--set", str(out),
                              "--eps", "1/4", "--m", "256")
        assert code == 0
        lines = stdout.strip().splitlines()
        assert lines[0].startswith("# schema=1")
        header = lines[2].split("\t")
        assert header == ["k", "m", "alpha", "magnitude", "selected"]
        rows = [ln.split("\t") for ln in lines[3:]]
        assert rows[0][0] == "0" and rows[0][4] == "1"
        assert all(r[4] in ("0", "1") for r in rows)
        assert all(int(r[1]) == 256 for r in rows)

    def test_determinism(self, tmp_path, capsys):
        out = tmp_path / "s.txt"
        run(capsys, "construct", "erdos-turan", "--p", "5", "--out", str(out))
        _, a, _ = run(capsys, "spectrum", "--set", str(out), "--eps", "1/4")
        _, b, _ = run(capsys, "spectrum", "--set", str(out), "--eps", "1/4")
        assert a == b


class TestBohr:
    def test_multiples_of_three(self, capsys):
        code, stdout, _ = run(capsys, "bohr", "--freq", "1/3", "--eps", "1/4",
                              "--n", "60")
        doc = json.loads(stdout)
        assert doc["elements"] == list(range(-15, 16, 3))
        assert doc["size"] == 11
        assert doc["size_bound"]["holds"] is True

    def test_bad_eps_exit_2(self, capsys):
        code, _, _ = run(capsys, "bohr", "--eps", "2/3", "--n", "10")
        assert code == 2


class TestModel:
    def test_diagnostics(self, tmp_path, capsys):
        out = tmp_path / "s.txt"
        run(capsys, "construct", "erdos-turan", "--p", "11", "--out", str(out))
        code, stdout, _ = run(capsys, "model", "--set", str(out),
                              "--eps", "1/5")
        assert code == 0
        doc = json.loads(stdout)
        assert doc["n_padded"] == 256
        assert doc["mass_identity_holds"] is True
        assert doc["containment_holds"] is True
        assert doc["fourier_distance"] == 0.0


class TestVerify:
    def test_lemmas_exit_zero(self, capsys):
        code, stdout, _ = run(capsys, "verify", "lemmas", "--seed", "1",
                              "--trials", "10")
        assert code == 0
        doc = json.loads(stdout)
        assert doc["all_ok"] is True
        assert doc["suites"][0]["trials"] == 10

    def test_zero_trials(self, capsys):
        code, stdout, _ = run(capsys, "verify", "counting", "--trials", "0")
        assert code == 0
        doc = json.loads(stdout)
        assert all(s["trials"] == 0 for s in doc["suites"][:3])

    def test_model_suite(self, capsys):
        code, stdout, _ = run(capsys, "verify", "model")
        assert code == 0
        assert json.loads(stdout)["all_ok"] is True

    def test_determinism(self, capsys):
        _, a, _ = run(capsys, "verify", "lemmas", "--seed", "3",
                      "--trials", "8")
        _, b, _ = run(capsys, "verify", "lemmas", "--seed", "3",
                      "--trials", "8")
        assert a == b


class TestReport:
    def test_full_json(self, tmp_path, capsys):
        out = tmp_path / "s.txt"
        run(capsys, "construct", "erdos-turan", "--p", "11", "--out", str(out))
        code, stdout, _ = run(capsys, "report", "--set", str(out),
                              "--coeffs", "1,1,1,1,-4", "--eps", "1/5")
        assert code == 0
        doc = json.loads(stdout)
        assert doc["schema"] == 1
        assert doc["theorem_verdicts_hold"] is True
        assert doc["params"]["n_padded"] == 256
        assert doc["counts"]["difference"] == {"numerator": 0, "denominator": 1}
        assert doc["model"]["r_count"] == len(doc["model"]["selected_frequencies"])
        assert doc["verdicts"]["repeated_difference"]["holds"] is True

    def test_determinism(self, tmp_path, capsys):
        out = tmp_path / "s.txt"
        run(capsys, "construct", "erdos-turan", "--p", "7", "--out", str(out))
        _, a, _ = run(capsys, "report", "--set", str(out),
                      "--coeffs", "1,1,1,1,-4", "--eps", "1/5")
        _, b, _ = run(capsys, "report", "--set", str(out),
                      "--coeffs", "1,1,1,1,-4", "--eps", "1/5")
        assert a == b

    def test_not_invariant_exit_2(self, tmp_path, capsys):
        out = tmp_path / "s.txt"
        run(capsys, "construct", "erdos-turan", "--p", "7", "--out", str(out))
        code, _, _ = run(capsys, "report", "--set", str(out),
                         "--coeffs", "1,1,1,1,-5", "--eps", "1/5")
        assert code == 2


class TestBench:
    def test_single_size(self, capsys):
        code, stdout, _ = run(capsys, "bench", "--sizes", "16")
        assert code == 0
        lines = stdout.strip().splitlines()
        assert lines[1].split("\t") == ["N", "fast_ms", "brute_ms", "speedup"]
        row = lines[2].split("\t")
        assert row[0] == "16"
        float(row[1]), float(row[2])  # parse as timings

    def test_oversized_brute_skipped(self, capsys, monkeypatch):
        monkeypatch.setenv("SIDONLAB_BUDGET", "10")
        code, stdout, _ = run(capsys, "bench", "--sizes", "32")
        assert code == 0
        row = stdout.strip().splitlines()[2].split("\t")
        assert row[2] == "skipped"
