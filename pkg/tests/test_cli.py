import json
import subprocess
import sys
from math import factorial

from permkit.cli import main
from permkit import coset_search as cs


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestDist:
    def test_adjacent_swap(self, capsys):
        code, out, _ = run_cli(capsys, "dist", "1 2 3", "2 1 3")
        assert code == 0 and out.strip() == "1"

    def test_bad_word_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "dist", "1 1", "1 2")
        assert code == 2 and "error" in err


class TestBall:
    def test_size_only(self, capsys):
        code, out, _ = run_cli(capsys, "ball", "--n", "5", "--r", "2")
        assert code == 0 and out.strip() == "14"

    def test_enumerate(self, capsys):
        code, out, _ = run_cli(capsys, "ball", "--n", "4", "--r", "1", "--enumerate")
        lines = out.strip().splitlines()
        assert lines[0] == "4"
        assert len(lines) == 5
        assert lines[1] == "1 2 3 4"


class TestBounds:
    def test_table_mode_contains_published_value(self, capsys):
        code, out, _ = run_cli(capsys, "bounds", "--n", "37", "--d", "3",
                               "--table-mode")
        assert code == 0
        doc = json.loads(out)
        target = str(factorial(36) - 62)
        assert any(e["value_decimal"] == target for e in doc["upper"])

    def test_exact_cell(self, capsys):
        code, out, _ = run_cli(capsys, "bounds", "--n", "6", "--d", "11")
        doc = json.loads(out)
        assert doc["best_lower"] == doc["best_upper"] == "2"

    def test_out_of_range_d(self, capsys):
        code, _, err = run_cli(capsys, "bounds", "--n", "5", "--d", "99")
        assert code == 2


class TestConstructAndVerify:
    def test_round_trip(self, capsys, tmp_path):
        out_file = tmp_path / "code.txt"
        code, _, _ = run_cli(capsys, "construct4", "--n", "14",
                             "--output", str(out_file))
        assert code == 0
        text = out_file.read_text()
        assert text.splitlines()[0] == "14 60"
        code, out, _ = run_cli(capsys, "verify", "--code", str(out_file))
        assert code == 0 and out.startswith("PASS")

    def test_verify_failure_exit_code(self, capsys, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("3 3\n1 2 3\n2 1 3\n")
        code, out, _ = run_cli(capsys, "verify", "--code", str(bad))
        assert code == 1 and out.startswith("FAIL")


class TestAtDist:
    def test_prints_word_at_distance(self, capsys):
        code, out, _ = run_cli(capsys, "atdist", "--n", "7", "--d", "12")
        assert code == 0
        from permkit.perm_core import identity, kendall_distance, parse_perm
        assert kendall_distance(identity(7), parse_perm(out.strip())) == 12


class TestSearch:
    def test_cyclic_search_small(self, capsys, tmp_path):
        out_file = tmp_path / "code.txt"
        code, out, _ = run_cli(capsys, "search", "--n", "5", "--d", "4",
                               "--cyclic", "--output", str(out_file))
        assert code == 0
        assert "best code:" in out
        code, _, _ = run_cli(capsys, "verify", "--code", str(out_file))
        assert code == 0

    def test_group_file_search(self, capsys, tmp_path):
        gens = tmp_path / "gens.txt"
        gens.write_text(cs.write_generator_file(7, [(2, 4, 7, 6, 3, 5, 1)]))
        code, out, _ = run_cli(capsys, "search", "--n", "7", "--d", "12",
                               "--groups", str(gens))
        assert code == 0
        assert "code_size=7" in out

    def test_requires_exactly_one_source(self, capsys):
        try:
            main(["search", "--n", "5", "--d", "3"])
        except SystemExit as exc:
            assert exc.code == 2


class TestTablesVerify:
    def test_s7_rows(self, capsys):
        code, out, _ = run_cli(capsys, "tables-verify", "--n", "7")
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 11
        sizes = [int(line.split("size=")[1].split()[0]) for line in lines]
        assert sizes == [315, 126, 84, 42, 28, 15, 12, 8, 7, 4, 4]
        assert all(line.endswith("PASS") for line in lines)

    def test_emit_generators(self, capsys, tmp_path):
        code, _, _ = run_cli(capsys, "tables-verify", "--n", "7",
                             "--emit-generators", str(tmp_path))
        assert code == 0
        files = sorted(p.name for p in tmp_path.iterdir())
        assert "s7_d04_generators.txt" in files
        assert "s7_d04_reps.txt" in files
        n, gens = cs.parse_generator_file(
            (tmp_path / "s7_d04_generators.txt").read_text()
        )
        assert n == 7 and gens[0] == (4, 2, 1, 3, 7, 5, 6)


class TestEpc:
    def test_report_shape(self, capsys):
        code, out, _ = run_cli(capsys, "epc", "--n", "5", "--d", "7")
        doc = json.loads(out)
        assert doc["shell_size"] == 15
        assert doc["ep_max"] == 2
        assert doc["clique_counts_from_2"] == [0]


class TestClique:
    def test_p5_6(self, capsys):
        code, out, _ = run_cli(capsys, "clique", "--n", "5", "--d", "6")
        assert code == 0 and out.strip() == "5"


class TestYoungmat:
    def test_report_and_csv(self, capsys, tmp_path):
        csv_file = tmp_path / "m.csv"
        code, out, _ = run_cli(capsys, "youngmat", "--n", "5", "--r", "1",
                               "--lp", "--csv", str(csv_file))
        assert code == 0
        doc = json.loads(out)
        assert doc["all_ok"] is True
        assert doc["lp_optimum"] == "24"
        rows = csv_file.read_text().strip().splitlines()
        assert rows[0] == "4,1,0,0,0"

    def test_rejected_shape(self, capsys):
        code, _, err = run_cli(capsys, "youngmat", "--n", "6", "--r", "2")
        assert code == 2


class TestDeterminism:
    def test_identical_invocations_identical_bytes(self):
        cmd = [sys.executable, "-m", "permkit.cli", "bounds", "--n", "8", "--d", "5"]
        first = subprocess.run(cmd, capture_output=True, check=True)
        second = subprocess.run(cmd, capture_output=True, check=True)
        assert first.stdout == second.stdout
        assert first.returncode == 0
