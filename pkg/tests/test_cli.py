import json

import pandas as pd
import pytest

from main import EXIT_OK, EXIT_PARSE, main
from src.utils.bench import BENCH_COLUMNS


@pytest.fixture
def instance_files(tmp_path):
    prefix = str(tmp_path / "inst")
    assert main(["gen", "random-planar", "--size", "40", "--seed", "5", "--ops", "12", "--queries", "6", "--out", prefix]) == EXIT_OK
    return prefix + ".graph", prefix + ".ops"


def query_lines(capsys):
    return [json.loads(line) for line in capsys.readouterr().out.splitlines() if line.strip()]


class TestGen:
    def test_grid_to_stdout(self, capsys):
        assert main(["gen", "grid", "--size", "16"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "16 24"
        assert len(lines) == 25

    def test_same_seed_is_byte_identical(self, tmp_path):
        first, second = str(tmp_path / "a"), str(tmp_path / "b")
        for prefix in (first, second):
            main(["gen", "random-planar", "--size", "50", "--seed", "9", "--ops", "10", "--queries", "5", "--out", prefix])
        for suffix in (".graph", ".ops"):
            assert open(first + suffix, "rb").read() == open(second + suffix, "rb").read()

    def test_omv_matrix(self, capsys):
        assert main(["gen", "omv", "--size", "4", "--seed", "1"]) == EXIT_OK
        rows = capsys.readouterr().out.splitlines()
        assert len(rows) == 4
        assert all(len(row.split()) == 4 for row in rows)

    def test_unknown_kind_is_a_usage_error(self):
        with pytest.raises(SystemExit) as info:
            main(["gen", "torus", "--size", "4"])
        assert info.value.code == 2


class TestRun:
    def test_json_lines_per_query(self, instance_files, capsys):
        graph, script = instance_files
        assert main(["run", graph, script, "--r", "8"]) == EXIT_OK
        records = query_lines(capsys)
        assert len(records) == 6
        assert {"op_index", "kind", "s", "t", "answer", "oracle", "ratio", "micros", "seed"} <= set(records[0])

    def test_no_timings_output_is_deterministic(self, instance_files, capsys):
        graph, script = instance_files
        main(["run", graph, script, "--r", "8", "--no-timings"])
        first = capsys.readouterr().out
        main(["run", graph, script, "--r", "8", "--no-timings"])
        assert capsys.readouterr().out == first
        assert "micros" not in first

    def test_worst_case_gives_same_answers(self, instance_files, capsys):
        graph, script = instance_files
        main(["run", graph, script, "--r", "8", "--no-timings"])
        amortized = query_lines(capsys)
        main(["run", graph, script, "--r", "8", "--no-timings", "--worst-case"])
        worst_case = query_lines(capsys)
        assert [rec["answer"] for rec in worst_case] == pytest.approx([rec["answer"] for rec in amortized], rel=1e-6)

    def test_repeat_runs_consecutive_seeds(self, instance_files, capsys):
        graph, script = instance_files
        main(["run", graph, script, "--r", "8", "--repeat", "2", "--no-timings"])
        seeds = [rec["seed"] for rec in query_lines(capsys)]
        assert len(seeds) == 12
        assert len(set(seeds)) == 2

    def test_malformed_graph_exits_with_parse_code(self, tmp_path, instance_files):
        _, script = instance_files
        bad = tmp_path / "bad.graph"
        bad.write_text("3 2\n0 1 1\n")
        assert main(["run", str(bad), script]) == EXIT_PARSE

    def test_operation_invalid_for_mode(self, tmp_path, instance_files):
        graph, _ = instance_files
        script = tmp_path / "act.ops"
        script.write_text("A 0\n")
        assert main(["run", graph, str(script)]) == EXIT_PARSE

    def test_query_on_unknown_vertex(self, tmp_path, instance_files):
        graph, _ = instance_files
        script = tmp_path / "far.ops"
        script.write_text("Q 0 999\n")
        assert main(["run", graph, str(script), "--r", "8"]) == EXIT_PARSE


class TestAudit:
    def test_grid_division_passes(self, tmp_path, capsys):
        prefix = str(tmp_path / "grid")
        main(["gen", "grid", "--size", "64", "--out", prefix])
        capsys.readouterr()
        assert main(["audit", prefix + ".graph", "--r", "8"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["max_region_size"] <= 8
        assert {check["name"] for check in report["checks"]} >= {"edge_partition", "region_size", "boundary_consistency"}

    def test_r_below_two_is_an_error(self, tmp_path):
        prefix = str(tmp_path / "grid")
        main(["gen", "grid", "--size", "16", "--out", prefix])
        assert main(["audit", prefix + ".graph", "--r", "1"]) != EXIT_OK


class TestBench:
    def test_csv_columns(self, instance_files, tmp_path):
        graph, script = instance_files
        out = tmp_path / "bench.csv"
        assert main(["bench", graph, script, "--r-sweep", "6,12", "--out", str(out)]) == EXIT_OK
        frame = pd.read_csv(out)
        assert list(frame.columns) == BENCH_COLUMNS
        assert list(frame["r"]) == [6, 12]

    def test_generated_script_to_stdout(self, instance_files, capsys):
        graph, _ = instance_files
        assert main(["bench", graph, "--r-sweep", "8", "--ops", "5", "--queries", "3"]) == EXIT_OK
        header = capsys.readouterr().out.splitlines()[0]
        assert header.split(",") == BENCH_COLUMNS

    def test_bad_sweep_is_a_usage_error(self, instance_files):
        graph, _ = instance_files
        with pytest.raises(SystemExit):
            main(["bench", graph, "--r-sweep", "a,b"])


class TestOMv:
    def test_generated_queries_match_boolean_product(self, tmp_path, capsys):
        prefix = str(tmp_path / "gadget")
        assert main(["gen", "omv", "--size", "5", "--seed", "2", "--queries", "6", "--out", prefix]) == EXIT_OK
        assert main(["omv", prefix + ".mat", prefix + ".vec", "--r", "4", "--seed", "2"]) == EXIT_OK
        records = query_lines(capsys)
        assert len(records) == 6
        assert [rec["index"] for rec in records] == list(range(6))
        assert all(rec["answer"] == rec["expected"] for rec in records)
        assert all(("energy" in rec) == bool(rec["answer"]) for rec in records)

    def test_hand_written_identity(self, tmp_path, capsys):
        matrix = tmp_path / "eye.mat"
        matrix.write_text("1 0\n0 1\n")
        vectors = tmp_path / "eye.vec"
        vectors.write_text("# u v\n10 10\n10 01\n11 01\n")
        assert main(["omv", str(matrix), str(vectors), "--r", "4"]) == EXIT_OK
        assert [rec["answer"] for rec in query_lines(capsys)] == [1, 0, 1]

    def test_vector_length_mismatch_is_a_parse_error(self, tmp_path):
        matrix = tmp_path / "eye.mat"
        matrix.write_text("1 0\n0 1\n")
        vectors = tmp_path / "bad.vec"
        vectors.write_text("101 10\n")
        assert main(["omv", str(matrix), str(vectors)]) == EXIT_PARSE
