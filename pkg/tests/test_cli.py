import json

import pytest

from chainalign.chain import SolverConfig
from chainalign.cli import RunConfig, build_parser, execute, resolve_config
from chainalign.lexical import SimilarityConfig

from conftest import DATA_DIR

BIRDS = str(DATA_DIR / "birds.json")
ZOO = str(DATA_DIR / "zoo.json")


def run(capsys, *argv):
    code = execute(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_identity_reference(tmp_path, graph_path):
    doc = json.loads((DATA_DIR / graph_path).read_text())
    ref = tmp_path / "ref.tsv"
    ref.write_text(
        "".join(f"{t['id']}\t{t['id']}\n" for t in doc["terms"]), encoding="utf-8"
    )
    return str(ref)


class TestAlign:
    def test_json_output_on_stdout(self, capsys):
        code, out, _ = run(capsys, "align", BIRDS, BIRDS,
                           "--gamma", "0.5", "--method", "steady-state",
                           "--norm", "complement")
        assert code == 0
        doc = json.loads(out)
        pairs = {(c["source"], c["target"]) for c in doc["correspondences"]}
        assert pairs == {("finch", "finch"), ("heron", "heron"), ("osprey", "osprey")}

    def test_tsv_output(self, capsys):
        code, out, _ = run(capsys, "align", BIRDS, BIRDS, "--format", "tsv")
        assert code == 0
        lines = [l for l in out.splitlines() if l]
        assert len(lines) == 3
        assert all(len(l.split("\t")) == 3 for l in lines)

    def test_missing_file_exits_2(self, capsys):
        code, _, err = run(capsys, "align", BIRDS, "missing.json")
        assert code == 2
        assert "missing.json" in err

    def test_triples_input_accepted(self, capsys):
        code, out, _ = run(capsys, "align", str(DATA_DIR / "birds.txt"), BIRDS)
        assert code == 0
        assert json.loads(out)["correspondences"]

    def test_output_file(self, capsys, tmp_path):
        out_path = tmp_path / "alignment.json"
        code, _, _ = run(capsys, "align", BIRDS, BIRDS, "-o", str(out_path))
        assert code == 0
        assert json.loads(out_path.read_text())["correspondences"]


class TestEval:
    def test_single_line_report(self, capsys, tmp_path):
        out_path = tmp_path / "alignment.json"
        assert execute(["align", ZOO, ZOO, "-o", str(out_path)]) == 0
        capsys.readouterr()
        ref = write_identity_reference(tmp_path, "zoo.json")
        code, out, _ = run(capsys, "eval", str(out_path), ref)
        assert code == 0
        assert out.startswith("precision=1.000000 recall=1.000000 f=1.000000")

    def test_partial_overlap(self, capsys, tmp_path):
        alignment = tmp_path / "alignment.tsv"
        alignment.write_text("lion\tlion\t1.0\nbear\twolf\t0.5\n", encoding="utf-8")
        ref = write_identity_reference(tmp_path, "zoo.json")
        code, out, _ = run(capsys, "eval", str(alignment), ref)
        assert code == 0
        assert "precision=0.500000" in out
        assert "recall=0.250000" in out

    def test_missing_reference_exits_2(self, capsys, tmp_path):
        alignment = tmp_path / "alignment.tsv"
        alignment.write_text("a\tb\t1.0\n", encoding="utf-8")
        code, _, err = run(capsys, "eval", str(alignment), "no-such.tsv")
        assert code == 2
        assert "no-such.tsv" in err


class TestCompare:
    def test_csv_written(self, capsys, tmp_path):
        ref = write_identity_reference(tmp_path, "zoo.json")
        out_path = tmp_path / "cmp.csv"
        code, _, _ = run(capsys, "compare", ZOO, ZOO, ref, "-o", str(out_path),
                         "--case", "self")
        assert code == 0
        lines = out_path.read_text().strip().split("\n")
        assert len(lines) == 3
        assert lines[1].startswith("self,baseline-sf,")
        assert lines[2].startswith("self,edge-confidence,")

    def test_byte_identical_between_runs(self, capsys, tmp_path):
        ref = write_identity_reference(tmp_path, "zoo.json")
        outs = []
        for i in range(2):
            path = tmp_path / f"cmp{i}.csv"
            code, _, _ = run(capsys, "compare", ZOO, ZOO, ref,
                             "-o", str(path), "--seed", "9")
            assert code == 0
            outs.append(path.read_bytes())
        assert outs[0] == outs[1]


class TestBenchGen:
    def test_writes_mutant_and_reference(self, capsys, tmp_path):
        out_ont = tmp_path / "mut.json"
        out_ref = tmp_path / "ref.tsv"
        code, _, _ = run(capsys, "bench-gen", ZOO, "--mutation", "label-edit",
                         "--seed", "42", "--out-ontology", str(out_ont),
                         "--out-reference", str(out_ref))
        assert code == 0
        doc = json.loads(out_ont.read_text())
        assert {t["id"] for t in doc["terms"]} == {"lion", "tiger", "bear", "wolf"}
        assert len(out_ref.read_text().splitlines()) == 4

    def test_deterministic_for_fixed_seed(self, capsys, tmp_path):
        blobs = []
        for i in range(2):
            out_ont = tmp_path / f"mut{i}.json"
            out_ref = tmp_path / f"ref{i}.tsv"
            code, _, _ = run(capsys, "bench-gen", ZOO, "--mutation", "label-edit",
                             "--seed", "7", "--out-ontology", str(out_ont),
                             "--out-reference", str(out_ref))
            assert code == 0
            blobs.append(out_ont.read_bytes() + out_ref.read_bytes())
        assert blobs[0] == blobs[1]


class TestDumpChain:
    def test_triplet_csv(self, capsys):
        code, out, _ = run(capsys, "dump-chain", BIRDS, ZOO)
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "row,col,weight"
        row, col, weight = lines[1].split(",")
        assert row.isdigit() and col.isdigit()
        assert float(weight) > 0


class TestSolverFailure:
    def test_reducible_chain_under_steady_state_exits_3(self, capsys, tmp_path):
        # a pure cycle paired with itself splits into offset classes, so
        # the direct solve has no unique stationary distribution
        cycle = tmp_path / "cycle.txt"
        cycle.write_text("A next B\nB next C\nC next A\n", encoding="utf-8")
        code, _, err = run(capsys, "align", str(cycle), str(cycle),
                           "--method", "steady-state")
        assert code == 3
        assert "damping" in err

    def test_same_input_succeeds_with_iterative_solver(self, capsys, tmp_path):
        cycle = tmp_path / "cycle.txt"
        cycle.write_text("A next B\nB next C\nC next A\n", encoding="utf-8")
        code, out, _ = run(capsys, "align", str(cycle), str(cycle))
        assert code == 0
        assert json.loads(out)["correspondences"]


class TestUsageAndConfig:
    def test_unknown_subcommand_exits_1(self, capsys):
        code, _, _ = run(capsys, "frobnicate")
        assert code == 1

    def test_missing_arguments_exit_1(self, capsys):
        code, _, _ = run(capsys, "align", BIRDS)
        assert code == 1

    def test_flag_defaults_match_library_defaults(self):
        parser = build_parser()
        args = parser.parse_args(["align", "a", "b"])
        cfg = resolve_config(args)
        sim = SimilarityConfig()
        solver = SolverConfig()
        assert cfg.sim_config() == sim
        assert cfg.solver_config() == solver
        assert cfg.min_confidence == 0.0
        assert RunConfig() == cfg

    def test_config_file_fills_unset_flags(self, capsys, tmp_path):
        config = tmp_path / "cfg.json"
        config.write_text('{"gamma": 0.75, "method": "steady-state"}', encoding="utf-8")
        parser = build_parser()
        args = parser.parse_args(["align", "a", "b", "--config", str(config)])
        cfg = resolve_config(args)
        assert cfg.gamma == 0.75
        assert cfg.method == "steady-state"

    def test_explicit_flags_override_config_file(self, tmp_path):
        config = tmp_path / "cfg.json"
        config.write_text('{"gamma": 0.75}', encoding="utf-8")
        parser = build_parser()
        args = parser.parse_args(
            ["align", "a", "b", "--config", str(config), "--gamma", "0.25"]
        )
        assert resolve_config(args).gamma == 0.25

    def test_unknown_config_keys_rejected(self, capsys, tmp_path):
        config = tmp_path / "cfg.json"
        config.write_text('{"gama": 0.75}', encoding="utf-8")
        code, _, err = run(capsys, "align", BIRDS, BIRDS, "--config", str(config))
        assert code == 2
        assert "gama" in err

    def test_invalid_flag_value_exits_2(self, capsys):
        code, _, err = run(capsys, "align", BIRDS, BIRDS, "--gamma", "1.5")
        assert code == 2
        assert "gamma" in err
