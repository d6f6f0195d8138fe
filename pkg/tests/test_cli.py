"""CLI: exit codes, output files, determinism, wire formats."""

import json
import os

import pytest

from graphbandit import cli
from graphbandit import graphs as gr


def run_cli(*argv):
    return cli.main(list(argv))


def minimal_config(tmp_path, **over):
    cfg = {
        "environment": {
            "type": "stochastic",
            "losses": {"kind": "constant", "values": [0.2, 0.7]},
            "graphs": {"kind": "disjoint_cliques", "alpha": 1},
        },
        "learner": {"type": "ucb"},
        "t": 100,
        "replicates": 1,
        "master_seed": 5,
    }
    cfg.update(over)
    path = tmp_path / "config.json"
    path.write_text(json.dumps(cfg))
    return str(path)


class TestRun:
    def test_minimal_run(self, tmp_path):
        cfg = minimal_config(tmp_path)
        out = tmp_path / "out"
        assert run_cli("run", cfg, "--out-dir", str(out)) == 0
        report = json.loads((out / "report.json").read_text())
        assert len(report["replicates"]) == 1
        assert report["aggregates"]["se_pseudo_regret"] == 0.0

    def test_same_seed_identical_outputs(self, tmp_path):
        cfg = minimal_config(tmp_path, replicates=3, checkpoints=[50, 100])
        out_a, out_b = tmp_path / "a", tmp_path / "b"
        assert run_cli("run", cfg, "--out-dir", str(out_a), "--seed", "9") == 0
        assert run_cli("run", cfg, "--out-dir", str(out_b), "--seed", "9") == 0
        assert (out_a / "report.json").read_bytes() == (out_b / "report.json").read_bytes()
        assert (out_a / "checkpoints.csv").read_bytes() == (out_b / "checkpoints.csv").read_bytes()

    def test_missing_t_exit_2(self, tmp_path, capsys):
        cfg = json.loads(open(minimal_config(tmp_path)).read())
        del cfg["t"]
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(cfg))
        assert run_cli("run", str(path), "--out-dir", str(tmp_path / "o")) == 2
        assert ".t" in capsys.readouterr().err

    def test_input_not_mutated(self, tmp_path):
        cfg = minimal_config(tmp_path)
        before = open(cfg).read()
        run_cli("run", cfg, "--out-dir", str(tmp_path / "o"))
        assert open(cfg).read() == before

    def test_checkpoint_csv_contract(self, tmp_path):
        cfg = minimal_config(tmp_path, checkpoints=[25, 50])
        out = tmp_path / "o"
        run_cli("run", cfg, "--out-dir", str(out))
        lines = (out / "checkpoints.csv").read_text().splitlines()
        assert lines[0] == "replicate,round,cum_pseudo_regret,cum_realized_regret"
        assert len(lines) == 3

    def test_trace_dump_contract(self, tmp_path):
        cfg = minimal_config(tmp_path, learner={"type": "elimination"}, t=2000)
        out = tmp_path / "o"
        assert run_cli("run", cfg, "--out-dir", str(out), "--dump-traces") == 0
        trace = (out / "trace_000.csv").read_text().splitlines()
        assert trace[0] == "round,played,incurred_loss,observed_count,comparator_loss"
        assert len(trace) == 2001
        first = trace[1].split(",")
        assert first[0] == "1" and first[1] in ("1", "2")
        phases = (out / "phases_000.csv").read_text().splitlines()
        assert phases[0] == "phase,eps_r,n_r,rounds_spent,surviving_actions"
        assert len(phases) >= 2


class TestSweep:
    def sweep_config(self, tmp_path, values):
        cfg = {
            "base": json.loads(open(minimal_config(tmp_path)).read()),
            "axes": [{"path": "environment.graphs.alpha", "values": values}],
        }
        path = tmp_path / "sweep.json"
        path.write_text(json.dumps(cfg))
        return str(path)

    def test_single_cell_matches_run(self, tmp_path):
        sweep_path = self.sweep_config(tmp_path, [1])
        out = tmp_path / "sweep_out"
        assert run_cli("sweep", sweep_path, "--out-dir", str(out)) == 0
        run_out = tmp_path / "run_out"
        run_cli("run", minimal_config(tmp_path), "--out-dir", str(run_out))
        sweep_report = json.loads((out / "cell_000" / "report.json").read_text())
        run_report = json.loads((run_out / "report.json").read_text())
        assert sweep_report["replicates"] == run_report["replicates"]

    def test_axis_rows_in_order(self, tmp_path):
        sweep_path = self.sweep_config(tmp_path, [1, 2])
        out = tmp_path / "o"
        assert run_cli("sweep", sweep_path, "--out-dir", str(out)) == 0
        lines = (out / "summary.csv").read_text().splitlines()
        assert lines[0] == "environment.graphs.alpha,mean_regret,se"
        assert [row.split(",")[0] for row in lines[1:]] == ["1", "2"]

    def test_bad_axes_exit_2(self, tmp_path):
        path = tmp_path / "bad_sweep.json"
        path.write_text(json.dumps({"base": {}}))
        assert run_cli("sweep", str(path), "--out-dir", str(tmp_path / "o")) == 2


class TestVerify:
    def test_single_check(self, tmp_path):
        out = tmp_path / "checks.json"
        code = run_cli("verify", "--only", "expected_observed", "--out", str(out))
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload[0]["name"] == "expected_observed"
        assert payload[0]["status"] == "pass"

    def test_unknown_check_exit_2(self, capsys):
        assert run_cli("verify", "--only", "nope") == 2

    def test_stdout_when_no_out(self, capsys):
        assert run_cli("verify", "--only", "expected_observed") == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload[0]["status"] == "pass"


class TestGraphgen:
    def test_cliques(self, tmp_path, capsys):
        assert run_cli("graphgen", "--cliques", "12", "4") == 0
        obj = json.loads(capsys.readouterr().out)
        assert gr.graph_from_json(obj).rows == gr.disjoint_cliques(12, 4).rows

    def test_er_with_seed_to_file(self, tmp_path):
        out = tmp_path / "g.json"
        assert run_cli("graphgen", "--er", "8", "0.5", "--seed", "3",
                       "--out", str(out)) == 0
        g = gr.load_graph(out.read_text())
        assert g.num_actions == 8
        assert g.all_self_loops

    def test_requires_exactly_one_kind(self, capsys):
        assert run_cli("graphgen", "--complete", "4", "--bandit", "4") == 2

    def test_bad_parameters_exit_2(self, capsys):
        assert run_cli("graphgen", "--cliques", "4", "9") == 2


class TestConfigsShipped:
    @pytest.mark.parametrize("name", [
        "stochastic_small.json", "adversarial_lb.json", "strongly_obs_lb.json",
    ])
    def test_example_configs_validate(self, name):
        from graphbandit.harness import ExperimentConfig

        path = os.path.join(os.path.dirname(__file__), "..", "configs", name)
        ExperimentConfig.from_dict(json.load(open(path)))
