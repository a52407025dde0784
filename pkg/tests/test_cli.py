"""Tests for CLI commands - exit codes, records, and error handling."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import pytest


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "campana_count.cli", *args],
        capture_output=True,
        text=True,
    )


class TestDecomposeCommand:
    """Tests for decompose CLI command."""

    def test_decompose_success(self):
        result = run_cli('decompose', '72', '--m', '2')

        assert result.returncode == 0
        assert "u=3" in result.stdout
        assert "v=[2]" in result.stdout

    def test_decompose_all_v_slots(self):
        result = run_cli('decompose', '1', '--m', '5', '--format', 'json')

        assert result.returncode == 0
        record = json.loads(result.stdout)
        assert record["command"] == "decompose"
        assert record["result"]["v"] == [1, 1, 1, 1]

    def test_decompose_not_m_full(self):
        """12 is not squareful; 3 is the witness."""
        result = run_cli('decompose', '12', '--m', '2')

        assert result.returncode == 3
        assert "ERROR" in result.stderr
        assert "3" in result.stderr

    def test_decompose_missing_m(self):
        result = run_cli('decompose', '72')

        assert result.returncode == 2


class TestAdmissibleCommand:
    """Tests for admissible CLI command."""

    def test_admissible_preset(self):
        result = run_cli('admissible', '--preset', 'admissible17')

        assert result.returncode == 0
        assert "Verdict: PASS" in result.stdout

    def test_borderline_preset(self):
        result = run_cli('admissible', '--preset', 'borderline16')

        assert result.returncode == 0
        assert "Verdict: FAIL" in result.stdout
        assert "[FAIL] theta > 0" in result.stdout

    def test_bad_spec_file(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            spec = Path(tmpdir) / "bad.json"
            spec.write_text('{"k": 2, "c": [1, -1]}')

            result = run_cli('admissible', '--spec', str(spec))

            assert result.returncode == 2
            assert "ERROR" in result.stderr
            assert "missing keys" in result.stderr

    def test_no_orbifold(self):
        result = run_cli('admissible')

        assert result.returncode == 2
        assert "ERROR" in result.stderr


class TestCountCommand:
    """Tests for count CLI command."""

    def test_campana_count(self):
        result = run_cli('count', '--k', '2', '--c=1,-1', '--m=2,2', '--B', '10')

        assert result.returncode == 0
        record = json.loads(result.stdout)
        assert record["result"]["count"] == 2
        assert record["config"]["orbifold"]["k"] == 2

    def test_signed_count(self):
        result = run_cli('count', '--k', '2', '--c=1,-1', '--m=2,2', '--B', '10', '--mode', 'N')

        assert result.returncode == 0
        assert json.loads(result.stdout)["result"]["count"] == 4

    def test_diagonal_count(self):
        result = run_cli('count', '--mode', 'M', '--d=1,1,-1', '--m-tilde=2,2,2', '--B', '100')

        assert result.returncode == 0
        assert json.loads(result.stdout)["result"]["count"] == 4

    def test_budget_exceeded(self):
        result = run_cli('count', '--k', '2', '--c=1,-1', '--m=2,2', '--B', '10000',
                         '--mode', 'N', '--budget-mem', '1')

        assert result.returncode == 4
        assert "Budget exceeded" in result.stderr

    def test_no_timing_is_byte_stable(self):
        args = ('count', '--preset', 'ternary', '--B', '200', '--no-timing')
        first = run_cli(*args)
        second = run_cli(*args)

        assert first.returncode == 0
        assert "elapsed" not in first.stdout
        assert first.stdout == second.stdout

    def test_threads_do_not_change_count(self):
        args = ('count', '--preset', 'ternary', '--B', '200', '--no-timing')
        single = run_cli(*args)
        threaded = run_cli(*args, '--threads', '4')

        assert threaded.returncode == 0
        assert threaded.stdout == single.stdout

    def test_threads_must_be_positive(self):
        result = run_cli('count', '--preset', 'ternary', '--B', '10', '--threads', '0')

        assert result.returncode == 2
        assert "positive integer" in result.stderr

    def test_append_to_file(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            out = Path(tmpdir) / "counts.jsonl"
            for B in ('10', '20'):
                result = run_cli('count', '--k', '2', '--c=1,-1', '--m=2,2', '--B', B,
                                 '--out', str(out))
                assert result.returncode == 0

            lines = out.read_text().splitlines()
            assert len(lines) == 2
            assert [json.loads(line)["result"]["B"] for line in lines] == [10, 20]


class TestVarpiTableCommand:
    """Tests for varpi-table CLI command."""

    def test_csv_table(self):
        result = run_cli('varpi-table', '--m=2,2', '--R', '16')

        assert result.returncode == 0
        lines = result.stdout.strip().splitlines()
        assert lines[0] == "s,t,weight,varpi"
        assert len(lines) == 7

    def test_infinite_R_needs_cap(self):
        result = run_cli('varpi-table', '--m=2,2')

        assert result.returncode == 3
        assert "ERROR" in result.stderr


class TestIdentityCommand:
    """Tests for identity CLI command."""

    def test_identity_holds(self):
        result = run_cli('identity', '--k', '2', '--c=1,1,-2', '--m=2,2,2', '--B', '30')

        assert result.returncode == 0
        assert json.loads(result.stdout)["result"]["holds"] is True

    def test_identity_threads(self):
        args = ('identity', '--k', '2', '--c=1,1,-2', '--m=2,2,2', '--B', '30')
        single = run_cli(*args)
        threaded = run_cli(*args, '--threads', '3')

        assert threaded.returncode == 0
        assert threaded.stdout == single.stdout


class TestPredictCommand:
    """Tests for predict CLI command."""

    ARGS = ('predict', '--quadratic7', '--B', '128', '--qmax', '30',
            '--samples', '100000', '--shards', '4')

    def test_predict_is_deterministic(self):
        first = run_cli(*self.ARGS)
        second = run_cli(*self.ARGS)

        assert first.returncode == 0
        assert first.stdout == second.stdout
        record = json.loads(first.stdout)
        assert record["result"]["gamma_tilde"] == "5/2"
        assert record["config"]["truncation"]["series"]["q_max"] == 30

    def test_predict_divergent_series(self):
        result = run_cli('predict', '--d=1,-1', '--m-tilde=2,2', '--B', '100')

        assert result.returncode == 3
        assert "ERROR" in result.stderr

    def test_d_without_m_tilde(self):
        result = run_cli('predict', '--d=1,-1', '--B', '100')

        assert result.returncode == 2


class TestMainEntry:
    """Tests for the top-level parser."""

    def test_no_command_prints_help(self):
        result = run_cli()

        assert result.returncode == 0
        assert "campana-count" in result.stdout
        assert "exact counting" in result.stdout
        assert "circle method" in result.stdout
        assert "4 budget exceeded" in result.stdout

    def test_epilog_lists_every_command(self):
        text = run_cli('--help').stdout
        epilog = text[text.index("command groups:"):]

        for command in ('decompose', 'admissible', 'count', 'identity', 'varpi-table',
                        'predict', 'compare', 'constant', 'series', 'integral', 'arcs'):
            assert command in epilog

    @pytest.mark.parametrize("command", ['decompose', 'admissible', 'count', 'predict', 'compare',
                                         'constant', 'series', 'integral', 'varpi-table',
                                         'identity', 'arcs'])
    def test_subcommand_help(self, command):
        result = run_cli(command, '--help')

        assert result.returncode == 0
        assert "usage" in result.stdout
