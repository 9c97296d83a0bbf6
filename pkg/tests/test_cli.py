"""Command-line interface and the sweep / verify drivers."""

import math

import numpy as np
import pytest

import embound as eb
from embound import cli
from tests.conftest import OMEGA_VALUE

FAST = ["--grid", "24", "--restarts", "3"]


def run(capsys, argv):
    code = cli.main(argv)
    return code, capsys.readouterr().out


class TestCompute:
    def test_bell_emb(self, capsys):
        code, out = run(capsys, ["compute", "--named", "Bell", "--measure", "emb"])
        assert code == 0
        assert out.startswith("emb = 1")

    def test_omega_emb(self, capsys):
        code, out = run(capsys, ["compute", "--named", "Omega", "--measure", "emb"])
        assert code == 0
        value = float(out.splitlines()[0].split("=")[1])
        assert value == pytest.approx(OMEGA_VALUE, abs=1e-4)

    def test_ghz_ebi(self, capsys):
        code, out = run(capsys, ["compute", "--named", "GHZ", "--measure", "ebi"])
        assert code == 0
        assert float(out.split("=")[1]) == pytest.approx(1.0, abs=1e-10)

    def test_tangle_needs_only_alpha(self, capsys):
        code, out = run(
            capsys, ["compute", "--measure", "tangle-ghzw", "--alpha", "0.0"]
        )
        assert code == 0
        assert float(out.split("=")[1]) == 1.0

    def test_sandwich_on_omega(self, capsys):
        code, out = run(
            capsys, ["compute", "--named", "Omega", "--measure", "sandwich"] + FAST
        )
        assert code == 0
        lines = dict(
            line.rsplit(" = ", 1) for line in out.strip().splitlines() if " = " in line
        )
        assert float(lines["sandwich lower"]) == pytest.approx(OMEGA_VALUE, abs=1e-4)
        assert lines["sandwich exact"] != "none"

    def test_standard_form_via_q_flag(self, capsys):
        q = 1.0 / math.sqrt(5.0)
        spec = ",".join(str(q) for _ in range(5))
        code, out = run(capsys, ["compute", "--q", spec, "--measure", "ebi"])
        assert code == 0
        assert float(out.split("=")[1]) == pytest.approx(OMEGA_VALUE, abs=1e-8)

    def test_egeom_falls_back_for_asymmetric_states(self, tmp_path, capsys):
        rng = np.random.default_rng(4)
        path = tmp_path / "state.json"
        path.write_text(eb.to_json(eb.random_pure_state((2, 2, 2), rng)))
        code, out = run(
            capsys, ["compute", "--state", str(path), "--measure", "egeom"]
        )
        assert code == 0
        assert out.startswith("egeom = ")

    def test_schmidt_measure(self, capsys):
        code, out = run(
            capsys,
            ["compute", "--named", "GHZ", "--measure", "schmidt", "--cut", "0,1"],
        )
        assert code == 0
        assert "schmidt rank = 2" in out


class TestStateResolution:
    def test_exactly_one_source_required(self):
        with pytest.raises(SystemExit):
            cli.main(["compute", "--named", "GHZ", "--q", "1,0,0,0,0", "--measure", "emb"])
        with pytest.raises(SystemExit):
            cli.main(["compute", "--measure", "emb"])

    def test_ghz_w_requires_alpha(self):
        with pytest.raises(SystemExit, match="alpha"):
            cli.main(["compute", "--named", "GHZ-W", "--measure", "ebi"])

    def test_tripartite_measures_reject_bell(self):
        with pytest.raises(SystemExit, match="three-qubit"):
            cli.main(["compute", "--named", "Bell", "--measure", "ehmin"])


class TestSweep:
    def test_rows_and_endpoints(self):
        rows = cli.sweep_rows(5, eb.OptimizerConfig(grid_resolution=24, restart_count=3))
        assert [r.x for r in rows] == pytest.approx([-1.0, -0.5, 0.0, 0.5, 1.0])
        middle = rows[2]  # x = 0 is the maximally entangled endpoint of the family
        for value in (middle.emb, middle.egeom, middle.ehmin, middle.ebi, middle.tangle):
            assert value == pytest.approx(1.0, abs=1e-4)
        assert rows[4].tangle == 0.0

    def test_row_check_flags_violations(self):
        bad = cli.SweepRow(x=0.0, emb=0.5, egeom=0.9, ehmin=0.2, ebi=0.9, tangle=0.0)
        problems = bad.check()
        assert len(problems) == 3

    def test_rejects_single_point(self):
        with pytest.raises(ValueError):
            cli.sweep_rows(1)

    def test_fraction_domain(self):
        with pytest.raises(ValueError):
            cli.ghz_w_from_fraction(1.5)

    def test_csv_output(self, tmp_path, capsys):
        out_path = tmp_path / "sweep.csv"
        code, _ = run(
            capsys, ["sweep", "--points", "3", "--out", str(out_path)] + FAST
        )
        assert code == 0
        lines = out_path.read_text().strip().splitlines()
        assert lines[0] == "x,emb,egeom,ehmin,ebi,tangle"
        assert len(lines) == 4


class TestVerify:
    def test_product_state_passes_trivially(self, tmp_path, capsys):
        amps = np.zeros(8)
        amps[0] = 1.0
        path = tmp_path / "product.json"
        path.write_text(eb.to_json(eb.StateTensor((2, 2, 2), amps.astype(complex))))
        code, out = run(capsys, ["verify", "--state", str(path)] + FAST)
        assert code == 0
        assert "1/1 states passed" in out

    def test_omega_reported_tight(self, tmp_path, capsys):
        path = tmp_path / "omega.json"
        path.write_text(eb.to_json(eb.named_state("Omega")))
        code, out = run(capsys, ["verify", "--state", str(path)])
        assert code == 0
        assert "tight" in out

    def test_random_trials(self, capsys):
        code, out = run(capsys, ["verify", "--trials", "2", "--seed", "7"])
        assert code == 0
        assert "2/2 states passed" in out

    def test_verify_state_values_consistent(self, ghz):
        outcome = cli.verify_state(ghz)
        assert outcome.passed
        assert outcome.tight
        assert outcome.values["emb"] == pytest.approx(1.0, abs=1e-5)


class TestSchmidtCommand:
    def test_bell_default_cut(self, capsys):
        code, out = run(capsys, ["schmidt", "--named", "Bell"])
        assert code == 0
        assert "schmidt rank = 2" in out
        assert "entanglement = 1" in out

    def test_cut_parsing(self, capsys):
        code, out = run(capsys, ["schmidt", "--named", "Omega", "--cut", "0,1"])
        assert code == 0
        first = float(out.splitlines()[0].split("=")[1].split(",")[0])
        assert first == pytest.approx(0.5 * (1.0 + 1.0 / math.sqrt(5.0)), abs=1e-10)
