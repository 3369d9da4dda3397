import csv
import io
import json
import subprocess
import sys

import pytest

from qglaisher import bigpoly
from qglaisher import claims as C
from qglaisher.bigpoly import IntPoly
from qglaisher.cli import main
from qglaisher.sweep import (
    ConfigError,
    SweepConfig,
    bench_csv,
    enumerate_tasks,
    run_bench,
    run_oracle_mode,
    run_sweep,
    run_task,
    strip_timing,
)


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestConfig:
    def test_defaults(self):
        cfg = SweepConfig()
        assert (cfg.p_min, cfg.p_max, cfg.m_min, cfg.m_max, cfg.i_max) == (3, 31, 1, 4, 12)
        assert cfg.s_set == (1, 2, 3, 4)
        assert len(cfg.claims) == 8

    @pytest.mark.parametrize("kw", [{"p_min": 9, "p_max": 5}, {"m_min": 3, "m_max": 2},
                                    {"workers": 0}, {"format": "xml"}, {"claims": ("NOPE",)},
                                    {"s_set": (0,)}])
    def test_invalid(self, kw):
        with pytest.raises(ConfigError):
            SweepConfig(**kw)

    def test_hypothesis_filtering(self):
        tasks = enumerate_tasks(SweepConfig(p_min=2, p_max=7, m_max=1))
        by_claim = {}
        for name, params, _ in tasks:
            by_claim.setdefault(name, set()).add(params["p"])
        assert by_claim["THEOREM1"] == {5, 7}
        assert by_claim["GLAISHER_BINOM"] == {5, 7}
        assert by_claim["ANDREWS_Q"] == {3, 5, 7}
        assert by_claim["LEMMA2"] == {3, 5, 7}


class TestSweep:
    def test_theorem1_grid(self):
        rep = run_sweep(SweepConfig(claims=("THEOREM1",), p_min=5, p_max=13, m_min=1, m_max=3))
        assert len(rep.records) == 12
        # the printed coefficient does not hold anywhere: every record is a counterexample
        assert rep.summary["fails"] == 12
        assert rep.exit_code == 1
        assert all(r.detail["fitted_coefficient"] == -r.params["m"] * (r.params["m"] + 1)
                   * (r.params["p"] ** 2 - 1) // 24 for r in rep.records)

    def test_smallest_andrews(self):
        rep = run_sweep(SweepConfig(claims=("ANDREWS_Q",), p_min=3, p_max=3, m_min=1, m_max=1))
        assert len(rep.records) == 1 and rep.records[0].holds
        assert rep.exit_code == 0

    def test_empty_range(self):
        rep = run_sweep(SweepConfig(p_min=24, p_max=28))
        assert rep.records == [] and rep.exit_code == 0 and rep.warnings

    def test_ordering(self):
        rep = run_sweep(SweepConfig(claims=("LEMMA2", "ANDREWS_Q"), p_max=7, m_max=2, i_max=2, s_set=(3, 1)))
        keys = [r.sort_key() for r in rep.records]
        assert keys == sorted(keys)
        assert rep.records[0].claim_id.value == "ANDREWS_Q"

    def test_negative_controls(self):
        cfg = SweepConfig(claims=("ANDREWS_Q", "LEMMA1", "GLAISHER_BINOM", "LEMMA2"), p_max=11, m_max=2,
                          i_max=3, negative_controls=True)
        rep = run_sweep(cfg)
        controls = [r for r in rep.records if r.control]
        assert controls and all(not r.holds for r in controls)
        assert rep.summary["controls_rejected"] == len(controls)
        assert rep.exit_code == 0

    def test_error_records_do_not_abort(self, monkeypatch):
        monkeypatch.setattr(C, "andrews_prod_numerator", lambda p, m: IntPoly([1, 0, 1]))
        rep = run_sweep(SweepConfig(claims=("ANDREWS_PROD_Q", "ANDREWS_Q"), p_max=5, m_max=1))
        errs = [r for r in rep.records if r.error]
        assert len(errs) == 2 and all(e.error.startswith("InexactDivision") for e in errs)
        assert any(r.holds for r in rep.records)
        assert rep.exit_code == 1

    def test_resource_cap(self):
        rec = run_task(("THEOREM1", {"p": 31, "m": 4}, None), degree_cap=100)
        assert rec.error.startswith("ResourceCap")


class TestReports:
    def test_json_schema(self):
        cfg = SweepConfig(claims=("THEOREM1", "LEMMA2", "LEMMA1"), p_max=5, m_max=1, i_max=1, s_set=(2,))
        d = run_sweep(cfg).to_dict()
        assert set(d) >= {"version", "config", "records", "summary"}
        recs = {r["claim"]: r for r in d["records"]}
        t1 = recs["THEOREM1"]
        assert t1["holds"] is False and all(isinstance(c, str) for c in t1["residual"])
        assert IntPoly.from_strings(t1["residual"]) == C.theorem1(5, 1).residual
        assert "residual" not in recs["LEMMA1"]
        assert recs["LEMMA2"]["m"] is None and {"i", "s"} <= set(recs["LEMMA2"])
        for r in d["records"]:
            assert {"claim", "p", "m", "holds", "lhs_degree", "max_coeff_bits", "wall_time_ms"} <= set(r)

    def test_csv(self):
        rep = run_sweep(SweepConfig(claims=("THEOREM1", "LEMMA1"), p_max=7, m_max=1))
        rows = list(csv.DictReader(io.StringIO(rep.to_csv())))
        assert len(rows) == 4
        assert "residual" not in rows[0]
        assert {r["holds"] for r in rows} == {"true", "false"}

    def test_human(self):
        text = run_sweep(SweepConfig(claims=("LEMMA1",), p_max=7, m_max=1)).to_human()
        assert "LEMMA1" in text and "0 unexpected" in text


class TestDeterminism:
    def test_repeat_and_parallel(self):
        cfg = SweepConfig(p_max=13, m_max=2, i_max=4, negative_controls=True)
        a = strip_timing(run_sweep(cfg).to_dict())
        b = strip_timing(run_sweep(cfg).to_dict())
        cfg4 = SweepConfig(p_max=13, m_max=2, i_max=4, negative_controls=True, workers=4)
        c = strip_timing(run_sweep(cfg4).to_dict())
        c["config"]["workers"] = 1
        assert json.dumps(a) == json.dumps(b) == json.dumps(c)


class TestOracleMode:
    def test_consistent(self):
        rep = run_oracle_mode(SweepConfig(p_max=13, m_max=2, i_max=5))
        assert rep.summary["inconsistencies"] == 0

    def test_lemma2_flags_match(self):
        cfg = SweepConfig(claims=("LEMMA2",), p_max=11, i_max=8)
        normal = [r.holds for r in run_sweep(cfg).records]
        oracle = run_oracle_mode(cfg)
        assert [r.holds for r in oracle.records] == normal
        assert oracle.summary["inconsistencies"] == 0

    def test_fault_injection(self, monkeypatch):
        real = bigpoly._karatsuba

        def corrupted(a, b, threshold):
            out = real(a, b, threshold)
            if len(out) > 40:
                out[len(out) // 2] += 1
            return out

        monkeypatch.setattr(bigpoly, "_karatsuba", corrupted)
        monkeypatch.setattr(bigpoly, "KARATSUBA_THRESHOLD", 1)
        rep = run_oracle_mode(SweepConfig(claims=("ANDREWS_Q",), p_min=7, p_max=11, m_max=2))
        assert rep.summary["inconsistencies"] > 0
        assert rep.exit_code == 1
        # every record the corrupted kernel broke is flagged, whether it raised or miscomputed
        assert all(r.inconsistency for r in rep.records if r.error or not r.holds)


class TestBench:
    def test_rows(self):
        rows = run_bench([(5, 1), (13, 2), (31, 3)])
        assert len(rows) == 3
        degs = [r["lhs_degree"] for r in rows]
        assert degs == sorted(degs) == [m * p * (p - 1) for p, m in [(5, 1), (13, 2), (31, 3)]]
        text = bench_csv(rows)
        assert text.splitlines()[0].startswith("p,m,lhs_degree")

    def test_empty(self):
        assert run_bench([]) == []
        assert bench_csv([]).count("\n") == 1

    @pytest.mark.slow
    def test_p97_m5(self):
        rows = run_bench([(97, 5)])
        assert rows[0]["lhs_degree"] == 5 * 97 * 96 == 46560
        assert rows[0]["q_binomial_pascal_ms"] == ""


class TestCommandLine:
    def test_verify_ok(self, capsys):
        code, out, _ = run_cli(["verify", "--claims", "ANDREWS_Q", "--p-min", "3", "--p-max", "3",
                                "--m-max", "1"], capsys)
        assert code == 0
        assert json.loads(out)["summary"]["holds"] == 1

    def test_verify_counterexample(self, capsys):
        code, out, _ = run_cli(["verify", "--claims", "THEOREM1", "--p-max", "7", "--m-max", "1"], capsys)
        assert code == 1
        assert json.loads(out)["summary"]["fails"] == 2

    @pytest.mark.parametrize("args", [["verify", "--p-min", "9", "--p-max", "5"],
                                      ["verify", "--claims", "BOGUS"],
                                      ["verify", "--workers", "0"],
                                      ["frobnicate"],
                                      ["bench", "--sizes", "5-1"]])
    def test_usage_errors(self, args, capsys):
        try:
            code = main(args)
        except SystemExit as exc:
            code = exc.code
        capsys.readouterr()
        assert code == 2

    def test_out_file_and_csv(self, tmp_path, capsys):
        out = tmp_path / "r.csv"
        code, stdout, _ = run_cli(["verify", "--claims", "LEMMA2", "--p-max", "5", "--i-max", "2",
                                   "--s", "1,3", "--format", "csv", "--out", str(out)], capsys)
        assert code == 0 and stdout == ""
        assert len(out.read_text().splitlines()) == 1 + 2 * 3 * 2

    def test_oracle_and_controls(self, capsys):
        code, out, _ = run_cli(["oracle", "--claims", "LEMMA1,THEOREM2", "--p-max", "7", "--m-max", "2",
                                "--negative-controls", "--format", "human"], capsys)
        assert code == 0 and "0 inconsistencies" in out

    def test_bench(self, capsys):
        code, out, _ = run_cli(["bench", "--sizes", "5:1,7:1"], capsys)
        assert code == 0 and len(out.strip().splitlines()) == 3

    def test_module_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "qglaisher", "verify", "--claims", "GLAISHER_BINOM",
                               "--p-max", "11", "--format", "human"], capture_output=True, text=True)
        assert proc.returncode == 0, proc.stderr
        assert "GLAISHER_BINOM" in proc.stdout
