"""End-to-end checks of the command line interface."""

import csv
import io
import json
import math

import pytest

from eisenzeros import cli
from eisenzeros.cli import RunConfig, main, parse_point


def run_cli(capsys, argv):
    rc = main(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def json_rows(text):
    return [json.loads(line) for line in text.strip().splitlines()]


def csv_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestRunConfig:
    def test_eps_bounds_enforced(self):
        with pytest.raises(ValueError, match="eps"):
            RunConfig("audit", k_values=(82,), l_values=(22,), eps=1e-20)
        with pytest.raises(ValueError, match="eps"):
            RunConfig("audit", k_values=(82,), l_values=(22,), eps=1e-3)
        RunConfig("audit", k_values=(82,), l_values=(22,), eps=1e-15)
        RunConfig("audit", k_values=(82,), l_values=(22,), eps=1e-6)

    def test_ranges_must_be_nonempty(self):
        with pytest.raises(ValueError, match="non-empty"):
            RunConfig("scan", k_values=(), l_values=(22,))
        with pytest.raises(ValueError, match="non-empty"):
            RunConfig("table", k_values=(56,), l_values=())

    def test_weights_must_be_even(self):
        with pytest.raises(ValueError, match="even"):
            RunConfig("audit", k_values=(57,), l_values=(22,))

    def test_misc_validation(self):
        with pytest.raises(ValueError, match="format"):
            RunConfig("eval", k_values=(6,), fmt="xml")
        with pytest.raises(ValueError, match="jobs"):
            RunConfig("scan", k_values=(56,), l_values=(20,), jobs=0)
        with pytest.raises(ValueError, match="oversample"):
            RunConfig("scan", k_values=(56,), l_values=(20,), oversample=0.0)


class TestParsePoint:
    def test_plain_imaginary_unit(self):
        assert parse_point("i") == 1j

    def test_general_points(self):
        assert parse_point("0.5+3i") == 0.5 + 3j
        assert parse_point("2i") == 2j
        assert parse_point("0.5+i") == 0.5 + 1j
        assert parse_point("-0.25+1.5i") == -0.25 + 1.5j
        assert parse_point("0.5+3j") == 0.5 + 3j

    def test_rejects_garbage_and_lower_half(self):
        with pytest.raises(ValueError):
            parse_point("zebra")
        with pytest.raises(ValueError):
            parse_point("0.5-3i")
        with pytest.raises(ValueError):
            parse_point("2.0")


class TestEval:
    def test_weight_six_vanishes_at_i(self, capsys):
        rc, out, _ = run_cli(capsys, ["eval", "--k", "6", "--z", "i"])
        assert rc == 0
        (row,) = json_rows(out)
        assert row["regime"] == "LatticeExact"
        assert abs(complex(row["value_re"], row["value_im"])) < 1e-11
        assert row["envelope"] < 1e-11

    def test_all_methods_agree(self, capsys):
        rc, out, _ = run_cli(
            capsys, ["eval", "--k", "20", "--z", "0.5+3i", "--method", "all"])
        assert rc == 0
        rows = json_rows(out)
        assert [r["method"] for r in rows] == ["lattice", "fourier", "theta", "all"]
        assert rows[-1]["max_pairwise_deviation"] < 1e-8

    def test_theta_envelope_reported(self, capsys):
        rc, out, _ = run_cli(
            capsys, ["eval", "--k", "200", "--z", "0.5+8i", "--method", "theta"])
        assert rc == 0
        (row,) = json_rows(out)
        assert row["regime"] == "ThetaMid"
        assert row["envelope"] == pytest.approx(10.0 * 8.0 / 200.0 ** (2.0 / 3.0))
        assert math.isfinite(row["value_re"])

    def test_csv_format_round_trips(self, capsys):
        rc, out, _ = run_cli(
            capsys, ["eval", "--k", "20", "--z", "0.5+3i", "--format", "csv"])
        assert rc == 0
        (row,) = csv_rows(out)
        rc2, out2, _ = run_cli(capsys, ["eval", "--k", "20", "--z", "0.5+3i"])
        (jrow,) = json_rows(out2)
        assert float(row["value_re"]) == jrow["value_re"]
        assert float(row["g_im"]) == jrow["g_im"]
        assert int(row["schema_version"]) == cli.SCHEMA_VERSION

    def test_rejects_bad_eps(self, capsys):
        rc, _, err = run_cli(
            capsys, ["eval", "--k", "6", "--z", "i", "--eps", "1e-20"])
        assert rc == 2
        assert "eps" in err


class TestTable:
    def test_arc_counts_match(self, capsys):
        rc, out, err = run_cli(capsys, ["table", "--which", "1"])
        assert rc == 0
        assert err == ""
        rows = {int(r["l"]): r for r in csv_rows(out)}
        assert set(rows) == {20, 22, 24}
        assert int(rows[20]["56"]) == 3

    def test_side_counts_match(self, capsys):
        rc, out, _ = run_cli(capsys, ["table", "--which", "2", "--format", "json"])
        assert rc == 0
        rows = {r["l"]: r for r in json_rows(out)}
        assert rows[24]["counts"]["84"] == 3
        assert rows[22]["counts"]["58"] == 2

    def test_arc_surplus_match(self, capsys):
        rc, out, _ = run_cli(capsys, ["table", "--which", "3"])
        assert rc == 0
        rows = {int(r["l"]): r for r in csv_rows(out)}
        assert int(rows[22]["58"]) == 1
        assert int(rows[20]["58"]) == 0

    def test_mismatch_fails_with_diff(self, capsys, monkeypatch):
        wrong = (9,) + cli.ARC_COUNT_TABLE[20][1:]
        monkeypatch.setitem(cli.ARC_COUNT_TABLE, 20, wrong)
        rc, _, err = run_cli(capsys, ["table", "--which", "1"])
        assert rc == 1
        assert "l=20 k=56: got 3, expected 9" in err


class TestScan:
    def test_side_count_stabilizes(self, capsys):
        rc, out, err = run_cli(capsys, [
            "scan", "--l-min", "22", "--l-max", "22",
            "--k-min", "58", "--k-max", "82"])
        assert rc == 0
        rows = json_rows(out)
        summary = rows[-1]
        assert summary["pairs"] == 13
        assert summary["valence_failures"] == 0
        assert summary["count_mismatches"] == 0
        assert summary["interior_reports"] == 0
        by_k = {r["k"]: r for r in rows[:-1]}
        assert by_k[58]["B"] == 2
        assert by_k[70]["B"] == 2
        assert by_k[82]["B"] == 3
        assert "0 valence failures" in err

    def test_first_arc_zero_appears_eight_past_the_diagonal(self, capsys):
        rc, out, _ = run_cli(capsys, [
            "scan", "--l-min", "40", "--l-max", "40",
            "--k-min", "48", "--k-max", "48"])
        assert rc == 0
        row = json_rows(out)[0]
        assert row["A"] == 1 and row["valence_ok"]

    def test_weight_sum_cap(self, capsys):
        rc, _, err = run_cli(capsys, [
            "scan", "--l-min", "200", "--l-max", "200",
            "--k-min", "202", "--k-max", "202"])
        assert rc == 2
        assert "cap" in err

    def test_csv_rows_parse(self, capsys):
        rc, out, _ = run_cli(capsys, [
            "scan", "--l-min", "20", "--l-max", "20",
            "--k-min", "56", "--k-max", "60", "--format", "csv", "--no-hunt"])
        assert rc == 0
        rows = csv_rows(out)
        assert len(rows) == 3
        assert all(r["valence_ok"] == "1" for r in rows)
        assert [int(r["A"]) for r in rows] == [3, 3, 3]


class TestAudit:
    def test_clean_pair(self, capsys):
        rc, out, _ = run_cli(capsys, ["audit", "--k", "82", "--l", "22"])
        assert rc == 0
        (row,) = json_rows(out)
        assert (row["A"], row["B"]) == (4, 3)
        assert row["valence_ok"] and row["findings"] == []
        assert row["interior"] == []

    def test_small_gap_pair(self, capsys):
        rc, out, _ = run_cli(capsys, ["audit", "--k", "26", "--l", "18"])
        assert rc == 0
        (row,) = json_rows(out)
        assert row["A"] + row["B"] == 2

    def test_reversed_weights_reported_in_band(self, capsys):
        rc, out, _ = run_cli(capsys, ["audit", "--k", "20", "--l", "22"])
        assert rc == 1
        (row,) = json_rows(out)
        assert "ValueError" in row["error"]
        assert "A" not in row


class TestPlotdata:
    def test_phi_monotone(self, capsys):
        rc, out, _ = run_cli(capsys, ["plotdata", "--kind", "phi", "--points", "16"])
        assert rc == 0
        rows = csv_rows(out)
        assert len(rows) == 16
        phi0_vals = [float(r["phi0"]) for r in rows]
        phi1_vals = [float(r["phi1"]) for r in rows]
        assert all(a < b for a, b in zip(phi0_vals, phi0_vals[1:]))
        assert all(a > b for a, b in zip(phi1_vals, phi1_vals[1:]))

    def test_zero_positions(self, capsys):
        rc, out, _ = run_cli(capsys, ["plotdata", "--kind", "zeros",
                                      "--k", "56", "--l", "20"])
        assert rc == 0
        rows = csv_rows(out)
        kinds = [r["kind"] for r in rows]
        assert kinds == ["arc"] * 3 + ["side"] * 2
        for r in rows:
            lo, hi, mid = float(r["lo"]), float(r["hi"]), float(r["location"])
            assert lo < mid < hi
            if r["kind"] == "arc":
                assert math.pi / 3 < mid < math.pi / 2
            else:
                assert mid > math.sqrt(3.0) / 2.0

    def test_zeros_needs_weights(self, capsys):
        rc, _, err = run_cli(capsys, ["plotdata", "--kind", "zeros"])
        assert rc == 2
        assert "--k" in err

    def test_regime_errors_ordered_below_boundary(self, capsys):
        rc, out, _ = run_cli(capsys, ["plotdata", "--kind", "regimes", "--k", "300"])
        assert rc == 0
        rows = csv_rows(out)
        boundary = 300.0 ** 0.4
        below = [r for r in rows if float(r["y"]) < boundary]
        assert len(below) >= 8
        for r in below:
            assert float(r["err_small_y"]) < float(r["err_theta_mid"])
        for r in rows:
            assert float(r["err_theta_mid"]) < float(r["bound_theta_mid"])


class TestDeterminism:
    def test_parallel_scan_is_byte_identical(self, tmp_path):
        argv = ["scan", "--l-min", "20", "--l-max", "22",
                "--k-min", "56", "--k-max", "62", "--no-hunt"]
        p1, p2 = tmp_path / "a.ndjson", tmp_path / "b.ndjson"
        assert main(argv + ["--out", str(p1)]) == 0
        assert main(argv + ["--jobs", "3", "--out", str(p2)]) == 0
        assert p1.read_bytes() == p2.read_bytes()

    def test_json_rows_are_canonical(self, capsys):
        rc, out, _ = run_cli(capsys, ["audit", "--k", "56", "--l", "20"])
        assert rc == 0
        line = out.strip().splitlines()[0]
        assert json.dumps(json.loads(line), sort_keys=True) == line

    def test_csv_matches_json_exactly(self, capsys):
        args = ["plotdata", "--kind", "zeros", "--k", "56", "--l", "20"]
        rc, out_csv, _ = run_cli(capsys, args)
        rc2, out_json, _ = run_cli(capsys, args + ["--format", "json"])
        assert rc == rc2 == 0
        crows = csv_rows(out_csv)
        jrows = json_rows(out_json)
        assert len(crows) == len(jrows)
        for c, j in zip(crows, jrows):
            assert float(c["location"]) == j["location"]
            assert float(c["lo"]) == j["lo"]
            assert float(c["hi"]) == j["hi"]
