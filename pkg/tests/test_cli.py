"""CLI surface: formats, config file, exit codes, reproducibility."""

import json
import math

from stablemc import channels, stable
from stablemc.cli import main


def run(args):
    return main([str(a) for a in args])


class TestFigures:
    def test_emits_tables_and_plots(self, tmp_path):
        rc = run(["--command", "figures", "--out", tmp_path, "--grid-points", "201"])
        assert rc == 0
        for stem in ("fig1_pdf", "fig2_cdf", "fig3_tails"):
            assert (tmp_path / f"{stem}.csv").is_file()
            assert (tmp_path / f"{stem}.png").is_file()

    def test_no_plots(self, tmp_path):
        rc = run(["--command", "figures", "--out", tmp_path, "--grid-points", "51",
                  "--no-plots"])
        assert rc == 0
        assert not list(tmp_path.glob("*.png"))

    def test_requires_out(self, capsys):
        assert run(["--command", "figures"]) == 2

    def test_pdf_table_values(self, tmp_path):
        run(["--command", "figures", "--out", tmp_path, "--grid-points", "201"])
        rows = (tmp_path / "fig1_pdf.csv").read_text().splitlines()
        header = rows[0].split(",")
        assert header[0] == "x"
        assert "pdf_beta_0" in header and "pdf_gaussian" in header
        mid = rows[1 + 100].split(",")  # x = 0 row
        assert float(mid[0]) == 0.0
        assert abs(float(mid[header.index("pdf_beta_0")]) - 2.0 / math.pi) < 1e-7

    def test_fig3_row_at_100(self, tmp_path):
        # default log grid hits x = 100 exactly; approx column for beta=1
        run(["--command", "figures", "--out", tmp_path, "--no-plots"])
        lines = (tmp_path / "fig3_tails.csv").read_text().splitlines()
        header = lines[0].split(",")
        idx = header.index("tail_approx_beta_1")
        row = next(ln for ln in lines[1:] if float(ln.split(",")[0]) == 100.0)
        assert abs(float(row.split(",")[idx]) - 0.0797885) < 1e-7

    def test_json_format(self, tmp_path):
        rc = run(["--command", "figures", "--out", tmp_path, "--grid-points", "21",
                  "--format", "json", "--no-plots"])
        assert rc == 0
        doc = json.loads((tmp_path / "fig1_pdf.json").read_text())
        assert doc["metadata"]["tool"] == "stablemc"
        assert doc["metadata"]["seed"] == 42
        assert doc["columns"][0] == "x"
        assert len(doc["rows"]) == 21


class TestByteDeterminism:
    def test_figures_two_runs_identical(self, tmp_path):
        a, b, c = tmp_path / "a", tmp_path / "b", tmp_path / "c"
        run(["--command", "figures", "--out", a, "--grid-points", "101"])
        run(["--command", "figures", "--out", b, "--grid-points", "101"])
        run(["--command", "figures", "--out", c, "--grid-points", "101",
             "--workers", "4"])
        for f in sorted(p.name for p in a.iterdir()):
            ba = (a / f).read_bytes()
            assert ba == (b / f).read_bytes(), f
            assert ba == (c / f).read_bytes(), f

    def test_validate_two_runs_identical(self, tmp_path):
        r1, r2, r3 = (tmp_path / n for n in ("r1.json", "r2.json", "r3.json"))
        assert run(["--command", "validate", "--n", "20000", "--out", r1]) == 0
        assert run(["--command", "validate", "--n", "20000", "--out", r2]) == 0
        assert run(["--command", "validate", "--n", "20000", "--out", r3,
                    "--workers", "4"]) == 0
        assert r1.read_bytes() == r2.read_bytes() == r3.read_bytes()

    def test_sample_seed_default_documented_fixed(self, tmp_path):
        o1, o2 = tmp_path / "s1.csv", tmp_path / "s2.csv"
        run(["--command", "sample", "--channel-kind", "A", "--d", 1, "--D", 0.5,
             "--n", 2000, "--out", o1, "--no-plots"])
        run(["--command", "sample", "--channel-kind", "A", "--d", 1, "--D", 0.5,
             "--n", 2000, "--out", o2, "--no-plots"])
        assert o1.read_bytes() == o2.read_bytes()
        o3 = tmp_path / "s3.csv"
        run(["--command", "sample", "--channel-kind", "A", "--d", 1, "--D", 0.5,
             "--n", 2000, "--seed", 7, "--out", o3, "--no-plots"])
        assert o1.read_bytes() != o3.read_bytes()


class TestCsvContract:
    def test_full_precision_header_newline(self, tmp_path):
        out = tmp_path / "t.csv"
        run(["--command", "cdf", "--beta", 0.5, "--grid-min", -2, "--grid-max", 2,
             "--grid-points", 5, "--out", out, "--no-plots"])
        text = out.read_text()
        assert text.endswith("\n")
        lines = text.splitlines()
        assert lines[0].startswith("x,")
        # 17 significant digits survive a round trip
        v = lines[2].split(",")[1]
        assert float(v) == float(repr(float(v)))
        assert len(lines) == 6


class TestSample:
    def test_histogram_plot_written(self, tmp_path):
        out = tmp_path / "s.csv"
        rc = run(["--command", "sample", "--channel-kind", "C", "--d", 1,
                  "--Da", 4, "--Db", 1, "--n", 5000, "--out", out])
        assert rc == 0
        assert out.with_suffix(".png").is_file()
        lines = out.read_text().splitlines()
        assert lines[0] == "value_seconds"
        assert len(lines) == 5001

    def test_requires_channel(self):
        assert run(["--command", "sample", "--n", 100]) == 2

    def test_scale3d_flag(self, tmp_path, capsys):
        rc = run(["--command", "sample", "--channel-kind", "A", "--d", 1,
                  "--D", 0.5, "--scale3d", 2.0, "--n", 100,
                  "--out", tmp_path / "x.csv", "--no-plots"])
        assert rc == 0
        assert "c=2" in capsys.readouterr().out


class TestChannelQuery:
    def test_kind_c_report(self, tmp_path, capsys):
        rc = run(["--command", "pdf", "--channel-kind", "C", "--d", 1,
                  "--Da", 4, "--Db", 1, "--grid-points", 11,
                  "--out", tmp_path / "c.csv", "--no-plots"])
        assert rc == 0
        msg = capsys.readouterr().out
        assert "c=1.125" in msg and "beta=0.333333" in msg

    def test_kind_a_pdf_value(self, tmp_path):
        out = tmp_path / "a.csv"
        run(["--command", "pdf", "--channel-kind", "A", "--d", 1, "--D", 0.5,
             "--grid-min", 1.0, "--grid-max", 2.0, "--grid-points", 2,
             "--out", out, "--no-plots"])
        rows = out.read_text().splitlines()
        t, val = (float(v) for v in rows[1].split(","))
        assert t == 1.0
        assert abs(val - 0.2419707245191434) < 1e-12

    def test_kind_b_cf_modulus(self):
        model = channels.noise_model(channels.ChannelConfig(kind="B", d=1.0, D=2.0))
        from stablemc import cf_stable
        assert abs(abs(cf_stable(1.0, model.params)) - math.exp(-1.0)) < 1e-14


class TestConfigFile:
    def test_round_trip_and_override(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text(
            "command = pdf\nchannel-kind = A\nd = 1.0\nD = 0.5\n"
            "grid-points = 11\nno-plots = true\n# comment\n"
            f"out = {tmp_path / 'from_file.csv'}\n"
        )
        assert run(["--config", cfg]) == 0
        assert (tmp_path / "from_file.csv").is_file()
        # explicit flag overrides the file
        assert run(["--config", cfg, "--out", tmp_path / "flag.csv"]) == 0
        assert (tmp_path / "flag.csv").is_file()

    def test_beta_list(self, tmp_path):
        cfg = tmp_path / "b.cfg"
        out = tmp_path / "b.csv"
        cfg.write_text(f"command = pdf\nbeta = 0,0.25\ngrid-points = 3\nout = {out}\nno-plots = 1\n")
        assert run(["--config", cfg]) == 0
        header = out.read_text().splitlines()[0]
        assert "pdf_beta_0" in header and "pdf_beta_0.25" in header

    def test_unknown_key(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("frobnicate = 1\n")
        assert run(["--config", cfg, "--command", "pdf"]) == 2

    def test_missing_file(self):
        assert run(["--config", "/nonexistent.cfg", "--command", "pdf"]) == 2


class TestExitCodes:
    def test_usage_errors(self):
        assert run([]) == 2  # no command
        assert run(["--command", "pdf", "--grid-min", 5, "--grid-max", 1]) == 2
        assert run(["--command", "pdf", "--grid-points", 1]) == 2
        assert run(["--command", "pdf", "--beta", 3.0]) == 2
        assert run(["--command", "nonsense"]) == 2

    def test_validate_ok_and_report(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        rc = run(["--command", "validate", "--n", "20000", "--out", out])
        assert rc == 0
        report = json.loads(out.read_text())
        assert report["passed"] is True
        assert len(report["suites"]) >= 6
        suites_seen = {c["suite"] for c in report["checks"]}
        assert suites_seen == set(report["suites"])
        for c in report["checks"]:
            assert set(c) == {"suite", "check", "measured", "tolerance", "passed"}

    def test_numeric_nonconvergence_exit_code(self, tmp_path, monkeypatch):
        def boom(x, params):
            raise stable.ConvergenceError("synthetic quadrature breakdown")

        monkeypatch.setattr(stable, "cdf_grid", lambda xs, p: boom(xs, p))
        rc = run(["--command", "cdf", "--channel-kind", "A", "--d", 1, "--D", 0.5,
                  "--grid-points", 5, "--out", tmp_path / "x.csv", "--no-plots"])
        assert rc == 3

    def test_validate_detects_injected_fault(self, tmp_path, monkeypatch):
        # perturb the kind-B scale by 1%: the theorem-as-CF-identity and the
        # KS suites must both notice, and the command must exit nonzero
        real = channels.noise_model_b

        def broken(cfg):
            m = real(cfg)
            p = m.params
            return channels.ChannelNoiseModel(
                params=type(p)(p.mu, 1.01 * p.c, p.alpha, p.beta),
                symmetric=m.symmetric, support=m.support)

        monkeypatch.setattr(channels, "noise_model_b", broken)
        rc = run(["--command", "validate", "--n", "20000",
                  "--out", tmp_path / "bad.json"])
        assert rc == 1
        report = json.loads((tmp_path / "bad.json").read_text())
        assert not report["passed"]
