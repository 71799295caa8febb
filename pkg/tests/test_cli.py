"""Tests for the command-line front end and the check manifest."""

import json

import pytest

from exactcurves import checks as ck
from exactcurves.cli import main


class TestChecksRegistry:
    def test_ids_unique(self):
        ids = ck.check_ids()
        assert len(ids) == len(set(ids))

    def test_unknown_id(self):
        with pytest.raises(ck.CheckError):
            ck.run_check("no-such-check")

    def test_single_check_entry_shape(self):
        e = ck.run_check("real-root-count")
        assert e["status"] == "pass"
        assert e["id"] == "real-root-count"
        assert "runtime_s" in e
        assert e["details"]["real_roots_of_defining_quartic"]["ok"]

    def test_exceptions_become_fail_entries(self):
        # a check body that raises must produce a fail, not a crash
        orig = ck._CHECKS
        try:
            def boom():
                raise RuntimeError("broken oracle")
            ck._CHECKS = orig + [("synthetic-fail", "always raises",
                                  ("synthetic",), boom)]
            e = ck.run_check("synthetic-fail")
            assert e["status"] == "fail"
            assert "RuntimeError" in e["details"]["error"]
        finally:
            ck._CHECKS = orig


class TestManifest:
    def test_tag_filtering(self):
        m = ck.run_all(tags=["fields"])
        assert [e["id"] for e in m.entries] == ["real-root-count"]
        assert m.exit_code() == 0

    def test_empty_filter_is_empty_pass(self):
        m = ck.run_all(tags=["no-such-tag"])
        assert m.entries == []
        assert m.exit_code() == 0

    def test_deep_checks_skipped_by_default(self):
        m = ck.run_all(tags=["groups"])
        by_id = {e["id"]: e for e in m.entries}
        assert by_id["derived-series-main-full"]["status"] == "skipped"
        assert by_id["derived-series-main"]["status"] == "pass"

    def test_unresolved_never_counts_as_pass(self):
        m = ck.VerificationManifest([
            {"id": "a", "status": "unresolved", "details": {}},
            {"id": "b", "status": "pass", "details": {}},
        ])
        assert m.exit_code() == 0      # unresolved is not a failure...
        assert all(e["status"] != "pass" or e["id"] == "b"
                   for e in m.entries)  # ...but it is never shown as pass

    def test_duplicate_ids_rejected(self):
        with pytest.raises(ck.CheckError):
            ck.VerificationManifest([{"id": "a", "status": "pass"},
                                     {"id": "a", "status": "pass"}])

    def test_report_determinism(self, tmp_path):
        m1 = ck.run_all(tags=["fields"])
        m2 = ck.run_all(tags=["fields"])
        d1, d2 = m1.to_doc(), m2.to_doc()
        for d in (d1, d2):          # runtimes may differ between runs
            for e in d["checks"]:
                e.pop("runtime_s", None)
        assert json.dumps(d1, sort_keys=True) == \
            json.dumps(d2, sort_keys=True)

    def test_write_report(self, tmp_path):
        m = ck.run_all(tags=["fields"])
        path = tmp_path / "report.json"
        m.write_report(str(path))
        doc = json.loads(path.read_text())
        assert doc["checks"][0]["id"] == "real-root-count"

    def test_render_summary_line(self):
        m = ck.run_all(tags=["fields"])
        out = m.render()
        assert "1 checks" in out or "1 pass" in out

    def test_parallel_matches_sequential(self):
        seq = ck.run_all(tags=["fields"], parallel=False)
        par = ck.run_all(tags=["fields"], parallel=True)
        assert [(e["id"], e["status"]) for e in seq.entries] == \
            [(e["id"], e["status"]) for e in par.entries]


class TestCli:
    def test_field_sturm(self, capsys):
        assert main(["field", "sturm", "--coeffs=-2,-2,1,-2,1"]) == 0
        assert "real roots: 2" in capsys.readouterr().out

    def test_field_roots(self, capsys):
        assert main(["field", "roots", "--coeffs=-6,1,1"]) == 0
        out = capsys.readouterr().out
        assert "2" in out and "-3" in out

    def test_poly_resultant(self, capsys):
        assert main(["poly", "resultant", "--vars", "x,y", "--var", "x",
                     "x^2+y^2-1", "x-y"]) == 0
        assert "2*y^2 + -1" in capsys.readouterr().out

    def test_poly_factor(self, capsys):
        assert main(["poly", "factor", "--vars", "t", "--var", "t",
                     "--degree-cap", "4", "t^4-5*t^2+6"]) == 0
        out = capsys.readouterr().out
        assert "t^2 + -2" in out and "t^2 + -3" in out

    def test_group_order(self, capsys):
        assert main(["group", "order", "cremona24"]) == 0
        assert capsys.readouterr().out.strip() == "24"

    def test_group_abelianization(self, capsys):
        assert main(["group", "abelianization", "g_symp"]) == 0
        assert capsys.readouterr().out.strip() == "Z/8"

    def test_group_derived_series(self, capsys):
        assert main(["group", "derived-series", "g2", "--depth", "4"]) == 0
        out = capsys.readouterr().out
        assert "level 4: Z^3 + Z/2" in out
        assert "status: complete" in out

    def test_group_homs(self, capsys):
        assert main(["group", "homs", "g2", "--target", "S4"]) == 0
        capsys.readouterr()

    def test_group_show_and_list(self, capsys):
        assert main(["group", "list"]) == 0
        assert "g_symp" in capsys.readouterr().out
        assert main(["group", "show", "g0"]) == 0
        assert "c1*c2*c1" in capsys.readouterr().out

    def test_curve_list_and_certify(self, capsys):
        assert main(["curve", "list"]) == 0
        assert "deltoid_symmetric" in capsys.readouterr().out
        assert main(["curve", "certify", "deltoid_affine"]) == 0
        assert "overall: ok" in capsys.readouterr().out

    def test_curve_pullback(self, capsys):
        assert main(["curve", "pullback", "--vars", "u,v", "-n", "2",
                     "--names", "u", "u^2-v^3"]) == 0
        assert "u^4" in capsys.readouterr().out

    def test_solve_run(self, tmp_path, capsys):
        doc = {"vars": ["x", "y"],
               "polys": ["x^2+y^2-13", "x-y-1"]}
        path = tmp_path / "system.json"
        path.write_text(json.dumps(doc))
        report = tmp_path / "out.json"
        assert main(["solve", "run", str(path), "--order", "y",
                     "--report", str(report)]) == 0
        out = capsys.readouterr().out
        assert "x=3, y=2" in out
        saved = json.loads(report.read_text())
        assert saved["status"] == "complete"
        assert len(saved["solutions"]) == 2

    def test_solve_run_with_filter(self, tmp_path, capsys):
        # x*y = 0, x - y = 0: filtering the x factor removes the origin
        doc = {"vars": ["x", "y"],
               "polys": ["x*y", "x-y"],
               "filters": [{"type": "variable_vanishing", "var": "y"}]}
        path = tmp_path / "system.json"
        path.write_text(json.dumps(doc))
        main(["solve", "run", str(path), "--order", "x"])
        capsys.readouterr()

    def test_check_command(self, capsys, tmp_path):
        report = tmp_path / "check.json"
        assert main(["check", "real-root-count",
                     "--report", str(report)]) == 0
        assert "PASS" in capsys.readouterr().out
        assert json.loads(report.read_text())["status"] == "pass"

    def test_verify_tag_filter(self, capsys, tmp_path):
        report = tmp_path / "verify.json"
        assert main(["verify", "--tag", "fields",
                     "--report", str(report)]) == 0
        assert "real-root-count" in capsys.readouterr().out
        doc = json.loads(report.read_text())
        assert doc["checks"][0]["status"] == "pass"

    def test_report_flag_writes_json(self, tmp_path, capsys):
        report = tmp_path / "r.json"
        main(["group", "abelianization", "g2", "--report", str(report)])
        capsys.readouterr()
        assert json.loads(report.read_text())["abelianization"] == "Z/8"
