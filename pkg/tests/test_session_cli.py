"""Session grammar and the command-line surface."""

import json

import pytest

from fsing import ParseError, PurityError, parse_session_text
from fsing.cli import main

SEGRE = """\
prime 2
ring x y u v
subring xu yv
poly f = x*u + y*v
"""

PLAIN = """\
prime 3
ring x y
poly f = x^2 + y^3
ideal a = x, y
set e_max 2
"""


class TestSessionParsing:
    def test_segre_example(self):
        s = parse_session_text(SEGRE)
        assert s.prime == 2
        assert s.ring.variables == ("x", "y", "u", "v")
        assert s.embedding is not None and s.embedding.verified
        assert str(s.lookup_poly("f")) == "x*u + y*v"
        assert s.e_max == 3

    def test_auto_m_uses_subring_generators(self):
        s = parse_session_text(SEGRE)
        assert s.auto_m
        assert [str(g) for g in s.lookup_ideal("m")] == ["x*u", "y*v"]

    def test_auto_m_falls_back_to_variables(self):
        s = parse_session_text(PLAIN)
        assert s.auto_m
        assert [str(g) for g in s.lookup_ideal("m")] == ["x", "y"]

    def test_declared_m_wins(self):
        s = parse_session_text(PLAIN + "ideal m = x\n")
        assert not s.auto_m
        assert [str(g) for g in s.lookup_ideal("m")] == ["x"]

    def test_settings_and_limit_overrides(self):
        s = parse_session_text(PLAIN + "set max_q 32\n")
        assert s.e_max == 2
        assert s.settings["max_q"] == 32
        assert s.limits.max_q == 32

    def test_exponent_row_subring(self):
        s = parse_session_text("prime 3\nring x y\nsubring [2,0] [1,1] [0,2]\n")
        assert s.embedding.semigroup.gens == ((2, 0), (1, 1), (0, 2))

    def test_comments_and_blank_lines(self):
        s = parse_session_text("# header\n\nprime 5  # inline\nring x\n")
        assert s.prime == 5

    def test_poly_name_lookup_through_ideals(self):
        s = parse_session_text(PLAIN)
        assert [str(g) for g in s.lookup_ideal("f")] == ["y^3 + x^2"]
        with pytest.raises(ParseError):
            s.lookup_poly("a")


class TestSessionErrors:
    @pytest.mark.parametrize("text,fragment", [
        ("prime 4\nring x\n", "4 is not prime (line 1)"),
        ("ring x\n", "preceding `prime`"),
        ("prime 2\npoly f = x\n", "preceding `ring`"),
        ("prime 2\nring x\npoly f = x + w\n", "unknown variable"),
        ("prime 2\nring x\nset bogus 1\n", "bogus"),
        ("prime 2\nring x\npoly f = x\npoly f = x^2\n", "already defined"),
    ])
    def test_diagnostics(self, text, fragment):
        with pytest.raises(ParseError) as exc:
            parse_session_text(text)
        assert fragment in str(exc.value)

    def test_line_numbers_skip_comments(self):
        with pytest.raises(ParseError) as exc:
            parse_session_text("# one\nprime 2\nring x\npoly f = ^\n")
        assert "(line 4)" in str(exc.value)

    def test_impure_subring_reports_witness(self):
        with pytest.raises(PurityError) as exc:
            parse_session_text("prime 2\nring x y\nsubring xx xxx\n")
        assert exc.value.witness == (1, 0)
        assert "line 3" in str(exc.value)

    def test_missing_ring_at_end(self):
        with pytest.raises(ParseError):
            parse_session_text("prime 2\n")


@pytest.fixture
def segre_session(tmp_path):
    path = tmp_path / "segre.fs"
    path.write_text(SEGRE)
    return str(path)


@pytest.fixture
def plain_session(tmp_path):
    path = tmp_path / "plain.fs"
    path.write_text(PLAIN)
    return str(path)


def run_json(capsys, argv):
    code = main(argv)
    data = json.loads(capsys.readouterr().out)
    return code, data


class TestCli:
    def test_nu_on_summand(self, capsys, segre_session):
        code, data = run_json(capsys, [
            "--session", segre_session, "nu", "--ideal", "f", "--wrt", "m",
            "--e", "2",
        ])
        assert code == 0
        assert data["result"] == {"value": 3, "ratio": "3/4"}
        assert data["certificates"]["mode"] == "R"
        assert data["certificates"]["purity_verified"] is True

    def test_envelope_shape_and_determinism(self, capsys, segre_session):
        argv = ["--session", segre_session, "nu", "--ideal", "f",
                "--wrt", "m", "--e", "1"]
        code = main(argv)
        first = capsys.readouterr().out
        assert code == 0
        assert main(argv) == 0
        assert capsys.readouterr().out == first
        data = json.loads(first)
        assert set(data) == {"command", "inputs", "result", "certificates",
                             "timings"}
        assert data["timings"] is None

    def test_global_flags_after_subcommand(self, capsys, plain_session):
        code, data = run_json(capsys, [
            "nu", "--session", plain_session, "--ideal", "f", "--wrt", "a",
            "--e", "1",
        ])
        assert code == 0
        assert data["result"]["value"] == 1

    def test_timings_flag(self, capsys, plain_session):
        code, data = run_json(capsys, [
            "--session", plain_session, "--timings", "fpt", "--f", "f",
            "--wrt", "a", "--e", "2",
        ])
        assert code == 0
        assert data["timings"]["total_s"] >= 0

    def test_text_format(self, capsys, plain_session):
        code = main(["--session", plain_session, "--format", "text",
                     "nu", "--ideal", "f", "--wrt", "a", "--e", "1"])
        out = capsys.readouterr().out
        assert code == 0
        assert "value: 1" in out
        assert "mode: S" in out

    def test_jumps_with_refinement(self, capsys, tmp_path):
        path = tmp_path / "x2.fs"
        path.write_text("prime 3\nring x\npoly f = x^2\n")
        code, data = run_json(capsys, [
            "--session", str(path), "jumps", "--f", "f", "--e", "1",
            "--refine",
        ])
        assert code == 0
        assert data["result"]["candidates"] == ["2/3", "1"]
        refined = data["result"]["refinement"]
        assert refined["level"] == 2
        assert refined["candidates"] == ["5/9", "1"]
        windows = {w["lambda"]: w["refined"] for w in refined["windows"]}
        assert windows == {"2/3": ["5/9"], "1": ["1"]}

    def test_ambient_flag_switches_ring(self, capsys, segre_session):
        code, data = run_json(capsys, [
            "--session", segre_session, "--ambient", "cartier", "--ideal", "f",
            "--e", "1",
        ])
        assert code == 0
        assert data["certificates"].get("mode", "S") == "S"

    def test_bs_check_failure_exit(self, capsys, tmp_path):
        path = tmp_path / "p5.fs"
        path.write_text("prime 5\nring x\npoly f = x\n")
        assert main(["--session", str(path), "bs-check", "--b", "s + 3",
                     "--f", "f", "--wrt", "m", "--e", "1..2"]) == 1

    def test_bs_check_catalog_pass(self, capsys, tmp_path):
        path = tmp_path / "p5.fs"
        path.write_text("prime 5\nring x\npoly f = x\n")
        code, data = run_json(capsys, [
            "--session", str(path), "bs-check", "--b", "variable",
            "--f", "f", "--wrt", "m", "--e", "1..2",
        ])
        assert code == 0
        assert data["result"]["verdict"] == "pass"

    def test_validation_exit_on_bad_session(self, tmp_path, capsys):
        path = tmp_path / "bad.fs"
        path.write_text("prime 4\nring x\n")
        assert main(["--session", str(path), "nu", "--ideal", "f",
                     "--wrt", "m", "--e", "1"]) == 2
        assert "not prime" in capsys.readouterr().err

    def test_resource_exit_on_tight_budget(self, tmp_path, capsys):
        path = tmp_path / "tiny.fs"
        path.write_text("prime 3\nring x\npoly f = x\nset max_q 3\n")
        assert main(["--session", str(path), "nu", "--ideal", "f",
                     "--wrt", "m", "--e", "2"]) == 3

    def test_inconclusive_exit_on_unverified_cyclicity(self, tmp_path, capsys):
        path = tmp_path / "cusp.fs"
        path.write_text("prime 2\nring x y\npoly f = x^2 + y^3\n")
        assert main(["--session", str(path), "cyclic", "--f", "f",
                     "--emax", "1"]) == 4

    def test_missing_session_is_validation_error(self, capsys):
        assert main(["nu", "--ideal", "f", "--wrt", "m", "--e", "1"]) == 2

    def test_selftest_subset(self, capsys):
        code, data = run_json(capsys, ["selftest", "--criteria", "7"])
        assert code == 0
        assert data["result"]["passed"] is True
        row = data["result"]["criteria"][0]
        assert row["number"] == 7 and row["passed"] is True
