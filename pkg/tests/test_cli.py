"""Command-line behavior: dispatch, formats, exit codes, determinism."""

import io

import pytest

from hermsig.cli import RunConfig, main, run
from hermsig.documents import load_hermitian, load_quadratic, read_document
from hermsig.errors import ValidationError


def _main(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestExamples:
    def test_classify_quat_x(self, capsys):
        code, out, _ = _main(capsys, "classify", "--algebra", "sample:quat-x.alg")
        assert code == 0
        assert out.splitlines()[-1] == "Nil = H(x)"
        assert "symplectic / quaternionic (divisor 2)" in out
        assert "symplectic / real-split (nil)" in out

    def test_hsign_at_right_cut(self, capsys):
        code, out, _ = _main(
            capsys,
            "hsign",
            "--algebra", "sample:m2.alg",
            "--form", "sample:one.hf",
            "--eta", "sample:one.hf",
            "--at", "0+",
        )
        assert code == 0
        assert out == "2\n"

    def test_signature_total_tsv(self, capsys):
        code, out, _ = _main(
            capsys, "signature", "--form", "sample:xq.qf", "--total",
            "--format", "tsv",
        )
        assert code == 0
        rows = [line.split("\t") for line in out.splitlines()]
        assert rows[0] == ["cell-kind", "location", "value"]
        assert ["interval", "(-inf,0)", "0"] in rows
        assert ["point", "0", "1"] in rows
        assert ["interval", "(0,+inf)", "2"] in rows

    def test_classify_at_point(self, capsys):
        code, out, _ = _main(
            capsys, "classify", "--algebra", "sample:quat-x.alg", "--at", "-1",
        )
        assert code == 0
        assert "quaternionic" in out and "divisor 2" in out
        assert "trace-signature" in out


class TestExitCodes:
    def test_parse_error_is_3(self, capsys, tmp_path):
        bad = tmp_path / "bad.alg"
        bad.write_text("ring Q[x]\nrank 1\nfnord\n")
        code, _, err = _main(capsys, "classify", "--algebra", str(bad))
        assert code == 3
        assert "line 3" in err

    def test_inadmissible_point_is_2(self, capsys):
        code, _, err = _main(
            capsys, "classify", "--algebra", "sample:quat-x.alg", "--at", "0",
        )
        assert code == 2
        assert "no such ordering" in err

    def test_budget_is_4(self, capsys, tmp_path):
        code, _, err = _main(
            capsys,
            "reference",
            "--algebra", "sample:m2.alg",
            "--budget", "0",
            "--out", str(tmp_path / "r.hf"),
        )
        assert code == 4
        assert "uncovered" in err

    def test_uncertified_eta_is_2(self, capsys):
        # x.hf pairs to zero on half the line, so it is no reference
        code, _, err = _main(
            capsys,
            "hsign",
            "--algebra", "sample:m2.alg",
            "--form", "sample:one.hf",
            "--eta", "sample:x.hf",
            "--at", "0+",
        )
        assert code == 2
        assert "nil locus" in err

    def test_missing_mode_is_2(self, capsys):
        code, _, err = _main(capsys, "signature", "--form", "sample:xq.qf")
        assert code == 2
        assert "--at or --total" in err

    def test_bad_ordering_expression_is_3(self, capsys):
        code, _, _ = _main(
            capsys, "classify", "--algebra", "sample:quat-x.alg", "--at", "0++",
        )
        assert code == 3


class TestArtifacts:
    def test_reference_round_trip(self, capsys, tmp_path):
        out_path = tmp_path / "ref.hf"
        code, out, _ = _main(
            capsys, "reference", "--algebra", "sample:m2.alg", "--out", str(out_path),
        )
        assert code == 0
        assert "constant 2" in out
        from hermsig.documents import load_algebra

        a = load_algebra(read_document("sample:m2.alg"))
        h = load_hermitian(out_path.read_text(), a)
        assert h.rank == 1

    def test_star_round_trip(self, capsys, tmp_path):
        out_path = tmp_path / "st.qf"
        code, out, _ = _main(
            capsys,
            "star",
            "--algebra", "sample:m2.alg",
            "--form1", "sample:one.hf",
            "--form2", "sample:x.hf",
            "--out", str(out_path),
        )
        assert code == 0
        q = load_quadratic(out_path.read_text())
        assert q.dim == 4
        from hermsig.polynomials import Polynomial

        x = Polynomial.x()
        assert q.diagonal_entries()[0].num == x

    def test_demo_output(self, capsys):
        code, out, _ = _main(
            capsys, "demo-discontinuity", "--algebra", "sample:m2.alg",
        )
        assert code == 0
        assert "continuity fails at: 0" in out
        assert "constant absolute signature: 4" in out

    def test_plot_written_and_deterministic(self, capsys, tmp_path):
        p1, p2 = tmp_path / "a.svg", tmp_path / "b.svg"
        for p in (p1, p2):
            code, _, _ = _main(
                capsys,
                "signature", "--form", "sample:xq.qf", "--total",
                "--plot", str(p),
            )
            assert code == 0
        assert p1.read_bytes() == p2.read_bytes()
        text = p1.read_text()
        # open markers for the cut values, one filled marker for the point
        assert text.count('fill="#ffffff"') >= 2
        assert '<circle' in text and '</svg>' in text

    def test_stdout_deterministic(self, capsys):
        outs = set()
        for _ in range(2):
            _, out, _ = _main(
                capsys, "classify", "--algebra", "sample:quat-x.alg",
            )
            outs.add(out)
        assert len(outs) == 1


class TestFormats:
    def test_json_doc_step(self, capsys):
        import json

        code, out, _ = _main(
            capsys, "signature", "--form", "sample:xq.qf", "--total",
            "--format", "json-doc",
        )
        assert code == 0
        doc = json.loads(out)
        assert {"cell-kind": "point", "location": "0", "value": "1"} in doc

    def test_json_doc_value(self, capsys):
        code, out, _ = _main(
            capsys, "signature", "--form", "sample:xq.qf", "--at", "5",
            "--format", "json-doc",
        )
        assert code == 0
        assert out == '{"value": 2}\n'


class TestSelftestCommand:
    def test_paper_values(self, capsys):
        code, out, _ = _main(capsys, "selftest", "--suite", "paper-values")
        assert code == 0
        assert "trace-signatures" in out
        assert out.splitlines()[-1] == "all 4 checks passed"


class TestRunConfig:
    def test_bad_format_rejected(self):
        with pytest.raises(ValidationError, match="format"):
            RunConfig("classify", fmt="yaml")

    def test_unknown_command(self):
        with pytest.raises(ValidationError, match="command"):
            run(RunConfig("frobnicate"), out=io.StringIO())

    def test_run_writes_to_stream(self):
        buf = io.StringIO()
        code = run(
            RunConfig("classify", algebra="sample:quat-x.alg", at="-1"), out=buf
        )
        assert code == 0
        assert "quaternionic" in buf.getvalue()
