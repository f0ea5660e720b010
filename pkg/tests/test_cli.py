import json
import re

import pytest

from sosv.cli import main

DIAG_LINE = re.compile(r"^.+:\d+:\d+: (error|warning|info)\[[EWI]-[A-Z0-9-]+\] .+$")


@pytest.fixture()
def corpus_file(tmp_path, corpus_text) -> str:
    path = tmp_path / "adventure_builder.sosv"
    path.write_text(corpus_text, encoding="utf-8")
    return str(path)


@pytest.fixture()
def deployed_file(tmp_path, deployed_corpus_text) -> str:
    path = tmp_path / "adventure_builder_deployed.sosv"
    path.write_text(deployed_corpus_text, encoding="utf-8")
    return str(path)


def write(tmp_path, name, text) -> str:
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


# ---------------------------------------------------------------------------
# validate


def test_validate_corpus_exit_zero_no_output(corpus_file, capsys):
    assert main(["validate", corpus_file]) == 0
    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err == ""


def test_validate_missing_file_exit_two(capsys):
    assert main(["validate", "nosuchfile.sosv"]) == 2
    assert "E-IO" in capsys.readouterr().err


def test_validate_broken_file_exit_one(tmp_path, capsys):
    path = write(tmp_path, "bad.sosv", 'view "X" { system "X" execution-context { } execution-context { } }')
    assert main(["validate", path]) == 1
    err = capsys.readouterr().err
    assert "E-PARSE-DUP-SECTION" in err
    for line in err.strip().splitlines():
        assert DIAG_LINE.match(line), line


def test_validate_multiple_files_processed_in_order(tmp_path, corpus_text, capsys):
    good = write(tmp_path, "good.sosv", corpus_text)
    bad = write(tmp_path, "bad.sosv", "view")
    assert main(["validate", good, bad]) == 1
    assert "bad.sosv" in capsys.readouterr().err


def test_validate_with_lints_warns_but_exits_zero(corpus_file, capsys):
    assert main(["validate", corpus_file, "--lint", "all"]) == 0
    err = capsys.readouterr().err
    assert "W-XM-SR-UNDEPLOYED" in err
    assert "W-XM-MULTIWRITER" in err


def test_validate_with_specific_lint(corpus_file, capsys):
    assert main(["validate", corpus_file, "--lint", "W-XM-STARTUP-UNDOC"]) == 0
    assert capsys.readouterr().err == ""


def test_validate_unknown_lint_exit_two(corpus_file, capsys):
    assert main(["validate", corpus_file, "--lint", "W-NOPE"]) == 2
    assert "E-LINT-UNKNOWN" in capsys.readouterr().err


def test_validate_assumptions_info(corpus_file, capsys):
    assert main(["validate", corpus_file, "--assumptions"]) == 0
    err = capsys.readouterr().err
    assert "I-ASSUME-INSUFFICIENT" in err


# ---------------------------------------------------------------------------
# coverage


def test_coverage_text_report(corpus_file, capsys):
    assert main(["coverage", corpus_file]) == 0
    captured = capsys.readouterr()
    lines = captured.out.splitlines()
    assert lines[0].startswith("concern")
    assert len([l for l in lines if "partial" in l]) == 4
    assert any("startup-sequencing" in l and "deployment" in l for l in lines)
    assert "W-COV-PARTIAL" in captured.err


def test_coverage_filter(corpus_file, capsys):
    assert main(["coverage", corpus_file, "--concern", "fault-recovery"]) == 0
    out = capsys.readouterr().out
    assert "fault-recovery" in out
    assert "authentication" not in out


def test_coverage_unknown_concern_exit_two(corpus_file, capsys):
    assert main(["coverage", corpus_file, "--concern", "nope"]) == 2
    assert "E-COV-UNKNOWN-ID" in capsys.readouterr().err


def test_coverage_interchange_format(corpus_file, capsys):
    assert main(["coverage", corpus_file, "--format", "interchange"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["system"] == "Adventure Builder"
    assert len(payload["coverage"]) == 16


def test_coverage_deployed_corpus_all_covered(deployed_file, capsys):
    assert main(["coverage", deployed_file]) == 0
    captured = capsys.readouterr()
    assert "partial" not in captured.out
    assert captured.err == ""


# ---------------------------------------------------------------------------
# analyze


def test_analyze_startup_order(tmp_path, capsys):
    a = write(
        tmp_path,
        "a.sosv",
        'view "A" { system "A" execution-context { external "B" interaction { '
        'interface "i" external "B" kind message direction constituent-initiated '
        "required-at-startup } } }",
    )
    b = write(tmp_path, "b.sosv", 'view "B" { system "B" }')
    assert main(["analyze", "startup", a, b]) == 0
    assert capsys.readouterr().out == "B\nA\n"


def test_analyze_startup_cycle_exit_one(tmp_path, capsys):
    a = write(
        tmp_path,
        "a.sosv",
        'view "A" { system "A" execution-context { external "B" interaction { '
        'interface "i" external "B" kind message direction constituent-initiated '
        "required-at-startup } } }",
    )
    b = write(
        tmp_path,
        "b.sosv",
        'view "B" { system "B" execution-context { external "A" interaction { '
        'interface "i" external "A" kind message direction constituent-initiated '
        "required-at-startup } } }",
    )
    assert main(["analyze", "startup", a, b]) == 1
    assert "E-STARTUP-CYCLE" in capsys.readouterr().err


def test_analyze_resources(corpus_file, capsys):
    assert main(["analyze", "resources", corpus_file]) == 0
    out = capsys.readouterr().out
    assert "resource: Adventure Order Processing DB" in out
    assert "Order Processing Component (Adventure Builder): reads, writes" in out
    assert "conflicts:" in out


def test_analyze_resources_interchange(corpus_file, capsys):
    assert main(["analyze", "resources", corpus_file, "--format", "interchange"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert "Adventure Order Processing DB" in payload["resources"]


def test_analyze_gaps_ccv(corpus_file, capsys):
    assert (
        main(
            [
                "analyze", "gaps", corpus_file,
                "--element", "CreditCard",
                "--require", "cardType",
                "--require", "cardNumber",
                "--require", "cardExpiryDate",
                "--require", "cardSecurityCode",
            ]
        )
        == 0
    )
    out = capsys.readouterr().out
    assert "missing:" in out and "cardSecurityCode" in out
    assert "cardType = cardType (exact)" in out


def test_analyze_gaps_alias(corpus_file, capsys):
    assert (
        main(
            [
                "analyze", "gaps", corpus_file,
                "--element", "CreditCard",
                "--require", "pan",
                "--alias", "pan=cardNumber",
            ]
        )
        == 0
    )
    assert "pan = cardNumber (alias)" in capsys.readouterr().out


def test_analyze_gaps_unknown_element_exit_one(corpus_file, capsys):
    assert (
        main(["analyze", "gaps", corpus_file, "--element", "Ghost", "--require", "x"]) == 1
    )
    assert "E-GAP-NO-ELEMENT" in capsys.readouterr().err


def test_analyze_capacity_warns(tmp_path, capsys):
    path = write(
        tmp_path,
        "cap.sosv",
        'view "X" { system "X" deployment { '
        'node "n" { kind computer provides "memory" 1024 "MiB" } '
        'unit "u1" { kind service needs "memory" 600 "MiB" } '
        'unit "u2" { kind service needs "memory" 600 "MiB" } '
        'allocate "u1" -> "n" allocate "u2" -> "n" } }',
    )
    assert main(["analyze", "capacity", path]) == 0
    assert "W-DEP-OVERCOMMIT" in capsys.readouterr().err


def test_analyze_capacity_without_deployment_exit_one(corpus_file, capsys):
    assert main(["analyze", "capacity", corpus_file]) == 1
    assert "E-DEP-ABSENT" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# render


def test_render_markdown(corpus_file, capsys):
    assert main(["render", corpus_file, "--model", "stakeholders", "--as", "md"]) == 0
    assert "| Product Manager |" in capsys.readouterr().out


def test_render_sr_matrix(corpus_file, capsys):
    assert main(["render", corpus_file, "--model", "execution-context", "--as", "matrix"]) == 0
    out = capsys.readouterr().out
    assert "| CreditCard Service |" in out
    assert " S " in out


def test_render_dot(corpus_file, capsys):
    assert main(["render", corpus_file, "--model", "execution-context", "--as", "dot"]) == 0
    assert capsys.readouterr().out.startswith("digraph")


def test_render_absent_model_exit_one(corpus_file, capsys):
    assert main(["render", corpus_file, "--model", "deployment", "--as", "md"]) == 1
    assert "E-RND-ABSENT" in capsys.readouterr().err


def test_render_bad_model_flag_exit_two(corpus_file, capsys):
    assert main(["render", corpus_file, "--model", "nonsense", "--as", "md"]) == 2


# ---------------------------------------------------------------------------
# scaffold and review


def test_scaffold_roundtrips_through_validate(tmp_path, capsys):
    assert (
        main(["scaffold", "--framework", "dodaf", "--have", "AV-1", "PV-1", "--system", "New Sys"]) == 0
    )
    captured = capsys.readouterr()
    assert "stakeholders {" in captured.out
    assert "// TODO from: AV-1, PV-1" in captured.out
    assert "stakeholders: sourced" in captured.err
    path = write(tmp_path, "skeleton.sosv", captured.out)
    assert main(["validate", path]) == 0


def test_scaffold_unknown_source_exit_two(capsys):
    assert main(["scaffold", "--framework", "dodaf", "--have", "OV-1", "--system", "S"]) == 2
    assert "E-MAP-UNKNOWN-SOURCE" in capsys.readouterr().err


def test_review_styles(corpus_file, capsys):
    assert main(["review", corpus_file, "--style", "active,subjective"]) == 0
    out = capsys.readouterr().out
    assert "## Active review" in out
    assert "## Subjective review" in out
    assert "## Checklist" not in out


def test_review_default_is_full_instrument(corpus_file, capsys):
    assert main(["review", corpus_file]) == 0
    out = capsys.readouterr().out
    for section in ("## Questionnaire", "## Checklist", "## Active review", "## Subjective review"):
        assert section in out


def test_review_unknown_style_exit_two(corpus_file, capsys):
    assert main(["review", corpus_file, "--style", "interpretive-dance"]) == 2


# ---------------------------------------------------------------------------
# contract-wide checks


def _subcommands_for(path):
    return [
        ["validate", path],
        ["coverage", path],
        ["analyze", "startup", path],
        ["analyze", "resources", path],
        ["analyze", "gaps", path, "--element", "CreditCard", "--require", "cardType"],
        ["analyze", "capacity", path],
        ["render", path, "--model", "stakeholders", "--as", "md"],
        ["review", path, "--style", "subjective"],
    ]


def test_exit_code_matrix_over_fixtures_and_subcommands(tmp_path, deployed_corpus_text, capsys):
    # a fully valid file: every subcommand must succeed
    good = write(tmp_path, "good.sosv", deployed_corpus_text)
    for argv in _subcommands_for(good):
        assert main(argv) == 0, argv
        capsys.readouterr()

    # a file with validation errors: every subcommand must exit 1
    broken = write(
        tmp_path, "broken.sosv",
        'view "X" { system "X" stakeholders { stakeholder "A" stakeholder "A" } }',
    )
    for argv in _subcommands_for(broken):
        assert main(argv) == 1, argv
        capsys.readouterr()

    # an unreadable file: every subcommand must exit 2
    for argv in _subcommands_for(str(tmp_path / "missing.sosv")):
        assert main(argv) == 2, argv
        capsys.readouterr()


def test_usage_errors_exit_two(capsys):
    assert main([]) == 2
    assert main(["no-such-command"]) == 2
    assert main(["analyze"]) == 2
    assert main(["render", "x.sosv", "--model", "stakeholders"]) == 2  # missing --as


def test_stdout_byte_identical_across_runs(corpus_file, capsys):
    def run(args):
        assert main(args) == 0
        return capsys.readouterr().out

    for args in (
        ["coverage", corpus_file],
        ["coverage", corpus_file, "--format", "interchange"],
        ["render", corpus_file, "--model", "execution-context", "--as", "dot"],
        ["review", corpus_file],
        ["analyze", "resources", corpus_file],
    ):
        assert run(args) == run(args)


def test_diagnostics_format_contract(tmp_path, capsys):
    path = write(tmp_path, "bad.sosv", 'view "X" { system "X" stakeholders { stakeholder "A" stakeholder "A" } }')
    assert main(["validate", path]) == 1
    for line in capsys.readouterr().err.strip().splitlines():
        assert DIAG_LINE.match(line), line


def test_reports_go_to_stdout_diagnostics_to_stderr(corpus_file, capsys):
    assert main(["coverage", corpus_file]) == 0
    captured = capsys.readouterr()
    assert "partial" in captured.out
    assert "partial" not in captured.err.replace("partially", "")


def test_sosv_no_color_disables_ansi(tmp_path, capsys, monkeypatch):
    import sys

    path = write(tmp_path, "bad.sosv", "view")
    monkeypatch.setattr(sys.stderr, "isatty", lambda: True, raising=False)

    monkeypatch.delenv("SOSV_NO_COLOR", raising=False)
    assert main(["validate", path]) == 1
    assert "\x1b[31m" in capsys.readouterr().err

    monkeypatch.setenv("SOSV_NO_COLOR", "1")
    assert main(["validate", path]) == 1
    assert "\x1b[" not in capsys.readouterr().err


def test_no_color_when_stderr_is_not_a_tty(tmp_path, capsys):
    path = write(tmp_path, "bad.sosv", "view")
    assert main(["validate", path]) == 1
    assert "\x1b[" not in capsys.readouterr().err
