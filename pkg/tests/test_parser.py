from sosv import ModelKind, parse

MINIMAL = 'view "X" { system "X" }'


def codes(outcome):
    return [d.code for d in outcome.diagnostics]


def test_minimal_view_parses():
    outcome = parse(MINIMAL, "min.sosv")
    assert outcome.diagnostics == ()
    assert outcome.view is not None
    assert outcome.view.system_name == "X"


def test_corpus_parses_with_five_models_and_no_deployment(corpus_text):
    outcome = parse(corpus_text, "adventure_builder.sosv")
    assert outcome.diagnostics == ()
    view = outcome.view
    assert view.models_present == frozenset(
        {
            ModelKind.STAKEHOLDERS,
            ModelKind.EXECUTION_CONTEXT,
            ModelKind.CODE_CONTEXT,
            ModelKind.INFORMATION_MODEL,
            ModelKind.SHARED_RESOURCES,
        }
    )
    assert view.deployment is None


def test_corpus_contents(corpus_view):
    stakeholders = {s.name for s in corpus_view.stakeholder_model.stakeholders}
    assert stakeholders == {"Product Manager", "Operations", "Finance", "Legal", "Info. Sec."}
    assert [c.id for c in corpus_view.stakeholder_model.concerns] == [
        f"QAS{i}" for i in range(1, 8)
    ]
    assert len(corpus_view.execution_context.externals) == 5
    assert {m.name for m in corpus_view.code_context.external_modules} == {"gwt", "waf", "wsdls"}
    names = {e.name for e in corpus_view.information_model.system_elements}
    assert "CreditCard" in names and "PurchaseOrder" in names
    resources = {r.name for r in corpus_view.shared_resources.resources}
    assert "Adventure Order Processing DB" in resources


def test_corpus_preserves_waf_uncertainty_note(corpus_view):
    waf = next(m for m in corpus_view.code_context.external_modules if m.name == "waf")
    assert "Build?" in waf.note


def test_empty_input_is_a_syntax_error():
    outcome = parse("", "empty.sosv")
    assert outcome.view is None
    assert codes(outcome) == ["E-PARSE-SYNTAX"]
    assert outcome.diagnostics[0].location is not None


def test_duplicate_section_rejected():
    text = 'view "X" { system "X" execution-context { } execution-context { } }'
    outcome = parse(text, "dup.sosv")
    assert outcome.view is None
    assert "E-PARSE-DUP-SECTION" in codes(outcome)


def test_unknown_property_is_an_error_not_a_warning():
    text = 'view "X" { system "X" execution-context { external "B" { colour application } } }'
    outcome = parse(text, "typo.sosv")
    assert outcome.view is None
    assert any(
        d.code == "E-PARSE-SYNTAX" and "colour" in d.message for d in outcome.diagnostics
    )


def test_duplicate_names_are_parse_errors():
    text = 'view "X" { system "X" stakeholders { stakeholder "A" stakeholder "A" } }'
    outcome = parse(text, "dupname.sosv")
    assert outcome.view is None
    dup = next(d for d in outcome.diagnostics if d.code == "E-DUP-NAME")
    assert dup.location is not None
    assert dup.related  # points back at the first declaration


def test_undeclared_reference_reported_with_location():
    text = (
        'view "X" { system "X" stakeholders { stakeholder "A" '
        'concern "C1" { description "d" } has "Nobody" -> "C1" } }'
    )
    outcome = parse(text, "ref.sosv")
    assert outcome.view is None
    diag = next(d for d in outcome.diagnostics if d.code == "E-REF-UNDECLARED")
    assert "Nobody" in diag.message
    assert diag.location is not None
    assert diag.location.file == "ref.sosv"


def test_data_direction_only_on_data_exchange():
    text = (
        'view "X" { system "X" execution-context { external "B" interaction { '
        'interface "i" external "B" kind message data-direction read '
        "direction constituent-initiated } } }"
    )
    outcome = parse(text, "dd.sosv")
    assert outcome.view is None
    assert "E-DATA-DIRECTION" in codes(outcome)


def test_missing_required_property():
    text = 'view "X" { system "X" execution-context { interaction { interface "i" } } }'
    outcome = parse(text, "req.sosv")
    assert outcome.view is None
    assert any("required property" in d.message for d in outcome.diagnostics)


def test_bad_enum_word_lists_the_options():
    text = 'view "X" { system "X" shared-resources { resource "R" { kind cloud } } }'
    outcome = parse(text, "enum.sosv")
    assert outcome.view is None
    diag = outcome.diagnostics[0]
    assert diag.code == "E-PARSE-SYNTAX"
    assert "database" in diag.message


def test_unterminated_string():
    outcome = parse('view "X { system "X" }', "s.sosv")
    assert outcome.view is None
    assert codes(outcome)[0] == "E-PARSE-SYNTAX"


def test_unknown_escape():
    outcome = parse('view "X\\q" { system "X" }', "esc.sosv")
    assert outcome.view is None
    assert "escape" in outcome.diagnostics[0].message


def test_blank_system_name():
    outcome = parse('view "X" { system "  " }', "blank.sosv")
    assert outcome.view is None
    assert "E-EMPTY-NAME" in codes(outcome)


def test_crlf_and_comments_accepted():
    text = 'view "X" {\r\n  // a comment\r\n  system "X"\r\n}\r\n'
    outcome = parse(text, "crlf.sosv")
    assert outcome.view is not None


def test_trailing_garbage_rejected():
    outcome = parse(MINIMAL + " view", "trail.sosv")
    assert outcome.view is None


def test_recovery_reports_multiple_independent_errors():
    text = (
        'view "X" { system "X" stakeholders { concern "C" { } concern "D" { } } }'
    )
    outcome = parse(text, "multi.sosv")
    assert outcome.view is None
    missing = [d for d in outcome.diagnostics if "description" in d.message]
    assert len(missing) == 2


def test_recovery_from_error_inside_a_property_block():
    text = (
        'view "X" { system "X" shared-resources { '
        'resource "A" { kind 42 } '
        'resource "B" { colour database } '
        'resource "C" { kind database } } }'
    )
    outcome = parse(text, "inner.sosv")
    assert outcome.view is None
    # both broken blocks reported; the well-formed sibling parses through
    assert sum(1 for d in outcome.diagnostics if d.code == "E-PARSE-SYNTAX") == 2
    messages = " | ".join(d.message for d in outcome.diagnostics)
    assert "resource kind" in messages and "colour" in messages


def test_diagnostics_sorted_and_deterministic(corpus_text):
    broken = corpus_text.replace('stakeholder "Legal"', 'stakeholder "Product Manager"')
    first = parse(broken, "b.sosv")
    second = parse(broken, "b.sosv")
    assert first.diagnostics == second.diagnostics
    locations = [
        (d.location.line, d.location.column) for d in first.diagnostics if d.location
    ]
    assert locations == sorted(locations)


def test_spans_point_inside_source(corpus_text):
    cases = [
        corpus_text.replace('stakeholder "Legal"', 'stakeholder "Product Manager"'),
        'view "X" { system "X" unknown-stuff }',
        "",
        'view "X" { system "X" deployment { allocate "u" -> "n" } }',
    ]
    for text in cases:
        outcome = parse(text, "span.sosv")
        lines = text.split("\n")
        for diag in outcome.diagnostics:
            assert diag.location is not None, diag.render()
            assert 1 <= diag.location.line <= max(len(lines), 1)
            line = lines[diag.location.line - 1] if lines else ""
            assert 1 <= diag.location.column <= max(len(line) + 1, 1)


def test_every_declaration_gets_a_span(corpus_view):
    spans = corpus_view.origin.spans
    assert ("stakeholders", "stakeholder", "Product Manager") in spans
    assert ("execution-context", "external", "Bank") in spans
    assert ("code-context", "module", "waf") in spans
    assert ("information-model", "element", "CreditCard") in spans
    assert ("shared-resources", "resource", "Consumer UI") in spans
    span = spans[("code-context", "module", "waf")]
    assert span.start_line <= span.end_line


def test_fuzzed_inputs_never_crash_and_keep_spans_sound(corpus_text):
    import random

    rng = random.Random(20260810)
    for _ in range(200):
        mutated = list(corpus_text)
        for _ in range(rng.randint(1, 6)):
            pos = rng.randrange(len(mutated))
            roll = rng.random()
            if roll < 0.4:
                del mutated[pos]
            elif roll < 0.8:
                mutated.insert(pos, rng.choice('{}">\\-abc123 \n'))
            else:
                mutated[pos] = rng.choice('{}"x')
        text = "".join(mutated)
        outcome = parse(text, "fuzz.sosv")
        assert (outcome.view is None) == bool(outcome.errors)
        lines = text.split("\n")
        for diag in outcome.diagnostics:
            if diag.location is None:
                continue
            assert 1 <= diag.location.line <= len(lines)
            line = lines[diag.location.line - 1]
            assert 1 <= diag.location.column <= len(line) + 1


def test_view_present_iff_no_errors(corpus_text):
    good = parse(corpus_text, "ok.sosv")
    assert good.view is not None and not good.errors
    bad = parse("view", "bad.sosv")
    assert bad.view is None and bad.errors


def test_parse_is_reentrant(corpus_text):
    a = parse(corpus_text, "a.sosv")
    b = parse(corpus_text, "b.sosv")
    assert a.view == b.view
