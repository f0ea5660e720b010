"""Recursive-descent parser for `.sosv` sources.

Produces an ArchitectureView whose origin carries a span for every
declaration, so later validation and analysis can point back into the text.
Recovery is per-item: a malformed declaration is reported and skipped, and
parsing resumes at the next recognizable keyword, so one parse can surface
several independent problems.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from ..catalog import catalog
from ..diagnostics import (
    Diagnostic,
    Location,
    Severity,
    SourceSpan,
    sorted_diagnostics,
)
from ..validator import validate
from ..model import (
    Acquisition,
    Allocation,
    ArchitectureView,
    Cardinality,
    CodeContextModel,
    Concern,
    DataDirection,
    DataField,
    DependencyType,
    DeploymentModel,
    DeploymentNode,
    DeploymentUnit,
    ExecutionTimeContextModel,
    External,
    ExternalCategory,
    ExternalModule,
    InfoRelation,
    InformationElement,
    Interaction,
    InteractionDirection,
    InteractionKind,
    InterfaceInformationModel,
    ModelKind,
    ModuleCategory,
    NodeKind,
    RelationKind,
    Resource,
    ResourceKind,
    ResourceQuantity,
    ResourceUsage,
    SharedResourceModel,
    SourceKind,
    Stakeholder,
    StakeholderConcernModel,
    UnitKind,
    UsageMode,
    UserScope,
    ViewOrigin,
)
from .lexer import LexError, Token, TokenKind, tokenize

_SECTION_WORDS = tuple(k.value for k in ModelKind)


@dataclass(frozen=True)
class ParseOutcome:
    """Result of parsing or interchange loading: a view is present exactly
    when no error-severity diagnostic was produced."""

    view: Optional[ArchitectureView]
    diagnostics: tuple[Diagnostic, ...]

    @property
    def errors(self) -> tuple[Diagnostic, ...]:
        return tuple(d for d in self.diagnostics if d.severity is Severity.ERROR)


class _SyntaxError(Exception):
    def __init__(self, message: str, token: Token):
        super().__init__(message)
        self.message = message
        self.token = token


def parse(source: str, origin: str = "<string>") -> ParseOutcome:
    """Parse one `.sosv` document into a view plus diagnostics."""
    try:
        tokens = tokenize(source)
    except LexError as exc:
        diag = Diagnostic(
            Severity.ERROR,
            "E-PARSE-SYNTAX",
            exc.message,
            Location(origin, exc.line, exc.column),
        )
        return ParseOutcome(None, (diag,))

    parser = _Parser(tokens, origin)
    view = parser.parse_document()
    diags = parser.diagnostics

    if view is not None:
        diags = diags + validate(view)

    diags = sorted_diagnostics(diags)
    has_errors = any(d.severity is Severity.ERROR for d in diags)
    return ParseOutcome(None if has_errors else view, tuple(diags))


class _Parser:
    def __init__(self, tokens: list[Token], file: str):
        self.tokens = tokens
        self.file = file
        self.i = 0
        self.last = tokens[0]
        self.diagnostics: list[Diagnostic] = []
        self.spans: dict[tuple[str, ...], SourceSpan] = {}
        self._declared: dict[tuple[str, ...], Token] = {}

    # -- token plumbing ----------------------------------------------------

    def _cur(self) -> Token:
        return self.tokens[self.i]

    def _at(self, kind: TokenKind) -> bool:
        return self._cur().kind is kind

    def _advance(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind is not TokenKind.EOF:
            self.i += 1
        self.last = tok
        return tok

    def _err(self, message: str, token: Token) -> _SyntaxError:
        return _SyntaxError(message, token)

    def _expect(self, kind: TokenKind, what: str) -> Token:
        tok = self._cur()
        if tok.kind is not kind:
            raise self._err(f"expected {what}, got {tok.describe()}", tok)
        return self._advance()

    def _expect_keyword(self, word: str) -> Token:
        tok = self._cur()
        if tok.kind is not TokenKind.WORD or tok.value != word:
            raise self._err(f"expected '{word}', got {tok.describe()}", tok)
        return self._advance()

    def _loc(self, token: Token) -> Location:
        return Location(self.file, token.line, token.column)

    def _span_from(self, start: Token) -> SourceSpan:
        return SourceSpan(
            self.file, start.line, start.column, self.last.end_line, self.last.end_column
        )

    def _report(
        self,
        code: str,
        message: str,
        token: Token,
        related: tuple[Location, ...] = (),
    ) -> None:
        self.diagnostics.append(
            Diagnostic(Severity.ERROR, code, message, self._loc(token), related)
        )

    def _declare(self, key: tuple[str, ...], token: Token, what: str) -> bool:
        """Register a declaration key; report E-DUP-NAME and return False on
        a duplicate (the duplicate is then dropped, never silently merged)."""
        first = self._declared.get(key)
        if first is not None:
            self._report(
                "E-DUP-NAME",
                f"duplicate {what}",
                token,
                related=(self._loc(first),),
            )
            return False
        self._declared[key] = token
        return True

    # -- value consumers ---------------------------------------------------

    def _string_value(self, what: str) -> str:
        return self._expect(TokenKind.STRING, f"a string ({what})").value

    def _number_value(self, what: str) -> float:
        return self._expect(TokenKind.NUMBER, f"a number ({what})").value

    def _enum_value(self, enum_cls, what: str):
        tok = self._cur()
        if tok.kind is not TokenKind.WORD:
            raise self._err(f"expected {what}, got {tok.describe()}", tok)
        for member in enum_cls:
            if member.value == tok.value:
                self._advance()
                return member
        options = ", ".join(m.value for m in enum_cls)
        raise self._err(f"bad {what} {tok.value!r}; expected one of: {options}", tok)

    def _word_set(self, vocabulary: dict[str, object], what: str) -> list:
        """Consume one or more bare words drawn from a closed vocabulary.
        The first non-member word ends the list (it is the next property)."""
        values = []
        seen: set[str] = set()
        while self._at(TokenKind.WORD) and self._cur().value in vocabulary:
            tok = self._advance()
            if tok.value in seen:
                raise self._err(f"duplicate {what} {tok.value!r}", tok)
            seen.add(tok.value)
            values.append(vocabulary[tok.value])
        if not values:
            tok = self._cur()
            options = ", ".join(sorted(vocabulary))
            raise self._err(
                f"expected at least one {what} (one of: {options}), got {tok.describe()}",
                tok,
            )
        return values

    # -- property blocks ---------------------------------------------------

    def _props(
        self,
        context: str,
        spec: dict[str, tuple[str, Optional[Callable]]],
        required: tuple[str, ...] = (),
        optional_block: bool = False,
    ) -> dict:
        """Parse ``{ key value ... }``. ``spec`` maps each key to a mode
        ("single", "flag", or "multi") and a value consumer."""
        result: dict = {}
        if optional_block and not self._at(TokenKind.LBRACE):
            missing = [key for key in required if key not in result]
            if missing:
                raise self._err(
                    f"{context} requires a block with {missing[0]!r}", self._cur()
                )
            return result
        open_tok = self._expect(TokenKind.LBRACE, f"'{{' to open {context}")
        try:
            while not self._at(TokenKind.RBRACE):
                if self._at(TokenKind.EOF):
                    raise self._err(f"unexpected end of input in {context}", self._cur())
                key_tok = self._cur()
                if key_tok.kind is not TokenKind.WORD:
                    raise self._err(
                        f"expected a property name in {context}, got {key_tok.describe()}",
                        key_tok,
                    )
                key = key_tok.value
                if key not in spec:
                    options = ", ".join(sorted(spec))
                    raise self._err(
                        f"unknown property {key!r} in {context}; expected one of: {options}",
                        key_tok,
                    )
                mode, consumer = spec[key]
                if mode != "multi" and key in result:
                    raise self._err(f"duplicate property {key!r} in {context}", key_tok)
                self._advance()
                value = True if mode == "flag" else consumer()
                if mode == "multi":
                    result.setdefault(key, []).append(value)
                else:
                    result[key] = value
        except _SyntaxError:
            # leave the token stream balanced so item-level recovery can
            # resume cleanly after this block
            self._skip_to_block_close()
            raise
        self._advance()  # closing brace
        for key in required:
            if key not in result:
                raise self._err(
                    f"{context} is missing required property {key!r}", open_tok
                )
        return result

    def _skip_to_block_close(self) -> None:
        depth = 1
        while depth > 0 and not self._at(TokenKind.EOF):
            tok = self._advance()
            if tok.kind is TokenKind.LBRACE:
                depth += 1
            elif tok.kind is TokenKind.RBRACE:
                depth -= 1

    # -- document ----------------------------------------------------------

    def parse_document(self) -> Optional[ArchitectureView]:
        models: dict[ModelKind, object] = {}
        try:
            start = self._expect_keyword("view")
            self._expect(TokenKind.STRING, "the view title string")
            self.spans[("view",)] = self._span_from(start)
            self._expect(TokenKind.LBRACE, "'{'")
            sys_tok = self._expect_keyword("system")
            name_tok = self._expect(TokenKind.STRING, "the system name string")
            system_name = name_tok.value
            self.last = name_tok
            self.spans[("system",)] = self._span_from(sys_tok)
        except _SyntaxError as exc:
            self._report("E-PARSE-SYNTAX", exc.message, exc.token)
            return None

        seen_sections: dict[str, Token] = {}
        closed = False
        while True:
            if self._at(TokenKind.RBRACE):
                self._advance()
                closed = True
                break
            if self._at(TokenKind.EOF):
                self._report(
                    "E-PARSE-SYNTAX", "unexpected end of input; missing '}'", self._cur()
                )
                break
            tok = self._cur()
            if tok.kind is TokenKind.WORD and tok.value in _SECTION_WORDS:
                self._advance()
                try:
                    model = self._parse_section(tok)
                except _SyntaxError as exc:
                    self._report("E-PARSE-SYNTAX", exc.message, exc.token)
                    self._recover(set(_SECTION_WORDS))
                    continue
                first = seen_sections.get(tok.value)
                if first is not None:
                    self._report(
                        "E-PARSE-DUP-SECTION",
                        f"section {tok.value!r} is declared twice",
                        tok,
                        related=(self._loc(first),),
                    )
                else:
                    seen_sections[tok.value] = tok
                    models[ModelKind(tok.value)] = model
                    self.spans[(tok.value,)] = self._span_from(tok)
            else:
                options = ", ".join(_SECTION_WORDS)
                self._report(
                    "E-PARSE-SYNTAX",
                    f"expected a section keyword ({options}) or '}}', got {tok.describe()}",
                    tok,
                )
                self._advance()
                self._recover(set(_SECTION_WORDS))

        if closed and not self._at(TokenKind.EOF):
            self._report(
                "E-PARSE-SYNTAX",
                f"expected end of input after the view, got {self._cur().describe()}",
                self._cur(),
            )

        if not system_name.strip():
            self._report("E-EMPTY-NAME", "system name is empty", name_tok)
            return None

        return ArchitectureView(
            system_name=system_name,
            stakeholder_model=models.get(ModelKind.STAKEHOLDERS),
            execution_context=models.get(ModelKind.EXECUTION_CONTEXT),
            code_context=models.get(ModelKind.CODE_CONTEXT),
            information_model=models.get(ModelKind.INFORMATION_MODEL),
            shared_resources=models.get(ModelKind.SHARED_RESOURCES),
            deployment=models.get(ModelKind.DEPLOYMENT),
            origin=ViewOrigin(self.file, self.spans),
        )

    def _recover(self, keywords: set[str]) -> None:
        """Skip tokens (balancing braces) until a keyword from ``keywords``,
        a same-level '}', or end of input."""
        depth = 0
        while True:
            tok = self._cur()
            if tok.kind is TokenKind.EOF:
                return
            if depth == 0 and tok.kind is TokenKind.RBRACE:
                return
            if depth == 0 and tok.kind is TokenKind.WORD and tok.value in keywords:
                return
            self._advance()
            if tok.kind is TokenKind.LBRACE:
                depth += 1
            elif tok.kind is TokenKind.RBRACE:
                depth -= 1

    def _parse_section(self, section_tok: Token):
        parsers = {
            "stakeholders": self._parse_stakeholders,
            "execution-context": self._parse_execution_context,
            "code-context": self._parse_code_context,
            "information-model": self._parse_information_model,
            "shared-resources": self._parse_shared_resources,
            "deployment": self._parse_deployment,
        }
        self._expect(TokenKind.LBRACE, f"'{{' after '{section_tok.value}'")
        return parsers[section_tok.value]()

    def _section_items(self, context: str, items: dict[str, Callable]) -> None:
        """Drive one section's item loop with per-item error recovery;
        consumes the section's closing brace."""
        while True:
            if self._at(TokenKind.RBRACE):
                self._advance()
                return
            if self._at(TokenKind.EOF):
                raise self._err(f"unexpected end of input in {context}", self._cur())
            tok = self._cur()
            try:
                if tok.kind is not TokenKind.WORD or tok.value not in items:
                    options = ", ".join(sorted(items))
                    raise self._err(
                        f"unknown key {tok.describe()} in {context}; "
                        f"expected one of: {options}",
                        tok,
                    )
                self._advance()
                items[tok.value](tok)
            except _SyntaxError as exc:
                self._report("E-PARSE-SYNTAX", exc.message, exc.token)
                self._recover(set(items))

    # -- stakeholders ------------------------------------------------------

    def _parse_stakeholders(self) -> StakeholderConcernModel:
        stakeholders: list[Stakeholder] = []
        concerns: list[Concern] = []
        has_pairs: list[tuple[str, str]] = []
        excluded: list[str] = []
        unaddressed: list[str] = []
        catalog_vocab = {cid: cid for cid in catalog().ids()}

        def parse_stakeholder(start: Token) -> None:
            name = self._string_value("stakeholder name")
            props = self._props(
                "stakeholder",
                {"note": ("single", lambda: self._string_value("role note"))},
                optional_block=True,
            )
            if self._declare(("stakeholders", "stakeholder", name), start, f"stakeholder {name!r}"):
                stakeholders.append(Stakeholder(name, props.get("note")))
                self.spans[("stakeholders", "stakeholder", name)] = self._span_from(start)

        def parse_concern(start: Token) -> None:
            cid = self._string_value("concern id")
            props = self._props(
                f"concern {cid!r}",
                {
                    "description": ("single", lambda: self._string_value("description")),
                    "source": ("single", lambda: self._string_value("source tag")),
                    "catalog": (
                        "single",
                        lambda: self._word_set(catalog_vocab, "catalog concern id"),
                    ),
                },
                required=("description",),
            )
            if self._declare(("stakeholders", "concern", cid), start, f"concern {cid!r}"):
                concerns.append(
                    Concern(
                        cid,
                        props["description"],
                        props.get("source"),
                        frozenset(props.get("catalog", ())),
                    )
                )
                self.spans[("stakeholders", "concern", cid)] = self._span_from(start)

        def parse_has(start: Token) -> None:
            holder = self._string_value("stakeholder name")
            self._expect(TokenKind.ARROW, "'->'")
            cid = self._string_value("concern id")
            key = ("stakeholders", "has", holder, cid)
            if self._declare(key, start, f"has pair {holder!r} -> {cid!r}"):
                has_pairs.append((holder, cid))
                self.spans[key] = self._span_from(start)

        def parse_excluded(start: Token) -> None:
            name = self._string_value("excluded stakeholder")
            if self._declare(("stakeholders", "excluded", name), start, f"excluded entry {name!r}"):
                excluded.append(name)
                self.spans[("stakeholders", "excluded", name)] = self._span_from(start)

        def parse_unaddressed(start: Token) -> None:
            text = self._string_value("unaddressed concern")
            if self._declare(("stakeholders", "unaddressed", text), start, f"unaddressed entry {text!r}"):
                unaddressed.append(text)
                self.spans[("stakeholders", "unaddressed", text)] = self._span_from(start)

        self._section_items(
            "section 'stakeholders'",
            {
                "stakeholder": parse_stakeholder,
                "concern": parse_concern,
                "has": parse_has,
                "excluded": parse_excluded,
                "unaddressed": parse_unaddressed,
            },
        )
        return StakeholderConcernModel(
            tuple(stakeholders), tuple(concerns), tuple(has_pairs), tuple(excluded), tuple(unaddressed)
        )

    # -- execution context ---------------------------------------------------

    def _parse_execution_context(self) -> ExecutionTimeContextModel:
        externals: list[External] = []
        interactions: list[Interaction] = []
        notes: dict[str, str] = {}

        def parse_external(start: Token) -> None:
            name = self._string_value("external system name")
            props = self._props(
                f"external {name!r}",
                {"category": ("single", lambda: self._enum_value(ExternalCategory, "category"))},
                optional_block=True,
            )
            if self._declare(("execution-context", "external", name), start, f"external {name!r}"):
                externals.append(External(name, props.get("category", ExternalCategory.APPLICATION)))
                self.spans[("execution-context", "external", name)] = self._span_from(start)

        def parse_interaction(start: Token) -> None:
            props = self._props(
                "interaction",
                {
                    "interface": ("single", lambda: self._string_value("interface name")),
                    "external": ("single", lambda: self._string_value("external system name")),
                    "external-interface": ("single", lambda: self._string_value("external interface")),
                    "kind": ("single", lambda: self._enum_value(InteractionKind, "interaction kind")),
                    "data-direction": ("single", lambda: self._enum_value(DataDirection, "data direction")),
                    "protocol": ("single", lambda: self._string_value("protocol")),
                    "direction": ("single", lambda: self._enum_value(InteractionDirection, "direction")),
                    "required-at-startup": ("flag", None),
                },
                required=("interface", "external", "kind", "direction"),
            )
            interaction = Interaction(
                self_interface=props["interface"],
                external=props["external"],
                external_interface=props.get("external-interface"),
                kind=props["kind"],
                data_direction=props.get("data-direction"),
                protocol=props.get("protocol"),
                direction=props["direction"],
                required_at_startup=props.get("required-at-startup", False),
            )
            key = ("execution-context", "interaction") + tuple(
                str(part) for part in interaction.identity()
            )
            if self._declare(key, start, "interaction (identical declaration)"):
                interactions.append(interaction)
                self.spans[key] = self._span_from(start)

        def parse_note(which: str):
            def inner(start: Token) -> None:
                text = self._string_value(which)
                if which in notes:
                    raise self._err(f"duplicate {which!r}", start)
                notes[which] = text
                self.spans[("execution-context", which)] = self._span_from(start)

            return inner

        self._section_items(
            "section 'execution-context'",
            {
                "external": parse_external,
                "interaction": parse_interaction,
                "startup-note": parse_note("startup-note"),
                "monitoring-note": parse_note("monitoring-note"),
            },
        )
        return ExecutionTimeContextModel(
            tuple(externals),
            tuple(interactions),
            notes.get("startup-note"),
            notes.get("monitoring-note"),
        )

    # -- code context --------------------------------------------------------

    def _parse_code_context(self) -> CodeContextModel:
        modules: list[ExternalModule] = []
        assumptions: list[str] = []
        dep_vocab = {m.value: m for m in DependencyType}

        def parse_module(start: Token) -> None:
            name = self._string_value("module name")
            props = self._props(
                f"module {name!r}",
                {
                    "depends": ("single", lambda: self._word_set(dep_vocab, "dependency type")),
                    "version": ("single", lambda: self._string_value("version")),
                    "source": ("single", lambda: self._enum_value(SourceKind, "source kind")),
                    "category": ("single", lambda: self._enum_value(ModuleCategory, "category")),
                    "note": ("single", lambda: self._string_value("note")),
                },
                required=("depends", "category"),
            )
            if self._declare(("code-context", "module", name), start, f"module {name!r}"):
                modules.append(
                    ExternalModule(
                        name,
                        frozenset(props["depends"]),
                        props["category"],
                        props.get("version", "unspecified"),
                        props.get("source", SourceKind.UNSPECIFIED),
                        props.get("note"),
                    )
                )
                self.spans[("code-context", "module", name)] = self._span_from(start)

        def parse_evolution(start: Token) -> None:
            text = self._string_value("evolution assumption")
            if self._declare(("code-context", "evolution", text), start, f"evolution entry {text!r}"):
                assumptions.append(text)
                self.spans[("code-context", "evolution", text)] = self._span_from(start)

        self._section_items(
            "section 'code-context'",
            {"module": parse_module, "evolution": parse_evolution},
        )
        return CodeContextModel(tuple(modules), tuple(assumptions))

    # -- information model -----------------------------------------------------

    def _parse_information_model(self) -> InterfaceInformationModel:
        sos_elements: list[InformationElement] = []
        system_elements: list[InformationElement] = []
        relations: list[InfoRelation] = []
        unrelated: list[str] = []

        def parse_element(scope: str, into: list[InformationElement]):
            def inner(start: Token) -> None:
                name = self._string_value("element name")
                fields: list[DataField] = []

                def parse_field() -> None:
                    fname_tok = self._expect(TokenKind.STRING, "a string (field name)")
                    fname = fname_tok.value
                    fprops = self._props(
                        f"field {fname!r}",
                        {
                            "units": ("single", lambda: self._string_value("units")),
                            "timeliness": ("single", lambda: self._string_value("timeliness")),
                            "precision": ("single", lambda: self._string_value("precision")),
                            "security-level": ("single", lambda: self._string_value("security level")),
                        },
                        optional_block=True,
                    )
                    key = ("information-model", scope, name, "field", fname)
                    if self._declare(key, fname_tok, f"field {fname!r} in element {name!r}"):
                        fields.append(
                            DataField(
                                fname,
                                fprops.get("units"),
                                fprops.get("timeliness"),
                                fprops.get("precision"),
                                fprops.get("security-level"),
                            )
                        )

                props = self._props(
                    f"element {name!r}",
                    {
                        "description": ("single", lambda: self._string_value("description")),
                        "field": ("multi", parse_field),
                    },
                    optional_block=True,
                )
                key = ("information-model", scope, name)
                if self._declare(key, start, f"{scope} {name!r}"):
                    into.append(InformationElement(name, props.get("description"), tuple(fields)))
                    self.spans[key] = self._span_from(start)

            return inner

        def parse_relation(start: Token) -> None:
            kind = self._enum_value(RelationKind, "relation kind")
            source = self._string_value("source element")
            self._expect(TokenKind.ARROW, "'->'")
            target = self._string_value("target element")
            props = self._props(
                "relation",
                {"cardinality": ("single", lambda: self._enum_value(Cardinality, "cardinality"))},
                optional_block=True,
            )
            relation = InfoRelation(kind, source, target, props.get("cardinality"))
            key = ("information-model", "relation") + tuple(str(p) for p in relation.identity())
            if self._declare(key, start, "relation (identical declaration)"):
                relations.append(relation)
                self.spans[key] = self._span_from(start)

        def parse_unrelated(start: Token) -> None:
            name = self._string_value("unrelated element name")
            key = ("information-model", "unrelated", name)
            if self._declare(key, start, f"unrelated entry {name!r}"):
                unrelated.append(name)
                self.spans[key] = self._span_from(start)

        self._section_items(
            "section 'information-model'",
            {
                "sos-element": parse_element("sos-element", sos_elements),
                "element": parse_element("element", system_elements),
                "relation": parse_relation,
                "unrelated": parse_unrelated,
            },
        )
        return InterfaceInformationModel(
            tuple(sos_elements), tuple(system_elements), tuple(relations), tuple(unrelated)
        )

    # -- shared resources --------------------------------------------------

    def _parse_shared_resources(self) -> SharedResourceModel:
        resources: list[Resource] = []
        usages: list[ResourceUsage] = []
        mode_vocab = {m.value: m for m in UsageMode}

        def parse_resource(start: Token) -> None:
            name = self._string_value("resource name")
            props = self._props(
                f"resource {name!r}",
                {
                    "kind": ("single", lambda: self._enum_value(ResourceKind, "resource kind")),
                    "acquisition": ("single", lambda: self._enum_value(Acquisition, "acquisition")),
                    "insufficient": ("single", lambda: self._string_value("insufficient-resource behavior")),
                },
                required=("kind",),
            )
            if self._declare(("shared-resources", "resource", name), start, f"resource {name!r}"):
                resources.append(
                    Resource(
                        name,
                        props["kind"],
                        props.get("acquisition", Acquisition.UNSPECIFIED),
                        props.get("insufficient"),
                    )
                )
                self.spans[("shared-resources", "resource", name)] = self._span_from(start)

        def parse_usage(start: Token) -> None:
            props = self._props(
                "usage",
                {
                    "resource": ("single", lambda: self._string_value("resource name")),
                    "user": ("single", lambda: self._string_value("user component")),
                    "scope": ("single", lambda: self._enum_value(UserScope, "user scope")),
                    "modes": ("single", lambda: self._word_set(mode_vocab, "usage mode")),
                    "note": ("single", lambda: self._string_value("note")),
                },
                required=("resource", "user", "scope", "modes"),
            )
            usage = ResourceUsage(
                props["resource"],
                props["user"],
                props["scope"],
                frozenset(props["modes"]),
                props.get("note"),
            )
            key = ("shared-resources", "usage") + tuple(str(p) for p in usage.identity())
            if self._declare(key, start, "usage (identical declaration)"):
                usages.append(usage)
                self.spans[key] = self._span_from(start)

        self._section_items(
            "section 'shared-resources'",
            {"resource": parse_resource, "usage": parse_usage},
        )
        return SharedResourceModel(tuple(resources), tuple(usages))

    # -- deployment ----------------------------------------------------------

    def _parse_deployment(self) -> DeploymentModel:
        nodes: list[DeploymentNode] = []
        units: list[DeploymentUnit] = []
        allocations: list[Allocation] = []

        def parse_quantity(what: str) -> tuple[str, float, str, Token]:
            res_tok = self._expect(TokenKind.STRING, f"a resource name ({what})")
            amount = self._number_value("quantity")
            unit = self._string_value("unit text")
            return (res_tok.value, amount, unit, res_tok)

        def quantities(owner_key: tuple[str, ...], raw: list, what: str) -> tuple[ResourceQuantity, ...]:
            out = []
            for res, amount, unit, tok in raw:
                if self._declare(owner_key + (what, res), tok, f"{what} entry {res!r}"):
                    out.append(ResourceQuantity(res, amount, unit))
            return tuple(out)

        def parse_node(start: Token) -> None:
            name = self._string_value("node name")
            props = self._props(
                f"node {name!r}",
                {
                    "kind": ("single", lambda: self._enum_value(NodeKind, "node kind")),
                    "provides": ("multi", lambda: parse_quantity("provides")),
                },
                required=("kind",),
            )
            key = ("deployment", "node", name)
            if self._declare(key, start, f"node {name!r}"):
                provides = quantities(key, props.get("provides", []), "provides")
                nodes.append(DeploymentNode(name, props["kind"], provides))
                self.spans[key] = self._span_from(start)

        def parse_unit(start: Token) -> None:
            name = self._string_value("unit name")
            props = self._props(
                f"unit {name!r}",
                {
                    "kind": ("single", lambda: self._enum_value(UnitKind, "unit kind")),
                    "needs": ("multi", lambda: parse_quantity("needs")),
                    "constraint": ("single", lambda: self._string_value("constraint note")),
                },
                required=("kind",),
            )
            key = ("deployment", "unit", name)
            if self._declare(key, start, f"unit {name!r}"):
                needs = quantities(key, props.get("needs", []), "needs")
                units.append(DeploymentUnit(name, props["kind"], needs, props.get("constraint")))
                self.spans[key] = self._span_from(start)

        def parse_allocate(start: Token) -> None:
            unit = self._string_value("unit name")
            self._expect(TokenKind.ARROW, "'->'")
            node = self._string_value("node name")
            key = ("deployment", "allocation", unit, node)
            if self._declare(key, start, f"allocation {unit!r} -> {node!r}"):
                allocations.append(Allocation(unit, node))
                self.spans[key] = self._span_from(start)

        self._section_items(
            "section 'deployment'",
            {"node": parse_node, "unit": parse_unit, "allocate": parse_allocate},
        )
        return DeploymentModel(tuple(nodes), tuple(units), tuple(allocations))
