import re
from pathlib import Path

from sosv import (
    Allocation,
    Cardinality,
    CodeContextModel,
    Concern,
    DataField,
    DeploymentModel,
    DeploymentNode,
    DeploymentUnit,
    External,
    ExecutionTimeContextModel,
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
    Stakeholder,
    StakeholderConcernModel,
    UnitKind,
    UsageMode,
    UserScope,
    empty_view,
    validate,
)
from sosv.diagnostics import CODE_REGISTRY

SRC_DIR = Path(__file__).parent.parent / "src" / "sosv"
DOCS_REGISTRY = Path(__file__).parent.parent / "docs" / "diagnostics.md"


def with_model(kind, model):
    return empty_view("X").with_model(kind, model)


def codes_of(view):
    return [d.code for d in validate(view)]


def test_corpus_validates_clean(corpus_view):
    assert validate(corpus_view) == []


def test_validate_is_pure_and_idempotent(corpus_view):
    before = corpus_view
    first = validate(corpus_view)
    second = validate(corpus_view)
    assert first == second
    assert corpus_view == before


def test_empty_view_validates_clean():
    assert validate(empty_view("X")) == []


def test_has_concern_referencing_undeclared_stakeholder():
    model = StakeholderConcernModel(
        stakeholders=(Stakeholder("A"),),
        concerns=(Concern("C", "c"),),
        has_concern=(("Ghost", "C"),),
    )
    assert "E-REF-UNDECLARED" in codes_of(with_model(ModelKind.STAKEHOLDERS, model))


def test_duplicate_stakeholders_and_concerns():
    model = StakeholderConcernModel(
        stakeholders=(Stakeholder("A"), Stakeholder("A")),
        concerns=(Concern("C", "x"), Concern("C", "y")),
    )
    assert codes_of(with_model(ModelKind.STAKEHOLDERS, model)).count("E-DUP-NAME") == 2


def test_duplicate_has_pair():
    model = StakeholderConcernModel(
        stakeholders=(Stakeholder("A"),),
        concerns=(Concern("C", "c"),),
        has_concern=(("A", "C"), ("A", "C")),
    )
    assert "E-DUP-NAME" in codes_of(with_model(ModelKind.STAKEHOLDERS, model))


def test_many_to_many_has_pairs_are_legal():
    model = StakeholderConcernModel(
        stakeholders=(Stakeholder("A"), Stakeholder("B")),
        concerns=(Concern("C1", "c"), Concern("C2", "c")),
        has_concern=(("A", "C1"), ("A", "C2"), ("B", "C1"), ("B", "C2")),
    )
    assert codes_of(with_model(ModelKind.STAKEHOLDERS, model)) == []


def test_unknown_catalog_cross_reference():
    model = StakeholderConcernModel(
        concerns=(Concern("C", "c", catalog_ids=frozenset({"encryption", "bogus"})),)
    )
    assert "E-CATALOG-UNKNOWN" in codes_of(with_model(ModelKind.STAKEHOLDERS, model))


def test_blank_declared_name():
    model = StakeholderConcernModel(stakeholders=(Stakeholder("  "),))
    assert "E-EMPTY-NAME" in codes_of(with_model(ModelKind.STAKEHOLDERS, model))


def test_interaction_shared_interface_is_legal():
    model = ExecutionTimeContextModel(
        externals=(External("A"), External("B")),
        interactions=(
            Interaction("port", "A", InteractionKind.MESSAGE, InteractionDirection.CONSTITUENT_INITIATED),
            Interaction("port", "B", InteractionKind.MESSAGE, InteractionDirection.EXTERNAL_INITIATED),
        ),
    )
    assert codes_of(with_model(ModelKind.EXECUTION_CONTEXT, model)) == []


def test_interaction_undeclared_external():
    model = ExecutionTimeContextModel(
        interactions=(
            Interaction("port", "Ghost", InteractionKind.MESSAGE, InteractionDirection.CONSTITUENT_INITIATED),
        )
    )
    assert "E-REF-UNDECLARED" in codes_of(with_model(ModelKind.EXECUTION_CONTEXT, model))


def test_data_direction_required_and_forbidden():
    missing = ExecutionTimeContextModel(
        externals=(External("A"),),
        interactions=(
            Interaction("p", "A", InteractionKind.DATA_EXCHANGE, InteractionDirection.CONSTITUENT_INITIATED),
        ),
    )
    assert "E-DATA-DIRECTION" in codes_of(with_model(ModelKind.EXECUTION_CONTEXT, missing))


def test_empty_dependency_types():
    model = CodeContextModel(
        external_modules=(ExternalModule("m", frozenset(), ModuleCategory.LIBRARY),)
    )
    assert "E-EMPTY-SET" in codes_of(with_model(ModelKind.CODE_CONTEXT, model))


def test_info_cycle_reports_the_cycle():
    model = InterfaceInformationModel(
        system_elements=(InformationElement("A"), InformationElement("B")),
        relations=(
            InfoRelation(RelationKind.SPECIALIZATION, "A", "B"),
            InfoRelation(RelationKind.SPECIALIZATION, "B", "A"),
        ),
    )
    diags = validate(with_model(ModelKind.INFORMATION_MODEL, model))
    cycle = next(d for d in diags if d.code == "E-INFO-CYCLE")
    assert "A -> B -> A" in cycle.message


def test_aggregation_cycle_detected_separately():
    model = InterfaceInformationModel(
        system_elements=(InformationElement("A"),),
        relations=(InfoRelation(RelationKind.AGGREGATION, "A", "A"),),
    )
    assert "E-INFO-CYCLE" in codes_of(with_model(ModelKind.INFORMATION_MODEL, model))


def test_specialization_chain_without_cycle_is_clean():
    model = InterfaceInformationModel(
        system_elements=(InformationElement("A"), InformationElement("B"), InformationElement("C")),
        relations=(
            InfoRelation(RelationKind.SPECIALIZATION, "A", "B"),
            InfoRelation(RelationKind.SPECIALIZATION, "B", "C"),
            InfoRelation(RelationKind.AGGREGATION, "A", "C"),
        ),
    )
    assert codes_of(with_model(ModelKind.INFORMATION_MODEL, model)) == []


def test_cardinality_rules():
    model = InterfaceInformationModel(
        system_elements=(InformationElement("A"), InformationElement("B")),
        relations=(InfoRelation(RelationKind.ASSOCIATION, "A", "B"),),
    )
    assert "E-CARDINALITY" in codes_of(with_model(ModelKind.INFORMATION_MODEL, model))
    model = InterfaceInformationModel(
        system_elements=(InformationElement("A"), InformationElement("B")),
        relations=(InfoRelation(RelationKind.AGGREGATION, "A", "B", Cardinality.ONE_MANY),),
    )
    assert "E-CARDINALITY" in codes_of(with_model(ModelKind.INFORMATION_MODEL, model))


def test_unrelated_conflicts_with_relation_to_system_element():
    model = InterfaceInformationModel(
        sos_elements=(InformationElement("Sos"),),
        system_elements=(InformationElement("Sys"),),
        relations=(InfoRelation(RelationKind.ASSOCIATION, "Sos", "Sys", Cardinality.ONE_ONE),),
        unrelated_sos_elements=("Sos",),
    )
    assert "E-INFO-UNRELATED" in codes_of(with_model(ModelKind.INFORMATION_MODEL, model))


def test_unrelated_must_name_a_declared_sos_element():
    model = InterfaceInformationModel(unrelated_sos_elements=("Ghost",))
    assert "E-REF-UNDECLARED" in codes_of(with_model(ModelKind.INFORMATION_MODEL, model))


def test_duplicate_fields_within_element():
    model = InterfaceInformationModel(
        system_elements=(
            InformationElement("A", data_fields=(DataField("x"), DataField("x"))),
        )
    )
    assert "E-DUP-NAME" in codes_of(with_model(ModelKind.INFORMATION_MODEL, model))


def test_usage_of_undeclared_resource_and_empty_modes():
    model = SharedResourceModel(
        resources=(Resource("R", ResourceKind.DATABASE),),
        usages=(
            ResourceUsage("Ghost", "u", UserScope.EXTERNAL, frozenset({UsageMode.READS})),
            ResourceUsage("R", "u", UserScope.EXTERNAL, frozenset()),
        ),
    )
    found = codes_of(with_model(ModelKind.SHARED_RESOURCES, model))
    assert "E-REF-UNDECLARED" in found and "E-EMPTY-SET" in found


def test_deployment_references_and_quantities():
    model = DeploymentModel(
        nodes=(DeploymentNode("n", NodeKind.COMPUTER, (ResourceQuantity("m", -1, "MiB"),)),),
        units=(DeploymentUnit("u", UnitKind.SERVICE),),
        allocations=(Allocation("u", "n"), Allocation("ghost", "n")),
    )
    found = codes_of(with_model(ModelKind.DEPLOYMENT, model))
    assert "E-QTY-NEGATIVE" in found
    assert "E-REF-UNDECLARED" in found


def test_duplicate_provides_key():
    model = DeploymentModel(
        nodes=(
            DeploymentNode(
                "n",
                NodeKind.COMPUTER,
                (ResourceQuantity("m", 1, "MiB"), ResourceQuantity("m", 2, "MiB")),
            ),
        )
    )
    assert "E-DUP-NAME" in codes_of(with_model(ModelKind.DEPLOYMENT, model))


def test_unit_allocated_to_two_nodes_is_legal():
    model = DeploymentModel(
        nodes=(DeploymentNode("n1", NodeKind.COMPUTER), DeploymentNode("n2", NodeKind.COMPUTER)),
        units=(DeploymentUnit("u", UnitKind.SERVICE),),
        allocations=(Allocation("u", "n1"), Allocation("u", "n2")),
    )
    assert codes_of(with_model(ModelKind.DEPLOYMENT, model)) == []


def test_every_code_in_source_is_registered():
    pattern = re.compile(r'"((?:E|W|I)-[A-Z][A-Z0-9-]+)"')
    used = set()
    for path in SRC_DIR.rglob("*.py"):
        used |= set(pattern.findall(path.read_text(encoding="utf-8")))
    unregistered = used - set(CODE_REGISTRY)
    assert not unregistered, unregistered


def test_every_registered_code_is_documented():
    documented = DOCS_REGISTRY.read_text(encoding="utf-8")
    for code in CODE_REGISTRY:
        assert f"`{code}`" in documented, code


def test_diagnostics_reject_unregistered_codes():
    import pytest
    from sosv.diagnostics import Diagnostic, Severity

    with pytest.raises(ValueError):
        Diagnostic(Severity.ERROR, "E-MADE-UP", "nope")
