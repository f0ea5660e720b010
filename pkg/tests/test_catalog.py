import pytest

from sosv import ModelKind, Quality, SosvError, StakeholderRole, catalog

K = ModelKind

# One row per catalog entry, in catalog order: (id, model kinds, quality).
EXPECTED_ROWS = [
    ("shared-resources", {K.SHARED_RESOURCES, K.EXECUTION_CONTEXT, K.DEPLOYMENT}, Quality.PERFORMANCE),
    ("insufficient-resource-behavior", {K.SHARED_RESOURCES, K.INFORMATION_MODEL, K.EXECUTION_CONTEXT}, Quality.PERFORMANCE),
    ("authentication", {K.INFORMATION_MODEL, K.SHARED_RESOURCES, K.EXECUTION_CONTEXT}, Quality.SECURITY),
    ("authorization", {K.INFORMATION_MODEL, K.SHARED_RESOURCES, K.EXECUTION_CONTEXT}, Quality.SECURITY),
    ("encryption", {K.INFORMATION_MODEL, K.SHARED_RESOURCES, K.EXECUTION_CONTEXT}, Quality.SECURITY),
    ("startup-sequencing", {K.EXECUTION_CONTEXT, K.DEPLOYMENT}, Quality.TESTABILITY),
    ("fault-detection-logging", {K.INFORMATION_MODEL, K.EXECUTION_CONTEXT}, Quality.TESTABILITY),
    ("fault-recovery", {K.EXECUTION_CONTEXT, K.DEPLOYMENT}, Quality.AVAILABILITY),
    ("build-dependencies", {K.CODE_CONTEXT}, Quality.MODIFIABILITY),
    ("dev-environment-deps", {K.CODE_CONTEXT, K.DEPLOYMENT, K.STAKEHOLDERS}, Quality.MODIFIABILITY),
    ("interface-variabilities", {K.INFORMATION_MODEL}, Quality.MODIFIABILITY),
    ("decision-model", {K.CODE_CONTEXT, K.INFORMATION_MODEL}, Quality.MODIFIABILITY),
    ("configuration-dependencies", {K.CODE_CONTEXT, K.EXECUTION_CONTEXT, K.INFORMATION_MODEL}, Quality.USABILITY),
    ("perceived-needs", {K.STAKEHOLDERS}, Quality.CONTEXT),
    ("processes-cultures", {K.STAKEHOLDERS}, Quality.CONTEXT),
    ("constituent-stakeholders", {K.STAKEHOLDERS}, Quality.CONTEXT),
]

EXPECTED_STAKEHOLDERS = {
    Quality.PERFORMANCE: {StakeholderRole.SOS_ARCHITECT, StakeholderRole.PROGRAM_MANAGER},
    Quality.SECURITY: {
        StakeholderRole.SOS_ARCHITECT,
        StakeholderRole.TESTER_INTEGRATOR,
        StakeholderRole.PROGRAM_MANAGER,
    },
    Quality.TESTABILITY: {StakeholderRole.SOS_ARCHITECT, StakeholderRole.TESTER_INTEGRATOR},
    Quality.MODIFIABILITY: {StakeholderRole.SOS_ARCHITECT, StakeholderRole.DEVELOPER},
    Quality.AVAILABILITY: {
        StakeholderRole.SOS_ARCHITECT,
        StakeholderRole.TESTER_INTEGRATOR,
        StakeholderRole.PROGRAM_MANAGER,
    },
    Quality.USABILITY: {StakeholderRole.SOS_ARCHITECT},
    Quality.CONTEXT: set(StakeholderRole),
}


def test_catalog_has_exactly_sixteen_unique_entries():
    entries = list(catalog())
    assert len(entries) == 16
    assert len({e.id for e in entries}) == 16


def test_catalog_order_matches_expected_rows():
    assert [e.id for e in catalog()] == [row[0] for row in EXPECTED_ROWS]


@pytest.mark.parametrize("concern_id,kinds,quality", EXPECTED_ROWS)
def test_catalog_row(concern_id, kinds, quality):
    entry = catalog().entry(concern_id)
    assert entry.model_kinds == frozenset(kinds)
    assert entry.quality is quality
    assert entry.stakeholders == frozenset(EXPECTED_STAKEHOLDERS[quality])


def test_context_concerns_reach_all_four_roles():
    entry = catalog().entry("perceived-needs")
    assert entry.stakeholders == frozenset(StakeholderRole)
    assert len(entry.stakeholders) == 4


def test_sos_architect_is_concerned_with_every_quality():
    for entry in catalog():
        assert StakeholderRole.SOS_ARCHITECT in entry.stakeholders


def test_catalog_is_a_singleton_and_immutable():
    assert catalog() is catalog()
    entry = catalog().entry("build-dependencies")
    with pytest.raises(Exception):
        entry.quality = Quality.SECURITY


def test_unknown_id_raises():
    with pytest.raises(SosvError) as exc:
        catalog().entry("no-such-concern")
    assert exc.value.code == "E-COV-UNKNOWN-ID"


def test_contains():
    assert "encryption" in catalog()
    assert "nonsense" not in catalog()
