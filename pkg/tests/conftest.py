import pytest

from conceptspace.knowledge.fixture import load_builtin_fixture
from conceptspace.learning import train
from conceptspace.model import Concept, ConceptualSpace, DimensionSpec, MembershipFunction
from conceptspace.scenegen import builtin_fixture, generate


@pytest.fixture(scope="session")
def drill_riveter_space():
    return train(generate(builtin_fixture("drill-riveter")))


@pytest.fixture(scope="session")
def idealised_space():
    return train(generate(builtin_fixture("idealised")))


@pytest.fixture(scope="session")
def knowledge_fixture():
    return load_builtin_fixture()


def make_nominal_space(concept_tables, weights):
    """Tiny space over two nominal dimensions with hand-set memberships,
    so tests control mu values exactly."""
    dims = (
        DimensionSpec(id="d1", domain="a", kind="nominal", categories=("x", "y")),
        DimensionSpec(id="d2", domain="b", kind="nominal", categories=("x", "y")),
    )
    concepts = {}
    for cid, tables in concept_tables.items():
        concepts[cid] = Concept(
            id=cid,
            prototype={"d1": "x", "d2": "x"},
            memberships={d: MembershipFunction.nominal_table(t) for d, t in tables.items()},
            weights=dict(weights[cid]),
            support=2,
        )
    return ConceptualSpace(dimensions=dims, concepts=concepts, standardization={})
