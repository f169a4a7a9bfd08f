import pytest

from hyperpred import SyntheticSpec, synthetic_hypergraph

# The planted-community benchmark instance shared across tests: 4 communities
# of 50 nodes, 300 hyperedges of 4-6 nodes, 5% of edges spanning communities.
PLANTED_SPEC = SyntheticSpec(num_nodes=200, num_communities=4, edges_per_community=75,
                             min_size=4, max_size=6, noise=0.05)
PLANTED_SEED = 20240501


@pytest.fixture(scope="session")
def planted_graph():
    return synthetic_hypergraph(PLANTED_SPEC, PLANTED_SEED)


@pytest.fixture
def triangle():
    from hyperpred import build
    return build([("a", "b", "c")])


@pytest.fixture
def path_graph():
    from hyperpred import build
    return build([("a", "b"), ("b", "c")])
