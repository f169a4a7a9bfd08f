"""Property tests for the algebraic invariants of the metric layer."""

from hypothesis import given, strategies as st

from hyperpred import Hyperedge, auc, average_f1, build, fit_degree_distribution

node_ids = st.integers(min_value=0, max_value=12)
hyperedge_nodes = st.lists(node_ids, min_size=2, max_size=6).filter(lambda ns: len(set(ns)) >= 2)
hyperedges = hyperedge_nodes.map(lambda ns: Hyperedge(tuple(ns)))
scores = st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=30)


@given(hyperedge_nodes, st.floats(0.1, 10.0), st.floats(0.1, 10.0))
def test_hyperedge_identity_ignores_metadata(nodes, w1, w2):
    shuffled = list(reversed(nodes))
    assert Hyperedge(tuple(nodes), weight=w1) == Hyperedge(tuple(shuffled), weight=w2)
    assert hash(Hyperedge(tuple(nodes), weight=w1)) == hash(Hyperedge(tuple(shuffled), weight=w2))


@given(st.lists(hyperedges, min_size=1, max_size=8), st.lists(hyperedges, min_size=1, max_size=8))
def test_average_f1_is_bounded_and_perfect_on_self(missing, predicted):
    value = average_f1(missing, predicted)
    assert 0.0 <= value <= 1.0
    assert average_f1(missing, missing) == 1.0


@given(scores, scores)
def test_auc_complement_symmetry(a, b):
    assert auc(a, b) + auc(b, a) == 1.0
    assert 0.0 <= auc(a, b) <= 1.0


# alpha stays off the subnormal range: a pseudo-count below ~1e-300 underflows
# to probability zero in double precision, which is not a normalization bug.
@given(st.lists(st.integers(min_value=2, max_value=9), min_size=1, max_size=20),
       st.one_of(st.just(0.0), st.floats(1e-9, 5.0)))
def test_fitted_size_distribution_normalizes(sizes, alpha):
    edges = [tuple(f"v{i}-{j}" for j in range(size)) for i, size in enumerate(sizes)]
    hdd = fit_degree_distribution(build(edges), alpha=alpha)
    assert abs(float(hdd.probs.sum()) - 1.0) <= 1e-12
    if alpha > 0:
        assert (hdd.probs > 0).all()
    total = sum(hdd.prob_of(d) for d in hdd.support)
    assert abs(total - 1.0) <= 1e-12
