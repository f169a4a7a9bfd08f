"""Build a hypergraph and inspect its graph reductions.

A hypergraph connects any number of nodes per edge.  This walkthrough
builds a small co-authorship-style example, looks at degrees and
neighborhoods, and compares the plain clique expansion with the
degree-preserving reduction.
"""

from hyperpred import adjacency_clique, adjacency_ndp, build

# Three papers: one by (ana, bo, chen), one by (bo, chen), one by (chen, dee).
g = build([("ana", "bo", "chen"), ("bo", "chen"), ("chen", "dee")])
print(f"{g.n} nodes, {g.m} hyperedges")

# Weighted node degree counts one unit per incident hyperedge here (all
# weights default to 1).  chen is in all three papers.
for label in g.labels:
    v = g.id_of(label)
    print(f"  degree({label}) = {g.node_degree[v]:.0f}, "
          f"neighbors = {sorted(g.labels[u] for u in g.neighbors(v))}")

# The clique expansion connects every co-occurring pair with the summed
# hyperedge weight.  bo and chen share two papers, so their entry is 2.
print("\nclique expansion:")
for (x, y), w in sorted(adjacency_clique(g).items()):
    print(f"  {g.labels[x]} -- {g.labels[y]}: {w}")

# The degree-preserving reduction scales each hyperedge down by
# (size - 1), so a node's row sum equals its hypergraph degree instead of
# being inflated by large hyperedges.
print("\ndegree-preserving reduction:")
ndp = adjacency_ndp(g)
for (x, y), w in sorted(ndp.items()):
    print(f"  {g.labels[x]} -- {g.labels[y]}: {w:.4f}")

row_sum = sum(w for (x, y), w in ndp.items() if g.id_of("chen") in (x, y))
print(f"\nrow sum at chen = {row_sum:.4f} (equals chen's degree)")
