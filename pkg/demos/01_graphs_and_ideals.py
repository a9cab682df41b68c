"""
Amplified graphs, hereditary sets, and quotients
================================================

Walks the five-vertex running example: build the graph, list its
hereditary vertex sets, and form a quotient by one of them.
"""

from ampgraph import OMEGA, AmpGraph

# v1 feeds two branches; each branch ends in its own sink.
g = AmpGraph.from_edges(
    ("v1", "v2", "v3", "v4", "v5"),
    {
        ("v1", "v2"): OMEGA,
        ("v1", "v3"): OMEGA,
        ("v2", "v4"): OMEGA,
        ("v3", "v5"): OMEGA,
    },
)

cls = g.classify()
print("amplified:", cls.amplified)
print("acyclic:  ", cls.acyclic)
print("sinks:    ", " ".join(cls.sinks))
print("sources:  ", " ".join(cls.sources))

# A vertex set is hereditary when no edge escapes it; these sets are
# exactly the (gauge-invariant) ideals of the graph algebra.
print("\nhereditary subsets:")
for s in g.enumerate_hereditary():
    print("  {" + ", ".join(s) + "}")

# Quotient by the smallest nontrivial ideal: remove one sink.
q = g.quotient(("v4",))
print("\nquotient by {v4}:", ", ".join(q.vertices))
for src, dst, mult in q.families():
    print(f"  {src} -> {dst}  ({mult})")

# Adding a family parallel to an existing long path changes nothing
# up to isomorphism; the path relation is what matters.
h = g.amplify_transitive_edges("v1", "v4")
print("\nafter adding v1 -> v4:",
      sorted(set(h.reachable_set("v1"))) == sorted(set(g.reachable_set("v1"))))
