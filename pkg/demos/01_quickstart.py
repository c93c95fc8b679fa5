"""
Quickstart: estimating triangle counts from an edge stream with a fixed memory budget.

We generate a small synthetic stream, count its triangles exactly, and then
let a waiting-room sampler see the same edges while storing only 10% of them.
Run with:  python3 demos/01_quickstart.py
"""
from wrs_triangles import WaitingRoomSampler, WrsConfig
from wrs_triangles.exact import ExactCounter
from wrs_triangles.metrics import global_error, local_error
from wrs_triangles.stream import timed
from wrs_triangles.synthetic import synthetic_edges

# %% A stream of 5,000 edges where new edges tend to close recent wedges.
edges = timed(synthetic_edges(5000, locality=0.8, seed=1))
print(f"stream: {len(edges)} edges, first three: {[e.edge for e in edges[:3]]}")

# %% Exact counts, for reference. This keeps the whole graph in memory.
oracle = ExactCounter().extend(edges)
print(f"exact global triangles: {oracle.global_count}")

# %% The sampler keeps k = 500 edges. 10% of them sit in a FIFO waiting room
# holding the newest edges; the rest form a uniform reservoir of older ones.
sampler = WaitingRoomSampler(WrsConfig(k=500, alpha=0.1, seed=7))
for e in edges:
    sampler.process_edge(e)
print(f"waiting room: {len(sampler.waiting_room)} edges, reservoir: {len(sampler.reservoir)} edges")
print(f"estimated global triangles: {sampler.global_count:.1f}")

# %% How far off are we? Errors are normalised by (true count + 1).
nodes = sorted(oracle.nodes)
print(f"global error: {global_error(oracle.global_count, sampler.global_count):.3f}")
print(f"local error:  {local_error(oracle.local_counts, sampler.local_counts, nodes):.3f}")

# %% Every triangle contributes to three nodes, so local estimates sum to three times the global one.
print(f"sum of local estimates / global estimate = {sampler.local_sum() / sampler.global_count:.6f}")
