"""
Temporal locality: triangles tend to close soon after their wedge opens.

For every triangle we record the arrival times t1 < t2 < t3 of its edges.
The closing interval is t3 - t2 and the total interval is t3 - t1. Comparing
the real order with a random shuffle of the same edges shows how much shorter
these gaps are when edges arrive in their natural order.
Run with:  python3 demos/02_temporal_locality.py
"""
from wrs_triangles.exact import interval_distribution, mean_interval, triangle_records
from wrs_triangles.stream import shuffle_stream, timed
from wrs_triangles.synthetic import synthetic_edges

edges = synthetic_edges(20_000, locality=0.9, seed=3)

real = triangle_records(timed(edges))
shuffled = triangle_records(timed(shuffle_stream(edges, seed=3)))
print(f"{len(real)} triangles in both orders")

for which in ("closing", "total"):
    a = mean_interval(real, which)
    b = mean_interval(shuffled, which)
    print(f"mean {which} interval: real {a:8.1f}   shuffled {b:8.1f}   ratio {b / a:5.1f}x")

# %% Distribution over log2 bins. The ccdf column is the share of triangles
# whose interval is at least the bin's lower edge.
table = interval_distribution(real, "closing")
print("\nclosing interval, real order")
print(f"{'bin':>14} {'count':>7} {'ccdf':>7}")
for lo, hi, count, ccdf in table.rows():
    print(f"{f'[{lo}, {hi})':>14} {count:7d} {ccdf:7.3f}")
