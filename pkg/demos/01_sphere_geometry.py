"""Tour of the core Riemannian operations on the sphere S^2.

Exponential and logarithm maps, geodesics, distances, parallel transport,
and how the generic numerical fallbacks reproduce the closed forms.
"""

import numpy as np

from riemstats.geometry import Hypersphere, transport_by_ladder

sphere = Hypersphere(2)
metric = sphere.metric

e1 = np.array([1.0, 0.0, 0.0])
e2 = np.array([0.0, 1.0, 0.0])
e3 = np.array([0.0, 0.0, 1.0])

print("== exp / log ==")
quarter = (np.pi / 2) * e2
print("exp_e1(pi/2 e2)        =", metric.exp(quarter, e1))
print("log_e1(e2)             =", metric.log(e2, e1))
print("dist(e1, e2)           =", metric.dist(e1, e2), "(pi/2 =", np.pi / 2, ")")

print("\n== geodesics are unit-speed great circles ==")
curve = metric.geodesic(e1, initial_tangent_vec=quarter)
ts = np.linspace(0.0, 1.0, 5)
for t, point in zip(ts, curve(ts)):
    print(f"  gamma({t:.2f}) = {point}")

print("\n== parallel transport ==")
moved = metric.parallel_transport(e3, e1, direction=quarter)
print("transport of e3 along the quarter circle:", moved, "(unchanged: orthogonal plane)")
moved_vel = metric.parallel_transport(quarter, e1, direction=quarter)
print("transport of the velocity itself:        ", moved_vel)

print("\n== the pole ladder reproduces the closed form ==")
rng = np.random.default_rng(0)
base = sphere.random_point(rng=rng)
vec = metric.random_tangent(base, rng=rng)
direction = metric.random_tangent(base, rng=rng)
closed = metric.parallel_transport(vec, base, direction=direction)
ladder = transport_by_ladder(metric, vec, base, metric.exp(direction, base), n_rungs=20)
print("max |ladder - closed form| =", np.max(np.abs(ladder - closed)))

print("\n== batched operations ==")
points = sphere.random_point(5, rng=rng)
print("distances from e1 to 5 random points:", metric.dist(e1, points))
