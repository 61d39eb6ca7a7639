"""SPD matrices under the affine-invariant and log-Euclidean metrics.

The two metrics agree on commuting pairs but differ in general; the
affine-invariant distance is invariant under congruence, the log-Euclidean
one under additive shifts in the matrix-log chart."""

import numpy as np

from riemstats import linalg
from riemstats.geometry import SPDMatrices

spd = SPDMatrices(2)
affine = spd.affine_invariant_metric
log_euclidean = spd.log_euclidean_metric

eye = np.eye(2)
diag = np.diag([np.e, 1.0])
print("== commuting pair: both metrics give 1 ==")
print("affine-invariant dist(I, diag(e, 1)) =", affine.dist(eye, diag))
print("log-Euclidean   dist(I, diag(e, 1)) =", log_euclidean.dist(eye, diag))

rng = np.random.default_rng(0)
p = spd.random_point(rng=rng)
q = spd.random_point(rng=rng)
print("\n== generic pair: the metrics differ ==")
print("affine-invariant:", affine.dist(p, q))
print("log-Euclidean:   ", log_euclidean.dist(p, q))

print("\n== congruence invariance (affine-invariant only) ==")
a = linalg.matrix_exp(0.4 * rng.standard_normal((2, 2)))
lhs = affine.dist(a @ p @ a.T, a @ q @ a.T)
print("affine:  d(APA^T, AQA^T) - d(P, Q) =", float(lhs - affine.dist(p, q)))
lhs_le = log_euclidean.dist(a @ p @ a.T, a @ q @ a.T)
print("log-Euc: d(APA^T, AQA^T) - d(P, Q) =", float(lhs_le - log_euclidean.dist(p, q)))

print("\n== geodesics stay positive definite ==")
curve = affine.geodesic(p, end_point=q)
for t in np.linspace(0.0, 1.0, 5):
    eigvals = np.linalg.eigvalsh(curve(t))
    print(f"  t = {t:.2f}: eigenvalues = {eigvals}")

print("\n== parallel transport preserves the metric ==")
vec = affine.random_tangent(p, rng=rng)
moved = affine.parallel_transport(vec, p, end_point=q)
print("norm before:", float(affine.norm(vec, p)), " after:", float(affine.norm(moved, q)))
