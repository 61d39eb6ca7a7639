"""Statistics on manifolds: Frechet means, tangent PCA, clustering.

The estimators take any metric from the catalog; here everything runs on the
sphere, where curvature effects are easy to see."""

import numpy as np

from riemstats.geometry import Hypersphere, Landmarks
from riemstats.learning import (
    OnlineKMeans,
    RiemannianKMeans,
    TangentPCA,
    frechet_mean,
    frechet_variance,
)

sphere = Hypersphere(2)
metric = sphere.metric
rng = np.random.default_rng(1)

print("== Frechet mean of two points is the geodesic midpoint ==")
two = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
result = frechet_mean(metric, two)
print("estimate:", result.estimate, " converged:", result.converged, " iters:", result.n_iter)

print("\n== a cluster on the sphere ==")
center = np.array([0.0, 0.0, 1.0])
vecs = metric.random_tangent(center, 50, rng)
vecs = vecs * (0.4 * rng.uniform(0.2, 1.0, 50) / metric.norm(vecs, center))[:, None]
cap = metric.exp(vecs, center)
mean = frechet_mean(metric, cap)
print("mean:", mean.estimate)
print("variance:", frechet_variance(metric, cap, mean.estimate))

print("\n== tangent PCA at the mean ==")
tpca = TangentPCA(metric, n_components=2).fit(cap, base_point=mean.estimate)
print("explained variance:", tpca.explained_variance_)
print("explained variance ratio:", tpca.explained_variance_ratio_)
coeffs = tpca.transform(cap)
print("coefficient matrix shape:", coeffs.shape)
print("reconstruction error:", np.max(np.abs(tpca.inverse_transform(coeffs) - cap)))

print("\n== K-means separates two antipodal caps ==")
cap_b = -cap
data = np.concatenate([cap, cap_b])
km = RiemannianKMeans(metric, 2, seed=0).fit(data)
print("labels (first cap): ", sorted(set(km.labels_[:50].tolist())))
print("labels (second cap):", sorted(set(km.labels_[50:].tolist())))
print("inertia history:", np.array2string(km.inertia_history_, precision=4))

print("\n== the streaming variant sees one sample at a time ==")
online = OnlineKMeans(metric, 2)
for point in data[rng.permutation(len(data))]:
    online.partial_fit(point)
print("counts per centroid:", online.counts_, " rejected:", online.n_rejected_)
print("centroid alignment with the cap axes:",
      np.abs(online.centroids_ @ center))

print("\n== the same estimators run on product spaces ==")
shapes = Landmarks(sphere, 4)
configs = shapes.random_point(6, rng)
mean_config = frechet_mean(shapes.metric, configs)
print("landmark-configuration mean converged:", mean_config.converged)
