"""K-means clustering with geodesic distances.

Batch version: k-means++ seeding on Riemannian distances, then Lloyd
iterations assigning by distance (ties to the lowest centroid index) and
updating centroids by Frechet means warm-started at the previous centroid,
which keeps the inertia non-increasing. An emptied cluster is re-seeded
with the farthest point from its old centroid.

Online version: the streaming Riemannian mean update
``c <- exp_c(log_c(x) / (n + 1))``, the manifold counterpart of the running
arithmetic mean.
"""

from __future__ import annotations

import numpy as np

from ..errors import CutLocusError, DomainError
from .frechet import frechet_mean


def _pairwise_sq_dist(metric, points, centroids):
    """Squared distances, shape (n_points, n_centroids)."""
    cols = [metric.squared_dist(c, points) for c in centroids]
    return np.stack(cols, axis=-1)


class RiemannianKMeans:
    """Lloyd's algorithm under a Riemannian metric.

    Attributes after ``fit``: ``centroids_``, ``labels_``, ``inertia_``,
    ``inertia_history_`` (recorded after every assignment), ``n_iter_``,
    ``converged_``.
    """

    def __init__(self, metric, n_clusters, max_iter=100, tol=1e-6, seed=0,
                 mean_max_iter=64, mean_tol=1e-9):
        self.metric = metric
        self.n_clusters = n_clusters
        self.max_iter = max_iter
        self.tol = tol
        self.seed = seed
        self.mean_max_iter = mean_max_iter
        self.mean_tol = mean_tol

    def _seed_centroids(self, points, rng):
        """k-means++ on geodesic distances, deterministic per seed."""
        n = points.shape[0]
        chosen = [int(rng.integers(n))]
        for _ in range(self.n_clusters - 1):
            sq = _pairwise_sq_dist(self.metric, points, points[chosen]).min(axis=-1)
            total = float(np.sum(sq))
            if total <= 0.0:
                probs = np.full(n, 1.0 / n)
            else:
                probs = sq / total
            chosen.append(int(rng.choice(n, p=probs)))
        return points[chosen].copy()

    def fit(self, points):
        points = np.asarray(points, dtype=float)
        n = points.shape[0]
        if not 1 <= self.n_clusters <= n:
            raise ValueError("n_clusters must be between 1 and the number of points")
        rng = np.random.default_rng(self.seed)
        centroids = self._seed_centroids(points, rng)

        history = []
        converged = False
        n_iter = 0
        labels = np.zeros(n, dtype=int)
        for _ in range(self.max_iter):
            n_iter += 1
            sq = _pairwise_sq_dist(self.metric, points, centroids)
            labels = np.argmin(sq, axis=-1)
            history.append(float(np.sum(np.min(sq, axis=-1))))

            new_centroids = []
            for k in range(self.n_clusters):
                members = points[labels == k]
                if len(members) == 0:
                    new_centroids.append(points[int(np.argmax(sq[:, k]))])
                    continue
                result = frechet_mean(
                    self.metric,
                    members,
                    max_iter=self.mean_max_iter,
                    tol=self.mean_tol,
                    init=centroids[k],
                )
                new_centroids.append(result.estimate)
            new_centroids = np.stack(new_centroids)
            movement = float(np.max(self.metric.dist(centroids, new_centroids)))
            centroids = new_centroids
            if movement < self.tol:
                converged = True
                break

        sq = _pairwise_sq_dist(self.metric, points, centroids)
        labels = np.argmin(sq, axis=-1)
        history.append(float(np.sum(np.min(sq, axis=-1))))

        self.centroids_ = centroids
        self.labels_ = labels
        self.inertia_ = history[-1]
        self.inertia_history_ = np.asarray(history)
        self.n_iter_ = n_iter
        self.converged_ = converged
        return self

    def predict(self, points):
        sq = _pairwise_sq_dist(self.metric, np.asarray(points, dtype=float), self.centroids_)
        return np.argmin(sq, axis=-1)


class OnlineKMeans:
    """Streaming K-means: one sample at a time.

    The first samples fill empty centroids; afterwards the nearest centroid
    with count n moves to ``exp_c(log_c(x) / (n + 1))``. A sample whose
    logarithm does not exist at its nearest centroid (cut locus) is skipped
    and tallied in ``n_rejected_``.
    """

    def __init__(self, metric, n_clusters):
        if n_clusters < 1:
            raise ValueError("n_clusters must be >= 1")
        self.metric = metric
        self.n_clusters = n_clusters
        self.centroids_ = None
        self.counts_ = np.zeros(n_clusters, dtype=int)
        self.n_rejected_ = 0

    def partial_fit(self, point):
        point = np.asarray(point, dtype=float)
        if self.centroids_ is None:
            self.centroids_ = np.zeros((self.n_clusters,) + point.shape)
        if np.any(self.counts_ == 0):
            slot = int(np.argmin(self.counts_ > 0))
            self.centroids_[slot] = point
            self.counts_[slot] += 1
            return self
        sq = _pairwise_sq_dist(self.metric, point[None], self.centroids_)[0]
        nearest = int(np.argmin(sq))
        count = self.counts_[nearest]
        try:
            step = self.metric.log(point, self.centroids_[nearest]) / (count + 1.0)
            self.centroids_[nearest] = self.metric.exp(step, self.centroids_[nearest])
        except (CutLocusError, DomainError):
            self.n_rejected_ += 1
            return self
        self.counts_[nearest] += 1
        return self

    def fit(self, points):
        for point in np.asarray(points, dtype=float):
            self.partial_fit(point)
        return self

    def predict(self, points):
        sq = _pairwise_sq_dist(self.metric, np.asarray(points, dtype=float), self.centroids_)
        return np.argmin(sq, axis=-1)
