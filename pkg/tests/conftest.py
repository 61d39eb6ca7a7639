"""Shared space registry: every (manifold, metric) pair under test.

Each case knows how to draw points and tangent vectors inside safe bounds,
so generic contract tests (round-trips, metric axioms, transport isometry)
and the acceptance suite can loop over the whole catalog.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
import pytest

from riemstats.geometry import (
    DiscretizedCurves,
    Euclidean,
    GeneralLinear,
    Grassmann,
    Hyperboloid,
    Hypersphere,
    Landmarks,
    Minkowski,
    PoincareBall,
    SPDMatrices,
    SpecialEuclidean,
    SpecialOrthogonal,
    Stiefel,
)


@dataclass
class SpaceCase:
    name: str
    manifold: object
    metric: object
    # norm bound for tangent vectors in round-trip tests (callable of base)
    tangent_radius: Callable
    # None: sample points globally; float: exp-cloud of this radius around a base
    local_radius: float | None = None
    # Participates in the metric-axiom (triangle inequality) suite.
    true_metric: bool = True
    # Has a closed-form/exact parallel transport worth testing for isometry.
    has_transport: bool = True

    def __str__(self):
        return self.name

    def random_points(self, n, rng):
        """Always returns a batch, shape (n, *point_shape)."""
        if self.local_radius is None:
            pts = self.manifold.random_point(n, rng)
            return pts[None] if n == 1 else pts
        base = self.manifold.random_point(1, rng)
        vecs = self.scaled_tangents(base, n, rng, radius=self.local_radius)
        return self.metric.exp(vecs, base)

    def random_point(self, rng):
        return self.random_points(1, rng)[0]

    def random_triples(self, n, rng):
        """Three aligned point batches; locally sampled spaces share one base
        per call so that every pairwise separation stays in the safe region."""
        if self.local_radius is None:
            return tuple(self.random_points(n, rng) for _ in range(3))
        base = self.manifold.random_point(1, rng)
        return tuple(
            self.metric.exp(self.scaled_tangents(base, n, rng, radius=self.local_radius), base)
            for _ in range(3)
        )

    def scaled_tangents(self, base, n, rng, radius=None):
        """Tangent draws with norms uniform in (0, radius], shape (n, *tangent_shape).

        ``base`` may be a single point or a batch of n points (row-aligned).
        """
        vecs = self.metric.random_tangent(base, n, rng)
        if n == 1:
            vecs = vecs[None]
        with np.errstate(invalid="ignore"):  # indefinite metrics: nan norms
            norms = self.metric.norm(vecs, base)
        norms = np.where(np.isfinite(norms) & (norms > 0), norms, 1.0)
        if radius is None:
            radius = self.tangent_radius(base)
        scales = np.broadcast_to(radius * rng.uniform(0.05, 1.0, size=n), norms.shape)
        expand = (...,) + (None,) * (vecs.ndim - 1)
        return vecs * (scales / norms)[expand]


def _const(value):
    return lambda base: value


def make_cases():
    sphere = Hypersphere(2)
    sphere4 = Hypersphere(4)
    hyper = Hyperboloid(2)
    ball = PoincareBall(2)
    spd = SPDMatrices(3)
    so3 = SpecialOrthogonal(3)
    se3 = SpecialEuclidean(3)
    gl3 = GeneralLinear(3)
    stiefel = Stiefel(4, 2)
    grassmann = Grassmann(4, 2)
    curves = DiscretizedCurves(10, 2)
    landmarks = Landmarks(Hypersphere(2), 3)

    cases = [
        SpaceCase("euclidean3", Euclidean(3), Euclidean(3).metric, _const(2.0)),
        SpaceCase(
            "minkowski3", Minkowski(3), Minkowski(3).metric, _const(2.0), true_metric=False
        ),
        SpaceCase("sphere2", sphere, sphere.metric, _const(0.45 * np.pi)),
        SpaceCase("sphere4", sphere4, sphere4.metric, _const(0.45 * np.pi)),
        SpaceCase("hyperboloid2", hyper, hyper.metric, _const(2.0)),
        SpaceCase("poincare_ball2", ball, ball.metric, _const(1.5)),
        SpaceCase("spd3_affine", spd, spd.affine_invariant_metric, _const(1.5)),
        SpaceCase("spd3_log_euclidean", spd, spd.log_euclidean_metric, _const(1.5)),
        SpaceCase("so3", so3, so3.bi_invariant_metric, _const(2.0)),
        SpaceCase("se3", se3, se3.canonical_left_metric, _const(2.0)),
        SpaceCase(
            "gl3", gl3, gl3.metric, _const(0.3), local_radius=0.4, has_transport=False
        ),
        SpaceCase(
            "stiefel42",
            stiefel,
            stiefel.canonical_metric,
            _const(0.5),
            local_radius=0.45,
            has_transport=False,
        ),
        SpaceCase("grassmann42", grassmann, grassmann.metric, _const(0.6)),
        SpaceCase("curves_l2", curves, curves.l2_metric, _const(2.0)),
        SpaceCase(
            "curves_srv",
            curves,
            curves.srv_metric,
            lambda base: 0.4 * curves.srv_metric.injectivity_radius(base),
        ),
        SpaceCase("landmarks_sphere", landmarks, landmarks.metric, _const(1.3)),
    ]
    return cases


ALL_CASES = make_cases()


@pytest.fixture(params=ALL_CASES, ids=str)
def space_case(request):
    return request.param
