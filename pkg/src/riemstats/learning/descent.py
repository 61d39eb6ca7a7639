"""Riemannian gradient descent for scalar fields on embedded manifolds.

The ambient gradient is projected to the tangent space (the Riemannian
gradient for the embedding-induced metric) and followed through the
exponential map with a backtracking-halved learning rate, so the objective
never increases.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MAX_HALVINGS = 30


@dataclass(frozen=True)
class GradientDescentResult:
    point: np.ndarray
    value: float
    n_iter: int
    converged: bool
    points: np.ndarray  # iterate trace, (n_iter + 1, *point_shape)
    values: np.ndarray  # objective trace, (n_iter + 1,)


def riemannian_gradient_descent(
    manifold,
    fun,
    grad,
    initial_point,
    metric=None,
    learning_rate=0.1,
    max_iter=200,
    tol=1e-8,
):
    """Minimize ``fun`` over an embedded manifold.

    Parameters
    ----------
    fun, grad : callables
        Scalar field on the ambient space and its ambient gradient.
    metric : RiemannianMetric, optional
        Defaults to the manifold's metric; assumed induced by the embedding
        (the tangent projection of ``grad`` is then the Riemannian gradient).
    tol : float
        Stop when the Riemannian gradient norm falls below this.
    """
    metric = metric if metric is not None else manifold.default_metric
    x = np.asarray(initial_point, dtype=float)
    trace = [x]
    values = [float(fun(x))]
    converged = False
    for _ in range(max_iter):
        riem_grad = manifold.to_tangent(np.asarray(grad(x), dtype=float), x)
        if float(metric.norm(riem_grad, x)) < tol:
            converged = True
            break
        rate = learning_rate
        current = values[-1]
        candidate = metric.exp(-rate * riem_grad, x)
        cand_value = float(fun(candidate))
        for _ in range(_MAX_HALVINGS):
            if cand_value <= current:
                break
            rate *= 0.5
            candidate = metric.exp(-rate * riem_grad, x)
            cand_value = float(fun(candidate))
        if cand_value > current:
            break  # backtracking exhausted: flat to machine precision
        x = candidate
        trace.append(x)
        values.append(cand_value)
    return GradientDescentResult(
        point=x,
        value=values[-1],
        n_iter=len(trace) - 1,
        converged=converged,
        points=np.stack(trace),
        values=np.asarray(values),
    )
