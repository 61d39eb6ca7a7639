"""Numerical fallbacks for metrics without closed forms.

Three generic tools over a coordinate chart or an embedded manifold:

* geodesics by fixed-step RK4 integration of the geodesic equation
  ``x'' + Gamma(x)(x', x') = 0``;
* logarithms by shooting (damped Gauss-Newton on the exp residual);
* parallel transport by the pole ladder, which is exact on symmetric
  spaces up to the accuracy of the exp/log maps used per rung.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConvergenceError, DomainError

_FD_STEP = 1e-5  # central differences of the metric matrix
_SHOOTING_FD = 1e-7  # forward differences of the shooting residual


class ChristoffelField:
    """Levi-Civita coefficients ``Gamma^k_{ij}`` over a coordinate chart.

    Wraps an evaluator mapping intrinsic coordinates ``(..., dim)`` to a
    coefficient array ``(..., dim, dim, dim)`` indexed ``[k, i, j]`` and
    symmetric in ``(i, j)``.
    """

    def __init__(self, evaluator, dim):
        self._evaluator = evaluator
        self.dim = int(dim)

    def __call__(self, coords):
        coords = np.asarray(coords, dtype=float)
        gamma = np.asarray(self._evaluator(coords), dtype=float)
        expected = coords.shape[:-1] + (self.dim,) * 3
        if gamma.shape != expected:
            raise DomainError(
                f"christoffel evaluator returned shape {gamma.shape}, expected {expected}"
            )
        if not np.all(np.isfinite(gamma)):
            raise DomainError("christoffel coefficients are not finite (chart domain exit)")
        return gamma


def christoffels_from_metric(metric_matrix_fn, dim, step=_FD_STEP):
    """Christoffel field from a coordinate metric matrix by central differences.

    ``metric_matrix_fn`` maps coordinates ``(..., dim)`` to the metric matrix
    ``(..., dim, dim)``. Matches registered closed forms to ~1e-6 for smooth
    metrics at the default step.
    """

    def gamma(coords):
        coords = np.asarray(coords, dtype=float)
        g = np.asarray(metric_matrix_fn(coords), dtype=float)
        ginv = np.linalg.inv(g)
        partials = []
        for axis in range(dim):
            offset = np.zeros(dim)
            offset[axis] = step
            g_plus = np.asarray(metric_matrix_fn(coords + offset), dtype=float)
            g_minus = np.asarray(metric_matrix_fn(coords - offset), dtype=float)
            partials.append((g_plus - g_minus) / (2.0 * step))
        dg = np.stack(partials, axis=-3)  # dg[..., l, i, j] = d_l g_ij
        # Gamma^k_ij = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij)
        first = np.einsum("...kl,...ijl->...kij", ginv, dg)
        second = np.einsum("...kl,...jil->...kij", ginv, dg)
        third = np.einsum("...kl,...lij->...kij", ginv, dg)
        return 0.5 * (first + second - third)

    return ChristoffelField(gamma, dim)


def exp_by_integration(christoffels, base_coords, velocity_coords, n_steps=100):
    """Chart exponential map: RK4 integration of the geodesic equation.

    Fixed step count keeps the result deterministic; it converges to the
    closed-form exponential as ``n_steps`` grows (RK4, so O(n^-4)).
    """
    x = np.asarray(base_coords, dtype=float).copy()
    v = np.asarray(velocity_coords, dtype=float).copy()
    x, v = np.broadcast_arrays(x, v)
    x, v = x.copy(), v.copy()
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")

    def acceleration(coords, velocity):
        gamma = christoffels(coords)
        return -np.einsum("...kij,...i,...j->...k", gamma, velocity, velocity)

    h = 1.0 / n_steps
    for _ in range(n_steps):
        k1x = v
        k1v = acceleration(x, v)
        k2x = v + 0.5 * h * k1v
        k2v = acceleration(x + 0.5 * h * k1x, k2x)
        k3x = v + 0.5 * h * k2v
        k3v = acceleration(x + 0.5 * h * k2x, k3x)
        k4x = v + h * k3v
        k4v = acceleration(x + h * k3x, k4x)
        x = x + (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
        v = v + (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(v))):
            raise DomainError("geodesic integration left the chart domain")
    return x


def log_by_shooting(
    exp_map,
    base_point,
    target_point,
    tangent_basis=None,
    initial_tangent=None,
    max_iter=64,
    tol=1e-6,
    point_ndim=1,
):
    """Logarithm by shooting: solve ``exp(v) = target`` for the tangent ``v``.

    Damped Gauss-Newton on the residual ``exp(v) - target`` with a
    forward-difference Jacobian; the step is halved whenever the residual
    would increase. Problems may be batched over leading axes and are solved
    simultaneously.

    Parameters
    ----------
    exp_map : callable or metric
        ``exp_map(tangent, base) -> point``, or an object with ``.exp``.
    tangent_basis : array, optional
        Basis spanning the unknown tangent space, ``batch + (d, *point_shape)``.
        Without it the tangent is a free array of the point's shape
        (coordinate-chart mode) initialized at ``target - base``.
    initial_tangent : array, optional
        Starting guess (projected onto the basis span in basis mode).
    tol : float
        Max-abs residual on ``exp(v) - target`` required for convergence.
    point_ndim : int
        Number of trailing axes that make up a single point.

    Raises
    ------
    ConvergenceError
        If any problem in the batch misses ``tol`` after ``max_iter`` steps.
    """
    exp_fn = exp_map.exp if hasattr(exp_map, "exp") else exp_map
    base_point = np.asarray(base_point, dtype=float)
    target_point = np.asarray(target_point, dtype=float)
    base_point, target_point = np.broadcast_arrays(base_point, target_point)
    point_shape = base_point.shape[base_point.ndim - point_ndim :]
    batch = base_point.shape[: base_point.ndim - point_ndim]
    m = int(np.prod(point_shape))
    n_prob = int(np.prod(batch)) if batch else 1

    if tangent_basis is None:
        d = m
        basis = np.broadcast_to(np.eye(m).reshape((m,) + point_shape), (n_prob, m) + point_shape)
        if initial_tangent is None:
            initial_tangent = target_point - base_point
    else:
        basis = np.asarray(tangent_basis, dtype=float)
        d = basis.shape[-point_ndim - 1]
        basis = np.broadcast_to(basis, batch + (d,) + point_shape)
        basis = basis.reshape((n_prob, d) + point_shape)
        if initial_tangent is None:
            initial_tangent = np.zeros(batch + point_shape)

    base_flat = base_point.reshape((n_prob,) + point_shape)
    target_flat = target_point.reshape((n_prob, m))
    basis_flat = basis.reshape((n_prob, d, m))
    init_flat = (
        np.broadcast_to(np.asarray(initial_tangent, dtype=float), batch + point_shape)
        .reshape((n_prob, m))
    )
    # Express the initial guess in basis coordinates (least squares).
    gram = np.einsum("pdm,pem->pde", basis_flat, basis_flat)
    rhs = np.einsum("pdm,pm->pd", basis_flat, init_flat)
    coeff = np.linalg.solve(gram, rhs[..., None])[..., 0]

    def residuals_from_tangents(tan_flat):
        lead = tan_flat.shape[:-1]
        pts = exp_fn(tan_flat.reshape(lead + point_shape), base_flat)
        return pts.reshape(lead + (m,)) - target_flat

    def tangent_of(c):
        return np.einsum("pd,pdm->pm", c, basis_flat)

    res = residuals_from_tangents(tangent_of(coeff))
    norms = np.linalg.norm(res, axis=-1)
    for _ in range(max_iter):
        # Converged problems are frozen so that a batched solve iterates each
        # problem exactly as its element-wise run would.
        active = np.max(np.abs(res), axis=-1) > tol
        if not np.any(active):
            break
        step_h = _SHOOTING_FD * (1.0 + np.max(np.abs(coeff), axis=-1))  # (p,)
        # exp is evaluated on a (d, p) stack; the tangent is linear in the
        # coefficients, so perturbed tangents are tan + h * basis_k.
        tan0 = tangent_of(coeff)
        pert_tan = tan0[None] + step_h[None, :, None] * np.moveaxis(basis_flat, 1, 0)
        pert_res = residuals_from_tangents(pert_tan)  # (d, p, m)
        jac = np.moveaxis((pert_res - res[None]) / step_h[None, :, None], 0, -1)  # (p, m, d)
        delta = -np.einsum("pdm,pm->pd", np.linalg.pinv(jac), res)

        lam = np.ones(n_prob)
        improved = np.zeros(n_prob, dtype=bool)
        cand, cand_res, cand_norms = coeff, res, norms
        for _ in range(30):
            trial = coeff + lam[:, None] * delta
            trial_res = residuals_from_tangents(tangent_of(trial))
            trial_norms = np.linalg.norm(trial_res, axis=-1)
            better = active & ~improved & (trial_norms < cand_norms)
            cand = np.where(better[:, None], trial, cand)
            cand_res = np.where(better[:, None], trial_res, cand_res)
            cand_norms = np.where(better, trial_norms, cand_norms)
            improved |= better
            if np.all(improved | ~active):
                break
            lam = np.where(improved, lam, lam * 0.5)
        if not np.any(improved):
            break
        coeff, res, norms = cand, cand_res, cand_norms

    if np.max(np.abs(res)) > tol:
        raise ConvergenceError(
            f"shooting log failed to reach tol={tol}", residual=float(np.max(np.abs(res)))
        )
    return tangent_of(coeff).reshape(batch + point_shape)


def transport_by_ladder(metric, tangent_vec, base_point, end_point, n_rungs=20):
    """Parallel transport by the pole ladder along the base->end geodesic.

    One rung reflects ``exp(v)`` through the rung's geodesic midpoint; the
    scheme is first order per rung in general and exact (up to the exp/log
    accuracy) on symmetric spaces.
    """
    if n_rungs < 1:
        raise ValueError("n_rungs must be >= 1")
    tangent_vec = np.asarray(tangent_vec, dtype=float)
    base_point = np.asarray(base_point, dtype=float)
    end_point = np.asarray(end_point, dtype=float)

    whole = metric.log(end_point, base_point)
    vec = tangent_vec
    for i in range(n_rungs):
        start = metric.exp((i / n_rungs) * whole, base_point)
        mid = metric.exp(((i + 0.5) / n_rungs) * whole, base_point)
        nxt = metric.exp(((i + 1.0) / n_rungs) * whole, base_point)
        lifted = metric.exp(vec, start)
        reflected = metric.exp(-metric.log(lifted, mid), mid)
        vec = -metric.log(reflected, nxt)
    return vec
