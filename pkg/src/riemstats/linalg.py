"""Dense linear-algebra kernels used by the geometry layer.

All functions accept stacked operands with leading batch axes,
``(..., n, n)`` style, and are deterministic: fixed sign conventions make
the output a pure function of the input bits.

Conventions
-----------
* ``sym_eig`` returns eigenvalues in descending order; each eigenvector's
  largest-magnitude entry is made positive.
* ``qr`` forces a positive diagonal on R.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import DomainError, ShapeError

ATOL_SYM = 1e-10
RTOL_RANK = 1e-10
# Relative eigenvalue gap below which divided differences switch to the
# derivative (Daleckii-Krein formula).
_EIG_GAP_RTOL = 1e-8


def _as_matrix(a, name="matrix"):
    a = np.asarray(a, dtype=float)
    if a.ndim < 2:
        raise ShapeError(f"{name} must have at least 2 dimensions, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError(f"{name} has non-finite entries")
    return a


def _as_square(a, name="matrix"):
    a = _as_matrix(a, name)
    if a.shape[-1] != a.shape[-2]:
        raise ShapeError(f"{name} must be square, got shape {a.shape}")
    return a


def sym(a):
    """Symmetric part (a + a^T) / 2."""
    a = np.asarray(a, dtype=float)
    return 0.5 * (a + np.swapaxes(a, -1, -2))


def skew(a):
    """Skew part (a - a^T) / 2."""
    a = np.asarray(a, dtype=float)
    return 0.5 * (a - np.swapaxes(a, -1, -2))


def transpose(a):
    return np.swapaxes(np.asarray(a, dtype=float), -1, -2)


def is_symmetric(a, atol=ATOL_SYM):
    a = np.asarray(a, dtype=float)
    return np.max(np.abs(a - np.swapaxes(a, -1, -2)), axis=(-1, -2)) <= atol


def sym_eig(mat, atol=ATOL_SYM):
    """Eigendecomposition of a symmetric matrix.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues sorted in
    descending order and sign-fixed eigenvector columns, so that
    ``mat == V @ diag(w) @ V.T`` up to round-off.
    """
    mat = _as_square(mat, "symmetric matrix")
    if not np.all(is_symmetric(mat, atol=atol)):
        raise DomainError(f"matrix is not symmetric within {atol}")
    w, v = np.linalg.eigh(sym(mat))
    w = w[..., ::-1]
    v = v[..., ::-1]
    # Fix each column's sign by its largest-magnitude entry.
    idx = np.argmax(np.abs(v), axis=-2)
    lead = np.take_along_axis(v, idx[..., None, :], axis=-2)[..., 0, :]
    signs = np.where(lead >= 0.0, 1.0, -1.0)
    return np.ascontiguousarray(w), np.ascontiguousarray(v * signs[..., None, :])


def matrix_exp(mat):
    """Matrix exponential (scaling-and-squaring Pade), stacked input supported."""
    mat = _as_square(mat)
    return scipy.linalg.expm(mat)


def _skew_vec_3x3(rot):
    """Entries of the skew part: equals sin(angle) * axis for a rotation."""
    return 0.5 * np.stack(
        [
            rot[..., 2, 1] - rot[..., 1, 2],
            rot[..., 0, 2] - rot[..., 2, 0],
            rot[..., 1, 0] - rot[..., 0, 1],
        ],
        axis=-1,
    )


def _rotation_axis_angle_3x3(rot):
    """Axis (unit) and angle in [0, pi] of a stacked 3x3 rotation.

    The angle comes from atan2 of the skew and trace parts, well conditioned
    over the whole range. The axis is recovered from the skew part away from
    angle pi and from the symmetric rank-one part near pi, where the skew
    part degenerates.
    """
    rot = np.asarray(rot, dtype=float)
    skew_vec = _skew_vec_3x3(rot)
    sin_theta = np.linalg.norm(skew_vec, axis=-1)
    cos_theta = 0.5 * (np.trace(rot, axis1=-2, axis2=-1) - 1.0)
    theta = np.arctan2(sin_theta, cos_theta)

    axis_skew = skew_vec / np.where(sin_theta > 1e-12, sin_theta, 1.0)[..., None]

    # Near pi: (sym(R) - cos * I) / (1 - cos) = axis axis^T.
    denom = np.where(1.0 - cos_theta > 1e-12, 1.0 - cos_theta, 1.0)
    outer = (sym(rot) - cos_theta[..., None, None] * np.eye(3)) / denom[..., None, None]
    mags = np.sqrt(np.clip(np.diagonal(outer, axis1=-2, axis2=-1), 0.0, None))
    lead = np.argmax(mags, axis=-1)
    row = np.take_along_axis(outer, lead[..., None, None], axis=-2)[..., 0, :]
    lead_mag = np.take_along_axis(mags, lead[..., None], axis=-1)
    axis_sym = row / np.where(lead_mag > 0.0, lead_mag, 1.0)
    nrm = np.linalg.norm(axis_sym, axis=-1, keepdims=True)
    axis_sym = axis_sym / np.where(nrm > 0.0, nrm, 1.0)
    # Orient by the skew part while it still carries a sign.
    flip = np.sum(axis_sym * skew_vec, axis=-1, keepdims=True) < 0.0
    axis_sym = np.where(flip, -axis_sym, axis_sym)

    axis = np.where((theta > 0.5 * np.pi)[..., None], axis_sym, axis_skew)
    return axis, theta


def _log_rotation_2x2(rot):
    theta = np.arctan2(rot[..., 1, 0], rot[..., 0, 0])
    zero = np.zeros_like(theta)
    return np.stack(
        [np.stack([zero, -theta], axis=-1), np.stack([theta, zero], axis=-1)], axis=-2
    ), np.abs(theta)


def _log_rotation_3x3(rot):
    axis, theta = _rotation_axis_angle_3x3(rot)
    v = axis * theta[..., None]
    zero = np.zeros_like(theta)
    log = np.stack(
        [
            np.stack([zero, -v[..., 2], v[..., 1]], axis=-1),
            np.stack([v[..., 2], zero, -v[..., 0]], axis=-1),
            np.stack([-v[..., 1], v[..., 0], zero], axis=-1),
        ],
        axis=-2,
    )
    return log, theta


def _is_rotation(mat, atol):
    n = mat.shape[-1]
    ortho = (
        np.max(np.abs(transpose(mat) @ mat - np.eye(n)), axis=(-1, -2)) <= atol
    )
    return ortho & (np.linalg.det(mat) > 0)


def _log_general_2d(mat):
    """Principal logarithm of one general square matrix via inverse scaling-and-squaring."""
    eigvals = np.linalg.eigvals(mat)
    mags = np.abs(eigvals)
    if np.max(mags) == 0.0 or np.min(mags) <= 1e-12 * np.max(mags):
        raise DomainError("matrix log of a (numerically) singular matrix")
    on_neg_axis = (eigvals.real < 0) & (np.abs(eigvals.imag) <= 1e-12 * mags)
    if np.any(on_neg_axis):
        raise DomainError(
            "matrix log undefined: eigenvalue on the closed negative real axis"
        )
    log = scipy.linalg.logm(mat)
    if np.iscomplexobj(log):
        scale = 1.0 + np.max(np.abs(log.real))
        if np.max(np.abs(log.imag)) > 1e-8 * scale:
            raise DomainError("matrix log is not real for this input")
        log = log.real
    return log


def matrix_log(mat, atol=ATOL_SYM):
    """Principal matrix logarithm.

    Fast paths: symmetric positive definite input goes through ``sym_eig``;
    rotation matrices of size <= 3 use the axis-angle closed form. Everything
    else uses inverse scaling-and-squaring. Raises :class:`DomainError` for
    singular input or spectrum on the closed negative real axis.
    """
    mat = _as_square(mat)
    n = mat.shape[-1]

    if np.all(is_symmetric(mat, atol=atol)):
        w, v = sym_eig(mat, atol=atol)
        if np.any(w <= 0.0):
            raise DomainError("matrix log of a symmetric matrix needs positive eigenvalues")
        return (v * np.log(w)[..., None, :]) @ transpose(v)

    if n <= 3 and np.all(_is_rotation(mat, atol=1e-10)):
        if n == 1:
            raise DomainError("1x1 rotation fell through symmetric path")  # pragma: no cover
        log, theta = _log_rotation_2x2(mat) if n == 2 else _log_rotation_3x3(mat)
        if np.any(theta >= np.pi - 1e-12):
            raise DomainError("matrix log undefined at rotation angle pi")
        return log

    if mat.ndim == 2:
        return _log_general_2d(mat)
    flat = mat.reshape((-1, n, n))
    return np.stack([matrix_log(m, atol=atol) for m in flat]).reshape(mat.shape)


def qr(mat, rtol=RTOL_RANK):
    """Thin QR with sign-fixed positive diagonal of R.

    Requires ``cols <= rows`` and full column rank.
    """
    mat = _as_matrix(mat)
    m, n = mat.shape[-2:]
    if n > m:
        raise ShapeError(f"qr needs cols <= rows, got {m}x{n}")
    q, r = np.linalg.qr(mat)
    diag = np.abs(np.diagonal(r, axis1=-2, axis2=-1))
    if np.any(diag <= rtol * np.maximum(np.max(diag, axis=-1, keepdims=True), 1e-300)):
        raise DomainError("qr of a rank-deficient matrix")
    signs = np.where(np.diagonal(r, axis1=-2, axis2=-1) >= 0.0, 1.0, -1.0)
    return q * signs[..., None, :], r * signs[..., :, None]


def svd(mat):
    """Thin singular value decomposition ``mat = U @ diag(s) @ vt``."""
    mat = _as_matrix(mat)
    return np.linalg.svd(mat, full_matrices=False)


def sym_function(mat, fn, atol=ATOL_SYM):
    """Apply a scalar function to a symmetric matrix through its eigenvalues."""
    w, v = sym_eig(mat, atol=atol)
    return (v * fn(w)[..., None, :]) @ transpose(v)


def sym_function_derivative(mat, direction, fn, dfn, atol=ATOL_SYM):
    """Frechet derivative of a spectral function at a symmetric matrix.

    Daleckii-Krein: in the eigenbasis of ``mat`` the derivative acts entrywise
    by first divided differences of ``fn`` (``dfn`` on near-coincident pairs).
    ``direction`` must be symmetric.
    """
    w, v = sym_eig(mat, atol=atol)
    direction = sym(np.asarray(direction, dtype=float))
    coeffs = transpose(v) @ direction @ v
    li = w[..., :, None]
    lj = w[..., None, :]
    gap = li - lj
    scale = np.maximum(np.max(np.abs(w), axis=-1), 1.0)[..., None, None]
    small = np.abs(gap) <= _EIG_GAP_RTOL * scale
    safe_gap = np.where(small, 1.0, gap)
    loewner = np.where(small, dfn(0.5 * (li + lj)), (fn(li) - fn(lj)) / safe_gap)
    return v @ (loewner * coeffs) @ transpose(v)


def sym_sqrt(mat):
    w, v = sym_eig(mat)
    if np.any(w <= 0.0):
        raise DomainError("matrix square root needs positive eigenvalues")
    return (v * np.sqrt(w)[..., None, :]) @ transpose(v)


def sym_inv_sqrt(mat):
    w, v = sym_eig(mat)
    if np.any(w <= 0.0):
        raise DomainError("inverse square root needs positive eigenvalues")
    return (v / np.sqrt(w)[..., None, :]) @ transpose(v)
