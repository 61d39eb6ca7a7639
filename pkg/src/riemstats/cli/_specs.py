"""Wire formats: manifold specs, point codecs, dataset loading.

A manifold spec is a JSON object with a ``name`` plus dimension parameters,
an optional ``metric`` family selector, and an optional ``representation``.
Unknown fields are rejected. Points are JSON arrays matching the manifold's
point shape (rigid motions may also be ``{"rotation", "translation"}``
objects); datasets are ``{"points": [...]}`` with optional ``labels`` and
``weights``, membership-validated on load.
"""

from __future__ import annotations

import json
import sys

import numpy as np

from ..errors import MembershipError
from ..geometry import (
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
    homogeneous_from_parts,
    matrix_from_rotation_vector,
    rotation_part,
    tangent_from_parts,
    translation_part,
)

MEMBERSHIP_ATOL = 1e-8


class SchemaError(ValueError):
    """Invalid CLI input: bad JSON, unknown fields, wrong shapes."""

    code = "invalid_input"


def _require(condition, message):
    if not condition:
        raise SchemaError(message)


def _take(spec, required, optional=()):
    """Pop known fields; reject unknown ones."""
    spec = dict(spec)
    out = {}
    for key in required:
        _require(key in spec, f"manifold spec is missing required field '{key}'")
        out[key] = spec.pop(key)
    for key in optional:
        if key in spec:
            out[key] = spec.pop(key)
    _require(not spec, f"unknown fields in spec: {sorted(spec)}")
    return out


def _positive_int(value, name):
    _require(isinstance(value, int) and not isinstance(value, bool) and value >= 1,
             f"'{name}' must be a positive integer")
    return value


def _metric_family(spec, allowed, default):
    metric_spec = spec.get("metric")
    if metric_spec is None:
        return default, {}
    _require(isinstance(metric_spec, dict), "'metric' must be an object")
    metric_spec = dict(metric_spec)
    family = metric_spec.pop("family", default)
    _require(family in allowed, f"metric family must be one of {sorted(allowed)}")
    return family, metric_spec


class PointCodec:
    """Default codec: points and tangents are plain (nested) JSON arrays."""

    def __init__(self, point_shape, tangent_shape=None):
        self.point_shape = tuple(point_shape)
        self.tangent_shape = tuple(tangent_shape or point_shape)

    def _decode(self, obj, shape, what):
        arr = np.asarray(obj, dtype=float)
        _require(
            arr.shape[len(arr.shape) - len(shape):] == shape and arr.ndim <= len(shape) + 1,
            f"{what} must have shape {list(shape)} (optionally batched), got {list(arr.shape)}",
        )
        _require(bool(np.all(np.isfinite(arr))), f"{what} has non-finite entries")
        return arr

    def decode_point(self, obj):
        return self._decode(obj, self.point_shape, "point")

    def decode_tangent(self, obj):
        return self._decode(obj, self.tangent_shape, "tangent vector")

    def encode(self, arr):
        return np.asarray(arr, dtype=float).tolist()


class RigidCodec(PointCodec):
    """SE(n) points as homogeneous matrices or rotation/translation objects."""

    def __init__(self, n):
        super().__init__((n + 1, n + 1))
        self.n = n

    def _from_parts(self, obj, assemble, what):
        obj = dict(obj)
        translation = obj.pop("translation", None)
        rotation = obj.pop("rotation", None)
        rotation_vector = obj.pop("rotation_vector", None)
        _require(not obj, f"unknown fields in {what}: {sorted(obj)}")
        _require(translation is not None, f"{what} needs a 'translation'")
        if rotation_vector is not None:
            _require(rotation is None, f"{what} takes 'rotation' or 'rotation_vector', not both")
            _require(self.n == 3, "'rotation_vector' is only available for n=3")
            rotation = matrix_from_rotation_vector(np.asarray(rotation_vector, dtype=float))
        _require(rotation is not None, f"{what} needs a 'rotation' or 'rotation_vector'")
        rotation = np.asarray(rotation, dtype=float)
        translation = np.asarray(translation, dtype=float)
        _require(rotation.shape[-2:] == (self.n, self.n), f"{what} rotation must be {self.n}x{self.n}")
        _require(translation.shape[-1:] == (self.n,), f"{what} translation must have length {self.n}")
        return assemble(rotation, translation)

    def decode_point(self, obj):
        if isinstance(obj, dict):
            return self._from_parts(obj, homogeneous_from_parts, "pose")
        return super().decode_point(obj)

    def decode_tangent(self, obj):
        if isinstance(obj, dict):
            return self._from_parts(obj, tangent_from_parts, "pose velocity")
        return super().decode_tangent(obj)

    def encode(self, arr):
        arr = np.asarray(arr, dtype=float)
        return {
            "rotation": rotation_part(arr).tolist(),
            "translation": translation_part(arr).tolist(),
        }


def resolve_manifold(spec):
    """Manifold spec object -> (manifold, metric, codec)."""
    _require(isinstance(spec, dict), "manifold spec must be a JSON object")
    name = spec.get("name")
    _require(isinstance(name, str), "manifold spec needs a 'name'")

    if name == "euclidean":
        fields = _take(spec, ["name", "n"])
        manifold = Euclidean(_positive_int(fields["n"], "n"))
        return manifold, manifold.metric, PointCodec(manifold.point_shape)

    if name == "minkowski":
        fields = _take(spec, ["name", "n"])
        manifold = Minkowski(_positive_int(fields["n"], "n"))
        return manifold, manifold.metric, PointCodec(manifold.point_shape)

    if name == "hypersphere":
        fields = _take(spec, ["name", "n"], ["representation"])
        _require(fields.get("representation", "extrinsic") == "extrinsic",
                 "hypersphere only has the 'extrinsic' representation")
        manifold = Hypersphere(_positive_int(fields["n"], "n"))
        return manifold, manifold.metric, PointCodec(manifold.point_shape)

    if name == "hyperbolic":
        fields = _take(spec, ["name", "n"], ["representation"])
        representation = fields.get("representation", "hyperboloid")
        _require(representation in ("hyperboloid", "ball"),
                 "hyperbolic representation must be 'hyperboloid' or 'ball'")
        n = _positive_int(fields["n"], "n")
        manifold = Hyperboloid(n) if representation == "hyperboloid" else PoincareBall(n)
        return manifold, manifold.metric, PointCodec(manifold.point_shape)

    if name == "spd":
        fields = _take(spec, ["name", "n"], ["metric"])
        family, extra = _metric_family(
            fields, {"affine-invariant", "log-euclidean"}, "affine-invariant"
        )
        _require(not extra, f"unknown metric fields: {sorted(extra)}")
        manifold = SPDMatrices(_positive_int(fields["n"], "n"))
        metric = (
            manifold.affine_invariant_metric
            if family == "affine-invariant"
            else manifold.log_euclidean_metric
        )
        return manifold, metric, PointCodec(manifold.point_shape)

    if name == "so":
        fields = _take(spec, ["name", "n"], ["metric"])
        family, extra = _metric_family(fields, {"bi-invariant"}, "bi-invariant")
        _require(not extra, f"unknown metric fields: {sorted(extra)}")
        manifold = SpecialOrthogonal(_positive_int(fields["n"], "n"))
        return manifold, manifold.bi_invariant_metric, PointCodec(manifold.point_shape)

    if name == "se":
        fields = _take(spec, ["name", "n"], ["metric"])
        family, extra = _metric_family(
            fields, {"left-invariant", "right-invariant"}, "left-invariant"
        )
        inner_matrix = extra.pop("inner_matrix", None)
        _require(not extra, f"unknown metric fields: {sorted(extra)}")
        manifold = SpecialEuclidean(_positive_int(fields["n"], "n"))
        side = "left" if family == "left-invariant" else "right"
        if inner_matrix is not None:
            inner_matrix = np.asarray(inner_matrix, dtype=float)
        metric = manifold.invariant_metric(side=side, inner_matrix=inner_matrix)
        return manifold, metric, RigidCodec(manifold.n)

    if name == "gl":
        fields = _take(spec, ["name", "n"])
        manifold = GeneralLinear(_positive_int(fields["n"], "n"))
        return manifold, manifold.metric, PointCodec(manifold.point_shape)

    if name == "stiefel":
        fields = _take(spec, ["name", "n", "p"])
        manifold = Stiefel(_positive_int(fields["n"], "n"), _positive_int(fields["p"], "p"))
        return manifold, manifold.canonical_metric, PointCodec(manifold.point_shape)

    if name == "grassmann":
        fields = _take(spec, ["name", "n", "p"])
        manifold = Grassmann(_positive_int(fields["n"], "n"), _positive_int(fields["p"], "p"))
        return manifold, manifold.metric, PointCodec(manifold.point_shape)

    if name == "curves":
        fields = _take(spec, ["name", "k", "d"], ["metric"])
        family, extra = _metric_family(fields, {"l2", "srv"}, "l2")
        _require(not extra, f"unknown metric fields: {sorted(extra)}")
        manifold = DiscretizedCurves(
            _positive_int(fields["k"], "k"), _positive_int(fields["d"], "d")
        )
        metric = manifold.l2_metric if family == "l2" else manifold.srv_metric
        return manifold, metric, PointCodec(manifold.point_shape, metric.tangent_shape)

    if name == "landmarks":
        fields = _take(spec, ["name", "k", "base"])
        base_manifold, base_metric, base_codec = resolve_manifold(fields["base"])
        _require(isinstance(base_codec, PointCodec) and type(base_codec) is PointCodec,
                 "landmarks on this base manifold are not supported")
        manifold = Landmarks(base_manifold, _positive_int(fields["k"], "k"))
        from ..geometry import LandmarksMetric

        metric = LandmarksMetric(manifold, base_metric)
        return manifold, metric, PointCodec(manifold.point_shape)

    raise SchemaError(f"unknown manifold name '{name}'")


def read_json_source(source, what):
    """Read JSON from inline text, '-' (stdin), or a file path."""
    text = None
    if source == "-":
        text = sys.stdin.read()
    elif source.lstrip().startswith(("{", "[")):
        text = source
    else:
        try:
            with open(source, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise SchemaError(f"cannot read {what} from '{source}': {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{what} is not valid JSON: {exc}") from exc


def load_dataset(source, manifold, codec, validate=True, atol=MEMBERSHIP_ATOL):
    """Load ``{"points", "labels"?, "weights"?}`` (JSON) or a flat-vector CSV."""
    if not source.lstrip().startswith(("{", "[")) and source.endswith(".csv"):
        _require(
            len(manifold.point_shape) == 1,
            "CSV datasets are only supported for flat point arrays (one point per row)",
        )
        try:
            points = np.loadtxt(source, delimiter=",", ndmin=2)
        except OSError as exc:
            raise SchemaError(f"cannot read dataset from '{source}': {exc}") from exc
        payload = {"points": points.tolist()}
    else:
        payload = read_json_source(source, "dataset")
    _require(isinstance(payload, dict) and "points" in payload, "dataset needs a 'points' field")
    extra = set(payload) - {"points", "labels", "weights"}
    _require(not extra, f"unknown dataset fields: {sorted(extra)}")

    raw_points = payload["points"]
    _require(isinstance(raw_points, list) and raw_points, "'points' must be a non-empty array")
    points = np.stack([codec.decode_point(p) for p in raw_points])
    _require(
        points.ndim == len(manifold.point_shape) + 1,
        "every dataset point must have the manifold's point shape",
    )

    labels = payload.get("labels")
    if labels is not None:
        labels = np.asarray(labels)
        _require(labels.shape == (len(raw_points),), "'labels' must have one entry per point")
    weights = payload.get("weights")
    if weights is not None:
        weights = np.asarray(weights, dtype=float)
        _require(weights.shape == (len(raw_points),), "'weights' must have one entry per point")

    if validate:
        residuals = manifold.membership_residual(points)
        bad = np.nonzero(residuals > atol)[0]
        if bad.size:
            raise MembershipError(
                f"dataset points {bad.tolist()} fail the {manifold.name} "
                f"membership check at tolerance {atol}"
            )
    return points, labels, weights


def to_jsonable(value):
    """Recursively convert numpy containers to plain JSON types."""
    if isinstance(value, dict):
        return {k: to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.integer, int)) and not isinstance(value, bool):
        return int(value)
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    return value
