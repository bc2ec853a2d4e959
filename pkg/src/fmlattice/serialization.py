"""JSON encoding of matrices, maps, points and group elements.

Integers and fractions are written as decimal strings (``"12"``, ``"-3/4"``)
so that consumers never truncate them; counts are plain JSON integers.
Readers accept either form.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from pathlib import Path
from typing import Any

from .autoeq import AutoeqElement, TorsionPoint
from .cocycle import UtildeElement
from .errors import ValidationError
from .homs import DoubledMap, VarietyModel
from .isometry import UElement
from .linalg import Matrix


def number_to_json(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def number_from_json(v) -> Fraction | int:
    if isinstance(v, bool):
        raise ValidationError(f"not a number: {v!r}")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            f = Fraction(v.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"not an exact number: {v!r}") from exc
        return f.numerator if f.denominator == 1 else f
    raise ValidationError(f"numbers must be integers or strings, got {v!r}")


def degree_to_json(d) -> str:
    return "inf" if d == math.inf else str(d)


def matrix_to_json(m: Matrix) -> list[list[str]]:
    return [[number_to_json(x) for x in row] for row in m.tolist()]


def matrix_from_json(v) -> Matrix:
    if not isinstance(v, list) or not all(isinstance(r, list) for r in v):
        raise ValidationError("a matrix is a list of rows")
    if v and len({len(r) for r in v}) != 1:
        raise ValidationError("matrix rows have different lengths")
    return Matrix([[number_from_json(x) for x in r] for r in v], len(v[0]) if v else 0)


def load_json(arg: str) -> Any:
    """Inline JSON when the argument starts with ``[`` or ``{``, else a file path."""
    text = arg.strip()
    if not text.startswith(("[", "{")):
        try:
            text = Path(arg).read_text()
        except OSError as exc:
            raise ValidationError(f"cannot read {arg}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON: {exc.msg} at line {exc.lineno}") from exc


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


# models --------------------------------------------------------------------------

def parse_model(text: str) -> VarietyModel:
    """``elliptic-power:n``, ``polarized-scalar:N`` or ``lattice:<json or file>``."""
    kind, sep, arg = text.partition(":")
    if not sep:
        raise ValidationError(f"model must look like kind:argument, got {text!r}")
    if kind in ("elliptic-power", "polarized-scalar"):
        try:
            k = int(arg)
        except ValueError as exc:
            raise ValidationError(f"{kind} needs an integer, got {arg!r}") from exc
        return VarietyModel.elliptic_power(k) if kind == "elliptic-power" else VarietyModel.polarized_scalar(k)
    if kind == "lattice":
        data = load_json(arg)
        if isinstance(data, list):
            ample = matrix_from_json(data)
            return VarietyModel.lattice(ample.rows // 2, ample)
        return model_from_json(data)
    raise ValidationError(f"unknown model kind {kind!r}")


def model_to_json(model: VarietyModel) -> dict:
    return {"kind": model.kind, "dim": model.dim, "level": model.level,
            "ample_class": matrix_to_json(model.ample_class)}


def model_from_json(v: dict) -> VarietyModel:
    try:
        kind = v.get("kind", "lattice")
        ample = matrix_from_json(v["ample_class"])
        dim = int(v.get("dim", ample.rows // 2))
    except (KeyError, AttributeError, TypeError) as exc:
        raise ValidationError("model needs an ample_class matrix") from exc
    return VarietyModel(kind, dim, ample, int(v.get("level", 1)))


# maps and elements -----------------------------------------------------------------

def doubled_from_json(v, source: VarietyModel, target: VarietyModel | None = None) -> DoubledMap:
    """A map given as a bare matrix, ``{"matrix": ...}``, ``{"x", "y", "z", "w"}`` blocks
    or ``{"scalars": [a, b, c, d]}``."""
    target = target or source
    if isinstance(v, list):
        return DoubledMap.from_matrix(source, target, matrix_from_json(v))
    if not isinstance(v, dict):
        raise ValidationError("a map is a matrix or an object")
    if "matrix" in v:
        return DoubledMap.from_matrix(source, target, matrix_from_json(v["matrix"]))
    if "scalars" in v:
        if source != target:
            raise ValidationError("scalar form needs equal source and target")
        parts = v["scalars"]
        if not isinstance(parts, list) or len(parts) != 4:
            raise ValidationError("scalars must be [a, b, c, d]")
        vals = [matrix_from_json(p) if isinstance(p, list) else number_from_json(p) for p in parts]
        return DoubledMap.from_scalars(source, *vals)
    if all(k in v for k in "xyzw"):
        return DoubledMap.from_blocks(source, target, *(matrix_from_json(v[k]) for k in "xyzw"))
    raise ValidationError("map object needs matrix, scalars or x/y/z/w")


def doubled_to_json(f: DoubledMap) -> dict:
    out: dict = {"matrix": matrix_to_json(f.matrix)}
    s = f.scalars()
    if s is not None:
        out["scalars"] = [matrix_to_json(m) if m.rows > 1 else number_to_json(m[0, 0]) for m in s]
    return out


def uelement_from_json(v, model: VarietyModel) -> UElement:
    return UElement(doubled_from_json(v, model))


def point_to_json(p: TorsionPoint) -> list[str]:
    return [number_to_json(c) for c in p.coords]


def point_from_json(v) -> TorsionPoint:
    if not isinstance(v, list):
        raise ValidationError("a torsion point is a list of fractions")
    return TorsionPoint([number_from_json(c) for c in v])


def utilde_from_json(v, model: VarietyModel) -> UtildeElement:
    if isinstance(v, dict) and "g" in v:
        return UtildeElement(uelement_from_json(v["g"], model), _int(v.get("shift", 0)))
    return UtildeElement(uelement_from_json(v, model), 0)


def utilde_to_json(u: UtildeElement) -> dict:
    return {"shift": u.shift, "g": doubled_to_json(u.g.underlying)}


def autoeq_from_json(v, model: VarietyModel) -> AutoeqElement:
    if not isinstance(v, dict) or "g" not in v:
        raise ValidationError("an autoequivalence is {shift, point, g}")
    g = uelement_from_json(v["g"], model)
    point = point_from_json(v["point"]) if "point" in v else TorsionPoint.zero(g.matrix.cols)
    return AutoeqElement(_int(v.get("shift", 0)), point, g)


def autoeq_to_json(a: AutoeqElement) -> dict:
    return {"shift": a.shift, "point": point_to_json(a.point), "g": doubled_to_json(a.g.underlying)}


def _int(v) -> int:
    n = number_from_json(v)
    if not isinstance(n, int):
        raise ValidationError(f"expected an integer, got {v!r}")
    return n
