"""JSON codecs for algebra descriptors, elements, weights and traces.

Complex scalars are written as ``[re, im]``; on input a bare number or a
string such as ``"1-2j"`` is accepted as well.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from .algebra import Algebra, Element, FiniteSpace
from .beurling import BeurlingAlgebra, WeightSequence
from .extension import ArensHoffman, make_extension
from .poly import AlgebraPoly, MonicPoly


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class MatrixOver:
    """Descriptor for k x k matrices over a base algebra (not itself commutative)."""

    base: Algebra
    size: int
    kind = "matrix-over"


def complex_from_json(v: Any) -> complex:
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise ConfigError(f"complex must be [re, im], got {v!r}")
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, str):
        return complex(v.replace(" ", "").replace("i", "j"))
    if isinstance(v, (int, float)):
        return complex(v)
    raise ConfigError(f"cannot read a complex number from {v!r}")


def complex_to_json(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def weight_from_json(obj: dict) -> WeightSequence:
    kind = obj.get("kind", "constant")
    r = float(obj.get("r", 1.0))
    if kind == "table":
        window = obj.get("window") or {}
        if obj.get("extension", "geometric") != "geometric":
            raise ConfigError("table weights support only the 'geometric' extension rule")
        return WeightSequence("table", r, int(window.get("lo", 0)), tuple(window.get("values", ())),
                              obj.get("r_minus"))
    return WeightSequence(kind, r)


def weight_to_json(w: WeightSequence) -> dict:
    out = {"kind": w.kind, "r": w.r}
    if w.kind == "table":
        out.update(window={"lo": w.lo, "values": list(w.values)}, extension="geometric")
        if w.r_minus is not None:
            out["r_minus"] = w.r_minus
    return out


def descriptor_from_json(obj: dict):
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ConfigError(f"descriptor needs a 'kind': {obj!r}")
    kind = obj["kind"]
    if kind == "finite-space":
        return FiniteSpace(int(obj.get("n_pts", 1)))
    if kind == "beurling":
        return BeurlingAlgebra(weight_from_json(obj.get("weight", {})))
    if kind == "arens-hoffman-over":
        base = descriptor_from_json(obj["base"])
        coeffs = [element_from_json(base, c) for c in obj["alpha"]]
        alpha = MonicPoly(AlgebraPoly(base, tuple(coeffs)))
        return make_extension(base, alpha, obj.get("t"))
    if kind == "matrix-over":
        return MatrixOver(descriptor_from_json(obj["base"]), int(obj["size"]))
    raise ConfigError(f"unknown descriptor kind {kind!r}")


def descriptor_to_json(alg) -> dict:
    if isinstance(alg, FiniteSpace):
        return {"kind": "finite-space", "n_pts": alg.n_pts}
    if isinstance(alg, BeurlingAlgebra):
        return {"kind": "beurling", "weight": weight_to_json(alg.weight)}
    if isinstance(alg, ArensHoffman):
        return {"kind": "arens-hoffman-over", "base": descriptor_to_json(alg.base),
                "alpha": [element_to_json(c) for c in alg.alpha.base.coeffs], "t": alg.t}
    if isinstance(alg, MatrixOver):
        return {"kind": "matrix-over", "base": descriptor_to_json(alg.base), "size": alg.size}
    raise ConfigError(f"no JSON form for {alg!r}")


def element_from_json(alg: Algebra, obj: Any) -> Element:
    if isinstance(obj, (int, float, str)):
        return alg.scalar(complex_from_json(obj))
    if isinstance(alg, FiniteSpace):
        if alg.n_pts == 1 and len(obj) == 2 and all(isinstance(v, (int, float)) for v in obj):
            return alg.scalar(complex_from_json(obj))  # [re, im] cannot be a 2-vector here
        return alg.element([complex_from_json(v) for v in obj])
    if isinstance(alg, BeurlingAlgebra):
        if isinstance(obj, dict) and "terms" in obj:
            return alg.from_dict({int(k): complex_from_json(v) for k, v in obj["terms"].items()})
        return alg.element([complex_from_json(v) for v in obj["coeffs"]], int(obj.get("lo", 0)))
    if isinstance(alg, ArensHoffman):
        return alg.element([element_from_json(alg.base, c) for c in obj])
    raise ConfigError(f"cannot decode elements of {alg.label()}")


def element_to_json(x: Element):
    alg = x.algebra
    if isinstance(alg, FiniteSpace):
        return [complex_to_json(v) for v in x.data]
    if isinstance(alg, BeurlingAlgebra):
        lo, c = x.data
        return {"lo": lo, "coeffs": [complex_to_json(v) for v in c]}
    if isinstance(alg, ArensHoffman):
        return [element_to_json(b) for b in x.data]
    raise ConfigError(f"cannot encode elements of {alg.label()}")


def matrix_from_json(alg: Algebra, rows) -> list[list[Element]]:
    return [[element_from_json(alg, v) for v in row] for row in rows]


def to_jsonable(obj):
    """Best-effort conversion of numpy / complex values for ``json.dumps``."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, Element):
        return element_to_json(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return complex_to_json(obj)
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, np.generic):
        return obj.item()
    return obj
