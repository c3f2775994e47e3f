"""JSON encoding of series objects and fixture files.

Every object is wrapped as ``{"kind": ..., "nvars": ..., "data": ...,
"version": ...}`` so it can be decoded without outside context.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional, Union

from .exact import LaurentPoly, PoleFraction
from .jacobi import JacobiSeries
from .lifts import FJSeries
from .qseries import QSeries
from .qseries import qseries_from_json as _qseries_from_json
from .report import VerifyReport

Series = Union[QSeries, JacobiSeries, FJSeries]
FORMAT_VERSION = 1


def _coeff_from_json(d, nvars: Optional[int]):
    if isinstance(d, dict) and "num" in d:
        return Fraction(int(d["num"]), int(d["den"]))
    if isinstance(d, dict):
        num = LaurentPoly.from_json(len(d["pole_orders"]), d["numerator"])
        return PoleFraction.make(num, tuple(d["pole_orders"]))
    return LaurentPoly.from_json(nvars, d)


def _zero(nvars: Optional[int]):
    return Fraction(0) if nvars is None else LaurentPoly.zero(nvars)


def qseries_from_json(d: dict, nvars: Optional[int]) -> QSeries:
    return _qseries_from_json(d, lambda c: _coeff_from_json(c, nvars), _zero(nvars))


def encode(obj: Any) -> Dict[str, Any]:
    return dict(_encode(obj), version=FORMAT_VERSION)


def _encode(obj: Any) -> Dict[str, Any]:
    if isinstance(obj, VerifyReport):
        return {"kind": "report", "data": obj.to_dict()}
    if isinstance(obj, FJSeries):
        return {"kind": "fourier-jacobi", "nvars": obj.nvars, "data": obj.to_json()}
    if isinstance(obj, JacobiSeries):
        return {"kind": "jacobi", "nvars": obj.nvars, "data": obj.to_json()}
    if isinstance(obj, QSeries):
        nvars = None if isinstance(obj.zero, Fraction) else obj.zero.nvars
        return {"kind": "qseries", "nvars": nvars, "data": obj.to_json()}
    raise TypeError(f"cannot encode {type(obj).__name__}")


def decode(d: Dict[str, Any]) -> Any:
    if d.get("version", FORMAT_VERSION) != FORMAT_VERSION:
        raise ValueError(f"fixture format {d['version']} is not {FORMAT_VERSION}")
    kind = d["kind"]
    data = d["data"]
    if kind == "report":
        return VerifyReport.from_dict(data)
    nvars = d.get("nvars")
    if kind == "qseries":
        return qseries_from_json(data, nvars)
    if kind == "jacobi":
        return JacobiSeries(data["weight"], data["nvars"], data["index"],
                            qseries_from_json(data["series"], data["nvars"]))
    if kind == "fourier-jacobi":
        layers = [qseries_from_json(l, nvars) for l in data["layers"]]
        return FJSeries(data["weight"], nvars, layers, data["lattice"])
    raise ValueError(f"unknown kind {kind!r}")


def dumps(obj: Any) -> str:
    return json.dumps(encode(obj), indent=1, sort_keys=True)


def loads(text: str) -> Any:
    return decode(json.loads(text))


def write_fixture(directory: Union[str, Path], name: str, obj: Any) -> Path:
    path = Path(directory) / f"{name}.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(obj) + "\n")
    return path


def read_fixture(directory: Union[str, Path], name: str) -> Any:
    return loads((Path(directory) / f"{name}.json").read_text())
