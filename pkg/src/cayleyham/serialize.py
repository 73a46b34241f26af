"""JSON forms of group specs, elements and certificates (``"format": 1``)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Sequence

from .cayley import Certificate
from .errors import InvalidElement, SerializationError
from .groups import (
    Cyclic,
    DirectProduct,
    FiniteGroup,
    GroupSpec,
    Permutation,
    SemidirectCyclic,
    SemidirectMetacyclic,
    Table,
    build_group,
)

FORMAT = 1


def spec_to_json(spec: GroupSpec) -> dict:
    if isinstance(spec, Cyclic):
        return {"type": "cyclic", "n": spec.n}
    if isinstance(spec, DirectProduct):
        return {"type": "direct_product", "factors": [spec_to_json(f) for f in spec.factors]}
    if isinstance(spec, SemidirectCyclic):
        return {"type": "semidirect_cyclic", "m": spec.m, "p": spec.p, "u": spec.u}
    if isinstance(spec, SemidirectMetacyclic):
        return {"type": "semidirect_metacyclic", "alpha": spec.alpha, "beta": spec.beta, "p": spec.p, "r": spec.r}
    if isinstance(spec, Permutation):
        return {"type": "permutation", "degree": spec.degree, "generators": [list(g) for g in spec.generators]}
    if isinstance(spec, Table):
        return {"type": "table", "order": spec.order, "table": [list(r) for r in spec.table]}
    raise SerializationError(f"unknown spec {spec!r}")


def _ints(obj: Any, key: str) -> int:
    v = obj.get(key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise SerializationError(f"field {key!r} must be an integer")
    return v


def spec_from_json(obj: Any) -> GroupSpec:
    if not isinstance(obj, dict) or "type" not in obj:
        raise SerializationError("group spec must be an object with a 'type' field")
    t = obj["type"]
    try:
        if t == "cyclic":
            return Cyclic(_ints(obj, "n"))
        if t == "direct_product":
            return DirectProduct(tuple(spec_from_json(f) for f in obj["factors"]))
        if t == "semidirect_cyclic":
            return SemidirectCyclic(_ints(obj, "m"), _ints(obj, "p"), _ints(obj, "u"))
        if t == "semidirect_metacyclic":
            return SemidirectMetacyclic(_ints(obj, "alpha"), _ints(obj, "beta"), _ints(obj, "p"), _ints(obj, "r"))
        if t == "permutation":
            return Permutation(_ints(obj, "degree"), tuple(tuple(int(x) for x in g) for g in obj["generators"]))
        if t == "table":
            return Table(_ints(obj, "order"), tuple(tuple(int(x) for x in r) for r in obj["table"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise SerializationError(f"malformed {t} spec: {exc}") from exc
    raise SerializationError(f"unknown spec type {t!r}")


def element_to_json(G: FiniteGroup, g: int) -> Any:
    """Coordinate array, or the bare index for table groups."""
    if isinstance(G.spec, Table):
        return int(g)
    return [int(x) for x in G.coord(g)]


def element_from_json(G: FiniteGroup, obj: Any) -> int:
    if isinstance(obj, int) and not isinstance(obj, bool):
        coord = (obj,)
    elif isinstance(obj, list):
        coord = tuple(obj)
    else:
        raise SerializationError(f"element must be an integer or an array, got {obj!r}")
    try:
        return G.index(coord)
    except InvalidElement as exc:
        raise SerializationError(str(exc)) from exc


@dataclass
class Document:
    """A group with optional generators, as stored in input files."""

    spec: GroupSpec
    generators: list | None = None  # JSON element forms
    strict: bool = True

    def build(self) -> FiniteGroup:
        return build_group(self.spec, strict=self.strict)


def document_to_json(spec: GroupSpec, generators: Sequence | None = None, strict: bool = True) -> dict:
    out: dict = {"format": FORMAT, "group": spec_to_json(spec)}
    if generators is not None:
        out["generators"] = list(generators)
    if not strict:
        out["strict"] = False
    return out


def document_from_json(obj: Any) -> Document:
    """Accepts a full document or a bare spec object."""
    if isinstance(obj, dict) and "group" in obj:
        _check_format(obj)
        return Document(spec_from_json(obj["group"]), obj.get("generators"), bool(obj.get("strict", True)))
    return Document(spec_from_json(obj))


def _check_format(obj: dict) -> None:
    if obj.get("format", FORMAT) != FORMAT:
        raise SerializationError(f"unsupported format {obj.get('format')!r}")


def certificate_to_json(G: FiniteGroup, S: Sequence[int], c: Certificate, strict: bool = True) -> dict:
    out = {
        "format": FORMAT,
        "group": spec_to_json(G.spec),
        "generators": [element_to_json(G, s) for s in S],
        "start": element_to_json(G, c.start),
        "labels": list(c.labels),
        "kind": c.kind,
    }
    if not strict:
        out["strict"] = False
    return out


def certificate_from_json(obj: Any) -> tuple[FiniteGroup, list[int], Certificate]:
    if not isinstance(obj, dict):
        raise SerializationError("certificate must be a JSON object")
    _check_format(obj)
    try:
        G = build_group(spec_from_json(obj["group"]), strict=bool(obj.get("strict", True)))
        S = [element_from_json(G, s) for s in obj["generators"]]
        c = Certificate(obj["kind"], element_from_json(G, obj["start"]), tuple(obj["labels"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise SerializationError(f"malformed certificate: {exc}") from exc
    return G, S, c


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"
