"""Deterministic, big-integer-safe JSON persistence.

Documents are single-line canonical JSON: fixed key order, separators
without whitespace, UTF-8, newline-terminated.  Two writes of the same
object are byte-identical across runs and platforms.

Integer fields hold plain JSON numbers while they fit in 2**53 - 1 and
switch to decimal strings above that, so files stay exact for the gadget
instances (whose entries blow past 64 bits immediately) yet remain
readable by generic tooling.  Readers accept both encodings for any
integer field.  Unknown fields are ignored with a warning collected on
the result rather than raised.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

from .core import Assignment, Instance, RatioForm, validate_instance
from .reductions import ReductionParams

PathLike = Union[str, Path]

MAX_PLAIN_INT = 2**53 - 1

IoError = OSError


class ParseError(ValueError):
    """A document is not structurally valid."""


@dataclass
class LoadedInstance:
    """An instance plus whatever optional blocks the document carried."""

    instance: Instance
    params: Optional[ReductionParams] = None
    labels_a: Optional[tuple[str, ...]] = None
    labels_b: Optional[tuple[str, ...]] = None
    warnings: list[str] = field(default_factory=list)


def encode_int(v: int) -> Union[int, str]:
    """Plain number while exact in a double, decimal string beyond."""
    return v if abs(v) <= MAX_PLAIN_INT else str(v)


def _decode_int(x: object, where: str) -> int:
    if isinstance(x, bool):
        raise ParseError(f"{where}: expected integer, got boolean")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        stripped = x[1:] if x.startswith("-") else x
        if stripped.isdigit():
            return int(x)
        raise ParseError(f"{where}: not a decimal integer string: {x!r}")
    raise ParseError(f"{where}: expected integer or decimal string, got {type(x).__name__}")


def _decode_int_list(x: object, where: str) -> list[int]:
    if not isinstance(x, list):
        raise ParseError(f"{where}: expected an array")
    return [_decode_int(v, f"{where}[{i}]") for i, v in enumerate(x)]


def canonical_bytes(doc: dict) -> bytes:
    """Serialize a document dict in canonical form (caller fixes key order)."""
    return (json.dumps(doc, separators=(",", ":"), ensure_ascii=False) + "\n").encode("utf-8")


def _emit(data: bytes, path: Optional[PathLike]) -> bytes:
    if path is not None:
        Path(path).write_bytes(data)
    return data


def write_instance(
    inst: Instance,
    params: Optional[ReductionParams] = None,
    labels: Optional[tuple[Sequence[str], Sequence[str]]] = None,
    path: Optional[PathLike] = None,
) -> bytes:
    """Canonical instance document; key order m, a, b, params, labels."""
    doc: dict = {
        "m": inst.m,
        "a": [encode_int(v) for v in inst.a],
        "b": [encode_int(v) for v in inst.b],
    }
    if params is not None:
        doc["params"] = {
            "kind": params.kind,
            "K": encode_int(params.K),
            "N": encode_int(params.N),
            "L": encode_int(params.L),
            "M": encode_int(params.M),
            "target": {
                "num": encode_int(params.target_ratio.p),
                "den": encode_int(params.target_ratio.q),
            },
        }
    if labels is not None:
        doc["labels"] = {"a": list(labels[0]), "b": list(labels[1])}
    return _emit(canonical_bytes(doc), path)


def _parse_doc(path: PathLike) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top level must be an object")
    return doc


def _decode_params(block: object, warnings: list[str]) -> ReductionParams:
    if not isinstance(block, dict):
        raise ParseError("params: expected an object")
    known = {"kind", "K", "N", "L", "M", "target"}
    for key in block:
        if key not in known:
            warnings.append(f"ignored unknown params field {key!r}")
    for key in known:
        if key not in block:
            raise ParseError(f"params: missing field {key!r}")
    kind = block["kind"]
    if kind not in ("Q2", "Q2'", "Q4"):
        raise ParseError(f"params: unknown kind {kind!r}")
    target = block["target"]
    if not isinstance(target, dict) or set(target) - {"num", "den"}:
        raise ParseError("params.target: expected an object with num and den")
    return ReductionParams(
        kind=kind,
        K=_decode_int(block["K"], "params.K"),
        N=_decode_int(block["N"], "params.N"),
        L=_decode_int(block["L"], "params.L"),
        M=_decode_int(block["M"], "params.M"),
        target_ratio=RatioForm(
            _decode_int(target.get("num"), "params.target.num"),
            _decode_int(target.get("den"), "params.target.den"),
        ),
    )


def _decode_labels(block: object, n: int) -> tuple[tuple[str, ...], tuple[str, ...]]:
    if not isinstance(block, dict) or set(block) != {"a", "b"}:
        raise ParseError("labels: expected an object with exactly a and b")
    out = []
    for side in ("a", "b"):
        seq = block[side]
        if not isinstance(seq, list) or not all(isinstance(v, str) for v in seq):
            raise ParseError(f"labels.{side}: expected an array of strings")
        if len(seq) != n:
            raise ParseError(f"labels.{side}: length {len(seq)} != n = {n}")
        out.append(tuple(seq))
    return out[0], out[1]


def read_instance(path: PathLike) -> LoadedInstance:
    """Parse and validate an instance document.

    Raises ParseError for structural problems and the core validation
    errors for domain violations; unknown fields only produce warnings.
    """
    doc = _parse_doc(path)
    warnings: list[str] = []
    for key in doc:
        if key not in ("m", "a", "b", "params", "labels"):
            warnings.append(f"ignored unknown field {key!r}")
    for key in ("m", "a", "b"):
        if key not in doc:
            raise ParseError(f"{path}: missing field {key!r}")
    m = _decode_int(doc["m"], "m")
    a = _decode_int_list(doc["a"], "a")
    b = _decode_int_list(doc["b"], "b")
    inst = validate_instance(a, b, m)
    loaded = LoadedInstance(instance=inst, warnings=warnings)
    if "params" in doc:
        loaded.params = _decode_params(doc["params"], warnings)
    if "labels" in doc:
        loaded.labels_a, loaded.labels_b = _decode_labels(doc["labels"], inst.n)
    return loaded


@dataclass
class LoadedAssignment:
    assignment: Assignment
    warnings: list[str] = field(default_factory=list)


def write_assignment(asg: Assignment, path: Optional[PathLike] = None) -> bytes:
    doc = {"assignment": list(asg.groups)}
    return _emit(canonical_bytes(doc), path)


def read_assignment(path: PathLike) -> LoadedAssignment:
    doc = _parse_doc(path)
    warnings = [f"ignored unknown field {k!r}" for k in doc if k != "assignment"]
    if "assignment" not in doc:
        raise ParseError(f"{path}: missing field 'assignment'")
    groups = _decode_int_list(doc["assignment"], "assignment")
    return LoadedAssignment(Assignment(tuple(groups)), warnings)
