"""JSON documents <-> domain objects, validated against the shipped schemas."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema

from .crossmap import GridFn
from .exactset import (
    Box,
    Interval,
    Point,
    SeqSpec,
    SeqTrace,
    Segment,
    SetDesc,
    SinglePoint,
    TailFormula,
    ValidationError,
    as_rational,
    closed,
)
from .lebesgue import CandidateSeq, Piece, PiecewiseMap

SCHEMA_VERSION = "1"


class InputError(ValueError):
    """Unreadable or schema-violating input; the message carries the location."""


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    text = resources.files("crosstopo").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def _validate(doc, kind: str):
    root = load_schema("input")
    schema = {"$defs": root["$defs"], "$ref": f"#/$defs/{kind}"}
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        where = "/".join(str(p) for p in err.absolute_path) or "<root>"
        raise InputError(f"{kind} field {where}: {err.message}")


def read_json(source: str | Path):
    """Parse a path or an inline JSON string (one starting with ``{`` or ``[``)."""
    text = str(source)
    if not text.lstrip().startswith(("{", "[")):
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise InputError(f"cannot read input {source}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _guard(fn):
    def wrapper(doc, *args, **kwargs):
        try:
            return fn(doc, *args, **kwargs)
        except (ValidationError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(str(exc)) from exc
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def point_from(doc) -> Point:
    return Point(as_rational(doc[0]), as_rational(doc[1]))


def interval_from(doc) -> Interval:
    return Interval(as_rational(doc["lo"]), as_rational(doc["hi"]),
                    doc.get("lo_closed", True), doc.get("hi_closed", True))


def formula_from(doc) -> TailFormula:
    if isinstance(doc, str):
        return TailFormula(as_rational(doc))
    return TailFormula(as_rational(doc["c"]), as_rational(doc.get("a", "0")),
                       as_rational(doc.get("b", "0")))


def _seq(doc) -> SeqSpec:
    return SeqSpec(tuple(point_from(p) for p in doc.get("prefix", [])),
                   formula_from(doc["tail_x"]), formula_from(doc["tail_y"]))


def _primitive(i: int, doc):
    try:
        kind = doc["kind"]
        if kind == "box":
            return Box(interval_from(doc["x"]), interval_from(doc["y"]))
        if kind == "segment":
            return Segment(doc["axis"], as_rational(doc["level"]), interval_from(doc["span"]))
        if kind == "point":
            return SinglePoint(point_from(doc["at"]))
        return SeqTrace(_seq(doc["seq"]))
    except ValidationError as exc:
        raise InputError(f"parts/{i} ({doc.get('kind')}): {exc}") from exc


@_guard
def setdesc_from(doc, validate: bool = True) -> SetDesc:
    if validate:
        _validate(doc, "setdesc")
    parts = [_primitive(i, p) for i, p in enumerate(doc["parts"])]
    return SetDesc(parts, frozenset(point_from(d) for d in doc.get("deletions", [])))


@_guard
def seqspec_from(doc, validate: bool = True) -> SeqSpec:
    if validate:
        _validate(doc, "seqspec")
    return _seq(doc)


@_guard
def points_from(doc) -> list[Point]:
    _validate(doc, "points")
    return [point_from(p) for p in doc["points"]]


@_guard
def coincide_from(doc):
    _validate(doc, "coincide")
    return ([as_rational(a) for a in doc["A"]], [as_rational(b) for b in doc["B"]],
            point_from(doc["p"]))


@_guard
def punctured_from(doc):
    _validate(doc, "punctured")
    return setdesc_from(doc["set"], validate=False), [point_from(p) for p in doc.get("punctures", [])]


@_guard
def gridfn_from(doc):
    """A GridFn plus its ``A`` and ``B`` level lists."""
    _validate(doc, "gridfn")
    dom = doc.get("domain")
    domain = (interval_from(dom["x"]), interval_from(dom["y"])) if dom else (closed(0, 1), closed(0, 1))
    f = GridFn(doc["n"], [point_from(p) for p in doc["images"]], domain)
    return f, [as_rational(a) for a in doc.get("A", [])], [as_rational(b) for b in doc.get("B", [])]


def _piece(doc) -> Piece:
    return Piece(closed(doc["x"][0], doc["x"][1]), closed(doc["y"][0], doc["y"][1]),
                 doc["tag"], as_rational(doc["level"]))


@_guard
def candidate_from(doc):
    """A CandidateSeq plus the explicit probe list (None for automatic search)."""
    _validate(doc, "candidate")
    maps = [PiecewiseMap([_piece(p) for p in m["pieces"]]) for m in doc["maps"]]
    probes = doc.get("probes")
    return (CandidateSeq(maps, doc.get("period", 1)),
            None if probes is None else [point_from(p) for p in probes])


def dumps(obj) -> str:
    """Canonical serialization: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def validate_report(report: dict):
    jsonschema.validate(report, load_schema("report"))
