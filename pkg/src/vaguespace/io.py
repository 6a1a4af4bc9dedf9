"""JSON space, product and process files; CSV writers.

A space file::

    {
      "kind": "space",                        # optional
      "name": "age",
      "concept": "Man", "attribute": "Age",   # optional metadata
      "omega": ["Childhood", ...],
      "algebra": {"tnorm": "minimum", "negation": "standard"},
      "universe": [0, 1, 2] | {"min": 0, "max": 200, "step": 1},
      "measures": {"rows": [{"x": 25, "degrees": {"Childhood": 0, ...}}, ...]}
               | {"anchors": {"Childhood": [[0, 1], [10, 1], [14, 0]], ...}},
      "negation_overrides": [{"x": 25, "degrees": {"Youth": 0.1}}],   # optional
      "variables": {"Young adults": {"Youth": 1, ...}},                # optional
      "profile": "default" | "strict"                                  # optional
    }

Product files hold ``{"kind": "product", "components": [<space>, ...]}``
and process files ``{"kind": "process", "steps": [{"t": ..., "space": <space>}]}``.
"""

from __future__ import annotations

import csv
import io as _stdio
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Hashable, Iterable, Mapping, Sequence

import jsonschema
import numpy as np

from .algebra import AlgebraTriple
from .errors import DomainError, SpecFileError
from .expr import ElementaryAttributeSet
from .partition import FuzzySet, PartitionProcess, VaguePartition
from .variables import CdfCurve, VagueVariable

_NUMBER = {"type": "number"}
_DEGREE_TABLE = {"type": "object", "additionalProperties": _NUMBER}
_ROWS = {
    "type": "array",
    "minItems": 1,
    "items": {
        "type": "object",
        "required": ["x", "degrees"],
        "additionalProperties": False,
        "properties": {"x": _NUMBER, "degrees": _DEGREE_TABLE},
    },
}

SPACE_SCHEMA = {
    "type": "object",
    "required": ["omega", "algebra", "measures"],
    "additionalProperties": False,
    "properties": {
        "kind": {"const": "space"},
        "name": {"type": "string"},
        "concept": {"type": "string"},
        "attribute": {"type": "string"},
        "omega": {"type": "array", "minItems": 1, "items": {"type": "string", "minLength": 1}},
        "algebra": {
            "type": "object",
            "required": ["tnorm"],
            "additionalProperties": False,
            "properties": {
                "tnorm": {"enum": ["minimum", "product", "lukasiewicz", "drastic"]},
                "tconorm": {"enum": ["maximum", "probabilistic_sum", "lukasiewicz", "drastic_sum"]},
                "negation": {"enum": ["standard"]},
            },
        },
        "universe": {
            "oneOf": [
                {"type": "array", "minItems": 1, "items": _NUMBER},
                {
                    "type": "object",
                    "required": ["min", "max", "step"],
                    "additionalProperties": False,
                    "properties": {"min": _NUMBER, "max": _NUMBER, "step": {"type": "number", "exclusiveMinimum": 0}},
                },
            ]
        },
        "measures": {
            "type": "object",
            "minProperties": 1,
            "maxProperties": 1,
            "additionalProperties": False,
            "properties": {
                "rows": _ROWS,
                "anchors": {
                    "type": "object",
                    "additionalProperties": {
                        "type": "array",
                        "minItems": 1,
                        "items": {"type": "array", "minItems": 2, "maxItems": 2, "items": _NUMBER},
                    },
                },
            },
        },
        "negation_overrides": _ROWS,
        "variables": {"type": "object", "additionalProperties": _DEGREE_TABLE},
        "profile": {"enum": ["default", "strict"]},
    },
}

PRODUCT_SCHEMA = {
    "type": "object",
    "required": ["kind", "components"],
    "additionalProperties": False,
    "properties": {
        "kind": {"const": "product"},
        "name": {"type": "string"},
        "components": {"type": "array", "minItems": 1, "items": {"type": "object"}},
    },
}

PROCESS_SCHEMA = {
    "type": "object",
    "required": ["kind", "steps"],
    "additionalProperties": False,
    "properties": {
        "kind": {"const": "process"},
        "name": {"type": "string"},
        "steps": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["t", "space"],
                "additionalProperties": False,
                "properties": {"t": {"type": ["number", "string"]}, "space": {"type": "object"}},
            },
        },
    },
}


@dataclass(eq=False)
class SpaceFile:
    """A loaded space file: the materialized partition plus its variables."""

    partition: VaguePartition
    variables: dict[str, VagueVariable] = field(default_factory=dict)
    name: str = ""
    profile: str = "default"

    @property
    def strict(self) -> bool:
        return self.profile == "strict"

    def variable(self, name: str) -> VagueVariable:
        try:
            return self.variables[name]
        except KeyError:
            raise DomainError(f"unknown variable {name!r}") from None

    def __eq__(self, other):
        if not isinstance(other, SpaceFile):
            return NotImplemented
        return (
            self.name == other.name
            and self.profile == other.profile
            and self.variables == other.variables
            and self.partition.metadata == other.partition.metadata
            and partitions_close(self.partition, other.partition, 0.0)
        )


@dataclass(eq=False)
class ProductFile:
    components: list[SpaceFile]
    name: str = ""


@dataclass(eq=False)
class ProcessFile:
    process: PartitionProcess
    variables: dict[str, VagueVariable] = field(default_factory=dict)
    name: str = ""


def partitions_close(a: VaguePartition, b: VaguePartition, tol: float = 1e-12) -> bool:
    if a.omega.names != b.omega.names or a.algebra != b.algebra or len(a) != len(b):
        return False
    for sa, sb in zip(a.spaces, b.spaces):
        if abs(sa.x - sb.x) > tol:
            return False
        if any(abs(sa.degrees[p] - sb.degrees[p]) > tol for p in a.omega):
            return False
        if set(sa.negation_overrides) != set(sb.negation_overrides):
            return False
        if any(abs(v - sb.negation_overrides[p]) > tol for p, v in sa.negation_overrides.items()):
            return False
    return True


def _path(prefix: str, parts: Iterable) -> str:
    out = prefix
    for part in parts:
        out += f"[{part}]" if isinstance(part, int) else (f".{part}" if out else str(part))
    return out or "<root>"


def _validate(doc, schema, prefix: str) -> None:
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(doc), key=lambda e: (list(map(str, e.absolute_path)), e.message))
    if errors:
        err = errors[0]
        path = list(err.absolute_path)
        if err.validator == "required" and isinstance(err.instance, dict):
            path.append(next(k for k in err.validator_value if k not in err.instance))
            raise SpecFileError(_path(prefix, path), "required field is missing")
        raise SpecFileError(_path(prefix, path), err.message)


def _degree(value: float, where: str) -> float:
    v = float(value)
    if math.isnan(v) or v < 0.0 or v > 1.0:
        raise SpecFileError(where, f"degree {value!r} outside [0, 1]")
    return v


def _materialize_universe(universe, where: str) -> list[float]:
    if isinstance(universe, list):
        return [float(x) for x in universe]
    lo, hi, step = float(universe["min"]), float(universe["max"]), float(universe["step"])
    if hi < lo:
        raise SpecFileError(where, "max is below min")
    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [round(lo + i * step, 12) for i in range(n)]


def _check_table(table: Mapping, omega: ElementaryAttributeSet, where: str, total: bool) -> dict[str, float]:
    out = {}
    for name, value in table.items():
        if name not in omega:
            raise SpecFileError(f"{where}.{name}", "unknown attribute")
        out[name] = _degree(value, f"{where}.{name}")
    if total:
        missing = [p for p in omega if p not in out]
        if missing:
            raise SpecFileError(f"{where}.{missing[0]}", "missing degree")
    return out


def space_from_dict(doc: Mapping, prefix: str = "") -> SpaceFile:
    _validate(doc, SPACE_SCHEMA, prefix)
    at = (lambda f: f"{prefix}.{f}" if prefix else f)
    try:
        omega = ElementaryAttributeSet(
            tuple(doc["omega"]),
            doc.get("concept"),
            doc.get("attribute"),
        )
    except DomainError as exc:
        raise SpecFileError(at("omega"), str(exc)) from None
    alg_doc = doc["algebra"]
    try:
        algebra = AlgebraTriple.from_tags(alg_doc["tnorm"], alg_doc.get("negation", "standard"), alg_doc.get("tconorm"))
    except DomainError as exc:
        raise SpecFileError(at("algebra"), str(exc)) from None

    universe = None
    if "universe" in doc:
        universe = _materialize_universe(doc["universe"], at("universe"))
        if len(set(universe)) != len(universe):
            raise SpecFileError(at("universe"), "duplicate x")

    measures = doc["measures"]
    rows: list[tuple[float, dict[str, float]]] = []
    if "rows" in measures:
        seen = set()
        for i, row in enumerate(measures["rows"]):
            where = at(f"measures.rows[{i}]")
            x = float(row["x"])
            if x in seen:
                raise SpecFileError(f"{where}.x", f"duplicate x {row['x']!r}")
            seen.add(x)
            rows.append((x, _check_table(row["degrees"], omega, f"{where}.degrees", total=True)))
        if universe is not None and sorted(universe) != sorted(seen):
            raise SpecFileError(at("universe"), "universe samples do not match the measure rows")
    else:
        if universe is None:
            raise SpecFileError(at("universe"), "required when measures are given as anchors")
        anchors = measures["anchors"]
        for name in anchors:
            if name not in omega:
                raise SpecFileError(at(f"measures.anchors.{name}"), "unknown attribute")
        curves = {}
        for name in omega:
            if name not in anchors:
                raise SpecFileError(at(f"measures.anchors.{name}"), "missing anchors")
            pts = anchors[name]
            xs = [float(p[0]) for p in pts]
            if any(b <= a for a, b in zip(xs, xs[1:])):
                raise SpecFileError(at(f"measures.anchors.{name}"), "anchor x values must be strictly increasing")
            ys = [_degree(p[1], at(f"measures.anchors.{name}[{j}]")) for j, p in enumerate(pts)]
            # linear between anchors, constant beyond the outermost ones
            curves[name] = np.clip(np.interp(universe, xs, ys), 0.0, 1.0)
        rows = [(x, {name: float(curves[name][i]) for name in omega}) for i, x in enumerate(universe)]

    overrides: dict[float, dict[str, float]] = {}
    xs_present = {x for x, _ in rows}
    for i, row in enumerate(doc.get("negation_overrides", [])):
        where = at(f"negation_overrides[{i}]")
        x = float(row["x"])
        if x not in xs_present:
            raise SpecFileError(f"{where}.x", f"x {row['x']!r} is not a universe sample")
        if x in overrides:
            raise SpecFileError(f"{where}.x", f"duplicate x {row['x']!r}")
        overrides[x] = _check_table(row["degrees"], omega, f"{where}.degrees", total=False)

    variables = {}
    for vname, table in doc.get("variables", {}).items():
        where = at(f"variables.{vname}")
        for key in table:
            if key not in omega:
                raise SpecFileError(f"{where}.{key}", "unknown attribute")
        missing = [p for p in omega if p not in table]
        if missing:
            raise SpecFileError(f"{where}.{missing[0]}", "missing value")
        try:
            variables[vname] = VagueVariable(vname, {p: table[p] for p in omega})
        except DomainError as exc:
            raise SpecFileError(where, str(exc)) from None

    metadata = {k: doc[k] for k in ("concept", "attribute") if k in doc}
    if isinstance(doc.get("universe"), dict):
        metadata["universe_bounds"] = [doc["universe"]["min"], doc["universe"]["max"]]
    try:
        partition = VaguePartition.from_rows(omega, algebra, rows, overrides, metadata)
    except DomainError as exc:
        raise SpecFileError(at("measures"), str(exc)) from None
    return SpaceFile(partition, variables, doc.get("name", ""), doc.get("profile", "default"))


def _num(v: float):
    return int(v) if float(v).is_integer() and abs(v) < 2**53 else float(v)


def space_to_dict(model: SpaceFile) -> dict:
    part = model.partition
    doc: dict = {"kind": "space"}
    if model.name:
        doc["name"] = model.name
    for key in ("concept", "attribute"):
        if key in part.metadata:
            doc[key] = part.metadata[key]
    doc["omega"] = list(part.omega.names)
    doc["algebra"] = part.algebra.describe()
    doc["universe"] = [_num(x) for x in part.universe]
    doc["measures"] = {
        "rows": [{"x": _num(s.x), "degrees": {p: _num(s.degrees[p]) for p in part.omega}} for s in part.spaces]
    }
    over = [
        {"x": _num(s.x), "degrees": {p: _num(v) for p, v in s.negation_overrides.items()}}
        for s in part.spaces
        if s.negation_overrides
    ]
    if over:
        doc["negation_overrides"] = over
    if model.variables:
        doc["variables"] = {n: {p: _num(v) for p, v in var.values.items()} for n, var in model.variables.items()}
    doc["profile"] = model.profile
    return doc


def product_from_dict(doc: Mapping) -> ProductFile:
    _validate(doc, PRODUCT_SCHEMA, "")
    comps = [space_from_dict(c, f"components[{i}]") for i, c in enumerate(doc["components"])]
    return ProductFile(comps, doc.get("name", ""))


def product_to_dict(model: ProductFile) -> dict:
    doc: dict = {"kind": "product"}
    if model.name:
        doc["name"] = model.name
    doc["components"] = [space_to_dict(c) for c in model.components]
    return doc


def process_from_dict(doc: Mapping) -> ProcessFile:
    _validate(doc, PROCESS_SCHEMA, "")
    labels: list[Hashable] = []
    parts = []
    variables: dict[str, VagueVariable] = {}
    for i, step in enumerate(doc["steps"]):
        sf = space_from_dict(step["space"], f"steps[{i}].space")
        labels.append(step["t"])
        parts.append(sf.partition)
        for k, v in sf.variables.items():
            variables.setdefault(k, v)
    try:
        process = PartitionProcess(tuple(labels), tuple(parts))
    except DomainError as exc:
        raise SpecFileError("steps", str(exc)) from None
    return ProcessFile(process, variables, doc.get("name", ""))


def process_to_dict(model: ProcessFile) -> dict:
    doc: dict = {"kind": "process"}
    if model.name:
        doc["name"] = model.name
    doc["steps"] = [
        {"t": t, "space": space_to_dict(SpaceFile(part, dict(model.variables)))}
        for t, part in zip(model.process.index, model.process.partitions)
    ]
    return doc


def _read(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecFileError(str(path), exc.strerror or str(exc)) from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFileError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None
    if not isinstance(doc, dict):
        raise SpecFileError("<root>", "top level must be a JSON object")
    return doc


def file_kind(doc: Mapping) -> str:
    return doc.get("kind", "space")


def load(path):
    """Load any supported file, dispatching on its ``kind``."""
    doc = _read(path)
    kind = file_kind(doc)
    if kind == "product":
        return product_from_dict(doc)
    if kind == "process":
        return process_from_dict(doc)
    return space_from_dict(doc)


def load_space(path) -> SpaceFile:
    doc = _read(path)
    if file_kind(doc) != "space":
        raise SpecFileError("kind", f"expected a space file, found {doc['kind']!r}")
    return space_from_dict(doc)


def load_product(path) -> ProductFile:
    return product_from_dict(_read(path))


def load_process(path) -> ProcessFile:
    return process_from_dict(_read(path))


def _write(doc: dict, path) -> None:
    text = json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    try:
        Path(path).write_text(text, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise SpecFileError(str(path), exc.strerror or str(exc)) from None


def save_space(model: SpaceFile, path) -> None:
    _write(space_to_dict(model), path)


def save_product(model: ProductFile, path) -> None:
    _write(product_to_dict(model), path)


def save_process(model: ProcessFile, path) -> None:
    _write(process_to_dict(model), path)


# -- CSV ------------------------------------------------------------------------

def fmt(value: float) -> str:
    """Nine significant digits; infinities as ``inf`` / ``-inf``."""
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return format(float(value), ".9g")


def _csv(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    buf = _stdio.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def fuzzy_set_csv(fs: FuzzySet) -> str:
    return _csv(["x", "mu"], ((fmt(x), fmt(m)) for x, m in fs.samples))


def cdf_csv(points: Iterable[tuple[float, float]]) -> str:
    return _csv(["threshold", "degree"], ((fmt(t), fmt(d)) for t, d in points))


def curve_csv(curve: CdfCurve) -> str:
    return cdf_csv(curve.points())


def trajectory_csv(traj: Mapping[Hashable, FuzzySet]) -> str:
    return _csv(["t", "x", "mu"], ((str(t), fmt(x), fmt(m)) for t, fs in traj.items() for x, m in fs.samples))
