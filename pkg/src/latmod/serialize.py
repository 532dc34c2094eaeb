"""JSON and DOT interchange for lattices, arrow sets, and model structures."""
from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .arrows import ArrowSet
from .bousfield import GoldenArrowReport, LocalizationGraph
from .errors import LatmodError, UnknownLabel
from .lattice import FiniteLattice, build_lattice, chain, n5, product
from .models import ModelStructure, derive_classes
from .transfers import TransferCatalog

_BUILTIN_CHAIN = re.compile(r"chain(\d+)$")
_BUILTIN_GRID = re.compile(r"grid(\d+)x(\d+)$")


def builtin_lattice(name: str) -> FiniteLattice:
    """Resolve builtin lattice names: n5, chainN, gridNxM, square."""
    if name == "n5":
        return n5()
    if name == "square":
        return product(chain(1), chain(1))
    if m := _BUILTIN_CHAIN.match(name):
        return chain(int(m.group(1)))
    if m := _BUILTIN_GRID.match(name):
        return product(chain(int(m.group(1))), chain(int(m.group(2))))
    raise UnknownLabel(f"unknown builtin lattice {name!r}")


def load_lattice(source: str | Path) -> FiniteLattice:
    """Load a lattice from a JSON file path or a builtin: reference."""
    text = str(source)
    if text.startswith("builtin:"):
        return builtin_lattice(text[len("builtin:"):])
    return parse_lattice(_read_json(source))


def parse_lattice(data: Any) -> FiniteLattice:
    if not isinstance(data, dict) or "elements" not in data:
        raise LatmodError('lattice JSON needs an "elements" list')
    elements = data["elements"]
    covers = [tuple(pair) for pair in data.get("covers", [])]
    return build_lattice(elements, covers)


def serialize_lattice(lat: FiniteLattice) -> dict[str, Any]:
    return {
        "elements": list(lat.labels),
        "covers": [
            [lat.labels[c.source], lat.labels[c.target]] for c in lat.covers
        ],
    }


def parse_arrow_set(lat: FiniteLattice, data: Any) -> ArrowSet:
    if not isinstance(data, dict) or "arrows" not in data:
        raise LatmodError('arrow set JSON needs an "arrows" list')
    return ArrowSet.from_labels(lat, [tuple(pair) for pair in data["arrows"]])


def load_arrow_set(lat: FiniteLattice, path: str | Path) -> ArrowSet:
    return parse_arrow_set(lat, _read_json(path))


def serialize_arrow_set(aset: ArrowSet) -> dict[str, Any]:
    return {"arrows": aset.label_pairs()}


def parse_model(lat: FiniteLattice, data: Any) -> ModelStructure:
    if not isinstance(data, dict) or "weq" not in data or "af" not in data:
        raise LatmodError('model JSON needs "weq" and "af" arrow lists')
    weq = ArrowSet.from_labels(lat, [tuple(p) for p in data["weq"]])
    af = ArrowSet.from_labels(lat, [tuple(p) for p in data["af"]])
    return derive_classes(weq, af)


def load_model(lat: FiniteLattice, path: str | Path) -> ModelStructure:
    return parse_model(lat, _read_json(path))


def serialize_model(model: ModelStructure) -> dict[str, Any]:
    return {
        "weq": model.weq.label_pairs(),
        "af": model.acyclic_fib.label_pairs(),
        "cofibrations": model.cof.label_pairs(),
        "acyclic_cofibrations": model.acyclic_cof.label_pairs(),
        "fibrations": model.fib.label_pairs(),
    }


def serialize_golden_reports(
    reports: Sequence[GoldenArrowReport],
) -> list[dict[str, Any]]:
    out = []
    for r in reports:
        lat = r.golden.lattice
        out.append(
            {
                "new_weq": [
                    lat.labels[r.new_weq.source],
                    lat.labels[r.new_weq.target],
                ],
                "targets": [lat.labels[x] for x in r.targets],
                "sources": [lat.labels[x] for x in r.sources],
                "arrows": r.golden.label_pairs(),
            }
        )
    return out


def _read_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise LatmodError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise LatmodError(f"{path} is not valid JSON: {exc}") from exc


# ---------------------------------------------------------------------------
# DOT export


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _inclusion_cover_pairs(systems: Sequence[ArrowSet]) -> list[tuple[int, int]]:
    k = len(systems)
    sub = np.zeros((k, k), dtype=bool)
    for i, a in enumerate(systems):
        for j, b in enumerate(systems):
            sub[i, j] = a.mask & ~b.mask == 0
    strict = sub & ~np.eye(k, dtype=bool)
    cover = strict & ~(strict @ strict)
    return [(int(i), int(j)) for i, j in np.argwhere(cover)]


def systems_dot(systems: Sequence[ArrowSet], name: str = "systems") -> str:
    """Hasse diagram of a family of arrow sets under containment."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for i, s in enumerate(systems):
        lines.append(f"  n{i} [label={_quote(s.signature())}];")
    for i, j in _inclusion_cover_pairs(systems):
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def catalog_dot(catalog: TransferCatalog) -> str:
    return systems_dot(catalog.systems, name="transfer_systems")


def models_dot(structures: Sequence[ModelStructure]) -> str:
    """Hasse diagram of model structures under componentwise containment."""
    k = len(structures)
    lines = ["digraph model_structures {", "  rankdir=BT;"]
    for i, m in enumerate(structures):
        lines.append(f"  n{i} [label={_quote(m.signature())}];")
    below = np.zeros((k, k), dtype=bool)
    for i, a in enumerate(structures):
        for j, b in enumerate(structures):
            below[i, j] = (
                a.weq.mask & ~b.weq.mask == 0
                and a.acyclic_fib.mask & ~b.acyclic_fib.mask == 0
            )
    strict = below & ~np.eye(k, dtype=bool)
    cover = strict & ~(strict @ strict)
    for i, j in np.argwhere(cover):
        lines.append(f"  n{int(i)} -> n{int(j)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def localization_graph_dot(graph: LocalizationGraph) -> str:
    """Localization graph; left edges dashed, right edges solid."""
    lines = ["digraph localizations {", "  rankdir=BT;"]
    for i, m in enumerate(graph.structures):
        shape = ' shape=box' if i == graph.trivial_index else ""
        lines.append(f"  n{i} [label={_quote(m.signature())}{shape}];")
    for e in graph.edges:
        lat = graph.structures[e.src].lattice
        label = f"{e.side[0].upper()} {lat.arrow_name(e.at)}"
        style = ' style=dashed' if e.side == "left" else ""
        lines.append(
            f"  n{e.src} -> n{e.dst} [label={_quote(label)}{style}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def serialize_localization_graph(graph: LocalizationGraph) -> dict[str, Any]:
    lat = graph.structures[0].lattice if graph.structures else None
    return {
        "trivial": graph.trivial_index,
        "nodes": [serialize_model(m) for m in graph.structures],
        "edges": [
            {
                "from": e.src,
                "to": e.dst,
                "side": e.side,
                "at": [lat.labels[e.at.source], lat.labels[e.at.target]],
            }
            for e in graph.edges
        ],
    }
