"""Grid files and JSON reports."""

import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Tuple, Union

from percmax.engine import CellSet, Topology
from percmax.models import InfectionReport, OracleResult
from percmax.utils.exceptions import GridFileError, InvalidInputError


def parse_grid(text: str) -> Tuple[Topology, CellSet]:
    """
    Parse a grid file.

    The first non-comment line holds the dims, an optional `topology torus`
    line may follow, and every further line is one 1-indexed cell. `#`
    starts a comment.

    Args:
        text: File contents

    Returns:
        (topology, initial cells)

    Raises:
        GridFileError: On malformed lines or cells outside the grid
    """
    dims: Optional[List[int]] = None
    kind = "box"
    cells: List[Tuple[int, ...]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "topology":
            if dims is None or cells or len(tokens) != 2 or tokens[1] not in ("box", "torus"):
                raise GridFileError("expected 'topology box|torus' right after the dims line", line=number)
            kind = tokens[1]
            continue
        try:
            values = [int(tok) for tok in tokens]
        except ValueError as e:
            raise GridFileError(f"non-integer token in {line!r}", line=number) from e
        if dims is None:
            if not values or any(v < 1 for v in values):
                raise GridFileError(f"dims must be positive integers, got {line!r}", line=number)
            dims = values
            continue
        if len(values) != len(dims):
            raise GridFileError(f"cell {line!r} does not have {len(dims)} coordinates", line=number)
        if any(v < 1 or v > n for v, n in zip(values, dims)):
            raise GridFileError(f"cell {tuple(values)} lies outside {tuple(dims)}", line=number)
        cells.append(tuple(values))

    if dims is None:
        raise GridFileError("missing dims line")
    try:
        topology = Topology.torus(dims[0]) if kind == "torus" and len(set(dims)) == 1 else Topology.box(*dims)
        if kind == "torus" and topology.kind != "torus":
            raise InvalidInputError(f"a torus must be square, got {tuple(dims)}")
    except InvalidInputError as e:
        raise GridFileError(str(e)) from e
    return topology, CellSet(cells)


def read_grid(path: Union[str, Path]) -> Tuple[Topology, CellSet]:
    """Read and parse a grid file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InvalidInputError(f"Cannot read grid file {path}: {str(e)}") from e
    return parse_grid(text)


def format_grid(cells: Iterable, topology: Topology, comment: Optional[str] = None) -> str:
    """Grid file text with cells in row-major order."""
    lines = [f"# {comment}"] if comment else []
    lines.append(" ".join(str(n) for n in topology.dims))
    if topology.kind == "torus":
        lines.append("topology torus")
    cellset = cells if isinstance(cells, CellSet) else CellSet(cells)
    lines.extend(" ".join(str(c) for c in cell) for cell in cellset.sorted())
    return "\n".join(lines) + "\n"


def report_document(report: InfectionReport) -> Dict[str, Any]:
    """JSON-ready dict of a simulation report; NEVER becomes "never"."""
    return report.model_dump(mode="json", exclude_none=True)


def oracle_document(result: OracleResult, witness_report: Optional[InfectionReport] = None) -> Dict[str, Any]:
    """Oracle result in the simulation report shape, with the canonical witness simulated."""
    document = report_document(witness_report) if witness_report is not None else {}
    document.update(result.model_dump(mode="json", exclude_none=True))
    document["witness"] = document.pop("witnesses")
    return document


def dumps(document: Dict[str, Any]) -> str:
    return json.dumps(document, indent=2) + "\n"
