"""Grid topologies and the cell sets that live on them."""

from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, List, Literal, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from percmax.models import Cell
from percmax.utils.exceptions import InvalidInputError


class Topology(BaseModel):
    """A finite box in Z^d (d <= 4) or the two-dimensional n x n torus."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["box", "torus"] = "box"
    dims: Tuple[int, ...] = Field(..., description="Extent along each axis, first axis = x")
    threshold: int = Field(2, ge=1, description="Infected neighbours needed to become infected")

    @model_validator(mode="after")
    def _check_dims(self) -> "Topology":
        if not 1 <= len(self.dims) <= 4:
            raise ValueError(f"{len(self.dims)} dimensions; 1 to 4 are supported")
        if any(extent < 1 for extent in self.dims):
            raise ValueError(f"dimensions must be positive: {self.dims}")
        if self.kind == "torus":
            if len(self.dims) != 2 or self.dims[0] != self.dims[1]:
                raise ValueError("a torus must be two-dimensional and square")
            if self.dims[0] < 3:
                raise ValueError("a torus needs n >= 3")
        return self

    @classmethod
    def box(cls, *dims: int, threshold: int = 2) -> "Topology":
        """
        Build a box topology.

        Raises:
            InvalidInputError: If the dims or threshold are not admissible
        """
        return cls._build("box", tuple(int(d) for d in dims), threshold)

    @classmethod
    def torus(cls, n: int, threshold: int = 2) -> "Topology":
        """Build the n x n torus."""
        return cls._build("torus", (int(n), int(n)), threshold)

    @classmethod
    def _build(cls, kind: str, dims: Tuple[int, ...], threshold: int) -> "Topology":
        try:
            return cls(kind=kind, dims=dims, threshold=threshold)
        except ValidationError as e:
            raise InvalidInputError(f"Invalid {kind} {dims}: {str(e)}") from e

    @property
    def d(self) -> int:
        return len(self.dims)

    @property
    def size(self) -> int:
        return int(np.prod(self.dims))

    @property
    def shape(self) -> Tuple[int, ...]:
        """numpy shape of a mask over this grid (last axis = x)."""
        return tuple(reversed(self.dims))

    @property
    def strides(self) -> Tuple[int, ...]:
        out, stride = [], 1
        for extent in self.dims:
            out.append(stride)
            stride *= extent
        return tuple(out)

    def contains(self, cell: Sequence[int]) -> bool:
        return len(cell) == self.d and all(1 <= c <= n for c, n in zip(cell, self.dims))

    def check(self, cells: Iterable[Sequence[int]]) -> None:
        """
        Ensure that every cell lies on this grid.

        Raises:
            InvalidInputError: On the first out-of-bounds cell
        """
        for cell in cells:
            if not self.contains(cell):
                raise InvalidInputError(f"Cell {tuple(cell)} is outside the {self.kind} {self.dims}")

    def index(self, cell: Sequence[int]) -> int:
        """Row-major index of a cell, first coordinate fastest."""
        return sum((c - 1) * s for c, s in zip(cell, self.strides))

    def cell(self, index: int) -> Cell:
        coords = []
        for extent in self.dims:
            index, r = divmod(index, extent)
            coords.append(r + 1)
        return tuple(coords)

    def cells(self) -> Iterator[Cell]:
        for rev in product(*(range(1, n + 1) for n in reversed(self.dims))):
            yield tuple(reversed(rev))

    def corners(self) -> List[Cell]:
        return sorted(set(product(*((1, n) for n in self.dims))), key=lambda c: tuple(reversed(c)))


class CellSet:
    """An immutable finite set of lattice cells."""

    def __init__(self, cells: Iterable[Sequence[int]] = ()):
        """
        Initialize the cell set.

        Args:
            cells: Cells as integer sequences, all of the same length

        Raises:
            InvalidInputError: If cells of different dimension are mixed
        """
        self._cells = frozenset(tuple(int(c) for c in cell) for cell in cells)
        lengths = {len(cell) for cell in self._cells}
        if len(lengths) > 1:
            raise InvalidInputError(f"Cells of mixed dimension {sorted(lengths)}")

    @classmethod
    def from_mask(cls, mask: np.ndarray, origin: Optional[Sequence[int]] = None) -> "CellSet":
        """Cells of a boolean mask whose last axis is x."""
        coords = np.argwhere(mask)[:, ::-1] + 1
        if origin is not None:
            coords = coords + np.asarray(origin) - 1
        return cls(map(tuple, coords.tolist()))

    def __len__(self) -> int:
        return len(self._cells)

    def __iter__(self) -> Iterator[Cell]:
        return iter(self.sorted())

    def __contains__(self, cell: object) -> bool:
        return tuple(cell) in self._cells if isinstance(cell, (tuple, list)) else False

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CellSet) and self._cells == other._cells

    def __hash__(self) -> int:
        return hash(self._cells)

    def __or__(self, other: "CellSet") -> "CellSet":
        return CellSet(self._cells | other._cells)

    def __and__(self, other: "CellSet") -> "CellSet":
        return CellSet(self._cells & other._cells)

    def __sub__(self, other: "CellSet") -> "CellSet":
        return CellSet(self._cells - other._cells)

    def __le__(self, other: "CellSet") -> bool:
        return self._cells <= other._cells

    def __ge__(self, other: "CellSet") -> bool:
        return self._cells >= other._cells

    def __repr__(self) -> str:
        shown = ", ".join(map(str, self.sorted()[:6]))
        more = ", ..." if len(self) > 6 else ""
        return f"CellSet({len(self)}: {shown}{more})"

    @property
    def dimension(self) -> Optional[int]:
        return len(next(iter(self._cells))) if self._cells else None

    @cached_property
    def bounding_box(self) -> Optional[Tuple[Cell, Cell]]:
        """(lowest corner, highest corner) of the smallest box holding the set."""
        if not self._cells:
            return None
        arr = self.to_array()
        return tuple(arr.min(axis=0).tolist()), tuple(arr.max(axis=0).tolist())

    def sorted(self) -> List[Cell]:
        """Cells in row-major order (last coordinate slowest)."""
        return sorted(self._cells, key=lambda c: tuple(reversed(c)))

    def to_array(self) -> np.ndarray:
        return np.array(self.sorted(), dtype=np.int64).reshape(len(self), self.dimension or 0)

    def to_mask(self, dims: Sequence[int]) -> np.ndarray:
        """Boolean mask of shape reversed(dims); cells outside are an error."""
        mask = np.zeros(tuple(reversed(dims)), dtype=bool)
        if self._cells:
            arr = self.to_array()
            if arr.shape[1] != len(dims) or (arr < 1).any() or (arr > np.asarray(dims)).any():
                raise InvalidInputError(f"Cells fall outside the grid {tuple(dims)}")
            mask[tuple((arr[:, ::-1] - 1).T)] = True
        return mask

    def translate(self, offset: Sequence[int]) -> "CellSet":
        return CellSet(tuple(c + o for c, o in zip(cell, offset)) for cell in self._cells)

    def reflect(self, axis: int, lo: int, hi: int) -> "CellSet":
        """Mirror the set along one axis so that lo and hi swap."""
        return CellSet(cell[:axis] + (lo + hi - cell[axis],) + cell[axis + 1:] for cell in self._cells)

    def within(self, origin: Sequence[int], sides: Sequence[int]) -> "CellSet":
        return CellSet(
            cell for cell in self._cells
            if all(o <= c < o + s for c, o, s in zip(cell, origin, sides))
        )
