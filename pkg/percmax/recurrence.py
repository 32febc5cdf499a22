"""Exact maximum percolation times M(k, l) from the seven-move recursion."""

import csv
import logging
import time
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple, Union

import numpy as np

from percmax.config import Settings
from percmax.models import Move, MoveChoice
from percmax.utils.exceptions import GridFileError, InvalidInputError

logger = logging.getLogger(__name__)

CSV_HEADER = ["k", "ell", "M"]


def base_value(k: int, l: int) -> Optional[int]:
    """M(k, l) for the base dims (a side of at most 2, or 3x3); None otherwise."""
    a, b = min(k, l), max(k, l)
    if a == 1:
        return 0 if b <= 2 else 1
    if a == 2:
        return (3 * (b - 1)) // 2
    if (a, b) == (3, 3):
        return 4
    return None


def _gate(move: Move, k: np.ndarray, l: np.ndarray) -> np.ndarray:
    # Moves 4 and 5 cannot end on a side of 3: their two seeds would sit at
    # distance 2 and infect the cell between them at once.
    dk, dl = move.delta
    gate = (k - dk >= 1) & (l - dl >= 1)
    if move is Move.M4:
        gate &= l >= 4
    elif move is Move.M5:
        gate &= k >= 4
    return gate


def _branch_max(values: np.ndarray, k: np.ndarray, l: np.ndarray) -> np.ndarray:
    best = np.full(k.shape, -1, dtype=np.int64)
    for move in Move:
        gate = _gate(move, k, l)
        if not gate.any():
            continue
        dk, dl = move.delta
        kg, lg = k[gate], l[gate]
        # predecessor dims are still on an earlier anti-diagonal
        candidate = values[kg - dk, lg - dl] + move.increment(kg, lg)
        best[gate] = np.maximum(best[gate], candidate)
    return best


class MemoTable:
    """Symmetric table (k, l) -> M(k, l), grown on demand and stored as int64."""

    def __init__(self, rows: int = 0, cols: int = 0):
        """
        Initialize the table, optionally computing it up front.

        Args:
            rows: Largest shorter side to cover
            cols: Largest longer side to cover
        """
        self.rows = 0
        self.cols = 0
        self.source = "recursion"
        self._values = np.zeros((1, 1), dtype=np.int64)
        if rows or cols:
            self.ensure(rows, cols)

    @property
    def metadata(self) -> Dict[str, Union[int, str]]:
        return {"rows": self.rows, "cols": self.cols, "source": self.source}

    def covers(self, k: int, l: int) -> bool:
        a, b = min(k, l), max(k, l)
        return a <= self.rows and b <= self.cols

    def ensure(self, k: int, l: int) -> None:
        """Grow the table so that it covers M(k, l)."""
        if self.covers(k, l):
            return
        a, b = min(k, l), max(k, l)
        self._build(max(self.rows, a), max(self.cols, b))

    def _build(self, rows: int, cols: int) -> None:
        started = time.perf_counter()
        values = np.full((rows + 1, cols + 1), -1, dtype=np.int64)
        ks = np.arange(rows + 1)
        ls = np.arange(cols + 1)
        # rows 1 and 2 and the 3x3 entry are closed-form bases
        values[1, 1:] = np.where(ls[1:] <= 2, 0, 1)
        values[1:, 1] = np.where(ks[1:] <= 2, 0, 1)
        if rows >= 2:
            values[2, 1:] = (3 * (ls[1:] - 1)) // 2
            values[1:, 2] = (3 * (ks[1:] - 1)) // 2
        if rows >= 3:
            values[3, 3] = 4
        # entries on the anti-diagonal k + l = total only read smaller totals
        for total in range(7, rows + cols + 1):
            k = np.arange(max(3, total - cols), min(rows, total - 3) + 1)
            if not k.size:
                continue
            l = total - k
            values[k, l] = _branch_max(values, k, l)
        self._values = values
        self.rows, self.cols = rows, cols
        logger.info("Built M table %dx%d in %.2fs", rows, cols, time.perf_counter() - started)

    def lookup(self, k: int, l: int) -> int:
        """M(k, l) from the table, growing it if needed."""
        self.ensure(k, l)
        a, b = min(k, l), max(k, l)
        return int(self._values[a, b])

    def array(self) -> np.ndarray:
        """Read-only view of the stored values indexed as [k, l]."""
        view = self._values.view()
        view.flags.writeable = False
        return view

    def entries(self) -> Iterator[Tuple[int, int, int]]:
        """Canonical (k, l, M) triples with k <= l, sorted by (k + l, k)."""
        if not self.rows:
            return iter(())
        kk, ll = np.meshgrid(np.arange(1, self.rows + 1), np.arange(1, self.cols + 1), indexing="ij")
        keep = kk <= ll
        k, l = kk[keep], ll[keep]
        order = np.lexsort((k, k + l))
        k, l = k[order], l[order]
        return zip(k.tolist(), l.tolist(), self._values[k, l].tolist())

    def __len__(self) -> int:
        return sum(max(0, self.cols - k + 1) for k in range(1, self.rows + 1))

    def validate(self) -> List[Tuple[int, int]]:
        """
        Re-derive every stored entry from its stored sub-values.

        Returns:
            Canonical (k, l) pairs whose stored value disagrees, in entry order
        """
        bad: List[Tuple[int, int]] = []
        for k in range(1, min(self.rows, 2) + 1):
            l = np.arange(k, self.cols + 1)
            expected = np.array([base_value(k, int(x)) for x in l], dtype=np.int64)
            wrong = self._values[k, l] != expected
            bad.extend((k, int(x)) for x in l[wrong])
        if self.rows >= 3 and self._values[3, 3] != 4:
            bad.append((3, 3))
        if self.rows >= 3:
            kk, ll = np.meshgrid(np.arange(3, self.rows + 1), np.arange(3, self.cols + 1), indexing="ij")
            keep = (kk <= ll) & ~((kk == 3) & (ll == 3))
            k, l = kk[keep], ll[keep]
            wrong = self._values[k, l] != _branch_max(self._values, k, l)
            bad.extend(zip(k[wrong].tolist(), l[wrong].tolist()))
        return sorted(set(bad), key=lambda p: (p[0] + p[1], p[0]))

    def save(self, path: Union[str, Path]) -> None:
        """Write the canonical entries as CSV with header k,ell,M."""
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            writer.writerows(self.entries())
        logger.info("Saved %d entries to %s", len(self), path)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "MemoTable":
        """
        Read a CSV cache and re-validate it against the recursion.

        Raises:
            GridFileError: If the file is malformed, incomplete or inconsistent
        """
        rows: Dict[Tuple[int, int], Tuple[int, int]] = {}
        previous: Optional[Tuple[int, int]] = None
        try:
            with open(path, "r", encoding="utf-8", newline="") as f:
                reader = csv.reader(f)
                header = next(reader, None)
                if header != CSV_HEADER:
                    raise GridFileError(f"expected header {','.join(CSV_HEADER)}", line=1)
                for line_no, record in enumerate(reader, start=2):
                    if len(record) != 3:
                        raise GridFileError(f"expected 3 fields, got {len(record)}", line=line_no)
                    try:
                        k, l, value = (int(field) for field in record)
                    except ValueError as e:
                        raise GridFileError(f"non-integer field in {record}", line=line_no) from e
                    if k < 1 or k > l or value < 0:
                        raise GridFileError(f"entry ({k},{l}) = {value} is not canonical", line=line_no)
                    key = (k + l, k)
                    if previous is not None and key <= previous:
                        raise GridFileError(f"entry ({k},{l}) is out of order", line=line_no)
                    previous = key
                    rows[(k, l)] = (value, line_no)
        except OSError as e:
            raise GridFileError(f"cannot read table cache {path}: {str(e)}") from e

        table = cls()
        table.source = str(path)
        if not rows:
            return table

        n_rows = max(k for k, _ in rows)
        n_cols = max(l for _, l in rows)
        values = np.full((n_rows + 1, n_cols + 1), -1, dtype=np.int64)
        for (k, l), (value, _) in rows.items():
            values[k, l] = value
            if l <= n_rows:
                values[l, k] = value
        expected = sum(n_cols - k + 1 for k in range(1, n_rows + 1))
        if len(rows) != expected:
            missing = next(
                (k, l) for k in range(1, n_rows + 1) for l in range(k, n_cols + 1) if (k, l) not in rows
            )
            raise GridFileError(f"table cache is missing entry ({missing[0]},{missing[1]})")

        table._values = values
        table.rows, table.cols = n_rows, n_cols
        bad = table.validate()
        if bad:
            k, l = bad[0]
            value, line_no = rows[(k, l)]
            raise GridFileError(f"M({k},{l}) = {value} is inconsistent with the recursion", line=line_no)
        logger.info("Loaded %d entries from %s", len(rows), path)
        return table


_default: Optional[MemoTable] = None


def default_table() -> MemoTable:
    """The process-wide table, loaded from PERCMAX_CACHE when that file exists."""
    global _default
    if _default is None:
        cache = Settings.from_env().cache_path
        if cache is not None and cache.is_file():
            _default = MemoTable.load(cache)
        else:
            _default = MemoTable()
    return _default


def set_default_table(table: MemoTable) -> None:
    global _default
    _default = table


def _check_dims(k: int, l: int) -> None:
    if not isinstance(k, (int, np.integer)) or not isinstance(l, (int, np.integer)) or k < 1 or l < 1:
        raise InvalidInputError(f"Dimensions must be positive integers, got ({k},{l})")


def max_time(k: int, l: int, table: Optional[MemoTable] = None) -> int:
    """
    Maximum percolation time M(k, l) of the k x l box.

    Args:
        k: Width
        l: Height
        table: Memo table to use, defaults to the process-wide one

    Returns:
        M(k, l)

    Raises:
        InvalidInputError: If k or l is not a positive integer
    """
    _check_dims(k, l)
    value = base_value(k, l)
    if value is not None:
        return value
    return (table or default_table()).lookup(int(k), int(l))


def argmax_moves(k: int, l: int, table: Optional[MemoTable] = None) -> List[MoveChoice]:
    """
    Every move whose branch attains M(k, l), in move order.

    Raises:
        InvalidInputError: For base dims (a side below 3, or 3x3)
    """
    _check_dims(k, l)
    if min(k, l) < 3 or (k, l) == (3, 3):
        raise InvalidInputError(f"({k},{l}) is a base case; it has no maximizing move")
    table = table or default_table()
    target = max_time(k, l, table)
    karr, larr = np.array([k]), np.array([l])
    choices = []
    for move in Move:
        if not _gate(move, karr, larr)[0]:
            continue
        dk, dl = move.delta
        increment = int(move.increment(k, l))
        if max_time(k - dk, l - dl, table) + increment == target:
            choices.append(MoveChoice(move=move, predecessor=(k - dk, l - dl), increment=increment))
    return choices


def monotonicity_check(limit: int, table: Optional[MemoTable] = None) -> bool:
    """
    Check M(s+1, t) >= M(s, t) + 1 and M(t, s+1) >= M(t, s) + 1 for s >= 1, t >= 2, s + t <= limit.

    Returns:
        True if every inequality holds
    """
    if limit < 3:
        return True
    table = table or default_table()
    table.ensure(limit, limit)
    values = table.array()
    s, t = np.meshgrid(np.arange(1, limit), np.arange(2, limit), indexing="ij")
    keep = s + t <= limit
    s, t = s[keep], t[keep]
    wide = values[s + 1, t] - values[s, t]
    tall = values[t, s + 1] - values[t, s]
    return bool((wide >= 1).all() and (tall >= 1).all())


def save_table(path: Union[str, Path], table: Optional[MemoTable] = None) -> None:
    (table or default_table()).save(path)


def load_table(path: Union[str, Path]) -> MemoTable:
    return MemoTable.load(path)
