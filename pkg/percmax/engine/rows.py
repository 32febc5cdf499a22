"""Two-dimensional grids stored as rows of 64-bit words."""

import numpy as np

WORD = 64

_ONE = np.uint64(1)
_TOP = np.uint64(WORD - 1)


class PackedRows:
    """
    Bit-packed rows of a width x height box or torus.

    Cell (x, y) is bit (x-1) % 64 of word (x-1) // 64 in row y-1. Bits past
    the width are kept at zero.
    """

    def __init__(self, width: int, height: int, wrap: bool = False):
        self.width, self.height, self.wrap = width, height, wrap
        self.words = -(-width // WORD)
        self.last_bit = np.uint64((width - 1) % WORD)
        self.tail_mask = np.uint64((1 << ((width - 1) % WORD + 1)) - 1)

    def pack(self, mask: np.ndarray) -> np.ndarray:
        """Rows of a boolean (height, width) mask as a (height, words) uint64 array."""
        padded = np.zeros((self.height, self.words * WORD), dtype=bool)
        padded[:, : self.width] = mask
        packed = np.packbits(padded.reshape(self.height, self.words, WORD), axis=-1, bitorder="little")
        return np.ascontiguousarray(packed).view("<u8").reshape(self.height, self.words).astype(np.uint64)

    def unpack(self, rows: np.ndarray) -> np.ndarray:
        raw = rows.astype("<u8").view(np.uint8).reshape(self.height, self.words, 8)
        bits = np.unpackbits(raw, axis=-1, bitorder="little").reshape(self.height, self.words * WORD)
        return bits[:, : self.width].astype(bool)

    def _from_left(self, rows: np.ndarray) -> np.ndarray:
        out = rows << _ONE
        # carry the top bit of each word into the next word
        out[:, 1:] |= rows[:, :-1] >> _TOP
        if self.wrap:
            out[:, 0] |= (rows[:, -1] >> self.last_bit) & _ONE
        out[:, -1] &= self.tail_mask
        return out

    def _from_right(self, rows: np.ndarray) -> np.ndarray:
        out = rows >> _ONE
        out[:, :-1] |= rows[:, 1:] << _TOP
        if self.wrap:
            out[:, -1] |= (rows[:, 0] & _ONE) << self.last_bit
        return out

    def _from_below(self, rows: np.ndarray) -> np.ndarray:
        out = np.zeros_like(rows)
        out[1:] = rows[:-1]
        if self.wrap:
            out[0] = rows[-1]
        return out

    def _from_above(self, rows: np.ndarray) -> np.ndarray:
        out = np.zeros_like(rows)
        out[:-1] = rows[1:]
        if self.wrap:
            out[-1] = rows[0]
        return out

    def step(self, rows: np.ndarray, threshold: int = 2) -> np.ndarray:
        """
        One synchronous round on packed rows.

        The four neighbour planes are summed bitwise into a 3-bit counter
        (ones, twos, fours), so every word is updated in a handful of
        word operations.

        Args:
            rows: Packed infected cells
            threshold: Infected neighbours needed to become infected

        Returns:
            Packed infected cells after the round
        """
        a, b = self._from_left(rows), self._from_right(rows)
        c, d = self._from_below(rows), self._from_above(rows)
        x1, c1 = a ^ b, a & b
        x2, c2 = c ^ d, c & d
        ones = x1 ^ x2
        # c1 and x1 are never both set, so the twos bit has no carry of its own
        twos = c1 ^ c2 ^ (x1 & x2)
        fours = c1 & c2
        if threshold <= 1:
            grown = ones | twos | fours
        elif threshold == 2:
            grown = twos | fours
        elif threshold == 3:
            grown = fours | (twos & ones)
        elif threshold == 4:
            grown = fours
        else:
            grown = np.zeros_like(rows)
        return rows | grown
