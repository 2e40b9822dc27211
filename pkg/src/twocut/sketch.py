"""Linear L0 sketches over sparse nonnegative-weight vectors.

A sketch keeps, per subsampling level, a few one-sparse recovery cells
(weight sum, index-weighted sum, modular fingerprint). Level j sees each
coordinate with probability 2**-j, fixed by hashing the coordinate with the
sketch seed, so sketches with equal seeds add, subtract, and merge
coordinate-wise. Recovery scans levels for a cell that verifies as exactly
one surviving coordinate and returns it; conditioned on success the result
is uniform over the nonzero support.
"""

from __future__ import annotations


_PRIME = (1 << 61) - 1
_SPLIT = 0x9E3779B97F4A7C15


def _mix(x: int) -> int:
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9 % (1 << 64)
    x = (x ^ (x >> 27)) * 0x94D049BB133111EB % (1 << 64)
    return x ^ (x >> 31)


def coordinate_level(seed: int, rep: int, index: int, max_level: int) -> int:
    """Deterministic level of a coordinate: trailing ones of its hash."""
    h = _mix((seed * 0x100000001B3 + rep * _SPLIT + index * 2654435761) % (1 << 64))
    level = 0
    while h & 1 and level < max_level:
        level += 1
        h >>= 1
    return level


class L0Sketch:
    """One-sparse recovery cells over levels 0..L, `reps` independent copies."""

    def __init__(self, index_space: int, seed: int, reps: int = 2):
        self.space = int(index_space)
        self.seed = int(seed)
        self.reps = int(reps)
        self.levels = max(1, int(index_space).bit_length())
        self.cell_w = [[0] * self.levels for _ in range(reps)]
        self.cell_wx = [[0] * self.levels for _ in range(reps)]
        self.cell_fp = [[0] * self.levels for _ in range(reps)]
        self._root = pow(3, (self.seed % (_PRIME - 2)) + 1, _PRIME)

    @property
    def word_count(self) -> int:
        return 3 * self.reps * self.levels

    def _fp(self, index: int) -> int:
        return pow(self._root, index + 1, _PRIME)

    def update(self, index: int, delta: int):
        """Add delta (may be negative) to one coordinate."""
        if not (0 <= index < self.space):
            raise ValueError(f"index {index} out of range")
        for r in range(self.reps):
            top = coordinate_level(self.seed, r, index, self.levels - 1)
            fp = self._fp(index)
            for lvl in range(top + 1):
                self.cell_w[r][lvl] += delta
                self.cell_wx[r][lvl] += delta * index
                self.cell_fp[r][lvl] = (self.cell_fp[r][lvl] + delta % _PRIME * fp) % _PRIME

    def merge(self, other: "L0Sketch"):
        """Coordinate-wise sum; sketches must share seed and shape."""
        if (self.seed, self.space, self.reps) != (other.seed, other.space, other.reps):
            raise ValueError("sketches are not mergeable")
        for r in range(self.reps):
            for lvl in range(self.levels):
                self.cell_w[r][lvl] += other.cell_w[r][lvl]
                self.cell_wx[r][lvl] += other.cell_wx[r][lvl]
                self.cell_fp[r][lvl] = (self.cell_fp[r][lvl] + other.cell_fp[r][lvl]) % _PRIME

    def copy(self) -> "L0Sketch":
        out = L0Sketch(self.space, self.seed, self.reps)
        for r in range(self.reps):
            out.cell_w[r] = list(self.cell_w[r])
            out.cell_wx[r] = list(self.cell_wx[r])
            out.cell_fp[r] = list(self.cell_fp[r])
        return out

    def subtract(self, items):
        """Remove known (index, weight) content (linearity)."""
        for index, weight in items:
            self.update(index, -weight)

    def recover(self):
        """(index, weight) of a surviving coordinate, or None.

        Scans sparse levels first; a cell passes only if its sums describe a
        single coordinate and the fingerprint confirms it.
        """
        for lvl in range(self.levels - 1, -1, -1):
            for r in range(self.reps):
                w = self.cell_w[r][lvl]
                if w == 0:
                    continue
                wx = self.cell_wx[r][lvl]
                if wx % w:
                    continue
                idx = wx // w
                if not (0 <= idx < self.space):
                    continue
                if self.cell_fp[r][lvl] != w % _PRIME * self._fp(idx) % _PRIME:
                    continue
                if coordinate_level(self.seed, r, idx, self.levels - 1) < lvl:
                    continue
                return int(idx), int(w)
        return None


def l0_update(sketch: L0Sketch, index, delta):
    sketch.update(index, delta)


def l0_subtract(sketch: L0Sketch, items):
    sketch.subtract(items)


def l0_recover(sketch: L0Sketch):
    return sketch.recover()
