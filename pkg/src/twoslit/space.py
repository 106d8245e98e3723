"""Two-factor product space with a block-partitioned right factor.

The full space is H_I (x) H_II.  H_I carries the which-slit projector
E_I = diag(1..1, 0..0) of rank dim_i/2; H_II is partitioned into 4 or 8
ordered blocks A_1..A_k on which the detector projectors live.  Basis
ordering: component index = (H_I index) * dim_ii + (H_II index), so
np.kron(left, right) matches the layout.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, ModeError
from .linalg import as_cmatrix, as_cvector

# Detector membership per block, 1-indexed blocks mapped to 0-based flags.
_T_FLAGS = {4: (1, 1, 0, 0), 8: (1, 1, 1, 0, 1, 0, 0, 0)}
_Y_FLAGS = {4: (1, 0, 1, 0), 8: (1, 1, 0, 1, 0, 1, 0, 0)}
_W_FLAGS = {8: (1, 0, 1, 1, 0, 0, 1, 0)}


@dataclass(frozen=True)
class ProductSpace:
    """Dimensions of the two factors plus the right-factor block partition.

    ``partition`` must have length 4 (two-detector mode) or 8
    (three-detector mode); ``dim_i`` must be even, the slit projector rank
    being fixed to ``dim_i // 2``.
    """

    dim_i: int
    partition: tuple

    def __post_init__(self):
        object.__setattr__(self, "partition", tuple(int(b) for b in self.partition))
        if self.dim_i <= 0 or self.dim_i % 2 != 0:
            raise DimensionError(f"dim_i must be a positive even integer, got {self.dim_i}")
        if len(self.partition) not in (4, 8):
            raise ModeError(f"partition must have 4 or 8 blocks, got {len(self.partition)}")
        if any(b <= 0 for b in self.partition):
            raise DimensionError(f"block sizes must be positive, got {self.partition}")

    @property
    def rank_e(self):
        return self.dim_i // 2

    @property
    def dim_ii(self):
        return sum(self.partition)

    @property
    def dim(self):
        return self.dim_i * self.dim_ii

    @property
    def mode(self):
        """3 for a 4-block partition, 4 for an 8-block partition."""
        return 3 if len(self.partition) == 4 else 4

    def block_slices(self):
        """Slice of the H_II coordinate range covered by each block."""
        out, start = [], 0
        for b in self.partition:
            out.append(slice(start, start + b))
            start += b
        return out


def slit_projector(sp: ProductSpace):
    """E_I on H_I: identity on the first rank_e coordinates, zero after."""
    d = np.zeros(sp.dim_i)
    d[: sp.rank_e] = 1.0
    return np.diag(d).astype(complex)


def block_projector(sp: ProductSpace, flags):
    """Diagonal H_II projector selecting the flagged blocks."""
    if len(flags) != len(sp.partition):
        raise ModeError(f"need {len(sp.partition)} flags, got {len(flags)}")
    d = np.concatenate([np.full(b, float(f)) for f, b in zip(flags, sp.partition)])
    return np.diag(d).astype(complex)


def detector_flags(sp: ProductSpace, name):
    """Block membership (0/1 per block) of detector ``name`` in {T, Y, W}."""
    k = len(sp.partition)
    table = {"T": _T_FLAGS, "Y": _Y_FLAGS, "W": _W_FLAGS}.get(name)
    if table is None or k not in table:
        raise ModeError(f"no detector {name!r} in {k}-block mode")
    return table[k]


def detector_projectors(sp: ProductSpace):
    """The H_II detector projectors: (T_II, Y_II) or (T_II, Y_II, W_II).

    In 4-block mode T_II = A1 + A2 and Y_II = A1 + A3; in 8-block mode the
    three detectors overlap pairwise on two blocks each, sharing A1.
    """
    k = len(sp.partition)
    t = block_projector(sp, _T_FLAGS[k])
    y = block_projector(sp, _Y_FLAGS[k])
    if k == 4:
        return t, y
    return t, y, block_projector(sp, _W_FLAGS[k])


def lift_left(a, sp: ProductSpace):
    """a (x) identity, for a square matrix a on H_I."""
    a = as_cmatrix(a)
    if a.shape != (sp.dim_i, sp.dim_i):
        raise DimensionError(f"expected {sp.dim_i}x{sp.dim_i}, got {a.shape}")
    return np.kron(a, np.eye(sp.dim_ii, dtype=complex))


def lift_right(b, sp: ProductSpace):
    """identity (x) b, for a square matrix b on H_II."""
    b = as_cmatrix(b)
    if b.shape != (sp.dim_ii, sp.dim_ii):
        raise DimensionError(f"expected {sp.dim_ii}x{sp.dim_ii}, got {b.shape}")
    return np.kron(np.eye(sp.dim_i, dtype=complex), b)


@dataclass(frozen=True)
class BlockVector:
    """A state split by H_I coordinate and H_II block.

    ``parts[j][k]`` is the block-k sub-vector of the H_II component sitting
    over H_I basis vector j.  ``compose`` inverts ``decompose`` exactly —
    no arithmetic is performed, only slicing and concatenation.
    """

    space: ProductSpace
    parts: tuple  # tuple over H_I index of tuples over blocks of ndarrays


def decompose(psi, sp: ProductSpace) -> BlockVector:
    psi = as_cvector(psi)
    if psi.shape[0] != sp.dim:
        raise DimensionError(f"expected length {sp.dim}, got {psi.shape[0]}")
    rows = psi.reshape(sp.dim_i, sp.dim_ii)
    sl = sp.block_slices()
    parts = tuple(tuple(rows[j, s].copy() for s in sl) for j in range(sp.dim_i))
    return BlockVector(sp, parts)


def compose(bv: BlockVector):
    sp = bv.space
    if len(bv.parts) != sp.dim_i:
        raise DimensionError(f"expected {sp.dim_i} rows, got {len(bv.parts)}")
    rows = []
    for row in bv.parts:
        if len(row) != len(sp.partition):
            raise DimensionError("row has wrong number of blocks")
        rows.append(np.concatenate([np.asarray(b, dtype=complex) for b in row]))
    return np.concatenate(rows)
