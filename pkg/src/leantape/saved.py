"""What the tape retains for backward: full tensors, packed masks, seeds,
argmax maps, or small per-channel statistics.

Each variant reports its byte cost deterministically. Reads are instrumented
so tests can assert that every value kept under the lean policy is actually
consumed by some backward function.
"""

from __future__ import annotations

import math

import numpy as np

from .core import Tensor


class SavedValue:
    kind = "abstract"

    def __init__(self):
        self.was_read = False

    def nbytes(self) -> int:
        raise NotImplementedError

    def _mark(self):
        self.was_read = True


class FullTensor(SavedValue):
    """Keeps a whole tensor alive for backward. Byte cost is the tensor's
    own size; the tape deduplicates by tensor id."""

    kind = "full"

    def __init__(self, tensor: Tensor):
        super().__init__()
        self.tensor = tensor

    @property
    def tensor_id(self) -> int:
        return self.tensor.id

    def nbytes(self) -> int:
        return self.tensor.byte_size

    def get(self) -> np.ndarray:
        self._mark()
        return self.tensor.data


class BitMask(SavedValue):
    """Boolean mask bit-packed to ceil(numel/8) bytes."""

    kind = "bitmask"

    def __init__(self, mask: np.ndarray):
        super().__init__()
        flat = np.asarray(mask, dtype=bool).ravel()
        self._numel = flat.size
        self._shape = tuple(mask.shape)
        self._bits = np.packbits(flat)

    def nbytes(self) -> int:
        return math.ceil(self._numel / 8)

    def get(self) -> np.ndarray:
        self._mark()
        flat = np.unpackbits(self._bits, count=self._numel).astype(bool)
        return flat.reshape(self._shape)


class ByteMask(SavedValue):
    """Boolean mask at one byte per element (the un-packed convention)."""

    kind = "bytemask"

    def __init__(self, mask: np.ndarray):
        super().__init__()
        self._mask = np.asarray(mask, dtype=np.uint8)

    def nbytes(self) -> int:
        return int(self._mask.size)

    def get(self) -> np.ndarray:
        self._mark()
        return self._mask.astype(bool)


class RngSeed(SavedValue):
    """Seed plus drop probability; the mask is regenerated in backward.
    Constant 16 bytes regardless of tensor size."""

    kind = "seed"

    def __init__(self, seed: int, stream: int, p: float):
        super().__init__()
        self.seed = seed
        self.stream = stream
        self.p = p

    def nbytes(self) -> int:
        return 16

    def get(self):
        self._mark()
        return (self.seed, self.stream, self.p)


class IndexMap(SavedValue):
    """Argmax positions at 4 bytes per output element."""

    kind = "indexmap"

    def __init__(self, indices: np.ndarray):
        super().__init__()
        self._idx = np.asarray(indices, dtype=np.int32)

    def nbytes(self) -> int:
        return int(self._idx.size) * 4

    def get(self) -> np.ndarray:
        self._mark()
        return self._idx


class SmallStats(SavedValue):
    """Per-channel or per-sample statistics (means / inverse stds)."""

    kind = "stats"

    def __init__(self, **arrays):
        super().__init__()
        self._arrays = {k: np.asarray(v) for k, v in arrays.items()}

    def nbytes(self) -> int:
        return int(sum(a.nbytes for a in self._arrays.values()))

    def get(self) -> dict:
        self._mark()
        return self._arrays
