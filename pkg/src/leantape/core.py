"""Dense tensors, dtypes, byte arithmetic, and the deterministic RNG.

Tensors are immutable, row-major, and dense: every tensor owns exactly
numel * dtype-width bytes, so memory accounting is unambiguous. There are
no views or strides.
"""

from __future__ import annotations

import enum

import numpy as np

from .errors import ShapeMismatch


class Dtype(enum.Enum):
    F32 = "f32"
    F64 = "f64"

    @property
    def width(self) -> int:
        return 4 if self is Dtype.F32 else 8

    @property
    def np(self):
        return np.float32 if self is Dtype.F32 else np.float64

    @classmethod
    def parse(cls, s) -> "Dtype":
        if isinstance(s, Dtype):
            return s
        try:
            return {"f32": cls.F32, "f64": cls.F64}[str(s).lower()]
        except KeyError:
            raise ValueError(f"unknown dtype {s!r}; expected 'f32' or 'f64'") from None


class Category(enum.Enum):
    """What a tracked allocation is, for the per-category memory breakdown."""

    NETWORK_INPUT = "network_input"
    ACTIVATION = "activation"
    TAPE_SAVED = "tape_saved"
    PARAMETER = "parameter"
    GRADIENT = "gradient"


def numel(shape) -> int:
    n = 1
    for d in shape:
        if d < 1:
            raise ValueError(f"non-positive dimension in shape {shape}")
        n *= int(d)
    return n


class Tensor:
    """Immutable dense value plus the flags the tape cares about.

    ids are assigned by the owning Tape and are unique within it.
    """

    __slots__ = ("id", "shape", "dtype", "data", "requires_grad", "category", "is_leaf", "name")

    def __init__(self, tid, data, dtype, requires_grad, category, is_leaf, name=""):
        data = np.ascontiguousarray(data, dtype=dtype.np)
        data.setflags(write=False)
        self.id = tid
        self.shape = tuple(int(d) for d in data.shape)
        self.dtype = dtype
        self.data = data
        self.requires_grad = bool(requires_grad)
        self.category = category
        self.is_leaf = bool(is_leaf)
        self.name = name

    @property
    def numel(self) -> int:
        return int(self.data.size)

    @property
    def byte_size(self) -> int:
        return self.numel * self.dtype.width

    def __repr__(self):
        return (f"Tensor(id={self.id}, shape={self.shape}, dtype={self.dtype.value}, "
                f"requires_grad={self.requires_grad})")


def byte_size(t: Tensor) -> int:
    """Bytes owned by a tensor: numel times the dtype width."""
    return t.byte_size


def shape_bytes(shape, dtype: Dtype) -> int:
    return numel(shape) * dtype.width


class Rng:
    """Counter-based generator (Philox 4x64) keyed by (seed, stream).

    Philox is counter-based, so the same (seed, stream) pair yields a
    bit-identical sequence on every run and platform. Streams isolate
    independent consumers: 0 is the network input, 1+i the parameters of
    layer i, DROPOUT_STREAM_BASE+i the dropout mask of graph node i.
    """

    DROPOUT_STREAM_BASE = 1_000_000

    def __init__(self, seed: int, stream: int = 0):
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self.stream = int(stream)
        self._gen = np.random.Generator(np.random.Philox(key=[self.seed, self.stream]))

    def derive(self, stream: int) -> "Rng":
        return Rng(self.seed, stream)

    def normal(self, shape, dtype: Dtype) -> np.ndarray:
        return self._gen.standard_normal(size=tuple(shape), dtype=dtype.np)

    def uniform(self, shape) -> np.ndarray:
        # float64 uniforms in [0, 1); used for dropout mask thresholds.
        return self._gen.random(size=tuple(shape))


def randn(shape, dtype: Dtype, rng: Rng) -> np.ndarray:
    """Standard-normal array; deterministic for a given rng key."""
    return rng.normal(shape, dtype)


def check_same_shape(a: Tensor, b: Tensor, op: str) -> None:
    if a.shape != b.shape:
        raise ShapeMismatch(f"{op}: shapes {a.shape} and {b.shape} differ")
