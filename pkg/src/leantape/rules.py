"""Per-layer storage rules: which values go on the tape, as a function of
the storage policy and the differentiability of the layer's parents.

This table is the single source of truth. The executing layers and the
analytic planner both call :func:`storage_decision`, so a rule change cannot
make them disagree.

Roles:
  x      layer input, kept as a full tensor
  w      layer weight, kept as a full tensor (a pin on parameter memory)
  y      layer output, kept as a full tensor
  a, b   the two operands of an elementwise multiply
  mask   boolean mask of the output (bit-packed or 1 byte/element)
  seed   RNG key for mask replay, fixed 16 bytes
  idx    argmax index map, 4 bytes per output element
  stats  small per-channel / per-sample statistics

The lean policy ("memsave") saves a value iff some backward function that
will actually run reads it. The "naive" policy emulates the documented
default behavior of mainstream frameworks: the linear-in-parameters layers
(conv, transpose conv, batchnorm in eval mode) save input and weight
whenever the output is differentiable, fully-connected layers are already
differentiability-aware, activations save full outputs, dropout saves a
byte mask.
"""

from __future__ import annotations

import enum


class Policy(enum.Enum):
    NAIVE = "naive"
    MEMSAVE = "memsave"

    @classmethod
    def parse(cls, s) -> "Policy":
        if isinstance(s, Policy):
            return s
        try:
            return {"naive": cls.NAIVE, "memsave": cls.MEMSAVE}[str(s).lower()]
        except KeyError:
            raise ValueError(f"unknown policy {s!r}; expected 'naive' or 'memsave'") from None


# Layer kinds with a (weight, optional bias) parameter pair.
PARAMETERIZED_KINDS = ("linear", "conv2d", "conv_transpose2d", "batchnorm2d", "layernorm")

# Kinds the policy converter may swap. Add nodes and reductions save nothing
# under either policy, so there is nothing to swap.
CONVERTIBLE_KINDS = ("linear", "conv2d", "conv_transpose2d", "batchnorm2d",
                     "layernorm", "relu", "dropout", "maxpool2d", "softmax")

ALL_KINDS = CONVERTIBLE_KINDS + ("add", "mul", "scale", "sum")


def storage_decision(kind: str, policy: Policy, *, x_rg: bool, w_rg: bool,
                     out_rg: bool, bn_train: bool = False) -> list[tuple[str, str]]:
    """Return [(role, saved-kind)] for one recorded operation.

    ``x_rg`` / ``w_rg`` are the differentiability flags of the layer input
    and weight; ``out_rg`` is their dominant-inheritance OR (plus bias).
    """
    if kind == "linear":
        # Already differentiability-aware under both policies.
        return _linear_family(x_rg, w_rg)

    if kind in ("conv2d", "conv_transpose2d"):
        if policy is Policy.MEMSAVE:
            return _linear_family(x_rg, w_rg)
        return [("x", "full"), ("w", "full")] if out_rg else []

    if kind == "batchnorm2d":
        if bn_train:
            # Batch statistics make the input VJP depend on x and the stats;
            # the weight VJP needs the normalized input. Identical under
            # both policies.
            saves = []
            if x_rg or w_rg:
                saves += [("x", "full"), ("stats", "stats")]
            if x_rg:
                saves.append(("w", "full"))
            return saves
        # Eval mode behaves like a per-channel linear map.
        if policy is Policy.MEMSAVE:
            return _linear_family(x_rg, w_rg)
        return [("x", "full"), ("w", "full")] if out_rg else []

    if kind == "layernorm":
        # Identical under both policies; no lean variant is provided.
        saves = []
        if x_rg or w_rg:
            saves += [("x", "full"), ("stats", "stats")]
        if x_rg:
            saves.append(("w", "full"))
        return saves

    if kind == "relu":
        if not out_rg:
            return []
        return [("mask", "bitmask")] if policy is Policy.MEMSAVE else [("y", "full")]

    if kind == "dropout":
        if not out_rg:
            return []
        return [("seed", "seed")] if policy is Policy.MEMSAVE else [("mask", "bytemask")]

    if kind == "maxpool2d":
        return [("idx", "indexmap")] if out_rg else []

    if kind == "softmax":
        return [("y", "full")] if out_rg else []

    if kind == "add":
        return []

    if kind == "mul":
        # d(a*b)/da reads b and vice versa; x_rg/w_rg stand for the two
        # operands' flags here.
        saves = []
        if x_rg:
            saves.append(("b", "full"))
        if w_rg:
            saves.append(("a", "full"))
        return saves

    if kind in ("scale", "sum"):
        return []

    raise ValueError(f"no storage rule for op kind {kind!r}")


def _linear_family(x_rg: bool, w_rg: bool) -> list[tuple[str, str]]:
    # The input VJP reads only the weight, the weight VJP only the input,
    # and the bias VJP reads nothing.
    saves = []
    if w_rg:
        saves.append(("x", "full"))
    if x_rg:
        saves.append(("w", "full"))
    return saves
