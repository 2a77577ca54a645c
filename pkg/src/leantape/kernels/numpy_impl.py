"""Pure-numpy kernels: direct convolution by accumulation over kernel
offsets (no materialized patch matrix) and windowed max pooling.

Selected when LEANTAPE_JIT=0 or numba is unavailable.
"""

from __future__ import annotations

import numpy as np


def conv2d_fwd(x, w, stride, padding):
    n, cin, h, wd = x.shape
    cout, _, kh, kw = w.shape
    oh = (h + 2 * padding - kh) // stride + 1
    ow = (wd + 2 * padding - kw) // stride + 1
    xp = np.pad(x, ((0, 0), (0, 0), (padding, padding), (padding, padding)))
    out = np.zeros((n, cout, oh, ow), dtype=x.dtype)
    for i in range(kh):
        for j in range(kw):
            xs = xp[:, :, i:i + stride * (oh - 1) + 1:stride,
                    j:j + stride * (ow - 1) + 1:stride]
            out += np.einsum("nchw,oc->nohw", xs, w[:, :, i, j], optimize=True)
    return out


def conv2d_dx(g, w, stride, padding, h, wd):
    n, cout, oh, ow = g.shape
    _, cin, kh, kw = w.shape
    dxp = np.zeros((n, cin, h + 2 * padding, wd + 2 * padding), dtype=g.dtype)
    for i in range(kh):
        for j in range(kw):
            contrib = np.einsum("nohw,oc->nchw", g, w[:, :, i, j], optimize=True)
            dxp[:, :, i:i + stride * (oh - 1) + 1:stride,
                j:j + stride * (ow - 1) + 1:stride] += contrib
    if padding:
        return np.ascontiguousarray(dxp[:, :, padding:padding + h, padding:padding + wd])
    return dxp


def conv2d_dw(x, g, stride, padding, kh, kw):
    n, cin, h, wd = x.shape
    _, cout, oh, ow = g.shape
    xp = np.pad(x, ((0, 0), (0, 0), (padding, padding), (padding, padding)))
    dw = np.zeros((cout, cin, kh, kw), dtype=x.dtype)
    for i in range(kh):
        for j in range(kw):
            xs = xp[:, :, i:i + stride * (oh - 1) + 1:stride,
                    j:j + stride * (ow - 1) + 1:stride]
            dw[:, :, i, j] = np.einsum("nohw,nchw->oc", g, xs, optimize=True)
    return dw


def maxpool2d_fwd(x, kh, kw, sh, sw):
    n, c, h, wd = x.shape
    oh = (h - kh) // sh + 1
    ow = (wd - kw) // sw + 1
    out = np.full((n, c, oh, ow), -np.inf, dtype=x.dtype)
    idx = np.zeros((n, c, oh, ow), dtype=np.int32)
    # Offsets scanned in row-major order; strict > keeps the first occurrence.
    for i in range(kh):
        for j in range(kw):
            cand = x[:, :, i:i + sh * (oh - 1) + 1:sh, j:j + sw * (ow - 1) + 1:sw]
            rows = np.arange(oh) * sh + i
            cols = np.arange(ow) * sw + j
            flat = (rows[:, None] * wd + cols[None, :]).astype(np.int32)
            better = cand > out
            out = np.where(better, cand, out)
            idx = np.where(better, flat[None, None], idx)
    return out, idx


def maxpool2d_bwd(g, idx, h, wd):
    n, c, oh, ow = g.shape
    dx = np.zeros((n * c, h * wd), dtype=g.dtype)
    rows = np.arange(n * c)[:, None]
    np.add.at(dx, (rows, idx.reshape(n * c, -1)), g.reshape(n * c, -1))
    return dx.reshape(n, c, h, wd)
