"""Numba kernels: the direct convolution and pooling loops, JIT-compiled.

Same results as the numpy backend; only the summation order differs inside
each output element, and both backends accumulate per output element in
input scan order, so results are deterministic per backend.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _conv2d_fwd(x, w, stride, padding, out):
    n, cin, h, wd = x.shape
    cout, _, kh, kw = w.shape
    _, _, oh, ow = out.shape
    for b in range(n):
        for co in range(cout):
            for i in range(oh):
                for j in range(ow):
                    acc = 0.0
                    for ci in range(cin):
                        for p in range(kh):
                            ih = i * stride - padding + p
                            if ih < 0 or ih >= h:
                                continue
                            for q in range(kw):
                                iw = j * stride - padding + q
                                if 0 <= iw < wd:
                                    acc += x[b, ci, ih, iw] * w[co, ci, p, q]
                    out[b, co, i, j] = acc


@njit(cache=True)
def _conv2d_dx(g, w, stride, padding, dx):
    n, cout, oh, ow = g.shape
    _, cin, kh, kw = w.shape
    _, _, h, wd = dx.shape
    for b in range(n):
        for co in range(cout):
            for i in range(oh):
                for j in range(ow):
                    gv = g[b, co, i, j]
                    for ci in range(cin):
                        for p in range(kh):
                            ih = i * stride - padding + p
                            if ih < 0 or ih >= h:
                                continue
                            for q in range(kw):
                                iw = j * stride - padding + q
                                if 0 <= iw < wd:
                                    dx[b, ci, ih, iw] += gv * w[co, ci, p, q]


@njit(cache=True)
def _conv2d_dw(x, g, stride, padding, dw):
    n, cin, h, wd = x.shape
    _, cout, oh, ow = g.shape
    _, _, kh, kw = dw.shape
    for b in range(n):
        for co in range(cout):
            for i in range(oh):
                for j in range(ow):
                    gv = g[b, co, i, j]
                    for ci in range(cin):
                        for p in range(kh):
                            ih = i * stride - padding + p
                            if ih < 0 or ih >= h:
                                continue
                            for q in range(kw):
                                iw = j * stride - padding + q
                                if 0 <= iw < wd:
                                    dw[co, ci, p, q] += gv * x[b, ci, ih, iw]


@njit(cache=True)
def _maxpool2d_fwd(x, kh, kw, sh, sw, out, idx):
    n, c, h, wd = x.shape
    _, _, oh, ow = out.shape
    for b in range(n):
        for ch in range(c):
            for i in range(oh):
                for j in range(ow):
                    best = x[b, ch, i * sh, j * sw]
                    besti = (i * sh) * wd + (j * sw)
                    for p in range(kh):
                        for q in range(kw):
                            v = x[b, ch, i * sh + p, j * sw + q]
                            if v > best:
                                best = v
                                besti = (i * sh + p) * wd + (j * sw + q)
                    out[b, ch, i, j] = best
                    idx[b, ch, i, j] = besti


@njit(cache=True)
def _maxpool2d_bwd(g, idx, wd, dx):
    n, c, oh, ow = g.shape
    for b in range(n):
        for ch in range(c):
            for i in range(oh):
                for j in range(ow):
                    f = idx[b, ch, i, j]
                    dx[b, ch, f // wd, f % wd] += g[b, ch, i, j]


def conv2d_fwd(x, w, stride, padding):
    n, _, h, wd = x.shape
    cout, _, kh, kw = w.shape
    oh = (h + 2 * padding - kh) // stride + 1
    ow = (wd + 2 * padding - kw) // stride + 1
    out = np.empty((n, cout, oh, ow), dtype=x.dtype)
    _conv2d_fwd(x, w, stride, padding, out)
    return out


def conv2d_dx(g, w, stride, padding, h, wd):
    n = g.shape[0]
    cin = w.shape[1]
    dx = np.zeros((n, cin, h, wd), dtype=g.dtype)
    _conv2d_dx(g, w, stride, padding, dx)
    return dx


def conv2d_dw(x, g, stride, padding, kh, kw):
    cout = g.shape[1]
    cin = x.shape[1]
    dw = np.zeros((cout, cin, kh, kw), dtype=x.dtype)
    _conv2d_dw(x, g, stride, padding, dw)
    return dw


def maxpool2d_fwd(x, kh, kw, sh, sw):
    n, c, h, wd = x.shape
    oh = (h - kh) // sh + 1
    ow = (wd - kw) // sw + 1
    out = np.empty((n, c, oh, ow), dtype=x.dtype)
    idx = np.empty((n, c, oh, ow), dtype=np.int32)
    _maxpool2d_fwd(x, kh, kw, sh, sw, out, idx)
    return out, idx


def maxpool2d_bwd(g, idx, h, wd):
    n, c, _, _ = g.shape
    dx = np.zeros((n, c, h, wd), dtype=g.dtype)
    _maxpool2d_bwd(g, idx, wd, dx)
    return dx
