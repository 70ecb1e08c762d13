"""Numba-compiled inner loops for the per-frame raster work.

Everything here is deterministic IEEE float64 (no fastmath), so results are
bit-stable across runs and agree with the straightforward double-loop
formulations of the same operations. Kernels are cached to disk; the first
call in a fresh environment pays the JIT cost once.

The Gaussian window is separable (it is an outer product by construction),
so smoothing runs as a vertical then a horizontal 1-D pass; the Sobel masks
factor the same way. The staged edge API and the fused support-mask path
share these routines, which keeps their outputs bit-identical.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def luma(rgb):
    """Integer round-half-up of 0.299r + 0.587g + 0.114b, as float64."""
    h, w = rgb.shape[0], rgb.shape[1]
    out = np.empty((h, w), np.float64)
    for i in range(h):
        for j in range(w):
            v = (
                299 * np.int64(rgb[i, j, 0])
                + 587 * np.int64(rgb[i, j, 1])
                + 114 * np.int64(rgb[i, j, 2])
                + 500
            ) // 1000
            out[i, j] = v
    return out


@njit(cache=True, nogil=True)
def _smooth3(img, g1):
    """Unrolled w=3 case of smooth_replicate; identical arithmetic."""
    h, w = img.shape
    g0, gm, g2 = g1[0], g1[1], g1[2]
    tmp = np.empty((h, w), np.float64)
    for i in range(h):
        iu = i - 1 if i > 0 else 0
        idn = i + 1 if i < h - 1 else h - 1
        for j in range(w):
            tmp[i, j] = g0 * img[iu, j] + gm * img[i, j] + g2 * img[idn, j]
    out = np.empty((h, w), np.float64)
    for i in range(h):
        out[i, 0] = g0 * tmp[i, 0] + gm * tmp[i, 0] + g2 * tmp[i, min(1, w - 1)]
        for j in range(1, w - 1):
            out[i, j] = g0 * tmp[i, j - 1] + gm * tmp[i, j] + g2 * tmp[i, j + 1]
        if w > 1:
            out[i, w - 1] = g0 * tmp[i, w - 2] + gm * tmp[i, w - 1] + g2 * tmp[i, w - 1]
    return out


@njit(cache=True, nogil=True)
def smooth_replicate(img, g1):
    """Separable convolution with the 1-D window g1, replicating the border."""
    if g1.size == 3:
        return _smooth3(img, g1)
    h, w = img.shape
    r = g1.size // 2
    tmp = np.zeros((h, w), np.float64)
    for i in range(h):
        for a in range(-r, r + 1):
            ii = i + a
            if ii < 0:
                ii = 0
            elif ii >= h:
                ii = h - 1
            ga = g1[a + r]
            for j in range(w):
                tmp[i, j] += ga * img[ii, j]
    out = np.empty((h, w), np.float64)
    for i in range(h):
        for j in range(min(r, w)):
            acc = 0.0
            for b in range(-r, r + 1):
                jj = j + b
                if jj < 0:
                    jj = 0
                elif jj >= w:
                    jj = w - 1
                acc += g1[b + r] * tmp[i, jj]
            out[i, j] = acc
        for j in range(r, w - r):
            acc = 0.0
            for b in range(-r, r + 1):
                acc += g1[b + r] * tmp[i, j + b]
            out[i, j] = acc
        for j in range(max(w - r, r), w):
            acc = 0.0
            for b in range(-r, r + 1):
                jj = j + b
                if jj < 0:
                    jj = 0
                elif jj >= w:
                    jj = w - 1
                acc += g1[b + r] * tmp[i, jj]
            out[i, j] = acc
    return out


@njit(cache=True, nogil=True)
def _sobel_passes(img):
    """Column factors of the Sobel masks: A = [1,2,1], B = [-1,0,1]."""
    h, w = img.shape
    a = np.zeros((h, w), np.float64)
    b = np.zeros((h, w), np.float64)
    for i in range(1, h - 1):
        for j in range(w):
            a[i, j] = img[i - 1, j] + 2.0 * img[i, j] + img[i + 1, j]
            b[i, j] = img[i + 1, j] - img[i - 1, j]
    return a, b


@njit(cache=True, nogil=True)
def sobel(img):
    """Sobel responses, gradient magnitude, and the magnitude extrema.

    The one-pixel border of all grids is zero and counts toward the
    extrema (the masks do not fit there).
    """
    h, w = img.shape
    a, b = _sobel_passes(img)
    eh = np.zeros((h, w), np.float64)
    ev = np.zeros((h, w), np.float64)
    e = np.zeros((h, w), np.float64)
    emin = 0.0
    emax = 0.0
    for i in range(1, h - 1):
        for j in range(1, w - 1):
            gh = a[i, j + 1] - a[i, j - 1]
            gv = b[i, j - 1] + 2.0 * b[i, j] + b[i, j + 1]
            eh[i, j] = gh
            ev[i, j] = gv
            m = np.sqrt(gh * gh + gv * gv)
            e[i, j] = m
            if m > emax:
                emax = m
    return eh, ev, e, emin, emax


@njit(cache=True, nogil=True)
def _sobel_mag(img):
    """Gradient magnitude only, same arithmetic as sobel().

    Works row by row: only row i of the column factors is needed for row i
    of the magnitude, so two scratch rows replace the full-size grids.
    """
    h, w = img.shape
    e = np.zeros((h, w), np.float64)
    arow = np.empty(w, np.float64)
    brow = np.empty(w, np.float64)
    emin = 0.0
    emax = 0.0
    for i in range(1, h - 1):
        for j in range(w):
            arow[j] = img[i - 1, j] + 2.0 * img[i, j] + img[i + 1, j]
            brow[j] = img[i + 1, j] - img[i - 1, j]
        for j in range(1, w - 1):
            gh = arow[j + 1] - arow[j - 1]
            gv = brow[j - 1] + 2.0 * brow[j] + brow[j + 1]
            m = np.sqrt(gh * gh + gv * gv)
            e[i, j] = m
            if m > emax:
                emax = m
    return e, emin, emax


@njit(cache=True, nogil=True)
def edge_support(img, g1, t):
    """Fused smooth -> Sobel -> normalize -> threshold support mask.

    Produces exactly the nonzero set of the staged chain's final edge image
    (same per-pixel arithmetic) without materializing the response grids.
    """
    h, w = img.shape
    sm = smooth_replicate(img, g1)
    e, emin, emax = _sobel_mag(sm)
    out = np.zeros((h, w), np.uint8)
    if emax > emin:
        denom = emax - emin
        for i in range(h):
            for j in range(w):
                en = np.floor(255.0 * (e[i, j] - emin) / denom + 0.5)
                if en >= t and en > 0.0:
                    out[i, j] = 1
    return out


@njit(cache=True, nogil=True)
def red_mask(rgb, min_red, min_dominance):
    """1 where r >= min_red and r - max(g, b) >= min_dominance."""
    h, w = rgb.shape[0], rgb.shape[1]
    out = np.zeros((h, w), np.uint8)
    for i in range(h):
        for j in range(w):
            r = rgb[i, j, 0]
            if r >= min_red:
                g = rgb[i, j, 1]
                b = rgb[i, j, 2]
                gb = g if g > b else b
                if np.int64(r) - np.int64(gb) >= min_dominance:
                    out[i, j] = 1
    return out


@njit(cache=True, nogil=True)
def diff_mask(cur, prev, threshold):
    """1 where any channel changed by more than the threshold."""
    h, w = cur.shape[0], cur.shape[1]
    out = np.zeros((h, w), np.uint8)
    for i in range(h):
        for j in range(w):
            for c in range(3):
                d = np.int64(cur[i, j, c]) - np.int64(prev[i, j, c])
                if d < 0:
                    d = -d
                if d > threshold:
                    out[i, j] = 1
                    break
    return out


@njit(cache=True, nogil=True)
def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


@njit(cache=True, nogil=True)
def label_two_pass(mask, eight_connected):
    """Two-pass connected-component labeling with union-find equivalences.

    Labels are renumbered 1..count in row-major first-encounter order on the
    second pass, which makes the result fully deterministic.
    """
    h, w = mask.shape
    labels = np.zeros((h, w), np.int32)
    parent = np.zeros(h * w // 2 + 2, np.int32)
    next_label = 1
    for i in range(h):
        for j in range(w):
            if mask[i, j] == 0:
                continue
            # roots of the already-scanned neighbors
            r_up = _find(parent, labels[i - 1, j]) if i > 0 and labels[i - 1, j] > 0 else 0
            r_left = _find(parent, labels[i, j - 1]) if j > 0 and labels[i, j - 1] > 0 else 0
            r_ul = 0
            r_ur = 0
            if eight_connected and i > 0:
                if j > 0 and labels[i - 1, j - 1] > 0:
                    r_ul = _find(parent, labels[i - 1, j - 1])
                if j < w - 1 and labels[i - 1, j + 1] > 0:
                    r_ur = _find(parent, labels[i - 1, j + 1])
            best = 0
            for r in (r_up, r_left, r_ul, r_ur):
                if r > 0 and (best == 0 or r < best):
                    best = r
            if best == 0:
                labels[i, j] = next_label
                parent[next_label] = next_label
                next_label += 1
            else:
                labels[i, j] = best
                for r in (r_up, r_left, r_ul, r_ur):
                    if r > 0 and r != best:
                        parent[r] = best
    remap = np.zeros(next_label, np.int32)
    count = 0
    for i in range(h):
        for j in range(w):
            if labels[i, j] > 0:
                root = _find(parent, labels[i, j])
                if remap[root] == 0:
                    count += 1
                    remap[root] = count
                labels[i, j] = remap[root]
    return labels, count
