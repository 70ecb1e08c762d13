"""Independent brute-force reference implementations for oracle tests.

Everything here is deliberately written the slow, obvious way and shares no
code with the package internals.
"""

from collections import deque

import numpy as np

SOBEL_H = np.array([[-1, 0, 1], [-2, 0, 2], [-1, 0, 1]], dtype=np.float64)
SOBEL_V = np.array([[-1, -2, -1], [0, 0, 0], [1, 2, 1]], dtype=np.float64)


def conv2d_replicate(img: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Direct double-loop 2-D convolution with border replication."""
    h, w = img.shape
    r = weights.shape[0] // 2
    out = np.zeros((h, w), dtype=np.float64)
    for i in range(h):
        for j in range(w):
            acc = 0.0
            for a in range(-r, r + 1):
                for b in range(-r, r + 1):
                    ii = min(max(i + a, 0), h - 1)
                    jj = min(max(j + b, 0), w - 1)
                    acc += weights[a + r, b + r] * img[ii, jj]
            out[i, j] = acc
    return out


def sobel_magnitude(img: np.ndarray):
    """Direct double-loop Sobel responses and magnitude, zero border."""
    h, w = img.shape
    eh = np.zeros((h, w), dtype=np.float64)
    ev = np.zeros((h, w), dtype=np.float64)
    e = np.zeros((h, w), dtype=np.float64)
    for i in range(1, h - 1):
        for j in range(1, w - 1):
            sh = 0.0
            sv = 0.0
            for a in (-1, 0, 1):
                for b in (-1, 0, 1):
                    v = img[i + a, j + b]
                    sh += SOBEL_H[a + 1, b + 1] * v
                    sv += SOBEL_V[a + 1, b + 1] * v
            eh[i, j] = sh
            ev[i, j] = sv
            e[i, j] = np.sqrt(sh * sh + sv * sv)
    return eh, ev, e


def flood_fill_labels(mask: np.ndarray, connectivity: int):
    """BFS flood fill, regions numbered in row-major first-encounter order."""
    h, w = mask.shape
    if connectivity == 8:
        neighbors = [(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)]
    else:
        neighbors = [(-1, 0), (0, -1), (0, 1), (1, 0)]
    labels = np.zeros((h, w), dtype=np.int32)
    count = 0
    for i in range(h):
        for j in range(w):
            if mask[i, j] == 0 or labels[i, j] != 0:
                continue
            count += 1
            queue = deque([(i, j)])
            labels[i, j] = count
            while queue:
                y, x = queue.popleft()
                for dy, dx in neighbors:
                    ny, nx = y + dy, x + dx
                    if 0 <= ny < h and 0 <= nx < w and mask[ny, nx] and labels[ny, nx] == 0:
                        labels[ny, nx] = count
                        queue.append((ny, nx))
    return labels, count


def bresenham_line(x0: int, y0: int, x1: int, y1: int) -> list[tuple[int, int]]:
    """Classic incremental-error line; independent of the package's drawer."""
    points = []
    steep = abs(y1 - y0) > abs(x1 - x0)
    if steep:
        x0, y0, x1, y1 = y0, x0, y1, x1
    swapped = x0 > x1
    if swapped:
        x0, x1 = x1, x0
        y0, y1 = y1, y0
    dx = x1 - x0
    dy = abs(y1 - y0)
    err = dx // 2
    ystep = 1 if y0 < y1 else -1
    y = y0
    for x in range(x0, x1 + 1):
        points.append((y, x) if steep else (x, y))
        err -= dy
        if err < 0:
            y += ystep
            err += dx
    if swapped:
        points.reverse()
    return points
