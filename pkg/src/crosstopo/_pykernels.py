"""Pure-Python component labeling; the reference for the compiled kernel."""

from collections import deque

import numpy as np


def label4(mask):
    """Label 4-connected components of a 2-D boolean mask.

    Returns ``(labels, count)``; labels are 1-based in row-major discovery
    order, background cells are 0.
    """
    mask = np.asarray(mask, dtype=bool)
    rows, cols = mask.shape
    labels = np.zeros((rows, cols), dtype=np.int32)
    count = 0
    for r in range(rows):
        for c in range(cols):
            if not mask[r, c] or labels[r, c]:
                continue
            count += 1
            labels[r, c] = count
            queue = deque([(r, c)])
            while queue:
                i, j = queue.popleft()
                for ni, nj in ((i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)):
                    if 0 <= ni < rows and 0 <= nj < cols and mask[ni, nj] and not labels[ni, nj]:
                        labels[ni, nj] = count
                        queue.append((ni, nj))
    return labels, count
