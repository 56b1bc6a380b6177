# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled component labeling, same contract as ``_pykernels.label4``."""

import numpy as np
cimport cython


def label4(mask):
    cdef unsigned char[:, :] m = np.ascontiguousarray(mask, dtype=np.uint8)
    cdef Py_ssize_t rows = m.shape[0], cols = m.shape[1]
    out = np.zeros((rows, cols), dtype=np.int32)
    cdef int[:, :] labels = out
    queue_arr = np.empty(rows * cols if rows * cols > 0 else 1, dtype=np.intp)
    cdef Py_ssize_t[:] queue = queue_arr
    cdef Py_ssize_t r, c, head, tail, cell, i, j
    cdef int count = 0
    for r in range(rows):
        for c in range(cols):
            if m[r, c] == 0 or labels[r, c] != 0:
                continue
            count += 1
            labels[r, c] = count
            head = 0
            tail = 1
            queue[0] = r * cols + c
            while head < tail:
                cell = queue[head]
                head += 1
                i = cell // cols
                j = cell % cols
                if i > 0 and m[i - 1, j] and labels[i - 1, j] == 0:
                    labels[i - 1, j] = count
                    queue[tail] = cell - cols
                    tail += 1
                if i + 1 < rows and m[i + 1, j] and labels[i + 1, j] == 0:
                    labels[i + 1, j] = count
                    queue[tail] = cell + cols
                    tail += 1
                if j > 0 and m[i, j - 1] and labels[i, j - 1] == 0:
                    labels[i, j - 1] = count
                    queue[tail] = cell - 1
                    tail += 1
                if j + 1 < cols and m[i, j + 1] and labels[i, j + 1] == 0:
                    labels[i, j + 1] = count
                    queue[tail] = cell + 1
                    tail += 1
    return out, count
