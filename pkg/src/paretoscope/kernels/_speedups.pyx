# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot kernels (see _fallback for semantics)."""

import numpy as np

cimport numpy as cnp
from libc.math cimport log2

cnp.import_array()


def mimo_objective_table(double[::1] K, double[::1] N, double[::1] P,
                         double B, double sigma2, double area, double lam1,
                         double lam2, double upsilon, double eta, double c_n,
                         double c_k, double c_0, double l_eff):
    cdef Py_ssize_t n = K.shape[0]
    cdef Py_ssize_t i
    cdef double k, nn, p, prelog, sinr, g1, ptot
    out_arr = np.empty((n, 3), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    for i in range(n):
        k = K[i]
        nn = N[i]
        p = P[i]
        prelog = B * (1.0 - k / upsilon)
        sinr = (p / k) * (nn - k) / (sigma2 * lam1 + p * lam2)
        g1 = prelog * log2(1.0 + sinr)
        ptot = p / eta + nn * c_n + k * c_k + 3.0 * k * k * nn * (B / upsilon) / l_eff + c_0
        out[i, 0] = g1
        out[i, 1] = (k / area) * g1
        out[i, 2] = k * g1 / ptot
    return out_arr


def pareto_survivor_mask(double[:, ::1] values):
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t m = values.shape[1]
    cdef Py_ssize_t i, j, r, count = 0
    cdef Py_ssize_t idx
    cdef bint all_ge, any_gt, dominated
    order_arr = np.argsort(-np.asarray(values).sum(axis=1), kind="stable")
    cdef long long[::1] order = np.ascontiguousarray(order_arr, dtype=np.int64)
    mask_arr = np.ones(n, dtype=np.uint8)
    cdef unsigned char[::1] mask = mask_arr
    surv_arr = np.empty((n, m), dtype=np.float64)
    cdef double[:, ::1] surv = surv_arr
    for i in range(n):
        idx = order[i]
        dominated = False
        for r in range(count):
            all_ge = True
            any_gt = False
            for j in range(m):
                if surv[r, j] < values[idx, j]:
                    all_ge = False
                    break
                if surv[r, j] > values[idx, j]:
                    any_gt = True
            if all_ge and any_gt:
                dominated = True
                break
        if dominated:
            mask[idx] = 0
        else:
            for j in range(m):
                surv[count, j] = values[idx, j]
            count += 1
    return mask_arr.astype(bool)
