"""Naive dense-matrix simulator over the arc basis.

Deliberately independent of :mod:`robustwalk.fullspace`: operators are built
as explicit matrices straight from their definitions (loops over arcs, no
shared vectorized code) and applied by plain matrix-vector products.  This is
the cross-check oracle for the structured simulator, intended for
2 * N_l * N_r up to a few hundred.

Arc indexing: arc (left u -> right v) sits at u * N_r + v; arc
(right v -> left u) sits at N_l * N_r + v * N_l + u.
"""

from __future__ import annotations

import numpy as np

from .fullspace import BipartiteInstance, SuccessSeries
from .schedule import AngleSchedule


def dimension(instance: BipartiteInstance) -> int:
    return 2 * instance.N_l * instance.N_r


def left_arc(instance: BipartiteInstance, u: int, v: int) -> int:
    return u * instance.N_r + v

def right_arc(instance: BipartiteInstance, v: int, u: int) -> int:
    return instance.N_l * instance.N_r + v * instance.N_l + u


def shift_matrix(instance: BipartiteInstance) -> np.ndarray:
    """Permutation matrix swapping arc (u, v) with arc (v, u)."""
    d = dimension(instance)
    S = np.zeros((d, d), dtype=complex)
    for u in range(instance.N_l):
        for v in range(instance.N_r):
            i = left_arc(instance, u, v)
            j = right_arc(instance, v, u)
            S[j, i] = 1.0
            S[i, j] = 1.0
    return S


def coin_projector(instance: BipartiteInstance) -> np.ndarray:
    """Block-diagonal sum of |s_u><s_u| over all positions u."""
    d = dimension(instance)
    P = np.zeros((d, d), dtype=complex)
    for u in range(instance.N_l):
        for v in range(instance.N_r):
            for w in range(instance.N_r):
                P[left_arc(instance, u, v), left_arc(instance, u, w)] = 1.0 / instance.N_r
    for v in range(instance.N_r):
        for u in range(instance.N_l):
            for w in range(instance.N_l):
                P[right_arc(instance, v, u), right_arc(instance, v, w)] = 1.0 / instance.N_l
    return P


def coin_matrix(instance: BipartiteInstance, alpha: float) -> np.ndarray:
    """(1 - e^{-i alpha}) |s_u><s_u| - I on every position block."""
    d = dimension(instance)
    return (1.0 - np.exp(-1j * alpha)) * coin_projector(instance) - np.eye(d, dtype=complex)


def oracle_matrix(instance: BipartiteInstance, beta: float) -> np.ndarray:
    """Diagonal phase e^{i beta} on arcs whose position register is marked."""
    d = dimension(instance)
    diag = np.ones(d, dtype=complex)
    for u in instance.marked_left:
        for v in range(instance.N_r):
            diag[left_arc(instance, u, v)] = np.exp(1j * beta)
    for v in instance.marked_right:
        for u in range(instance.N_l):
            diag[right_arc(instance, v, u)] = np.exp(1j * beta)
    return np.diag(diag)


def initial_vector(instance: BipartiteInstance) -> np.ndarray:
    d = dimension(instance)
    return np.full(d, 1.0 / np.sqrt(d), dtype=complex)


def marked_arc_mask(instance: BipartiteInstance) -> np.ndarray:
    """True on arcs (u, v) with u marked or v marked."""
    d = dimension(instance)
    mask = np.zeros(d, dtype=bool)
    for u in range(instance.N_l):
        for v in range(instance.N_r):
            hit = u in instance.marked_left or v in instance.marked_right
            mask[left_arc(instance, u, v)] = hit
            mask[right_arc(instance, v, u)] = hit
    return mask


def run_dense(instance: BipartiteInstance, schedule: AngleSchedule):
    """Apply the scheduled steps via explicit matrices; mirrors fullspace.run.

    The angle-independent pieces (shift, coin projector, marked diagonal) are
    assembled once; each step then multiplies three dense matrices into the
    state.
    """
    psi = initial_vector(instance)
    mask = marked_arc_mask(instance)
    d = dimension(instance)
    S = shift_matrix(instance)
    P = coin_projector(instance)
    eye = np.eye(d, dtype=complex)
    marked_pos = np.zeros(d, dtype=bool)
    for u in instance.marked_left:
        for v in range(instance.N_r):
            marked_pos[left_arc(instance, u, v)] = True
    for v in instance.marked_right:
        for u in range(instance.N_l):
            marked_pos[right_arc(instance, v, u)] = True
    series = SuccessSeries(schedule.kind, [(0, float(np.sum(np.abs(psi[mask]) ** 2)))])
    for k, (alpha, beta) in enumerate(zip(schedule.alphas, schedule.betas), start=1):
        C = (1.0 - np.exp(-1j * alpha)) * P - eye
        Q = np.diag(np.where(marked_pos, np.exp(1j * beta), 1.0 + 0.0j))
        psi = S @ (C @ (Q @ psi))
        series.entries.append((k, float(np.sum(np.abs(psi[mask]) ** 2))))
    return psi, series
