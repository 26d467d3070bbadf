"""Pure numpy implementations of the hot kernels (reference and fallback)."""
import numpy as np


def linear_entropy_batch(u, a, b):
    """Linear entropy 1 - tr(rho_1^2) of u (a_s (x) b_s) for each row s.

    For a normalized two-qubit pure state psi this equals 2 |psi00 psi11 - psi01 psi10|^2.
    """
    u = np.ascontiguousarray(u, dtype=np.complex128)
    a = np.ascontiguousarray(a, dtype=np.complex128)
    b = np.ascontiguousarray(b, dtype=np.complex128)
    prod = (a[:, :, None] * b[:, None, :]).reshape(-1, 4)
    psi = prod @ u.T
    det = psi[:, 0] * psi[:, 3] - psi[:, 1] * psi[:, 2]
    return 2.0 * (det.real ** 2 + det.imag ** 2)


def max_concurrence_grid(u, states):
    """Best concurrence of u (s_i (x) s_j) over all pairs of rows of ``states``.

    Returns (value, i, j).
    """
    u = np.ascontiguousarray(u, dtype=np.complex128)
    s = np.ascontiguousarray(states, dtype=np.complex128)
    # psi_k = sum_{pq} u[k, 2p+q] s_i[p] t_j[q]
    ut = u.reshape(4, 2, 2)
    left = np.einsum("kpq,ip->ikq", ut, s)  # (n, 4, 2)
    best, bi, bj = -1.0, 0, 0
    chunk = max(1, 262144 // max(1, s.shape[0]))
    for start in range(0, s.shape[0], chunk):
        lc = left[start:start + chunk]
        psi = np.einsum("ikq,jq->ijk", lc, s)
        conc = 2.0 * np.abs(psi[..., 0] * psi[..., 3] - psi[..., 1] * psi[..., 2])
        flat = int(np.argmax(conc))
        i, j = np.unravel_index(flat, conc.shape)
        if conc[i, j] > best:
            best, bi, bj = float(conc[i, j]), int(i) + start, int(j)
    return best, bi, bj
