"""Compiled inner loops for the dense eigensolvers.

All kernels work in place on C-contiguous complex128 (or float64) arrays and
release the GIL, so grid points can be solved concurrently from a thread pool.
Loops are written out by hand: numba's np.dot needs scipy's BLAS bindings.
"""

import numba as nb
import numpy as np

EPS = np.finfo(np.float64).eps


@nb.njit(cache=True, nogil=True)
def hessenberg_kernel(H, Q, want_q):
    """Householder reduction H <- P^H H P, Q <- Q P, one column at a time"""
    n = H.shape[0]
    v = np.empty(n, dtype=np.complex128)
    w = np.empty(n, dtype=np.complex128)
    for k in range(n - 2):
        m = n - k - 1
        tail = 0.0
        for i in range(k + 2, n):
            tail += H[i, k].real ** 2 + H[i, k].imag ** 2
        if tail == 0.0:
            continue
        x0 = H[k + 1, k]
        ax0 = abs(x0)
        xnorm = np.sqrt(tail + ax0 * ax0)
        phase = x0 / ax0 if ax0 > 0.0 else 1.0 + 0.0j
        beta = -phase * xnorm
        for i in range(m):
            v[i] = H[k + 1 + i, k]
        v[0] -= beta
        vnorm2 = 0.0
        for i in range(m):
            vnorm2 += v[i].real ** 2 + v[i].imag ** 2
        scale = 2.0 / vnorm2

        # Left: rows k+1.., accumulated row by row to stay contiguous
        for j in range(k, n):
            w[j] = 0.0
        for i in range(m):
            cv = np.conj(v[i])
            for j in range(k, n):
                w[j] += cv * H[k + 1 + i, j]
        for i in range(m):
            f = scale * v[i]
            for j in range(k, n):
                H[k + 1 + i, j] -= f * w[j]

        # Right: columns k+1.. of every row
        for i in range(n):
            s = 0.0j
            for j in range(m):
                s += H[i, k + 1 + j] * v[j]
            s *= scale
            for j in range(m):
                H[i, k + 1 + j] -= s * np.conj(v[j])

        if want_q:
            for i in range(n):
                s = 0.0j
                for j in range(m):
                    s += Q[i, k + 1 + j] * v[j]
                s *= scale
                for j in range(m):
                    Q[i, k + 1 + j] -= s * np.conj(v[j])

        H[k + 1, k] = beta
        for i in range(k + 2, n):
            H[i, k] = 0.0


@nb.njit(cache=True, nogil=True)
def _wilkinson_shift(a, b, c, d):
    # Eigenvalue of [[a, b], [c, d]] closest to d
    half = 0.5 * (a - d)
    disc = np.sqrt(half * half + b * c)
    mu1 = d + half + disc
    mu2 = d + half - disc
    if abs(mu1 - d) <= abs(mu2 - d):
        return mu1
    return mu2


@nb.njit(cache=True, nogil=True)
def shifted_qr_kernel(H, max_sweeps, exceptional_every):
    """Eigenvalues of an upper Hessenberg matrix by single-shift QR with deflation.

    Returns (values, iterations, converged, unresolved, residual): when the sweep
    budget runs out, values[unresolved + 1:] hold the eigenvalues deflated so far.
    Only the active window is updated since the Schur vectors are not wanted.
    """
    n = H.shape[0]
    values = np.zeros(n, dtype=np.complex128)
    cs = np.empty(n, dtype=np.float64)
    sn = np.empty(n, dtype=np.complex128)
    ihi = n - 1
    iterations = 0
    stall = 0
    residual = 0.0
    while ihi >= 0:
        # Locate the start of the unreduced block ending at ihi
        l = ihi
        while l > 0:
            tst = abs(H[l - 1, l - 1]) + abs(H[l, l])
            if tst == 0.0:
                if l - 2 >= 0:
                    tst += abs(H[l - 1, l - 2].real)
                if l + 1 <= ihi:
                    tst += abs(H[l + 1, l].real)
            if abs(H[l, l - 1]) <= EPS * tst:
                break
            l -= 1
        if l > 0:
            if abs(H[l, l - 1]) > residual:
                residual = abs(H[l, l - 1])
            H[l, l - 1] = 0.0
        if l == ihi:
            values[ihi] = H[ihi, ihi]
            ihi -= 1
            stall = 0
            continue
        if iterations >= max_sweeps:
            return values, iterations, False, ihi, residual

        iterations += 1
        stall += 1
        if stall % exceptional_every == 0:
            sub = H[ihi, ihi - 1]
            shift = H[ihi, ihi] + 0.75 * (abs(sub.real) + abs(sub.imag))
        else:
            shift = _wilkinson_shift(H[ihi - 1, ihi - 1], H[ihi - 1, ihi],
                                     H[ihi, ihi - 1], H[ihi, ihi])

        for k in range(l, ihi + 1):
            H[k, k] -= shift
        # H - shift = QR, rotations applied from the left
        for k in range(l, ihi):
            a = H[k, k]
            b = H[k + 1, k]
            aa = abs(a)
            r = np.sqrt(aa * aa + b.real * b.real + b.imag * b.imag)
            if r == 0.0:
                c = 1.0
                s = 0.0j
            elif aa == 0.0:
                c = 0.0
                s = np.conj(b) / abs(b)
            else:
                c = aa / r
                s = (a / aa) * np.conj(b) / r
            for j in range(k, ihi + 1):
                x = H[k, j]
                y = H[k + 1, j]
                H[k, j] = c * x + s * y
                H[k + 1, j] = -np.conj(s) * x + c * y
            cs[k] = c
            sn[k] = s
        # RQ, rotations applied from the right
        for k in range(l, ihi):
            c = cs[k]
            s = sn[k]
            top = min(k + 2, ihi)
            for i in range(l, top + 1):
                x = H[i, k]
                y = H[i, k + 1]
                H[i, k] = x * c + y * np.conj(s)
                H[i, k + 1] = -x * s + y * c
        for k in range(l, ihi + 1):
            H[k, k] += shift
    return values, iterations, True, -1, residual


@nb.njit(cache=True, nogil=True)
def tridiagonal_ql_kernel(d, e, Zt, want_vectors, max_sweeps):
    """Implicit QL with Wilkinson-type shifts on a real symmetric tridiagonal matrix.

    d holds the diagonal, e[0:n-1] the sub-diagonal; Zt accumulates the rotations
    by rows (row i is eigenvector i). Returns False if a sweep budget runs out.
    """
    n = d.shape[0]
    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= EPS * dd:
                    break
                m += 1
            if m == l:
                break
            if sweeps >= max_sweeps:
                return False
            sweeps += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = np.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + (r if g >= 0.0 else -r))
            s = 1.0
            c = 1.0
            p = 0.0
            early = False
            i = m - 1
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = np.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    early = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                if want_vectors:
                    for k in range(n):
                        f = Zt[i + 1, k]
                        Zt[i + 1, k] = s * Zt[i, k] + c * f
                        Zt[i, k] = c * Zt[i, k] - s * f
                i -= 1
            if early:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return True


@nb.njit(cache=True, nogil=True)
def lu_logdet_kernel(A):
    """LU with partial pivoting; returns (log|det A|, phase of det A)"""
    n = A.shape[0]
    logabs = 0.0
    phase = 1.0 + 0.0j
    for k in range(n):
        piv = k
        best = abs(A[k, k])
        for i in range(k + 1, n):
            if abs(A[i, k]) > best:
                best = abs(A[i, k])
                piv = i
        if best == 0.0:
            return -np.inf, 0.0j
        if piv != k:
            for j in range(n):
                tmp = A[k, j]
                A[k, j] = A[piv, j]
                A[piv, j] = tmp
            phase = -phase
        pivot = A[k, k]
        logabs += np.log(abs(pivot))
        phase *= pivot / abs(pivot)
        for i in range(k + 1, n):
            f = A[i, k] / pivot
            if f != 0.0:
                for j in range(k + 1, n):
                    A[i, j] -= f * A[k, j]
            A[i, k] = 0.0
    return logabs, phase
