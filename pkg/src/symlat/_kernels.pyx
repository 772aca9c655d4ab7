# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled statevector kernels (hot path).

Contract mirrors symlat._kernels_py: contiguous complex128 states of length
2^n, little-endian qubit indexing, in-place gate application.  Arithmetic is
spelled out on interleaved re/im doubles so the compiler vectorizes the
stride-1 inner loops instead of calling the C99 complex helpers.
"""

from libc.math cimport cos, sin

BACKEND_NAME = "c"


cdef inline Py_ssize_t _insert_zero(Py_ssize_t x, Py_ssize_t pos) nogil:
    return ((x >> pos) << (pos + 1)) | (x & ((<Py_ssize_t>1 << pos) - 1))


def apply_1q(double complex[::1] state, Py_ssize_t qubit,
             double complex m00, double complex m01,
             double complex m10, double complex m11):
    """In-place single-qubit gate with matrix [[m00, m01], [m10, m11]]."""
    cdef Py_ssize_t dim = state.shape[0]
    cdef Py_ssize_t stride = <Py_ssize_t>1 << qubit
    cdef Py_ssize_t nblocks = dim >> (qubit + 1)
    cdef double* s = <double*> &state[0]
    cdef double ar, ai, br, bi
    cdef double m00r = m00.real, m00i = m00.imag, m01r = m01.real, m01i = m01.imag
    cdef double m10r = m10.real, m10i = m10.imag, m11r = m11.real, m11i = m11.imag
    cdef Py_ssize_t blk, t, p0, p1
    cdef bint diagonal = (m01r == 0.0 and m01i == 0.0 and m10r == 0.0 and m10i == 0.0)
    with nogil:
        for blk in range(nblocks):
            p0 = (blk << (qubit + 2))
            p1 = p0 + 2 * stride
            if diagonal:
                for t in range(stride):
                    ar = s[p0]; ai = s[p0 + 1]
                    br = s[p1]; bi = s[p1 + 1]
                    s[p0] = m00r * ar - m00i * ai
                    s[p0 + 1] = m00r * ai + m00i * ar
                    s[p1] = m11r * br - m11i * bi
                    s[p1 + 1] = m11r * bi + m11i * br
                    p0 += 2; p1 += 2
            else:
                for t in range(stride):
                    ar = s[p0]; ai = s[p0 + 1]
                    br = s[p1]; bi = s[p1 + 1]
                    s[p0] = m00r * ar - m00i * ai + m01r * br - m01i * bi
                    s[p0 + 1] = m00r * ai + m00i * ar + m01r * bi + m01i * br
                    s[p1] = m10r * ar - m10i * ai + m11r * br - m11i * bi
                    s[p1 + 1] = m10r * ai + m10i * ar + m11r * bi + m11i * br
                    p0 += 2; p1 += 2


def apply_cnot(double complex[::1] state, Py_ssize_t control, Py_ssize_t target):
    """In-place controlled-NOT."""
    cdef Py_ssize_t dim = state.shape[0]
    cdef Py_ssize_t lo = control if control < target else target
    cdef Py_ssize_t hi = target if control < target else control
    cdef Py_ssize_t cbit = <Py_ssize_t>1 << control
    cdef Py_ssize_t tbit = <Py_ssize_t>1 << target
    cdef Py_ssize_t k, i, j
    cdef double complex tmp
    with nogil:
        for k in range(dim >> 2):
            i = _insert_zero(_insert_zero(k, lo), hi) | cbit
            j = i | tbit
            tmp = state[i]
            state[i] = state[j]
            state[j] = tmp


def expectation_diag(double complex[::1] state, const double[::1] diag):
    """<state| D |state> for a real diagonal observable D."""
    cdef Py_ssize_t dim = state.shape[0]
    cdef double* s = <double*> &state[0]
    cdef Py_ssize_t i
    cdef double total = 0.0
    with nogil:
        for i in range(dim):
            total += (s[2 * i] * s[2 * i] + s[2 * i + 1] * s[2 * i + 1]) * diag[i]
    return total


def adjoint_rot_step(double complex[::1] psi, double complex[::1] lam,
                     Py_ssize_t qubit, int kind, double theta):
    """One reverse-sweep step for a rotation gate: returns the gradient
    entry Re <lam| U(pi) |psi> and unapplies U(theta) from both states.

    kind 0 is RY, kind 1 is RZ.  Using U(theta+pi) U(-theta) = U(pi), the
    gradient only needs the pre-update pair values, so the whole step is a
    single pass over both arrays.
    """
    cdef Py_ssize_t dim = psi.shape[0]
    cdef Py_ssize_t stride = <Py_ssize_t>1 << qubit
    cdef Py_ssize_t nblocks = dim >> (qubit + 1)
    cdef double* pv = <double*> &psi[0]
    cdef double* lv = <double*> &lam[0]
    cdef double c = cos(theta / 2.0), s = sin(theta / 2.0)
    cdef double grad = 0.0
    cdef double ar, ai, br, bi, lar, lai, lbr, lbi
    cdef Py_ssize_t blk, t, p0, p1
    with nogil:
        for blk in range(nblocks):
            p0 = (blk << (qubit + 2))
            p1 = p0 + 2 * stride
            if kind == 0:
                for t in range(stride):
                    ar = pv[p0]; ai = pv[p0 + 1]; br = pv[p1]; bi = pv[p1 + 1]
                    lar = lv[p0]; lai = lv[p0 + 1]; lbr = lv[p1]; lbi = lv[p1 + 1]
                    # Re[conj(la)(-b) + conj(lb)(a)]
                    grad += -(lar * br + lai * bi) + (lbr * ar + lbi * ai)
                    # RY(-theta) = [[c, s], [-s, c]] on both arrays
                    pv[p0] = c * ar + s * br; pv[p0 + 1] = c * ai + s * bi
                    pv[p1] = c * br - s * ar; pv[p1 + 1] = c * bi - s * ai
                    lv[p0] = c * lar + s * lbr; lv[p0 + 1] = c * lai + s * lbi
                    lv[p1] = c * lbr - s * lar; lv[p1 + 1] = c * lbi - s * lai
                    p0 += 2; p1 += 2
            else:
                for t in range(stride):
                    ar = pv[p0]; ai = pv[p0 + 1]; br = pv[p1]; bi = pv[p1 + 1]
                    lar = lv[p0]; lai = lv[p0 + 1]; lbr = lv[p1]; lbi = lv[p1 + 1]
                    # Im[conj(la) a] - Im[conj(lb) b]
                    grad += (lar * ai - lai * ar) - (lbr * bi - lbi * br)
                    # RZ(-theta) = diag(e^{i theta/2}, e^{-i theta/2})
                    pv[p0] = c * ar - s * ai; pv[p0 + 1] = c * ai + s * ar
                    pv[p1] = c * br + s * bi; pv[p1 + 1] = c * bi - s * br
                    lv[p0] = c * lar - s * lai; lv[p0 + 1] = c * lai + s * lar
                    lv[p1] = c * lbr + s * lbi; lv[p1 + 1] = c * lbi - s * lbr
                    p0 += 2; p1 += 2
    return grad


def overlap_1q(double complex[::1] bra, double complex[::1] ket, Py_ssize_t qubit,
               double complex m00, double complex m01,
               double complex m10, double complex m11):
    """<bra| M_qubit |ket> without materializing the gated state."""
    cdef Py_ssize_t dim = ket.shape[0]
    cdef Py_ssize_t stride = <Py_ssize_t>1 << qubit
    cdef Py_ssize_t nblocks = dim >> (qubit + 1)
    cdef double* kv = <double*> &ket[0]
    cdef double* bv = <double*> &bra[0]
    cdef double ar, ai, br, bi, xr, xi, yr, yi
    cdef double m00r = m00.real, m00i = m00.imag, m01r = m01.real, m01i = m01.imag
    cdef double m10r = m10.real, m10i = m10.imag, m11r = m11.real, m11i = m11.imag
    cdef double acc_r = 0.0, acc_i = 0.0
    cdef Py_ssize_t blk, t, p0, p1
    with nogil:
        for blk in range(nblocks):
            p0 = (blk << (qubit + 2))
            p1 = p0 + 2 * stride
            for t in range(stride):
                ar = kv[p0]; ai = kv[p0 + 1]
                br = kv[p1]; bi = kv[p1 + 1]
                xr = m00r * ar - m00i * ai + m01r * br - m01i * bi
                xi = m00r * ai + m00i * ar + m01r * bi + m01i * br
                yr = m10r * ar - m10i * ai + m11r * br - m11i * bi
                yi = m10r * ai + m10i * ar + m11r * bi + m11i * br
                # acc += conj(bra) * x
                acc_r += bv[p0] * xr + bv[p0 + 1] * xi
                acc_i += bv[p0] * xi - bv[p0 + 1] * xr
                acc_r += bv[p1] * yr + bv[p1 + 1] * yi
                acc_i += bv[p1] * yi - bv[p1 + 1] * yr
                p0 += 2; p1 += 2
    return complex(acc_r, acc_i)
