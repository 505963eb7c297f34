"""Compiled backend for the radial propagation integrals.

Same plan as the pure backend: phase-budgeted initial partition of the
window, 15-point Kronrod panels, worst-first refinement to tolerance.
Everything runs in C with the GIL released so the driver can spread output
points over threads."""

from libc.math cimport ceil, cos, fabs, fmax, hypot, sin, sqrt, M_PI
from libc.stdlib cimport free, malloc

cdef double GK_X[15]
cdef double GK_W[15]
cdef double G_W[15]
cdef double J0C[31]
cdef double ARE[13]
cdef double AIM[13]

cdef double PHASE_BUDGET = 1.4
cdef double WIDTH_FLOOR = 50.0 * 2.220446049250313e-16
cdef double QT_RE = 0.7071067811865476   # cos(-pi/4)
cdef double QT_IM = -0.7071067811865476  # sin(-pi/4)

from . import numerics as _numerics
from . import special as _special

for _i in range(15):
    GK_X[_i] = _numerics.GK_NODES[_i]
    GK_W[_i] = _numerics.GK_WEIGHTS[_i]
    G_W[_i] = _numerics.G_WEIGHTS[_i]
for _i in range(31):
    J0C[_i] = _special._SERIES_COEF[_i]
for _i in range(13):
    ARE[_i] = _special._ASYM_RE[_i]
    AIM[_i] = _special._ASYM_IM[_i]

BACKEND_NAME = "compiled"


cdef inline double _j0(double x) nogil:
    cdef double z, acc, u, hr, hi, th
    cdef int m
    if x < 12.0:
        z = x * x
        acc = J0C[30]
        for m in range(29, -1, -1):
            acc = acc * z + J0C[m]
        return acc
    u = 1.0 / (x * x)
    hr = ARE[12]
    for m in range(11, -1, -1):
        hr = hr * u + ARE[m]
    hi = AIM[12]
    for m in range(11, -1, -1):
        hi = hi * u + AIM[m]
    hi /= x
    th = x - 0.25 * M_PI
    return sqrt(2.0 / (M_PI * x)) * (cos(th) * hr + sin(th) * hi)


cdef inline int _find_interval(const double* bx, int nb, double x) nogil:
    cdef int lo = 0
    cdef int hi = nb - 2
    cdef int mid
    if x <= bx[0]:
        return 0
    if x >= bx[nb - 1]:
        return nb - 2
    while lo < hi:
        mid = (lo + hi + 1) >> 1
        if bx[mid] <= x:
            lo = mid
        else:
            hi = mid - 1
    return lo


cdef void _panel(int kid, double r, double alpha, double n_re, double n_im,
                 const double* bx, int nb, const double* cre,
                 const double* cim, double pa, double pb,
                 double* out3) nogil:
    cdef double h = 0.5 * (pb - pa)
    cdef double mid = 0.5 * (pa + pb)
    cdef int m = nb - 1
    cdef double kre = 0.0, kim = 0.0, gre = 0.0, gim = 0.0
    cdef double rho, d, ure, uim, ph, cp, sp, amp, base_re, base_im
    cdef double fre, fim, tre, tim, s, diff
    cdef int j, iv
    for j in range(15):
        rho = mid + h * GK_X[j]
        iv = _find_interval(bx, nb, rho)
        d = rho - bx[iv]
        ure = ((cre[iv] * d + cre[m + iv]) * d + cre[2 * m + iv]) * d + cre[3 * m + iv]
        uim = ((cim[iv] * d + cim[m + iv]) * d + cim[2 * m + iv]) * d + cim[3 * m + iv]
        if kid == 1:
            ph = alpha * (r * r + rho * rho)
            cp = cos(ph)
            sp = sin(ph)
            amp = 2.0 * sqrt(M_PI * alpha * r * rho) * _j0(2.0 * alpha * r * rho)
            base_re = amp * (cp * QT_RE - sp * QT_IM)
            base_im = amp * (sp * QT_RE + cp * QT_IM)
        elif kid == 2:
            d = rho - r
            ph = alpha * d * d
            base_re = cos(ph)
            base_im = sin(ph)
            d = rho + r
            ph = alpha * d * d
            base_re -= cos(ph)
            base_im -= sin(ph)
        else:
            ph = alpha * (r * r + rho * rho)
            cp = cos(ph)
            sp = sin(ph)
            s = sin(2.0 * alpha * r * rho)
            base_re = 2.0 * s * sp
            base_im = -2.0 * s * cp
        fre = n_re * base_re - n_im * base_im
        fim = n_re * base_im + n_im * base_re
        tre = fre * ure - fim * uim
        tim = fre * uim + fim * ure
        kre += GK_W[j] * tre
        kim += GK_W[j] * tim
        gre += G_W[j] * tre
        gim += G_W[j] * tim
    kre *= h
    kim *= h
    gre *= h
    gim *= h
    diff = hypot(kre - gre, kim - gim)
    if diff > 0.0:
        s = (200.0 * diff) ** 1.5
        if s < diff:
            diff = s
    out3[0] = kre
    out3[1] = kim
    out3[2] = diff


cdef int _point(int kid, double r, double alpha, double n_re, double n_im,
                const double* bx, int nb, const double* cre,
                const double* cim, double a, double b, double abs_tol,
                double rel_tol, int max_panels, double* pan_a, double* pan_b,
                double* pan_vre, double* pan_vim, double* pan_err,
                double* val_re, double* val_im) nogil:
    cdef double span = alpha * (b - a) * (a + b + 2.0 * r)
    cdef int n0 = <int>ceil(span / PHASE_BUDGET)
    if n0 < 4:
        n0 = 4
    if n0 > max_panels:
        return 1
    cdef double s0 = (a + r) * (a + r)
    cdef double s1 = (b + r) * (b + r)
    cdef double ds = (s1 - s0) / n0
    cdef double res[3]
    cdef double tot_re = 0.0, tot_im = 0.0, err_sum = 0.0, frozen = 0.0
    cdef double e0 = a, e1
    cdef int i, npan = n0, worst
    cdef double werr, pmid, pb_old
    for i in range(n0):
        if i == n0 - 1:
            e1 = b
        else:
            e1 = -r + sqrt(s0 + (i + 1) * ds)
        _panel(kid, r, alpha, n_re, n_im, bx, nb, cre, cim, e0, e1, res)
        pan_a[i] = e0
        pan_b[i] = e1
        pan_vre[i] = res[0]
        pan_vim[i] = res[1]
        pan_err[i] = res[2]
        tot_re += res[0]
        tot_im += res[1]
        err_sum += res[2]
        e0 = e1
    while err_sum + frozen > fmax(abs_tol, rel_tol * hypot(tot_re, tot_im)):
        if npan >= max_panels:
            return 1
        worst = -1
        werr = 0.0
        for i in range(npan):
            if pan_err[i] > werr:
                werr = pan_err[i]
                worst = i
        if worst < 0:
            return 1
        if (pan_b[worst] - pan_a[worst]) <= WIDTH_FLOOR * fmax(fabs(pan_a[worst]), fabs(pan_b[worst])):
            frozen += pan_err[worst]
            err_sum -= pan_err[worst]
            pan_err[worst] = 0.0
            continue
        pmid = 0.5 * (pan_a[worst] + pan_b[worst])
        pb_old = pan_b[worst]
        tot_re -= pan_vre[worst]
        tot_im -= pan_vim[worst]
        err_sum -= pan_err[worst]
        _panel(kid, r, alpha, n_re, n_im, bx, nb, cre, cim, pan_a[worst], pmid, res)
        pan_b[worst] = pmid
        pan_vre[worst] = res[0]
        pan_vim[worst] = res[1]
        pan_err[worst] = res[2]
        tot_re += res[0]
        tot_im += res[1]
        err_sum += res[2]
        _panel(kid, r, alpha, n_re, n_im, bx, nb, cre, cim, pmid, pb_old, res)
        pan_a[npan] = pmid
        pan_b[npan] = pb_old
        pan_vre[npan] = res[0]
        pan_vim[npan] = res[1]
        pan_err[npan] = res[2]
        tot_re += res[0]
        tot_im += res[1]
        err_sum += res[2]
        npan += 1
    val_re[0] = tot_re
    val_im[0] = tot_im
    return 0


def propagate_points(int kernel_id, double[::1] r_out, double alpha,
                     double norm_re, double norm_im, double[::1] breaks,
                     double[:, ::1] coef_re, double[:, ::1] coef_im,
                     double a, double b, double abs_tol, double rel_tol,
                     int max_panels, double[::1] out_re, double[::1] out_im,
                     int start, int stop):
    """Fill out_re/out_im[start:stop] with the propagation integrals at
    r_out[start:stop]. Returns 0 on success, 1 on subdivision exhaustion."""
    cdef int nb = breaks.shape[0]
    cdef const double* bx = &breaks[0]
    cdef const double* cre = &coef_re[0, 0]
    cdef const double* cim = &coef_im[0, 0]
    cdef int cap = max_panels + 2
    cdef double* buf = <double*>malloc(5 * cap * sizeof(double))
    if buf == NULL:
        raise MemoryError()
    cdef double* pan_a = buf
    cdef double* pan_b = buf + cap
    cdef double* pan_vre = buf + 2 * cap
    cdef double* pan_vim = buf + 3 * cap
    cdef double* pan_err = buf + 4 * cap
    cdef double vre = 0.0, vim = 0.0
    cdef int i, st, status = 0
    with nogil:
        for i in range(start, stop):
            st = _point(kernel_id, r_out[i], alpha, norm_re, norm_im, bx, nb,
                        cre, cim, a, b, abs_tol, rel_tol, max_panels, pan_a,
                        pan_b, pan_vre, pan_vim, pan_err, &vre, &vim)
            if st != 0:
                status = st
                break
            out_re[i] = vre
            out_im[i] = vim
    free(buf)
    return status
