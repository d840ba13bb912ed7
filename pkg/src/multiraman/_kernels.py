"""Numba-accelerated fixed-step RK4 cores for the Schrodinger oracle.

Two kernels: a dense one for Hamiltonians of the form
H(t) = static + sum_k [e^(i w_k t) B_k + h.c.], and a structure-exploiting
one for the Raman interaction matrix (zero ground block, static pump row,
Stokes row rotating at a single frequency, diagonal intermediates).

Drive phases advance by repeated multiplication with e^(i w dt/2) and are
re-synchronised from exp() every 2^20 steps, which keeps the accumulated
phase error below ~1e-9 rad on the longest runs here.

Falls back to plain Python (slow but identical semantics) when numba is
unavailable.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(**kwargs):
        def deco(fn):
            return fn

        return deco


_RESYNC = 1 << 20


@njit(cache=True, nogil=True, fastmath=True)
def _raman_deriv(xp, ys, diag, z, psi, out):
    """out = -i H psi with Stokes phase z = e^(i delta t)."""
    n_int = xp.shape[0]
    h0 = 0.0 + 0.0j
    h1 = 0.0 + 0.0j
    for i in range(n_int):
        h0 += xp[i] * psi[2 + i]
        h1 += ys[i] * psi[2 + i]
    out[0] = -1j * h0
    out[1] = -1j * (z * h1)
    zc = np.conj(z)
    for i in range(n_int):
        hi = np.conj(xp[i]) * psi[0] + zc * np.conj(ys[i]) * psi[1] + diag[i] * psi[2 + i]
        out[2 + i] = -1j * hi


@njit(cache=True, nogil=True, fastmath=True)
def rk4_raman(xp, ys, diag, delta, psi0, t0, dt, n_steps, sample_every, norm_tol, out):
    """Propagate the Raman interaction Hamiltonian; fill out[k] with the
    state after k*sample_every steps (out[0] = psi0).

    Returns -1 on success, else the index of the first sample whose norm
    drifted from 1 by more than norm_tol.
    """
    n = xp.shape[0] + 2
    psi = psi0.copy()
    out[0, :] = psi
    k1 = np.empty(n, np.complex128)
    k2 = np.empty(n, np.complex128)
    k3 = np.empty(n, np.complex128)
    k4 = np.empty(n, np.complex128)
    tmp = np.empty(n, np.complex128)

    rot_half = complex(np.cos(0.5 * delta * dt), np.sin(0.5 * delta * dt))
    z = complex(np.cos(delta * t0), np.sin(delta * t0))
    s_out = 1
    for step in range(n_steps):
        if step % _RESYNC == 0:
            t = t0 + step * dt
            z = complex(np.cos(delta * t), np.sin(delta * t))
        z_half = z * rot_half
        z_next = z_half * rot_half

        _raman_deriv(xp, ys, diag, z, psi, k1)
        for i in range(n):
            tmp[i] = psi[i] + 0.5 * dt * k1[i]
        _raman_deriv(xp, ys, diag, z_half, tmp, k2)
        for i in range(n):
            tmp[i] = psi[i] + 0.5 * dt * k2[i]
        _raman_deriv(xp, ys, diag, z_half, tmp, k3)
        for i in range(n):
            tmp[i] = psi[i] + dt * k3[i]
        _raman_deriv(xp, ys, diag, z_next, tmp, k4)
        sixth = dt / 6.0
        for i in range(n):
            psi[i] = psi[i] + sixth * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
        z = z_next

        if (step + 1) % sample_every == 0:
            out[s_out, :] = psi
            norm_sq = 0.0
            for i in range(n):
                norm_sq += psi[i].real ** 2 + psi[i].imag ** 2
            if abs(np.sqrt(norm_sq) - 1.0) > norm_tol:
                return s_out
            s_out += 1
    return -1


@njit(cache=True, nogil=True, fastmath=True)
def _harmonic_deriv(static, mats, zs, psi, out):
    """out = -i [static + sum_k (z_k B_k + conj(z_k) B_k^H)] psi."""
    n = psi.shape[0]
    for i in range(n):
        acc = 0.0 + 0.0j
        for j in range(n):
            acc += static[i, j] * psi[j]
        out[i] = acc
    for k in range(mats.shape[0]):
        z = zs[k]
        zc = np.conj(z)
        for i in range(n):
            acc = 0.0 + 0.0j
            accd = 0.0 + 0.0j
            for j in range(n):
                acc += mats[k, i, j] * psi[j]
                accd += np.conj(mats[k, j, i]) * psi[j]
            out[i] += z * acc + zc * accd
    for i in range(n):
        out[i] = -1j * out[i]


@njit(cache=True, nogil=True, fastmath=True)
def rk4_harmonic(static, mats, omegas, psi0, t0, dt, n_steps, sample_every, norm_tol, out):
    """Dense counterpart of rk4_raman for harmonic-drive Hamiltonians."""
    n = psi0.shape[0]
    n_terms = mats.shape[0]
    psi = psi0.copy()
    out[0, :] = psi
    k1 = np.empty(n, np.complex128)
    k2 = np.empty(n, np.complex128)
    k3 = np.empty(n, np.complex128)
    k4 = np.empty(n, np.complex128)
    tmp = np.empty(n, np.complex128)
    z = np.empty(n_terms, np.complex128)
    z_half = np.empty(n_terms, np.complex128)
    z_next = np.empty(n_terms, np.complex128)
    rot_half = np.empty(n_terms, np.complex128)
    for k in range(n_terms):
        rot_half[k] = complex(np.cos(0.5 * omegas[k] * dt), np.sin(0.5 * omegas[k] * dt))

    s_out = 1
    for step in range(n_steps):
        if step % _RESYNC == 0:
            t = t0 + step * dt
            for k in range(n_terms):
                z[k] = complex(np.cos(omegas[k] * t), np.sin(omegas[k] * t))
        for k in range(n_terms):
            z_half[k] = z[k] * rot_half[k]
            z_next[k] = z_half[k] * rot_half[k]

        _harmonic_deriv(static, mats, z, psi, k1)
        for i in range(n):
            tmp[i] = psi[i] + 0.5 * dt * k1[i]
        _harmonic_deriv(static, mats, z_half, tmp, k2)
        for i in range(n):
            tmp[i] = psi[i] + 0.5 * dt * k2[i]
        _harmonic_deriv(static, mats, z_half, tmp, k3)
        for i in range(n):
            tmp[i] = psi[i] + dt * k3[i]
        _harmonic_deriv(static, mats, z_next, tmp, k4)
        sixth = dt / 6.0
        for i in range(n):
            psi[i] = psi[i] + sixth * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
        for k in range(n_terms):
            z[k] = z_next[k]

        if (step + 1) % sample_every == 0:
            out[s_out, :] = psi
            norm_sq = 0.0
            for i in range(n):
                norm_sq += psi[i].real ** 2 + psi[i].imag ** 2
            if abs(np.sqrt(norm_sq) - 1.0) > norm_tol:
                return s_out
            s_out += 1
    return -1
