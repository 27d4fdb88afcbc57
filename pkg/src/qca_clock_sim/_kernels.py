"""Compiled RK4 inner loops over Pauli term tables.

Coefficient tables hold one row per half step: row ``2k`` is time ``k h``
and row ``2k + 1`` is ``(k + 1/2) h``.  States are 2-D: ``(dim, m)`` for a
batch of state vectors, ``(dim, dim)`` for a density matrix.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _hv(coef, diags, tg, gather, phase, v, out):
    dim, m = v.shape
    n_groups = diags.shape[0]
    for i in range(dim):
        d = 0.0
        for g in range(n_groups):
            d += coef[g] * diags[g, i]
        for k in range(m):
            out[i, k] = d * v[i, k]
    for t in range(tg.shape[0]):
        c = coef[tg[t]]
        if c == 0.0:
            continue
        for i in range(dim):
            f = c * phase[t, i]
            j = gather[t, i]
            for k in range(m):
                out[i, k] += f * v[j, k]


@njit(cache=True)
def _schrodinger(coef, diags, tg, gather, phase, v, out):
    _hv(coef, diags, tg, gather, phase, v, out)
    out *= -1j


@njit(cache=True)
def _von_neumann(coef, diags, tg, gather, phase, rho, out, work):
    # -i [H, rho] for Hermitian rho, using rho H = (H rho)^dagger
    _hv(coef, diags, tg, gather, phase, rho, work)
    dim = rho.shape[0]
    for i in range(dim):
        for j in range(dim):
            out[i, j] = -1j * (work[i, j] - work[j, i].conjugate())


@njit(cache=True)
def _diag_commutator_add(coef, diags, rho, out):
    # out += -i [D, rho] for diagonal D = sum_g coef[g] diags[g]
    dim = rho.shape[0]
    d = np.zeros(dim)
    for g in range(diags.shape[0]):
        for i in range(dim):
            d[i] += coef[g] * diags[g, i]
    for i in range(dim):
        for j in range(dim):
            out[i, j] += -1j * (d[i] - d[j]) * rho[i, j]


@njit(cache=True)
def advance_states(v, coefs, row0, n_steps, h, diags, tg, gather, phase):
    """Take ``n_steps`` RK4 steps of ``dv/dt = -i H v`` starting at table row ``row0``."""
    k1 = np.empty_like(v)
    k2 = np.empty_like(v)
    k3 = np.empty_like(v)
    k4 = np.empty_like(v)
    for s in range(n_steps):
        r = row0 + 2 * s
        _schrodinger(coefs[r], diags, tg, gather, phase, v, k1)
        _schrodinger(coefs[r + 1], diags, tg, gather, phase, v + (h / 2) * k1, k2)
        _schrodinger(coefs[r + 1], diags, tg, gather, phase, v + (h / 2) * k2, k3)
        _schrodinger(coefs[r + 2], diags, tg, gather, phase, v + h * k3, k4)
        v = v + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
    return v


@njit(cache=True)
def advance_density(rho, coefs, row0, n_steps, h, diags, tg, gather, phase):
    """RK4 steps of ``d rho/dt = -i [H, rho]``, re-symmetrizing after each step."""
    k1 = np.empty_like(rho)
    k2 = np.empty_like(rho)
    k3 = np.empty_like(rho)
    k4 = np.empty_like(rho)
    work = np.empty_like(rho)
    for s in range(n_steps):
        r = row0 + 2 * s
        _von_neumann(coefs[r], diags, tg, gather, phase, rho, k1, work)
        _von_neumann(coefs[r + 1], diags, tg, gather, phase, rho + (h / 2) * k1, k2, work)
        _von_neumann(coefs[r + 1], diags, tg, gather, phase, rho + (h / 2) * k2, k3, work)
        _von_neumann(coefs[r + 2], diags, tg, gather, phase, rho + h * k3, k4, work)
        rho = rho + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        rho = 0.5 * (rho + rho.conj().T)
    return rho


@njit(cache=True)
def _split_rhs(cw, ci, wire_tab, int_diags, rw, ri, kw, ki, work):
    dw, tgw, gw, pw = wire_tab
    # d rho_wire = -i [H_wire, rho_wire]
    _von_neumann(cw, dw, tgw, gw, pw, rw, kw, work)
    # d rho_I = -i [H_wire + H_I, rho_I] - i [H_I, rho_wire], H_I diagonal
    _von_neumann(cw, dw, tgw, gw, pw, ri, ki, work)
    _diag_commutator_add(ci, int_diags, ri, ki)
    _diag_commutator_add(ci, int_diags, rw, ki)


@njit(cache=True)
def advance_split(rw, ri, coefs_w, coefs_i, row0, n_steps, h, wire_tab, int_diags):
    """RK4 steps of the coupled (rho_wire, rho_I) system on one time grid.

    The interaction Hamiltonian must be diagonal; ``int_diags`` holds its
    per-group diagonals.
    """
    kw1 = np.empty_like(rw)
    kw2 = np.empty_like(rw)
    kw3 = np.empty_like(rw)
    kw4 = np.empty_like(rw)
    ki1 = np.empty_like(rw)
    ki2 = np.empty_like(rw)
    ki3 = np.empty_like(rw)
    ki4 = np.empty_like(rw)
    work = np.empty_like(rw)
    for s in range(n_steps):
        r = row0 + 2 * s
        _split_rhs(coefs_w[r], coefs_i[r], wire_tab, int_diags, rw, ri, kw1, ki1, work)
        _split_rhs(coefs_w[r + 1], coefs_i[r + 1], wire_tab, int_diags,
                   rw + (h / 2) * kw1, ri + (h / 2) * ki1, kw2, ki2, work)
        _split_rhs(coefs_w[r + 1], coefs_i[r + 1], wire_tab, int_diags,
                   rw + (h / 2) * kw2, ri + (h / 2) * ki2, kw3, ki3, work)
        _split_rhs(coefs_w[r + 2], coefs_i[r + 2], wire_tab, int_diags,
                   rw + h * kw3, ri + h * ki3, kw4, ki4, work)
        rw = rw + (h / 6) * (kw1 + 2 * kw2 + 2 * kw3 + kw4)
        ri = ri + (h / 6) * (ki1 + 2 * ki2 + 2 * ki3 + ki4)
        rw = 0.5 * (rw + rw.conj().T)
        ri = 0.5 * (ri + ri.conj().T)
    return rw, ri


@njit(cache=True)
def _linear(coef, mats, y, out):
    n_groups, size, _ = mats.shape
    for i in range(size):
        acc = 0.0
        for g in range(n_groups):
            c = coef[g]
            if c == 0.0:
                continue
            for j in range(size):
                acc += c * mats[g, i, j] * y[j]
        out[i] = acc


@njit(cache=True)
def advance_linear(y, coefs, row0, n_steps, h, mats):
    """RK4 steps of ``dy/dt = sum_g coefs[g] * mats[g] @ y`` for a real vector ``y``."""
    k1 = np.empty_like(y)
    k2 = np.empty_like(y)
    k3 = np.empty_like(y)
    k4 = np.empty_like(y)
    tmp = np.empty_like(y)
    size = y.shape[0]
    for s in range(n_steps):
        r = row0 + 2 * s
        _linear(coefs[r], mats, y, k1)
        for i in range(size):
            tmp[i] = y[i] + (h / 2) * k1[i]
        _linear(coefs[r + 1], mats, tmp, k2)
        for i in range(size):
            tmp[i] = y[i] + (h / 2) * k2[i]
        _linear(coefs[r + 1], mats, tmp, k3)
        for i in range(size):
            tmp[i] = y[i] + h * k3[i]
        _linear(coefs[r + 2], mats, tmp, k4)
        for i in range(size):
            y[i] = y[i] + (h / 6) * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i])
    return y
