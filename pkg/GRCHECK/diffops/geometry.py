"""
Levi-Civita geometry of a metric, evaluated at a point.

Everything is assembled numerically from the exact first and second partial
derivatives of the metric components. Index layout:

    gamma[l, m, n]      = Gamma^l_{mn}
    riemann[r, s, m, n] = R^r_{smn}
                        = d_m Gamma^r_{ns} - d_n Gamma^r_{ms}
                          + Gamma^r_{ml} Gamma^l_{ns} - Gamma^r_{nl} Gamma^l_{ms}
    ricci[s, n]         = R^m_{smn}
"""

import numpy as np


def _lowered_first_kind(dg):
    """S[r, m, n] = d_m g_rn + d_n g_rm - d_r g_mn (twice the Christoffel symbol of the first kind)."""
    return (
        np.einsum('mrn->rmn', dg)
        + np.einsum('nrm->rmn', dg)
        - dg
    )


def christoffel_at(metric, point):
    ginv = metric.inverse_at(point)
    if metric.is_constant:
        return np.zeros((metric.dim,) * 3)
    s = _lowered_first_kind(metric.first_derivatives_at(point))
    return 0.5 * np.einsum('lr,rmn->lmn', ginv, s)


def christoffel_derivatives_at(metric, point):
    """dgamma[k, l, m, n] = d_k Gamma^l_{mn}."""
    n = metric.dim
    if metric.is_constant:
        return np.zeros((n,) * 4)
    ginv = metric.inverse_at(point)
    dg = metric.first_derivatives_at(point)
    ddg = metric.second_derivatives_at(point)
    s = _lowered_first_kind(dg)
    ds = (
        np.einsum('kmrn->krmn', ddg)
        + np.einsum('knrm->krmn', ddg)
        - ddg
    )
    dginv = -np.einsum('ab,kbc,cd->kad', ginv, dg, ginv)
    return 0.5 * (np.einsum('klr,rmn->klmn', dginv, s) + np.einsum('lr,krmn->klmn', ginv, ds))


def riemann_at(metric, point):
    n = metric.dim
    if metric.is_constant:
        metric.inverse_at(point)
        return np.zeros((n,) * 4)
    gamma = christoffel_at(metric, point)
    dgamma = christoffel_derivatives_at(metric, point)
    return (
        np.einsum('mrns->rsmn', dgamma)
        - np.einsum('nrms->rsmn', dgamma)
        + np.einsum('rml,lns->rsmn', gamma, gamma)
        - np.einsum('rnl,lms->rsmn', gamma, gamma)
    )


def lowered_riemann_at(metric, point):
    """R_{asmn} = g_ar R^r_{smn}."""
    return np.einsum('ar,rsmn->asmn', metric.matrix_at(point), riemann_at(metric, point))


def ricci_at(metric, point):
    return np.einsum('msmn->sn', riemann_at(metric, point))


def metricity_defect(metric, point):
    """nabla_k g_ij = d_k g_ij - Gamma^l_ki g_lj - Gamma^l_kj g_il; zero for Levi-Civita."""
    g = metric.matrix_at(point)
    gamma = christoffel_at(metric, point)
    dg = metric.first_derivatives_at(point)
    return dg - np.einsum('lki,lj->kij', gamma, g) - np.einsum('lkj,il->kij', gamma, g)
