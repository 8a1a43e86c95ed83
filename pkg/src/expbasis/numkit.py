"""Minimal numerical substrate.

Small dense complex-Hermitian eigensolver (cyclic Jacobi rotations),
a general real 2x2 eigensolver, and quadrature over the ordered simplex
0 <= tau_{d} <= ... <= tau_1 <= 1 by an iterated Gauss rule.  Everything
here is pure: no hidden state, results are plain arrays/dataclasses.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator

import numpy as np

from .errors import InputError

HERMITICITY_TOL = 1e-12
MAX_EIG_DIM = 512


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues (real, ascending) and orthonormal eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.conj().T


@dataclass(frozen=True)
class Eigen2x2:
    """Eigenpairs of a real 2x2 matrix; values may be complex."""

    values: np.ndarray      # shape (2,), complex
    vectors: np.ndarray     # shape (2, 2), columns
    defective: bool


@dataclass(frozen=True)
class QuadResult:
    value: complex
    error: float
    converged: bool


def hermiticity_defect(m: np.ndarray) -> float:
    """Relative symmetry defect max|M - M^H| / max|M|."""
    m = np.asarray(m, dtype=complex)
    scale = np.max(np.abs(m))
    if scale == 0.0:
        return 0.0
    return float(np.max(np.abs(m - m.conj().T)) / scale)


def eig_hermitian(m: np.ndarray, tol: float = 1e-13,
                  max_sweeps: int = 60) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Unconditionally convergent for the small dense matrices this package
    produces (dim <= 512).  Eigenvalues are returned ascending; columns of
    ``vectors`` are the matching orthonormal eigenvectors.

    Raises
    ------
    InputError
        If the input is not square, exceeds the dimension cap, or its
        Hermitian defect exceeds ``HERMITICITY_TOL`` (the defect is
        reported in the message).
    """
    a = np.array(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n < 1 or n > MAX_EIG_DIM:
        raise InputError(f"dimension {n} outside [1, {MAX_EIG_DIM}]")
    defect = hermiticity_defect(a)
    if defect > HERMITICITY_TOL:
        raise InputError(
            f"matrix is not Hermitian: relative symmetry defect {defect:.3e} "
            f"exceeds {HERMITICITY_TOL:.1e}")
    a = (a + a.conj().T) / 2.0
    v = np.eye(n, dtype=complex)
    if n == 1:
        return EigenDecomposition(values=a.real.diagonal().copy(), vectors=v)

    nrm = max(float(np.linalg.norm(a)), 1e-300)
    for _ in range(max_sweeps):
        off = np.sqrt(max(float(np.linalg.norm(a) ** 2
                                - np.linalg.norm(np.diag(a)) ** 2), 0.0))
        if off <= tol * nrm:
            break
        # skip rotations that cannot move the off-norm past the target
        skip = tol * nrm / (2.0 * n)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                phi = apq / abs(apq)
                tau = (a[q, q].real - a[p, p].real) / (2.0 * abs(apq))
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                colp = a[:, p].copy()
                colq = a[:, q].copy()
                a[:, p] = c * colp - s * np.conj(phi) * colq
                a[:, q] = s * phi * colp + c * colq
                rowp = a[p, :].copy()
                rowq = a[q, :].copy()
                a[p, :] = c * rowp - s * phi * rowq
                a[q, :] = s * np.conj(phi) * rowp + c * rowq
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * np.conj(phi) * vq
                v[:, q] = s * phi * vp + c * vq
    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    return EigenDecomposition(values=w[order], vectors=v[:, order])


def eig_2x2_real(m: np.ndarray) -> Eigen2x2:
    """Eigenpairs of a real 2x2 matrix from the characteristic polynomial.

    Complex-conjugate eigenvalues are reported as complex.  A defective
    matrix (repeated eigenvalue, single eigendirection) returns the same
    eigenvector twice with ``defective=True``.
    """
    m = np.asarray(m, dtype=float)
    if m.shape != (2, 2):
        raise InputError(f"expected a 2x2 matrix, got shape {m.shape}")
    a, b = m[0, 0], m[0, 1]
    c, d = m[1, 0], m[1, 1]
    tr = a + d
    disc = (a - d) ** 2 / 4.0 + b * c
    sq = np.sqrt(complex(disc))
    lam1 = tr / 2.0 - sq
    lam2 = tr / 2.0 + sq
    vals = np.array([lam1, lam2], dtype=complex)

    scale = max(abs(a), abs(b), abs(c), abs(d), 1.0)

    def eigvec(lam: complex) -> np.ndarray:
        # rows of (M - lam I) are each orthogonal to the eigenvector
        r1 = np.array([a - lam, b])
        r2 = np.array([c, d - lam])
        row = r1 if np.linalg.norm(r1) >= np.linalg.norm(r2) else r2
        if np.linalg.norm(row) <= 1e-14 * scale:
            return np.array([1.0 + 0j, 0.0 + 0j])
        vec = np.array([-row[1], row[0]])
        return vec / np.linalg.norm(vec)

    v1 = eigvec(lam1)
    v2 = eigvec(lam2)
    defective = False
    if abs(lam1 - lam2) <= 1e-12 * scale:
        overlap = abs(np.vdot(v1, v2))
        if overlap > 1.0 - 1e-9:
            defective = True
            v2 = v1.copy()
    return Eigen2x2(values=vals, vectors=np.column_stack([v1, v2]),
                    defective=defective)


# --- quadrature over the ordered simplex ---------------------------------

@lru_cache(maxsize=32)
def gauss01(rule: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes/weights transplanted to [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(rule)
    return (x + 1.0) / 2.0, w / 2.0


@lru_cache(maxsize=32)
def _fraction_rule(rule: int, panels: int) -> tuple[np.ndarray, np.ndarray]:
    # composite rule on [0, 1] made of `panels` equal panels of rule//panels
    # points each; used for every nested level (each level integrates over
    # [0, upper] and scales these fractions by `upper`)
    per = rule // panels
    x, w = gauss01(per)
    xs = np.concatenate([(k + x) / panels for k in range(panels)])
    ws = np.tile(w / panels, panels)
    return xs, ws


def iter_simplex_rule(dim: int, rule: int = 32, panels: int = 1,
                      block_dims: int = 3) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield (points, weights) blocks of the iterated Gauss rule.

    Points have shape (dim, m) with columns inside the ordered simplex
    1 >= tau_1 >= ... >= tau_dim >= 0; weights have shape (m,) and sum to
    the simplex volume 1/dim!.  The full tensor has rule**dim nodes; it is
    emitted in blocks so the innermost `block_dims` dimensions stay
    vectorised while memory stays bounded.
    """
    x, w = _fraction_rule(rule, panels)
    npts = len(x)
    if dim == 0:
        yield np.zeros((0, 1)), np.ones(1)
        return
    inner = min(block_dims, dim)
    outer = dim - inner

    # vectorised tensor for the innermost `inner` dimensions, parametrised
    # by the upper limit u of the outermost inner dimension: coordinates are
    # u * fracs, weights are wprod * u**inner
    grids = np.meshgrid(*([x] * inner), indexing="ij")
    wgrids = np.meshgrid(*([w] * inner), indexing="ij")
    fracs = np.empty((inner, npts ** inner))
    wrun = np.ones_like(grids[0])
    cum = np.ones_like(grids[0])
    for k in range(inner):
        cum = cum * grids[k]
        fracs[k] = cum.ravel()
        wrun = wrun * wgrids[k]
    # each nested level integrates over [0, previous tau]; relative to the
    # block's top-level u those interval lengths are 1, f_1, ..., f_{inner-1}
    jac = np.ones_like(grids[0])
    cum = np.ones_like(grids[0])
    for k in range(inner - 1):
        cum = cum * grids[k]
        jac = jac * cum
    wprod = (wrun * jac).ravel()

    if outer == 0:
        yield fracs * 1.0, wprod
        return

    # iterate over outer dimension index tuples
    idx = [0] * outer
    while True:
        taus_outer = np.empty(outer)
        weight_outer = 1.0
        upper = 1.0
        for k in range(outer):
            taus_outer[k] = upper * x[idx[k]]
            weight_outer *= w[idx[k]] * upper
            upper = taus_outer[k]
        block = np.empty((dim, fracs.shape[1]))
        for k in range(outer):
            block[k] = taus_outer[k]
        block[outer:] = fracs * upper
        yield block, wprod * weight_outer * (upper ** inner)
        k = outer - 1
        while k >= 0:
            idx[k] += 1
            if idx[k] < npts:
                break
            idx[k] = 0
            k -= 1
        if k < 0:
            return


def _nested_value(f: Callable[[np.ndarray], np.ndarray], dim: int,
                  rule: int, panels: int) -> complex:
    total = 0.0 + 0.0j
    for pts, wts in iter_simplex_rule(dim, rule=rule, panels=panels):
        vals = np.asarray(f(pts))
        total += complex(np.sum(wts * vals))
    return total


def simplex_quad(f: Callable[[np.ndarray], np.ndarray], n: int,
                 tol: float = 1e-9, rule: int = 32) -> QuadResult:
    """Integrate f over the ordered (n-1)-simplex by iterated Gauss rules.

    ``f`` must accept points of shape (n-1, m) and return m values.  The
    value is the iterated ``rule``-point Gauss tensor; the error estimate
    compares against the half-order rule, and if that misses ``tol`` one
    halving refinement (two half-order panels per level, same node count)
    is performed.  ``converged=False`` means ``tol`` was unreachable at
    that refinement and the returned estimate stands.
    """
    if n < 1 or n > 7:
        raise InputError(f"simplex_quad supports 1 <= n <= 7, got {n}")
    if rule < 4 or rule % 2:
        raise InputError(f"rule must be an even integer >= 4, got {rule}")
    dim = n - 1
    if dim == 0:
        val = complex(np.asarray(f(np.zeros((0, 1)))).ravel()[0])
        return QuadResult(value=val, error=0.0, converged=True)
    coarse = _nested_value(f, dim, rule // 2, 1)
    fine = _nested_value(f, dim, rule, 1)
    err = abs(fine - coarse)
    if err <= tol:
        return QuadResult(value=fine, error=err, converged=True)
    refined = _nested_value(f, dim, rule, 2)
    err = abs(refined - fine)
    return QuadResult(value=refined, error=err, converged=err <= tol)
