"""Truncated Fock-space checks of the Schmidt-number bounds.

The test operators are assembled from single-mode ladder operators as a sum
of Kronecker products ``sum_k A_k (x) B_k`` in the product basis ``|m>|n>``
(flat index ``m * (nmax + 1) + n``).  The minimum of ``<chi|L|chi>`` over
Schmidt-rank-``r`` states is found by alternating between the two tensor
factors, each half-step being a symmetric eigenproblem.
"""
from dataclasses import dataclass
from functools import cached_property
import itertools
import math

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp

from gsnw.covariance import Family
from gsnw.errors import CutoffTooLarge, CutoffTooSmall, RankExceedsCutoff

MAX_SUBSET_CUTOFF = 18
ALT_TOL = 1e-10
ALT_MAXITER = 500
MONOTONE_SLACK = 1e-10


def _ladder_ops(d):
    n = np.arange(d, dtype=np.float64)
    lower = np.diag(np.sqrt(n[1:]), 1)
    return np.diag(n), lower, np.eye(d)


class TruncatedOperator:
    """Test operator restricted to ``nmax`` photons per mode."""

    def __init__(self, params, nmax, terms):
        self.params = params
        self.nmax = nmax
        self.terms = terms

    @property
    def dim(self):
        return self.nmax + 1

    @cached_property
    def sparse(self):
        out = sum(sp.kron(sp.csr_matrix(a), sp.csr_matrix(b), format="csr") for a, b in self.terms)
        return out.tocsr()

    @cached_property
    def dense(self):
        return self.sparse.toarray()


@dataclass(frozen=True)
class SchmidtAnsatz:
    rank: int
    left: np.ndarray   # (rank, nmax+1), mutually orthogonal rows carrying the weights
    right: np.ndarray  # (rank, nmax+1), orthonormal rows
    value: float
    iterations: int

    def state(self):
        """Normalised flat state vector ``sum_i left_i (x) right_i``."""
        chi = np.einsum("im,in->mn", self.left, self.right).ravel()
        return chi / np.linalg.norm(chi)


def build(p, nmax):
    if nmax < 2:
        raise CutoffTooSmall(f"nmax must be >= 2, got {nmax}")
    d = nmax + 1
    num, a, eye = _ladder_ops(d)
    w1, w2, wc = p.omega1, p.omega2, p.omegac
    terms = [(2.0 * w1 * num + w1 * eye, eye), (eye, 2.0 * w2 * num + w2 * eye)]
    if Family(p.family) is Family.N:
        # q1 q2 - p1 p2 = a b + a^dag b^dag
        terms += [(wc * a, a), (wc * a.T, a.T)]
    else:
        # q1 q2 + p1 p2 = a b^dag + a^dag b
        terms += [(wc * a, a.T), (wc * a.T, a)]
    return TruncatedOperator(p, nmax, terms)


def ground_energy(t):
    """Smallest eigenvalue, block by block.

    ``L_n`` conserves ``m - n`` and ``L_p`` conserves ``m + n``.
    """
    d = t.dim
    m, n = np.divmod(np.arange(d * d), d)
    key = m - n if Family(t.params.family) is Family.N else m + n
    mat = t.sparse
    best = math.inf
    for k in np.unique(key):
        idx = np.flatnonzero(key == k)
        block = mat[idx][:, idx].toarray()
        best = min(best, float(np.linalg.eigvalsh(block)[0]))
    return best


def _lowest(h):
    w, v = sla.eigh(h, subset_by_index=[0, 0])
    return float(w[0]), v[:, 0]


def _project(terms, basis, side):
    # effective operator on the free factor with the other factor spanned by `basis`
    if side == "left":
        return sum(np.kron(basis @ b @ basis.T, a) for a, b in terms)
    return sum(np.kron(basis @ a @ basis.T, b) for a, b in terms)


def _schmidt(coef, r):
    u, s, vt = np.linalg.svd(coef)
    return (u[:, :r] * s[:r]).T, vt[:r], u[:, :r].T


def _alternate(t, r, rng, tol, maxiter):
    d = t.dim
    q, _ = np.linalg.qr(rng.standard_normal((d, r)))
    right = q.T
    value = math.inf
    it = 0
    while it < maxiter:
        it += 1
        prev = value
        # right factor fixed (orthonormal): minimise over the left vectors
        val_l, vec = _lowest(_project(t.terms, right, "left"))
        _check_monotone(prev, val_l)
        left_w, right, left_basis = _schmidt(vec.reshape(r, d).T @ right, r)
        # left factor fixed: whitening the overlap of the left vectors turns the
        # generalised problem into a standard one on an orthonormal left basis
        val_r, vec = _lowest(_project(t.terms, left_basis, "right"))
        _check_monotone(val_l, val_r)
        left_w, right, _ = _schmidt(left_basis.T @ vec.reshape(r, d), r)
        value = val_r
        if prev - value < tol:
            break
    return SchmidtAnsatz(rank=r, left=left_w, right=right, value=value, iterations=it)


def _check_monotone(before, after):
    if after > before + MONOTONE_SLACK * max(1.0, abs(before)):
        raise RuntimeError(f"alternation increased the objective: {before!r} -> {after!r}")


def sn_minimize(t, r, restarts=8, seed=0, tol=ALT_TOL, maxiter=ALT_MAXITER):
    """Upper bound on ``inf <chi|L|chi>`` over Schmidt rank ``<= r``, best of seeded restarts."""
    if r < 1 or r > t.nmax:
        raise RankExceedsCutoff(f"rank {r} not in [1, nmax={t.nmax}]")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    best = None
    for child in np.random.SeedSequence(seed).spawn(restarts):
        res = _alternate(t, r, np.random.default_rng(child), tol, maxiter)
        if best is None or res.value < best.value:
            best = res
    return best


def _chain_matrix(p, nmax):
    s = p.omega1 + p.omega2
    n = np.arange(nmax + 1, dtype=np.float64)
    off = (n[:-1] + 1.0) * p.omegac
    return np.diag(2.0 * n * s + s) + np.diag(off, 1) + np.diag(off, -1)


def correlated_subset_argmin(p, r, nmax):
    """Brute-force minimum over ``r``-subsets of the correlated Fock pairs ``|n, n>``.

    Returns ``(value, subset)``; ties resolve to the lexicographically first subset.
    """
    if nmax > MAX_SUBSET_CUTOFF:
        raise CutoffTooLarge(f"nmax must be <= {MAX_SUBSET_CUTOFF}, got {nmax}")
    if r < 1 or r > nmax:
        raise RankExceedsCutoff(f"rank {r} not in [1, nmax={nmax}]")
    chain = _chain_matrix(p, nmax)
    idx = np.array(list(itertools.combinations(range(nmax + 1), r)))
    sub = chain[idx[:, :, None], idx[:, None, :]]
    mins = np.linalg.eigvalsh(sub)[:, 0]
    k = int(np.argmin(mins))
    return float(mins[k]), tuple(int(i) for i in idx[k])


def correlated_subset_min(p, r, nmax):
    return correlated_subset_argmin(p, r, nmax)[0]


def subset_value(p, subset, nmax):
    chain = _chain_matrix(p, nmax)
    idx = np.asarray(subset)
    return float(np.linalg.eigvalsh(chain[np.ix_(idx, idx)])[0])
