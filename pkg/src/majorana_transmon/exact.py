"""Exact charge-basis diagonalization and brute-force oscillator operators.

These are the independent references the analytic model is checked against.

Charge lattices
---------------
``spacing=1``: sites are Cooper-pair numbers ``k``, the Josephson term hops
between neighbours. ``spacing=0.5``: sites are electron numbers ``k``
(charge ``k/2`` in Cooper pairs); Cooper pairs hop two sites and the
Majorana term ``sum_j E_Mj cos(phi_j/2)`` hops one site, since
``exp(i phi/2)`` adds a single electron. Within one quasiparticle parity
sector the Majorana parity is fixed by the island charge parity, so integer
and half-integer sites already carry the two Majorana parities.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eig_banded, eigh

from .errors import ConvergenceError, DomainError, TruncationWarning
from .qubit_model import QubitParams, junction_geometry

_CONVERGENCE_LEVELS = 10


@dataclass(frozen=True)
class ChargeLatticeHamiltonian:
    """Banded Hermitian Hamiltonian on the sites ``k = -K..K``.

    ``band1[i]`` is the element ``H[i, i+1]`` (single-electron hop, only on
    the half-charge lattice) and ``band2[i]`` the Cooper-pair hop, which is
    ``H[i, i+1]`` for ``spacing=1`` and ``H[i, i+2]`` for ``spacing=0.5``.
    The lower triangle is the conjugate.
    """

    cutoff: int
    spacing: float
    diagonal: np.ndarray
    band1: np.ndarray
    band2: np.ndarray
    EC: float = field(repr=False, default=0.0)
    EJ: float = field(repr=False, default=0.0)
    ng: float = field(repr=False, default=0.0)
    coupling: complex = field(repr=False, default=0j)

    @property
    def dim(self):
        return self.diagonal.size

    @property
    def bandwidth(self):
        return 1 if self.spacing == 1 else 2

    def resized(self, cutoff):
        """Same physical model on a different cutoff."""
        return _build(self.EC, self.EJ, self.ng, self.coupling, self.spacing, cutoff)

    def to_dense(self):
        n = self.dim
        h = np.diag(self.diagonal.astype(complex))
        if self.spacing == 1:
            idx = np.arange(n - 1)
            h[idx, idx + 1] = self.band2
        else:
            idx = np.arange(n - 1)
            h[idx, idx + 1] = self.band1
            idx = np.arange(n - 2)
            h[idx, idx + 2] = self.band2
        upper = np.triu(h, 1)
        return np.diag(np.diag(h)) + upper + upper.conj().T

    def to_upper_banded(self):
        """Storage for :func:`scipy.linalg.eig_banded` (``lower=False``)."""
        n, u = self.dim, self.bandwidth
        ab = np.zeros((u + 1, n), dtype=complex if self.spacing != 1 else float)
        ab[u] = self.diagonal
        if self.spacing == 1:
            ab[0, 1:] = self.band2
        else:
            ab[1, 1:] = self.band1
            ab[0, 2:] = self.band2
        return ab


@dataclass(frozen=True)
class EigenResult:
    """Ascending eigenvalues (GHz) and optional eigenvectors (columns).

    ``convergence_delta`` is the largest change among the lowest ten
    eigenvalues when the cutoff is doubled; ``nan`` if not checked.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None
    convergence_delta: float
    cutoff: int


def minimum_cutoff(EC, EJ, ng):
    """Smallest admissible cutoff, in Cooper pairs."""
    return math.ceil(abs(ng)) + math.ceil(math.sqrt(5.0 * EJ / EC))


def default_cutoff(EC, EJ, ng, spacing=1.0):
    """Cutoff (in sites) with ``4 EC (K*spacing - |ng|)^2 >= 25 EJ``."""
    pairs = abs(ng) + 2.5 * math.sqrt(EJ / EC)
    pairs = max(pairs, minimum_cutoff(EC, EJ, ng), 10.0)
    return math.ceil(pairs / spacing)


def _build(EC, EJ, ng, coupling, spacing, cutoff):
    if EC <= 0 or EJ < 0:
        raise DomainError(f"need EC > 0 and EJ >= 0, got EC={EC}, EJ={EJ}")
    if cutoff is None:
        cutoff = default_cutoff(EC, EJ, ng, spacing)
    if cutoff * spacing < minimum_cutoff(EC, EJ, ng):
        raise DomainError(
            f"cutoff {cutoff} too small; need at least {minimum_cutoff(EC, EJ, ng)} Cooper pairs"
        )
    k = np.arange(-cutoff, cutoff + 1)
    n = k.size
    diagonal = 4.0 * EC * (k * spacing - ng) ** 2
    if spacing == 1:
        band1 = np.zeros(0, dtype=complex)
        band2 = np.full(n - 1, -0.5 * EJ)
    else:
        band1 = np.full(n - 1, complex(coupling))
        band2 = np.full(n - 2, -0.5 * EJ)
    return ChargeLatticeHamiltonian(
        cutoff, spacing, diagonal, band1, band2, EC=EC, EJ=EJ, ng=ng, coupling=complex(coupling)
    )


def build_transmon(EC: float, EJ_eff: float, ng: float, K: int | None = None):
    """Cooper-pair box ``4 EC (N - ng)^2 - EJ cos(phi)`` on ``N = -K..K``."""
    return _build(EC, EJ_eff, ng, 0j, 1.0, K)


def majorana_coupling(p: QubitParams, theta=None):
    """Single-electron hopping amplitude of the half-charge lattice.

    ``c = (EM0 exp(-i(pi f - theta)/2) + EM1 exp(i(pi f + theta)/2)) / 2``
    is the coefficient of ``exp(i phi/2)`` in
    ``EM0 cos((pi f - theta - phi)/2) + EM1 cos((pi f + theta + phi)/2)``.
    """
    if theta is None:
        theta = junction_geometry(p).theta
    half = 0.5 * math.pi * p.flux
    return 0.5 * (
        p.EM0 * np.exp(-1j * (half - 0.5 * theta)) + p.EM1 * np.exp(1j * (half + 0.5 * theta))
    )


def build_majorana_transmon(p: QubitParams, K: int | None = None):
    """Half-charge lattice Hamiltonian of the Majorana transmon (one qp-parity sector)."""
    geo = junction_geometry(p)
    return _build(p.EC, geo.EJ_eff, p.ng, majorana_coupling(p, geo.theta), 0.5, K)


def _solve(h, vectors, n_eigs):
    ab = h.to_upper_banded()
    # LAPACK misreads bands wider than the matrix
    ab = ab[max(0, ab.shape[0] - h.dim):]
    kwargs = {}
    if n_eigs is not None and n_eigs < h.dim:
        kwargs = {"select": "i", "select_range": (0, n_eigs - 1)}
    if vectors:
        w, v = eig_banded(ab, lower=False, **kwargs)
        return w, v
    return eig_banded(ab, lower=False, eigvals_only=True, **kwargs), None


def hermitian_eigensolve(
    h: ChargeLatticeHamiltonian,
    *,
    vectors=False,
    n_eigs=None,
    check_convergence=True,
    tol=1e-8,
    max_doublings=3,
):
    """Diagonalize ``h`` and verify convergence by doubling the cutoff.

    Parameters
    ----------
    h : ChargeLatticeHamiltonian
    vectors : bool
        Also return eigenvectors of the returned cutoff.
    n_eigs : int, optional
        Compute only the lowest ``n_eigs`` eigenvalues.
    check_convergence : bool
        Compare with a doubled cutoff. If the lowest ten eigenvalues move by
        more than ``tol * max(1, |E|)``, keep doubling (at most
        ``max_doublings`` times) and return the finer solution.

    Raises
    ------
    ConvergenceError
        If the cutoff cap is reached without convergence.
    """
    w, v = _solve(h, vectors, n_eigs)
    if not check_convergence:
        return EigenResult(w, v, float("nan"), h.cutoff)
    current = h
    history = []
    for _ in range(max_doublings + 1):
        finer = current.resized(2 * current.cutoff)
        w_fine, v_fine = _solve(finer, vectors, n_eigs)
        m = min(_CONVERGENCE_LEVELS, w.size)
        delta = float(np.max(np.abs(w_fine[:m] - w[:m])))
        history.append((current.cutoff, delta))
        if delta <= tol * max(1.0, float(np.max(np.abs(w[:m])))):
            return EigenResult(w, v, delta, current.cutoff)
        current, w, v = finer, w_fine, v_fine
    raise ConvergenceError(f"charge cutoff did not converge; (cutoff, delta) history: {history}")


def ground_energy(EC, EJ, ng, K=None):
    h = build_transmon(EC, EJ, ng, K)
    return float(hermitian_eigensolve(h, n_eigs=1).eigenvalues[0])


def exact_even_odd_splitting(EC: float, EJ_eff: float, ng: float, K: int | None = None) -> float:
    """Odd-sector minus even-sector transmon ground energy (``+eps_0`` at ``ng = 0``)."""
    return ground_energy(EC, EJ_eff, ng - 0.5, K) - ground_energy(EC, EJ_eff, ng, K)


def majorana_transmon_levels(p: QubitParams, n=4, K=None):
    """Lowest ``n`` eigenvalues of the half-charge lattice."""
    h = build_majorana_transmon(p, K)
    return hermitian_eigensolve(h, n_eigs=n).eigenvalues


def exact_spectrum_branches(p: QubitParams, K=None):
    """Transition branches ``(pp, pm, mp, mm)`` from exact doublet energies.

    The lowest four eigenvalues are read as the ground doublet ``(E0-, E0+)``
    and the first excited doublet ``(E1-, E1+)``.
    """
    e0m, e0p, e1m, e1p = majorana_transmon_levels(p, 4, K)
    return (e1p - e0p, e1m - e0p, e1p - e0m, e1m - e0m)


@dataclass(frozen=True)
class OperatorMatrix:
    matrix: np.ndarray
    safe_levels: int


def _displacement(mu, dim):
    n = np.arange(1, dim)
    a = np.diag(np.sqrt(n), 1).astype(complex)
    gen = -1j * (mu * a.conj().T - np.conj(mu) * a)
    g, vec = eigh(gen)
    return (vec * np.exp(1j * g)) @ vec.conj().T


def ho_operator_matrix(kind, phase_shift=0.0, mu=0j, dim=128):
    """Brute-force oscillator operator in a ``dim``-level truncated basis.

    Parameters
    ----------
    kind : {"displacement", "cos_half", "sin_half"}
        ``D(mu)``, ``cos((phase_shift + phi)/2)`` or
        ``sin((phase_shift + phi)/2)`` where ``exp(i phi/2) = D(mu)``; for a
        transmon ``mu = 1j * sqrt(E_C / omega_p)``.
    phase_shift : float
    mu : complex
    dim : int
        Basis size, at most 512. Elements between the top 10% of levels are
        corrupted by the truncation; ``safe_levels`` counts the rest.
    """
    if not 1 <= dim <= 512:
        raise DomainError(f"dim must lie in 1..512, got {dim}")
    mu = complex(mu)
    safe = dim - math.ceil(0.1 * dim)
    if safe < abs(mu) ** 2 + 8 * abs(mu) + 8:
        warnings.warn(f"dim={dim} is small for |mu|={abs(mu):.3g}", TruncationWarning, stacklevel=2)
    d = _displacement(mu, dim)
    if kind == "displacement":
        return OperatorMatrix(d, safe)
    phase = np.exp(0.5j * phase_shift)
    d_minus = d.conj().T
    if kind == "cos_half":
        m = 0.5 * (phase * d + np.conj(phase) * d_minus)
    elif kind == "sin_half":
        m = (phase * d - np.conj(phase) * d_minus) / 2j
    else:
        raise ValueError(f"unknown operator kind {kind!r}")
    return OperatorMatrix(m, safe)
