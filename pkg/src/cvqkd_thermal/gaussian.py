"""
Two-mode Gaussian-state machinery.

Covariance matrices use shot-noise units: the vacuum quadrature variance is 1
and ``[Q, P] = 2i``. Quadratures are ordered ``(Q1, P1, Q2, P2)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

import numpy as np

from .errors import DomainError, InvalidParameterError, NumericError, UnphysicalStateError

#: Symplectic eigenvalues in ``[1 - CLAMP_TOL, 1)`` are rounded up to 1.
CLAMP_TOL = 1e-9

#: Above this value ``g`` switches to its asymptotic expansion.
G_ASYMPTOTIC_SWITCH = 1e6

IDENTITY2 = np.eye(2)
PAULI_Z = np.diag([1.0, -1.0])
#: Projector onto the Q quadrature, used for homodyne conditioning.
Q_PROJECTOR = np.diag([1.0, 0.0])

_LN2 = math.log(2.0)


def symplectic_form(n_modes: int) -> np.ndarray:
    """
    Return the ``2n x 2n`` block-diagonal symplectic form.

    Parameters
    ----------
    n_modes : int
        Number of bosonic modes, at least 1.

    Returns
    -------
    ndarray
        ``Omega = diag([[0, 1], [-1, 0]], ...)``, antisymmetric with
        ``Omega @ Omega == -I``.
    """
    if int(n_modes) != n_modes or n_modes < 1:
        raise InvalidParameterError(f"n_modes must be a positive integer, got {n_modes!r}")
    return np.kron(np.eye(int(n_modes)), np.array([[0.0, 1.0], [-1.0, 0.0]]))


@dataclass(frozen=True)
class TwoModeCM:
    """
    Two-mode covariance matrix with diagonal 2x2 blocks.

    The full matrix is ``[[A, C], [C, B]]`` with ``A = diag(a, a_p)``,
    ``B = diag(b, b_p)`` and ``C = diag(c_q, c_p)``. Every state handled by
    the key-rate engine has this structure.
    """

    a: float
    a_p: float
    b: float
    b_p: float
    c_q: float
    c_p: float

    @property
    def block_a(self) -> np.ndarray:
        return np.diag([self.a, self.a_p])

    @property
    def block_b(self) -> np.ndarray:
        return np.diag([self.b, self.b_p])

    @property
    def block_c(self) -> np.ndarray:
        return np.diag([self.c_q, self.c_p])

    @property
    def matrix(self) -> np.ndarray:
        """The 4x4 matrix in ``(Q1, P1, Q2, P2)`` ordering."""
        return np.block([[self.block_a, self.block_c], [self.block_c, self.block_b]])

    @property
    def det(self) -> float:
        # Q and P decouple, so the determinant factorizes exactly.
        return (self.a * self.b - self.c_q**2) * (self.a_p * self.b_p - self.c_p**2)

    @property
    def delta(self) -> float:
        """``det A + det B + 2 det C``, the second symplectic invariant."""
        return self.a * self.a_p + self.b * self.b_p + 2.0 * self.c_q * self.c_p


def assemble_cm(a, a_p, b, b_p, c_q, c_p) -> TwoModeCM:
    """
    Build a :class:`TwoModeCM` from its six independent entries.

    No physicality check is done here; the spectrum functions reject
    unphysical matrices.

    Examples
    --------
    >>> assemble_cm(1, 1, 1, 1, 0, 0).matrix.tolist() == np.eye(4).tolist()
    True
    """
    values = (a, a_p, b, b_p, c_q, c_p)
    try:
        floats = tuple(float(v) for v in values)
    except (TypeError, ValueError) as exc:
        raise InvalidParameterError(f"covariance entries must be real numbers: {values!r}") from exc
    if not all(math.isfinite(v) for v in floats):
        raise InvalidParameterError(f"covariance entries must be finite: {floats!r}")
    return TwoModeCM(*floats)


def epr_cm(w: float) -> TwoModeCM:
    """Two-mode squeezed vacuum (EPR state) with quadrature variance ``w``."""
    if not w >= 1:
        raise InvalidParameterError(f"EPR variance must be >= 1, got {w!r}")
    s = math.sqrt(w * w - 1.0)
    return assemble_cm(w, w, w, w, s, -s)


def thermal_cm(v1: float, v2: float) -> TwoModeCM:
    """Product of two thermal states with variances ``v1`` and ``v2``."""
    return assemble_cm(v1, v1, v2, v2, 0.0, 0.0)


@dataclass(frozen=True)
class SymplecticSpectrum:
    """Symplectic eigenvalues, one per mode, sorted in descending order."""

    nu: tuple

    def __iter__(self) -> Iterator[float]:
        return iter(self.nu)

    def __len__(self) -> int:
        return len(self.nu)

    def __getitem__(self, k: int) -> float:
        return self.nu[k]


def _checked_spectrum(values) -> SymplecticSpectrum:
    nus = []
    for v in sorted((float(x) for x in values), reverse=True):
        if not math.isfinite(v):
            raise NumericError(f"non-finite symplectic eigenvalue {v!r}")
        if v < 1.0 - CLAMP_TOL:
            raise UnphysicalStateError(f"symplectic eigenvalue {v!r} is below 1")
        nus.append(max(v, 1.0))
    return SymplecticSpectrum(tuple(nus))


CMLike = Union[TwoModeCM, np.ndarray]


def _as_matrix(cm: CMLike) -> np.ndarray:
    if isinstance(cm, TwoModeCM):
        return cm.matrix
    m = np.asarray(cm, dtype=float)
    if m.shape != (4, 4):
        raise InvalidParameterError(f"expected a 4x4 covariance matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidParameterError("covariance matrix has non-finite entries")
    if not np.allclose(m, m.T, rtol=1e-12, atol=0.0):
        raise InvalidParameterError("covariance matrix is not symmetric")
    return m


def _require_positive_definite(m: np.ndarray) -> None:
    if np.linalg.eigvalsh(m).min() <= 0.0:
        raise UnphysicalStateError("covariance matrix is not positive definite")


def symplectic_spectrum_generic(cm: CMLike) -> SymplecticSpectrum:
    """
    Symplectic spectrum from the absolute eigenvalues of ``i Omega V``.

    This is the brute-force reference used to validate every closed form.
    Eigenvalues come in ``+nu, -nu`` pairs; after sorting their moduli the
    pairs are averaged.

    Raises
    ------
    UnphysicalStateError
        If ``V`` is not positive definite or an eigenvalue is below
        ``1 - CLAMP_TOL``.
    NumericError
        If the eigenvalue solver fails.
    """
    m = _as_matrix(cm)
    _require_positive_definite(m)
    try:
        ev = np.linalg.eigvals(1j * symplectic_form(2) @ m)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigenvalue solver failed: {exc}") from exc
    mods = np.sort(np.abs(ev))[::-1]
    return _checked_spectrum(0.5 * (mods[0::2] + mods[1::2]))


def _det2(m, i, j) -> Fraction:
    return m[i][i] * m[j][j] - m[i][j] * m[j][i]


def _exact_invariants(m: np.ndarray) -> tuple[Fraction, Fraction]:
    # The entries are binary floats, so Delta and det V are computed exactly.
    q = [[Fraction(float(x)) for x in row] for row in m]
    delta = (q[0][0] * q[1][1] - q[0][1] * q[1][0]
             + q[2][2] * q[3][3] - q[2][3] * q[3][2]
             + 2 * (q[0][2] * q[1][3] - q[0][3] * q[1][2]))
    det = Fraction(0)
    for perm in itertools.permutations(range(4)):
        inversions = sum(1 for i in range(4) for j in range(i + 1, 4) if perm[i] > perm[j])
        term = q[0][perm[0]] * q[1][perm[1]] * q[2][perm[2]] * q[3][perm[3]]
        det += -term if inversions % 2 else term
    return delta, det


def symplectic_spectrum_closed(cm: CMLike) -> SymplecticSpectrum:
    """
    Two-mode symplectic spectrum from the invariants ``Delta`` and ``det V``.

    ``nu_{1,2}^2 = (Delta +/- sqrt(Delta^2 - 4 det V)) / 2`` with
    ``Delta = det A + det B + 2 det C``. The invariants are evaluated exactly
    from the stored floats and the smaller eigenvalue is taken as
    ``sqrt(det V) / nu_1``, so no digits are lost to cancellation.

    Raises
    ------
    UnphysicalStateError
        If the matrix is not positive definite or an eigenvalue is below 1.
    NumericError
        If ``Delta^2 - 4 det V`` is negative.
    """
    m = _as_matrix(cm)
    _require_positive_definite(m)
    delta, det = _exact_invariants(m)
    if det <= 0 or delta <= 0:
        raise UnphysicalStateError(f"invalid invariants: Delta={float(delta)!r}, det={float(det)!r}")
    disc = delta * delta - 4 * det
    if disc < 0:
        raise NumericError(f"Delta^2 - 4 det V = {float(disc)!r} is negative")
    nu1 = math.sqrt(0.5 * (float(delta) + math.sqrt(float(disc))))
    nu2 = math.sqrt(float(det)) / nu1
    return _checked_spectrum((nu1, nu2))


def symmetric_spectrum(a: float, b: float, c: float, t: float, product: float | None = None) -> SymplecticSpectrum:
    """
    Spectrum of ``[[a I, sqrt(t) c Z], [sqrt(t) c Z, b I]]``.

    ``nu = (sqrt(y) +/- (a - b)) / 2`` with ``y = (a + b)^2 - 4 c^2 t``.
    Both ``y = (a - b)^2 + 4 p`` and the smaller eigenvalue ``p / nu_+`` are
    written through ``p = a b - c^2 t``; callers that know ``p`` in a
    cancellation-free form pass it as ``product``.

    Raises
    ------
    UnphysicalStateError
        If ``y < 4``, which no physical state of this form produces.
    """
    p = a * b - c * c * t if product is None else product
    y = (a - b) ** 2 + 4.0 * p
    if y < 4.0 * (1.0 - CLAMP_TOL):
        raise UnphysicalStateError(f"y = {y!r} < 4: not a physical state")
    big = 0.5 * (math.sqrt(y) + abs(a - b))
    return _checked_spectrum((big, p / big))


def g_entropy(nu: float) -> float:
    """
    Entropy in bits of a single thermal mode with symplectic eigenvalue ``nu``.

    ``g(nu) = p log2 p - m log2 m`` with ``p = (nu + 1)/2``, ``m = (nu - 1)/2``,
    evaluated as ``log2 p + m log2(1 + 1/m)`` which has no cancellation. Above
    ``G_ASYMPTOTIC_SWITCH`` the expansion
    ``log2(nu/2) + (1 - 1/(6 nu^2)) / ln 2`` is used.

    >>> g_entropy(1.0)
    0.0
    >>> g_entropy(3.0)
    2.0
    """
    nu = float(nu)
    if not math.isfinite(nu) or nu < 1.0 - CLAMP_TOL:
        raise DomainError(f"g is defined for nu >= 1, got {nu!r}")
    if nu <= 1.0:
        return 0.0
    if nu > G_ASYMPTOTIC_SWITCH:
        return math.log2(0.5 * nu) + (1.0 - 1.0 / (6.0 * nu * nu)) / _LN2
    p = 0.5 * (nu + 1.0)
    m = 0.5 * (nu - 1.0)
    return math.log2(p) + m * math.log1p(1.0 / m) / _LN2


def von_neumann_entropy(spectrum) -> float:
    """Entropy in bits of a Gaussian state, the sum of ``g`` over its spectrum."""
    return math.fsum(g_entropy(nu) for nu in spectrum)


def is_physical(cm: CMLike) -> bool:
    """True if ``cm`` is positive definite with all symplectic eigenvalues >= 1."""
    try:
        symplectic_spectrum_generic(cm)
    except UnphysicalStateError:
        return False
    return True


def _local_symplectic(theta: float, r: float) -> np.ndarray:
    rot = np.array([[math.cos(theta), math.sin(theta)], [-math.sin(theta), math.cos(theta)]])
    return rot @ np.diag([math.exp(-r), math.exp(r)])


def random_physical_cm(rng: np.random.Generator, max_variance: float = 1e5,
                       max_squeezing: float = 1.0) -> tuple[np.ndarray, tuple[float, float]]:
    """
    Draw a random physical two-mode CM by symplectic conjugation of a thermal state.

    Returns the 4x4 matrix and the thermal variances it was built from, which
    are its exact symplectic eigenvalues. Draws are repeated until every
    diagonal entry is at most ``max_variance``.
    """
    while True:
        nus = []
        for _ in range(2):
            # One draw in ten is a pure mode, to exercise clamping at nu = 1.
            if rng.random() < 0.1:
                nus.append(1.0)
            else:
                nus.append(float(10.0 ** rng.uniform(0.0, math.log10(max_variance))))
        s1 = np.zeros((4, 4))
        s1[0:2, 0:2] = _local_symplectic(rng.uniform(0, 2 * math.pi), rng.uniform(-max_squeezing, max_squeezing))
        s1[2:4, 2:4] = _local_symplectic(rng.uniform(0, 2 * math.pi), rng.uniform(-max_squeezing, max_squeezing))
        tau = rng.uniform(0.0, 1.0)
        bs = np.block([[math.sqrt(tau) * IDENTITY2, math.sqrt(1 - tau) * IDENTITY2],
                       [-math.sqrt(1 - tau) * IDENTITY2, math.sqrt(tau) * IDENTITY2]])
        s2 = np.zeros((4, 4))
        s2[0:2, 0:2] = _local_symplectic(rng.uniform(0, 2 * math.pi), rng.uniform(-max_squeezing, max_squeezing))
        s2[2:4, 2:4] = _local_symplectic(rng.uniform(0, 2 * math.pi), rng.uniform(-max_squeezing, max_squeezing))
        s = s2 @ bs @ s1
        m = s @ np.diag([nus[0], nus[0], nus[1], nus[1]]) @ s.T
        m = 0.5 * (m + m.T)
        if np.max(np.diag(m)) <= max_variance:
            return m, (max(nus), min(nus))
