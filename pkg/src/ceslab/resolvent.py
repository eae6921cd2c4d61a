"""Closed-form resolvent truncations of the averaging operator.

For lambda outside Sigma0 = {0} u {1/n : n >= 1} the inverse of (C - lambda I)
is lower triangular with explicit entries: the diagonal is 1/((1/n) - lambda)
and the strict lower triangle is -(1/lambda^2) e_nm(lambda) with

    e_nm(lambda) = 1 / (n * prod_{k=m}^{n} (1 - 1/(k lambda))),   1 <= m < n,

and a zero first row.  Because the matrices are lower triangular the n x n
truncation of the inverse is exactly the inverse of the n x n truncation,
so every identity here can be checked by plain matrix arithmetic.

Products are evaluated per row by an incremental recurrence; above a size
threshold the accumulation moves to the log domain (log-modulus plus
argument), where the factors' n^(+-alpha) growth cannot over- or underflow.
"""

import numpy as np

from .errors import (
    InvalidDimensionError,
    LambdaInSigmaZeroError,
    ProductOverflowError,
    UnsupportedParameterError,
)
from .triangular import LowerTriangularMatrix, cesaro_matrix, row_offsets

__all__ = [
    "GAMMA_FLOOR",
    "LOG_DOMAIN_THRESHOLD",
    "gamma",
    "nearest_pole",
    "in_sigma_zero",
    "alpha_of",
    "diagonal_part",
    "e_part",
    "resolvent_matrix",
    "resolvent_parts",
    "ResolventParts",
    "residual",
    "g_matrix",
]

# Below this distance to a pole the diagonal entries 1/((1/n) - lambda)
# lose all double-precision digits; construction is refused.
GAMMA_FLOOR = 1e-9

# Direct products are exact enough (and faster) up to this size; beyond it
# rows are accumulated as log-modulus + argument.
LOG_DOMAIN_THRESHOLD = 512

# 1/Re(lambda) beyond this exceeds exact integer resolution of doubles; the
# reciprocals 1/n are then denser than float spacing around Re(lambda).
_MAX_INDEX = 1e15


def nearest_pole(lam):
    """The point of {0} u {1/n} nearest to lambda, with its distance.

    Returns ``(point, distance)`` where ``point`` is 0.0 or the float 1/n.
    For Re(lambda) <= 0 the nearest point is always 0; otherwise only the
    reciprocals bracketing 1/Re(lambda) can be nearest, so two adjacent
    integer candidates (clamped to n >= 1) are examined.
    """
    lam = complex(lam)
    best_point = 0.0
    best_dist = abs(lam)
    re = lam.real
    if re > 0.0:
        hi = 1.0 / re
        if hi > _MAX_INDEX:
            # Some 1/n agrees with Re(lambda) to the last float digit.
            if abs(lam.imag) < best_dist:
                best_point, best_dist = re, abs(lam.imag)
        else:
            n0 = int(hi)
            for n in (n0 - 1, n0, n0 + 1, n0 + 2):
                if n >= 1:
                    d = abs(lam - 1.0 / n)
                    if d < best_dist:
                        best_point, best_dist = 1.0 / n, d
    return best_point, best_dist


def gamma(lam):
    """Distance from lambda to {0} u {1/n : n >= 1}; zero on the set itself."""
    return nearest_pole(lam)[1]


def in_sigma_zero(lam, n_max=10**12):
    """Exact membership of lambda in {0} u {1/n : n <= n_max}, at float resolution."""
    lam = complex(lam)
    if lam == 0:
        return True
    if lam.imag != 0.0:
        return False
    re = lam.real
    if re <= 0.0:
        return False
    n0 = int(1.0 / re)
    for n in (n0 - 1, n0, n0 + 1, n0 + 2):
        if 1 <= n <= n_max and re == 1.0 / n:
            return True
    return False


def alpha_of(lam):
    """Re(1/lambda), the single parameter governing growth and disk membership."""
    lam = complex(lam)
    if lam == 0:
        raise UnsupportedParameterError("alpha undefined at lambda = 0")
    return (1.0 / lam).real


def _require_off_sigma_zero(lam, floor=GAMMA_FLOOR):
    point, dist = nearest_pole(lam)
    if dist <= floor:
        raise LambdaInSigmaZeroError(lam, dist, point)
    return dist


def diagonal_part(lam, n):
    """Diagonal resolvent entries d_kk = 1/((1/k) - lambda), k = 1..n.

    Every entry is bounded in modulus by 1/gamma(lambda).
    """
    lam = complex(lam)
    if n < 1:
        raise InvalidDimensionError(f"size must be >= 1, got {n}")
    _require_off_sigma_zero(lam)
    k = np.arange(1, n + 1, dtype=np.float64)
    return 1.0 / (1.0 / k - lam)


def _factor_sequence(lam, n):
    k = np.arange(1, n + 1, dtype=np.float64)
    return (1.0 - 1.0 / (k * lam)).astype(np.complex128)


def _e_data_direct(lam, n):
    """Strict-lower products by the row recurrence S(m, n+1) = S(m, n) f_{n+1}."""
    f = _factor_sequence(lam, n)
    data = np.zeros(n * (n + 1) // 2, dtype=np.complex128)
    if n < 2:
        return data
    row = np.array([f[0] * f[1]], dtype=np.complex128)  # S(1, 2)
    data[1] = 1.0 / (2.0 * row[0])
    for i in range(2, n):  # row i holds S(m, i+1), m = 1..i
        row = np.concatenate((row * f[i], [f[i - 1] * f[i]]))
        off = i * (i + 1) // 2
        data[off : off + i] = 1.0 / ((i + 1) * row)
    return data


def _e_data_log(lam, n):
    """Same entries via prefix sums of complex logs; safe at any size."""
    f = _factor_sequence(lam, n)
    prefix = np.concatenate(([0.0 + 0.0j], np.cumsum(np.log(f))))
    data = np.zeros(n * (n + 1) // 2, dtype=np.complex128)
    for i in range(1, n):
        off = i * (i + 1) // 2
        data[off : off + i] = np.exp(prefix[:i] - prefix[i + 1] - np.log(i + 1.0))
    return data


def e_part(lam, n, method="auto"):
    """The strictly-lower comparison matrix E_lambda at truncation n.

    Row 1 and the diagonal are identically zero.  For real lambda = 1/alpha
    with 0 < alpha < 1 all entries are nonnegative, since every factor
    1 - alpha/k is positive.

    Parameters
    ----------
    method : "auto", "direct" or "log"
        "auto" uses direct products up to LOG_DOMAIN_THRESHOLD and the log
        domain beyond; the explicit values force one path (used in tests).
    """
    lam = complex(lam)
    if n < 1:
        raise InvalidDimensionError(f"size must be >= 1, got {n}")
    _require_off_sigma_zero(lam)
    if method == "auto":
        method = "direct" if n <= LOG_DOMAIN_THRESHOLD else "log"
    with np.errstate(over="ignore", invalid="ignore"):
        # entries beyond double range surface as a located error below
        if method == "direct":
            data = _e_data_direct(lam, n)
        elif method == "log":
            data = _e_data_log(lam, n)
        else:
            raise ValueError(f"unknown method {method!r}")
    bad = ~np.isfinite(data.view(np.float64))
    if bad.any():
        flat = int(np.flatnonzero(bad)[0] // 2)
        # recover 1-based (row, col) from the packed position
        i = int((np.sqrt(8.0 * flat + 1) - 1) // 2)
        raise ProductOverflowError(i + 1, flat - i * (i + 1) // 2 + 1)
    return LowerTriangularMatrix(n, data)


class ResolventParts:
    """lambda with its derived quantities and both resolvent pieces.

    Bundles alpha = Re(1/lambda), gamma = dist(lambda, poles), the diagonal
    entries and the strictly-lower matrix, ready to be assembled into
    diag - (1/lambda^2) E.
    """

    __slots__ = ("lam", "alpha", "gamma", "size", "d_diag", "e_matrix")

    def __init__(self, lam, alpha, gamma, size, d_diag, e_matrix):
        if not gamma > 0:
            raise LambdaInSigmaZeroError(lam, gamma, nearest_pole(lam)[0])
        if e_matrix.n != size or d_diag.shape != (size,):
            raise InvalidDimensionError("resolvent parts sizes disagree")
        offs = row_offsets(size)
        if np.any(e_matrix.data[offs + np.arange(size)] != 0) or np.any(
            e_matrix.data[:1] != 0
        ):
            raise ValueError("e_matrix must have zero diagonal and zero first row")
        if np.any(np.abs(d_diag) > 1.0 / gamma + 1e-9):
            raise ValueError("diagonal entries exceed the 1/gamma bound")
        self.lam = lam
        self.alpha = alpha
        self.gamma = gamma
        self.size = size
        self.d_diag = d_diag
        self.e_matrix = e_matrix

    def assemble(self):
        """diag(d) - (1/lambda^2) E as a packed matrix."""
        data = self.e_matrix.data * (-1.0 / self.lam**2)
        data[row_offsets(self.size) + np.arange(self.size)] = self.d_diag
        return LowerTriangularMatrix(self.size, data)


def resolvent_parts(lam, n, method="auto"):
    lam = complex(lam)
    dist = _require_off_sigma_zero(lam)
    return ResolventParts(
        lam,
        alpha_of(lam),
        dist,
        n,
        diagonal_part(lam, n),
        e_part(lam, n, method=method),
    )


def resolvent_matrix(lam, n, method="auto"):
    """The inverse of the n x n section of (C - lambda I), in closed form."""
    return resolvent_parts(lam, n, method=method).assemble()


def residual(lam, n):
    """Max-modulus deviation of (C - lambda I) R and R (C - lambda I) from I.

    A numerical witness that the closed-form matrix is the inverse; exact
    arithmetic would give zero.
    """
    lam = complex(lam)
    R = resolvent_matrix(lam, n).dense()
    A = cesaro_matrix(n).dense()
    A[np.diag_indices(n)] -= lam
    eye = np.eye(n)
    forward = np.abs(A @ R - eye).max()
    backward = np.abs(R @ A - eye).max()
    return float(max(forward, backward))


def g_matrix(alpha, n):
    """Comparison matrix with entries r^(alpha-1) m^(-alpha) for m <= r.

    At alpha = 0 this is exactly the averaging matrix.  Dominates the
    modulus of E_lambda up to a constant whenever Re(1/lambda) = alpha < 1.
    """
    alpha = float(alpha)
    if alpha >= 1.0:
        raise UnsupportedParameterError(f"requires alpha < 1, got {alpha}")
    if n < 1:
        raise InvalidDimensionError(f"size must be >= 1, got {n}")
    mpow = np.arange(1, n + 1, dtype=np.float64) ** (-alpha)
    data = np.empty(n * (n + 1) // 2, dtype=np.complex128)
    for i in range(n):
        off = i * (i + 1) // 2
        data[off : off + i + 1] = (i + 1.0) ** (alpha - 1.0) * mpow[: i + 1]
    return LowerTriangularMatrix(n, data)
