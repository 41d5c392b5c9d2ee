"""Perron-Frobenius certification and dominant eigendata of incidence matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, NotPrimitive
from .traintrack import TrainTrack, compute_faces

DEFAULT_TOL = 1e-10
MAX_ITER = 1_000_000


def _bool_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a.astype(np.int64) @ b.astype(np.int64)) > 0


def is_primitive(matrix) -> bool:
    """True iff some power of the nonnegative square matrix is entrywise positive.

    Primitivity is monotone in the exponent, so it is enough to test the
    power at the Wielandt bound ``n^2 - 2n + 2``; that power is formed by
    repeated squaring of the 0/1 pattern.
    """
    pattern = np.asarray(matrix, dtype=object) != 0
    pattern = np.asarray(pattern, dtype=bool)
    n = pattern.shape[0]
    if pattern.ndim != 2 or pattern.shape != (n, n) or n == 0:
        raise ValueError("expected a nonempty square matrix")
    exponent = n * n - 2 * n + 2
    result = np.eye(n, dtype=bool)
    base = pattern
    first = True
    while exponent:
        if exponent & 1:
            result = base.copy() if first else _bool_matmul(result, base)
            first = False
        exponent >>= 1
        if exponent:
            base = _bool_matmul(base, base)
    return bool(result.all())


@dataclass(frozen=True)
class SpectralResult:
    lam: float
    widths: np.ndarray   # lam * v = M^T v, unit sum
    lengths: np.ndarray  # lam * w = M w, unit sum
    residual: float
    iterations: int


def _power_iteration(a: np.ndarray, tol: float, max_iter: int) -> tuple[float, np.ndarray, float, int]:
    n = a.shape[0]
    x = np.full(n, 1.0 / n)
    lam = 0.0
    for it in range(1, max_iter + 1):
        y = a @ x
        s = y.sum()
        if s <= 0:
            raise NotPrimitive("iterate collapsed to zero")
        y /= s
        lam = float(s)  # since sum(x) == 1
        res = float(np.max(np.abs(a @ y - lam * y)))
        x = y
        # absolute tolerance, unless rounding in a @ y already dominates
        floor = 64 * np.finfo(float).eps * lam * float(np.max(y))
        if res <= max(tol, floor) and it > 1:
            # refine lambda from the final iterate
            lam = float((a @ x).sum())
            res = float(np.max(np.abs(a @ x - lam * x)))
            return lam, x, res, it
    raise NoConvergence(f"power iteration did not converge in {max_iter} steps")


def dominant_eig(matrix, tol: float = DEFAULT_TOL, max_iter: int = MAX_ITER) -> SpectralResult:
    """Dilatation and positive eigenvectors of a primitive incidence matrix.

    Rows index source branches, so widths come from ``M^T`` and lengths
    from ``M``.  The two runs must agree on the eigenvalue.
    """
    if not is_primitive(matrix):
        raise NotPrimitive("incidence matrix is not Perron-Frobenius")
    m = np.asarray(matrix, dtype=float)
    lam_v, v, res_v, it_v = _power_iteration(m.T, tol, max_iter)
    lam_w, w, res_w, it_w = _power_iteration(m, tol, max_iter)
    if abs(lam_v - lam_w) > tol * max(1.0, lam_v) * 10:
        raise NoConvergence(f"eigenvalues disagree: {lam_v} vs {lam_w}")
    if not (np.all(v > 0) and np.all(w > 0)):
        raise NoConvergence("eigenvector is not strictly positive")
    return SpectralResult(
        lam=lam_v,
        widths=v,
        lengths=w,
        residual=max(res_v, res_w),
        iterations=max(it_v, it_w),
    )


@dataclass(frozen=True)
class SwitchCheck:
    switch: str
    side_a: float
    side_b: float

    def ok(self, tol: float) -> bool:
        return abs(self.side_a - self.side_b) <= tol * (self.side_a + self.side_b)


@dataclass(frozen=True)
class SwitchReport:
    checks: tuple[SwitchCheck, ...]
    tol: float

    @property
    def ok(self) -> bool:
        return all(c.ok(self.tol) for c in self.checks)

    @property
    def failures(self) -> list[SwitchCheck]:
        return [c for c in self.checks if not c.ok(self.tol)]


def check_switch_conditions(track: TrainTrack, weights, tol: float = 1e-9) -> SwitchReport:
    """Compare total weight entering each switch from its two sides.

    ``weights`` is indexed like ``track.branches``.
    """
    w = np.asarray(weights, dtype=float)
    idx = track.index
    checks = []
    for sw in track.switches:
        a = float(sum(w[idx[e.branch]] for e in sw.side_a))
        b = float(sum(w[idx[e.branch]] for e in sw.side_b))
        checks.append(SwitchCheck(sw.id, a, b))
    return SwitchReport(tuple(checks), tol)


@dataclass(frozen=True)
class ZipCheck:
    """Length data of one disk face.

    ``arcs`` are the lengths of the smooth boundary runs between cusps,
    ``imbalance`` is their alternating sum (even cusp counts only, else 0)
    and ``slack`` the largest achievable minimum zip length.
    """

    face: int
    arcs: tuple[float, ...]
    imbalance: float
    slack: float

    def ok(self, tol: float) -> bool:
        scale = sum(self.arcs)
        return abs(self.imbalance) <= tol * scale and self.slack >= -tol * scale


@dataclass(frozen=True)
class ZipReport:
    checks: tuple[ZipCheck, ...]
    tol: float

    @property
    def ok(self) -> bool:
        return all(c.ok(self.tol) for c in self.checks)

    @property
    def failures(self) -> list[ZipCheck]:
        return [c for c in self.checks if not c.ok(self.tol)]


def _zip_face(arcs: np.ndarray) -> tuple[float, float]:
    # Zip lengths z_k at the cusps satisfy arcs[k] = z_k + z_{k+1}.  Write
    # z_k = s_k * t + c_k and solve for the free parameter t.
    p = len(arcs)
    coeffs = []
    s, c = 1.0, 0.0
    for k in range(p):
        coeffs.append((s, c))
        s, c = -s, arcs[k] - c
    # closing the cycle: z_p = s*t + c must equal z_0 = t
    if p % 2:
        t = c / 2.0
        return 0.0, min(sk * t + ck for sk, ck in coeffs)
    lo = max((-ck for sk, ck in coeffs if sk > 0), default=-np.inf)
    hi = min((ck for sk, ck in coeffs if sk < 0), default=np.inf)
    return float(c), float(hi - lo) / 2.0


def check_length_conditions(track: TrainTrack, lengths, tol: float = 1e-9) -> ZipReport:
    """Dual condition on branch lengths: every disk face must zip up to a point.

    Collapsing a face with ``p`` cusps zips the two sides of each cusp
    together, so each boundary arc is split into the two zip lengths at its
    ends.  Such nonnegative zip lengths exist exactly when even faces have
    vanishing alternating arc sum and the resulting solution is nonnegative.
    """
    w = np.asarray(lengths, dtype=float)
    idx = track.index
    checks = []
    for k, face in enumerate(compute_faces(track)):
        if face.kind != "disk" or face.cusp_count == 0:
            continue
        arcs = np.array([sum(w[idx[b]] for b, _ in arc) for arc in face.arcs])
        imbalance, slack = _zip_face(arcs)
        checks.append(ZipCheck(k, tuple(float(a) for a in arcs), imbalance, slack))
    return ZipReport(tuple(checks), tol)


def trace_power(matrix, n: int) -> int:
    """Exact ``tr(M^n)`` with Python integers."""
    m = np.array(np.asarray(matrix), dtype=object)
    return int(np.trace(np.linalg.matrix_power(m, n)))

