"""Grid membership checkers for the relaxed-convexity classes.

Every checker scans inequalities at on-grid triples only: x1 = a/N,
x2 = c/N, lam = (c-b)/(c-a), so the convex combination lands exactly on
grid index b.  Arithmetic is exact rational whenever the grid function
stores rationals and the defect exponent is 1; otherwise floating point
with a slack tolerance (violations require slack < -tol).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .extremal import majorant_values, parabola
from .grid import GridFunction


@dataclass(frozen=True)
class Violation:
    """A grid triple a <= b <= c where the checked inequality fails.

    slack = rhs - lhs is negative exactly when recorded as a violation.
    """

    a: int
    b: int
    c: int
    lhs: float | Fraction
    rhs: float | Fraction
    slack: float | Fraction

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "lhs": float(self.lhs),
            "rhs": float(self.rhs),
            "slack": float(self.slack),
        }


@dataclass(frozen=True)
class TupleViolation:
    """An m-tuple of grid indices where the mean inequality fails."""

    xs: tuple[int, ...]
    lhs: float
    rhs: float

    def to_dict(self) -> dict:
        return {"xs": list(self.xs), "lhs": float(self.lhs), "rhs": float(self.rhs)}


class ViolationList(list):
    """List of violations; max_slack is the largest lhs - rhs seen anywhere
    in the scan (negative when every inequality holds with margin)."""

    max_slack: float = -math.inf


def check_almost_convex(f: GridFunction, c: float | Fraction = 1, p: float = 1, tol: float = 1e-9) -> ViolationList:
    """Scan all grid triples of f against the (c, p) relaxed-convexity bound.

    Returns every triple with f[b] > lam*f[a] + (1-lam)*f[c] + c*((c-a)/N)**p
    beyond tolerance; an empty result means grid-restricted membership.
    """
    if f.is_exact and p == 1 and isinstance(c, (int, Fraction)):
        return _scan_exact(f, Fraction(c))
    return _scan_float(f, float(c), float(p), tol)


def _scan_exact(f: GridFunction, c_const: Fraction) -> ViolationList:
    N = f.N
    vals = f.values
    out = ViolationList()
    worst = None
    for b in range(1, N):
        lhs = vals[b]
        for a in range(0, b):
            for cc in range(b + 1, N + 1):
                den = cc - a
                lam = Fraction(cc - b, den)
                rhs = lam * vals[a] + (1 - lam) * vals[cc] + c_const * Fraction(den, N)
                gap = lhs - rhs
                if worst is None or gap > worst:
                    worst = gap
                if gap > 0:
                    out.append(Violation(a, b, cc, lhs, rhs, rhs - lhs))
    out.sort(key=lambda v: (v.a, v.b, v.c))
    out.max_slack = float(worst) if worst is not None else -math.inf
    return out


def _scan_float(f: GridFunction, c_const: float, p: float, tol: float) -> ViolationList:
    N = f.N
    vals = f.floats()
    spread = c_const * (np.arange(N + 1) / N) ** p
    out = ViolationList()
    worst = -np.inf
    for b in range(1, N):
        a = np.arange(0, b)
        c = np.arange(b + 1, N + 1)
        den = c[None, :] - a[:, None]
        lam = (c[None, :] - b) / den
        rhs = lam * vals[a][:, None] + (1.0 - lam) * vals[c][None, :] + spread[den]
        gap = vals[b] - rhs
        m = gap.max()
        if m > worst:
            worst = m
        if m > tol:
            for ai, ci in np.argwhere(gap > tol):
                cc = b + 1 + int(ci)
                out.append(Violation(int(ai), b, cc, vals[b], float(rhs[ai, ci]), float(rhs[ai, ci]) - vals[b]))
    out.sort(key=lambda v: (v.a, v.b, v.c))
    out.max_slack = float(worst)
    return out


def check_almost_convex_anchored(f: GridFunction, tol: float = 1e-9) -> ViolationList:
    """Relaxed convexity plus the endpoint condition max(f[0], f[N]) <= 0.

    Endpoint failures appear as synthetic degenerate triples (0,0,0) and
    (N,N,N) with rhs = 0.
    """
    out = check_almost_convex(f, 1, 1, tol)
    zero = Fraction(0) if f.is_exact else 0.0
    eps = 0 if f.is_exact else tol
    for i in (0, f.N):
        v = f[i]
        if v > eps:
            out.append(Violation(i, i, i, v, zero, zero - v))
        out.max_slack = max(out.max_slack, float(v))
    out.sort(key=lambda v: (v.a, v.b, v.c))
    return out


def check_mean_inequality(
    f: GridFunction,
    m: int,
    samples: int = 100_000,
    seed: int = 0,
    tol: float = 1e-9,
) -> ViolationList:
    """Check the m-point mean inequality with spread term (max - min).

    For m = 2 the scan is exhaustive over same-parity index pairs (the only
    pairs whose midpoint is on-grid).  For m >= 3 it draws `samples` seeded
    m-tuples of grid indices whose sum is divisible by m (rejection
    sampling), so the mean is always a grid point.  Entries are
    TupleViolation records.
    """
    if m < 2:
        raise ValueError(f"need m >= 2, got {m}")
    N = f.N
    vals = f.floats()
    out = ViolationList()
    worst = -np.inf
    if m == 2:
        for d in range(1, N // 2 + 1):
            i = np.arange(0, N - 2 * d + 1)
            lhs = vals[i + d]
            gap = lhs - (0.5 * (vals[i] + vals[i + 2 * d]) + (2 * d) / N)
            worst = max(worst, float(gap.max()))
            for j in np.flatnonzero(gap > tol):
                jj = int(i[j])
                out.append(TupleViolation((jj, jj + 2 * d), float(lhs[j]), float(lhs[j] - gap[j])))
        out.sort(key=lambda v: v.xs)
        out.max_slack = worst
        return out

    rng = np.random.default_rng(seed)
    collected: list[np.ndarray] = []
    have = 0
    while have < samples:
        batch = max(4096, (samples - have) * (m + 1))
        draw = rng.integers(0, N + 1, size=(batch, m))
        keep = draw[draw.sum(axis=1) % m == 0]
        if have + len(keep) > samples:
            keep = keep[: samples - have]
        collected.append(keep)
        have += len(keep)
    xs = np.sort(np.vstack(collected), axis=1)
    mid = xs.sum(axis=1) // m
    lhs = vals[mid]
    rhs = vals[xs].mean(axis=1) + (xs[:, -1] - xs[:, 0]) / N
    worst = float((lhs - rhs).max()) if len(lhs) else worst
    for j in np.flatnonzero(lhs - rhs > tol):
        out.append(TupleViolation(tuple(int(t) for t in xs[j]), float(lhs[j]), float(rhs[j])))
    out.sort(key=lambda v: v.xs)
    out.max_slack = worst
    return out


def check_sharpened(f: GridFunction, tol: float = 1e-9) -> ViolationList:
    """Scan the strengthened inequality whose defect is E(lam)*|x2 - x1|.

    The plain relaxed-convexity bound self-improves: the constant defect
    factor can be replaced by the majorant evaluated at the combination
    weight.  Expected to be violation-free for any grid function passing
    check_almost_convex; the full-spread triples (a=0, c=N) are the equality
    witnesses when f is the majorant itself.
    """
    N = f.N
    vals = f.floats()
    out = ViolationList()
    worst = -np.inf
    for b in range(1, N):
        a = np.arange(0, b)
        c = np.arange(b + 1, N + 1)
        den = c[None, :] - a[:, None]
        lam = (c[None, :] - b) / den
        rhs = lam * vals[a][:, None] + (1.0 - lam) * vals[c][None, :] + majorant_values(lam) * (den / N)
        gap = vals[b] - rhs
        m = gap.max()
        if m > worst:
            worst = m
        if m > tol:
            for ai, ci in np.argwhere(gap > tol):
                cc = b + 1 + int(ci)
                out.append(Violation(int(ai), b, cc, vals[b], float(rhs[ai, ci]), float(rhs[ai, ci]) - vals[b]))
    out.sort(key=lambda v: (v.a, v.b, v.c))
    out.max_slack = float(worst)
    return out


def make_tent(x0, h0, N: int) -> GridFunction:
    """Piecewise-linear tent with apex (x0, h0) and zero endpoints.

    x0 must be an on-grid rational (x0*N integer); the values are exact
    rationals whenever h0 is exact.
    """
    x0 = Fraction(x0)
    if not 0 < x0 < 1:
        raise ValueError(f"apex abscissa must lie in (0, 1), got {x0}")
    if (x0 * N).denominator != 1:
        raise ValueError(f"apex {x0} is off-grid for N={N}")
    if not h0 > 0:
        raise ValueError(f"apex height must be positive, got {h0}")
    if isinstance(h0, (int, Fraction)):
        vals = []
        for i in range(N + 1):
            xi = Fraction(i, N)
            vals.append(h0 * xi / x0 if xi <= x0 else h0 * (1 - xi) / (1 - x0))
        return GridFunction(N, vals, label=f"tent[{x0},{h0}]")
    h = float(h0)
    x = np.arange(N + 1) / N
    arr = np.where(x <= float(x0), h * x / float(x0), h * (1.0 - x) / (1.0 - float(x0)))
    return GridFunction(N, arr, label=f"tent[{x0},{h0}]")


def _require_concave(f: GridFunction, tol: float = 1e-12) -> None:
    if f.is_exact:
        bad = any(f[i - 1] - 2 * f[i] + f[i + 1] > 0 for i in range(1, f.N))
    else:
        v = f.floats()
        bad = bool(np.any(v[:-2] - 2 * v[1:-1] + v[2:] > tol))
    if bad:
        raise ValueError(f"{f!r} is not concave on the grid")


def check_under_parabola(f: GridFunction, tol: float = 1e-9) -> bool:
    """True iff the concave, endpoint-zero f stays under 4x(1-x) on the grid.

    Raises if f is not concave or its endpoints are nonzero.  When this
    returns True, grid membership in the anchored class follows (checked by
    the test harness, not here).
    """
    _require_concave(f)
    if f.is_exact:
        if f[0] != 0 or f[f.N] != 0:
            raise ValueError("endpoints must be exactly zero")
        return all(f[i] <= parabola(Fraction(i, f.N)) for i in range(f.N + 1))
    v = f.floats()
    if abs(v[0]) > 1e-12 or abs(v[-1]) > 1e-12:
        raise ValueError("endpoints must be zero")
    x = np.arange(f.N + 1) / f.N
    return bool(np.all(v <= 4.0 * x * (1.0 - x) + tol))


def check_endpoint_reduction(f: GridFunction, tol: float = 1e-9) -> tuple[bool, bool]:
    """(endpoint_ok, full_ok) for a concave grid function.

    endpoint_ok checks the relaxed-convexity inequality only on triples
    touching the boundary (a = 0 or c = N); full_ok scans all triples.  For
    concave functions the endpoint scan is decisive, which the property
    harness asserts as endpoint_ok => full_ok.
    """
    _require_concave(f)
    N = f.N
    vals = f.floats()
    endpoint_ok = True
    for b in range(1, N):
        c = np.arange(b + 1, N + 1)
        rhs = ((c - b) / c) * vals[0] + (b / c) * vals[c] + c / N
        if np.any(vals[b] - rhs > tol):
            endpoint_ok = False
            break
        a = np.arange(0, b)
        den = N - a
        lam = (N - b) / den
        rhs = lam * vals[a] + (1.0 - lam) * vals[N] + den / N
        if np.any(vals[b] - rhs > tol):
            endpoint_ok = False
            break
    full_ok = not check_almost_convex(f, 1, 1, tol)
    return endpoint_ok, full_ok


def sample_concave(N: int, seed: int, cap: GridFunction | None = None) -> GridFunction:
    """Random concave grid function with zero endpoints, peak normalized to 1.

    Built from sorted (hence non-increasing) slopes recentered to sum to
    zero.  If cap is given, the sample is rescaled by min(1, min cap/f) over
    interior indices so it sits under the cap without losing concavity.
    """
    if N < 2:
        raise ValueError(f"grid resolution must be >= 2, got {N}")
    rng = np.random.default_rng(seed)
    slopes = np.sort(rng.random(N))[::-1]
    slopes = slopes - slopes.mean()
    f = np.concatenate([[0.0], np.cumsum(slopes)])
    f[-1] = 0.0
    peak = f.max()
    if peak > 0:
        f = f / peak
    if cap is not None:
        if cap.N != N:
            raise ValueError(f"cap resolution {cap.N} != {N}")
        cv = cap.floats()
        inner = f[1:-1] > 0
        if inner.any():
            scale = float((cv[1:-1][inner] / f[1:-1][inner]).min())
            f = f * min(1.0, max(0.0, scale))
    return GridFunction(N, f, label=f"concave[seed={seed}]")
