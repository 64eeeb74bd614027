"""Second Remez exchange algorithm for minimax polynomial approximation.

Polynomials are kept in the Chebyshev basis of their segment for
conditioning; a monomial-basis view is available for reporting.  Each
iteration solves the levelled interpolation system

    g(t_i) = P(t_i) + (-1)^i h,        i = 0..k+1

by full-pivot elimination, then replaces all k+2 reference points with
refined local extrema of the residual (multi-point exchange, the variant
with quadratic convergence for smooth g).  Extrema are located on a dense
Chebyshev-distributed grid of ``grid_multiplier * (k+2)`` points and
polished by golden-section search to a bracket of width (b-a)*1e-12.

Convergence is judged by the de la Vallee-Poussin sandwich: the residual
magnitudes at the exchanged points bound the true minimax error from below,
the grid maximum bounds it from above, and iteration stops when their
relative gap falls under ``tol``.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mp

from .errors import (
    AlternationError,
    ConfigurationError,
    ConvergenceError,
    SingularSystemError,
)
from .precision import Precision, to_mpf, working

REFINE_WIDTH_FACTOR = "1e-12"


@dataclass(frozen=True)
class Polynomial:
    """Polynomial in the Chebyshev basis of ``segment``: sum c_j T_j(u)."""

    coefficients: tuple
    segment: tuple

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def evaluate(self, x):
        """Clenshaw recurrence at the current working precision."""
        a, b = self.segment
        c = self.coefficients
        if len(c) == 1:
            return +c[0]
        u = (2 * x - a - b) / (b - a)
        d = 2 * u
        b1 = b2 = mp.mpf(0)
        for cj in reversed(c[1:]):
            b1, b2 = d * b1 - b2 + cj, b1
        return u * b1 - b2 + c[0]

    __call__ = evaluate

    def evaluate_interval(self, lo, hi):
        """Interval enclosure of the range over [lo, hi] (outward rounded)."""
        from mpmath import iv

        a, b = self.segment
        c = self.coefficients
        if len(c) == 1:
            return iv.mpf(c[0])
        X = iv.mpf([lo, hi])
        u = (2 * X - iv.mpf(a) - iv.mpf(b)) / (iv.mpf(b) - iv.mpf(a))
        d = 2 * u
        b1 = b2 = iv.mpf(0)
        for cj in reversed(c[1:]):
            b1, b2 = d * b1 - b2 + iv.mpf(cj), b1
        return u * b1 - b2 + iv.mpf(c[0])

    def to_monomial(self):
        """Coefficients (low to high) of the same polynomial in powers of x."""
        a, b = self.segment
        k = self.degree
        # Chebyshev-in-u coefficients -> monomial-in-u
        acc = [mp.mpf(0)] * (k + 1)
        t_prev = [mp.mpf(1)]
        t_cur = [mp.mpf(0), mp.mpf(1)]
        acc[0] += self.coefficients[0]
        if k >= 1:
            for i, v in enumerate(t_cur):
                acc[i] += self.coefficients[1] * v
        for j in range(2, k + 1):
            t_next = [mp.mpf(0)] * (len(t_cur) + 1)
            for i, v in enumerate(t_cur):
                t_next[i + 1] += 2 * v
            for i, v in enumerate(t_prev):
                t_next[i] -= v
            for i, v in enumerate(t_next):
                acc[i] += self.coefficients[j] * v
            t_prev, t_cur = t_cur, t_next
        # compose with u = s*x + t
        s = 2 / (b - a)
        t = -(a + b) / (b - a)
        result = [acc[k]]
        for j in range(k - 1, -1, -1):
            nxt = [mp.mpf(0)] * (len(result) + 1)
            for i, v in enumerate(result):
                nxt[i] += v * t
                nxt[i + 1] += v * s
            nxt[0] += acc[j]
            result = nxt[: k + 1]
        return tuple(result)

    @staticmethod
    def from_monomial(coefficients, a, b) -> "Polynomial":
        """Chebyshev form of a monomial-basis polynomial on [a, b]."""
        av = to_mpf(a)
        bv = to_mpf(b)
        coeffs = [to_mpf(c) for c in coefficients]
        k = len(coeffs) - 1
        mid = (av + bv) / 2
        hw = (bv - av) / 2

        def horner(x):
            acc = mp.mpf(0)
            for c in reversed(coeffs):
                acc = acc * x + c
            return acc

        npts = k + 1
        thetas = [mp.pi * (2 * i + 1) / (2 * npts) for i in range(npts)]
        vals = [horner(mid + hw * mp.cos(th)) for th in thetas]
        cheb = []
        for j in range(npts):
            s = mp.mpf(0)
            for i in range(npts):
                s += vals[i] * mp.cos(j * thetas[i])
            cheb.append(s * (1 if j == 0 else 2) / npts)
        return Polynomial(coefficients=tuple(cheb), segment=(av, bv))


@dataclass(frozen=True)
class MinimaxResult:
    polynomial: Polynomial
    delta_hat: mpmath.mpf
    nodes: tuple
    iterations: int
    levelled_error_history: tuple
    lower_bound: mpmath.mpf
    upper_bound: mpmath.mpf


@dataclass(frozen=True)
class ExchangeResult:
    nodes: tuple
    residuals: tuple
    grid_max: mpmath.mpf


@dataclass(frozen=True)
class EquioscillationReport:
    passed: bool
    residuals: tuple
    spread: object
    delta_hat: mpmath.mpf
    failure_index: object
    message: str


class CachedFunction:
    """Memoizing wrapper for the approximated function; counts fresh calls."""

    def __init__(self, fn):
        self.fn = fn
        self.values = {}
        self.calls = 0

    def __call__(self, x):
        v = self.values.get(x)
        if v is None:
            v = self.fn(x)
            self.values[x] = v
            self.calls += 1
        return v


def initial_nodes(a, b, k: int):
    """The k+2 Chebyshev extremum abscissae of [a, b], endpoints included."""
    if not isinstance(k, int) or k < 0:
        raise ConfigurationError(f"degree must be a nonnegative integer, got {k!r}")
    av = to_mpf(a)
    bv = to_mpf(b)
    if not av < bv:
        raise ConfigurationError("segment must satisfy a < b")
    mid = (av + bv) / 2
    hw = (bv - av) / 2
    inner = [mid - hw * mp.cos(mp.pi * j / (k + 1)) for j in range(1, k + 1)]
    return tuple([av] + inner + [bv])


def _chebyshev_grid(a, b, count):
    mid = (a + b) / 2
    hw = (b - a) / 2
    return tuple(
        mid - hw * mp.cos(mp.pi * i / (count - 1)) if 0 < i < count - 1
        else (a if i == 0 else b)
        for i in range(count)
    )


def solve_levelled_system(g, nodes, a, b, p: Precision = Precision()):
    """Solve g(t_i) = P(t_i) + (-1)^i h for the degree-k polynomial and h.

    ``nodes`` must be k+2 strictly increasing points of [a, b]; the system is
    solved by Gaussian elimination with full pivoting at working precision.
    """
    with working(p):
        av = to_mpf(a)
        bv = to_mpf(b)
        ts = [to_mpf(t) for t in nodes]
        size = len(ts)
        if size < 2:
            raise ConfigurationError("need at least 2 nodes")
        for l, r in zip(ts, ts[1:]):
            if not l < r:
                raise SingularSystemError("nodes must be strictly increasing")
        k = size - 2
        rows = []
        rhs = []
        for i, t in enumerate(ts):
            u = (2 * t - av - bv) / (bv - av)
            basis = [mp.mpf(1)]
            if k >= 1:
                basis.append(u)
            for _ in range(2, k + 1):
                basis.append(2 * u * basis[-1] - basis[-2])
            rows.append(basis + [mp.mpf(-1) ** i])
            rhs.append(to_mpf(g(t)))
        sol = _solve_full_pivot(rows, rhs, p)
        coeffs = tuple(+c for c in sol[: k + 1])
        h = +sol[k + 1]
        return Polynomial(coefficients=coeffs, segment=(av, bv)), h


def _solve_full_pivot(rows, rhs, p: Precision):
    n = len(rows)
    M = [list(row) + [rhs[i]] for i, row in enumerate(rows)]
    scale = max(max(abs(v) for v in row[:-1]) for row in M)
    if scale == 0:
        raise SingularSystemError("zero system")
    tiny = scale * mp.mpf(10) ** (-(p.decimal_digits + 5))
    perm = list(range(n))
    for col in range(n):
        pi, pj, best = col, col, abs(M[col][col])
        for i in range(col, n):
            for j in range(col, n):
                v = abs(M[i][j])
                if v > best:
                    pi, pj, best = i, j, v
        if best <= tiny:
            raise SingularSystemError(
                "levelled system is numerically singular (coincident nodes?)"
            )
        if pi != col:
            M[col], M[pi] = M[pi], M[col]
        if pj != col:
            for row in M:
                row[col], row[pj] = row[pj], row[col]
            perm[col], perm[pj] = perm[pj], perm[col]
        pivot = M[col][col]
        for i in range(col + 1, n):
            factor = M[i][col] / pivot
            if factor != 0:
                for j in range(col, n + 1):
                    M[i][j] -= factor * M[col][j]
    x = [mp.mpf(0)] * n
    for i in range(n - 1, -1, -1):
        acc = M[i][n]
        for j in range(i + 1, n):
            acc -= M[i][j] * x[j]
        x[i] = acc / M[i][i]
    out = [mp.mpf(0)] * n
    for idx, where in enumerate(perm):
        out[where] = x[idx]
    return out


def _golden_max(phi, lo, hi, width_tol, known=()):
    """Golden-section maximization; returns the best (x, phi(x)) seen."""
    invphi = (mp.sqrt(5) - 1) / 2
    best = None
    for x, v in known:
        if best is None or v > best[1]:
            best = (x, v)
    x1 = hi - invphi * (hi - lo)
    x2 = lo + invphi * (hi - lo)
    f1 = phi(x1)
    f2 = phi(x2)
    while hi - lo > width_tol:
        if f1 >= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - invphi * (hi - lo)
            f1 = phi(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + invphi * (hi - lo)
            f2 = phi(x2)
    for x, v in ((x1, f1), (x2, f2)):
        if best is None or v > best[1]:
            best = (x, v)
    return best


def _exchange_core(g, poly, grid, rvals, p: Precision, current_nodes=None):
    a, b = poly.segment
    k = poly.degree
    required = k + 2
    width_tol = (b - a) * to_mpf(REFINE_WIDTH_FACTOR)
    count = len(grid)
    grid_max = max(abs(r) for r in rvals)

    candidates = []
    for i in range(count):
        r = rvals[i]
        if r == 0:
            continue
        left_ok = i == 0 or abs(r) >= abs(rvals[i - 1])
        right_ok = i == count - 1 or abs(r) >= abs(rvals[i + 1])
        if left_ok and right_ok:
            candidates.append(i)

    refined = []
    for i in candidates:
        sign = 1 if rvals[i] > 0 else -1

        def phi(x, _s=sign):
            return _s * (g(x) - poly.evaluate(x))

        lo = grid[i - 1] if i > 0 else grid[0]
        hi = grid[i + 1] if i < count - 1 else grid[count - 1]
        known = [(grid[i], sign * rvals[i])]
        if i > 0:
            known.append((grid[i - 1], sign * rvals[i - 1]))
        if i < count - 1:
            known.append((grid[i + 1], sign * rvals[i + 1]))
        x_best, v_best = _golden_max(phi, lo, hi, width_tol, known=known)
        if v_best > 0:
            refined.append((x_best, sign * v_best, sign))

    refined.sort(key=lambda item: item[0])
    merged = []
    for x, r, s in refined:
        if merged and merged[-1][2] == s:
            if abs(r) > abs(merged[-1][1]):
                merged[-1] = (x, r, s)
        else:
            merged.append((x, r, s))

    if len(merged) < required:
        # degenerate residual (fewer alternations than the reference needs,
        # e.g. a levelled solve with h = 0 on a symmetric function): fall
        # back to single-point exchange, swapping the global extremum into
        # the nearest point of the current reference
        if current_nodes is not None and merged:
            x_star, r_star, _ = max(merged, key=lambda item: abs(item[1]))
            nodes = [+t for t in current_nodes]
            nearest = min(range(len(nodes)), key=lambda j: abs(nodes[j] - x_star))
            nodes[nearest] = x_star
            nodes.sort()
            if all(l < r for l, r in zip(nodes, nodes[1:])):
                residuals = tuple(g(t) - poly.evaluate(t) for t in nodes)
                return ExchangeResult(nodes=tuple(nodes), residuals=residuals,
                                      grid_max=+grid_max)
        raise AlternationError(
            f"exchange found {len(merged)} alternating extrema, needs {required} "
            f"(grid max residual {mpmath.nstr(grid_max, 8)})",
            found=len(merged), required=required,
        )
    while len(merged) > required:
        if abs(merged[0][1]) <= abs(merged[-1][1]):
            merged.pop(0)
        else:
            merged.pop()

    nodes = tuple(+x for x, _, _ in merged)
    residuals = tuple(+r for _, r, _ in merged)
    return ExchangeResult(nodes=nodes, residuals=residuals, grid_max=+grid_max)


def exchange(g, polynomial: Polynomial, p: Precision = Precision(),
             grid_multiplier: int = 64) -> ExchangeResult:
    """One multi-point exchange step: refined alternating extrema of g - P."""
    with working(p):
        a, b = polynomial.segment
        grid = _chebyshev_grid(a, b, grid_multiplier * (polynomial.degree + 2))
        gc = g if isinstance(g, CachedFunction) else CachedFunction(g)
        rvals = [gc(x) - polynomial.evaluate(x) for x in grid]
        return _exchange_core(gc, polynomial, grid, rvals, p)


def minimax(g, a, b, k: int, tol="1e-12", p: Precision = Precision(),
            grid_multiplier: int = 64, max_iterations: int = 50) -> MinimaxResult:
    """Minimax degree-k polynomial approximation of g on [a, b].

    Returns the polynomial, the error estimate ``delta_hat`` (maximum
    observed residual, an upper-bound-flavored estimate), the k+2
    equioscillation nodes, and the de la Vallee-Poussin bounds.
    """
    if not isinstance(k, int) or k < 0:
        raise ConfigurationError(f"degree must be a nonnegative integer, got {k!r}")
    with working(p):
        av = to_mpf(a)
        bv = to_mpf(b)
        if not av < bv:
            raise ConfigurationError("segment must satisfy a < b")
        tol_v = to_mpf(tol)
        floor_tol = mp.mpf(10) ** (-(p.decimal_digits - 10))
        if tol_v < floor_tol:
            raise ConfigurationError(
                f"tol={tol} is below what {p.decimal_digits}-digit arithmetic can resolve"
            )
        gc = g if isinstance(g, CachedFunction) else CachedFunction(g)
        grid = _chebyshev_grid(av, bv, grid_multiplier * (k + 2))
        nodes = initial_nodes(av, bv, k)
        history = []
        for iteration in range(1, max_iterations + 1):
            poly, h = solve_levelled_system(gc, nodes, av, bv, p)
            history.append(abs(h))
            rvals = [gc(x) - poly.evaluate(x) for x in grid]
            grid_max = max(abs(r) for r in rvals)
            scale = max(abs(gc(x)) for x in grid)
            zero_floor = mp.mpf(10) ** (-p.decimal_digits) * max(1, scale)
            if grid_max <= zero_floor:
                lower = min(abs(h), grid_max)
                return MinimaxResult(
                    polynomial=poly, delta_hat=+grid_max, nodes=tuple(nodes),
                    iterations=iteration, levelled_error_history=tuple(history),
                    lower_bound=+lower, upper_bound=+grid_max,
                )
            ex = _exchange_core(gc, poly, grid, rvals, p, current_nodes=nodes)
            lower = min(abs(r) for r in ex.residuals)
            upper = max(max(abs(r) for r in ex.residuals), grid_max)
            nodes = ex.nodes
            if (upper - lower) / upper <= tol_v:
                return MinimaxResult(
                    polynomial=poly, delta_hat=+upper, nodes=tuple(nodes),
                    iterations=iteration, levelled_error_history=tuple(history),
                    lower_bound=+lower, upper_bound=+upper,
                )
        raise ConvergenceError(
            f"no convergence to tol={tol} within {max_iterations} iterations",
            history=history,
        )


def verify_equioscillation(result: MinimaxResult, g, rel_tol="1e-6",
                           p: Precision = Precision()) -> EquioscillationReport:
    """Check the k+2 node residuals: alternating signs, magnitudes level.

    Passing this check is the gate for trusting ``delta_hat`` downstream.
    A result with delta_hat at the arithmetic floor passes by the zero rule
    (exactly representable g has no meaningful residual signs).
    """
    with working(p):
        poly = result.polynomial
        nodes = result.nodes
        gc = g if isinstance(g, CachedFunction) else CachedFunction(g)
        residuals = [gc(t) - poly.evaluate(t) for t in nodes]
        scale = max([abs(gc(t)) for t in nodes] + [mp.mpf(1)])
        floor = mp.mpf(10) ** (-(p.decimal_digits - 10)) * scale
        if result.delta_hat <= floor:
            bad = [i for i, r in enumerate(residuals) if abs(r) > floor]
            if not bad:
                return EquioscillationReport(
                    passed=True, residuals=tuple(residuals), spread=None,
                    delta_hat=result.delta_hat, failure_index=None,
                    message="exact representation: all residuals at the arithmetic floor",
                )
            return EquioscillationReport(
                passed=False, residuals=tuple(residuals), spread=None,
                delta_hat=result.delta_hat, failure_index=bad[0],
                message=f"delta_hat at floor but residual {bad[0]} above it",
            )
        for i in range(1, len(residuals)):
            if residuals[i] == 0 or residuals[i - 1] == 0 or \
                    (residuals[i] > 0) == (residuals[i - 1] > 0):
                return EquioscillationReport(
                    passed=False, residuals=tuple(residuals), spread=None,
                    delta_hat=result.delta_hat, failure_index=i,
                    message=f"residual signs do not alternate at node {i}",
                )
        mags = [abs(r) for r in residuals]
        spread = (max(mags) - min(mags)) / result.delta_hat
        if spread > to_mpf(rel_tol):
            worst = min(range(len(mags)), key=lambda i: mags[i])
            return EquioscillationReport(
                passed=False, residuals=tuple(residuals), spread=+spread,
                delta_hat=result.delta_hat, failure_index=worst,
                message=f"residual spread {mpmath.nstr(spread, 6)} exceeds tolerance",
            )
        return EquioscillationReport(
            passed=True, residuals=tuple(residuals), spread=+spread,
            delta_hat=result.delta_hat, failure_index=None,
            message="equioscillation verified",
        )
