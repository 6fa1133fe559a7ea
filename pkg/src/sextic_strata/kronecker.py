"""Kronecker modules and exact semistability in the sense of King.

A Kronecker module here is an n x m matrix M of linear forms in X, Y, Z,
i.e. a linear map k^m -> k^n (x) V with dim V = 3.  For a nonzero source
subspace S with minimal target span T (the span of all coefficient
vectors of M applied to S), the slope test reads

    m * dim T >= n * dim S      for every S    <=>   M is semistable,

with equality allowed (strict inequality everywhere is stability).  Over
a small prime field the full subspace lattice is enumerable, giving an
exact decision with an explicit destabilizing witness; over large fields
a randomized search returns either a verified witness or
"unknown-leaning-semistable" with the budget recorded.  A semistable
verdict on a reduction mod p certifies semistability over Q (instability
is Zariski-closed and defined over the prime field); instability over Q
always requires an explicit witness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Tuple

from .errors import BudgetExceededError
from .fields import Field, PrimeField
from .forms import Form
from .linalg import ScalarMatrix
from .polymatrix import PolyMatrix

EXACT_LATTICE_BUDGET = 10_000_000


# ---------------------------------------------------------------------------
# module and witnesses
# ---------------------------------------------------------------------------


class KroneckerModule:
    """n x m matrix of linear forms with semistability machinery."""

    __slots__ = ("field", "n", "m", "matrix", "_slices")

    def __init__(self, matrix: PolyMatrix):
        for i in range(matrix.nrows):
            for j in range(matrix.ncols):
                f = matrix.entry(i, j)
                if not f.is_zero and f.degree != 1:
                    raise ValueError(f"entry ({i},{j}) has degree {f.degree}, want linear")
        object.__setattr__(self, "field", matrix.field)
        object.__setattr__(self, "n", matrix.nrows)
        object.__setattr__(self, "m", matrix.ncols)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "_slices", None)

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("KroneckerModule is immutable")

    def coefficient_slices(self) -> Tuple[ScalarMatrix, ScalarMatrix, ScalarMatrix]:
        """Scalar matrices (A, B, C) with M = X*A + Y*B + Z*C."""
        if self._slices is not None:
            return self._slices
        F = self.field
        slices = []
        for var in range(3):
            exp = tuple(1 if k == var else 0 for k in range(3))
            S = ScalarMatrix.zeros(F, self.n, self.m)
            for i in range(self.n):
                for j in range(self.m):
                    c = self.matrix.entry(i, j).coeffs.get(exp)
                    if c is not None:
                        S._set(i, j, c)
            slices.append(S)
        object.__setattr__(self, "_slices", tuple(slices))
        return self._slices

    def minimal_span(self, S_rows: ScalarMatrix) -> Tuple[int, List[list]]:
        """Minimal T with M*S inside T (x) V, for S spanned by the given rows.

        Returns (dim T, reduced basis rows of T).
        """
        A, B, C = self.coefficient_slices()
        St = S_rows.transpose()
        images = A.matmul(St).hstack(B.matmul(St)).hstack(C.matmul(St))
        R, pivots = images.transpose().rref()
        basis = [R.row(i) for i in range(len(pivots))]
        return len(pivots), basis


@dataclass(frozen=True)
class Witness:
    """A destabilizing pair of subspaces: S in the source, T its span."""

    S_basis: Tuple[Tuple[object, ...], ...]
    T_basis: Tuple[Tuple[object, ...], ...]
    dim_S: int
    dim_T: int
    slope_deficit: int  # n*dim_S - m*dim_T > 0

    def report(self, field: Field) -> dict:
        enc = field.encode_coeff
        return {
            "dimS": self.dim_S,
            "dimT": self.dim_T,
            "S_basis": [[enc(x) for x in row] for row in self.S_basis],
            "T_basis": [[enc(x) for x in row] for row in self.T_basis],
            "slope_deficit": self.slope_deficit,
        }


@dataclass(frozen=True)
class SemistabilityResult:
    verdict: str  # "semistable" | "unstable" | "unknown"
    mode: str
    witness: Optional[Witness] = None
    checked: int = 0
    budget: int = 0

    @property
    def is_semistable_like(self) -> bool:
        """True for a definite semistable verdict or budget-exhausted unknown."""
        return self.verdict in ("semistable", "unknown")


def _make_witness(K: KroneckerModule, S_rows: ScalarMatrix) -> Optional[Witness]:
    dim_S = S_rows.nrows
    dim_T, T_basis = K.minimal_span(S_rows)
    deficit = K.n * dim_S - K.m * dim_T
    if deficit <= 0:
        return None
    return Witness(
        S_basis=tuple(tuple(S_rows.row(i)) for i in range(dim_S)),
        T_basis=tuple(tuple(r) for r in T_basis),
        dim_S=dim_S,
        dim_T=dim_T,
        slope_deficit=deficit,
    )


def verify_witness(K: KroneckerModule, w: Witness) -> bool:
    """Independent re-check of a witness against the slope definition.

    Uses only rank computations: S and T must be independent families,
    every coefficient vector of M applied to S must lie in span(T), and
    the slope count m*dimT >= n*dimS must genuinely fail.
    """
    F = K.field
    S = ScalarMatrix(F, [list(r) for r in w.S_basis])
    if S.rank() != w.dim_S or w.dim_S == 0:
        return False
    if w.dim_T:
        T = ScalarMatrix(F, [list(r) for r in w.T_basis])
        if T.rank() != w.dim_T:
            return False
    A, B, C = K.coefficient_slices()
    St = S.transpose()
    images = A.matmul(St).hstack(B.matmul(St)).hstack(C.matmul(St)).transpose()
    if w.dim_T:
        T = ScalarMatrix(F, [list(r) for r in w.T_basis])
        if T.vstack(images).rank() != w.dim_T:
            return False
    elif not images.is_zero():
        return False
    return K.n * w.dim_S - K.m * w.dim_T == w.slope_deficit and w.slope_deficit > 0


# ---------------------------------------------------------------------------
# subspace enumeration over F_p
# ---------------------------------------------------------------------------


def gaussian_binomial(m: int, a: int, p: int) -> int:
    """Number of a-dimensional subspaces of F_p^m."""
    if a < 0 or a > m:
        return 0
    num = den = 1
    for i in range(a):
        num *= p ** (m - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def subspace_lattice_size(m: int, p: int) -> int:
    return sum(gaussian_binomial(m, a, p) for a in range(1, m + 1))


def echelon_bases(field: PrimeField, m: int, a: int) -> Iterator[ScalarMatrix]:
    """All a-dimensional subspaces of F_p^m as reduced echelon bases.

    Enumeration order is frozen: pivot patterns in lexicographic order,
    then free entries in row-major lexicographic order of their values.
    """
    p = field.p
    for pivots in itertools.combinations(range(m), a):
        pivot_set = set(pivots)
        free_slots = [
            (i, j)
            for i in range(a)
            for j in range(pivots[i] + 1, m)
            if j not in pivot_set
        ]
        for values in itertools.product(range(p), repeat=len(free_slots)):
            rows = [[0] * m for _ in range(a)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, j), v in zip(free_slots, values):
                rows[i][j] = v
            yield ScalarMatrix(field, rows)


# ---------------------------------------------------------------------------
# semistability
# ---------------------------------------------------------------------------


def is_semistable(
    K: KroneckerModule,
    mode: str = "exact_smallfield",
    budget: int = EXACT_LATTICE_BUDGET,
    trials: int = 200,
    rng=None,
) -> SemistabilityResult:
    """Decide semistability of a Kronecker module.

    exact_smallfield: exhaustive enumeration of the source subspace
    lattice over F_p, by increasing dimension and lexicographic pivot
    pattern; the first violating subspace (deterministic) becomes the
    witness.  Raises BudgetExceededError when the lattice exceeds the
    budget.

    randomized: two exact rank checks (dimension-1 kernel witnesses and
    the full-space span count) followed by random subspace trials; ends in
    "unstable" with a witness or "unknown" with the budget recorded.
    """
    if mode == "exact_smallfield":
        if K.field.kind != "prime":
            raise ValueError("exact_smallfield needs a prime field")
        size = subspace_lattice_size(K.m, K.field.p)
        if size > budget:
            raise BudgetExceededError(
                f"subspace lattice has {size} elements > budget {budget}"
            )
        checked = 0
        for a in range(1, K.m + 1):
            for S in echelon_bases(K.field, K.m, a):
                checked += 1
                w = _make_witness(K, S)
                if w is not None:
                    return SemistabilityResult("unstable", mode, w, checked, size)
        return SemistabilityResult("semistable", mode, None, checked, size)

    if mode == "randomized":
        return _randomized_search(K, trials, rng)

    raise ValueError(f"unknown mode {mode!r}")


def _randomized_search(K: KroneckerModule, trials: int, rng) -> SemistabilityResult:
    F = K.field
    A, B, C = K.coefficient_slices()
    checked = 0

    # Exact check 1: source vectors killed outright (dim T = 0 witnesses)
    # are the kernel of the stacked coefficient matrix.
    stacked = A.vstack(B).vstack(C)
    for v in stacked.kernel_basis():
        S = ScalarMatrix(F, [v])
        w = _make_witness(K, S)
        if w is not None:
            return SemistabilityResult("unstable", "randomized", w, checked + 1, trials)
    checked += 1

    # Exact check 2: the full source space against the total span.
    full = ScalarMatrix.identity(F, K.m)
    w = _make_witness(K, full)
    checked += 1
    if w is not None:
        return SemistabilityResult("unstable", "randomized", w, checked, trials)

    if rng is None:
        from .rng import SplitMix64

        rng = SplitMix64(0x5EED)
    if F.kind != "prime":
        # Random rational subspaces drawn with small integer entries.
        def draw():
            return Fraction(rng.next_below(19) - 9)
    else:
        def draw():
            return rng.next_below(F.p)

    for _ in range(trials):
        a = 1 + rng.next_below(K.m)
        rows = [[draw() for _ in range(K.m)] for _ in range(a)]
        S = ScalarMatrix(F, rows)
        R, pivots = S.rref()
        if len(pivots) != a:
            continue
        checked += 1
        w = _make_witness(K, S)
        if w is not None:
            return SemistabilityResult("unstable", "randomized", w, checked, trials)
    return SemistabilityResult("unknown", "randomized", None, checked, trials)


def transform(K: KroneckerModule, g: ScalarMatrix, h: ScalarMatrix) -> KroneckerModule:
    """The module h * M * g for invertible scalar matrices; same verdict."""
    F = K.field
    rows = []
    for i in range(K.n):
        row = []
        for j in range(K.m):
            acc = Form.zero(F, 1)
            for r in range(K.n):
                for c in range(K.m):
                    coeff = F.mul(h.entry(i, r), g.entry(c, j))
                    if not F.is_zero(coeff):
                        acc = acc + K.matrix.entry(r, c).scale(coeff)
            row.append(acc)
        rows.append(row)
    return KroneckerModule(PolyMatrix(F, rows))


# ---------------------------------------------------------------------------
# moduli dimensions and polarizations
# ---------------------------------------------------------------------------


def moduli_dimension(q: int, m: int, n: int) -> int:
    """Dimension q*m*n - m^2 - n^2 + 1 of the Kronecker moduli space N(q, m, n)."""
    if min(q, m, n) < 1:
        raise ValueError("q, m, n must be >= 1")
    return q * m * n - m * m - n * n + 1


@dataclass(frozen=True)
class Polarization:
    """Positive weights (lambda_1, lambda_2, mu_1) for the 2 x 3 decorated setup."""

    lam1: Fraction
    lam2: Fraction
    mu1: Fraction


def polarization_valid_42(lam1, lam2, mu1) -> bool:
    """The six strict weight inequalities for the 2 x (1+2) morphism space.

    With lambda_3 = lambda_2 and mu_2 = mu_1, properness of every zero
    submatrix pattern under the one-parameter subgroup test reduces to:

        mu1 + 2*lam2 > 1,  2*mu1 + lam2 > 1,  mu1 + lam1 + lam2 > 1,
        2*mu1 + lam1 > 1,  mu1 + lam1 < 1,    mu1 + lam2 < 1,

    together with positivity of all weights.  Exact rational comparisons.
    """
    lam1, lam2, mu1 = Fraction(lam1), Fraction(lam2), Fraction(mu1)
    if lam1 <= 0 or lam2 <= 0 or mu1 <= 0:
        return False
    return (
        mu1 + 2 * lam2 > 1
        and 2 * mu1 + lam2 > 1
        and mu1 + lam1 + lam2 > 1
        and 2 * mu1 + lam1 > 1
        and mu1 + lam1 < 1
        and mu1 + lam2 < 1
    )


def refined_conditions_42(lam1, lam2, mu1) -> bool:
    """Sufficient conditions for a projective good quotient of the 2 x 3 setup.

    alpha_1 = lam1 > 0, alpha_2 = lam2 - 3*lam1 > 0, and the two bounds
    lam2 >= (3/2) * c and lam2 >= 3 * c * mu1 with the quotient constant
    c = 1/5 (quoted from the non-reductive GIT construction; hard-coded,
    not derived here).
    """
    lam1, lam2, mu1 = Fraction(lam1), Fraction(lam2), Fraction(mu1)
    c = Fraction(1, 5)
    a21 = 3  # dim Hom(O(-3), O(-2))
    alpha1 = lam1
    alpha2 = lam2 - a21 * lam1
    return (
        alpha1 > 0
        and alpha2 > 0
        and lam2 >= Fraction(a21, 2) * c
        and lam2 >= c * a21 * mu1
    )


def mu2_valid_22(mu2) -> bool:
    """Open stratum polarization constraint 0 < mu_2 < 1/5."""
    mu2 = Fraction(mu2)
    return 0 < mu2 < Fraction(1, 5)


@dataclass(frozen=True)
class WindowReport:
    """Accepted grid points of the polarization sweeps at a fixed denominator."""

    grid: int
    six_accepted: Tuple[int, ...]       # numerators k with lam2 = k/grid
    refined_accepted: Tuple[int, ...]
    mu2_accepted: Tuple[int, ...]

    def as_dict(self) -> dict:
        def endpoints(ks):
            if not ks:
                return None
            return [f"{ks[0]}/{self.grid}", f"{ks[-1]}/{self.grid}"]

        return {
            "grid": self.grid,
            "six_inequalities": {
                "accepted_numerators": list(self.six_accepted),
                "endpoints": endpoints(self.six_accepted),
            },
            "refined": {
                "accepted_numerators": list(self.refined_accepted),
                "endpoints": endpoints(self.refined_accepted),
            },
            "mu2": {
                "accepted_numerators": list(self.mu2_accepted),
                "endpoints": endpoints(self.mu2_accepted),
            },
        }


def polarization_window_42(grid: int) -> WindowReport:
    """Sweep lam2 = k/grid over (0, 1/2] under lam1 = 1 - 2*lam2, mu1 = 1/2.

    Reports the accepted sets for the six inequalities (the open window
    (1/4, 1/2)) and for the refined system (the open window (3/7, 1/2)),
    plus the sweep of mu_2 = k/grid over (0, 1) against 0 < mu_2 < 1/5.
    """
    if grid < 100:
        raise ValueError("grid denominator must be >= 100")
    mu1 = Fraction(1, 2)
    six = []
    refined = []
    for k in range(1, grid // 2 + 1):
        lam2 = Fraction(k, grid)
        lam1 = 1 - 2 * lam2
        if polarization_valid_42(lam1, lam2, mu1):
            six.append(k)
        if lam1 > 0 and refined_conditions_42(lam1, lam2, mu1):
            refined.append(k)
    mu2 = [k for k in range(1, grid) if mu2_valid_22(Fraction(k, grid))]
    return WindowReport(grid, tuple(six), tuple(refined), tuple(mu2))
