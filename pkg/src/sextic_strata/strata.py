"""Stratification of degree-6, Euler-characteristic-1 plane sheaves.

The moduli space M(6,1) of semistable one-dimensional plane sheaves with
Hilbert polynomial 6m+1 decomposes into six strata, each pinned down by
the cohomological quadruple

    (h0 F(-1), h1 F, h0(F x Omega^1(1)), h1 F(1))

and each realized by one frozen resolution shape with algebraic side
conditions on the matrix:

    X0  (0,0,0,0)  5O(-2) -> 4O(-1)+O          phi_11 semistable Kronecker
    X1  (0,1,0,0)  O(-3)+2O(-2) -> O(-1)+2O    none of four forbidden patterns
    X2  (0,1,1,0)  O(-3)+2O(-2)+O(-1) -> 2O(-1)+2O   three pencil conditions
    X3  (0,2,2,0)  2O(-3)+2O(-1) -> O(-2)+3O   independent entries / minors
    X4  (1,2,3,0)  2O(-3)+O(-2) -> O(-2)+O(-1)+O(1)  two normal forms
    X5  (1,3,4,1)  O(-4)+O(-1) -> O+O(1)       l != 0 and l does not divide q

The classifier is purely cohomological: it maps the profile of any valid
injective presentation to the unique row above and rejects everything
else.  The matrix side conditions are validators used by samplers and
audits; classification never requires normal position.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Set, Tuple

from .errors import (
    AmbiguousCaseError,
    InvalidPresentationError,
    NotInjectiveError,
    NotSquareError,
    ProfileNotInTable,
    WrongShapeError,
)
from .forms import Form, dim_forms, forms_rank, divides, common_factor, variables
from .kronecker import KroneckerModule, is_semistable, moduli_dimension, subspace_lattice_size
from .linalg import ScalarMatrix
from .polymatrix import maximal_minors
from .presentation import (
    Presentation,
    fitting_determinant,
    hilbert_polynomial,
    profile,
    validate,
    validate_grid_only,
)


class StratumLabel(str, Enum):
    X0 = "X0"
    X1 = "X1"
    X2 = "X2"
    X3 = "X3"
    X4 = "X4"
    X5 = "X5"


class PatternId(str, Enum):
    """The four forbidden zero patterns for the X1 shape."""

    P1 = "P1"  # zeros at (0,1), (0,2)
    P2 = "P2"  # zeros at (0,2), (1,2)
    P3 = "P3"  # zeros at (2,1), (2,2)
    P4 = "P4"  # zeros at (0,0), (0,1)


# Frozen twist shapes (source, target), order significant.
SHAPES: Dict[StratumLabel, Tuple[Tuple[int, ...], Tuple[int, ...]]] = {
    StratumLabel.X0: ((-2, -2, -2, -2, -2), (-1, -1, -1, -1, 0)),
    StratumLabel.X1: ((-3, -2, -2), (-1, 0, 0)),
    StratumLabel.X2: ((-3, -2, -2, -1), (-1, -1, 0, 0)),
    StratumLabel.X3: ((-3, -3, -1, -1), (-2, 0, 0, 0)),
    StratumLabel.X4: ((-3, -3, -2), (-2, -1, 1)),
    StratumLabel.X5: ((-4, -1), (0, 1)),
}

PROFILE_TO_LABEL: Dict[Tuple[int, int, int], StratumLabel] = {
    (0, 0, 0): StratumLabel.X0,
    (0, 1, 0): StratumLabel.X1,
    (0, 1, 1): StratumLabel.X2,
    (0, 2, 2): StratumLabel.X3,
    (1, 2, 3): StratumLabel.X4,
    (1, 3, 4): StratumLabel.X5,
}

EXPECTED_PROFILES: Dict[StratumLabel, Tuple[int, int, int, int]] = {
    StratumLabel.X0: (0, 0, 0, 0),
    StratumLabel.X1: (0, 1, 0, 0),
    StratumLabel.X2: (0, 1, 1, 0),
    StratumLabel.X3: (0, 2, 2, 0),
    StratumLabel.X4: (1, 2, 3, 0),
    StratumLabel.X5: (1, 3, 4, 1),
}


def _require_shape(P: Presentation, label: StratumLabel) -> None:
    src, tgt = SHAPES[label]
    if P.source != src or P.target != tgt:
        raise WrongShapeError(
            f"{label.value} needs twists {src} -> {tgt}, got {P.source} -> {P.target}"
        )


# ---------------------------------------------------------------------------
# classifier
# ---------------------------------------------------------------------------


def classify(P: Presentation) -> StratumLabel:
    """Map the cohomological profile of a valid injective presentation to its stratum.

    Raises ProfileNotInTable when the quadruple matches no row; that error
    signals the cokernel is not a semistable sheaf with Hilbert polynomial
    6m+1, or an arithmetic bug, and carries the offending profile.
    """
    grid = validate_grid_only(P)
    if grid:
        raise InvalidPresentationError(grid)
    if not P.is_square:
        raise NotSquareError("classification needs a square presentation")
    if fitting_determinant(P).is_zero:
        raise NotInjectiveError("matrix has det = 0; the cokernel is not one-dimensional")
    pr = profile(P)
    label = PROFILE_TO_LABEL.get((pr.a, pr.b, pr.c))
    if label is None:
        raise ProfileNotInTable(pr.as_tuple())
    if label is StratumLabel.X5:
        if pr.e <= 0:
            raise ProfileNotInTable(pr.as_tuple())
    elif pr.e != 0:
        raise ProfileNotInTable(pr.as_tuple())
    return label


def classification_report(P: Presentation) -> dict:
    """Structured classification result including shape-validator findings."""
    label = classify(P)
    pr = profile(P)
    hp = hilbert_polynomial(P)
    det = fitting_determinant(P)
    return {
        "schema_version": 1,
        "kind": "classification",
        "label": label.value,
        "profile": pr.as_list(),
        "hilbert": hp.as_list(),
        "det_degree": det.degree,
        "violations": validate_shape(P, label),
    }


# ---------------------------------------------------------------------------
# per-stratum matrix conditions
# ---------------------------------------------------------------------------


def x0_condition(P: Presentation, trials: int = 120, rng=None) -> bool:
    """Semistability of the 4 x 5 linear block as a Kronecker module.

    Exact lattice enumeration when the field is small enough, otherwise
    the randomized witness search; a verdict of "unknown" after the trial
    budget counts as semistable-leaning acceptance (instability always
    comes with a verified witness, never by default).
    """
    _require_shape(P, StratumLabel.X0)
    block = P.matrix.submatrix(range(4), range(5))
    K = KroneckerModule(block)
    field = P.field
    if field.kind == "prime" and subspace_lattice_size(5, field.p) <= 200_000:
        res = is_semistable(K, mode="exact_smallfield")
    else:
        res = is_semistable(K, mode="randomized", trials=trials, rng=rng)
    return res.verdict != "unstable"


def x1_patterns(P: Presentation) -> Set[PatternId]:
    """Which forbidden zero patterns the X1-shaped matrix is equivalent to.

    The group acting is Aut(O(-3)+2O(-2)) x Aut(O(-1)+2O).  Working out
    which entries of h*phi*g can be cleared yields linear-algebra
    characterizations (cross-validated against the exhaustive orbit
    oracle over F_2):

      P1  <=>  l1 = l2 = 0
      P2  <=>  some (a,b) != 0 kills a*l1 + b*l2 and makes the pair
               (a*q11 + b*q12, a*q21 + b*q22) linearly dependent
      P3  <=>  alpha*(q11,q12) + beta*(q21,q22) + v*(l1,l2) = (0,0) has a
               solution with scalars (alpha,beta) != 0 and v a one-form
      P4  <=>  l1, l2 dependent and q lies in <l1, l2> * V*

    An empty set means the matrix is admissible for X1.
    """
    _require_shape(P, StratumLabel.X1)
    M = P.matrix
    q = M.entry(0, 0)
    l1, l2 = M.entry(0, 1), M.entry(0, 2)
    q11, q12 = M.entry(1, 1), M.entry(1, 2)
    q21, q22 = M.entry(2, 1), M.entry(2, 2)
    field = P.field
    found: Set[PatternId] = set()

    if l1.is_zero and l2.is_zero:
        found.add(PatternId.P1)

    if _pencil_degenerates(field, l1, l2, q11, q12, q21, q22):
        found.add(PatternId.P2)

    if _row_clearing_exists(field, l1, l2, q11, q12, q21, q22):
        found.add(PatternId.P3)

    if forms_rank([l1, l2]) <= 1 and _in_linear_ideal_slice(field, q, l1, l2):
        found.add(PatternId.P4)

    return found


def _coeff_col(f: Form, degree: int) -> List:
    if f.is_zero:
        return Form.zero(f.field, degree).coefficient_vector()
    return f.coefficient_vector()


def _pencil_degenerates(field, l1, l2, q11, q12, q21, q22) -> bool:
    """P2 test: search the kernel of (a,b) -> a*l1 + b*l2 for a degenerate pair."""
    kmat = ScalarMatrix(
        field,
        [list(pair) for pair in zip(_coeff_col(l1, 1), _coeff_col(l2, 1))],
    )
    kernel = kmat.kernel_basis()
    if not kernel:
        return False

    def dependent_at(a, b) -> bool:
        Q1 = q11.scale(a) + q12.scale(b)
        Q2 = q21.scale(a) + q22.scale(b)
        return forms_rank([Q1, Q2]) <= 1

    if len(kernel) == 1:
        a, b = kernel[0]
        return dependent_at(a, b)

    # Kernel is the whole plane (l1 = l2 = 0): search P^1 over the field.
    if field.kind == "prime":
        p = field.p
        for t in range(p):
            if dependent_at(field.one(), field.from_int(t)):
                return True
        return dependent_at(field.zero(), field.one())
    return _rational_pencil_degenerates(field, q11, q12, q21, q22, dependent_at)


def _rational_pencil_degenerates(field, q11, q12, q21, q22, dependent_at) -> bool:
    """Rational-point search for rank-one members of a 2 x 2 pencil of quadrics.

    The dependency locus is cut out by binary quadratics (the 2 x 2 minors
    of the stacked coefficient rows); candidates are the rational roots of
    the first nonzero minor, each verified directly.
    """
    u1, u2 = _coeff_col(q11, 2), _coeff_col(q12, 2)
    v1, v2 = _coeff_col(q21, 2), _coeff_col(q22, 2)
    n = len(u1)
    quadratics = []
    for i in range(n):
        for j in range(i + 1, n):
            alpha = u1[i] * v1[j] - u1[j] * v1[i]
            beta = u1[i] * v2[j] + u2[i] * v1[j] - u1[j] * v2[i] - u2[j] * v1[i]
            gamma = u2[i] * v2[j] - u2[j] * v2[i]
            if alpha or beta or gamma:
                quadratics.append((alpha, beta, gamma))
    if not quadratics:
        return dependent_at(Fraction(1), Fraction(0))
    alpha, beta, gamma = quadratics[0]
    candidates = []
    if alpha == 0:
        candidates.append((Fraction(1), Fraction(0)))
        if beta != 0:
            candidates.append((-gamma / beta, Fraction(1)))
    else:
        disc = beta * beta - 4 * alpha * gamma
        root = _rational_sqrt(disc)
        if root is not None:
            candidates.append(((-beta + root) / (2 * alpha), Fraction(1)))
            candidates.append(((-beta - root) / (2 * alpha), Fraction(1)))
    return any(dependent_at(a, b) for a, b in candidates)


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    import math

    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def _row_clearing_exists(field, l1, l2, q11, q12, q21, q22) -> bool:
    """P3 test: solutions of alpha*(q11,q12) + beta*(q21,q22) + v*(l1,l2) = 0.

    Columns: the two stacked quadric pairs, then v against X, Y, Z.  A
    solution with (alpha, beta) != 0 exists iff the kernel is strictly
    larger than the kernel of the v-only columns.
    """
    X, Y, Z = variables(field)
    cols = [
        _coeff_col(q11, 2) + _coeff_col(q12, 2),
        _coeff_col(q21, 2) + _coeff_col(q22, 2),
        _coeff_col(X * l1, 2) + _coeff_col(X * l2, 2),
        _coeff_col(Y * l1, 2) + _coeff_col(Y * l2, 2),
        _coeff_col(Z * l1, 2) + _coeff_col(Z * l2, 2),
    ]
    M = ScalarMatrix(field, [list(r) for r in zip(*cols)])
    Mv = ScalarMatrix(field, [list(r) for r in zip(*cols[2:])])
    return M.rank() < Mv.rank() + 2


def _in_linear_ideal_slice(field, q, l1, l2) -> bool:
    """Whether q lies in the degree-2 slice of the ideal (l1, l2)."""
    X, Y, Z = variables(field)
    cols = [
        _coeff_col(v * l, 2)
        for l in (l1, l2)
        for v in (X, Y, Z)
    ]
    M = ScalarMatrix(field, [list(r) for r in zip(*cols)])
    aug = M.hstack(ScalarMatrix(field, [[c] for c in _coeff_col(q, 2)]))
    return aug.rank() == M.rank()


def x2_conditions(P: Presentation) -> List[str]:
    """The three pencil conditions of the X2 normal form.

    (i) the last-column one-forms are independent; (ii) the linear 2x2
    block has nonzero determinant delta; (iii) the two mixed 2x2 minors
    are independent modulo delta * V*, checked as a rank-5 condition on
    the stacked cubics {m1, m2, delta*X, delta*Y, delta*Z}.
    """
    _require_shape(P, StratumLabel.X2)
    M = P.matrix
    violations = []
    for cell in ((0, 3), (1, 3)):
        if not M.entry(*cell).is_zero:
            violations.append(f"not in normal position: expected zero block at {cell}")
    q1, q2 = M.entry(0, 0), M.entry(1, 0)
    l11, l12 = M.entry(0, 1), M.entry(0, 2)
    l21, l22 = M.entry(1, 1), M.entry(1, 2)
    l1, l2 = M.entry(2, 3), M.entry(3, 3)
    if forms_rank([l1, l2]) != 2:
        violations.append("l_1, l_2 dependent")
    delta = l11 * l22 - l12 * l21
    if delta.is_zero:
        violations.append("linear block determinant vanishes")
    m1 = q1 * l21 - q2 * l11
    m2 = q1 * l22 - q2 * l12
    X, Y, Z = variables(P.field)
    if forms_rank([m1, m2, delta * X, delta * Y, delta * Z]) != 5:
        violations.append("minors dependent mod (delta)V*")
    return violations


def x3_conditions(P: Presentation) -> List[str]:
    """Independent linear entries up top, independent maximal minors below."""
    _require_shape(P, StratumLabel.X3)
    M = P.matrix
    violations = []
    if forms_rank([M.entry(0, 0), M.entry(0, 1)]) != 2:
        violations.append("phi_11 entries dependent")
    block = M.submatrix(range(1, 4), range(2, 4))
    if forms_rank(maximal_minors(block)) != 3:
        violations.append("phi_22 maximal minors dependent")
    return violations


def x4_case(P: Presentation) -> str:
    """Dispatch between the two X4 normal forms.

    Case "i" when cell (0,2) is a nonzero constant, case "ii" when the
    first row is (l1, l2, 0).  A nonzero constant together with nonzero
    linear entries in row 0 is not in either normal form.
    """
    _require_shape(P, StratumLabel.X4)
    M = P.matrix
    c = M.entry(0, 2)
    if not c.is_zero:
        if not (M.entry(0, 0).is_zero and M.entry(0, 1).is_zero):
            raise AmbiguousCaseError(
                "cell (0,2) nonzero but row 0 carries linear entries; not in normal position"
            )
        return "i"
    return "ii"


def x4_conditions(P: Presentation) -> List[str]:
    """Conditions of the two X4 normal forms.

    Case i: the two quadrics have no common factor (their syzygies with
    degree-1 coefficients vanish).  Case ii: independent one-forms up
    top, l != 0, and no linear forms u, v1, v2 solve
    (q1, q2) = u*(l1, l2) + l*(v1, v2).
    """
    case = x4_case(P)
    M = P.matrix
    violations = []
    if case == "i":
        for cell in ((1, 2), (2, 2)):
            if not M.entry(*cell).is_zero:
                violations.append(f"not in normal position: expected zero at {cell}")
        q1, q2 = M.entry(1, 0), M.entry(1, 1)
        if q1.is_zero and q2.is_zero:
            violations.append("q_1 = q_2 = 0")
        elif common_factor(q1, q2):
            violations.append("q_1, q_2 have a common factor")
        return violations

    l1, l2 = M.entry(0, 0), M.entry(0, 1)
    q1, q2 = M.entry(1, 0), M.entry(1, 1)
    l = M.entry(1, 2)
    if forms_rank([l1, l2]) != 2:
        violations.append("l_1, l_2 dependent")
    if l.is_zero:
        violations.append("l = 0")
    if not violations and _x4_syzygy_solvable(P.field, l1, l2, l, q1, q2):
        violations.append("linear forms u, v_1, v_2 solve (q_1, q_2) = u(l_1, l_2) + l(v_1, v_2)")
    return violations


def _x4_syzygy_solvable(field, l1, l2, l, q1, q2) -> bool:
    # 12 equations (two stacked quadrics), 9 unknowns (coefficients of u, v1, v2).
    X, Y, Z = variables(field)
    zero2 = Form.zero(field, 2)
    cols = []
    for v in (X, Y, Z):
        cols.append(_coeff_col(v * l1, 2) + _coeff_col(v * l2, 2))
    for v in (X, Y, Z):
        cols.append(_coeff_col(v * l, 2) + _coeff_col(zero2, 2))
    for v in (X, Y, Z):
        cols.append(_coeff_col(zero2, 2) + _coeff_col(v * l, 2))
    B = ScalarMatrix(field, [list(r) for r in zip(*cols)])
    rhs = _coeff_col(q1, 2) + _coeff_col(q2, 2)
    aug = B.hstack(ScalarMatrix(field, [[c] for c in rhs]))
    return aug.rank() == B.rank()


def x5_conditions(P: Presentation) -> List[str]:
    """l nonzero and not dividing q."""
    _require_shape(P, StratumLabel.X5)
    l = P.matrix.entry(0, 1)
    q = P.matrix.entry(1, 1)
    violations = []
    if l.is_zero:
        violations.append("l = 0")
    elif divides(l, q):
        violations.append("l divides q")
    return violations


def validate_shape(P: Presentation, label: StratumLabel) -> List[str]:
    """Twist shape, forced blocks and the stratum's algebraic conditions.

    Returns all violations as data; an empty list certifies the
    presentation as a normal-position member of the stratum's family.
    """
    src, tgt = SHAPES[label]
    if P.source != src or P.target != tgt:
        return [f"wrong twist shape: expected {src} -> {tgt}, got {P.source} -> {P.target}"]
    violations = validate(P)
    if violations:
        return violations
    if label is StratumLabel.X0:
        if not x0_condition(P):
            violations.append("phi_11 is not semistable as a Kronecker module")
    elif label is StratumLabel.X1:
        pats = x1_patterns(P)
        for pat in sorted(p.value for p in pats):
            violations.append(f"matrix is equivalent to forbidden pattern {pat}")
    elif label is StratumLabel.X2:
        violations.extend(x2_conditions(P))
    elif label is StratumLabel.X3:
        violations.extend(x3_conditions(P))
    elif label is StratumLabel.X4:
        try:
            violations.extend(x4_conditions(P))
        except AmbiguousCaseError as exc:
            violations.append(str(exc))
    elif label is StratumLabel.X5:
        violations.extend(x5_conditions(P))
    return violations


# ---------------------------------------------------------------------------
# dimension arithmetic
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StratumDimensions:
    label: StratumLabel
    codim: int
    dim: int
    base_dim: Optional[int]
    fibre_dim: Optional[int]
    description: str

    def as_dict(self) -> dict:
        return {
            "label": self.label.value,
            "codim": self.codim,
            "dim": self.dim,
            "base_dim": self.base_dim,
            "fibre_dim": self.fibre_dim,
            "description": self.description,
        }


AMBIENT_DIM = 6 * 6 + 1  # multiplicity^2 + 1 for these moduli of plane sheaves


def stratum_dimensions() -> List[StratumDimensions]:
    """The fibration arithmetic of all six strata, with exact summands.

    Kronecker base dimensions come from moduli_dimension; the Grassmannian
    and Hilbert-flag contributions are computed from first principles;
    projectivized fibre dimensions of the bundle constructions are fixed
    integers.  Every row satisfies dim + codim = 37 and, where a fibration
    is known, base + fibre = dim.
    """
    rows = []

    base0 = moduli_dimension(3, 5, 4)  # 20
    fibre0 = 5 * dim_forms(2) - 4 * dim_forms(1) - 1  # rank-18 bundle, so P^17
    rows.append(StratumDimensions(
        StratumLabel.X0, 0, base0 + fibre0, base0, fibre0,
        "open stratum: P^17 bundle over the Kronecker moduli space N(3,5,4)",
    ))

    rows.append(StratumDimensions(
        StratumLabel.X1, 2, AMBIENT_DIM - 2, None, None,
        "locally closed, codimension 2",
    ))

    hom_dim = 2 * dim_forms(2) + 4 * dim_forms(1)            # Hom(O(-3)+2O(-2), 2O(-1))
    aut_dim = (1 + 4 + 2 * dim_forms(1)) + 4 - 1             # (Aut x Aut)/scalars
    base2 = (hom_dim - aut_dim) + 2                          # Y x P^2
    rows.append(StratumDimensions(
        StratumLabel.X2, 4, base2 + 21, base2, 21,
        "P^21 bundle over Y x P^2, Y the 10-dimensional pencil quotient",
    ))

    base3 = 2 + moduli_dimension(3, 2, 3)                    # P^2 x N(3,2,3)
    rows.append(StratumDimensions(
        StratumLabel.X3, 6, base3 + 23, base3, 23,
        "P^23 bundle over P^2 x N(3,2,3)",
    ))

    grass = 2 * (dim_forms(2) - 2)                           # Grass(2, 6)
    rows.append(StratumDimensions(
        StratumLabel.X4, 6, grass + 23, grass, 23,
        "birational to a P^23 bundle over Grass(2,6)",
    ))

    hilb2 = 4                                                # Hilb^2 of the plane
    sextics_through = (dim_forms(6) - 1) - 2                 # P^27 cut by 2 conditions
    rows.append(StratumDimensions(
        StratumLabel.X5, 8, hilb2 + sextics_through, hilb2, sextics_through,
        "flags of sextic curves through length-2 subschemes",
    ))
    return rows
