"""Seeded random presentations for each stratum, plus deterministic constructors.

Samplers draw only the free cells of each stratum's normal form (forced
zeros and forced constants are never randomized) and rejection-sample
against the shape validators, so every accepted presentation carries the
exact twist shape, passes all matrix conditions, and has nonzero
determinant.  Sampling is reproducible: identical (seed, field, stratum)
yields identical presentation bytes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .errors import DivisibilityFailure, MembershipFailure, RejectionBudgetExceeded
from .fields import Field, field_name
from .forms import Form, divides, monomial_basis, mult_map
from .polymatrix import PolyMatrix
from .presentation import Presentation, fitting_determinant
from .rng import SplitMix64, derive_seed
from .strata import SHAPES, StratumLabel, validate_shape
from .sampler_shapes import FORCED_CONSTANTS, FORCED_ZEROS


@dataclass(frozen=True)
class SampleRequest:
    """What to sample: stratum, field, seed and the rejection budget."""

    label: StratumLabel
    field: Field
    seed: int
    max_rejects: int = 1000

    def __post_init__(self):
        object.__setattr__(self, "label", StratumLabel(self.label))
        if self.max_rejects < 1:
            raise ValueError("max_rejects must be >= 1")


def random_form(field: Field, degree: int, rng: SplitMix64) -> Form:
    """Uniform coefficients in monomial order; small integers over Q."""
    if field.kind == "prime":
        vec = [rng.next_below(field.p) for _ in monomial_basis(degree)]
    else:
        vec = [rng.next_below(19) - 9 for _ in monomial_basis(degree)]
    return Form.from_coeff_vector(field, degree, vec)


def _build_matrix(
    label: StratumLabel,
    field: Field,
    rng: SplitMix64,
    case: Optional[str],
) -> PolyMatrix:
    source, target = SHAPES[label]
    zeros = set(FORCED_ZEROS[label])
    constants = dict(FORCED_CONSTANTS[label])
    if label is StratumLabel.X4:
        if case == "i":
            zeros |= {(0, 0), (0, 1), (1, 2), (2, 2)}
            constants[(0, 2)] = 1
        else:
            zeros |= {(0, 2)}
    entries = []
    for i, d in enumerate(target):
        row = []
        for j, s in enumerate(source):
            deg = d - s
            if deg < 0 or (i, j) in zeros:
                row.append(Form.zero(field, deg))
            elif (i, j) in constants:
                row.append(Form.constant(field, constants[(i, j)]))
            else:
                row.append(random_form(field, deg, rng))
        entries.append(row)
    return PolyMatrix(field, entries)


def sample(req: SampleRequest, allow_rational: bool = False) -> Presentation:
    """Rejection-sample a presentation of the requested stratum.

    Deterministic in (seed, field, label).  Raises RejectionBudgetExceeded
    with the reject count and the last violation list when the budget runs
    out.  Rational sampling draws small integer coefficients and is off by
    default.
    """
    if req.field.kind != "prime" and not allow_rational:
        raise ValueError("sampling needs a prime field (pass allow_rational=True to override)")
    rng = SplitMix64(req.seed)
    source, target = SHAPES[req.label]
    rejects = 0
    last_violations = []
    while rejects <= req.max_rejects:
        case = None
        if req.label is StratumLabel.X4:
            case = "i" if rng.next_below(2) == 0 else "ii"
        matrix = _build_matrix(req.label, req.field, rng, case)
        P = Presentation(source, target, matrix)
        violations = validate_shape(P, req.label)
        if not violations:
            metadata = {
                "stratum": req.label.value,
                "seed": req.seed,
                "field": field_name(req.field),
                "rejects": rejects,
            }
            if case is not None:
                metadata["case"] = case
            return Presentation(source, target, matrix, metadata=metadata)
        rejects += 1
        last_violations = violations
    raise RejectionBudgetExceeded(rejects, last_violations)


def sample_batch(label: StratumLabel, field: Field, base_seed: int, count: int):
    """Independent samples via the documented seed-splitting rule."""
    return [
        sample(SampleRequest(label, field, derive_seed(base_seed, i)))
        for i in range(count)
    ]


# ---------------------------------------------------------------------------
# deterministic X5 constructor
# ---------------------------------------------------------------------------


def construct_x5(f: Form, l: Form, q: Form) -> Presentation:
    """Solve f = h*q - l*g and return the X5 presentation [[h, l], [g, q]].

    The linear system has 36 unknowns (h of degree 4, g of degree 5) and
    28 equations; its solution space is a torsor under c |-> (l*c, q*c),
    and the deterministic representative sets all free variables of the
    echelon solve to zero.  The resulting presentation satisfies
    fitting_determinant = f exactly.

    Raises DivisibilityFailure when l = 0 or l divides q, and
    MembershipFailure when f is not in the degree-6 slice of (l, q).
    """
    field = f.field
    if l.is_zero:
        raise DivisibilityFailure("l = 0")
    if l.degree != 1 or q.degree != 2 or f.degree != 6:
        raise ValueError("need degrees (f, l, q) = (6, 1, 2)")
    if divides(l, q):
        raise DivisibilityFailure("l divides q")
    A = mult_map(q, 4).hstack(mult_map(-l, 5))
    sol = A.solve(f.coefficient_vector())
    if sol is None:
        raise MembershipFailure("f is not in the degree-6 slice of the ideal (l, q)")
    h = Form.from_coeff_vector(field, 4, sol[:15])
    g = Form.from_coeff_vector(field, 5, sol[15:])
    source, target = SHAPES[StratumLabel.X5]
    P = Presentation(source, target, PolyMatrix(field, [[h, l], [g, q]]))
    det = fitting_determinant(P)
    if det != f:  # pragma: no cover - guaranteed by the solve
        raise AssertionError("internal error: determinant does not reproduce f")
    return P


def dual_shape(label: StratumLabel) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Twist shape of the dual stratum: t -> -2 - t applied in order."""
    source, target = SHAPES[label]
    return tuple(-2 - d for d in target), tuple(-2 - s for s in source)
