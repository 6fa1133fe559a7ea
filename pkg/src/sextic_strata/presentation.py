"""Twisted resolutions of one-dimensional sheaves on the projective plane.

A presentation encodes an exact sequence

    0 -> O(s_1) + ... + O(s_m)  --phi-->  O(d_1) + ... + O(d_n)  ->  F  ->  0

by its twist vectors and the matrix of homogeneous forms phi, where cell
(i, j) has degree d_i - s_j (and is forced to vanish when d_i < s_j).
All cohomology is read off this two-term resolution:

* h^0(F(t)) is the corank of the induced map on global sections, because
  line bundles on the plane have no intermediate cohomology;
* h^1(F(t)) is, by Serre duality h^2(O(e)) = h^0(O(-3-e)), the corank of
  the transposed multiplication map on the dual section spaces;
* h^0(F owedge Omega^1(1)) is the kernel of the Euler-sequence contraction
  H^0(F)^3 -> H^0(F(1)), (s_1, s_2, s_3) |-> X s_1 + Y s_2 + Z s_3,
  computed on the explicit cokernel models of the section spaces.

No Cech machinery is used anywhere; injectivity of phi (nonzero
determinant) is what makes these formulas compute the cohomology of the
cokernel sheaf.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    InvalidPresentationError,
    NotSquareError,
)
from .fields import field_from_json
from .forms import Form, dim_forms, mult_map, variables
from .linalg import ScalarMatrix
from .polymatrix import PolyMatrix, det_poly

TwistVector = Tuple[int, ...]

FORMAT_VERSION = 1


def chi_line_bundle(e: int) -> int:
    """Euler characteristic of O(e) on the plane, any integer e."""
    return (e + 1) * (e + 2) // 2


def h0_line_bundle(e: int) -> int:
    return dim_forms(e)


def h2_line_bundle(e: int) -> int:
    # Serre duality on the plane.
    return dim_forms(-3 - e)


@dataclass(frozen=True)
class HilbertPoly:
    """P(m) = r*m + chi for the one-dimensional sheaves in scope."""

    r: int
    chi: int

    def __call__(self, m: int) -> int:
        return self.r * m + self.chi

    def as_list(self) -> List[int]:
        return [self.r, self.chi]


@dataclass(frozen=True)
class CohomologyProfile:
    """The classifying quadruple (h0 F(-1), h1 F, h0(F x Omega^1(1)), h1 F(1))."""

    a: int
    b: int
    c: int
    e: int

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.e)

    def as_list(self) -> List[int]:
        return [self.a, self.b, self.c, self.e]


class Presentation:
    """Twist vectors plus the matrix of forms; immutable."""

    __slots__ = ("field", "source", "target", "matrix", "metadata")

    def __init__(
        self,
        source: Sequence[int],
        target: Sequence[int],
        matrix: PolyMatrix,
        metadata: Optional[dict] = None,
    ):
        source = tuple(int(s) for s in source)
        target = tuple(int(d) for d in target)
        if not source or not target:
            raise InvalidPresentationError(["twist vectors must be non-empty"])
        if matrix.shape != (len(target), len(source)):
            raise InvalidPresentationError(
                [f"matrix shape {matrix.shape} does not match twists ({len(target)}, {len(source)})"]
            )
        object.__setattr__(self, "field", matrix.field)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "metadata", dict(metadata) if metadata else None)

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("Presentation is immutable")

    @property
    def is_square(self) -> bool:
        return len(self.source) == len(self.target)

    def cell_degree(self, i: int, j: int) -> int:
        return self.target[i] - self.source[j]

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.matrix == other.matrix
        )

    def __repr__(self):
        return f"Presentation(source={self.source}, target={self.target})"


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def validate(P: Presentation) -> List[str]:
    """All contract violations of a presentation, as data.

    Checks per-cell homogeneity against the degree grid, the forced-zero
    cells with d_i < s_j, squareness, and injectivity (nonzero
    determinant).  An empty list means the presentation is usable by every
    operation in the package.
    """
    violations = validate_grid_only(P)
    if not P.is_square:
        violations.append(
            f"not square ({P.matrix.nrows}x{P.matrix.ncols}); cohomology operations unavailable"
        )
    elif not violations and fitting_determinant(P).is_zero:
        violations.append("not injective: det = 0")
    return violations


def _require_grid(P: Presentation) -> None:
    bad = validate_grid_only(P)
    if bad:
        raise InvalidPresentationError(bad)


def validate_grid_only(P: Presentation) -> List[str]:
    """Degree-grid violations only (no squareness or determinant check)."""
    violations: List[str] = []
    M = P.matrix
    for i in range(M.nrows):
        for j in range(M.ncols):
            f = M.entry(i, j)
            want = P.cell_degree(i, j)
            if want < 0 and not f.is_zero:
                violations.append(f"forced zero violated at ({i},{j}): Hom degree {want} < 0")
            elif not f.is_zero and f.degree != want:
                violations.append(f"degree mismatch at ({i},{j}): expected {want}, got {f.degree}")
    return violations


def _require_square(P: Presentation) -> None:
    if not P.is_square:
        raise NotSquareError(
            f"presentation is {P.matrix.nrows}x{P.matrix.ncols}; "
            "cohomology is only defined here for square resolutions"
        )


# ---------------------------------------------------------------------------
# Euler characteristic
# ---------------------------------------------------------------------------


def hilbert_polynomial(P: Presentation) -> HilbertPoly:
    """Exact Hilbert polynomial r*m + chi by additivity over the resolution.

    chi(F(m)) = sum_i chi(O(d_i + m)) - sum_j chi(O(s_j + m)); for square
    shapes the quadratic terms cancel and r = sum d_i - sum s_j.
    """
    _require_grid(P)
    _require_square(P)
    r = sum(P.target) - sum(P.source)
    chi = sum(chi_line_bundle(d) for d in P.target) - sum(chi_line_bundle(s) for s in P.source)
    return HilbertPoly(r=r, chi=chi)


# ---------------------------------------------------------------------------
# section matrices
# ---------------------------------------------------------------------------


def _layout(twists: Sequence[int], t: int) -> Tuple[List[int], int]:
    """Row offsets of the graded pieces H^0(O(e + t)) and the total size."""
    offs = []
    acc = 0
    for e in twists:
        offs.append(acc)
        acc += h0_line_bundle(e + t)
    return offs, acc


def section_matrix(P: Presentation, t: int) -> ScalarMatrix:
    """Matrix of H^0(phi(t)): stacked multiplication blocks of the entries."""
    row_off, nrows = _layout(P.target, t)
    col_off, ncols = _layout(P.source, t)
    M = ScalarMatrix.zeros(P.field, nrows, ncols)
    for j, s in enumerate(P.source):
        if s + t < 0:
            continue
        for i, d in enumerate(P.target):
            if d + t < 0:
                continue
            f = P.matrix.entry(i, j)
            if f.is_zero:
                continue
            M.paste(mult_map(f, s + t), row_off[i], col_off[j])
    return M


def dual_section_matrix(P: Presentation, t: int) -> ScalarMatrix:
    """Serre-dual multiplication map used by h1.

    Block (j, i) is multiplication by phi_{ij} from H^0(O(-3 - d_i - t))
    to H^0(O(-3 - s_j - t)); its rank equals the rank of the induced map
    H^2(A(t)) -> H^2(B(t)).
    """
    src = [-3 - d - t for d in P.target]
    dst = [-3 - s - t for s in P.source]
    col_off, ncols = _layout(src, 0)
    row_off, nrows = _layout(dst, 0)
    M = ScalarMatrix.zeros(P.field, nrows, ncols)
    for i, d in enumerate(P.target):
        if -3 - d - t < 0:
            continue
        for j, s in enumerate(P.source):
            if -3 - s - t < 0:
                continue
            f = P.matrix.entry(i, j)
            if f.is_zero:
                continue
            M.paste(mult_map(f, -3 - d - t), row_off[j], col_off[i])
    return M


# ---------------------------------------------------------------------------
# cohomology
# ---------------------------------------------------------------------------


def h0(P: Presentation, t: int) -> int:
    """h^0(F(t)) = h^0(B(t)) - rank H^0(phi(t)).

    Requires a valid square presentation with injective matrix; under
    injectivity the section map has full column rank, which is what makes
    the formula compute the cokernel's sections.
    """
    _require_grid(P)
    _require_square(P)
    total = sum(h0_line_bundle(d + t) for d in P.target)
    return total - section_matrix(P, t).rank()


def h1(P: Presentation, t: int) -> int:
    """h^1(F(t)) via Serre duality on the two-term resolution.

    h^1(F(t)) = sum_j h^0(O(-3 - s_j - t)) - rank of the transposed
    multiplication map; satisfies h0 - h1 = P(t) for injective phi.
    """
    _require_grid(P)
    _require_square(P)
    total = sum(h0_line_bundle(-3 - s - t) for s in P.source)
    return total - dual_section_matrix(P, t).rank()


def _contraction_matrix(P: Presentation) -> ScalarMatrix:
    """Euler contraction H^0(B)^3 -> H^0(B(1)), (b1,b2,b3) -> X b1 + Y b2 + Z b3."""
    row_off, nrows = _layout(P.target, 1)
    col_off, b0 = _layout(P.target, 0)
    X, Y, Z = variables(P.field)
    M = ScalarMatrix.zeros(P.field, nrows, 3 * b0)
    for v_idx, var in enumerate((X, Y, Z)):
        for i, d in enumerate(P.target):
            if d < 0:
                continue
            M.paste(mult_map(var, d), row_off[i], v_idx * b0 + col_off[i])
    return M


def h0_omega(P: Presentation) -> int:
    """h^0(F owedge Omega^1(1)) via the Euler-sequence kernel model.

    Tensoring the Euler sequence 0 -> Omega^1(1) -> 3O -> O(1) -> 0 with F
    is exact on the left because O(1) is locally free, so the number is
    the kernel dimension of the contraction H^0(F)^3 -> H^0(F(1)).  Both
    section spaces are materialized as cokernels of the section matrices
    at twists 0 and 1, and the kernel is computed on representatives:

        dim ker = 3*h^0(B) - 3*rank M_0 - rank [C | M_1] + rank M_1.
    """
    _require_grid(P)
    _require_square(P)
    b0 = sum(h0_line_bundle(d) for d in P.target)
    M0 = section_matrix(P, 0)
    M1 = section_matrix(P, 1)
    C = _contraction_matrix(P)
    return 3 * b0 - 3 * M0.rank() - C.hstack(M1).rank() + M1.rank()


def profile(P: Presentation) -> CohomologyProfile:
    """The classifying quadruple (h0 F(-1), h1 F, h0(F x Omega^1(1)), h1 F(1))."""
    return CohomologyProfile(
        a=h0(P, -1),
        b=h1(P, 0),
        c=h0_omega(P),
        e=h1(P, 1),
    )


# ---------------------------------------------------------------------------
# duality and determinant
# ---------------------------------------------------------------------------


def dual(P: Presentation) -> Presentation:
    """The dual presentation: twists t -> -2 - t (in order) and transpose.

    Realizes F -> Ext^1(F, omega) twisted by O(1) on resolutions: the dual
    of 0 -> A -> B -> F -> 0 is 0 -> B' -> A' -> G -> 0 with summand twist
    -2 - t for each original twist t.  It is an involution, and the Euler
    characteristics satisfy chi(F) + chi(G) = r.
    """
    _require_grid(P)
    new_source = tuple(-2 - d for d in P.target)
    new_target = tuple(-2 - s for s in P.source)
    return Presentation(new_source, new_target, P.matrix.transpose())


def fitting_determinant(P: Presentation) -> Form:
    """Determinant of the matrix: the equation of the support curve.

    Homogeneous of degree sum(d_i) - sum(s_j); nonzero iff the matrix is
    injective as a sheaf map.
    """
    if not P.is_square:
        raise NotSquareError("Fitting determinant needs a square presentation")
    return det_poly(P.matrix)


# ---------------------------------------------------------------------------
# serialization (interchange format, frozen)
# ---------------------------------------------------------------------------


def presentation_to_dict(P: Presentation) -> dict:
    doc: Dict[str, object] = {
        "format_version": FORMAT_VERSION,
        "field": P.field.to_json(),
        "source_twists": list(P.source),
        "target_twists": list(P.target),
        "matrix": [
            [P.matrix.entry(i, j).to_encoding() for j in range(P.matrix.ncols)]
            for i in range(P.matrix.nrows)
        ],
    }
    if P.metadata:
        doc["metadata"] = P.metadata
    return doc


def presentation_from_dict(doc: dict) -> Presentation:
    if doc.get("format_version") != FORMAT_VERSION:
        raise ValueError(f"unsupported format_version {doc.get('format_version')!r}")
    field = field_from_json(doc["field"])
    source = tuple(int(x) for x in doc["source_twists"])
    target = tuple(int(x) for x in doc["target_twists"])
    raw = doc["matrix"]
    if len(raw) != len(target):
        raise ValueError("matrix row count does not match target twists")
    entries = []
    for i, row in enumerate(raw):
        if len(row) != len(source):
            raise ValueError("matrix column count does not match source twists")
        entries.append(
            [
                Form.from_encoding(field, target[i] - source[j], cell)
                for j, cell in enumerate(row)
            ]
        )
    return Presentation(source, target, PolyMatrix(field, entries), metadata=doc.get("metadata"))


def dumps(P: Presentation) -> str:
    """Canonical byte-stable serialization (sorted keys, no whitespace)."""
    return json.dumps(presentation_to_dict(P), sort_keys=True, separators=(",", ":")) + "\n"


def loads(text: str) -> Presentation:
    return presentation_from_dict(json.loads(text))


def save(P: Presentation, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(P))


def load(path) -> Presentation:
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())
