"""Homogeneous forms in three variables X, Y, Z over an exact field.

A form of degree d is a coefficient dict keyed by exponent triples
(e_X, e_Y, e_Z) with e_X + e_Y + e_Z = d; only nonzero coefficients are
stored, so the zero form of each degree is the empty dict.  The monomial
order is graded lexicographic with X > Y > Z and is a frozen public
contract: it fixes the rows and columns of every multiplication matrix
and the byte layout of serialized forms.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterable, Sequence, Tuple

from .fields import Field, same_field
from .linalg import ScalarMatrix

Exponent = Tuple[int, int, int]

VARIABLE_NAMES = ("X", "Y", "Z")


@lru_cache(maxsize=None)
def monomial_basis(d: int) -> Tuple[Exponent, ...]:
    """Exponent triples of degree d in graded-lex order with X > Y > Z.

    The length is (d+1)(d+2)/2.  Raises on negative degree.
    """
    if d < 0:
        raise ValueError(f"negative degree {d}")
    return tuple(
        (ex, ey, d - ex - ey)
        for ex in range(d, -1, -1)
        for ey in range(d - ex, -1, -1)
    )


@lru_cache(maxsize=None)
def monomial_index(d: int) -> Dict[Exponent, int]:
    return {e: i for i, e in enumerate(monomial_basis(d))}


def dim_forms(d: int) -> int:
    """dim of the space of degree-d forms; 0 for negative d."""
    return (d + 1) * (d + 2) // 2 if d >= 0 else 0


class Form:
    """Immutable homogeneous form of a fixed degree.

    A zero form may carry any degree tag (including a negative one, for
    cells of a presentation whose Hom space is zero); nonzero forms
    require degree >= 0 and every stored triple sums to the degree.
    """

    __slots__ = ("field", "degree", "coeffs")

    def __init__(self, field: Field, degree: int, coeffs: Dict[Exponent, object]):
        clean: Dict[Exponent, object] = {}
        for e, c in coeffs.items():
            c = field.normalize(c)
            if field.is_zero(c):
                continue
            if sum(e) != degree or min(e) < 0:
                raise ValueError(f"exponent {e} does not have degree {degree}")
            clean[e] = c
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("Form is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, field: Field, degree: int) -> "Form":
        f = cls.__new__(cls)
        object.__setattr__(f, "field", field)
        object.__setattr__(f, "degree", degree)
        object.__setattr__(f, "coeffs", {})
        return f

    @classmethod
    def monomial(cls, field: Field, exponent: Exponent, coeff=1) -> "Form":
        return cls(field, sum(exponent), {tuple(exponent): coeff})

    @classmethod
    def constant(cls, field: Field, value) -> "Form":
        return cls(field, 0, {(0, 0, 0): value})

    @classmethod
    def from_coeff_vector(cls, field: Field, degree: int, vec: Sequence) -> "Form":
        basis = monomial_basis(degree)
        if len(vec) != len(basis):
            raise ValueError("coefficient vector length mismatch")
        return cls(field, degree, dict(zip(basis, vec)))

    # -- predicates -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return not self.is_zero

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        if self.field != other.field:
            return False
        if self.is_zero and other.is_zero:
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.degree, frozenset(self.coeffs.items())))

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Form"):
        same_field(self.field, other.field)

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch {self.degree} + {other.degree}")
        F = self.field
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = F.add(out.get(e, F.zero()), c)
        return Form(F, self.degree, out)

    def __neg__(self) -> "Form":
        F = self.field
        return Form(F, self.degree, {e: F.neg(c) for e, c in self.coeffs.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __mul__(self, other: "Form") -> "Form":
        self._check(other)
        F = self.field
        deg = self.degree + other.degree
        if self.is_zero or other.is_zero:
            return Form.zero(F, deg)
        out: Dict[Exponent, object] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                prod = F.mul(c1, c2)
                out[e] = F.add(out.get(e, F.zero()), prod)
        return Form(F, deg, out)

    def scale(self, c) -> "Form":
        F = self.field
        c = F.normalize(c)
        return Form(F, self.degree, {e: F.mul(v, c) for e, v in self.coeffs.items()})

    # -- views -------------------------------------------------------------

    def coefficient_vector(self) -> list:
        """Coefficients in the frozen monomial order of `self.degree`."""
        F = self.field
        return [self.coeffs.get(e, F.zero()) for e in monomial_basis(max(self.degree, 0))]

    def evaluate(self, point: Sequence) -> object:
        F = self.field
        x, y, z = (F.normalize(v) for v in point)
        total = F.zero()
        for (a, b, c), coeff in self.coeffs.items():
            term = coeff
            for base, exp in ((x, a), (y, b), (z, c)):
                for _ in range(exp):
                    term = F.mul(term, base)
            total = F.add(total, term)
        return total

    def to_encoding(self) -> list:
        """Serialized as [[coeff, e_X, e_Y, e_Z], ...] in monomial order."""
        F = self.field
        out = []
        for e in monomial_basis(max(self.degree, 0)):
            if e in self.coeffs:
                out.append([F.encode_coeff(self.coeffs[e]), e[0], e[1], e[2]])
        return out

    @classmethod
    def from_encoding(cls, field: Field, degree: int, data: Iterable) -> "Form":
        coeffs = {}
        for item in data:
            c, ex, ey, ez = item
            coeffs[(int(ex), int(ey), int(ez))] = field.decode_coeff(c)
        if not coeffs:
            return cls.zero(field, degree)
        return cls(field, degree, coeffs)

    def pretty(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for e in monomial_basis(self.degree):
            if e not in self.coeffs:
                continue
            c = self.coeffs[e]
            mono = "*".join(
                (name if k == 1 else f"{name}^{k}")
                for name, k in zip(VARIABLE_NAMES, e)
                if k > 0
            )
            cs = self.field.encode_coeff(c)
            if not mono:
                terms.append(str(cs))
            elif str(cs) == "1":
                terms.append(mono)
            else:
                terms.append(f"{cs}*{mono}")
        return " + ".join(terms)

    def __repr__(self):
        return f"Form({self.pretty()})"


def variables(field: Field) -> Tuple[Form, Form, Form]:
    """The coordinate forms X, Y, Z."""
    return (
        Form.monomial(field, (1, 0, 0)),
        Form.monomial(field, (0, 1, 0)),
        Form.monomial(field, (0, 0, 1)),
    )


def mult_map(f: Form, b: int) -> ScalarMatrix:
    """Matrix of multiplication by f from degree-b forms to degree-(a+b) forms.

    Rows and columns follow the frozen monomial order; the column for a
    monomial m holds the coefficients of f*m.
    """
    if b < 0:
        raise ValueError(f"negative source degree {b}")
    a = max(f.degree, 0)
    rows = dim_forms(a + b)
    cols_basis = monomial_basis(b)
    idx = monomial_index(a + b)
    M = ScalarMatrix.zeros(f.field, rows, len(cols_basis))
    for j, m in enumerate(cols_basis):
        for e, c in f.coeffs.items():
            target = (e[0] + m[0], e[1] + m[1], e[2] + m[2])
            M._set(idx[target], j, c)
    return M


def forms_rank(forms: Sequence[Form]) -> int:
    """Rank of the coefficient matrix of equal-degree forms."""
    forms = list(forms)
    if not forms:
        return 0
    field = forms[0].field
    degrees = {f.degree for f in forms if not f.is_zero}
    if len(degrees) > 1:
        raise ValueError(f"mixed degrees {sorted(degrees)}")
    deg = degrees.pop() if degrees else forms[0].degree
    rows = []
    for f in forms:
        same_field(field, f.field)
        rows.append(Form.zero(field, deg).coefficient_vector() if f.is_zero else f.coefficient_vector())
    return ScalarMatrix(field, rows).rank()


def divides(l: Form, q: Form) -> bool:
    """Whether the nonzero linear form l divides q.

    Decided by a membership rank test: q is divisible by l iff its
    coefficient vector lies in the image of multiplication by l on forms
    of degree deg(q) - 1.
    """
    if l.is_zero or l.degree != 1:
        raise ValueError("divisor must be a nonzero linear form")
    if q.is_zero:
        return True
    d = q.degree
    if d < 1:
        return False
    M = mult_map(l, d - 1)
    aug = M.hstack(ScalarMatrix(q.field, [[c] for c in q.coefficient_vector()]))
    return aug.rank() == M.rank()


def common_factor(q1: Form, q2: Form) -> bool:
    """Whether two equal-degree forms share a non-constant common factor.

    Uses the syzygy criterion: by unique factorization, q1 and q2 of
    degree d share a non-constant factor iff a1*q1 + a2*q2 = 0 has a
    solution with a1, a2 of degree d-1, not both zero.  That is a kernel
    rank test on the stacked multiplication matrices, so no polynomial
    gcd machinery is needed.
    """
    if q1.is_zero and q2.is_zero:
        raise ValueError("common_factor undefined for (0, 0)")
    same_field(q1.field, q2.field)
    d1 = q1.degree if not q1.is_zero else q2.degree
    d2 = q2.degree if not q2.is_zero else q1.degree
    if d1 != d2:
        raise ValueError(f"mixed degrees {d1}, {d2}")
    d = d1
    if d == 0:
        return False
    if q1.is_zero or q2.is_zero:
        return True
    A = mult_map(q1, d - 1).hstack(mult_map(q2, d - 1))
    return A.rank() < 2 * dim_forms(d - 1)
