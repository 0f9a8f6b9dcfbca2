"""Double covers of the quadric and their K3 covers.

The central object is a family of surfaces w^2 = z * f(y, z) where f is a
bidegree-constrained branch polynomial with formal parameters: the classical
double-plane model of a nodal Enriques surface.  The admissible monomials
y^i z^j of f satisfy 4 <= i + 2j <= 8 and 0 <= i, j <= 4.

The K3 cover substitutes (y, z) = (Y*Z, Z^2), divides the branch data by Z^4
and introduces W = w / Z^3, producing W^2 = g(Y, Z) with g of bidegree at most
(4, 4), invariant under the deck map (Y, Z) -> (-Y, -Z).

Functions on the cover ring R[w] / (w^2 - S) are represented as pairs
a + b*w of rational functions in the base variables, with S the relation
polynomial (z*f downstairs, g upstairs).
"""

from __future__ import annotations

from typing import Dict, Iterable, Mapping, Optional, Tuple

from .errors import InvariantError, PreconditionError
from .field import Cyclo, ONE, SQRT_M1
from .poly import (
    MPoly,
    RatFunc,
    TABLE,
    as_ratfunc,
    exact_divide,
)


def horikawa_support() -> frozenset:
    """Admissible branch exponents: {(i, j) : 4 <= i+2j <= 8, 0 <= i,j <= 4}."""
    return frozenset(
        (i, j)
        for i in range(5)
        for j in range(5)
        if 4 <= i + 2 * j <= 8
    )


_ENRIQUES = "enriques_horikawa"
_K3 = "k3_cover"
_PARAM_NAMES = ("A", "B", "C", "D", "E", "F")


def _param_degree(poly: MPoly, names: Iterable[str]) -> int:
    idx = [poly.table.index(n) for n in names]
    if poly.is_zero():
        return 0
    return max(sum(e[i] for i in idx) for e in poly.terms)


class SurfaceFamily:
    """A parameter family w^2 = z*f(y,z) (kind enriques_horikawa) or
    W^2 = g(Y,Z) (kind k3_cover).

    The branch polynomial is affine-linear in the parameters: every
    coefficient is a field constant plus field multiples of parameters.
    """

    def __init__(self, name: str, kind: str, branch: MPoly, parameters: Tuple[str, ...]):
        if kind not in (_ENRIQUES, _K3):
            raise InvariantError(f"unknown family kind {kind!r}")
        self.name = name
        self.kind = kind
        self.branch = branch
        self.parameters = tuple(parameters)
        self._validate()

    # -- structure -----------------------------------------------------------

    @property
    def cover_var(self) -> str:
        return "w" if self.kind == _ENRIQUES else "W"

    @property
    def base_vars(self) -> Tuple[str, str]:
        return ("y", "z") if self.kind == _ENRIQUES else ("Y", "Z")

    def relation(self) -> MPoly:
        """The polynomial S with cover equation (cover_var)^2 = S."""
        if self.kind == _ENRIQUES:
            return MPoly.var("z", self.branch.table) * self.branch
        return self.branch

    def _validate(self) -> None:
        table = self.branch.table
        if self.branch.is_zero():
            raise InvariantError("branch polynomial is zero")
        if "alpha" in self.parameters:
            raise InvariantError("alpha is reserved for parameter actions")
        for p in self.parameters:
            if not table.is_parameter(p):
                raise InvariantError(f"{p!r} is not a parameter variable")
        allowed = set(self.base_vars) | set(self.parameters)
        used = set(self.branch.variables())
        if not used <= allowed:
            raise InvariantError(
                f"branch uses variables {sorted(used - allowed)} outside "
                f"{sorted(allowed)}"
            )
        if _param_degree(self.branch, table.parameters) > 1:
            raise InvariantError("branch is not affine-linear in the parameters")
        vy, vz = self.base_vars
        iy, iz = table.index(vy), table.index(vz)
        if self.kind == _ENRIQUES:
            support = {(e[iy], e[iz]) for e in self.branch.terms}
            bad = support - horikawa_support()
            if bad:
                raise InvariantError(
                    f"branch support {sorted(bad)} outside the admissible set"
                )
        else:
            for e in self.branch.terms:
                if e[iy] > 4 or e[iz] > 4:
                    raise InvariantError("cover branch exceeds bidegree (4, 4)")
                if (e[iy] + e[iz]) % 2 != 0:
                    raise InvariantError(
                        "cover branch is not invariant under (Y,Z) -> (-Y,-Z)"
                    )

    def geometric_support(self) -> Tuple[Tuple[int, int], ...]:
        table = self.branch.table
        iy, iz = (table.index(v) for v in self.base_vars)
        return tuple(sorted({(e[iy], e[iz]) for e in self.branch.terms}))

    def monomial_coefficient(self, i: int, j: int) -> MPoly:
        """Coefficient of base^i * base2^j as a polynomial in the parameters."""
        vy, vz = self.base_vars
        return self.branch.coefficient({vy: i, vz: j})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SurfaceFamily)
            and self.kind == other.kind
            and self.parameters == other.parameters
            and self.branch == other.branch
        )

    def __repr__(self) -> str:
        return f"SurfaceFamily({self.name}, {self.kind}, params={list(self.parameters)})"


# -- the three built-in families --------------------------------------------
#
# Coefficient tables: (i, j, parameter, scalar).  Each row contributes
# scalar * parameter * y^i z^j to the branch polynomial.

_I = SQRT_M1

_FAMILY_ROWS = {
    1: (
        (4, 2, "A", ONE), (0, 2, "A", -ONE),
        (4, 1, "B", ONE), (0, 3, "B", -ONE),
        (4, 0, "C", ONE), (0, 4, "C", -ONE),
        (3, 2, "D", ONE), (1, 2, "D", -ONE),
        (3, 1, "E", ONE), (1, 3, "E", -ONE),
        (2, 1, "F", ONE), (2, 3, "F", -ONE),
    ),
    2: (
        (4, 2, "A", ONE), (0, 4, "A", _I), (0, 2, "A", -ONE), (4, 0, "A", -_I),
        (4, 1, "B", ONE), (2, 3, "B", _I), (0, 3, "B", -ONE), (2, 1, "B", -_I),
        (3, 2, "D", ONE), (1, 3, "D", _I), (1, 2, "D", -ONE), (3, 1, "D", -_I),
    ),
    3: (
        (4, 2, "A", ONE),
        (4, 0, "B", ONE), (0, 4, "B", ONE),
        (3, 1, "C", ONE), (1, 3, "C", -_I),
        (0, 2, "D", ONE),
    ),
}

_FAMILY_PARAMS = {
    1: ("A", "B", "C", "D", "E", "F"),
    2: ("A", "B", "D"),
    3: ("A", "B", "C", "D"),
}


def family(k: int) -> SurfaceFamily:
    """The k-th built-in branch family (k in {1, 2, 3}).

    Family 1 is the full 6-parameter family invariant under the order-4
    automorphism; family 2 is its 3-parameter subfamily invariant under the
    order-8 automorphism whose square is the order-4 one; family 3 is the
    4-parameter family invariant under the other order-8 automorphism.
    """
    if k not in _FAMILY_ROWS:
        raise ValueError(f"no built-in family {k}; choose 1, 2 or 3")
    branch = MPoly.zero(TABLE)
    for i, j, param, scalar in _FAMILY_ROWS[k]:
        branch = branch + MPoly.monomial(TABLE, {"y": i, "z": j, param: 1}, scalar)
    return SurfaceFamily(f"family{k}", _ENRIQUES, branch, _FAMILY_PARAMS[k])


def specialization_to_family2() -> Dict[str, MPoly]:
    """Parameter substitution carrying family 1 onto family 2."""
    a = MPoly.var("A", TABLE)
    b = MPoly.var("B", TABLE)
    d = MPoly.var("D", TABLE)
    return {"C": a.scale(-_I), "E": d.scale(-_I), "F": b.scale(-_I)}


def specialization_one_param() -> Dict[str, MPoly]:
    """Substitution collapsing family 1 to the classical one-parameter
    subfamily with free parameter C."""
    c = MPoly.var("C", TABLE)
    one = MPoly.const(1, TABLE)
    zero = MPoly.zero(TABLE)
    return {"A": one, "B": -c - one, "D": zero, "E": zero, "F": one - c}


def specialize(fam: SurfaceFamily, substitution: Mapping[str, object]) -> SurfaceFamily:
    """Substitute affine-linear parameter expressions into a family.

    Values may be MPoly, RatFunc, field constants or ints; they must be
    polynomial, involve parameters only, and have parameter degree at most 1
    so the result stays affine-linear.  The result is re-validated, so a
    substitution that escapes the admissible support is rejected too.
    """
    table = fam.branch.table
    assignment: Dict[str, MPoly] = {}
    for name, value in substitution.items():
        if name not in fam.parameters:
            raise InvariantError(f"{name!r} is not a parameter of {fam.name}")
        rf = as_ratfunc(value, table)
        if not rf.is_polynomial():
            raise InvariantError(f"substitution for {name} is not polynomial")
        p = rf.as_poly()
        geometric = set(p.variables()) - table.parameters
        if geometric:
            raise InvariantError(
                f"substitution for {name} uses geometric variables {sorted(geometric)}"
            )
        if _param_degree(p, table.parameters) > 1:
            raise InvariantError(
                f"substitution for {name} is not affine-linear in the parameters"
            )
        assignment[name] = p
    branch = fam.branch.substitute_poly(assignment)
    remaining = [
        p for p in table.names
        if table.is_parameter(p) and p in branch.variables()
    ]
    return SurfaceFamily(f"{fam.name}_special", fam.kind, branch, tuple(remaining))


def k3_cover(fam: SurfaceFamily) -> SurfaceFamily:
    """The K3 double cover W^2 = g(Y, Z) of an enriques_horikawa family.

    g = f(Y*Z, Z^2) / Z^4 is an exact polynomial quotient precisely because
    every branch monomial satisfies i + 2j >= 4; the quotient maps y^i z^j to
    Y^i Z^(i+2j-4).
    """
    if fam.kind != _ENRIQUES:
        raise PreconditionError("k3_cover expects an enriques_horikawa family")
    table = fam.branch.table
    y_image = MPoly.var("Y", table) * MPoly.var("Z", table)
    z_image = MPoly.var("Z", table) ** 2
    pulled = fam.branch.substitute_poly({"y": y_image, "z": z_image})
    g = exact_divide(pulled, MPoly.var("Z", table) ** 4)
    return SurfaceFamily(f"{fam.name}_cover", _K3, g, fam.parameters)


def check_bis_condition(cover: SurfaceFamily, which: int):
    """Anti/skew symmetry of the cover branch g under the lifted base maps.

    Condition 1:  Y^4 Z^4 g(1/Y, 1/Z) = -g(Y, Z)
    Condition 2:  Z^4 g(1/Z, Y) = sqrt(-1) * g(Y, Z)

    Returns (holds, witness) where witness is the numerator of the
    difference (zero polynomial when the condition holds).
    """
    if cover.kind != _K3:
        raise PreconditionError("bis conditions apply to k3_cover families")
    table = cover.branch.table
    g = RatFunc.from_poly(cover.branch)
    yv = RatFunc.var("Y", table)
    zv = RatFunc.var("Z", table)
    if which == 1:
        lhs = (yv ** 4) * (zv ** 4) * g.substitute(
            {"Y": yv.inverse(), "Z": zv.inverse()}
        )
        rhs = -g
    elif which == 2:
        lhs = (zv ** 4) * g.substitute({"Y": zv.inverse(), "Z": yv})
        rhs = RatFunc.const(SQRT_M1, table) * g
    else:
        raise ValueError("which must be 1 or 2")
    diff = lhs - rhs
    return diff.is_zero(), diff.num


class FreenessResult:
    """Outcome of the corner-point fixed-point-freeness check."""

    def __init__(self, free: bool, corners: Dict[str, MPoly]):
        self.free = free
        self.corners = corners

    def __bool__(self) -> bool:
        return self.free

    def __repr__(self) -> str:
        vals = ", ".join(f"{k}: {v}" for k, v in self.corners.items())
        return f"FreenessResult(free={self.free}, {vals})"


def epsilon_fixed_point_free(fam: SurfaceFamily) -> FreenessResult:
    """Check that the lift (W,Y,Z) -> (-W,-Y,-Z) of the deck map acts freely.

    Its base map fixes exactly the four points {0, inf} x {0, inf}; a fixed
    point on the cover would need W = 0 there, i.e. a vanishing corner value
    of the bidegree-(4,4) homogenization of g.  The four corner coefficients
    (of 1, Y^4, Z^4, Y^4 Z^4) are returned as the witness; freeness holds for
    parameter values avoiding their common zero locus.
    """
    if fam.kind != _ENRIQUES:
        raise PreconditionError(
            "epsilon_fixed_point_free expects an enriques_horikawa family"
        )
    g = k3_cover(fam).branch
    corners = {
        "(0,0)": g.coefficient({"Y": 0, "Z": 0}),
        "(inf,0)": g.coefficient({"Y": 4, "Z": 0}),
        "(0,inf)": g.coefficient({"Y": 0, "Z": 4}),
        "(inf,inf)": g.coefficient({"Y": 4, "Z": 4}),
    }
    free = all(not c.is_zero() for c in corners.values())
    return FreenessResult(free, corners)


# -- cover ring arithmetic ---------------------------------------------------


class CoverElement:
    """An element a + b*w of the function field of w^2 = S."""

    __slots__ = ("a", "b", "square", "cover_var")

    def __init__(self, a: RatFunc, b: RatFunc, square: MPoly, cover_var: str):
        if square.degree_in(cover_var) != 0:
            raise InvariantError("relation polynomial must not involve the cover variable")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "square", square)
        object.__setattr__(self, "cover_var", cover_var)

    def __setattr__(self, name, value):
        raise AttributeError("CoverElement instances are immutable")

    def _check_compatible(self, other: "CoverElement") -> None:
        if self.cover_var != other.cover_var or self.square != other.square:
            raise ValueError("mixing elements of different cover rings")

    def _square_rf(self) -> RatFunc:
        return RatFunc.from_poly(self.square)

    def __add__(self, other: "CoverElement") -> "CoverElement":
        self._check_compatible(other)
        return CoverElement(self.a + other.a, self.b + other.b, self.square, self.cover_var)

    def __neg__(self) -> "CoverElement":
        return CoverElement(-self.a, -self.b, self.square, self.cover_var)

    def __sub__(self, other: "CoverElement") -> "CoverElement":
        return self + (-other)

    def __mul__(self, other: "CoverElement") -> "CoverElement":
        self._check_compatible(other)
        s = self._square_rf()
        return CoverElement(
            self.a * other.a + self.b * other.b * s,
            self.a * other.b + self.b * other.a,
            self.square,
            self.cover_var,
        )

    def scale(self, r) -> "CoverElement":
        rf = as_ratfunc(r, self.a.num.table)
        return CoverElement(self.a * rf, self.b * rf, self.square, self.cover_var)

    def inverse(self) -> "CoverElement":
        """(a + b w)^-1 = (a - b w) / (a^2 - b^2 S)."""
        norm = self.a * self.a - self.b * self.b * self._square_rf()
        if norm.is_zero():
            raise ZeroDivisionError("element has zero norm in the cover ring")
        return CoverElement(self.a / norm, -self.b / norm, self.square, self.cover_var)

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoverElement):
            return NotImplemented
        self._check_compatible(other)
        return self.a == other.a and self.b == other.b

    def as_ratfunc(self) -> RatFunc:
        w = RatFunc.var(self.cover_var, self.a.num.table)
        return self.a + self.b * w

    def __repr__(self) -> str:
        return f"CoverElement({self.a} + ({self.b})*{self.cover_var})"


def _split_by_cover_var(p: MPoly, cover_var: str, square: MPoly) -> Tuple[MPoly, MPoly]:
    """Write p modulo (cv^2 - square) as even + odd * cv, both cv-free."""
    table = p.table
    idx = table.index(cover_var)
    even = MPoly.zero(table)
    odd = MPoly.zero(table)
    for e, c in p.terms.items():
        k = e[idx]
        stripped = list(e)
        stripped[idx] = 0
        mono = MPoly(table, {tuple(stripped): c})
        power = square ** (k // 2)
        if k % 2 == 0:
            even = even + mono * power
        else:
            odd = odd + mono * power
    return even, odd


def cover_reduce(expr, fam: SurfaceFamily) -> CoverElement:
    """Reduce a rational expression in the ambient coordinates to a + b*w form.

    Powers of the cover variable are folded through the relation w^2 = S.  A
    cover variable in the denominator is cleared by one conjugation pass,
    which is enough because the conjugate denominator d0^2 - d1^2 S is free of
    the cover variable.
    """
    r = as_ratfunc(expr, fam.branch.table)
    cover_var = fam.cover_var
    square = fam.relation()
    num, den = r.num, r.den
    d_even, d_odd = _split_by_cover_var(den, cover_var, square)
    if not d_odd.is_zero():
        wv = MPoly.var(cover_var, den.table)
        num = num * (d_even - d_odd * wv)
        den = d_even * d_even - d_odd * d_odd * square
        if den.is_zero():
            raise ZeroDivisionError("denominator has zero norm in the cover ring")
    n_even, n_odd = _split_by_cover_var(num, cover_var, square)
    den_rf = RatFunc.from_poly(den)
    return CoverElement(
        RatFunc.from_poly(n_even) / den_rf,
        RatFunc.from_poly(n_odd) / den_rf,
        square,
        cover_var,
    )
