"""K3 covers, the two side conditions, and fixed-point freeness.

The cover of w^2 = z*f(y, z) substitutes y = Y*Z, z = Z^2 and divides by
Z^4, giving W^2 = g(Y, Z) of bidegree (4, 4) with only even total degrees.
The covering involution eps acts by (W, Y, Z) -> (-W, -Y, -Z); it is free
exactly when g misses all four corner monomials' zero loci, which here
amounts to four corner coefficients being units.
"""

from enricert import (
    CoverElement,
    check_bis_condition,
    cover_reduce,
    epsilon_fixed_point_free,
    family,
    k3_cover,
    parse_expression,
)

for k in (1, 2, 3):
    cov = k3_cover(family(k))
    print(f"cover of family {k}: {len(cov.geometric_support())} monomials")

# Two recognized shapes of the branch certify a bit of extra symmetry.
for k in (1, 2, 3):
    cov = k3_cover(family(k))
    one, _ = check_bis_condition(cov, 1)
    two, _ = check_bis_condition(cov, 2)
    print(f"cover {k}: condition 1 {one}, condition 2 {two}")

for k in (1, 2, 3):
    res = epsilon_fixed_point_free(family(k))
    corners = {pos: str(val) for pos, val in res.corners.items()}
    print(f"cover {k}: eps free = {bool(res)}, corners {corners}")

# Arithmetic modulo W^2 = g: elements are a + b*W, and powers of W fold
# back into the base ring through the relation.
fam = family(3)
w_cubed = cover_reduce(parse_expression("w^3"), fam)
print("w^3 reduces to a =", w_cubed.a, "plus W times b of degree",
      w_cubed.b.num.total_degree())

elt = CoverElement(
    parse_expression("y"), parse_expression("1"), fam.relation(), "w"
)
print("(y + w) * (y - w) =", (elt * CoverElement(
    parse_expression("y"), parse_expression("-1"), fam.relation(), "w"
)).as_ratfunc())
