"""Fixed-point bookkeeping on the quadric, both Lefschetz identities."""

from enricert import (
    FixedCurveData,
    holomorphic_lefschetz_case_a,
    holomorphic_lefschetz_case_b,
    hyperbolic_plane,
    inv_both,
    isometries_with_trace,
    k4_normal_form_check,
    neg_both,
    qaut_fixed_points,
    swap_root,
    topological_lefschetz_count,
)

# Isolated fixed points: the holomorphic identity pins the count to 4
# for either square root acting on the 2-form.
for sign in (1, -1):
    print(f"sign {sign:+d}: isolated fixed point count",
          holomorphic_lefschetz_case_b(sign))

# A pointwise-fixed curve of genus 9 with self-intersection 16 would have
# to satisfy the same identity, and does not.
curve = FixedCurveData(genus=9, self_intersection=16)
for sign in (1, -1):
    lhs, rhs, equal = holomorphic_lefschetz_case_a(sign, curve)
    print(f"sign {sign:+d}: curve case lhs {lhs}, rhs {rhs}, equal {equal}")

# Fixed loci of the coordinate involutions on P^1 x P^1, with the
# topological count 2 + trace as cross-check.
involutions = [
    ("negate both", neg_both()),
    ("invert both", inv_both()),
    ("their product", neg_both().compose(inv_both())),
]
for label, g in involutions:
    data = qaut_fixed_points(g)
    points = [(str(a), str(b)) for a, b in data.points]
    print(f"{label}: {data.count} fixed points at {points}, "
          f"topological count {topological_lefschetz_count(g.ns_trace())}")

data = qaut_fixed_points(swap_root(1))
print("factor swap:", data.count, "fixed points at",
      [(str(a), str(b)) for a, b in data.points])

# Square roots of the coordinate involutions inside the monomial group:
# only factor-swapping roots exist for the double inversion.
k4 = k4_normal_form_check()
print("Klein four-group relations hold:", k4.klein_ok)
print("square roots of the double inversion:", len(k4.roots),
      "of which direct:", len(k4.direct_roots))

# Isometries of U(2) with trace 2 and bounded entries: only the identity,
# so an invariant hyperbolic summand forces trivial action there.
u2 = hyperbolic_plane(2)
fixed = isometries_with_trace(u2, 2, bound=2)
print("U(2) isometries with trace 2:", fixed)
print("U(2) isometries with trace 0:",
      [m for m in isometries_with_trace(u2, 0, bound=2)])
