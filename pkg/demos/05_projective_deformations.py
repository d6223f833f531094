"""Deforming an arbitrary torus action to a projective one.

A generic complex torus is not projective, but rational classes near the
Kaehler class land on the Hodge locus after a small chart move found by
Newton iteration.  Rigid actions cannot move at all, and there the exact
polarization machinery takes over.
"""

import numpy as np

from rigidtori import (find_projective_neighbor, invariant_kahler_class,
                       invariant_two_forms, newton_solve, zero_two_part)
from rigidtori.deform import base_point_from_j
from rigidtori.fixtures import gaussian_action, trivial_action


def random_torus(n2, seed):
    rng = np.random.default_rng(seed)
    while True:
        a = rng.standard_normal((n2, n2 // 2)) \
            + 1j * rng.standard_normal((n2, n2 // 2))
        full = np.hstack([a, np.conj(a)])
        if np.linalg.cond(full) < 50:
            d = np.diag([1j] * (n2 // 2) + [-1j] * (n2 // 2))
            return (full @ d @ np.linalg.inv(full)).real


def generic_torus():
    print("=== a generic 2-dimensional complex torus ===")
    rep = trivial_action(4)
    j = random_torus(4, seed=2)
    space = invariant_two_forms(rep)
    print(f"invariant 2-form lattice has rank {space.dimension}")
    coords, report = invariant_kahler_class(rep, j, space)
    print("Kaehler class coordinates:", [round(float(c), 4) for c in coords])
    print(f"positivity margin {report['positivity_margin']:.3f}")

    for md in (16, 64, 256):
        res = find_projective_neighbor(rep, j, max_denominator=md,
                                       epsilon=10.0)
        print(f"max denominator {md:4d}: rational class at denominator "
              f"{res.denominator}, chart distance {res.t_norm:.3e}, "
              f"(0,2)-residual {res.residual:.1e}, "
              f"margin {res.positivity_margin:.3f}")


def watch_newton():
    print("\n=== watching the Newton iteration ===")
    rep = trivial_action(4)
    j = random_torus(4, seed=3)
    space = invariant_two_forms(rep)
    coords, _ = invariant_kahler_class(rep, j, space)
    from fractions import Fraction
    xi = space.combine([Fraction(c).limit_denominator(32) for c in coords])
    xi_f = [[float(x) for x in row] for row in xi]
    point = base_point_from_j(j)
    print("starting (0,2)-norm:",
          f"{np.linalg.norm(zero_two_part(xi_f, point)):.3e}")
    solved, info = newton_solve(xi_f, rep, point)
    print("residual history:", ["%.2e" % r for r in info["history"]])
    print(f"converged at chart distance {np.linalg.norm(solved.t):.3e}")


def rigid_case():
    print("\n=== the rigid Gaussian curve does not need to move ===")
    rep = gaussian_action()
    res = find_projective_neighbor(rep, [[0.0, -1.0], [1.0, 0.0]],
                                   max_denominator=64)
    print(f"chart dimension {res.chart_dimension}, t = {res.t_matrix}, "
          f"class {res.xi_coords} at denominator {res.denominator}")


if __name__ == "__main__":
    generic_torus()
    watch_newton()
    rigid_case()
