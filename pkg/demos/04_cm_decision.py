"""The CM dichotomy as an exact feasibility decision.

For a totally imaginary field given by a polynomial, a polarization of the
rank-one Hodge structure requires an element that is purely imaginary in
every embedding with prescribed signs.  CM fields always admit one; the
quartic x^4 + x + 1 (Galois group S4) admits none, with an exact
certificate; x^4 + 2 sits in between: not CM, but with a CM subfield whose
imaginary line decides feasibility pattern by pattern.
"""

import itertools

from rigidtori import PolynomialField, polarization_exists


def describe(name, coeffs):
    F = PolynomialField(coeffs)
    print(f"\n=== {name} ===")
    print("conjugate root pairs:", F.pairs)
    basis = F.imaginary_subspace()
    print(f"purely-imaginary subspace dimension: {len(basis)}")
    for designated in itertools.product(*[p for p in F.pairs]):
        cert = polarization_exists(coeffs, designated)
        if cert.exists:
            print(f"  designated {designated}: witness zeta = "
                  f"{[str(q) for q in cert.witness]}")
        else:
            print(f"  designated {designated}: infeasible "
                  f"({cert.obstruction['reason']})")


if __name__ == "__main__":
    describe("x^2 + 1  (Gaussian field, CM)", (1, 0, 1))
    describe("x^4 + x^3 + x^2 + x + 1  (fifth cyclotomic, CM)",
             (1, 1, 1, 1, 1))
    describe("x^4 + x + 1  (totally imaginary, not CM)", (1, 1, 0, 0, 1))
    describe("x^4 + 2  (not CM, with CM subfield Q(sqrt(-2)))",
             (2, 0, 0, 0, 1))
