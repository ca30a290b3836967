"""Show that Jeans' eight-quantity basis cannot produce U proportional to lambda^-5.

Every dimensionless product satisfies x_lambda = 2 x_U - x_e / 2, so the
wavelength exponent is tied to the others and no pin choice frees it.
"""

from fractions import Fraction

from piradiance.dimensions import format_fraction
from piradiance.pi_solver import jeans_functional, nullspace_basis, solve_pinned
from piradiance.scenarios import jeans_pins, jeans_set


def main():
    qs = jeans_set()
    system = solve_pinned(qs, jeans_pins())
    print(f"rank {system.rank}, {system.num_invariants} invariants")
    for i, inv in enumerate(system.invariants, 1):
        print(f"  pi{i} = {inv.formula}")
    for v in nullspace_basis(qs):
        vec = ", ".join(format_fraction(x) for x in v)
        print(f"  basis ({vec})  functional = {format_fraction(jeans_functional(v))}")
    # the wavelength exponent that the target law would need, given x_U = 1 and x_e = 0
    wanted = Fraction(5)
    forced = 2 * 1 - Fraction(0) / 2
    print(f"lambda exponent forced to {forced}, target needs {wanted}: unreachable")


if __name__ == "__main__":
    main()
