"""Synthetic targets used only by the tests."""
from fractions import Fraction

from gwzero.target import BasisClass, CurveLattice, GwTarget


def odd_curve() -> GwTarget:
    """Cohomology of a genus-one curve: ``1, a, b, pt`` with ``a`` and ``b`` odd.

    The curve lattice and c1 are placeholders (c1 = 1 so classes can be
    enumerated); only the classical part is meaningful.
    """
    basis = (BasisClass(0, 0, name="1"), BasisClass(1, 1, name="a"),
             BasisClass(2, 1, name="b"), BasisClass(3, 2, name="pt"))
    F = Fraction
    pairing = ((F(0), F(0), F(0), F(1)),
               (F(0), F(0), F(1), F(0)),
               (F(0), F(-1), F(0), F(0)),
               (F(1), F(0), F(0), F(0)))
    cup = {(0, j): {j: F(1)} for j in range(4)}
    cup.update({(j, 0): {j: F(1)} for j in range(4)})
    cup[(1, 2)] = {3: F(1)}
    cup[(2, 1)] = {3: F(-1)}
    return GwTarget(name="odd_curve", dim=1, basis=basis, involution=(0, 1, 2, 3),
                    pairing=pairing, cup=cup, lattice=CurveLattice(1, (1,), {3: (1,)}))


def many_odd(n_odd: int = 4, n_even: int = 2) -> GwTarget:
    """A bare graded basis with several odd classes; only parities are used."""
    basis = [BasisClass(0, 0, name="1")]
    for k in range(n_even):
        basis.append(BasisClass(len(basis), 2))
    for k in range(n_odd):
        basis.append(BasisClass(len(basis), 1))
    n = len(basis)
    pairing = tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n))
    return GwTarget(name="many_odd", dim=1, basis=tuple(basis), involution=tuple(range(n)),
                    pairing=pairing, cup={}, lattice=CurveLattice(1, (1,), {}))
