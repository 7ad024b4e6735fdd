# coding: utf-8

# # Fractional degrees
#
# The weighted projective line P(1,3) has a stacky point with automorphism
# group mu_3.  Its inertia stack contributes two twisted sectors whose classes
# sit in degrees 2/3 and 4/3.  The bundled data model carries only the
# classical structure, which is enough to exercise the grading with rational
# degrees.

# In[1]:

from gwzero import Cutoff, CorrelatorTable, build_potential, load_bundled, validate_target
from gwzero.quantum import homogeneity_violations

orb = load_bundled("orbifold_p13")
for b in orb.basis:
    print(b.label, "component", b.component, "age", b.age, "r", b.r, "st-degree", b.st_degree)
print("involution:", orb.involution)
print(validate_target(orb).lines() or "valid")


# The classical potential: three-point integrals of the supplied product.
# Every monomial has the same weighted degree when t_i counts 2 - deg T_i.

# In[2]:

p = build_potential(orb, CorrelatorTable(), Cutoff(0, 3))
print(p.series.format())
print("homogeneity violations:", homogeneity_violations(p))
