# coding: utf-8

# # Small quantum cohomology
#
# Setting the deformation variables to zero in the big quantum product leaves
# the small quantum ring.  For P^2 it is Q[H, q]/(H^3 - q); for P^1 x P^1 it is
# Q[H1, H2, q1, q2]/(H1^2 - q1, H2^2 - q2).

# In[1]:

from gwzero import Cutoff, QuantumElement, build_potential, load_bundled, quantum_mul, reconstruct_all, wdvv_check


def small_ring(name, cutoff):
    t = load_bundled(name)
    p = build_potential(t, reconstruct_all(t, cutoff=cutoff), cutoff)
    basis = [QuantumElement.basis(p, k) for k in range(t.size)]
    print("%s:" % name)
    for i in range(1, t.size):
        for j in range(i, t.size):
            prod = quantum_mul(p, basis[i], basis[j]).at_origin()
            print("  %s * %s = %s" % (t.label(i), t.label(j), prod.format()))
    return t, p


# In[2]:

small_ring("p2", Cutoff(6, 3))
small_ring("p1xp1", Cutoff(4, 3))


# The big product is associative because the potential satisfies WDVV.  Here
# we check every index quadruple up to 8 insertions; then break one number and
# watch the check fail.

# In[3]:

t = load_bundled("p2")
cut = Cutoff(9, 8)
table = reconstruct_all(t, cutoff=cut)
print(wdvv_check(build_potential(t, table, cut), stop_at_first=False))

table.set_value((3,), (2,) * 8, 13)
print(wdvv_check(build_potential(t, table, cut)))
