# coding: utf-8

# # Counting rational plane curves
#
# How many rational curves of degree d pass through 3d-1 general points of the
# plane?  Lines through two points: one.  Conics through five: one.  Beyond
# that the answer is not obvious, but associativity of the quantum product
# determines every count from the single line.
#
# Run with `python demos/plane_curves.py`.

# In[1]:

import time

from gwzero import Cutoff, Reconstructor, explain, load_bundled, oracle_recursion_p2, reconstruct_all


# The bundled plane has basis 1, H, H2 (H2 is the point class) and a single
# seed: one line through two points, <H,H2,H2>_1 = 1.

# In[2]:

p2 = load_bundled("p2")
print([p2.label(i) for i in range(p2.size)], p2.seeds)


# Reconstruct everything with beta.c1 <= 18 (degree 6) and up to 17 insertions.

# In[3]:

start = time.perf_counter()
table = reconstruct_all(p2, cutoff=Cutoff(18, 17))
print("%d table entries in %.2fs" % (len(table), time.perf_counter() - start))

for d in range(2, 7):
    n_d = table.value((d,), (2,) * (3 * d - 1))
    print("N_%d = %s   (recursion: %s)" % (d, n_d, oracle_recursion_p2(d)))


# The derivation of N_3 is a small tree of WDVV instances that bottoms out in
# the seed and in classical cup products.

# In[4]:

rec = Reconstructor(p2)
print(explain(rec, (2,) * 8, (3,)).render())


# Inserting a line class multiplies by the degree (divisor axiom), so the
# same table answers questions with H insertions too:

# In[5]:

print(rec.value((1, 1) + (2,) * 8, (3,)), "=", 3 * 3 * 12)
print(rec.value((1, 2, 2), (1,)), "line through two points")
