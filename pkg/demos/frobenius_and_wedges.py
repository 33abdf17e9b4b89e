"""
Frobenius images and wedge structure over Z x Z_p
=================================================

When ``Z^(p)`` is a union of classes, the map ``g -> g^k`` sends classes to
classes for every unit ``k``. Classes outside the subgroup ``K x Z_p`` are
unions of cosets of a torsion subgroup. Both statements are checked here on a
window, family by family.
"""

from schurlab import automorphisms as A
from schurlab import lab
from schurlab import oracles as O

p = 5
inner = O.make_automorphic(A.closure([A.sigma(2, p)]))

# With free index p the Frobenius hypothesis holds. With 2p it fails, but the
# odd powers of z then sit outside K x Z_p and the coset check has content.
for s in (p, 2 * p):
    wedge = O.make_wedge(inner, s, "discrete")
    frob = lab.lab_frobenius_primitivity(wedge, 6)
    cosets = lab.lab_wedge_structure(wedge, 6)
    print(f"s={s}: frobenius {frob.verdict}, wedge structure {cosets.verdict} {cosets.details}")

# Whole census: every family member with free index <= 4.
for check in (lab.lab_frobenius_census, lab.lab_wedge_census):
    r = check(p, 4, 5)
    print(r.check, r.verdict, r.details)
