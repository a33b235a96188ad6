"""Hochschild homology and cohomology of the small fixture algebras.

Every number below is computed twice: once through minimal projective
resolutions over the enveloping algebra, and once through the truncated bar
complex, which shares no resolution machinery.  The two columns must agree
exactly -- this is the engine's primary self-check.
"""

from recollab import GF, QQ
from recollab.fixtures import (
    a2_path_algebra,
    dual_numbers,
    ground_field,
    kronecker_algebra,
    one_point_extension_of_dual_numbers,
)
from recollab.homology import bar_oracle, hochschild_cohomology, hochschild_homology

N = 4

fixtures = [
    ("ground field k", ground_field),
    ("dual numbers k[x]/(x^2)", dual_numbers),
    ("A2 path algebra (1 -> 2)", a2_path_algebra),
    ("Kronecker algebra (1 => 2)", kronecker_algebra),
]

for field, tag in ((QQ, "Q"), (GF(5), "F5")):
    print(f"=== over {tag} ===")
    for name, build in fixtures:
        alg = build(field)
        hh = hochschild_homology(alg, N)
        hhc = hochschild_cohomology(alg, N)
        bar_h, bar_c = bar_oracle(alg, N)
        agree = hh.entries == bar_h.entries and hhc.entries == bar_c.entries
        print(f"{name}  (dim {alg.dim})")
        print(f"  HH_*  = {[hh.dim(n) for n in range(N + 1)]}")
        print(f"  HH^*  = {[hhc.dim(n) for n in range(N + 1)]}")
        print(f"  bar oracle agrees: {agree}")
    print()

# The one-point extension of the dual numbers mixes a smooth and a
# non-smooth block; its homology is the sum of the blocks' homologies.
t2, e1, e2 = one_point_extension_of_dual_numbers()
hh = hochschild_homology(t2, N)
print("one-point extension of the dual numbers (dim 4)")
print(f"  HH_* = {[hh.dim(n) for n in range(N + 1)]}   (= HH_*(dual numbers) + HH_*(k))")
