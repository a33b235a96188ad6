"""Tensor and opposite transfers of recollements, and smoothness verdicts.

From a perfect recollement of D(A) the engine constructs recollements of
D(B (x) A) (same idempotent, tensored) and of D(A^op) (sides swapped) and
re-certifies both from scratch -- the theorems predict success, the engine
verifies it, and a failure would abort loudly.

Smoothness (finite Hochschild dimension) transfers across a perfect
recollement: the middle algebra is smooth iff both sides are.  Verdicts are
honest about the cutoff: syzygy periodicity certifies infinite dimension,
anything else above the cutoff stays inconclusive.
"""

from recollab.fixtures import (
    a2_path_algebra,
    augmentation_bimodule,
    dual_numbers,
    field_bimodule,
    ground_field,
)
from recollab.recollement import from_triangular, opposite_transfer, tensor_transfer
from recollab.verify import gldim_equivalence, smoothness_equivalence

k = ground_field()
fixtures = {
    "triangular(k,k,k)": from_triangular(ground_field(), ground_field(),
                                         field_bimodule(k, k, 1), 4),
    "triangular(k,k,k^2)": from_triangular(ground_field(), ground_field(),
                                           field_bimodule(k, k, 2), 4),
    "triangular(D,k,k)": from_triangular(dual_numbers(), ground_field(),
                                         augmentation_bimodule(k, dual_numbers()), 4),
}

print("smoothness and global-dimension transfer verdicts (cutoff 8):")
for name, r in fixtures.items():
    sm = smoothness_equivalence(r, cutoff=8)
    gl = gldim_equivalence(r, cutoff=8)
    print(f"  {name}:")
    print(f"    hochschild dims  A={sm.mid}  A1={sm.side1}  A2={sm.side2}"
          f"  -> {sm.verdict}")
    print(f"    global dims      A={gl.mid}  A1={gl.side1}  A2={gl.side2}"
          f"  -> {gl.verdict}")

print("\ntensor transfers (B in {k, dual numbers, A2 path algebra}):")
factors = [("k", ground_field()), ("D", dual_numbers()), ("A2", a2_path_algebra())]
r = fixtures["triangular(k,k,k^2)"]
for bname, b in factors:
    out = tensor_transfer(b, r, 4)
    print(f"  {bname} (x) Kronecker: dim {out.a.dim}, stratifying: "
          f"{out.stratifying_report.stratifying}, perfect: {out.perfect.status}")

print("\nopposite transfers (sides swap):")
for name, r in fixtures.items():
    out = opposite_transfer(r, 4)
    print(f"  {name}: sides ({r.a1.dim}, {r.a2.dim}) -> "
          f"({out.a1.dim}, {out.a2.dim}), perfect: {out.perfect.status}")
