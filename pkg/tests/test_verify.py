import pytest

from recollab.algebra import Idempotent
from recollab.complexes import BoundedComplex, projective_resolution
from recollab.fixtures import (
    a2_path_algebra,
    augmentation_bimodule,
    dual_numbers,
    field_bimodule,
    ground_field,
    kronecker_algebra,
    one_point_extension_of_dual_numbers,
    vertex_idempotent,
)
from recollab.modules import canonical_bimodules, regular_module
from recollab.recollement import from_idempotent, from_triangular
from recollab.verify import (
    cohomology_les,
    duality_roundtrip,
    gldim_equivalence,
    keller_homology,
    smoothness_equivalence,
)


def _r_a2():
    a = a2_path_algebra()
    return from_idempotent(a, vertex_idempotent(a, "2"), 4)


def _r_kron():
    k = kronecker_algebra()
    return from_idempotent(k, vertex_idempotent(k, "2"), 4)


def _r_t2():
    d = dual_numbers()
    k = ground_field()
    return from_triangular(d, k, augmentation_bimodule(k, d), 4)


def test_keller_a2_additivity():
    rep = keller_homology(_r_a2(), 4)
    assert rep.exact
    assert rep.ok
    # HH_0(A) = 2 = 1 + 1, zero in higher degrees
    assert rep.additivity[0] == {"degree": 0, "hh_mid": 2, "hh_sum": 2, "match": True}
    for row in rep.additivity[1:]:
        assert row["hh_mid"] == 0 and row["match"]


def test_keller_kronecker():
    rep = keller_homology(_r_kron(), 4)
    assert rep.ok


def test_keller_t2_nontrivial_high_degrees():
    rep = keller_homology(_r_t2(), 5)
    assert rep.ok
    # HH_n(T2) = HH_n(Dual) + HH_n(k): (3, 1, 1, 1, 1, 1)
    dims = {row["degree"]: row["hh_mid"] for row in rep.additivity}
    assert dims == {0: 3, 1: 1, 2: 1, 3: 1, 4: 1, 5: 1}


def test_keller_degenerate_unit():
    a = a2_path_algebra()
    r = from_idempotent(a, Idempotent(a, a.unit), 3)
    rep = keller_homology(r, 3)
    assert rep.ok
    # HH_n(A) = HH_n(eAe) degreewise (the quotient side is zero)
    for row in rep.side2_identification:
        assert row["match"]


def test_cohomology_les_a2():
    rep = cohomology_les(_r_a2(), 4)
    assert rep.seq_covariant.exact
    assert rep.seq_contravariant.exact
    assert rep.seq_mixed.exact
    assert rep.ok
    assert all(row["zero"] for row in rep.orthogonality)


def test_cohomology_les_kronecker():
    rep = cohomology_les(_r_kron(), 4)
    assert rep.ok
    # HH^1(Kronecker) = 3 shows up in the middle column
    mid_dims = {t.degree: t.dim for t in rep.seq_covariant.terms
                if t.label == "HH(A)"}
    assert mid_dims[1] == 3


def test_cohomology_les_t2():
    rep = cohomology_les(_r_t2(), 4)
    assert rep.ok
    # dual-numbers corner: nonvanishing high-degree cohomology on the A1 side
    quot_dims = {t.degree: t.dim for t in rep.seq_covariant.terms
                 if t.label == "HH(A/AeA)"}
    assert quot_dims[3] == 1 and quot_dims[4] == 1


def test_cohomology_les_maps_are_matrices():
    rep = cohomology_les(_r_a2(), 3)
    for n, m in rep.phi.items():
        assert hasattr(m, "nrows")
    for n, m in rep.phibar.items():
        assert hasattr(m, "ncols")


def test_smoothness_triangular_k_k_k_all_finite():
    r = from_triangular(ground_field(), ground_field(),
                        field_bimodule(ground_field(), ground_field(), 1), 4)
    rep = smoothness_equivalence(r, cutoff=8)
    assert rep.verdict == "Consistent"
    assert rep.mid.startswith("Finite")
    assert rep.side1 == "Finite(0)" and rep.side2 == "Finite(0)"


def test_smoothness_kronecker_all_finite():
    r = from_triangular(ground_field(), ground_field(),
                        field_bimodule(ground_field(), ground_field(), 2), 4)
    rep = smoothness_equivalence(r, cutoff=8)
    assert rep.verdict == "Consistent"


def test_smoothness_dual_block_at_least_on_matching_sides():
    rep = smoothness_equivalence(_r_t2(), cutoff=8)
    assert rep.verdict == "Consistent"
    assert rep.mid.startswith("AtLeast")
    assert rep.side1.startswith("AtLeast")    # the dual-numbers side
    assert rep.side2 == "Finite(0)"
    assert "periodic" in rep.mid and "periodic" in rep.side1


def test_gldim_equivalence_cases():
    rep = gldim_equivalence(_r_a2(), cutoff=8)
    assert rep.verdict == "Consistent"
    rep2 = gldim_equivalence(_r_t2(), cutoff=8)
    assert rep2.verdict == "Consistent"
    assert rep2.mid.startswith("AtLeast")


def test_gldim_degenerate_unit():
    a = a2_path_algebra()
    r = from_idempotent(a, Idempotent(a, a.unit), 3)
    rep = gldim_equivalence(r, cutoff=6)
    assert rep.verdict == "Consistent"
    assert rep.mid == rep.side2  # gl.dim A = gl.dim eAe in the degenerate case


def test_equivalence_verdict_table():
    from recollab.homology import PdVerdict
    from recollab.verify import _equivalence_verdict
    fin = PdVerdict("finite", 1)
    unk = PdVerdict("at_least", 9)
    inf = PdVerdict("at_least", 9, periodic=(1, 2))
    assert _equivalence_verdict(fin, fin, fin)[0] == "Consistent"
    assert _equivalence_verdict(inf, inf, fin)[0] == "Consistent"
    assert _equivalence_verdict(unk, unk, fin)[0] == "Consistent"
    # a definite mismatch is FALSIFIED in both directions
    assert _equivalence_verdict(fin, inf, fin)[0] == "FALSIFIED"
    assert _equivalence_verdict(inf, fin, fin)[0] == "FALSIFIED"
    # inconclusive is never upgraded to a definite verdict
    assert _equivalence_verdict(unk, fin, fin)[0] == "ConsistentVacuous"
    assert _equivalence_verdict(fin, unk, fin)[0] == "ConsistentVacuous"


def test_duality_roundtrip_regular():
    a = a2_path_algebra()
    rep = duality_roundtrip(BoundedComplex.concentrated(regular_module(a)))
    assert rep.ok


def test_duality_roundtrip_two_term():
    a = a2_path_algebra()
    e = vertex_idempotent(a, "2")
    cb = canonical_bimodules(a, e)
    res = projective_resolution(cb.quotient.restrict_right(), 3)
    rep = duality_roundtrip(res.to_complex())
    assert rep.ok


def test_duality_roundtrip_shifted():
    a = a2_path_algebra()
    x = BoundedComplex.concentrated(regular_module(a)).shift(2)
    rep = duality_roundtrip(x)
    assert rep.ok
