import pytest

from recollab.algebra import enveloping
from recollab.complexes import ShortExactSequence, projective_resolution
from recollab.errors import BudgetExceeded, DepthInsufficient
from recollab.exactfield import GF, QQ, Matrix, rank
from recollab.fixtures import (
    a2_path_algebra,
    dual_numbers,
    ground_field,
    kronecker_algebra,
    one_point_extension_of_dual_numbers,
    vertex_idempotent,
)
from recollab.homology import (
    bar_oracle,
    ext,
    global_dimension,
    hochschild_cohomology,
    hochschild_dimension,
    hochschild_homology,
    les_from_ses,
    regular_as_left_env_module,
    tor,
    yoneda_product,
)
from recollab.modules import (
    Bimodule,
    ModuleMap,
    as_bimodule,
    canonical_bimodules,
    direct_sum,
    hom_space,
    regular_bimodule,
    regular_module,
    simple_modules,
    tensor_over,
    trivial_algebra,
)

F5 = GF(5)


def left_module_from_simple(alg, s):
    """A one-dimensional right module as a left module (commutative actions)."""
    ident = Matrix.identity(alg.field, s.dim)
    return Bimodule(alg, trivial_algebra(alg.field), s.dim, s.action, (ident,))


# -- tor -----------------------------------------------------------------------


def test_tor_over_ground_field_concentrated():
    k = ground_field()
    m = regular_module(k)
    t = left_module_from_simple(k, m)
    g = tor(m, t, 3)
    assert g.as_dict() == {0: 1, 1: 0, 2: 0, 3: 0}


def test_tor_corner_vanishing_a2():
    # Tor^{eAe}(Ae, eA) vanishes in degrees >= 1 for the A2 sink idempotent
    a = a2_path_algebra()
    e = vertex_idempotent(a, "2")
    cb = canonical_bimodules(a, e)
    g = tor(cb.ae, cb.ea, 4)
    assert g.dim(0) == cb.aea.dim == 2
    for n in range(1, 5):
        assert g.dim(n) == 0


def test_tor_dual_numbers_periodic():
    d = dual_numbers()
    s = simple_modules(d)[0]
    t = left_module_from_simple(d, s)
    g = tor(s, t, 5)
    assert g.as_dict() == {n: 1 for n in range(6)}


def test_tor_balanced_both_sides():
    d = dual_numbers()
    s = simple_modules(d)[0]
    t = left_module_from_simple(d, s)
    left = tor(s, t, 4, resolve="left")
    right = tor(as_bimodule(s), t, 4, resolve="right")
    assert left.entries == right.entries
    # corner instance over the A2 path algebra
    a = a2_path_algebra()
    e = vertex_idempotent(a, "2")
    cb = canonical_bimodules(a, e)
    assert tor(cb.ae, cb.ea, 3, resolve="left").entries == \
        tor(cb.ae, cb.ea, 3, resolve="right").entries
    # hochschild instance: both sides of Tor over the enveloping algebra
    env = enveloping(a)
    m = regular_bimodule(a).as_right_module_over(env)
    t_env = regular_as_left_env_module(a, env)
    assert tor(m, t_env, 3, resolve="left").entries == \
        tor(m, t_env, 3, resolve="right").entries


def test_ext_balanced_via_linear_duality():
    # Ext_B(M, N) ~ Ext_{B^op}(DN, DM): the second-argument route goes through
    # the k-linear dual, avoiding injective resolutions
    from recollab.modules import dual_module
    d = dual_numbers()
    s = simple_modules(d)[0]
    lhs = ext(s, s, 4).graded
    rhs = ext(dual_module(s), dual_module(s), 4).graded
    assert lhs.entries == rhs.entries
    a = a2_path_algebra()
    s1, s2 = simple_modules(a)
    for m, n in ((s1, s2), (s2, s1), (regular_module(a), s2)):
        lhs = ext(m, n, 3).graded
        rhs = ext(dual_module(n), dual_module(m), 3).graded
        assert lhs.entries == rhs.entries


def test_tor0_matches_tensor_dim():
    a = a2_path_algebra()
    e = vertex_idempotent(a, "2")
    cb = canonical_bimodules(a, e)
    g = tor(cb.ae, cb.ea, 2)
    tp = tensor_over(cb.ae, cb.ea)
    assert g.dim(0) == tp.bimodule.dim


# -- ext -----------------------------------------------------------------------


def test_ext_over_ground_field():
    k = ground_field()
    m = regular_module(k)
    g = ext(m, m, 3).graded
    assert g.as_dict() == {0: 1, 1: 0, 2: 0, 3: 0}


def test_ext_dual_numbers_all_degrees():
    d = dual_numbers()
    s = simple_modules(d)[0]
    g = ext(s, s, 5).graded
    assert g.as_dict() == {n: 1 for n in range(6)}


def test_ext0_is_hom_dim():
    a = kronecker_algebra()
    for m in simple_modules(a) + [regular_module(a)]:
        for n in simple_modules(a):
            g = ext(m, n, 1).graded
            assert g.dim(0) == len(hom_space(m, n))


# -- hochschild ------------------------------------------------------------------


def test_hh_of_ground_field():
    k = ground_field()
    assert hochschild_homology(k, 4).as_dict() == {0: 1, 1: 0, 2: 0, 3: 0, 4: 0}
    assert hochschild_cohomology(k, 4).as_dict() == {0: 1, 1: 0, 2: 0, 3: 0, 4: 0}


def test_hh_dual_numbers():
    d = dual_numbers()
    assert hochschild_homology(d, 4).as_dict() == {0: 2, 1: 1, 2: 1, 3: 1, 4: 1}
    assert hochschild_cohomology(d, 4).as_dict() == {0: 2, 1: 1, 2: 1, 3: 1, 4: 1}


def test_hh_a2_path_algebra():
    a = a2_path_algebra()
    # HH_0 = A/[A,A] has dimension 2 (= HH_0(k) + HH_0(k), Keller additivity);
    # the commutator subspace is spanned by the arrow
    assert hochschild_homology(a, 4).as_dict() == {0: 2, 1: 0, 2: 0, 3: 0, 4: 0}
    assert hochschild_cohomology(a, 4).as_dict() == {0: 1, 1: 0, 2: 0, 3: 0, 4: 0}


def test_hh_kronecker():
    k = kronecker_algebra()
    assert hochschild_homology(k, 3).as_dict() == {0: 2, 1: 0, 2: 0, 3: 0}
    assert hochschild_cohomology(k, 3).as_dict() == {0: 1, 1: 3, 2: 0, 3: 0}


def test_hh0_equals_dim_minus_commutator():
    from recollab.exactfield import row_space_basis
    for alg in (a2_path_algebra(), kronecker_algebra(), dual_numbers()):
        f = alg.field
        rows = []
        for i in range(alg.dim):
            for j in range(alg.dim):
                bi = tuple(f.one() if t == i else f.zero() for t in range(alg.dim))
                bj = tuple(f.one() if t == j else f.zero() for t in range(alg.dim))
                ij = alg.multiply(bi, bj)
                ji = alg.multiply(bj, bi)
                rows.append([f.sub(x, y) for x, y in zip(ij, ji)])
        comm = row_space_basis(Matrix(f, rows, ncols=alg.dim))
        hh0 = hochschild_homology(alg, 0).dim(0)
        assert hh0 == alg.dim - comm.nrows


def test_hh0_cohomology_equals_center():
    from recollab.algebra import center
    for alg in (a2_path_algebra(), kronecker_algebra(), dual_numbers(),
                one_point_extension_of_dual_numbers()[0]):
        assert hochschild_cohomology(alg, 0).dim(0) == center(alg).nrows


# -- bar oracle -------------------------------------------------------------------


@pytest.mark.parametrize("field", [QQ, F5])
def test_bar_oracle_agrees_ground_field(field):
    k = ground_field(field)
    hh, hhc = bar_oracle(k, 4)
    assert hh.entries == hochschild_homology(k, 4).entries
    assert hhc.entries == hochschild_cohomology(k, 4).entries


@pytest.mark.parametrize("field", [QQ, F5])
def test_bar_oracle_agrees_dual_numbers(field):
    d = dual_numbers(field)
    hh, hhc = bar_oracle(d, 4)
    assert hh.entries == hochschild_homology(d, 4).entries
    assert hhc.entries == hochschild_cohomology(d, 4).entries


def test_bar_oracle_agrees_a2():
    a = a2_path_algebra()
    hh, hhc = bar_oracle(a, 4)
    assert hh.entries == hochschild_homology(a, 4).entries
    assert hhc.entries == hochschild_cohomology(a, 4).entries


def test_bar_oracle_budget():
    k = kronecker_algebra()
    with pytest.raises(BudgetExceeded):
        bar_oracle(k, 4, budget=100)


# -- dimensions ---------------------------------------------------------------------


def test_hochschild_dimension_values():
    assert hochschild_dimension(ground_field(), 4).label() == "Finite(0)"
    assert hochschild_dimension(a2_path_algebra(), 4).label() == "Finite(1)"
    assert hochschild_dimension(kronecker_algebra(), 4).label() == "Finite(1)"
    v = hochschild_dimension(dual_numbers(), 4)
    assert v.kind == "at_least" and v.value == 5
    assert v.definitely_infinite()


def test_global_dimension_values():
    assert global_dimension(ground_field(), 4).label() == "Finite(0)"
    assert global_dimension(a2_path_algebra(), 4).label() == "Finite(1)"
    v = global_dimension(dual_numbers(), 4)
    assert v.kind == "at_least"
    assert v.definitely_infinite()


def test_smooth_implies_cohomology_vanishing():
    # hochschild_dimension Finite(0) => HH^n = 0 for n >= 1
    k = ground_field()
    assert hochschild_dimension(k, 3).label() == "Finite(0)"
    g = hochschild_cohomology(k, 3)
    assert all(g.dim(n) == 0 for n in range(1, 4))


# -- les_from_ses ------------------------------------------------------------------


def _canonical_env_ses(a, e):
    env = enveloping(a)
    cb = canonical_bimodules(a, e)
    aea = cb.aea.as_right_module_over(env)
    reg = cb.regular.as_right_module_over(env)
    quo = cb.quotient.as_right_module_over(env)
    return ShortExactSequence(aea, reg, quo,
                              ModuleMap(aea, reg, cb.inclusion),
                              ModuleMap(reg, quo, cb.projection)), env, cb


def test_les_split_ses_zero_connecting():
    a = a2_path_algebra()
    s1, s2 = simple_modules(a)
    both = direct_sum([s1, s2])
    f = a.field
    inc = ModuleMap(s1, both, Matrix(f, [[1, 0]]), _validate=False)
    prj = ModuleMap(both, s2, Matrix(f, [[0], [1]]), _validate=False)
    ses = ShortExactSequence(s1, both, s2, inc, prj)
    rep = les_from_ses(ses, regular_module(a), "hom_contravariant", 3)
    assert rep.exact
    # connecting maps (every third map) vanish on a split sequence
    for i in range(2, len(rep.maps), 3):
        assert rep.maps[i].is_zero()


def test_les_contravariant_canonical_a2():
    a = a2_path_algebra()
    ses, env, cb = _canonical_env_ses(a, vertex_idempotent(a, "2"))
    rep = les_from_ses(ses, cb.regular.as_right_module_over(env),
                       "hom_contravariant", 4)
    assert rep.exact


def test_les_tensor_recovers_keller_instance():
    a = a2_path_algebra()
    ses, env, cb = _canonical_env_ses(a, vertex_idempotent(a, "2"))
    t = regular_as_left_env_module(a, env)
    rep = les_from_ses(ses, t, "tensor", 4)
    assert rep.exact
    # the middle column computes HH_n(A)
    hh = hochschild_homology(a, 4)
    mids = [t_ for t_ in rep.terms if t_.label == "Tor(mid)"]
    for term in mids:
        assert term.dim == hh.dim(-term.degree)


def test_les_covariant_canonical_a2():
    a = a2_path_algebra()
    ses, env, cb = _canonical_env_ses(a, vertex_idempotent(a, "2"))
    rep = les_from_ses(ses, cb.regular.as_right_module_over(env),
                       "hom_covariant", 4)
    assert rep.exact


# -- yoneda ----------------------------------------------------------------------


def test_yoneda_identity_acts_trivially():
    d = dual_numbers()
    s = simple_modules(d)[0]
    data = ext(s, s, 4)
    one = data.cocycle_basis(0)[0]
    xi = data.cocycle_basis(1)[0]
    prod = yoneda_product(xi, one)   # xi then identity
    assert prod.degree == 1
    coords = data.class_coords(prod)
    base = data.class_coords(xi)
    assert not coords.is_zero()
    assert coords == base or coords == base.neg()


def test_yoneda_generator_squares_nonzero_over_dual_numbers():
    d = dual_numbers()
    s = simple_modules(d)[0]
    data = ext(s, s, 4)
    xi = data.cocycle_basis(1)[0]
    sq = yoneda_product(xi, xi)
    assert sq.degree == 2
    assert not data.class_coords(sq).is_zero()
    cube = yoneda_product(sq, xi)
    assert not data.class_coords(cube).is_zero()


def test_yoneda_degree_additive_and_associative():
    d = dual_numbers()
    s = simple_modules(d)[0]
    data = ext(s, s, 6)
    xi = data.cocycle_basis(1)[0]
    sq = yoneda_product(xi, xi)
    a1 = yoneda_product(yoneda_product(xi, xi), xi)
    a2 = yoneda_product(xi, yoneda_product(xi, xi))
    assert a1.degree == a2.degree == 3
    assert data.class_coords(a1) == data.class_coords(a2)


def test_yoneda_zero_composite():
    a = a2_path_algebra()
    s1, s2 = simple_modules(a)
    # Ext^0(s1, s1) x Ext^0(s1, s1): compose the zero map
    data = ext(s1, s1, 2)
    one = data.cocycle_basis(0)[0]
    zero_cls = yoneda_product(one, one)
    # identity o identity = identity (sanity), then scale to zero
    from recollab.homology import ExtClass
    zc = ExtClass(0, data.resolution, s1,
                  ModuleMap(data.resolution.modules[0], s1,
                            Matrix.zeros(a.field, data.resolution.modules[0].dim, 1),
                            _validate=False))
    prod = yoneda_product(zc, one)
    assert data.class_coords(prod).is_zero()


def test_yoneda_depth_insufficient():
    d = dual_numbers()
    s = simple_modules(d)[0]
    data = ext(s, s, 2)
    xi = data.cocycle_basis(1)[0]
    sq = yoneda_product(xi, xi)
    with pytest.raises(DepthInsufficient):
        yoneda_product(yoneda_product(sq, sq), sq)
