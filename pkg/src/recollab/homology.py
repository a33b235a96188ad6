"""Tor, Ext, Hochschild (co)homology, long exact sequences, Yoneda products.

Hochschild homology of A is Tor over A^op (x) A of (A, A); cohomology is Ext
over the same ring.  The truncated bar complex provides an independent oracle
for both (it shares the exact linear algebra kernels but none of the
resolution machinery).  Long exact sequences are produced at the chain level
with explicit connecting homomorphisms via the horseshoe and a snake chase,
so exactness of every joint is a rank computation, not a trusted theorem.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import enveloping
from .complexes import (
    BoundedComplex,
    HomComplexData,
    ProjectiveResolution,
    ShortExactSequence,
    VectorSpaceComplex,
    hom_complex,
    horseshoe,
    projective_resolution,
)
from .errors import (
    AlgebraMismatch,
    BudgetExceeded,
    DepthInsufficient,
    InputNotExact,
)
from .exactfield import (
    QQ,
    Matrix,
    express_in_row_basis,
    rank,
    solve,
    sparse_rank,
)
from .modules import (
    Bimodule,
    ModuleMap,
    RightModule,
    as_bimodule,
    hom_space,
    hom_vec_basis,
    regular_bimodule,
    simple_modules,
    tensor_over,
    trivial_algebra,
    zero_module,
)


@dataclass
class GradedDims:
    """Dimensions per degree, optionally with representative bases."""

    entries: tuple                       # ((degree, dim), ...)
    bases: dict = field(default_factory=dict)

    def dim(self, n):
        for d, v in self.entries:
            if d == n:
                return v
        return 0

    def degrees(self):
        return [d for d, _ in self.entries]

    def as_dict(self):
        return {d: v for d, v in self.entries}

    def total(self):
        return sum(v for _, v in self.entries)

    def euler_characteristic(self):
        return sum(v if d % 2 == 0 else -v for d, v in self.entries)


@dataclass
class PdVerdict:
    """Projective-dimension verdict: Finite(d) or AtLeast(cutoff+1)."""

    kind: str                 # "finite" | "at_least"
    value: int
    periodic: tuple = None    # syzygy repetition witness (certifies infinity)

    @property
    def finite(self):
        return self.kind == "finite"

    def definitely_infinite(self):
        return self.kind == "at_least" and self.periodic is not None

    def label(self):
        if self.kind == "finite":
            return f"Finite({self.value})"
        tag = ", periodic" if self.periodic else ""
        return f"AtLeast({self.value}{tag})"


# --------------------------------------------------------------------------
# Tor and Ext.
# --------------------------------------------------------------------------


def left_module_of(bim):
    """View a B-X-bimodule as a left B-module (forgetting the right side)."""
    return bim


def regular_as_left_env_module(a, env=None):
    """A as a left module over A^op (x) A: (b^op (x) c) . x = c x b."""
    if env is None:
        env = enveloping(a)
    f = a.field
    L = a.basis_left_mats()
    R = a.basis_right_mats()
    lam = []
    for i in range(a.dim):
        for j in range(a.dim):
            lam.append(L[j].mul(R[i]))
    triv = trivial_algebra(f)
    ident = Matrix.identity(f, a.dim)
    return Bimodule(env, triv, a.dim, tuple(lam), (ident,))


def _tensor_complex(res, t, n_max):
    """P_* (x)_B T for a resolution of a right B-module and a left B-module t.

    Returns (VectorSpaceComplex in degrees -n, list of projections per level).
    """
    f = t.field
    dn = t.dim
    dims = {}
    diffs = {}
    projs = []
    level_data = []
    for nlev in range(min(res.depth, n_max) + 1):
        tp = tensor_over(as_bimodule(res.modules[nlev]), t, _validate=False)
        level_data.append(tp)
        dims[-nlev] = tp.bimodule.dim
        projs.append(tp.projection)
    for nlev in range(1, len(level_data)):
        d = res.diffs[nlev - 1].matrix
        src = level_data[nlev]
        tgt = level_data[nlev - 1]
        rows = []
        for idx in src.section_indices:
            x, y = divmod(idx, dn)
            vec = [f.zero()] * (d.ncols * dn)
            for x2 in range(d.ncols):
                v = d.entry(x, x2)
                if not f.is_zero(v):
                    vec[x2 * dn + y] = v
            img = Matrix.row_vector(f, vec).mul(tgt.projection)
            rows.append(list(img.row(0)))
        diffs[-nlev] = Matrix(f, rows, ncols=tgt.bimodule.dim)
    for n in range(len(level_data), n_max + 2):
        dims[-n] = 0
    return VectorSpaceComplex(f, dims, diffs), projs


def tor(m, n, n_max, resolve="left", cache=None, with_bases=False):
    """Tor_i^B(m, n) for i <= n_max; m a right B-module, n a left B-module.

    resolve="left" resolves m; resolve="right" resolves n over B^op.  Both
    give the same dimensions (balancedness), which the test suite asserts.
    """
    m_bim = as_bimodule(m)
    n_bim = n if isinstance(n, Bimodule) else as_bimodule(n)
    if m_bim.right_algebra != n_bim.left_algebra:
        raise AlgebraMismatch("tor: middle algebra mismatch")
    if resolve == "right":
        # Tor^B_i(M, N) = Tor^{B^op}_i(N, M) via the swapped bimodules
        return tor(n_bim.swap_sides(), m_bim.swap_sides(), n_max,
                   resolve="left", cache=cache, with_bases=with_bases)
    res = projective_resolution(m_bim.restrict_right(), n_max + 1, cache=cache)
    cx, _ = _tensor_complex(res, n_bim, n_max + 1)
    entries = []
    bases = {}
    for i in range(n_max + 1):
        entries.append((i, cx.cohomology_dim(-i)))
        if with_bases:
            bases[i] = cx.cohomology(-i)[3]
    return GradedDims(tuple(entries), bases)


@dataclass
class ExtData:
    """Ext groups with enough context to extract and multiply classes."""

    graded: GradedDims
    resolution: ProjectiveResolution
    target: RightModule
    hom: HomComplexData

    def cocycle_basis(self, nlev):
        """Representative cocycles of Ext^n as ModuleMaps P_n -> target."""
        comps = self.hom.components.get(nlev, [])
        reps = self.hom.complex.cohomology(nlev)[3]
        out = []
        for r in range(reps.nrows):
            out.append(ExtClass(nlev, self.resolution, self.target,
                                self._row_to_map(nlev, reps.rows[r])))
        return out

    def _row_to_map(self, nlev, row):
        comps = self.hom.components.get(nlev, [])
        f = self.target.field
        src = self.resolution.modules[nlev] if nlev <= self.resolution.depth else \
            zero_module(self.resolution.module.algebra)
        acc = Matrix.zeros(f, src.dim, self.target.dim)
        for p, maps, off, size in comps:
            for t, mp in enumerate(maps):
                c = row[off + t]
                if not f.is_zero(c):
                    acc = acc.add(mp.matrix.scale(c))
        return ModuleMap(src, self.target, acc, _validate=False)

    def class_coords(self, cls):
        """Coordinates of an ExtClass in the canonical cohomology basis."""
        nlev = cls.degree
        comps = self.hom.components.get(nlev, [])
        f = self.target.field
        total = self.hom.complex.dim(nlev)
        row = [f.zero()] * total
        for p, maps, off, size in comps:
            basis = hom_vec_basis(maps, maps[0].source.dim, maps[0].target.dim, f)
            vec = Matrix(f, [[cls.cocycle.matrix.entry(i, j)
                              for i in range(cls.cocycle.matrix.nrows)
                              for j in range(cls.cocycle.matrix.ncols)]],
                         ncols=basis.ncols)
            coords = express_in_row_basis(basis, vec)
            if coords is None:
                raise ValueError("cocycle outside hom space")
            for t in range(size):
                row[off + t] = coords.entry(0, t)
        return self.hom.complex.coords_on_cohomology(
            nlev, Matrix(f, [row], ncols=total))


@dataclass
class ExtClass:
    degree: int
    resolution: ProjectiveResolution
    target: RightModule
    cocycle: ModuleMap


def ext(m, n, n_max, cache=None, with_bases=False):
    """Ext^i_B(m, n) for i <= n_max, via a minimal resolution of m."""
    m_mod = m.restrict_right() if isinstance(m, Bimodule) else m
    n_mod = n.restrict_right() if isinstance(n, Bimodule) else n
    if m_mod.algebra != n_mod.algebra:
        raise AlgebraMismatch("ext: algebra mismatch")
    res = projective_resolution(m_mod, n_max + 1, cache=cache)
    hc = hom_complex(res.to_complex(), BoundedComplex.concentrated(n_mod))
    entries = []
    bases = {}
    for i in range(n_max + 1):
        entries.append((i, hc.complex.cohomology_dim(i)))
        if with_bases:
            bases[i] = hc.complex.cohomology(i)[3]
    return ExtData(GradedDims(tuple(entries), bases), res, n_mod, hc)


def yoneda_product(x, y, n_max=None, cache=None):
    """Composition product Ext^p(M, N) x Ext^q(N, L) -> Ext^{p+q}(M, L).

    x has target N and y lives over N: the product is "x followed by y".
    """
    if y.resolution.module != x.target:
        raise AlgebraMismatch("yoneda_product: x.target must be y's module")
    p, q = x.degree, y.degree
    res_m = x.resolution
    needed = p + q
    if res_m.depth < needed:
        if res_m.stabilized:
            from .complexes import _padded_resolution
            res_m = _padded_resolution(res_m, needed)
        else:
            raise DepthInsufficient(f"resolution depth {res_m.depth} < {needed}")
    res_n = y.resolution
    if res_n.depth < q:
        raise DepthInsufficient(f"target resolution depth {res_n.depth} < {q}")
    # lift the cocycle of x to a chain map shifted by p
    f = x.target.field
    levels = []
    prev = None
    for i in range(q + 1):
        src = res_m.modules[p + i] if p + i <= res_m.depth else None
        if src is None or src.dim == 0:
            src = src or zero_module(res_m.module.algebra)
            levels.append(ModuleMap(src, res_n.modules[i],
                                    Matrix.zeros(f, src.dim, res_n.modules[i].dim),
                                    _validate=False))
            prev = levels[-1]
            continue
        tgt = res_n.modules[i]
        if i == 0:
            rhs = x.cocycle.matrix
            post = res_n.augmentation.matrix
        else:
            rhs = res_m.diffs[p + i - 1].matrix.mul(prev.matrix)
            post = res_n.diffs[i - 1].matrix
        from .complexes import _solve_through
        sol = _solve_through(src, tgt, post, rhs)
        lvl = ModuleMap(src, tgt, sol, _validate=False)
        levels.append(lvl)
        prev = lvl
    comp = levels[q].matrix.mul(y.cocycle.matrix)
    src = levels[q].source
    return ExtClass(p + q, res_m, y.target,
                    ModuleMap(src, y.target, comp, _validate=False))


# --------------------------------------------------------------------------
# Hochschild (co)homology via resolutions.
# --------------------------------------------------------------------------


def hochschild_homology(a, n_max, cache=None, with_bases=False):
    """HH_n(A) = Tor_n over A^op (x) A of (A, A)."""
    if a.is_zero_algebra:
        return GradedDims(tuple((i, 0) for i in range(n_max + 1)))
    env = enveloping(a)
    m = regular_bimodule(a).as_right_module_over(env)
    t = regular_as_left_env_module(a, env)
    return tor(m, t, n_max, cache=cache, with_bases=with_bases)


def hochschild_cohomology(a, n_max, cache=None, with_bases=False):
    """HH^n(A) = Ext^n over A^op (x) A of (A, A)."""
    if a.is_zero_algebra:
        return GradedDims(tuple((i, 0) for i in range(n_max + 1)))
    env = enveloping(a)
    m = regular_bimodule(a).as_right_module_over(env)
    return ext(m, m, n_max, cache=cache, with_bases=with_bases).graded


def hochschild_dimension(a, cutoff, cache=None):
    """pd of A over A^op (x) A: Finite(d) if the minimal resolution stabilises
    at depth d <= cutoff, else AtLeast(cutoff+1) (with a periodicity witness
    when a syzygy repeats, which certifies infinite dimension)."""
    if a.is_zero_algebra:
        return PdVerdict("finite", 0)
    env = enveloping(a)
    m = regular_bimodule(a).as_right_module_over(env)
    res = projective_resolution(m, cutoff, cache=cache)
    if res.stabilized:
        return PdVerdict("finite", res.projective_dimension())
    return PdVerdict("at_least", cutoff + 1, periodic=res.periodicity)


def global_dimension(a, cutoff, cache=None):
    """Max over simple modules of their projective dimension, within cutoff."""
    if a.is_zero_algebra:
        return PdVerdict("finite", 0)
    if a.basic is None:
        from .algebra import discover_basic
        a = discover_basic(a)
    worst = 0
    periodic = None
    for s in simple_modules(a):
        res = projective_resolution(s, cutoff, cache=cache)
        if res.stabilized:
            worst = max(worst, res.projective_dimension())
        else:
            if res.periodicity is not None and periodic is None:
                periodic = res.periodicity
            return PdVerdict("at_least", cutoff + 1,
                             periodic=res.periodicity or periodic)
    return PdVerdict("finite", worst)


# --------------------------------------------------------------------------
# The truncated bar-complex oracle.
# --------------------------------------------------------------------------


def _int_columns(cols, f):
    """Clear denominators columnwise (rank is unchanged by column scaling)."""
    if f != QQ:
        return cols
    out = []
    for col in cols:
        den = 1
        for v in col.values():
            den = den * v.denominator // _gcd(den, v.denominator)
        out.append({r: int(v * den) for r, v in col.items()})
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def bar_oracle(a, n_max, budget=20000):
    """HH_* and HH^* from the truncated bar complex, independent of the
    resolution machinery.

    Chains: C_n = A^{(x)(n+1)} with the standard cyclic Hochschild boundary.
    Cochains: C^n = Hom_k(A^{(x)n}, A) with the Hochschild codifferential.
    """
    d = a.dim
    f = a.field
    if d == 0:
        z = tuple((i, 0) for i in range(n_max + 1))
        return GradedDims(z), GradedDims(z)
    for n in range(n_max + 2):
        if d ** (n + 1) > budget:
            raise BudgetExceeded(
                f"bar term dimension {d ** (n + 1)} exceeds budget {budget}")
    tab = a._sparse_table()

    def chain_diff_columns(n):
        # d_n: C_n -> C_{n-1}, one sparse column per basis tuple
        cols = []
        shape = [d] * (n + 1)
        idx = [0] * (n + 1)
        total = d ** (n + 1)
        for code in range(total):
            rem = code
            for pos in range(n, -1, -1):
                idx[pos] = rem % d
                rem //= d
            col = {}
            for t in range(n):
                ent = tab.get((idx[t], idx[t + 1]))
                if ent:
                    sign = 1 if t % 2 == 0 else -1
                    for k, c in ent:
                        merged = idx[:t] + [k] + idx[t + 2:]
                        rcode = 0
                        for v in merged:
                            rcode = rcode * d + v
                        col[rcode] = col.get(rcode, f.zero())
                        col[rcode] = f.add(col[rcode], f.mul(f.coerce(sign), c))
            ent = tab.get((idx[n], idx[0]))
            if ent:
                sign = 1 if n % 2 == 0 else -1
                for k, c in ent:
                    merged = [k] + idx[1:n]
                    rcode = 0
                    for v in merged:
                        rcode = rcode * d + v
                    col[rcode] = col.get(rcode, f.zero())
                    col[rcode] = f.add(col[rcode], f.mul(f.coerce(sign), c))
            cols.append({r: v for r, v in col.items() if not f.is_zero(v)})
        return cols

    def cochain_diff_columns(n):
        # delta^n: C^n -> C^{n+1}; C^n basis: (input tuple J, output k)
        cols = []
        total_in = d ** n
        for code in range(total_in * d):
            jcode, k = divmod(code, d)
            J = []
            rem = jcode
            for _ in range(n):
                J.append(rem % d)
                rem //= d
            J.reverse()
            col = {}

            def add(tup, out, coeff):
                rcode = 0
                for v in tup:
                    rcode = rcode * d + v
                rcode = rcode * d + out
                cur = col.get(rcode, f.zero())
                col[rcode] = f.add(cur, coeff)

            # term 0: a_1 . f(a_2..a_{n+1})
            for i in range(d):
                ent = tab.get((i, k))
                if ent:
                    for mkey, c in ent:
                        add([i] + J, mkey, c)
            # terms 1..n: f(a_1, ..., a_t a_{t+1}, ..., a_{n+1})
            for t in range(1, n + 1):
                sign = f.coerce(-1 if t % 2 == 1 else 1)
                jt = J[t - 1]
                for u in range(d):
                    for v in range(d):
                        ent = tab.get((u, v))
                        if not ent:
                            continue
                        for mkey, c in ent:
                            if mkey == jt:
                                tup = J[:t - 1] + [u, v] + J[t:]
                                add(tup, k, f.mul(sign, c))
            # last term: f(a_1..a_n) . a_{n+1}
            sign = f.coerce(-1 if (n + 1) % 2 == 1 else 1)
            for w in range(d):
                ent = tab.get((k, w))
                if ent:
                    for mkey, c in ent:
                        add(J + [w], mkey, f.mul(sign, c))
            cols.append({r: v for r, v in col.items() if not f.is_zero(v)})
        return cols

    chain_ranks = {}
    for n in range(1, n_max + 2):
        chain_ranks[n] = sparse_rank(_int_columns(chain_diff_columns(n), f), f)
    hh = []
    for n in range(n_max + 1):
        dim_cn = d ** (n + 1)
        hh.append((n, dim_cn - chain_ranks.get(n, 0) - chain_ranks.get(n + 1, 0)))

    cochain_ranks = {}
    for n in range(0, n_max + 1):
        cochain_ranks[n] = sparse_rank(_int_columns(cochain_diff_columns(n), f), f)
    hhc = []
    for n in range(n_max + 1):
        dim_cn = d ** (n + 1)   # d^n inputs x d outputs
        hhc.append((n, dim_cn - cochain_ranks.get(n, 0) - cochain_ranks.get(n - 1, 0)))
    return GradedDims(tuple(hh)), GradedDims(tuple(hhc))


# --------------------------------------------------------------------------
# Long exact sequences with explicit connecting maps.
# --------------------------------------------------------------------------


@dataclass
class LesTerm:
    label: str
    degree: int
    dim: int


@dataclass
class LesJoint:
    index: int               # joint at terms[index]
    composite_zero: bool
    rank_in: int
    rank_out: int
    exact: bool
    assessed: bool


@dataclass
class LesReport:
    terms: list
    maps: list               # maps[i]: terms[i] -> terms[i+1]
    joints: list
    exact: bool

    def summary(self):
        parts = []
        for t in self.terms:
            parts.append(f"{t.label}[{t.degree}]={t.dim}")
        return " -> ".join(parts)


def _snake_les(sub_cx, mid_cx, quot_cx, incs, prjs, degrees, labels,
               sections=None):
    """LES of cohomology of a degreewise-exact SES of vector-space complexes.

    incs/prjs: dicts degree -> matrices of the chain maps.  The connecting map
    lifts a quotient cycle through the (provided or solved) section, applies
    the middle differential, and pulls back along the inclusion.
    """
    f = mid_cx.field
    terms = []
    maps = []
    for pos, n in enumerate(degrees):
        hs = sub_cx.cohomology(n)
        hm = mid_cx.cohomology(n)
        hq = quot_cx.cohomology(n)
        terms.append(LesTerm(labels[0], n, hs[2]))
        terms.append(LesTerm(labels[1], n, hm[2]))
        terms.append(LesTerm(labels[2], n, hq[2]))
        maps.append(sub_cx.map_on_cohomology(mid_cx, incs, n))
        maps.append(mid_cx.map_on_cohomology(quot_cx, prjs, n))
        nxt = degrees[pos + 1] if pos + 1 < len(degrees) else None
        if nxt is not None:
            maps.append(_connecting(sub_cx, mid_cx, quot_cx, incs, prjs,
                                    n, nxt, sections))
    return terms, maps


def _connecting(sub_cx, mid_cx, quot_cx, incs, prjs, n, n_next, sections):
    """delta: H^n(quot) -> H^{n_next}(sub) by the snake chase."""
    f = mid_cx.field
    _, _, hq, reps = quot_cx.cohomology(n)
    h_next = sub_cx.cohomology(n_next)[2]
    if hq == 0:
        return Matrix.zeros(f, 0, h_next)
    prj = prjs.get(n)
    inc_next = incs.get(n_next)
    rows = []
    for r in range(reps.nrows):
        z = Matrix.row_vector(f, reps.rows[r])
        if sections is not None and sections.get(n) is not None:
            lift = z.mul(sections[n])
        else:
            sol = solve(prj.transpose(), reps.rows[r])
            if sol is None:
                raise ValueError("snake: projection not surjective on a cycle")
            lift = Matrix.row_vector(f, sol)
        db = lift.mul(mid_cx.diff(n))
        pulled = solve(inc_next.transpose(), db.row(0))
        if pulled is None:
            raise ValueError("snake: boundary not in the subcomplex")
        rows.append(list(pulled))
    pulled_mat = Matrix(f, rows, ncols=sub_cx.dim(n_next))
    return sub_cx.coords_on_cohomology(n_next, pulled_mat)


def _assemble_report(terms, maps, closed_start=False, closed_end=False):
    """Per-joint exactness: composite zero and rank(in) + rank(out) = dim.

    closed_start/closed_end declare that the sequence is genuinely bounded by
    zero there (so the missing map is the zero map, and the joint is still
    assessable); otherwise the boundary joint is marked unassessed (window
    truncation)."""
    joints = []
    all_ok = True
    for i, t in enumerate(terms):
        incoming = maps[i - 1] if i >= 1 else None
        outgoing = maps[i] if i < len(maps) else None
        if incoming is None and not closed_start:
            joints.append(LesJoint(i, True, 0, 0, True, False))
            continue
        if outgoing is None and not closed_end:
            joints.append(LesJoint(i, True, 0, 0, True, False))
            continue
        ri = rank(incoming) if incoming is not None else 0
        ro = rank(outgoing) if outgoing is not None else 0
        cz = True
        if incoming is not None and outgoing is not None:
            cz = incoming.mul(outgoing).is_zero()
        ex = cz and (ri + ro == t.dim)
        joints.append(LesJoint(i, cz, ri, ro, ex, True))
        if not ex:
            all_ok = False
    return LesReport(terms, maps, joints, all_ok)


def _verify_ses_of_complexes(sub_cx, mid_cx, quot_cx, incs, prjs, degrees):
    for n in degrees:
        inc = incs.get(n)
        prj = prjs.get(n)
        if inc is None or prj is None:
            if sub_cx.dim(n) or mid_cx.dim(n) or quot_cx.dim(n):
                raise InputNotExact(f"missing chain maps at degree {n}")
            continue
        if rank(inc) != sub_cx.dim(n):
            raise InputNotExact(f"inclusion not injective at degree {n}")
        if rank(prj) != quot_cx.dim(n):
            raise InputNotExact(f"projection not surjective at degree {n}")
        if not inc.mul(prj).is_zero():
            raise InputNotExact(f"composite nonzero at degree {n}")
        if sub_cx.dim(n) + quot_cx.dim(n) != mid_cx.dim(n):
            raise InputNotExact(f"dimensions do not add at degree {n}")


def les_from_ses(ses, t, variance, n_max, cache=None, labels=None):
    """Long exact sequence of a short exact sequence under a fixed module.

    variance: "tensor" (- (x) T, homological), "hom_covariant" (Hom(T, -)),
    or "hom_contravariant" (Hom(-, T)); connecting maps are computed by an
    explicit snake chase and exactness is verified joint by joint.
    """
    ses.validate()
    if variance == "tensor":
        return _les_tensor(ses, t, n_max, cache, labels)
    if variance == "hom_covariant":
        return _les_cov(ses, t, n_max, cache, labels)
    if variance == "hom_contravariant":
        return _les_contra(ses, t, n_max, cache, labels)
    raise ValueError(f"unknown variance {variance!r}")


def _les_tensor(ses, t, n_max, cache, labels):
    labels = labels or ("Tor(sub)", "Tor(mid)", "Tor(quot)")
    hs = horseshoe(ses, n_max + 1, cache=cache)
    t_bim = t if isinstance(t, Bimodule) else as_bimodule(t)
    f = t_bim.field
    dn = t_bim.dim
    sub_cx, _ = _tensor_complex(hs.res_sub, t_bim, n_max + 1)
    mid_cx, _ = _tensor_complex(hs.res_mid, t_bim, n_max + 1)
    quot_cx, _ = _tensor_complex(hs.res_quot, t_bim, n_max + 1)
    incs = {}
    prjs = {}
    secs = {}
    for n in range(n_max + 2):
        incs[-n] = _induced_on_tensor(hs.res_sub, hs.res_mid, hs.incl_mats[n], t_bim, n)
        prjs[-n] = _induced_on_tensor(hs.res_mid, hs.res_quot, hs.proj_mats[n], t_bim, n)
        secs[-n] = _induced_on_tensor(hs.res_quot, hs.res_mid, hs.split_sections[n],
                                      t_bim, n)
    degrees = [-n for n in range(n_max + 2)]
    _verify_ses_of_complexes(sub_cx, mid_cx, quot_cx, incs, prjs, degrees)
    # report Tor_{n_max} first, down to Tor_0; connecting maps go from
    # Tor_n(quot) to Tor_{n-1}(sub), i.e. from degree -n to -(n-1)
    degrees_desc = [-n for n in range(n_max, -1, -1)]
    terms, maps = _snake_les(sub_cx, mid_cx, quot_cx, incs, prjs,
                             degrees_desc, labels, sections=secs)
    return _assemble_report(terms, maps, closed_start=False, closed_end=True)


def _induced_on_tensor(res_a, res_b, block_mat, t_bim, n):
    """Matrix induced by a level map P^a_n -> P^b_n on the tensored quotients."""
    f = t_bim.field
    dn = t_bim.dim
    pa = res_a.modules[n].dim if n <= res_a.depth else 0
    pb = res_b.modules[n].dim if n <= res_b.depth else 0
    ta = tensor_over(as_bimodule(res_a.modules[n] if n <= res_a.depth else
                                 zero_module(res_a.module.algebra)), t_bim,
                     _validate=False)
    tb = tensor_over(as_bimodule(res_b.modules[n] if n <= res_b.depth else
                                 zero_module(res_b.module.algebra)), t_bim,
                     _validate=False)
    rows = []
    for idx in ta.section_indices:
        x, y = divmod(idx, dn)
        vec = [f.zero()] * (pb * dn)
        for x2 in range(pb):
            v = block_mat.entry(x, x2)
            if not f.is_zero(v):
                vec[x2 * dn + y] = v
        rows.append(list(Matrix.row_vector(f, vec).mul(tb.projection).row(0)))
    return Matrix(f, rows, ncols=tb.bimodule.dim)


def _hom_into_complex(res, t_mod, n_max):
    """Hom(P_*, T) as a cochain complex in degrees 0..n_max+1, plus bases."""
    f = t_mod.field
    dims = {}
    diffs = {}
    bases = []
    for n in range(n_max + 2):
        src = res.modules[n] if n <= res.depth else zero_module(res.module.algebra)
        maps = hom_space(src, t_mod) if src.dim else []
        bases.append(maps)
        dims[n] = len(maps)
    for n in range(n_max + 1):
        if dims[n] == 0:
            diffs[n] = Matrix.zeros(f, 0, dims[n + 1])
            continue
        rows = []
        d = res.diffs[n].matrix if n + 1 <= res.depth else None
        tgt_maps = bases[n + 1]
        tgt_basis = hom_vec_basis(tgt_maps,
                                  res.modules[n + 1].dim if n + 1 <= res.depth else 0,
                                  t_mod.dim, f) if tgt_maps else None
        for mp in bases[n]:
            if d is None or tgt_basis is None:
                rows.append([f.zero()] * dims[n + 1])
                continue
            comp = d.mul(mp.matrix)
            vec = Matrix(f, [[comp.entry(i, j) for i in range(comp.nrows)
                              for j in range(comp.ncols)]], ncols=tgt_basis.ncols)
            coords = express_in_row_basis(tgt_basis, vec)
            rows.append(list(coords.rows[0]))
        diffs[n] = Matrix(f, rows, ncols=dims[n + 1])
    return VectorSpaceComplex(f, dims, diffs), bases


def _les_contra(ses, t, n_max, cache, labels):
    labels = labels or ("Ext(quot,T)", "Ext(mid,T)", "Ext(sub,T)")
    t_mod = t.restrict_right() if isinstance(t, Bimodule) else t
    hs = horseshoe(ses, n_max + 1, cache=cache)
    f = t_mod.field
    quot_cx, quot_b = _hom_into_complex(hs.res_quot, t_mod, n_max)
    mid_cx, mid_b = _hom_into_complex(hs.res_mid, t_mod, n_max)
    sub_cx, sub_b = _hom_into_complex(hs.res_sub, t_mod, n_max)
    # contravariant: Hom(P'', T) -> Hom(P, T) -> Hom(P', T) via precomposition
    incs = {}
    prjs = {}
    secs = {}
    for n in range(n_max + 2):
        incs[n] = _precompose_matrix(hs.proj_mats[n], quot_b[n], mid_b[n], t_mod, f)
        prjs[n] = _precompose_matrix(hs.incl_mats[n], mid_b[n], sub_b[n], t_mod, f)
        secs[n] = _precompose_matrix(hs.split_retracts[n], sub_b[n], mid_b[n], t_mod, f)
    degrees = list(range(n_max + 2))
    _verify_ses_of_complexes(quot_cx, mid_cx, sub_cx, incs, prjs, degrees)
    terms, maps = _snake_les(quot_cx, mid_cx, sub_cx, incs, prjs,
                             list(range(n_max + 1)), labels, sections=secs)
    return _assemble_report(terms, maps, closed_start=True, closed_end=False)


def _precompose_matrix(level_map, src_maps, tgt_maps, t_mod, f):
    """Hom(X, T) -> Hom(Y, T): g |-> (level_map then g) expressed in bases."""
    if not src_maps:
        return Matrix.zeros(f, 0, len(tgt_maps))
    if not tgt_maps:
        return Matrix.zeros(f, len(src_maps), 0)
    tgt_dim = tgt_maps[0].source.dim
    tgt_basis = hom_vec_basis(tgt_maps, tgt_dim, t_mod.dim, f)
    rows = []
    for g in src_maps:
        comp = level_map.mul(g.matrix)
        vec = Matrix(f, [[comp.entry(i, j) for i in range(comp.nrows)
                          for j in range(comp.ncols)]], ncols=tgt_basis.ncols)
        coords = express_in_row_basis(tgt_basis, vec)
        rows.append(list(coords.rows[0]))
    return Matrix(f, rows, ncols=len(tgt_maps))


def _les_cov(ses, t, n_max, cache, labels):
    labels = labels or ("Ext(T,sub)", "Ext(T,mid)", "Ext(T,quot)")
    t_mod = t.restrict_right() if isinstance(t, Bimodule) else t
    res_t = projective_resolution(t_mod, n_max + 1, cache=cache)
    f = t_mod.field

    def hom_from_complex(target):
        dims = {}
        diffs = {}
        bases = []
        for n in range(n_max + 2):
            src = res_t.modules[n] if n <= res_t.depth else zero_module(t_mod.algebra)
            maps = hom_space(src, target) if src.dim and target.dim else []
            bases.append(maps)
            dims[n] = len(maps)
        for n in range(n_max + 1):
            if dims[n] == 0:
                diffs[n] = Matrix.zeros(f, 0, dims[n + 1])
                continue
            rows = []
            d = res_t.diffs[n].matrix if n + 1 <= res_t.depth else None
            tgt_maps = bases[n + 1]
            tgt_basis = hom_vec_basis(
                tgt_maps, res_t.modules[n + 1].dim if n + 1 <= res_t.depth else 0,
                target.dim, f) if tgt_maps else None
            for mp in bases[n]:
                if d is None or tgt_basis is None:
                    rows.append([f.zero()] * dims[n + 1])
                    continue
                comp = d.mul(mp.matrix)
                vec = Matrix(f, [[comp.entry(i, j) for i in range(comp.nrows)
                                  for j in range(comp.ncols)]], ncols=tgt_basis.ncols)
                coords = express_in_row_basis(tgt_basis, vec)
                rows.append(list(coords.rows[0]))
            diffs[n] = Matrix(f, rows, ncols=dims[n + 1])
        return VectorSpaceComplex(f, dims, diffs), bases

    sub_cx, sub_b = hom_from_complex(ses.sub)
    mid_cx, mid_b = hom_from_complex(ses.mid)
    quot_cx, quot_b = hom_from_complex(ses.quot)
    incs = {}
    prjs = {}
    for n in range(n_max + 2):
        incs[n] = _postcompose_matrix(ses.inclusion.matrix, sub_b[n], mid_b[n],
                                      ses.mid, f)
        prjs[n] = _postcompose_matrix(ses.projection.matrix, mid_b[n], quot_b[n],
                                      ses.quot, f)
    degrees = list(range(n_max + 2))
    _verify_ses_of_complexes(sub_cx, mid_cx, quot_cx, incs, prjs, degrees)
    terms, maps = _snake_les(sub_cx, mid_cx, quot_cx, incs, prjs,
                             list(range(n_max + 1)), labels, sections=None)
    return _assemble_report(terms, maps, closed_start=True, closed_end=False)


def _postcompose_matrix(post, src_maps, tgt_maps, tgt_module, f):
    if not src_maps:
        return Matrix.zeros(f, 0, len(tgt_maps))
    if not tgt_maps:
        return Matrix.zeros(f, len(src_maps), 0)
    src_dim = tgt_maps[0].source.dim
    tgt_basis = hom_vec_basis(tgt_maps, src_dim, tgt_module.dim, f)
    rows = []
    for g in src_maps:
        comp = g.matrix.mul(post)
        vec = Matrix(f, [[comp.entry(i, j) for i in range(comp.nrows)
                          for j in range(comp.ncols)]], ncols=tgt_basis.ncols)
        coords = express_in_row_basis(tgt_basis, vec)
        rows.append(list(coords.rows[0]))
    return Matrix(f, rows, ncols=len(tgt_maps))
