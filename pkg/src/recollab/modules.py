"""Finite-dimensional right modules and bimodules with exact action matrices.

Module elements are row vectors.  A right action is a homomorphism
rho: A -> End, acting by v |-> v @ rho(a); a left action is an
anti-homomorphism lam (lam(bc) = lam(c) @ lam(b)), acting by v |-> v @ lam(b).
A B-A-bimodule therefore is the same thing as a right module over
B^op (x) A via (b^op (x) a) |-> lam(b) @ rho(a), which is how bimodules are
fed to the resolution machinery.

The action-compatibility invariants are asserted at construction for every
module; silent convention drift is the classic bug in this business.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass

from .algebra import Algebra, Idempotent, ideal_and_quotient, corner, radical
from .errors import AlgebraMismatch, DimensionMismatch, Inconclusive
from .exactfield import (
    QQ,
    Matrix,
    check_same_field,
    express_in_row_basis,
    kernel_basis,
    rank,
    row_space_basis,
    rref,
    solve,
)


class RightModule:
    """Right module over a fixed algebra, given by one matrix per basis element."""

    def __init__(self, algebra, dim, action, _validate=True):
        self.algebra = algebra
        self.dim = dim
        self.field = algebra.field
        action = tuple(action)
        if len(action) != algebra.dim:
            raise DimensionMismatch("need one action matrix per algebra basis element")
        for m in action:
            if m.nrows != dim or m.ncols != dim:
                raise DimensionMismatch("action matrix shape != module dim")
        self.action = action
        if _validate:
            self._validate()

    def _validate(self):
        a = self.algebra
        if self.dim == 0:
            return
        ident = Matrix.identity(self.field, self.dim)
        u = self.action_of(a.unit)
        if u != ident:
            raise ValueError("rho(1) != id")
        for i in range(a.dim):
            for j in range(a.dim):
                lhs = self.action[i].mul(self.action[j])
                rhs = self.action_of(a.struct[i][j])
                if lhs != rhs:
                    raise ValueError(f"action incompatibility at basis pair ({i},{j})")

    def action_of(self, coords):
        """Matrix of v |-> v * x for x given by algebra coordinates."""
        f = self.field
        out = None
        for i, c in enumerate(coords):
            if f.is_zero(c):
                continue
            term = self.action[i].scale(c)
            out = term if out is None else out.add(term)
        if out is None:
            return Matrix.zeros(f, self.dim, self.dim)
        return out

    def is_zero(self):
        return self.dim == 0

    def __eq__(self, other):
        return (isinstance(other, RightModule) and self.algebra == other.algebra
                and self.dim == other.dim and self.action == other.action)

    def __hash__(self):
        return hash((self.algebra, self.dim, self.action))

    def __repr__(self):
        return f"RightModule(dim={self.dim} over dim-{self.algebra.dim} algebra)"

    def content_hash(self):
        h = hashlib.sha256()
        h.update(self.algebra.content_hash().encode())
        h.update(f"|mod{self.dim}".encode())
        for m in self.action:
            h.update(m.content_hash().encode())
        return h.hexdigest()


def zero_module(algebra):
    return RightModule(algebra, 0, tuple(Matrix(algebra.field, [], ncols=0)
                                         for _ in range(algebra.dim)), _validate=False)


def regular_module(a):
    """A as a right module over itself."""
    return RightModule(a, a.dim, a.basis_right_mats())


def dual_module(m):
    """The k-linear dual Hom_k(M, k) as a right module over the opposite
    algebra ((f.b^op)(x) = f(x.b)); sends projectives to injectives and back,
    which lets Ext be computed from either side without injective resolutions."""
    from .algebra import opposite
    aop = opposite(m.algebra)
    acts = tuple(mat.transpose() for mat in m.action)
    return RightModule(aop, m.dim, acts)


class ModuleMap:
    """A-linear map between right modules, as a dim(src) x dim(tgt) matrix."""

    def __init__(self, source, target, matrix, _validate=True):
        if source.algebra != target.algebra:
            raise AlgebraMismatch("module map across different algebras")
        if matrix.nrows != source.dim or matrix.ncols != target.dim:
            raise DimensionMismatch("module map shape")
        self.source = source
        self.target = target
        self.matrix = matrix
        if _validate:
            self._validate()

    def _validate(self):
        for g in self.source.algebra.generators():
            lhs = self.source.action_of(g).mul(self.matrix)
            rhs = self.matrix.mul(self.target.action_of(g))
            if lhs != rhs:
                raise ValueError("matrix does not intertwine the actions")

    def compose(self, other):
        """self followed by other."""
        if self.target != other.source:
            raise AlgebraMismatch("composition mismatch")
        return ModuleMap(self.source, other.target, self.matrix.mul(other.matrix),
                         _validate=False)

    def is_zero(self):
        return self.matrix.is_zero()

    def __repr__(self):
        return f"ModuleMap({self.source.dim} -> {self.target.dim})"


class Bimodule:
    """B-A-bimodule: commuting left B-action (anti-hom) and right A-action (hom)."""

    def __init__(self, left_algebra, right_algebra, dim, left_action, right_action,
                 _validate=True):
        check_same_field(left_algebra.field, right_algebra.field)
        self.left_algebra = left_algebra
        self.right_algebra = right_algebra
        self.field = left_algebra.field
        self.dim = dim
        self.left_action_matrices = tuple(left_action)
        self.right_action_matrices = tuple(right_action)
        if len(self.left_action_matrices) != left_algebra.dim:
            raise DimensionMismatch("left action count")
        if len(self.right_action_matrices) != right_algebra.dim:
            raise DimensionMismatch("right action count")
        self._env_module = None
        if _validate:
            self._validate()

    def _validate(self):
        if self.dim == 0:
            return
        # right action is a genuine right module
        self.restrict_right()
        # left action is a right module over the opposite algebra
        self.left_as_op_module()
        # the two actions commute
        for lm in self.left_action_matrices:
            for rm in self.right_action_matrices:
                if lm.mul(rm) != rm.mul(lm):
                    raise ValueError("left and right actions do not commute")

    def restrict_right(self):
        """Forget the left action: a right module over the right algebra."""
        return RightModule(self.right_algebra, self.dim, self.right_action_matrices)

    def left_as_op_module(self):
        """The left B-action viewed as a right module over B^op."""
        from .algebra import opposite
        return RightModule(opposite(self.left_algebra), self.dim, self.left_action_matrices)

    def left_action_of(self, coords):
        f = self.field
        out = None
        for i, c in enumerate(coords):
            if f.is_zero(c):
                continue
            term = self.left_action_matrices[i].scale(c)
            out = term if out is None else out.add(term)
        if out is None:
            return Matrix.zeros(f, self.dim, self.dim)
        return out

    def right_action_of(self, coords):
        f = self.field
        out = None
        for i, c in enumerate(coords):
            if f.is_zero(c):
                continue
            term = self.right_action_matrices[i].scale(c)
            out = term if out is None else out.add(term)
        if out is None:
            return Matrix.zeros(f, self.dim, self.dim)
        return out

    def as_right_module_over(self, env):
        """Right module over B^op (x) A (basis b_i^op (x) a_j, lexicographic)."""
        if self._env_module is not None and self._env_module[0] == env:
            return self._env_module[1]
        db = self.left_algebra.dim
        da = self.right_algebra.dim
        if env.dim != db * da:
            raise AlgebraMismatch("enveloping algebra dimension mismatch")
        mats = []
        for i in range(db):
            li = self.left_action_matrices[i]
            for j in range(da):
                mats.append(li.mul(self.right_action_matrices[j]))
        rm = RightModule(env, self.dim, mats)
        self._env_module = (env, rm)
        return rm

    def swap_sides(self):
        """The same space as an A^op-B^op-bimodule (for opposite transfers)."""
        from .algebra import opposite
        return Bimodule(opposite(self.right_algebra), opposite(self.left_algebra),
                        self.dim, self.right_action_matrices, self.left_action_matrices,
                        _validate=False)

    def __eq__(self, other):
        return (isinstance(other, Bimodule)
                and self.left_algebra == other.left_algebra
                and self.right_algebra == other.right_algebra
                and self.dim == other.dim
                and self.left_action_matrices == other.left_action_matrices
                and self.right_action_matrices == other.right_action_matrices)

    def __hash__(self):
        return hash((self.left_algebra, self.right_algebra, self.dim,
                     self.left_action_matrices, self.right_action_matrices))

    def __repr__(self):
        return (f"Bimodule({self.left_algebra.dim}|{self.dim}|{self.right_algebra.dim})")

    def content_hash(self):
        h = hashlib.sha256()
        h.update(self.left_algebra.content_hash().encode())
        h.update(self.right_algebra.content_hash().encode())
        h.update(f"|bim{self.dim}".encode())
        for m in self.left_action_matrices + self.right_action_matrices:
            h.update(m.content_hash().encode())
        return h.hexdigest()


_TRIVIAL_CACHE = {}


def trivial_algebra(field):
    """The ground field as a one-dimensional algebra (for one-sided modules)."""
    key = field
    if key not in _TRIVIAL_CACHE:
        _TRIVIAL_CACHE[key] = Algebra(field, [[(field.one(),)]], (field.one(),), labels=("1",))
    return _TRIVIAL_CACHE[key]


def as_bimodule(m):
    """Lift a right A-module to a k-A-bimodule (trivial left action)."""
    if isinstance(m, Bimodule):
        return m
    triv = trivial_algebra(m.field)
    ident = Matrix.identity(m.field, m.dim)
    return Bimodule(triv, m.algebra, m.dim, (ident,), m.action, _validate=False)


def regular_bimodule(a):
    """A as an A-A-bimodule."""
    return Bimodule(a, a, a.dim, a.basis_left_mats(), a.basis_right_mats())


# --------------------------------------------------------------------------
# Hom and tensor.
# --------------------------------------------------------------------------


def hom_space(m, n):
    """Deterministic basis of Hom_A(m, n) as a list of ModuleMaps."""
    if m.algebra != n.algebra:
        raise AlgebraMismatch("hom_space needs one algebra")
    f = m.field
    dm, dn = m.dim, n.dim
    if dm == 0 or dn == 0:
        return []
    rows = []
    zero = f.zero()
    for g in m.algebra.generators():
        gm = m.action_of(g)
        gn = n.action_of(g)
        for r in range(dm):
            for c in range(dn):
                row = [zero] * (dm * dn)
                for k in range(dm):
                    v = gm.entry(r, k)
                    if not f.is_zero(v):
                        row[k * dn + c] = f.add(row[k * dn + c], v)
                for l in range(dn):
                    v = gn.entry(l, c)
                    if not f.is_zero(v):
                        row[r * dn + l] = f.sub(row[r * dn + l], v)
                rows.append(row)
    ker = kernel_basis(Matrix(f, rows, ncols=dm * dn))
    out = []
    for j in range(ker.ncols):
        colv = ker.col(j)
        mat = Matrix(f, [colv[i * dn:(i + 1) * dn] for i in range(dm)], ncols=dn)
        out.append(ModuleMap(m, n, mat, _validate=False))
    return out


def hom_vec_basis(maps, dm, dn, field):
    """The hom basis flattened to rows (for coordinate computations)."""
    rows = []
    for mp in maps:
        rows.append([mp.matrix.entry(i, j) for i in range(dm) for j in range(dn)])
    return Matrix(field, rows, ncols=dm * dn)


@dataclass
class TensorProduct:
    """M (x)_B N together with the projection from the plain tensor space."""

    bimodule: Bimodule
    projection: Matrix          # (dim M * dim N) x dim(result)
    section_indices: tuple      # chosen (x, y) coset representatives


def tensor_over(m, n, _validate=True):
    """Tensor product over the middle algebra: (C-B-bim) (x)_B (B-A-bim) -> C-A-bim.

    Computed as the vector-space tensor product modulo the balancing relations
    (x.b (x) y - x (x) b.y), with the induced outer actions.
    """
    m = as_bimodule(m)
    n = as_bimodule(n)
    if m.right_algebra != n.left_algebra:
        raise AlgebraMismatch("tensor_over: middle algebra mismatch")
    f = m.field
    B = m.right_algebra
    dm, dn = m.dim, n.dim
    N = dm * dn
    if N == 0:
        bim = Bimodule(m.left_algebra, n.right_algebra, 0,
                       tuple(Matrix(f, [], ncols=0) for _ in range(m.left_algebra.dim)),
                       tuple(Matrix(f, [], ncols=0) for _ in range(n.right_algebra.dim)),
                       _validate=False)
        return TensorProduct(bim, Matrix(f, [[] for _ in range(N)], ncols=0), ())
    zero = f.zero()
    rows = []
    for g in B.generators():
        rm = m.right_action_of(g)
        ln = n.left_action_of(g)
        for x in range(dm):
            for y in range(dn):
                row = [zero] * N
                for x2 in range(dm):
                    v = rm.entry(x, x2)
                    if not f.is_zero(v):
                        row[x2 * dn + y] = f.add(row[x2 * dn + y], v)
                for y2 in range(dn):
                    v = ln.entry(y, y2)
                    if not f.is_zero(v):
                        row[x * dn + y2] = f.sub(row[x * dn + y2], v)
                rows.append(row)
    rel = Matrix(f, rows, ncols=N)
    R, pivots = rref(rel)
    relrows = R.take_rows(range(len(pivots)))
    pivset = set(pivots)
    free = [j for j in range(N) if j not in pivset]
    q = len(free)

    def project_vec(vec):
        v = list(vec)
        for i, pc in enumerate(pivots):
            c = v[pc]
            if not f.is_zero(c):
                rr = relrows.rows[i]
                v = [f.sub(a, f.mul(c, b)) for a, b in zip(v, rr)]
        return [v[j] for j in free]

    proj_rows = []
    for idx in range(N):
        vec = [zero] * N
        vec[idx] = f.one()
        proj_rows.append(project_vec(vec))
    projection = Matrix(f, proj_rows, ncols=q)

    def induced(mat_left, mat_right):
        # action on coset representative (x, y): act on x by mat_left (or y by
        # mat_right), then project
        out = []
        for t in free:
            x, y = divmod(t, dn)
            vec = [zero] * N
            if mat_left is not None:
                for x2 in range(dm):
                    v = mat_left.entry(x, x2)
                    if not f.is_zero(v):
                        vec[x2 * dn + y] = v
            else:
                for y2 in range(dn):
                    v = mat_right.entry(y, y2)
                    if not f.is_zero(v):
                        vec[x * dn + y2] = v
            out.append(project_vec(vec))
        return Matrix(f, out, ncols=q)

    lam = tuple(induced(m.left_action_matrices[i], None)
                for i in range(m.left_algebra.dim))
    rho = tuple(induced(None, n.right_action_matrices[j])
                for j in range(n.right_algebra.dim))
    bim = Bimodule(m.left_algebra, n.right_algebra, q, lam, rho, _validate=_validate)
    return TensorProduct(bim, projection, tuple(free))


def hom_module(u, m):
    """Hom_A(U, M) as a module: U a B-A-bimodule, M an A-module or C-A-bimodule.

    Right B-action (f.b)(x) = f(b.x); left C-action (c.f)(x) = c.f(x) when M
    is a bimodule.  Returns a Bimodule over (C, B), with C trivial when M is a
    plain right module.
    """
    u = u if isinstance(u, Bimodule) else as_bimodule(u)
    mbim = m if isinstance(m, Bimodule) else as_bimodule(m)
    if u.right_algebra != mbim.right_algebra:
        raise AlgebraMismatch("hom_module: right algebras differ")
    maps = hom_space(u.restrict_right(), mbim.restrict_right())
    h = len(maps)
    f = u.field
    du, dm = u.dim, mbim.dim
    basis = hom_vec_basis(maps, du, dm, f)

    def express(mat):
        row = Matrix(f, [[mat.entry(i, j) for i in range(du) for j in range(dm)]],
                     ncols=du * dm)
        coords = express_in_row_basis(basis, row)
        if coords is None:
            raise ValueError("hom space not closed under action")
        return coords.rows[0]

    lam = []
    for c in range(mbim.left_algebra.dim):
        lc = mbim.left_action_matrices[c]
        lam.append(Matrix(f, [express(mp.matrix.mul(lc)) for mp in maps], ncols=h))
    rho = []
    for b in range(u.left_algebra.dim):
        lb = u.left_action_matrices[b]
        rho.append(Matrix(f, [express(lb.mul(mp.matrix)) for mp in maps], ncols=h))
    return Bimodule(mbim.left_algebra, u.left_algebra, h, tuple(lam), tuple(rho))


# --------------------------------------------------------------------------
# Kernels, cokernels, covers and projectivity.
# --------------------------------------------------------------------------


@dataclass
class KernelCokernel:
    kernel: RightModule
    cokernel: RightModule
    inclusion: ModuleMap
    projection: ModuleMap


def submodule_from_rows(m, rows_matrix):
    """The submodule spanned by the given rows, with induced action."""
    basis = row_space_basis(rows_matrix)
    k = basis.nrows
    acts = []
    for i in range(m.algebra.dim):
        img = basis.mul(m.action[i])
        coords = express_in_row_basis(basis, img)
        if coords is None:
            raise ValueError("rows do not span a submodule")
        acts.append(coords)
    sub = RightModule(m.algebra, k, acts)
    incl = ModuleMap(sub, m, basis, _validate=False)
    return sub, incl


def quotient_by_rows(m, rows_matrix):
    """The quotient of m by the submodule spanned by the rows."""
    f = m.field
    R, pivots = rref(rows_matrix)
    rows = R.take_rows(range(len(pivots)))
    pivset = set(pivots)
    free = [j for j in range(m.dim) if j not in pivset]
    q = len(free)

    def project_vec(vec):
        v = list(vec)
        for i, pc in enumerate(pivots):
            c = v[pc]
            if not f.is_zero(c):
                rr = rows.rows[i]
                v = [f.sub(a, f.mul(c, b)) for a, b in zip(v, rr)]
        return [v[j] for j in free]

    proj = Matrix(f, [project_vec([f.one() if t == i else f.zero() for t in range(m.dim)])
                      for i in range(m.dim)], ncols=q)
    acts = []
    for i in range(m.algebra.dim):
        rowsq = []
        for t in free:
            vec = m.action[i].row(t)
            rowsq.append(project_vec(vec))
        acts.append(Matrix(f, rowsq, ncols=q))
    quot = RightModule(m.algebra, q, acts)
    pm = ModuleMap(m, quot, proj, _validate=False)
    return quot, pm


def kernel_cokernel(fmap):
    """Kernel and cokernel of a module map, with inclusion and projection."""
    m, n = fmap.source, fmap.target
    ker_cols = kernel_basis(fmap.matrix.transpose())
    ker_rows = ker_cols.transpose()
    kernel, incl = submodule_from_rows(m, ker_rows) if ker_rows.nrows else (
        zero_module(m.algebra), ModuleMap(zero_module(m.algebra), m,
                                          Matrix(m.field, [], ncols=m.dim), _validate=False))
    image_rows = fmap.matrix
    coker, proj = quotient_by_rows(n, image_rows)
    return KernelCokernel(kernel, coker, incl, proj)


def top_of(m):
    """(dim of top, row basis of M*rad, free coordinate indices lifting the top)."""
    a = m.algebra
    rad = radical(a)
    rows = []
    for r in rad.rows:
        act = m.action_of(r)
        for i in range(m.dim):
            rows.append(act.row(i))
    mrad = row_space_basis(Matrix(m.field, rows, ncols=m.dim))
    R, pivots = rref(mrad)
    pivset = set(pivots)
    free = tuple(j for j in range(m.dim) if j not in pivset)
    return len(free), mrad, free


@dataclass
class FreeCover:
    free: RightModule
    surjection: ModuleMap
    generator_count: int


def free_cover(m):
    """Free cover A^r -> m with r the minimal generator count dim(m / m rad)."""
    a = m.algebra
    r, _, free_idx = top_of(m)
    if r == 0:
        z = zero_module(a)
        return FreeCover(z, ModuleMap(z, m, Matrix(m.field, [], ncols=m.dim),
                                      _validate=False), 0)
    reg = regular_module(a)
    blocks = [reg] * r
    F = direct_sum(blocks)
    rows = []
    for t in range(r):
        g = free_idx[t]
        for i in range(a.dim):
            # basis element b_i of copy t maps to (lift of top basis vector t) * b_i
            rows.append([m.action[i].entry(g, j) for j in range(m.dim)])
    mat = Matrix(m.field, rows, ncols=m.dim)
    if rank(mat) != m.dim:
        raise ValueError("free cover failed to surject")
    surj = ModuleMap(F, m, mat, _validate=False)
    return FreeCover(F, surj, r)


def direct_sum(mods):
    """Block-diagonal direct sum of right modules over one algebra."""
    if not mods:
        raise ValueError("empty direct sum needs an algebra")
    a = mods[0].algebra
    f = mods[0].field
    for m in mods:
        if m.algebra != a:
            raise AlgebraMismatch("direct sum across algebras")
    total = sum(m.dim for m in mods)
    acts = []
    for i in range(a.dim):
        rows = []
        off = 0
        for m in mods:
            for rr in range(m.dim):
                row = [f.zero()] * total
                src = m.action[i].row(rr)
                for j, v in enumerate(src):
                    row[off + j] = v
                rows.append(row)
            off += m.dim
        acts.append(Matrix(f, rows, ncols=total))
    return RightModule(a, total, acts, _validate=False)


_VERTEX_PROJ_CACHE = {}


def vertex_projective(a, v_index):
    """e_v A as a right module, with its subspace basis inside A (cached)."""
    key = (a, v_index)
    if key in _VERTEX_PROJ_CACHE:
        return _VERTEX_PROJ_CACHE[key]
    ev = a.basic.idempotent_coords[v_index]
    span = [a.multiply(ev, _unit(a, i)) for i in range(a.dim)]
    basis = row_space_basis(Matrix(a.field, span, ncols=a.dim))
    acts = []
    for i in range(a.dim):
        img = basis.mul(a.basis_right_mats()[i])
        acts.append(express_in_row_basis(basis, img))
    mod = RightModule(a, basis.nrows, acts)
    _VERTEX_PROJ_CACHE[key] = (mod, basis)
    return mod, basis


def _unit(a, i):
    return tuple(a.field.one() if k == i else a.field.zero() for k in range(a.dim))


@dataclass
class ProjectiveCover:
    module: RightModule          # the cover P = (+) e_v A
    surjection: ModuleMap        # P -> m
    summands: tuple              # vertex index per summand
    offsets: tuple               # starting coordinate of each summand inside P


def projective_cover(m):
    """Minimal projective cover built from the primitive idempotent decomposition."""
    from .errors import UnsupportedField
    a = m.algebra
    if a.basic is None:
        raise UnsupportedField("projective covers need the basic structure "
                               "(quiver presentation or discovery over Q)")
    f = m.field
    rtop, mrad, _ = top_of(m)
    if rtop == 0:
        z = zero_module(a)
        return ProjectiveCover(z, ModuleMap(z, m, Matrix(f, [], ncols=m.dim),
                                            _validate=False), (), ())
    R, pivots = rref(mrad)
    radrows = R.take_rows(range(len(pivots)))

    def project_top(vec):
        v = list(vec)
        for i, pc in enumerate(pivots):
            c = v[pc]
            if not f.is_zero(c):
                rr = radrows.rows[i]
                v = [f.sub(x, f.mul(c, y)) for x, y in zip(v, rr)]
        return v

    pivset = set(pivots)
    free = [j for j in range(m.dim) if j not in pivset]
    chosen = []       # (generator row in M, vertex index)
    top_rows = []
    cur_rank = 0
    for v_idx in range(len(a.basic.idempotent_coords)):
        ev = a.basic.idempotent_coords[v_idx]
        act = m.action_of(ev)
        for t in free:
            cand = act.row(t)  # lift y_t * e_v
            tp = project_top(cand)
            trial = top_rows + [tp]
            rk = rank(Matrix(f, trial, ncols=m.dim))
            if rk > cur_rank:
                top_rows.append(tp)
                cur_rank = rk
                chosen.append((tuple(cand), v_idx))
                if cur_rank == rtop:
                    break
        if cur_rank == rtop:
            break
    if cur_rank != rtop:
        raise ValueError("top not covered by idempotent weight spaces")
    summands = []
    offsets = []
    blocks = []
    bases = []
    off = 0
    for gen, v_idx in chosen:
        mod, basis = vertex_projective(a, v_idx)
        summands.append(v_idx)
        offsets.append(off)
        blocks.append(mod)
        bases.append(basis)
        off += mod.dim
    P = direct_sum(blocks)
    rows = []
    for (gen, v_idx), basis in zip(chosen, bases):
        for rr in range(basis.nrows):
            w = basis.rows[rr]           # an element e_v x of A
            img = Matrix.row_vector(f, gen).mul(m.action_of(w))
            rows.append(img.row(0))
    surj = ModuleMap(P, m, Matrix(f, rows, ncols=m.dim), _validate=False)
    if rank(surj.matrix) != m.dim:
        raise ValueError("projective cover failed to surject")
    P_cover = ProjectiveCover(P, surj, tuple(summands), tuple(offsets))
    return P_cover


def is_projective(m):
    """True iff the minimal cover has the same dimension as m."""
    if m.dim == 0:
        return True
    return projective_cover(m).module.dim == m.dim


# --------------------------------------------------------------------------
# Isomorphism testing.
# --------------------------------------------------------------------------


class IsoResult:
    """Truth value plus a verified witness when isomorphic."""

    def __init__(self, verdict, witness=None):
        self.verdict = verdict
        self.witness = witness

    def __bool__(self):
        return self.verdict


def iso_test(m, n, cap=200_000):
    """Decide whether two modules over one algebra are isomorphic.

    Enumerates a deterministic evaluation grid for the determinant polynomial
    on the Hom space (complete for grids of side dim+1 over Q or over F_p with
    p > dim; full small-field enumeration otherwise).  Raises Inconclusive
    only when the grid is cut off by the evaluation cap.
    """
    if m.algebra != n.algebra:
        raise AlgebraMismatch("iso_test needs one algebra")
    if m.dim != n.dim:
        return IsoResult(False)
    d = m.dim
    if d == 0:
        return IsoResult(True, Matrix(m.field, [], ncols=0))
    maps = hom_space(m, n)
    h = len(maps)
    if h == 0:
        return IsoResult(False)
    f = m.field
    if f == QQ:
        side = d + 1
        values = [f.coerce(t) for t in range(side)]
    else:
        side = min(f.p, d + 1)
        values = [f.coerce(t) for t in range(side)]
    total = side ** h
    count = 0
    for combo in itertools.product(values, repeat=h):
        count += 1
        if count > cap:
            raise Inconclusive(f"iso_test grid cap {cap} reached ({total} points needed)")
        acc = None
        for c, mp in zip(combo, maps):
            if f.is_zero(c):
                continue
            term = mp.matrix.scale(c)
            acc = term if acc is None else acc.add(term)
        if acc is None:
            continue
        if rank(acc) == d:
            return IsoResult(True, acc)
    return IsoResult(False)


# --------------------------------------------------------------------------
# Canonical bimodules attached to an idempotent.
# --------------------------------------------------------------------------


@dataclass
class CanonicalBimodules:
    algebra: Algebra
    idempotent: Idempotent
    corner_algebra: Algebra
    corner_embedding: Matrix
    quotient_algebra: Algebra
    quotient_projection: Matrix
    regular: Bimodule            # A as A-A-bimodule
    ae: Bimodule                 # Ae as A-(eAe)-bimodule
    ea: Bimodule                 # eA as (eAe)-A-bimodule
    aea: Bimodule                # AeA as A-A-bimodule
    quotient: Bimodule           # A/AeA as A-A-bimodule
    ae_rows: Matrix              # basis of Ae inside A
    ea_rows: Matrix
    aea_rows: Matrix
    inclusion: Matrix            # AeA -> A on the chosen bases
    projection: Matrix           # A -> A/AeA on the chosen bases
    section_cols: tuple          # A-basis indices representing quotient classes
    ideal_is_whole: bool


def canonical_bimodules(a, e):
    """A, Ae, eA, AeA and A/AeA with their natural bimodule structures."""
    f = a.field
    ec = e.coords
    iq = ideal_and_quotient(a, e)
    cd = corner(a, e, with_embedding=True)
    eAe, emb = cd.algebra, cd.embedding
    if eAe.basic is None and f == QQ and eAe.dim:
        from .algebra import discover_basic
        eAe = discover_basic(eAe)
    L = a.basis_left_mats()
    R = a.basis_right_mats()
    regular = Bimodule(a, a, a.dim, L, R, _validate=False)

    def sub_bimodule(rows, left_alg, right_alg, left_elems, right_elems):
        lam = []
        for x in left_elems:
            img = rows.mul(a.left_mult_matrix(x))
            lam.append(express_in_row_basis(rows, img))
        rho = []
        for x in right_elems:
            img = rows.mul(a.right_mult_matrix(x))
            rho.append(express_in_row_basis(rows, img))
        return Bimodule(left_alg, right_alg, rows.nrows, tuple(lam), tuple(rho))

    basis_elems = [_unit(a, i) for i in range(a.dim)]
    corner_elems = [emb.rows[i] for i in range(emb.nrows)]

    ae_rows = row_space_basis(a.right_mult_matrix(ec))
    ea_rows = row_space_basis(a.left_mult_matrix(ec))
    ae = sub_bimodule(ae_rows, a, eAe, basis_elems, corner_elems)
    ea = sub_bimodule(ea_rows, eAe, a, corner_elems, basis_elems)
    aea = sub_bimodule(iq.ideal_rows, a, a, basis_elems, basis_elems)

    quot_alg = iq.quotient
    nq = quot_alg.dim
    proj = iq.projection
    if nq:
        sec = [iq.section_cols[t] for t in range(nq)]
        lam_q = []
        rho_q = []
        for i in range(a.dim):
            rows_l = []
            rows_r = []
            for t in sec:
                rows_l.append(list(Matrix.row_vector(f, _unit(a, t)).mul(L[i]).mul(proj).row(0)))
                rows_r.append(list(Matrix.row_vector(f, _unit(a, t)).mul(R[i]).mul(proj).row(0)))
            lam_q.append(Matrix(f, rows_l, ncols=nq))
            rho_q.append(Matrix(f, rows_r, ncols=nq))
        quotient = Bimodule(a, a, nq, tuple(lam_q), tuple(rho_q), _validate=False)
    else:
        quotient = Bimodule(a, a, 0,
                            tuple(Matrix(f, [], ncols=0) for _ in range(a.dim)),
                            tuple(Matrix(f, [], ncols=0) for _ in range(a.dim)),
                            _validate=False)
    return CanonicalBimodules(
        algebra=a, idempotent=e,
        corner_algebra=eAe, corner_embedding=emb,
        quotient_algebra=quot_alg, quotient_projection=proj,
        regular=regular, ae=ae, ea=ea, aea=aea, quotient=quotient,
        ae_rows=ae_rows, ea_rows=ea_rows, aea_rows=iq.ideal_rows,
        inclusion=iq.ideal_rows, projection=proj,
        section_cols=iq.section_cols,
        ideal_is_whole=iq.ideal_is_whole,
    )


def simple_modules(a):
    """The simple right modules, one per primitive idempotent (split basic case)."""
    if a.basic is None:
        from .errors import UnsupportedField
        raise UnsupportedField("simples need the basic structure "
                               "(quiver presentation or discovery over Q)")
    f = a.field
    rad = radical(a)
    out = []
    for t, ev in enumerate(a.basic.idempotent_coords):
        stack = Matrix(f, [list(ev)] + [list(r) for r in rad.rows], ncols=a.dim)
        acts = []
        for i in range(a.dim):
            x = a.multiply(a.multiply(ev, _unit(a, i)), ev)
            coords = solve(stack.transpose(), x)
            if coords is None:
                raise ValueError("simple action not defined")
            acts.append(Matrix(f, [[coords[0]]], ncols=1))
        out.append(RightModule(a, 1, acts))
    return out
