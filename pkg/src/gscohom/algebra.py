"""Finite-dimensional unital associative algebras by structure constants.

Elements are coordinate tuples of Fractions.  Everything is validated at
construction: associativity of the structure tensor, two-sidedness of the
unit, multiplicativity of homomorphisms, module axioms.  Algebras over the
dual numbers arise through `dual_extension`, which doubles the basis with
an eps-part (eps^2 = 0) so that all downstream linear algebra stays over Q.
"""

from fractions import Fraction

from .linalg import (RatMatrix, vec_add, vec_scale, unit_vector,
                     zero_vector)


class FinAlgebra:
    """A unital associative algebra of finite dimension over Q.

    mult[i][j] is the coordinate tuple of e_i * e_j.
    """

    def __init__(self, dim, mult, unit, name="A", check=True):
        self.dim = dim
        self.mult = tuple(tuple(tuple(Fraction(c) for c in mult[i][j])
                                for j in range(dim)) for i in range(dim))
        self.unit = tuple(Fraction(c) for c in unit)
        self.name = name
        assert len(self.unit) == dim
        if check:
            self._validate()

    def _validate(self):
        for i in range(self.dim):
            for j in range(self.dim):
                assert len(self.mult[i][j]) == self.dim
        fails = self.axiom_failures()
        assert not fails, "algebra axioms fail: %s" % (fails[:3],)

    def axiom_failures(self):
        """Unit and associativity defects, as a list of readable tuples."""
        fails = []
        for i in range(self.dim):
            ei = unit_vector(self.dim, i)
            if self.mul(self.unit, ei) != ei:
                fails.append(("unit_left", i))
            if self.mul(ei, self.unit) != ei:
                fails.append(("unit_right", i))
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    lhs = self.mul(self.mult[i][j], unit_vector(self.dim, k))
                    rhs = self.mul(unit_vector(self.dim, i), self.mult[j][k])
                    if lhs != rhs:
                        fails.append(("associativity", i, j, k))
        return fails

    def mul(self, x, y):
        out = zero_vector(self.dim)
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                out = vec_add(out, vec_scale(xi * yj, self.mult[i][j]))
        return out

    def basis(self):
        return [unit_vector(self.dim, i) for i in range(self.dim)]

    def left_mult_matrix(self, x):
        """Matrix of y -> x*y."""
        cols = [self.mul(x, e) for e in self.basis()]
        return RatMatrix.from_cols(cols, ambient=self.dim)

    def right_mult_matrix(self, x):
        """Matrix of y -> y*x."""
        cols = [self.mul(e, x) for e in self.basis()]
        return RatMatrix.from_cols(cols, ambient=self.dim)

    def mult_matrix(self):
        """Multiplication as a matrix A (x) A -> A (basis e_i (x) e_j,
        index i*dim + j)."""
        cols = []
        for i in range(self.dim):
            for j in range(self.dim):
                cols.append(self.mult[i][j])
        return RatMatrix.from_cols(cols, ambient=self.dim)

    def is_commutative(self):
        return all(self.mult[i][j] == self.mult[j][i]
                   for i in range(self.dim) for j in range(self.dim))

    def is_central(self, x):
        return all(self.mul(x, e) == self.mul(e, x) for e in self.basis())

    def two_sided_inverse(self, x):
        """The inverse of x, or None.  Solves x*y = 1 and checks y*x = 1."""
        y = self.left_mult_matrix(x).solve(self.unit)
        if y is None or self.mul(y, x) != self.unit:
            return None
        return y

    def unit_index(self):
        """Index i with unit = e_i, or None if the unit is not a basis vector."""
        nz = [i for i, c in enumerate(self.unit) if c != 0]
        if len(nz) == 1 and self.unit[nz[0]] == 1:
            return nz[0]
        return None

    def rebased_with_unit(self):
        """Return (algebra', change) with the unit a basis vector of algebra'.

        `change` maps new coordinates to old ones; it is the identity when
        no rebasing was needed.
        """
        if self.unit_index() is not None:
            return self, RatMatrix.identity(self.dim)
        pivot = next(i for i, c in enumerate(self.unit) if c != 0)
        cols = [self.unit if i == pivot else unit_vector(self.dim, i)
                for i in range(self.dim)]
        change = RatMatrix.from_cols(cols)
        inv = change.inverse()
        basis_new = [change.column(i) for i in range(self.dim)]
        mult = [[inv.apply(self.mul(basis_new[i], basis_new[j]))
                 for j in range(self.dim)] for i in range(self.dim)]
        unit = inv.apply(self.unit)
        return FinAlgebra(self.dim, mult, unit, name=self.name), change

    def opposite(self):
        """Same space, swapped multiplication."""
        mult = [[self.mult[j][i] for j in range(self.dim)] for i in range(self.dim)]
        return FinAlgebra(self.dim, mult, self.unit, name=self.name + "^op")

    def dual_extension(self, m1=None, name=None):
        """The dual-number algebra A[eps] with multiplication m + m1*eps.

        Returned as a plain Q-algebra of dimension 2*dim on basis
        (e_0..e_{d-1}, eps*e_0..eps*e_{d-1}).  m1 must be a normalized
        2-cochain tensor (m1[i][j] a coordinate tuple) or None for the
        trivial extension.
        """
        d = self.dim
        if m1 is None:
            m1 = [[zero_vector(d)] * d for _ in range(d)]
        zero = zero_vector(2 * d)

        def emb(v, eps_part=False):
            if eps_part:
                return zero_vector(d) + tuple(v)
            return tuple(v) + zero_vector(d)

        mult = [[zero] * (2 * d) for _ in range(2 * d)]
        for i in range(d):
            for j in range(d):
                top = self.mult[i][j]
                mult[i][j] = tuple(top) + tuple(m1[i][j])
                mult[i][j + d] = emb(top, eps_part=True)
                mult[i + d][j] = emb(top, eps_part=True)
                mult[i + d][j + d] = zero
        unit = emb(self.unit)
        return FinAlgebra(2 * d, mult, unit,
                          name=name or self.name + "[eps]", check=False)

    def __repr__(self):
        return "FinAlgebra(%s, dim %d)" % (self.name, self.dim)


class AlgebraHom:
    """A unital algebra morphism, stored as its matrix."""

    def __init__(self, source, target, matrix, check=True):
        self.source = source
        self.target = target
        self.matrix = matrix
        assert matrix.rows == target.dim and matrix.cols == source.dim
        if check:
            assert self.is_multiplicative() and self.is_unital()

    def is_unital(self):
        return self.matrix.apply(self.source.unit) == self.target.unit

    def is_multiplicative(self):
        for i in range(self.source.dim):
            ei = self.matrix.column(i)
            for j in range(self.source.dim):
                ej = self.matrix.column(j)
                if self.matrix.apply(self.source.mult[i][j]) != \
                        self.target.mul(ei, ej):
                    return False
        return True

    def __call__(self, x):
        return self.matrix.apply(x)

    def compose(self, other):
        """self after other."""
        assert other.target is self.source or other.target.dim == self.source.dim
        return AlgebraHom(other.source, self.target,
                          self.matrix @ other.matrix, check=False)

    def opposite(self):
        """The same linear map viewed A^op -> B^op."""
        return AlgebraHom(self.source.opposite(), self.target.opposite(),
                          self.matrix)

    @staticmethod
    def identity(a):
        return AlgebraHom(a, a, RatMatrix.identity(a.dim), check=False)

    def __repr__(self):
        return "AlgebraHom(%s -> %s)" % (self.source.name, self.target.name)


class FinModule:
    """A finite-dimensional right module, given by right-multiplication
    matrices act[j]: m -> m * e_j."""

    def __init__(self, algebra, dim, action, check=True):
        self.algebra = algebra
        self.dim = dim
        self.action = tuple(action)
        assert len(self.action) == algebra.dim
        for r in self.action:
            assert r.rows == dim and r.cols == dim
        if check:
            self._validate()

    def _validate(self):
        a = self.algebra
        unit_op = RatMatrix.zeros(self.dim, self.dim)
        for j, c in enumerate(a.unit):
            if c:
                unit_op = unit_op + self.action[j].scale(c)
        assert unit_op == RatMatrix.identity(self.dim), "action is not unital"
        for i in range(a.dim):
            for j in range(a.dim):
                lhs = self.action[j] @ self.action[i]   # m*e_i then *e_j
                rhs = RatMatrix.zeros(self.dim, self.dim)
                for k, c in enumerate(a.mult[i][j]):
                    if c:
                        rhs = rhs + self.action[k].scale(c)
                assert lhs == rhs, "action is not associative"

    def act(self, m, x):
        """m * x for x an algebra element."""
        out = zero_vector(self.dim)
        for j, c in enumerate(x):
            if c:
                out = vec_add(out, vec_scale(c, self.action[j].apply(m)))
        return out

    @staticmethod
    def free(algebra):
        """The algebra as a right module over itself."""
        return FinModule(algebra, algebra.dim,
                         [algebra.right_mult_matrix(e) for e in algebra.basis()],
                         check=False)

    @staticmethod
    def zero(algebra):
        return FinModule(algebra, 0, [RatMatrix.zeros(0, 0)] * algebra.dim,
                         check=False)

    def restrict_to_submodule(self, basis_vectors):
        """The submodule spanned by `basis_vectors` (must be action-stable),
        with the inclusion matrix."""
        incl = RatMatrix.from_cols(list(basis_vectors), ambient=self.dim)
        sub_dim = incl.cols
        action = []
        for r in self.action:
            cols = []
            for j in range(sub_dim):
                img = r.apply(incl.column(j))
                coords = incl.solve(img)
                assert coords is not None, "span is not action-stable"
                cols.append(coords)
            action.append(RatMatrix.from_cols(cols, ambient=sub_dim))
        return FinModule(self.algebra, sub_dim, action, check=False), incl

    def __repr__(self):
        return "FinModule(dim %d over %s)" % (self.dim, self.algebra.name)


class FinBimodule:
    """A bimodule: commuting left and right actions.

    left[i]: m -> e_i * m and right[j]: m -> m * e_j.  For Hochschild
    complexes over a map f: A -> B, use `FinBimodule.along` which makes B a
    bimodule over A through f.
    """

    def __init__(self, left_algebra, right_algebra, dim, left, right, check=True):
        self.left_algebra = left_algebra
        self.right_algebra = right_algebra
        self.dim = dim
        self.left = tuple(left)
        self.right = tuple(right)
        if check:
            self._validate()

    def _validate(self):
        FinModule(self.right_algebra, self.dim, self.right)
        # left action: check as a right module over the opposite algebra
        FinModule(self.left_algebra.opposite(), self.dim, self.left)
        for l in self.left:
            for r in self.right:
                assert l @ r == r @ l, "left and right actions do not commute"

    def left_act(self, x, m):
        out = zero_vector(self.dim)
        for i, c in enumerate(x):
            if c:
                out = vec_add(out, vec_scale(c, self.left[i].apply(m)))
        return out

    def right_act(self, m, x):
        out = zero_vector(self.dim)
        for j, c in enumerate(x):
            if c:
                out = vec_add(out, vec_scale(c, self.right[j].apply(m)))
        return out

    @staticmethod
    def along(f):
        """The target of f: A -> B as an A-bimodule through f."""
        a, b = f.source, f.target
        left = [b.left_mult_matrix(f(e)) for e in a.basis()]
        right = [b.right_mult_matrix(f(e)) for e in a.basis()]
        return FinBimodule(a, a, b.dim, left, right, check=False)

    @staticmethod
    def regular(a):
        return FinBimodule.along(AlgebraHom.identity(a))

    def is_symmetric(self):
        return all(self.left[i] == self.right[i]
                   for i in range(self.left_algebra.dim))

    def opposite(self):
        """M^op over A^op: left and right actions swapped."""
        return FinBimodule(self.right_algebra.opposite(),
                           self.left_algebra.opposite(),
                           self.dim, self.right, self.left, check=False)


class QuotientModule:
    """A right module presented as raw space / relations, with projection
    and section matrices kept for mapping in and out."""

    def __init__(self, module, project, section, relations):
        self.module = module          # FinModule on the quotient coordinates
        self.project = project        # raw -> quotient
        self.section = section        # quotient -> raw (a choice of lifts)
        self.relations = relations    # raw-space matrix whose columns span the kernel

    @property
    def dim(self):
        return self.module.dim


def _quotient_by_columns(raw_dim, rel_matrix):
    """Split Q^raw_dim by the column span of rel_matrix.

    Returns (project, section): project maps a raw vector to coordinates in
    a chosen complement basis, section embeds them back.
    """
    pivots_rel = rel_matrix.pivot_columns()
    rel_basis = [rel_matrix.column(c) for c in pivots_rel]
    combined = RatMatrix.hstack([
        RatMatrix.from_cols(rel_basis, ambient=raw_dim),
        RatMatrix.identity(raw_dim)])
    comp_idx = [c - len(rel_basis) for c in combined.pivot_columns()
                if c >= len(rel_basis)]
    section_cols = [unit_vector(raw_dim, i) for i in comp_idx]
    full = RatMatrix.from_cols(rel_basis + section_cols)
    inv = full.inverse()
    assert inv is not None
    q_dim = len(comp_idx)
    entries = {}
    for (i, j), v in inv.items():
        if i >= len(rel_basis):
            entries[(i - len(rel_basis), j)] = v
    project = RatMatrix(q_dim, raw_dim, entries)
    section = RatMatrix.from_cols(section_cols, ambient=raw_dim)
    return project, section


def tensor_over(module, f):
    """M (x)_A B for a right A-module M along f: A -> B.

    The quotient of M (x)_Q B by the span of  m*a (x) b  -  m (x) f(a)b,
    carrying the induced right B-action.  Returns a QuotientModule; the raw
    coordinate of m_i (x) e_b is i*dim(B) + b.
    """
    a, b = f.source, f.target
    raw = module.dim * b.dim
    rel_cols = []
    for i in range(module.dim):
        for ai in range(a.dim):
            ma = module.action[ai].column(i)          # m_i * e_ai
            fa = f(unit_vector(a.dim, ai))
            for bi in range(b.dim):
                col = [Fraction(0)] * raw
                for mi, c in enumerate(ma):
                    if c:
                        col[mi * b.dim + bi] += c
                fb = b.mul(fa, unit_vector(b.dim, bi))
                for bj, c in enumerate(fb):
                    if c:
                        col[i * b.dim + bj] -= c
                if any(col):
                    rel_cols.append(tuple(col))
    rel = RatMatrix.from_cols(rel_cols, ambient=raw)
    project, section = _quotient_by_columns(raw, rel)
    q_dim = project.rows
    action = []
    for bj in range(b.dim):
        big = RatMatrix.identity(module.dim).kron(
            b.right_mult_matrix(unit_vector(b.dim, bj)))
        action.append(project @ big @ section)
        assert (project @ big @ rel).is_zero(), \
            "induced action does not preserve relations"
    q_module = FinModule(b, q_dim, action, check=False)
    return QuotientModule(q_module, project, section, rel)


def pure_tensor_raw(m_vec, b_vec, b_dim):
    """Raw coordinates of m (x) b in the convention of tensor_over."""
    out = [Fraction(0)] * (len(m_vec) * b_dim)
    for i, c in enumerate(m_vec):
        if c:
            for j, d in enumerate(b_vec):
                if d:
                    out[i * b_dim + j] += c * d
    return tuple(out)


def module_hom_space(m, n):
    """Basis of Hom_A(M, N) (right module maps), as a list of matrices."""
    assert m.algebra.dim == n.algebra.dim
    rows = []
    # unknowns: H[i][j], i < n.dim, j < m.dim; constraint H R^M_a = R^N_a H
    nm, nn = m.dim, n.dim
    for a in range(m.algebra.dim):
        rm, rn = m.action[a], n.action[a]
        for i in range(nn):
            for j in range(nm):
                row = [Fraction(0)] * (nn * nm)
                for k in range(nm):
                    row[i * nm + k] += rm[k, j]
                for k in range(nn):
                    row[k * nm + j] -= rn[i, k]
                rows.append(row)
    if not rows:
        sol = [unit_vector(nn * nm, t) for t in range(nn * nm)]
    else:
        sol = RatMatrix.from_rows(rows).kernel().basis
    mats = []
    for v in sol:
        mats.append(RatMatrix(nn, nm, {(i, j): v[i * nm + j]
                                       for i in range(nn) for j in range(nm)}))
    return mats


def check_flat_epimorphism(f):
    """Diagnose whether f: A -> B is a right flat epimorphism of rings.

    Epimorphism: the multiplication B (x)_A B -> B is bijective (exact rank).
    Flatness: B is projective as a left A-module, detected by solving for an
    A-linear splitting s: B -> A^n of the evaluation surjection A^n -> B;
    for finite-dimensional modules projective and flat agree.
    """
    a, b = f.source, f.target
    # B as a right A-module through f
    b_right = FinModule(a, b.dim,
                        [b.right_mult_matrix(f(e)) for e in a.basis()],
                        check=False)
    t = tensor_over(b_right, f)     # B (x)_A B
    mult_cols = []
    for j in range(t.dim):
        raw = t.section.column(j)
        acc = zero_vector(b.dim)
        for idx, c in enumerate(raw):
            if c:
                acc = vec_add(acc, vec_scale(
                    c, b.mul(unit_vector(b.dim, idx // b.dim),
                             unit_vector(b.dim, idx % b.dim))))
        mult_cols.append(acc)
    mult_map = RatMatrix.from_cols(mult_cols, ambient=b.dim)
    is_epi = (t.dim == b.dim) and mult_map.is_invertible()

    # splitting s: B -> A^n of pi: A^n -> B, pi(x_1..x_n) = sum f(x_i) b_i,
    # both as left A-module maps (a . b = f(a) b on B)
    n = b.dim
    unknowns = n * a.dim * b.dim    # s[i][k][j]: coefficient of e_k in slot i for b_j
    rows = []
    # A-linearity: s(f(e_t) * e_j) = e_t . s(e_j) slotwise
    for t_i in range(a.dim):
        ft = f(unit_vector(a.dim, t_i))
        lmat = b.left_mult_matrix(ft)
        for j in range(b.dim):
            lhs_vec = lmat.column(j)      # f(e_t) * e_j in B
            for slot in range(n):
                for k in range(a.dim):
                    row = [Fraction(0)] * unknowns
                    for bj, c in enumerate(lhs_vec):
                        if c:
                            row[slot * a.dim * b.dim + k * b.dim + bj] += c
                    prod = a.mult[t_i]
                    for k2 in range(a.dim):
                        coeff = prod[k2][k]   # e_t * e_k2 coefficient at e_k
                        if coeff:
                            row[slot * a.dim * b.dim + k2 * b.dim + j] -= coeff
                    rows.append(row)
    # pi s = id: sum_slot f(s(e_j)_slot) * b_slot = e_j
    pi_rows = {}
    for j in range(b.dim):
        for out in range(b.dim):
            row = [Fraction(0)] * unknowns
            for slot in range(n):
                for k in range(a.dim):
                    fk = f(unit_vector(a.dim, k))
                    prod = b.mul(fk, unit_vector(b.dim, slot))
                    if prod[out]:
                        row[slot * a.dim * b.dim + k * b.dim + j] += prod[out]
            pi_rows[(j, out)] = row
    rhs = []
    all_rows = []
    for row in rows:
        all_rows.append(row)
        rhs.append(Fraction(0))
    for (j, out), row in sorted(pi_rows.items()):
        all_rows.append(row)
        rhs.append(Fraction(1) if j == out else Fraction(0))
    system = RatMatrix.from_rows(all_rows)
    is_flat = system.solve(tuple(rhs)) is not None

    return {
        "epimorphism": is_epi,
        "tensor_square_dim": t.dim,
        "flat": is_flat,
    }
