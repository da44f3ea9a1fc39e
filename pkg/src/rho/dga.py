"""Differential graded algebras with exact degreewise tables.

Two presentations exist.  A `FreeDGA` is a free graded-commutative algebra
with the differential given on generators; `materialize` expands it up to a
degree cap into a `TabularDGA`, which stores an ordered basis per total
degree, sparse product tables and dense differential matrices.  Everything
downstream (cohomology, morphisms, minimal models, Hodge machinery) consumes
the tabular form.

A tabular DGA with `complete=True` is genuinely zero above its top degree,
so no verdict needs a cap qualifier; otherwise results are only claimed up
to the cap.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .errors import PreconditionError
from .freealg import FreeAlgebra, Polynomial


class TabularDGA:
    """Finite-dimensional slice of a DGA as explicit degreewise tables.

    labels[n]    ordered basis labels of total degree n (0 <= n <= cap)
    bidegrees[n] parallel list of (p, q) pairs; pure-graded input uses (n, 0)
    products     sparse: (n, i, m, j) -> {k: scalar} in degree n+m
    diff[n]      matrix of d: degree n -> n+1   (rows = target basis)
    """

    def __init__(self, field, cap, labels, bidegrees, products, diff,
                 unit_index=0, complete=False):
        self.field = field
        self.cap = cap
        self.labels = {n: list(labels.get(n, [])) for n in range(cap + 1)}
        self.bidegrees = {
            n: list(bidegrees.get(n, [(n, 0)] * len(self.labels[n])))
            for n in range(cap + 1)
        }
        self._products = products
        self.diff = diff
        self.unit_index = unit_index
        self.complete = complete
        if not self.labels[0]:
            raise PreconditionError("degree 0 must contain the unit")
        for n in range(cap + 1):
            if len(self.bidegrees[n]) != len(self.labels[n]):
                raise ValueError(f"bidegree list mismatch in degree {n}")

    # -- basic geometry -------------------------------------------------------

    def dim(self, n: int) -> int:
        if n < 0:
            return 0
        if n > self.cap:
            if self.complete:
                return 0
            raise PreconditionError(f"degree {n} beyond cap {self.cap}")
        return len(self.labels[n])

    def degrees(self):
        return range(self.cap + 1)

    @property
    def total_dim(self):
        return sum(len(v) for v in self.labels.values())

    def zero_vec(self, n):
        return [self.field.zero] * self.dim(n)

    def unit_vec(self):
        v = self.zero_vec(0)
        v[self.unit_index] = self.field.one
        return v

    def basis_vec(self, n, i):
        v = self.zero_vec(n)
        v[i] = self.field.one
        return v

    # -- multiplication -------------------------------------------------------

    def product_entry(self, n, i, m, j):
        """Sparse product of basis elements: dict index -> scalar in degree n+m."""
        if n + m > self.cap:
            if self.complete:
                return {}
            raise PreconditionError("product lands beyond the cap")
        return self._products.get((n, i, m, j), {})

    def mul(self, n, u, m, v):
        """Product of homogeneous coordinate vectors; result in degree n+m."""
        if n + m > self.cap and self.complete:
            return []
        out = self.zero_vec(n + m)
        for i, ci in enumerate(u):
            if not ci:
                continue
            for j, cj in enumerate(v):
                if not cj:
                    continue
                for k, c in self.product_entry(n, i, m, j).items():
                    out[k] = out[k] + ci * cj * c
        return out

    def power(self, n, v, e):
        acc_deg, acc = 0, self.unit_vec()
        for _ in range(e):
            acc = self.mul(acc_deg, acc, n, v)
            acc_deg += n
        return acc_deg, acc

    # -- differential -----------------------------------------------------------

    def d_matrix(self, n):
        if n >= self.cap:
            if not self.complete:
                raise PreconditionError(f"no differential out of degree {n}")
            rows = self.dim(n + 1) if n + 1 <= self.cap else 0
            cols = self.dim(n) if n <= self.cap else 0
            return linalg.zeros(rows, cols, self.field)
        return self.diff.get(n) or linalg.zeros(self.dim(n + 1), self.dim(n), self.field)

    def has_d(self, n):
        return n < self.cap or self.complete

    def d_vec(self, n, v):
        return linalg.mat_vec(self.d_matrix(n), v, self.field)

    def is_zero_differential(self):
        return all(linalg.is_zero_mat(self.d_matrix(n))
                   for n in range(self.cap if not self.complete else self.cap + 1)
                   if n < self.cap or self.complete)

    def with_differential(self, diff):
        """Same underlying algebra, different differential matrices."""
        other = TabularDGA.__new__(TabularDGA)
        other.field = self.field
        other.cap = self.cap
        other.labels = self.labels
        other.bidegrees = self.bidegrees
        other._products = self._products
        other.diff = diff
        other.unit_index = self.unit_index
        other.complete = self.complete
        return other

    def shuffled(self, perms):
        """Re-order the basis in each degree by the given permutations (tests)."""
        labels = {}
        bidegrees = {}
        inv = {}
        for n in self.degrees():
            perm = perms.get(n, list(range(self.dim(n))))
            labels[n] = [self.labels[n][p] for p in perm]
            bidegrees[n] = [self.bidegrees[n][p] for p in perm]
            inv[n] = {p: k for k, p in enumerate(perm)}
        products = {}
        for (n, i, m, j), vec in self._products.items():
            products[(n, inv[n][i], m, inv[m][j])] = {
                inv[n + m][k]: c for k, c in vec.items()
            }
        diff = {}
        for n, mat in self.diff.items():
            if n + 1 > self.cap:
                continue
            new = linalg.zeros(self.dim(n + 1), self.dim(n), self.field)
            for r in range(self.dim(n + 1)):
                for c in range(self.dim(n)):
                    new[inv[n + 1][r]][inv[n][c]] = mat[r][c]
            diff[n] = new
        return TabularDGA(self.field, self.cap, labels, bidegrees, products, diff,
                          unit_index=inv[0][self.unit_index], complete=self.complete)


class FreeDGA:
    """Free presentation: generators plus differential values on generators."""

    def __init__(self, field, generators, d_values=None, cap=None):
        self.field = field
        self.algebra = FreeAlgebra(field, generators, cap=None)
        self.cap = cap
        self.d_values = {}
        for name, poly in (d_values or {}).items():
            if name not in self.algebra.by_name:
                raise ValueError(f"differential on unknown generator {name!r}")
            self.d_values[name] = poly

    def d_gen(self, name) -> Polynomial:
        return self.d_values.get(name, Polynomial.zero(self.algebra))

    def d_poly(self, poly: Polynomial) -> Polynomial:
        """Leibniz extension of the generator differential."""
        alg = self.algebra
        out = Polynomial.zero(alg)
        for mono, coef in poly.terms.items():
            flat = alg.mono_flat(mono)
            prefix_deg = 0
            for t, gi in enumerate(flat):
                g = alg.generators[gi]
                dg = self.d_values.get(g.name)
                if dg:
                    pre = Polynomial(alg, {alg.monomial([(x, 1) for x in flat[:t]]): alg.field.one}) \
                        if t else Polynomial.unit(alg)
                    post = Polynomial(alg, {alg.monomial([(x, 1) for x in flat[t + 1:]]): alg.field.one}) \
                        if t + 1 < len(flat) else Polynomial.unit(alg)
                    sgn = -1 if prefix_deg % 2 else 1
                    out = out + (pre * dg * post).scale(coef * sgn)
                prefix_deg += g.degree
        return out

    def materialize(self, cap) -> "MaterializedFreeDGA":
        return MaterializedFreeDGA(self, cap)


class MaterializedFreeDGA:
    """Degreewise expansion of a FreeDGA; exposes .dga (TabularDGA) and maps."""

    def __init__(self, pres: FreeDGA, cap: int):
        self.presentation = pres
        alg = pres.algebra
        field = pres.field
        labels, bidegrees = {}, {}
        self.monomials = {}
        self.index_of = {}
        for n in range(cap + 1):
            basis = alg.basis_in_degree(n)
            self.monomials[n] = basis
            labels[n] = [alg.mono_str(m) for m in basis]
            bidegrees[n] = [alg.mono_bidegree(m) for m in basis]
            for k, m in enumerate(basis):
                self.index_of[m] = (n, k)
        products = {}
        for n in range(cap + 1):
            for m in range(cap + 1 - n):
                for i, m1 in enumerate(self.monomials[n]):
                    for j, m2 in enumerate(self.monomials[m]):
                        sign, mono = alg.mul_monomials(m1, m2)
                        if sign:
                            k = self.index_of[mono][1]
                            products[(n, i, m, j)] = {k: field.coerce(sign)}
        diff = {}
        for n in range(cap):
            mat = linalg.zeros(len(self.monomials[n + 1]), len(self.monomials[n]), field)
            for j, mono in enumerate(self.monomials[n]):
                dp = pres.d_poly(Polynomial(alg, {mono: field.one}))
                for tm, c in dp.terms.items():
                    deg, k = self.index_of.get(tm, (None, None))
                    if deg is None:
                        raise PreconditionError(
                            "differential leaves the materialized range")
                    mat[k][j] = c
                del dp
            diff[n] = mat
        # odd-generator-only algebras are finite; detect true completeness
        top = sum(g.degree for g in alg.generators if g.odd)
        complete = all(g.odd for g in alg.generators) and cap >= top
        self.dga = TabularDGA(field, cap, labels, bidegrees, products, diff,
                              unit_index=0, complete=complete)

    def poly_to_vec(self, poly: Polynomial, n: int):
        v = self.dga.zero_vec(n)
        for mono, c in poly.terms.items():
            deg, k = self.index_of[mono]
            if deg != n:
                raise ValueError("polynomial not homogeneous of the stated degree")
            v[k] = c
        return v

    def vec_to_poly(self, n: int, v) -> Polynomial:
        alg = self.presentation.algebra
        return Polynomial(alg, {self.monomials[n][k]: c for k, c in enumerate(v) if c})


# -- structural checks ---------------------------------------------------------


@dataclass
class CheckReport:
    ok: bool
    witness: dict | None = None

    def __bool__(self):
        return self.ok


def check_d_squared(A: TabularDGA, diff_of=None) -> CheckReport:
    d = diff_of or A.d_vec
    for n in range(A.cap + 1):
        if not (A.has_d(n) and A.has_d(n + 1)):
            continue
        if n + 2 > A.cap and not A.complete:
            continue
        for j in range(A.dim(n)):
            w = d(n + 1, d(n, A.basis_vec(n, j)))
            if not linalg.is_zero_vec(w):
                return CheckReport(False, {"degree": n, "basis": j, "value": w})
    return CheckReport(True)


def check_derivation(A: TabularDGA, diff_of=None) -> CheckReport:
    """Leibniz rule d(ab) = da*b + (-1)^|a| a*db on all basis pairs in range."""
    d = diff_of or A.d_vec
    for n in range(A.cap + 1):
        for m in range(A.cap + 1 - n):
            if not (A.has_d(n) and A.has_d(m) and A.has_d(n + m)):
                continue
            if n + m + 1 > A.cap and not A.complete:
                continue
            for i in range(A.dim(n)):
                ei = A.basis_vec(n, i)
                dei = d(n, ei)
                for j in range(A.dim(m)):
                    ej = A.basis_vec(m, j)
                    lhs = d(n + m, A.mul(n, ei, m, ej))
                    rhs = linalg.vec_add(
                        A.mul(n + 1, dei, m, ej),
                        linalg.vec_scale(
                            A.field.coerce(-1 if n % 2 else 1),
                            A.mul(n, ei, m + 1, d(m, ej)),
                        ),
                    )
                    if lhs != rhs:
                        return CheckReport(False, {
                            "degrees": (n, m), "pair": (i, j),
                            "discrepancy": linalg.vec_sub(lhs, rhs),
                        })
    return CheckReport(True)


def check_graded_commutative(A: TabularDGA) -> CheckReport:
    for n in range(A.cap + 1):
        for m in range(A.cap + 1 - n):
            sgn = A.field.coerce((-1) ** (n * m))
            for i in range(A.dim(n)):
                for j in range(A.dim(m)):
                    ab = A.mul(n, A.basis_vec(n, i), m, A.basis_vec(m, j))
                    ba = A.mul(m, A.basis_vec(m, j), n, A.basis_vec(n, i))
                    if ab != linalg.vec_scale(sgn, ba):
                        return CheckReport(False, {"degrees": (n, m), "pair": (i, j)})
    return CheckReport(True)


def check_associative(A: TabularDGA) -> CheckReport:
    for n in range(A.cap + 1):
        for m in range(A.cap + 1 - n):
            for l in range(A.cap + 1 - n - m):
                for i in range(A.dim(n)):
                    ei = A.basis_vec(n, i)
                    for j in range(A.dim(m)):
                        ej = A.basis_vec(m, j)
                        eij = A.mul(n, ei, m, ej)
                        for k in range(A.dim(l)):
                            ek = A.basis_vec(l, k)
                            lhs = A.mul(n + m, eij, l, ek)
                            rhs = A.mul(n, ei, m + l, A.mul(m, ej, l, ek))
                            if lhs != rhs:
                                return CheckReport(False, {
                                    "degrees": (n, m, l), "triple": (i, j, k)})
    return CheckReport(True)


def check_unital(A: TabularDGA) -> CheckReport:
    one = A.unit_vec()
    for n in range(A.cap + 1):
        for i in range(A.dim(n)):
            e = A.basis_vec(n, i)
            if A.mul(0, one, n, e) != e or A.mul(n, e, 0, one) != e:
                return CheckReport(False, {"degree": n, "basis": i})
    return CheckReport(True)


# -- cohomology -----------------------------------------------------------------


class CohomologyRing:
    """Exact degreewise cohomology with canonical representatives.

    Representatives are the reduced-echelon complement of the coboundaries
    inside the cocycles, so outputs are deterministic.
    """

    def __init__(self, A: TabularDGA, up_to: int):
        if up_to >= A.cap and not A.complete:
            raise PreconditionError(
                f"cohomology through degree {up_to} needs cap > {up_to}")
        self.A = A
        self.field = A.field
        self.up_to = up_to
        self.reps = {}
        self.coboundaries = {}
        self.dims = {}
        for n in range(up_to + 1):
            dn = A.d_matrix(n)
            cocycles = linalg.nullspace(dn, A.dim(n), A.field)
            if n == 0:
                prev = []
            else:
                prev = linalg.column_space(A.d_matrix(n - 1), A.field)
            self.coboundaries[n] = linalg.row_space(prev, A.field) if prev else []
            self.reps[n] = linalg.complement_mod(self.coboundaries[n], cocycles, A.field)
            self.dims[n] = len(self.reps[n])

    def dim(self, n):
        if n > self.up_to:
            raise PreconditionError(f"cohomology degree {n} beyond {self.up_to}")
        return self.dims[n]

    def class_of(self, n, cocycle):
        """Coordinates of a cocycle's class over the canonical representatives."""
        if self.A.has_d(n):
            if not linalg.is_zero_vec(self.A.d_vec(n, cocycle)):
                raise PreconditionError("vector is not a cocycle")
        w = linalg.reduce_mod(cocycle, self.coboundaries[n], self.field)
        coords = linalg.in_span(w, self.reps[n], self.field)
        if coords is None:
            raise PreconditionError("vector is not a cocycle modulo boundaries")
        return coords

    def rep_vec(self, n, coords):
        v = self.A.zero_vec(n)
        for c, r in zip(coords, self.reps[n]):
            if c:
                v = linalg.vec_add(v, linalg.vec_scale(c, r))
        return v

    def mul_classes(self, p, u, q, v):
        """Induced product on classes; needs p + q <= up_to."""
        prod = self.A.mul(p, self.rep_vec(p, u), q, self.rep_vec(q, v))
        return self.class_of(p + q, prod)

    def is_connected(self):
        return self.dims[0] == 1

    def is_simply_connected(self):
        return self.is_connected() and self.dims.get(1, 0) == 0

    def to_dga(self) -> TabularDGA:
        """The cohomology as a zero-differential tabular DGA (cap = up_to)."""
        labels = {n: [f"h{n}_{k}" for k in range(self.dims[n])]
                  for n in range(self.up_to + 1)}
        # bidegree of a class: bidegree of its representative when homogeneous
        bidegrees = {}
        for n in range(self.up_to + 1):
            bl = []
            for r in self.reps[n]:
                bds = {self.A.bidegrees[n][k] for k, c in enumerate(r) if c}
                bl.append(bds.pop() if len(bds) == 1 else (n, 0))
            bidegrees[n] = bl
        products = {}
        for p in range(self.up_to + 1):
            for q in range(self.up_to + 1 - p):
                for i in range(self.dims[p]):
                    u = [self.field.one if t == i else self.field.zero
                         for t in range(self.dims[p])]
                    for j in range(self.dims[q]):
                        v = [self.field.one if t == j else self.field.zero
                             for t in range(self.dims[q])]
                        w = self.mul_classes(p, u, q, v)
                        entry = {k: c for k, c in enumerate(w) if c}
                        if entry:
                            products[(p, i, q, j)] = entry
        unit_class = self.class_of(0, self.A.unit_vec())
        unit_index = next(k for k, c in enumerate(unit_class) if c)
        return TabularDGA(self.field, self.up_to, labels, bidegrees, products,
                          {n: linalg.zeros(self.dims.get(n + 1, 0), self.dims[n], self.field)
                           for n in range(self.up_to)},
                          unit_index=unit_index,
                          complete=self.A.complete and self.up_to >= self.A.cap)


def cohomology(A: TabularDGA, up_to: int) -> CohomologyRing:
    return CohomologyRing(A, up_to)


# -- morphisms -------------------------------------------------------------------


class Morphism:
    """Degreewise linear map between tabular DGAs (matrices per degree)."""

    def __init__(self, source: TabularDGA, target: TabularDGA, matrices, up_to=None):
        self.source = source
        self.target = target
        self.up_to = min(source.cap, target.cap) if up_to is None else up_to
        self.matrices = matrices

    def matrix(self, n):
        return self.matrices.get(n) or linalg.zeros(
            self.target.dim(n), self.source.dim(n), self.source.field)

    def apply(self, n, v):
        return linalg.mat_vec(self.matrix(n), v, self.source.field)

    @classmethod
    def identity(cls, A):
        return cls(A, A, {n: linalg.identity(A.dim(n), A.field) for n in A.degrees()})


def check_morphism(f: Morphism) -> CheckReport:
    """DGA morphism test: unital, multiplicative, intertwines differentials."""
    A, B = f.source, f.target
    if A.field is not B.field:
        return CheckReport(False, {"reason": "scalar fields differ"})
    up_to = f.up_to
    if f.apply(0, A.unit_vec()) != B.unit_vec():
        return CheckReport(False, {"reason": "unit not preserved"})
    for n in range(up_to):
        if not (A.has_d(n) and B.has_d(n)):
            continue
        for j in range(A.dim(n)):
            v = A.basis_vec(n, j)
            lhs = f.apply(n + 1, A.d_vec(n, v))
            rhs = B.d_vec(n, f.apply(n, v))
            if lhs != rhs:
                return CheckReport(False, {
                    "reason": "differential not intertwined",
                    "degree": n, "basis": j})
    for n in range(up_to + 1):
        for m in range(up_to + 1 - n):
            for i in range(A.dim(n)):
                ei = A.basis_vec(n, i)
                fi = f.apply(n, ei)
                for j in range(A.dim(m)):
                    ej = A.basis_vec(m, j)
                    lhs = f.apply(n + m, A.mul(n, ei, m, ej))
                    rhs = B.mul(n, fi, m, f.apply(m, ej))
                    if lhs != rhs:
                        return CheckReport(False, {
                            "reason": "not multiplicative",
                            "degrees": (n, m), "pair": (i, j)})
    return CheckReport(True)


def induced_map_on_cohomology(f: Morphism, n, HA: CohomologyRing, HB: CohomologyRing):
    cols = []
    for r in HA.reps[n]:
        cols.append(HB.class_of(n, f.apply(n, r)))
    return linalg.transpose(cols) if cols else [[] for _ in range(HB.dims[n])]


def is_quasi_isomorphism(f: Morphism, up_to: int,
                         HA: CohomologyRing | None = None,
                         HB: CohomologyRing | None = None) -> CheckReport:
    """Pass iff H(f) is bijective in every degree <= up_to."""
    HA = HA or cohomology(f.source, up_to)
    HB = HB or cohomology(f.target, up_to)
    for n in range(up_to + 1):
        # necessary condition first: dimensions must agree degreewise
        if HA.dim(n) != HB.dim(n):
            return CheckReport(False, {"degree": n, "reason": "cohomology dims differ",
                                       "dims": (HA.dim(n), HB.dim(n))})
        mat = induced_map_on_cohomology(f, n, HA, HB)
        if HA.dim(n) and linalg.rank(mat, f.source.field) != HA.dim(n):
            return CheckReport(False, {"degree": n, "reason": "induced map not bijective"})
    return CheckReport(True)


# -- tensor product ---------------------------------------------------------------


def tensor(A: TabularDGA, B: TabularDGA) -> TabularDGA:
    """Tensor DGA with the Koszul sign rule on products and differentials."""
    if A.field is not B.field:
        raise PreconditionError("tensor factors over different scalar fields")
    field = A.field
    if A.complete and B.complete:
        cap = A.cap + B.cap
        complete = True
    else:
        limits = [A.cap + B.cap]
        if not A.complete:
            limits.append(A.cap)
        if not B.complete:
            limits.append(B.cap)
        cap = min(limits)
        complete = False
    labels, bidegrees, index = {}, {}, {}
    pairs = {}
    for n in range(cap + 1):
        ls, bs, ps = [], [], []
        for p in range(max(0, n - B.cap), min(n, A.cap) + 1):
            q = n - p
            if p > A.cap or q > B.cap:
                continue
            for i in range(A.dim(p)):
                for j in range(B.dim(q)):
                    index[(p, i, q, j)] = (n, len(ls))
                    ls.append(f"{A.labels[p][i]}_{B.labels[q][j]}")
                    pa, qa = A.bidegrees[p][i]
                    pb, qb = B.bidegrees[q][j]
                    bs.append((pa + pb, qa + qb))
                    ps.append((p, i, q, j))
        labels[n] = ls
        bidegrees[n] = bs
        pairs[n] = ps
    products = {}
    for n in range(cap + 1):
        for m in range(cap + 1 - n):
            for ii, (p1, i1, q1, j1) in enumerate(pairs[n]):
                for jj, (p2, i2, q2, j2) in enumerate(pairs[m]):
                    sgn = field.coerce((-1) ** (q1 * p2))
                    entry = {}
                    left = A.product_entry(p1, i1, p2, i2)
                    right = B.product_entry(q1, j1, q2, j2)
                    for ka, ca in left.items():
                        for kb, cb in right.items():
                            k = index[(p1 + p2, ka, q1 + q2, kb)][1]
                            c = sgn * ca * cb
                            if c:
                                entry[k] = entry.get(k, field.zero) + c
                    entry = {k: c for k, c in entry.items() if c}
                    if entry:
                        products[(n, ii, m, jj)] = entry
    diff = {}
    for n in range(cap):
        mat = linalg.zeros(len(pairs[n + 1]), len(pairs[n]), field)
        for jj, (p, i, q, j) in enumerate(pairs[n]):
            if p < A.cap or A.complete:
                da = A.d_vec(p, A.basis_vec(p, i))
                for k, c in enumerate(da):
                    if c:
                        mat[index[(p + 1, k, q, j)][1]][jj] = c
            if q < B.cap or B.complete:
                db = B.d_vec(q, B.basis_vec(q, j))
                sgn = field.coerce(-1 if p % 2 else 1)
                for k, c in enumerate(db):
                    if c:
                        r = index[(p, i, q + 1, k)][1]
                        mat[r][jj] = mat[r][jj] + sgn * c
        diff[n] = mat
    unit = index[(0, A.unit_index, 0, B.unit_index)][1]
    return TabularDGA(field, cap, labels, bidegrees, products, diff,
                      unit_index=unit, complete=complete)


def trivial_dga(field) -> TabularDGA:
    """The ground field as a DGA (one unit, zero differential)."""
    return TabularDGA(field, 0, {0: ["one"]}, {0: [(0, 0)]},
                      {(0, 0, 0, 0): {0: field.one}}, {},
                      unit_index=0, complete=True)
