"""Finite-dimensional metric DGAs with two commuting differentials.

This is the formality engine: given a finite graded algebra with an exact
positive-definite metric and two degree-one differentials d and dc, it
verifies the standard package of hypotheses (graded commutators, equality of
Laplacians, Hodge decompositions), refines them into the fivefold splitting,
and certifies formality through the inclusion/quotient zigzag

    (A, d)  <-  (Ker dc, d)  ->  (H(A, dc), 0).

Operators are wrapped as `GradedOperator`s (one matrix per total degree with
explicit shapes) so that compositions and commutators through zero-dimensional
degrees stay well defined.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .dga import (
    CheckReport,
    Morphism,
    TabularDGA,
    check_d_squared,
    check_derivation,
    check_morphism,
    cohomology,
    is_quasi_isomorphism,
)
from .errors import InternalConsistencyError, PreconditionError


class GradedOperator:
    """A degree-homogeneous linear operator on a finite graded space.

    `mats[n]` is the matrix of the map degree n -> n + shift, with rows/cols
    matching the (possibly zero) dimensions; degrees outside [0, cap] are the
    zero space.
    """

    def __init__(self, dims, shift, mats, field):
        self.dims = dims          # dict degree -> dimension (0 outside)
        self.shift = shift
        self.field = field
        self.cap = max(dims) if dims else 0
        self.mats = {}
        for n in range(self.cap + 1):
            tgt = n + shift
            rows = dims.get(tgt, 0)
            cols = dims.get(n, 0)
            m = mats.get(n)
            if m is None:
                m = linalg.zeros(rows, cols, field)
            if len(m) != rows or (rows and any(len(r) != cols for r in m)):
                raise ValueError(f"operator matrix shape mismatch in degree {n}")
            self.mats[n] = m

    def at(self, n):
        if n < 0 or n > self.cap:
            return linalg.zeros(self.dims.get(n + self.shift, 0), 0, self.field)
        return self.mats[n]

    def apply(self, n, v):
        rows = self.dims.get(n + self.shift, 0)
        if rows == 0:
            return []
        return linalg.mat_vec(self.at(n), v, self.field)

    def compose(self, other):
        """self . other (other acts first)."""
        if self.field is not other.field:
            raise ValueError("field mismatch")
        dims = self.dims
        shift = self.shift + other.shift
        mats = {}
        for n in range(self.cap + 1):
            mid = n + other.shift
            rows = dims.get(n + shift, 0)
            cols = dims.get(n, 0)
            if rows == 0 or cols == 0 or dims.get(mid, 0) == 0:
                mats[n] = linalg.zeros(rows, cols, self.field)
            else:
                mats[n] = linalg.mat_mul(self.at(mid), other.at(n), self.field)
        return GradedOperator(dims, shift, mats, self.field)

    def add(self, other):
        if other.shift != self.shift:
            raise ValueError("shift mismatch")
        return GradedOperator(
            self.dims, self.shift,
            {n: linalg.mat_add(self.at(n), other.at(n)) for n in range(self.cap + 1)},
            self.field)

    def scale(self, c):
        return GradedOperator(
            self.dims, self.shift,
            {n: linalg.mat_scale(c, self.at(n)) for n in range(self.cap + 1)},
            self.field)

    def sub(self, other):
        return self.add(other.scale(-self.field.one))

    def is_zero(self):
        return all(linalg.is_zero_mat(self.at(n)) for n in range(self.cap + 1))

    def graded_commutator(self, other, parity_self=1, parity_other=1):
        """[P, Q] = PQ - (-1)^{|P||Q|} QP."""
        sgn = (-1) ** (parity_self * parity_other)
        pq = self.compose(other)
        qp = other.compose(self)
        return pq.sub(qp.scale(self.field.coerce(sgn))) if sgn == 1 else pq.add(qp)

    def first_nonzero_witness(self):
        for n in range(self.cap + 1):
            m = self.at(n)
            for j in range(self.dims.get(n, 0)):
                col = [m[i][j] for i in range(len(m))]
                if not linalg.is_zero_vec(col):
                    return {"degree": n, "basis": j, "value": col}
        return None

    def bidegree_shift_ok(self, bidegrees, shift_pq):
        dp, dq = shift_pq
        for n in range(self.cap + 1):
            tgt = n + self.shift
            if not (0 <= tgt <= self.cap):
                continue
            m = self.at(n)
            for j in range(self.dims.get(n, 0)):
                p, q = bidegrees[n][j]
                for i in range(self.dims.get(tgt, 0)):
                    if m[i][j] and bidegrees[tgt][i] != (p + dp, q + dq):
                        return False
        return True


def adjoint_operator(op: GradedOperator, gram_of, field) -> GradedOperator:
    """The unique operator with <op u, v> = <u, adjoint v> for the given metric.

    `gram_of(n)` returns the positive-definite Hermitian Gram matrix of degree
    n; with orthonormal bases the adjoint is the conjugate transpose.
    """
    dims = op.dims
    mats = {}
    for n in range(op.cap + 1):
        src = n + op.shift  # the adjoint maps src -> n
        if not (0 <= src <= op.cap):
            continue
        if dims.get(n, 0) == 0 or dims.get(src, 0) == 0:
            mats[src] = linalg.zeros(dims.get(n, 0), dims.get(src, 0), field)
            continue
        gs = gram_of(n)
        gt = gram_of(src)
        mats[src] = linalg.mat_mul(
            linalg.mat_mul(linalg.inverse(gs, field),
                           linalg.conj_transpose(op.at(n), field), field),
            gt, field)
    return GradedOperator(dims, -op.shift, mats, field)


class MetricBicomplex:
    """Carrier DGA (complete, differential d) + second differential + metric.

    `dc` is a dict of per-degree matrices like the carrier's own differential;
    `gram` maps degree -> positive-definite Hermitian Gram matrix (None means
    orthonormal bases everywhere).
    """

    def __init__(self, carrier: TabularDGA, dc, gram=None):
        if not carrier.complete:
            raise PreconditionError("metric bicomplexes must be genuinely finite")
        self.A = carrier
        self.field = carrier.field
        self.dims = {n: carrier.dim(n) for n in carrier.degrees()}
        self.gram = gram or {}
        for n in carrier.degrees():
            g = self.gram_matrix(n)
            if not linalg.gram_positive_definite(g, self.field):
                raise PreconditionError(
                    f"Gram matrix in degree {n} is not positive definite")
        self.d = GradedOperator(
            self.dims, 1, {n: carrier.d_matrix(n) for n in range(carrier.cap)},
            self.field)
        self.dc = GradedOperator(self.dims, 1, dict(dc), self.field)
        r = check_d_squared(carrier)
        if not r:
            raise PreconditionError(f"d does not square to zero: {r.witness}")
        r = check_d_squared(carrier, diff_of=self.dc.apply)
        if not r:
            raise PreconditionError(f"dc does not square to zero: {r.witness}")
        self.d_star = self.adjoint(self.d)
        self.dc_star = self.adjoint(self.dc)
        self._lap_d = None
        self._lap_dc = None
        self._harmonic = {}

    def gram_matrix(self, n):
        g = self.gram.get(n)
        return g if g is not None else linalg.identity(self.A.dim(n), self.field)

    def inner(self, n, u, v):
        g = self.gram_matrix(n)
        return sum(
            (self.field.conj(u[i]) * g[i][j] * v[j]
             for i in range(len(u)) for j in range(len(v))),
            self.field.zero)

    def adjoint(self, op: GradedOperator) -> GradedOperator:
        return adjoint_operator(op, self.gram_matrix, self.field)

    def laplacian(self, op: GradedOperator, op_star: GradedOperator) -> GradedOperator:
        return op_star.compose(op).add(op.compose(op_star))

    def laplacian_d(self):
        if self._lap_d is None:
            self._lap_d = self.laplacian(self.d, self.d_star)
        return self._lap_d

    def laplacian_dc(self):
        if self._lap_dc is None:
            self._lap_dc = self.laplacian(self.dc, self.dc_star)
        return self._lap_dc

    def harmonic_basis(self, n):
        if n not in self._harmonic:
            self._harmonic[n] = linalg.nullspace(
                self.laplacian_d().at(n), self.A.dim(n), self.field)
        return self._harmonic[n]

    def image_in_degree(self, op: GradedOperator, n):
        """Canonical basis of the degree-n part of op's image."""
        src = n - op.shift
        if not (0 <= src <= op.cap):
            return []
        return linalg.column_space(op.at(src), self.field)


# -- hypothesis verification ------------------------------------------------------


@dataclass
class HypothesisReport:
    entries: dict  # name -> CheckReport

    @property
    def ok(self):
        return all(r.ok for r in self.entries.values())

    def __bool__(self):
        return self.ok

    def failed(self):
        return [k for k, r in self.entries.items() if not r.ok]


def _commutator_entry(B, p, q, name):
    com = p.graded_commutator(q)
    if com.is_zero():
        return CheckReport(True)
    w = com.first_nonzero_witness()
    w["relation"] = name
    n, j = w["degree"], w["basis"]
    if j < len(B.A.labels.get(n, [])):
        w["label"] = B.A.labels[n][j]
    return CheckReport(False, w)


def _decomposition_check(B, parts_of, name):
    """Direct-sum audit: dims add up, total spans, pairwise intersections zero."""
    A = B.A
    for n in A.degrees():
        parts = parts_of(n)
        dims = [len(p) for p in parts]
        total = sum(dims)
        if total != A.dim(n):
            return CheckReport(False, {"relation": name, "degree": n,
                                       "dims": dims, "ambient": A.dim(n)})
        stacked = [v for p in parts for v in p]
        if stacked and linalg.rank(stacked, B.field) != A.dim(n):
            return CheckReport(False, {"relation": name, "degree": n,
                                       "reason": "summands are dependent"})
        for i in range(len(parts)):
            for j in range(i + 1, len(parts)):
                meet = linalg.subspace_intersection(parts[i], parts[j], B.field)
                if meet:
                    return CheckReport(False, {
                        "relation": name, "degree": n, "pair": (i, j),
                        "witness": meet[0]})
    return CheckReport(True)


def verify_hypotheses(B: MetricBicomplex) -> HypothesisReport:
    field = B.field
    A = B.A
    entries = {}

    entries["d_derivation"] = check_derivation(A)
    entries["dc_derivation"] = check_derivation(A, diff_of=B.dc.apply)

    # adjointness recomputed from its defining identity, not assumed
    adj_ok = CheckReport(True)
    for n in A.degrees():
        if n + 1 > A.cap:
            continue
        for i in range(A.dim(n)):
            if not adj_ok.ok:
                break
            u = A.basis_vec(n, i)
            du = B.d.apply(n, u)
            for j in range(A.dim(n + 1)):
                v = A.basis_vec(n + 1, j)
                if B.inner(n + 1, du, v) != B.inner(n, u, B.d_star.apply(n + 1, v)):
                    adj_ok = CheckReport(False, {"degree": n, "pair": (i, j)})
                    break
    entries["adjointness"] = adj_ok

    entries["commute_d_dc"] = _commutator_entry(B, B.d, B.dc, "[d, dc]")
    entries["commute_d_dc_star"] = _commutator_entry(B, B.d, B.dc_star, "[d, dc*]")
    entries["commute_d_star_dc_star"] = _commutator_entry(
        B, B.d_star, B.dc_star, "[d*, dc*]")
    entries["commute_d_star_dc"] = _commutator_entry(B, B.d_star, B.dc, "[d*, dc]")

    lap = B.laplacian_d().sub(B.laplacian_dc())
    if lap.is_zero():
        entries["laplacians_equal"] = CheckReport(True)
    else:
        w = lap.first_nonzero_witness()
        w["relation"] = "laplacian_d = laplacian_dc"
        w["label"] = A.labels[w["degree"]][w["basis"]]
        entries["laplacians_equal"] = CheckReport(False, w)

    harm = {n: B.harmonic_basis(n) for n in A.degrees()}
    cross = CheckReport(True)
    for n in A.degrees():
        kd = linalg.nullspace(B.d.at(n), A.dim(n), field)
        kds = linalg.nullspace(B.d_star.at(n), A.dim(n), field)
        meet = linalg.subspace_intersection(kd, kds, field)
        if linalg.row_space(harm[n], field) != meet:
            cross = CheckReport(False, {"degree": n})
            break
    entries["harmonics_equal_ker_d_ker_dstar"] = cross

    entries["hodge_decomposition_d"] = _decomposition_check(
        B, lambda n: [harm[n], B.image_in_degree(B.d, n), B.image_in_degree(B.d_star, n)],
        "A = H + Im d + Im d*")
    lap_dc = B.laplacian_dc()
    harm_dc = {n: linalg.nullspace(lap_dc.at(n), A.dim(n), field) for n in A.degrees()}
    entries["hodge_decomposition_dc"] = _decomposition_check(
        B, lambda n: [harm_dc[n], B.image_in_degree(B.dc, n),
                      B.image_in_degree(B.dc_star, n)],
        "A = H + Im dc + Im dc*")

    ker_split = CheckReport(True)
    for n in A.degrees():
        kd = linalg.nullspace(B.d.at(n), A.dim(n), field)
        span = linalg.row_space(harm[n] + B.image_in_degree(B.d, n), field)
        if linalg.row_space(kd, field) != span:
            ker_split = CheckReport(False, {"degree": n})
            break
    entries["ker_d_splits"] = ker_split

    return HypothesisReport(entries)


# -- harmonic projection and the projected product ---------------------------------


def harmonic_projection(B: MetricBicomplex, n, v):
    """Orthogonal projection onto the harmonic subspace of degree n."""
    basis = B.harmonic_basis(n)
    if not basis:
        return B.A.zero_vec(n)
    g = [[B.inner(n, hi, hj) for hj in basis] for hi in basis]
    rhs = [B.inner(n, hi, v) for hi in basis]
    coords = linalg.solve(g, rhs, B.field)
    if coords is None:
        raise InternalConsistencyError("harmonic Gram system is singular")
    out = B.A.zero_vec(n)
    for c, h in zip(coords, basis):
        if c:
            out = linalg.vec_add(out, linalg.vec_scale(c, h))
    return out


def is_harmonic(B: MetricBicomplex, n, v):
    return linalg.is_zero_vec(B.laplacian_d().apply(n, v)) if B.A.dim(n) else True


def circ_product(B: MetricBicomplex, n, u, m, v, ring=None):
    """Projected product of harmonic elements: (u ∧ v) projected to harmonics.

    Verifies the compatibility that makes harmonics a model of the cohomology
    ring: the class of the projection equals the product of the classes.
    """
    if not is_harmonic(B, n, u) or not is_harmonic(B, m, v):
        raise PreconditionError("projected product needs harmonic inputs")
    w = B.A.mul(n, u, m, v)
    wh = harmonic_projection(B, n + m, w)
    H = ring or cohomology(B.A, B.A.cap)
    lhs = H.class_of(n + m, wh)
    rhs = H.mul_classes(n, H.class_of(n, u), m, H.class_of(m, v))
    if lhs != rhs:
        raise InternalConsistencyError(
            "projected product disagrees with the cohomology product")
    return wh


# -- fivefold decomposition ---------------------------------------------------------


@dataclass
class FivefoldDecomposition:
    bases: dict        # degree -> five bases (H, d dc, d dc*, d* dc, d* dc*)
    dims: dict         # degree -> tuple of five dims
    audit: CheckReport

    names = ("harmonic", "im_d_dc", "im_d_dc_star", "im_d_star_dc", "im_d_star_dc_star")


def fivefold_decomposition(B: MetricBicomplex,
                           hypotheses: HypothesisReport | None = None
                           ) -> FivefoldDecomposition:
    hyp = hypotheses or verify_hypotheses(B)
    if not hyp.ok:
        raise PreconditionError(f"hypotheses fail: {hyp.failed()}")
    ops = [
        B.d.compose(B.dc),
        B.d.compose(B.dc_star),
        B.d_star.compose(B.dc),
        B.d_star.compose(B.dc_star),
    ]
    bases, dims = {}, {}
    for n in B.A.degrees():
        parts = [B.harmonic_basis(n)]
        for op in ops:
            parts.append(B.image_in_degree(op, n))
        bases[n] = parts
        dims[n] = tuple(len(p) for p in parts)
    audit = _decomposition_check(B, lambda n: bases[n], "fivefold")
    if not audit:
        raise InternalConsistencyError(
            f"fivefold decomposition failed: {audit.witness}")
    return FivefoldDecomposition(bases, dims, audit)


# -- the formality certificate --------------------------------------------------------


@dataclass
class FormalityCertificate:
    hypotheses: HypothesisReport
    fivefold: FivefoldDecomposition
    harmonic_dims: dict
    kernel_dims: dict
    d_zero_on_dc_cohomology: bool
    kernel_splitting_ok: bool
    inclusion_quasi_iso: CheckReport
    quotient_quasi_iso: CheckReport
    cohomology_dims: dict

    @property
    def certified(self):
        return (self.hypotheses.ok and self.d_zero_on_dc_cohomology
                and self.kernel_splitting_ok
                and self.inclusion_quasi_iso.ok and self.quotient_quasi_iso.ok)


class CertificateRefused(PreconditionError):
    def __init__(self, report: HypothesisReport):
        super().__init__(f"hypotheses fail: {report.failed()}")
        self.report = report


def _subspace_dga(B: MetricBicomplex, bases, prefix="k"):
    """Present a d- and product-closed subspace as a TabularDGA in its own basis."""
    A, field = B.A, B.field
    labels = {n: [f"{prefix}{n}_{i}" for i in range(len(bases[n]))] for n in A.degrees()}
    bidegrees = {n: [(n, 0)] * len(bases[n]) for n in A.degrees()}
    products = {}
    for n in A.degrees():
        for m in range(A.cap + 1 - n):
            for i, u in enumerate(bases[n]):
                for j, v in enumerate(bases[m]):
                    w = A.mul(n, u, m, v)
                    coords = linalg.in_span(w, bases[n + m], field)
                    if coords is None:
                        raise InternalConsistencyError(
                            "subspace is not closed under the product")
                    entry = {k: c for k, c in enumerate(coords) if c}
                    if entry:
                        products[(n, i, m, j)] = entry
    diff = {}
    for n in range(A.cap):
        mat = linalg.zeros(len(bases[n + 1]), len(bases[n]), field)
        for j, u in enumerate(bases[n]):
            w = A.d_vec(n, u)
            coords = linalg.in_span(w, bases[n + 1], field)
            if coords is None:
                raise InternalConsistencyError("subspace is not closed under d")
            for k, c in enumerate(coords):
                mat[k][j] = c
        diff[n] = mat
    unit_coords = linalg.in_span(A.unit_vec(), bases[0], field)
    if unit_coords is None:
        raise InternalConsistencyError("subspace misses the unit")
    unit_index = next(k for k, c in enumerate(unit_coords) if c)
    return TabularDGA(field, A.cap, labels, bidegrees, products, diff,
                      unit_index=unit_index, complete=True)


def formality_certificate(B: MetricBicomplex) -> FormalityCertificate:
    hyp = verify_hypotheses(B)
    if not hyp.ok:
        raise CertificateRefused(hyp)
    A, field = B.A, B.field
    five = fivefold_decomposition(B, hypotheses=hyp)

    kernel_bases = {n: linalg.nullspace(B.dc.at(n), A.dim(n), field)
                    for n in A.degrees()}
    K = _subspace_dga(B, kernel_bases)

    # d lands in Im dc on every dc-cocycle, so d induces zero on H(A, dc)
    d_zero = True
    for n in A.degrees():
        im_dc = B.image_in_degree(B.dc, n + 1)
        for u in kernel_bases[n]:
            du = B.d.apply(n, u)
            if not du:
                continue
            if linalg.in_span(du, im_dc, field) is None:
                d_zero = False
                break
        if not d_zero:
            break

    # Ker dc = H + Im(d dc) + Im(d* dc), degreewise
    split_ok = True
    for n in A.degrees():
        harm = five.bases[n][0]
        ddc = five.bases[n][1]
        dsdc = five.bases[n][3]
        span = linalg.row_space(harm + ddc + dsdc, field)
        if span != linalg.row_space(kernel_bases[n], field):
            split_ok = False
            break

    inclusion = Morphism(K, A, {
        n: linalg.transpose(kernel_bases[n]) if kernel_bases[n]
        else linalg.zeros(A.dim(n), 0, field)
        for n in A.degrees()})
    mor = check_morphism(inclusion)
    if not mor:
        raise InternalConsistencyError(
            f"inclusion is not a DGA morphism: {mor.witness}")
    incl_q = is_quasi_isomorphism(inclusion, A.cap)

    Adc = A.with_differential({n: B.dc.at(n) for n in range(A.cap)})
    Hdc = cohomology(Adc, A.cap)
    HdcD = Hdc.to_dga()
    quot = Morphism(K, HdcD, {
        n: linalg.transpose([Hdc.class_of(n, u) for u in kernel_bases[n]])
        if kernel_bases[n] else linalg.zeros(HdcD.dim(n), 0, field)
        for n in A.degrees()})
    mor2 = check_morphism(quot)
    if not mor2:
        raise InternalConsistencyError(
            f"quotient is not a DGA morphism: {mor2.witness}")
    quot_q = is_quasi_isomorphism(quot, A.cap)

    HA = cohomology(A, A.cap)
    harm_dims = {n: len(five.bases[n][0]) for n in A.degrees()}
    cohom_dims = {n: HA.dim(n) for n in A.degrees()}
    for n in A.degrees():
        if not (harm_dims[n] == cohom_dims[n] == Hdc.dim(n)):
            raise InternalConsistencyError(
                "harmonic, d-cohomology and dc-cohomology dimensions disagree")

    return FormalityCertificate(
        hypotheses=hyp,
        fivefold=five,
        harmonic_dims=harm_dims,
        kernel_dims={n: len(kernel_bases[n]) for n in A.degrees()},
        d_zero_on_dc_cohomology=d_zero,
        kernel_splitting_ok=split_ok,
        inclusion_quasi_iso=incl_q,
        quotient_quasi_iso=quot_q,
        cohomology_dims=cohom_dims,
    )


# -- bigraded commutation relations -------------------------------------------------


@dataclass
class KahlerIdentityReport:
    entries: dict

    @property
    def ok(self):
        return all(r.ok for r in self.entries.values())

    def __bool__(self):
        return self.ok

    def failed(self):
        return [k for k, r in self.entries.items() if not r.ok]


def check_kahler_identities(B: MetricBicomplex) -> KahlerIdentityReport:
    """The ten commutation relations for (del, delbar) = (d, dc), bigraded.

    del must have bidegree (1, 0) and delbar (0, 1); the two anticommutator
    relations carry the exact scalar 1/2 against the Laplacian of del+delbar.
    """
    A, field = B.A, B.field
    entries = {}
    entries["del_bidegree"] = CheckReport(
        B.d.bidegree_shift_ok(A.bidegrees, (1, 0)))
    entries["delbar_bidegree"] = CheckReport(
        B.dc.bidegree_shift_ok(A.bidegrees, (0, 1)))
    if not (entries["del_bidegree"].ok and entries["delbar_bidegree"].ok):
        return KahlerIdentityReport(entries)

    dd = B.d.add(B.dc)
    dd_star = B.adjoint(dd)
    lap_total = dd_star.compose(dd).add(dd.compose(dd_star))
    half_lap = lap_total.scale(field.one / field.coerce(2))

    entries["del_squared"] = _op_zero_entry(B, B.d.compose(B.d), "[del, del]")
    entries["delbar_squared"] = _op_zero_entry(B, B.dc.compose(B.dc), "[delbar, delbar]")
    entries["del_delbar"] = _commutator_entry(B, B.d, B.dc, "[del, delbar]")
    entries["del_star_delbar_star"] = _commutator_entry(
        B, B.d_star, B.dc_star, "[del*, delbar*]")
    entries["del_delbar_star"] = _commutator_entry(B, B.d, B.dc_star, "[del, delbar*]")
    entries["del_star_delbar"] = _commutator_entry(B, B.d_star, B.dc, "[del*, delbar]")
    entries["del_del_star_is_half_laplacian"] = _op_zero_entry(
        B, B.d.graded_commutator(B.d_star).sub(half_lap), "[del, del*] = box/2")
    entries["delbar_delbar_star_is_half_laplacian"] = _op_zero_entry(
        B, B.dc.graded_commutator(B.dc_star).sub(half_lap), "[delbar, delbar*] = box/2")
    return KahlerIdentityReport(entries)


def _op_zero_entry(B, op, name):
    if op.is_zero():
        return CheckReport(True)
    w = op.first_nonzero_witness()
    w["relation"] = name
    n, j = w["degree"], w["basis"]
    if j < len(B.A.labels.get(n, [])):
        w["label"] = B.A.labels[n][j]
    return CheckReport(False, w)


def real_operator_pair(B: MetricBicomplex):
    """(d+dc, i(dc−d)) matrix dicts, the rotated differential pair; needs Q(i)."""
    A, field = B.A, B.field
    if field.name != "Q(i)":
        raise PreconditionError("the rotated differential needs Q(i) scalars")
    d_tot, d_rot = {}, {}
    for n in range(A.cap):
        d_tot[n] = linalg.mat_add(B.d.at(n), B.dc.at(n))
        d_rot[n] = linalg.mat_scale(
            field.i, linalg.mat_sub(B.dc.at(n), B.d.at(n)))
    return d_tot, d_rot
