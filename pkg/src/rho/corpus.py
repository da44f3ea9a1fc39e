"""Built-in example catalog.

Every entry is fully derivable: spheres and tori as free presentations,
projective-space rings and synthetic bicomplexes as tables, and torus
Calabi-Yau packages whose contraction tables come from honest exterior
algebra contraction against the volume monomial.  Nothing here encodes
outside numerical data; the one template entry exists to document the
package schema and carries a minimal synthetic diamond.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .dga import FreeDGA, TabularDGA, tensor
from .errors import PreconditionError
from .freealg import FreeAlgebra, Polynomial
from .frobenius import BigradedFrobenius, build_frobenius
from .hodge import MetricBicomplex
from .mirror import CalabiYauPackage, build_cy
from .scalars import QQ, ScalarField


# -- free-presentation helpers ------------------------------------------------------


def free_dga(field, gens, d_strings, cap) -> FreeDGA:
    """FreeDGA from generator specs and polynomial strings for d."""
    from .fileio import poly_from_string

    pres = FreeDGA(field, gens, {}, None)
    for name, val in d_strings.items():
        pres.d_values[name] = poly_from_string(pres.algebra, field, val)
    pres.cap = cap
    return pres


def sphere_even(field, cap=10) -> FreeDGA:
    return free_dga(field, [("e2", 2), ("e3", 3)], {"e3": "e2^2"}, cap)


def sphere_odd(field, cap=10) -> FreeDGA:
    return free_dga(field, [("x3", 3)], {}, cap)


def heisenberg(field, cap=4) -> FreeDGA:
    return free_dga(field, [("x", 1), ("y", 1), ("z", 1)], {"z": "x*y"}, cap)


def torus_de_rham(field, n2, cap=None) -> FreeDGA:
    gens = [(f"x{i + 1}", 1) for i in range(n2)]
    return free_dga(field, gens, {}, cap or n2 + 1)


def torus_dolbeault_gens(n):
    gens = [(f"dz{i + 1}", 1, 0) for i in range(n)]
    gens += [(f"dzb{i + 1}", 0, 1) for i in range(n)]
    return gens


def iwasawa_like(field):
    """Invariant bigraded model of the complex Heisenberg threefold.

    One (1,0) generator has a decomposable holomorphic differential; its
    conjugate mirrors it on the (0,1) side.  The two-differential pair
    violates the equal-Laplacian hypothesis.
    """
    gens = [("f1", 1, 0), ("f2", 1, 0), ("f3", 1, 0),
            ("fb1", 0, 1), ("fb2", 0, 1), ("fb3", 0, 1)]
    d_pres = free_dga(field, gens, {"f3": "-1*f1*f2"}, 6)
    dc_pres = free_dga(field, gens, {"fb3": "-1*fb1*fb2"}, 6)
    return d_pres, dc_pres


def bicomplex_from_pair(d_pres: FreeDGA, dc_pres: FreeDGA, cap) -> MetricBicomplex:
    """Materialize two free differentials on one algebra into a bicomplex."""
    m1 = d_pres.materialize(cap)
    m2 = dc_pres.materialize(cap)
    if m1.dga.labels != m2.dga.labels:
        raise PreconditionError("the two presentations have different carriers")
    return MetricBicomplex(m1.dga, {n: m2.dga.d_matrix(n) for n in range(cap)})


def kahler_square(field) -> MetricBicomplex:
    """Smallest two-differential model with nonzero Im d passing every hypothesis."""
    one = field.one
    zero = field.zero
    labels = {0: ["one"], 1: [], 2: ["s00"], 3: ["s10", "s01"], 4: ["s11"]}
    bide = {0: [(0, 0)], 1: [], 2: [(1, 1)], 3: [(2, 1), (1, 2)], 4: [(2, 2)]}
    prods = {(0, 0, 0, 0): {0: one}}
    for n in (2, 3, 4):
        for i in range(len(labels[n])):
            prods[(0, 0, n, i)] = {i: one}
            prods[(n, i, 0, 0)] = {i: one}
    diff = {2: [[one], [zero]], 3: [[zero, one]]}
    carrier = TabularDGA(field, 4, labels, bide, prods, diff, complete=True)
    dc = {2: [[zero], [one]], 3: [[-one, zero]]}
    return MetricBicomplex(carrier, dc)


def kahler_square_tensor(field) -> MetricBicomplex:
    """Kahler square tensored with a zero-differential two-torus model."""
    sq = kahler_square(field)
    t2 = torus_de_rham(field, 2).materialize(2).dga
    carrier = tensor(sq.A, t2)
    zero_dc_t2 = {n: linalg.zeros(t2.dim(n + 1), t2.dim(n), field)
                  for n in range(t2.cap)}
    dc_carrier = tensor(sq.A.with_differential({n: sq.dc.at(n)
                                                for n in range(sq.A.cap)}),
                        t2.with_differential(zero_dc_t2))
    return MetricBicomplex(carrier, {n: dc_carrier.d_matrix(n)
                                     for n in range(carrier.cap)})


def projective_space_ring(field, n) -> BigradedFrobenius:
    """Truncated polynomial ring on one (1,1) class, trace on the top power."""
    one = field.one
    spaces = {(k, k): [f"h{k}" if k else "one"] for k in range(n + 1)}
    products = {}
    for a in range(n + 1):
        for b in range(n + 1 - a):
            products[((a, a), 0, (b, b), 0)] = {0: one}
    return build_frobenius(field, n, spaces, products, [one])


# -- exterior-algebra contraction for torus packages -----------------------------------


def _wedge_label(alg: FreeAlgebra, mono):
    if not mono:
        return "one"
    return "_".join(
        alg.generators[gi].name for gi in alg.mono_flat(mono))


def _contract_once(alg, field, gen_index, terms):
    """Interior product against one odd generator, acting as an antiderivation.

    `terms` is a dict monomial -> coefficient over `alg`; generators of the
    form algebra are assumed all odd (degree-one factors).
    """
    out = {}
    for mono, coef in terms.items():
        flat = alg.mono_flat(mono)
        for t, gi in enumerate(flat):
            if gi != gen_index:
                continue
            sign = field.coerce((-1) ** t)
            rest = alg.monomial([(x, 1) for k, x in enumerate(flat) if k != t])
            out[rest] = out.get(rest, field.zero) + sign * coef
            break
    return {m: c for m, c in out.items() if c}


def torus_frobenius(field, n):
    """The full (p, q)-graded exterior cohomology of a 2n-torus, with trace 1
    on dz1...dzn dzb1...dzbn."""
    alg = FreeAlgebra(field, torus_dolbeault_gens(n))
    spaces, index = {}, {}
    for t in range(2 * n + 1):
        for mono in alg.basis_in_degree(t):
            bd = alg.mono_bidegree(mono)
            spaces.setdefault(bd, []).append(mono)
    labels = {bd: [_wedge_label(alg, m) for m in monos]
              for bd, monos in spaces.items()}
    for bd, monos in spaces.items():
        for i, m in enumerate(monos):
            index[m] = (bd, i)
    products = {}
    for bd1, monos1 in spaces.items():
        for bd2, monos2 in spaces.items():
            if bd1[0] + bd2[0] > n or bd1[1] + bd2[1] > n:
                continue
            for i, m1 in enumerate(monos1):
                for j, m2 in enumerate(monos2):
                    sign, m = alg.mul_monomials(m1, m2)
                    if sign:
                        products[(bd1, i, bd2, j)] = {
                            index[m][1]: field.coerce(sign)}
    top_dim = len(spaces[(n, n)])
    trace = [field.zero] * top_dim
    top_mono = alg.monomial([(g.index, 1) for g in alg.generators])
    trace[index[top_mono][1]] = field.one
    F = build_frobenius(field, n, labels, products, trace)
    return F, alg, spaces, index


def torus_cy_package(field, n, scale=1) -> CalabiYauPackage:
    """Calabi-Yau package of a 2n-torus: polyvector side from real contraction.

    The polyvector basis mirrors the form basis with tangent generators; the
    contraction tables are computed against the volume monomial dz1...dzn,
    left factor contracted last.
    """
    F, alg, spaces, index = torus_frobenius(field, n)
    tangent = FreeAlgebra(field, [(f"v{i + 1}", 1, 0) for i in range(n)]
                          + [(f"vb{i + 1}", 0, 1) for i in range(n)])
    b_spaces, b_index = {}, {}
    for t in range(2 * n + 1):
        for mono in tangent.basis_in_degree(t):
            bd = tangent.mono_bidegree(mono)
            b_spaces.setdefault(bd, []).append(mono)
    b_labels = {bd: ["b_one" if not m else _wedge_label(tangent, m) for m in monos]
                for bd, monos in b_spaces.items()}
    for bd, monos in b_spaces.items():
        for i, m in enumerate(monos):
            b_index[m] = (bd, i)

    volume = alg.monomial([(alg.by_name[f"dz{i + 1}"].index, 1) for i in range(n)])

    def flat_of(mono):
        """Contract the tangent factors into the volume, then wedge the rest."""
        flat = tangent.mono_flat(mono)
        t_part = [gi for gi in flat if tangent.generators[gi].p]
        f_part = [gi for gi in flat if tangent.generators[gi].q]
        terms = {volume: field.one}
        for gi in reversed(t_part):
            k = int(tangent.generators[gi].name[1:])  # v{k} contracts dz{k}
            terms = _contract_once(alg, field,
                                   alg.by_name[f"dz{k}"].index, terms)
        out = {}
        form_mono = alg.monomial(
            [(alg.by_name["dzb" + tangent.generators[gi].name[2:]].index, 1)
             for gi in f_part])
        for m, c in terms.items():
            sign, prod = alg.mul_monomials(m, form_mono)
            if sign:
                out[prod] = out.get(prod, field.zero) + c * field.coerce(sign)
        return {m: c for m, c in out.items() if c}

    flat_tables = {}
    for bd, monos in b_spaces.items():
        tgt = (n - bd[0], bd[1])
        rows = len(spaces.get(tgt, []))
        mat = linalg.zeros(rows, len(monos), field)
        for j, mono in enumerate(monos):
            for m, c in flat_of(mono).items():
                tbd, i = index[m]
                if tbd != tgt:
                    raise PreconditionError("contraction left the expected bidegree")
                mat[i][j] = c
        flat_tables[bd] = mat

    b_products = {}
    for bd1, monos1 in b_spaces.items():
        for bd2, monos2 in b_spaces.items():
            if bd1[0] + bd2[0] > n or bd1[1] + bd2[1] > n:
                continue
            for i, m1 in enumerate(monos1):
                for j, m2 in enumerate(monos2):
                    sign, m = tangent.mul_monomials(m1, m2)
                    if sign:
                        b_products[(bd1, i, bd2, j)] = {
                            b_index[m][1]: field.coerce(sign)}

    return build_cy(F, n, scale, b_labels, flat_tables, b_products)


# -- template ------------------------------------------------------------------------


def cy3_template(field):
    """Schema example for user-supplied packages: a minimal synthetic diamond
    with only the four corner classes; no geometric Hodge numbers are claimed."""
    one = field.one
    spaces = {(0, 0): ["one"], (3, 0): ["om"], (0, 3): ["omb"], (3, 3): ["top"]}
    products = {}
    for bd in spaces:
        products[((0, 0), 0, bd, 0)] = {0: one}
        if bd != (0, 0):
            products[(bd, 0, (0, 0), 0)] = {0: one}
    products[((3, 0), 0, (0, 3), 0)] = {0: one}
    products[((0, 3), 0, (3, 0), 0)] = {0: -one}
    F = build_frobenius(field, 3, spaces, products, [one])
    b_spaces = {(0, 0): ["b_one"], (3, 0): ["b_om"], (0, 3): ["b_omb"],
                (3, 3): ["b_top"]}
    flat_tables = {bd: linalg.identity(1, field) for bd in b_spaces}
    b_products = {}
    for bd in b_spaces:
        b_products[((0, 0), 0, bd, 0)] = {0: one}
        if bd != (0, 0):
            b_products[(bd, 0, (0, 0), 0)] = {0: one}
    b_products[((3, 0), 0, (0, 3), 0)] = {0: one}
    b_products[((0, 3), 0, (3, 0), 0)] = {0: -one}
    return build_cy(F, 3, 1, b_spaces, flat_tables, b_products)


# -- the catalog -----------------------------------------------------------------------


CATALOG = (
    "point",
    "sphere-S2",
    "sphere-S3",
    "cpn-2", "cpn-3", "cpn-4", "cpn-5", "cpn-6",
    "torus-T2", "torus-T4", "torus-T6",
    "torus-T2-dolbeault", "torus-T4-dolbeault", "torus-T6-dolbeault",
    "heisenberg",
    "iwasawa-type",
    "kahler-square",
    "kahler-square-tensor",
    "t2-cy-package",
    "t4-hyperkahler-package",
    "cy3-diamond-template",
)


def build_entry(name: str, field: ScalarField | None = None) -> dict:
    """The JSON document for one catalog entry."""
    from . import fileio

    field = field or QQ
    if name == "point":
        from .dga import trivial_dga

        return fileio.emit_tabular(trivial_dga(field), field)
    if name == "sphere-S2":
        return fileio.emit_free(sphere_even(field), field, cap=10)
    if name == "sphere-S3":
        return fileio.emit_free(sphere_odd(field), field, cap=10)
    if name.startswith("cpn-"):
        n = int(name.split("-")[1])
        return fileio.emit_frobenius(projective_space_ring(field, n), field)
    if name.startswith("torus-T") and name.endswith("-dolbeault"):
        n = int(name.split("-")[1][1:]) // 2
        pres = free_dga(field, torus_dolbeault_gens(n), {}, 2 * n)
        return fileio.emit_free_bicomplex(pres, {}, field, cap=2 * n)
    if name.startswith("torus-T"):
        n2 = int(name.split("-")[1][1:])
        return fileio.emit_free(torus_de_rham(field, n2), field, cap=n2)
    if name == "heisenberg":
        return fileio.emit_free(heisenberg(field), field, cap=3)
    if name == "iwasawa-type":
        d_pres, dc_pres = iwasawa_like(field)
        return fileio.emit_free_bicomplex(
            d_pres, {"fb3": "-1*fb1*fb2"}, field, cap=6)
    if name == "kahler-square":
        return fileio.emit_bicomplex(kahler_square(field), field)
    if name == "kahler-square-tensor":
        return fileio.emit_bicomplex(kahler_square_tensor(field), field)
    if name == "t2-cy-package":
        return fileio.emit_cy(torus_cy_package(field, 1), field)
    if name == "t4-hyperkahler-package":
        return fileio.emit_cy(torus_cy_package(field, 2), field)
    if name == "cy3-diamond-template":
        doc = fileio.emit_cy(cy3_template(field), field)
        doc["comment"] = ("schema template: replace the corner-only diamond with "
                          "your manifold's classes, products, trace, contraction "
                          "tables and polyvector products")
        return doc
    raise PreconditionError(f"unknown corpus entry {name!r}")
