"""JSON interchange for algebras, bicomplexes, Frobenius data and packages.

Strict schemas: unknown keys are rejected, every scalar and polynomial is a
string in the shared grammar, and emission is canonical so that re-emitting
a parsed document reproduces it byte for byte.
"""

from __future__ import annotations

import json

from . import linalg
from .dga import FreeDGA, TabularDGA
from .errors import SchemaError
from .freealg import Polynomial
from .frobenius import BigradedFrobenius, RationalStructure, build_frobenius
from .grammar import PolyParseError, format_poly, parse_poly
from .hodge import MetricBicomplex
from .mirror import CalabiYauPackage, build_cy
from .scalars import ScalarField, field_by_name

KINDS = ("free-dga", "tabular-dga", "bicomplex", "frobenius", "cy-package")


def _require_keys(doc, required, optional=(), where="document"):
    if not isinstance(doc, dict):
        raise SchemaError(f"{where} must be a JSON object")
    missing = [k for k in required if k not in doc]
    if missing:
        raise SchemaError(f"{where} misses required keys {missing}")
    unknown = [k for k in doc if k not in required and k not in optional]
    if unknown:
        raise SchemaError(f"{where} has unknown keys {unknown}")


def _field_of(doc) -> ScalarField:
    try:
        return field_by_name(doc["scalars"])
    except ValueError as e:
        raise SchemaError(str(e)) from None


# -- polynomial values ---------------------------------------------------------------


def poly_from_string(algebra, field, text) -> Polynomial:
    """Generator-polynomial from the grammar (free presentations)."""
    try:
        terms = parse_poly(field, text)
    except PolyParseError as e:
        raise SchemaError(str(e)) from None
    out = {}
    for coef, factors in terms:
        try:
            mono = algebra.monomial(
                [(algebra.by_name[name].index, e) for name, e in factors])
        except KeyError as e:
            raise SchemaError(f"unknown generator {e.args[0]!r}") from None
        except ValueError as e:
            raise SchemaError(str(e)) from None
        out[mono] = out.get(mono, field.zero) + coef
    return Polynomial(algebra, out)


def poly_to_string(poly: Polynomial) -> str:
    alg = poly.algebra
    monos = sorted(poly.terms,
                   key=lambda m: (alg.mono_degree(m), alg._mono_sort_key(m)))
    return format_poly(
        poly.algebra.field,
        [(poly.terms[m], alg.mono_str(m) if m else "") for m in monos])


def combo_from_string(field, text, positions):
    """Linear combination of labels -> {label: coefficient}.

    `positions` maps label -> anything; only membership is used.  Exponents
    and products of labels are rejected (values are vectors, not monomials).
    """
    try:
        terms = parse_poly(field, text)
    except PolyParseError as e:
        raise SchemaError(str(e)) from None
    out = {}
    for coef, factors in terms:
        if len(factors) != 1 or factors[0][1] != 1:
            raise SchemaError(
                f"value {text!r} must be a linear combination of basis labels")
        label = factors[0][0]
        if label not in positions:
            raise SchemaError(f"unknown basis label {label!r}")
        out[label] = out.get(label, field.zero) + coef
    return {k: v for k, v in out.items() if v}


def combo_to_string(field, items):
    """items: ordered (label, coefficient) pairs."""
    return format_poly(field, [(c, label) for label, c in items])


def scalar_from_string(field, text):
    try:
        return field.parse(text)
    except ValueError as e:
        raise SchemaError(str(e)) from None


# -- free presentations -----------------------------------------------------------------


def parse_free(doc) -> tuple[FreeDGA, int]:
    _require_keys(doc, ("kind", "scalars", "cap", "generators"),
                  ("differential",), "free-dga")
    field = _field_of(doc)
    cap = _int(doc["cap"], "cap")
    gens = []
    for g in doc["generators"]:
        _require_keys(g, ("name", "p"), ("q",), "generator")
        gens.append((g["name"], _int(g["p"], "p"), _int(g.get("q", 0), "q")))
    try:
        pres = FreeDGA(field, gens, {}, None)
    except ValueError as e:
        raise SchemaError(str(e)) from None
    for entry in doc.get("differential", []):
        _require_keys(entry, ("on", "value"), (), "differential entry")
        if entry["on"] not in pres.algebra.by_name:
            raise SchemaError(f"differential on unknown generator {entry['on']!r}")
        pres.d_values[entry["on"]] = poly_from_string(
            pres.algebra, field, entry["value"])
    pres.cap = cap
    return pres, cap


def emit_free(pres: FreeDGA, field, cap) -> dict:
    gens = []
    for g in pres.algebra.generators:
        item = {"name": g.name, "p": g.p}
        if g.q:
            item["q"] = g.q
        gens.append(item)
    diff = [{"on": name, "value": poly_to_string(pres.d_values[name])}
            for name in sorted(pres.d_values) if pres.d_values[name]]
    doc = {"kind": "free-dga", "scalars": field.name, "cap": cap,
           "generators": gens}
    if diff:
        doc["differential"] = diff
    return doc


# -- tabular algebras --------------------------------------------------------------------


def _parse_basis(doc, field):
    labels_by_degree: dict[int, list[str]] = {}
    bidegrees: dict[int, list[tuple[int, int]]] = {}
    positions: dict[str, tuple[int, int]] = {}
    for item in doc["basis"]:
        _require_keys(item, ("label", "p"), ("q",), "basis entry")
        p = _int(item["p"], "p")
        q = _int(item.get("q", 0), "q")
        n = p + q
        label = item["label"]
        if label in positions:
            raise SchemaError(f"duplicate basis label {label!r}")
        labels_by_degree.setdefault(n, [])
        bidegrees.setdefault(n, [])
        positions[label] = (n, len(labels_by_degree[n]))
        labels_by_degree[n].append(label)
        bidegrees[n].append((p, q))
    return labels_by_degree, bidegrees, positions


def _parse_products(doc, field, positions, unit_label):
    products = {}
    for item in doc.get("products", []):
        _require_keys(item, ("a", "b", "value"), (), "product entry")
        if item["a"] not in positions or item["b"] not in positions:
            raise SchemaError(f"product on unknown labels {item['a']!r}, {item['b']!r}")
        na, ia = positions[item["a"]]
        nb, ib = positions[item["b"]]
        combo = combo_from_string(field, item["value"], positions)
        entry = {}
        for label, c in combo.items():
            nt, it = positions[label]
            if nt != na + nb:
                raise SchemaError(
                    f"product {item['a']!r}*{item['b']!r} lands in degree {nt}, "
                    f"expected {na + nb}")
            entry[it] = c
        if entry:
            products[(na, ia, nb, ib)] = entry
    # implied unit row/column
    nu, iu = positions[unit_label]
    if (nu, iu) != (0, iu):
        raise SchemaError("the unit must live in degree 0")
    for label, (n, i) in positions.items():
        products.setdefault((0, iu, n, i), {i: field.one})
        products.setdefault((n, i, 0, iu), {i: field.one})
    return products


def parse_tabular(doc) -> TabularDGA:
    _require_keys(doc, ("kind", "scalars", "cap", "basis", "unit"),
                  ("products", "differential", "complete"), "tabular-dga")
    field = _field_of(doc)
    cap = _int(doc["cap"], "cap")
    labels, bidegrees, positions = _parse_basis(doc, field)
    if doc["unit"] not in positions:
        raise SchemaError(f"unknown unit label {doc['unit']!r}")
    products = _parse_products(doc, field, positions, doc["unit"])
    diff = {}
    for item in doc.get("differential", []):
        _require_keys(item, ("on", "value"), (), "differential entry")
        if item["on"] not in positions:
            raise SchemaError(f"differential on unknown label {item['on']!r}")
        n, i = positions[item["on"]]
        combo = combo_from_string(field, item["value"], positions)
        if n not in diff:
            diff[n] = linalg.zeros(len(labels.get(n + 1, [])),
                                   len(labels.get(n, [])), field)
        for label, c in combo.items():
            nt, it = positions[label]
            if nt != n + 1:
                raise SchemaError(f"differential of {item['on']!r} is not degree +1")
            diff[n][it][i] = c
    if max(labels, default=0) > cap:
        raise SchemaError("basis entries beyond the cap")
    try:
        return TabularDGA(field, cap, labels, bidegrees, products, diff,
                          unit_index=positions[doc["unit"]][1],
                          complete=bool(doc.get("complete", True)))
    except ValueError as e:
        raise SchemaError(str(e)) from None


_SAFE = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_"


def _sanitize_labels(A: TabularDGA):
    out = {}
    seen = set()
    for n in A.degrees():
        names = []
        for lbl in A.labels[n]:
            s = "".join(ch if ch in _SAFE else "_" for ch in lbl)
            if not s or s[0].isdigit():
                s = "e_" + s
            base, k = s, 1
            while s in seen:
                k += 1
                s = f"{base}_{k}"
            seen.add(s)
            names.append(s)
        out[n] = names
    return out


def emit_tabular(A: TabularDGA, field, kind="tabular-dga", extra=None) -> dict:
    names = _sanitize_labels(A)
    basis = []
    for n in A.degrees():
        for i, _ in enumerate(A.labels[n]):
            p, q = A.bidegrees[n][i]
            item = {"label": names[n][i], "p": p}
            if q:
                item["q"] = q
            basis.append(item)
    products = []
    for n in A.degrees():
        for m in range(A.cap + 1 - n):
            for i in range(A.dim(n)):
                if (n, i) == (0, A.unit_index):
                    continue
                for j in range(A.dim(m)):
                    if (m, j) == (0, A.unit_index):
                        continue
                    entry = A.product_entry(n, i, m, j)
                    if entry:
                        items = [(names[n + m][k], entry[k]) for k in sorted(entry)]
                        products.append({"a": names[n][i], "b": names[m][j],
                                         "value": combo_to_string(field, items)})
    differential = []
    for n in range(A.cap):
        mat = A.d_matrix(n)
        for i in range(A.dim(n)):
            col = [(names[n + 1][k], mat[k][i]) for k in range(A.dim(n + 1))
                   if mat[k][i]]
            if col:
                differential.append({"on": names[n][i],
                                     "value": combo_to_string(field, col)})
    doc = {"kind": kind, "scalars": field.name, "cap": A.cap,
           "basis": basis, "unit": names[0][A.unit_index]}
    if products:
        doc["products"] = products
    if differential:
        doc["differential"] = differential
    doc["complete"] = A.complete
    if extra:
        doc.update(extra)
    return doc


# -- bicomplexes ------------------------------------------------------------------------


def _parse_metric(doc, field, dims):
    metric = doc["metric"]
    _require_keys(metric, (), ("orthonormal", "gram"), "metric")
    if metric.get("orthonormal"):
        return {}
    gram = {}
    for key, rows in metric.get("gram", {}).items():
        n = _int(key, "gram degree")
        gram[n] = [[scalar_from_string(field, v) for v in row] for row in rows]
        if len(gram[n]) != dims.get(n, 0):
            raise SchemaError(f"gram matrix in degree {n} has the wrong size")
    return gram


def parse_bicomplex(doc) -> MetricBicomplex:
    if "generators" in doc:
        _require_keys(doc, ("kind", "scalars", "cap", "generators", "metric"),
                      ("differential", "differential2"), "bicomplex")
        field = _field_of(doc)
        cap = _int(doc["cap"], "cap")
        sub = {k: doc[k] for k in ("kind", "scalars", "cap", "generators") if k in doc}
        sub["differential"] = doc.get("differential", [])
        sub["kind"] = "free-dga"
        pres, _ = parse_free(sub)
        pres2 = FreeDGA(field, [(g.name, g.p, g.q) for g in pres.algebra.generators],
                        {}, None)
        for entry in doc.get("differential2", []):
            _require_keys(entry, ("on", "value"), (), "differential2 entry")
            pres2.d_values[entry["on"]] = poly_from_string(
                pres2.algebra, field, entry["value"])
        m1 = pres.materialize(cap)
        m2 = pres2.materialize(cap)
        dims = {n: m1.dga.dim(n) for n in m1.dga.degrees()}
        gram = _parse_metric(doc, field, dims)
        try:
            return MetricBicomplex(m1.dga,
                                   {n: m2.dga.d_matrix(n) for n in range(cap)},
                                   gram or None)
        except ValueError as e:
            raise SchemaError(str(e)) from None
    _require_keys(doc, ("kind", "scalars", "cap", "basis", "unit", "metric"),
                  ("products", "differential", "differential2", "complete"),
                  "bicomplex")
    field = _field_of(doc)
    sub = dict(doc)
    sub.pop("metric")
    dc_entries = sub.pop("differential2", [])
    sub["kind"] = "tabular-dga"
    A = parse_tabular(sub)
    _, _, positions = _parse_basis(doc, field)
    dc = {}
    for item in dc_entries:
        _require_keys(item, ("on", "value"), (), "differential2 entry")
        n, i = positions[item["on"]]
        combo = combo_from_string(field, item["value"], positions)
        if n not in dc:
            dc[n] = linalg.zeros(A.dim(n + 1), A.dim(n), field)
        for label, c in combo.items():
            nt, it = positions[label]
            if nt != n + 1:
                raise SchemaError("differential2 is not of degree +1")
            dc[n][it][i] = c
    dims = {n: A.dim(n) for n in A.degrees()}
    gram = _parse_metric(doc, field, dims)
    try:
        return MetricBicomplex(A, dc, gram or None)
    except ValueError as e:
        raise SchemaError(str(e)) from None


def emit_bicomplex(B: MetricBicomplex, field) -> dict:
    doc = emit_tabular(B.A, field, kind="bicomplex")
    names = _sanitize_labels(B.A)
    d2 = []
    for n in range(B.A.cap):
        mat = B.dc.at(n)
        for i in range(B.A.dim(n)):
            col = [(names[n + 1][k], mat[k][i]) for k in range(B.A.dim(n + 1))
                   if mat[k][i]]
            if col:
                d2.append({"on": names[n][i], "value": combo_to_string(field, col)})
    if d2:
        doc["differential2"] = d2
    if B.gram:
        doc["metric"] = {"gram": {
            str(n): [[field.format(x) for x in row] for row in g]
            for n, g in sorted(B.gram.items())}}
    else:
        doc["metric"] = {"orthonormal": True}
    return doc


def emit_free_bicomplex(pres: FreeDGA, d2_strings, field, cap) -> dict:
    doc = emit_free(pres, field, cap)
    doc["kind"] = "bicomplex"
    if d2_strings:
        doc["differential2"] = [{"on": k, "value": v}
                                for k, v in sorted(d2_strings.items())]
    doc["metric"] = {"orthonormal": True}
    return doc


# -- Frobenius algebras --------------------------------------------------------------------


def _parse_bigraded_basis(items, where):
    spaces: dict[tuple[int, int], list[str]] = {}
    positions: dict[str, tuple[tuple[int, int], int]] = {}
    for item in items:
        _require_keys(item, ("label", "p", "q"), (), where)
        bd = (_int(item["p"], "p"), _int(item["q"], "q"))
        label = item["label"]
        if label in positions:
            raise SchemaError(f"duplicate label {label!r}")
        spaces.setdefault(bd, [])
        positions[label] = (bd, len(spaces[bd]))
        spaces[bd].append(label)
    return spaces, positions


def _parse_bigraded_products(items, field, positions, unit_label, where):
    products = {}
    for item in items:
        _require_keys(item, ("a", "b", "value"), (), where)
        if item["a"] not in positions or item["b"] not in positions:
            raise SchemaError(f"{where} on unknown labels")
        bda, ia = positions[item["a"]]
        bdb, ib = positions[item["b"]]
        combo = combo_from_string(field, item["value"], positions)
        entry = {}
        for label, c in combo.items():
            bdt, it = positions[label]
            if bdt != (bda[0] + bdb[0], bda[1] + bdb[1]):
                raise SchemaError(
                    f"{where} {item['a']!r}*{item['b']!r} has the wrong bidegree")
            entry[it] = c
        if entry:
            products[(bda, ia, bdb, ib)] = entry
    ubd, iu = positions[unit_label]
    if ubd != (0, 0):
        raise SchemaError("the unit must live in bidegree (0, 0)")
    for label, (bd, i) in positions.items():
        products.setdefault(((0, 0), iu, bd, i), {i: field.one})
        products.setdefault((bd, i, (0, 0), iu), {i: field.one})
    return products


def parse_frobenius(doc) -> BigradedFrobenius:
    _require_keys(doc, ("kind", "scalars", "n", "basis", "unit", "trace"),
                  ("products",), "frobenius")
    field = _field_of(doc)
    n = _int(doc["n"], "n")
    spaces, positions = _parse_bigraded_basis(doc["basis"], "basis entry")
    if doc["unit"] not in positions:
        raise SchemaError(f"unknown unit label {doc['unit']!r}")
    products = _parse_bigraded_products(
        doc.get("products", []), field, positions, doc["unit"], "product")
    top = (n, n)
    trace = [field.zero] * len(spaces.get(top, []))
    for item in doc["trace"]:
        _require_keys(item, ("on", "value"), (), "trace entry")
        if item["on"] not in positions or positions[item["on"]][0] != top:
            raise SchemaError("trace entries must live in the top bidegree")
        trace[positions[item["on"]][1]] = scalar_from_string(field, item["value"])
    try:
        return build_frobenius(field, n, spaces, products, trace,
                               unit_index=positions[doc["unit"]][1])
    except ValueError as e:
        raise SchemaError(str(e)) from None


def _emit_bigraded(F: BigradedFrobenius, field):
    basis = []
    for bd in F.bidegrees():
        for label in F.spaces[bd]:
            basis.append({"label": label, "p": bd[0], "q": bd[1]})
    products = []
    unit = ((0, 0), F.unit_index)
    for bd1 in F.bidegrees():
        for bd2 in F.bidegrees():
            tgt = (bd1[0] + bd2[0], bd1[1] + bd2[1])
            if tgt not in F.spaces:
                continue
            for i in range(F.dim(bd1)):
                if (bd1, i) == unit:
                    continue
                for j in range(F.dim(bd2)):
                    if (bd2, j) == unit:
                        continue
                    entry = F.product_entry(bd1, i, bd2, j)
                    if entry:
                        items = [(F.spaces[tgt][k], entry[k]) for k in sorted(entry)]
                        products.append({
                            "a": F.spaces[bd1][i], "b": F.spaces[bd2][j],
                            "value": combo_to_string(field, items)})
    trace = [{"on": F.spaces[(F.n, F.n)][k], "value": field.format(v)}
             for k, v in enumerate(F.trace) if v]
    return basis, products, trace


def emit_frobenius(F: BigradedFrobenius, field) -> dict:
    basis, products, trace = _emit_bigraded(F, field)
    doc = {"kind": "frobenius", "scalars": field.name, "n": F.n,
           "basis": basis, "unit": F.spaces[(0, 0)][F.unit_index]}
    if products:
        doc["products"] = products
    doc["trace"] = trace
    return doc


# -- Calabi-Yau packages ---------------------------------------------------------------------


def parse_cy(doc) -> tuple[CalabiYauPackage, RationalStructure | None]:
    _require_keys(doc, ("kind", "scalars", "n", "basis", "unit", "trace",
                        "omega", "b_basis", "flat", "b_products"),
                  ("products", "rational_basis", "comment"), "cy-package")
    field = _field_of(doc)
    sub = {k: doc[k] for k in ("scalars", "n", "basis", "unit", "trace")}
    sub["kind"] = "frobenius"
    if "products" in doc:
        sub["products"] = doc["products"]
    a_side = parse_frobenius(sub)
    _require_keys(doc["omega"], ("scale",), (), "omega")
    scale = scalar_from_string(field, doc["omega"]["scale"])
    b_spaces, b_positions = _parse_bigraded_basis(doc["b_basis"], "b_basis entry")
    _, a_positions = _parse_bigraded_basis(doc["basis"], "basis entry")
    n = a_side.n
    flat_tables = {}
    for item in doc["flat"]:
        _require_keys(item, ("on", "value"), (), "flat entry")
        if item["on"] not in b_positions:
            raise SchemaError(f"flat on unknown polyvector label {item['on']!r}")
        bd, j = b_positions[item["on"]]
        tgt = (n - bd[0], bd[1])
        if bd not in flat_tables:
            flat_tables[bd] = linalg.zeros(
                a_side.dim(tgt), len(b_spaces[bd]), field)
        combo = combo_from_string(field, item["value"], a_positions)
        for label, c in combo.items():
            bdt, it = a_positions[label]
            if bdt != tgt:
                raise SchemaError(
                    f"flat image of {item['on']!r} is not in bidegree {tgt}")
            flat_tables[bd][it][j] = c
    b_unit_candidates = b_spaces.get((0, 0), [])
    if len(b_unit_candidates) != 1:
        raise SchemaError("b_basis must have exactly one (0, 0) label")
    b_products = _parse_bigraded_products(
        doc["b_products"], field, b_positions, b_unit_candidates[0], "b_product")
    try:
        package = build_cy(a_side, n, scale, b_spaces, flat_tables, b_products)
    except ValueError as e:
        raise SchemaError(str(e)) from None
    structure = None
    if "rational_basis" in doc:
        cols: dict[tuple[int, int], list] = {}
        for item in doc["rational_basis"]:
            _require_keys(item, ("label", "value"), (), "rational_basis entry")
            combo = combo_from_string(field, item["value"], a_positions)
            bds = {a_positions[lbl][0] for lbl in combo}
            if len(bds) != 1:
                raise SchemaError("rational basis vectors must be bihomogeneous")
            bd = bds.pop()
            vec = a_side.zero_vec(bd)
            for lbl, c in combo.items():
                vec[a_positions[lbl][1]] = c
            cols.setdefault(bd, []).append(vec)
        structure = RationalStructure(
            {bd: linalg.transpose(vs) for bd, vs in cols.items()})
    return package, structure


def emit_cy(P: CalabiYauPackage, field) -> dict:
    basis, products, trace = _emit_bigraded(P.a, field)
    doc = {"kind": "cy-package", "scalars": field.name, "n": P.n,
           "basis": basis, "unit": P.a.spaces[(0, 0)][P.a.unit_index]}
    if products:
        doc["products"] = products
    doc["trace"] = trace
    doc["omega"] = {"scale": field.format(P.scale)}
    b_basis = []
    for bd in sorted(P.b_spaces):
        for label in P.b_spaces[bd]:
            b_basis.append({"label": label, "p": bd[0], "q": bd[1]})
    doc["b_basis"] = b_basis
    flat = []
    for bd in sorted(P.b_spaces):
        tgt = (P.n - bd[0], bd[1])
        mat = P.flat0[bd]
        for j, label in enumerate(P.b_spaces[bd]):
            items = [(P.a.spaces[tgt][i], mat[i][j])
                     for i in range(P.a.dim(tgt)) if mat[i][j]]
            flat.append({"on": label, "value": combo_to_string(field, items)})
    doc["flat"] = flat
    b_products = []
    unit = ((0, 0), 0)
    for bd1 in sorted(P.b_spaces):
        for bd2 in sorted(P.b_spaces):
            tgt = (bd1[0] + bd2[0], bd1[1] + bd2[1])
            if tgt not in P.b_spaces:
                continue
            for i in range(P.b_dim(bd1)):
                if (bd1, i) == unit:
                    continue
                for j in range(P.b_dim(bd2)):
                    if (bd2, j) == unit:
                        continue
                    entry = P.b_products.get((bd1, i, bd2, j), {})
                    if entry:
                        items = [(P.b_spaces[tgt][k], entry[k])
                                 for k in sorted(entry)]
                        b_products.append({
                            "a": P.b_spaces[bd1][i], "b": P.b_spaces[bd2][j],
                            "value": combo_to_string(field, items)})
    doc["b_products"] = b_products
    return doc


# -- document front door -------------------------------------------------------------------


def parse_document(doc):
    """Dispatch a parsed JSON object to its kind; returns (kind, payload)."""
    if not isinstance(doc, dict) or "kind" not in doc:
        raise SchemaError("document must be a JSON object with a 'kind'")
    kind = doc["kind"]
    if kind == "free-dga":
        return kind, parse_free(doc)
    if kind == "tabular-dga":
        return kind, parse_tabular(doc)
    if kind == "bicomplex":
        return kind, parse_bicomplex(doc)
    if kind == "frobenius":
        return kind, parse_frobenius(doc)
    if kind == "cy-package":
        return kind, parse_cy(doc)
    raise SchemaError(f"unknown kind {kind!r}; expected one of {KINDS}")


def load_path(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path} is not valid JSON: {e}") from None
    return parse_document(doc)


def dump_document(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _int(x, where):
    if isinstance(x, bool) or not isinstance(x, int):
        raise SchemaError(f"{where} must be an integer")
    return x
