"""Command-line surface.

Subcommands: cohomology, minimal-model, formality, mirror, corpus.  Every
command produces a report with a machine section (canonical JSON, reproduced
byte for byte on identical inputs) and a human text summary.

Exit codes: 0 success, 2 parse/schema error, 3 precondition failure,
4 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import fileio
from .corpus import CATALOG, build_entry
from .dga import cohomology
from .errors import InternalConsistencyError, PreconditionError, SchemaError
from .fileio import combo_to_string, dump_document, load_path
from .frobenius import identity_rational_structure
from .hodge import CertificateRefused, formality_certificate, verify_hypotheses
from .minimal import build_minimal_model, formality_test_direct, homotopy_ranks
from .mirror import mirror_check, yukawa


def default_max_degree():
    env = os.environ.get("RHO_MAX_DEGREE")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise SchemaError("RHO_MAX_DEGREE must be an integer") from None
    return 8


def make_parser():
    ap = argparse.ArgumentParser(
        prog="rho",
        description="exact rational homotopy toolkit: models, formality, mirrors")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, max_degree=True):
        if max_degree:
            p.add_argument("--max-degree", type=int, default=None,
                           help="degree cap for the computation (default 8, "
                                "or RHO_MAX_DEGREE)")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("cohomology", help="degreewise cohomology ring of a DGA")
    p.add_argument("file")
    common(p)

    p = sub.add_parser("minimal-model",
                       help="Sullivan minimal model and homotopy ranks")
    p.add_argument("file")
    common(p)

    p = sub.add_parser("formality", help="formality certification or direct test")
    p.add_argument("file")
    p.add_argument("--engine", choices=("hodge", "direct"), default=None)
    p.add_argument("--budget", type=int, default=1000)
    common(p)

    p = sub.add_parser("mirror", help="mirror-pair verification and couplings")
    p.add_argument("a_file")
    p.add_argument("b_file")
    p.add_argument("--budget", type=int, default=1000)
    common(p, max_degree=False)

    p = sub.add_parser("corpus", help="write built-in example files")
    p.add_argument("name", nargs="?")
    p.add_argument("--list", action="store_true")
    p.add_argument("--all", action="store_true")
    p.add_argument("--out", default=".")
    p.add_argument("--format", choices=("text", "json"), default="text")
    return ap


def _dga_from(kind, payload, what="this command"):
    if kind == "free-dga":
        pres, cap = payload
        return pres.materialize(cap).dga
    if kind == "tabular-dga":
        return payload
    raise PreconditionError(f"{what} needs a free-dga or tabular-dga input")


def cmd_cohomology(args):
    n = args.max_degree if args.max_degree is not None else default_max_degree()
    kind, payload = load_path(args.file)
    A = _dga_from(kind, payload, "cohomology")
    H = cohomology(A, n)
    dims = {str(k): H.dim(k) for k in range(n + 1)}
    ring = []
    for p in range(n + 1):
        for q in range(p, n + 1 - p):
            for i in range(H.dim(p)):
                u = [H.field.one if t == i else H.field.zero
                     for t in range(H.dim(p))]
                for j in range(H.dim(q)):
                    v = [H.field.one if t == j else H.field.zero
                         for t in range(H.dim(q))]
                    w = H.mul_classes(p, u, q, v)
                    items = [(f"h{p + q}_{k}", c) for k, c in enumerate(w) if c]
                    if items:
                        ring.append({"a": f"h{p}_{i}", "b": f"h{q}_{j}",
                                     "value": combo_to_string(H.field, items)})
    machine = {
        "command": "cohomology", "input": args.file, "max_degree": n,
        "scalars": A.field.name, "dims": dims, "ring": ring, "up_to": n,
    }
    human = [f"cohomology of {args.file} through degree {n}"]
    human.append("dims: " + " ".join(f"H^{k}={dims[str(k)]}" for k in range(n + 1)))
    human.append(f"{len(ring)} nonzero ring constants on canonical classes")
    return machine, human


def cmd_minimal_model(args):
    n = args.max_degree if args.max_degree is not None else default_max_degree()
    kind, payload = load_path(args.file)
    A = _dga_from(kind, payload, "minimal-model")
    model = build_minimal_model(A, n)
    ranks = homotopy_ranks(model)
    gens = {str(k): v for k, v in sorted(model.generator_degrees.items())}
    diff = {}
    for g in model.presentation.algebra.generators:
        val = model.presentation.d_gen(g.name)
        if val:
            diff[g.name] = fileio.poly_to_string(val)
    machine = {
        "command": "minimal-model", "input": args.file, "max_degree": n,
        "scalars": A.field.name,
        "generators_per_degree": gens,
        "differential": diff,
        "homotopy_ranks": {str(k): v for k, v in sorted(ranks.ranks.items())},
        "comparison_map_verified": model.verification,
        "up_to": n,
    }
    human = [f"minimal model of {args.file} through degree {n}"]
    human.append("generators per degree: " +
                 (" ".join(f"{k}:{v}" for k, v in sorted(gens.items())) or "none"))
    for name, val in diff.items():
        human.append(f"  d {name} = {val}")
    human.append("homotopy ranks: " +
                 " ".join(f"pi_{k}={v}" for k, v in sorted(ranks.ranks.items())))
    human.append("comparison map re-verified as a quasi-isomorphism")
    return machine, human


def _witness_json(field, w):
    if w is None:
        return None
    out = {}
    for k, v in w.items():
        if isinstance(v, list):
            out[k] = [field.format(x) for x in v]
        elif isinstance(v, tuple):
            out[k] = list(v)
        else:
            out[k] = v
    return out


def cmd_formality(args):
    n = args.max_degree if args.max_degree is not None else default_max_degree()
    kind, payload = load_path(args.file)
    engine = args.engine
    if engine is None:
        engine = "hodge" if kind == "bicomplex" else "direct"
    if engine == "hodge":
        if kind != "bicomplex":
            raise PreconditionError(
                "the hodge engine needs a bicomplex input with a metric")
        B = payload
        try:
            cert = formality_certificate(B)
            hyp = cert.hypotheses
            refused = False
        except CertificateRefused as e:
            hyp = e.report
            cert = None
            refused = True
        hyp_json = {k: {"ok": r.ok, "witness": _witness_json(B.field, r.witness)}
                    for k, r in sorted(hyp.entries.items())}
        machine = {
            "command": "formality", "engine": "hodge", "input": args.file,
            "scalars": B.field.name,
            "hypotheses": hyp_json,
            "certified": bool(cert and cert.certified),
        }
        human = [f"formality certification of {args.file} (hodge engine)"]
        if refused:
            machine["refused"] = True
            failed = hyp.failed()
            machine["violated"] = failed
            human.append("certificate REFUSED; violated hypotheses: "
                         + ", ".join(failed))
        else:
            machine["fivefold_dims"] = {
                str(k): list(v) for k, v in sorted(cert.fivefold.dims.items())}
            machine["harmonic_dims"] = {
                str(k): v for k, v in sorted(cert.harmonic_dims.items())}
            machine["zigzag"] = {
                "inclusion_quasi_iso": cert.inclusion_quasi_iso.ok,
                "quotient_quasi_iso": cert.quotient_quasi_iso.ok,
                "d_zero_on_dc_cohomology": cert.d_zero_on_dc_cohomology,
                "kernel_splitting": cert.kernel_splitting_ok,
            }
            human.append("certificate issued: all hypotheses verified")
            human.append("fivefold dims per degree: " + " ".join(
                f"{k}:{'+'.join(map(str, v))}" for k, v in sorted(cert.fivefold.dims.items())))
            human.append("zigzag quasi-isomorphisms verified; the first "
                         "differential induces zero on the second cohomology")
        return machine, human
    A = _dga_from(kind, payload, "the direct engine")
    res = formality_test_direct(A, n, budget=args.budget)
    machine = {
        "command": "formality", "engine": "direct", "input": args.file,
        "max_degree": n, "budget": args.budget,
        "scalars": A.field.name,
        "verdict": res.verdict, "attempts": res.attempts, "up_to": n,
    }
    human = [f"direct formality test of {args.file} through degree {n}"]
    if res.verdict == "non-formal":
        machine["obstruction_degree"] = res.obstruction_degree
        machine["massey_witness"] = {
            "classes": [list(c) for c in res.witness_classes],
            "representative_class": [A.field.format(c)
                                     for c in res.massey_witness.representative_class],
        }
        human.append(f"NON-FORMAL: nonzero triple product witness in degree "
                     f"{res.obstruction_degree}")
    else:
        human.append(f"verdict: {res.verdict} (after {res.attempts} attempts)")
    return machine, human


def cmd_mirror(args):
    kind_a, payload_a = load_path(args.a_file)
    kind_b, payload_b = load_path(args.b_file)
    if kind_a == "frobenius":
        a_side = payload_a
    elif kind_a == "cy-package":
        a_side = payload_a[0].a
    else:
        raise PreconditionError("the first input must be frobenius or cy-package")
    if kind_b != "cy-package":
        raise PreconditionError("the second input must be a cy-package")
    package, structure = payload_b
    b_alg = package.b_algebra()
    verdict = mirror_check(a_side, b_alg, budget=args.budget)
    machine = {
        "command": "mirror", "a_input": args.a_file, "b_input": args.b_file,
        "budget": args.budget, "scalars": a_side.field.name,
        "verdict": verdict.status,
    }
    if verdict.isomorphism is not None:
        machine["isomorphism"] = {
            f"{bd[0]},{bd[1]}": [[a_side.field.format(x) for x in row] for row in m]
            for bd, m in sorted(verdict.isomorphism.items())
        }
    if verdict.obstruction is not None:
        machine["obstruction"] = {
            k: (str(v) if not isinstance(v, (int, list, dict)) else v)
            for k, v in verdict.obstruction.items()}
    yk = yukawa(package, structure or identity_rational_structure(package.a))
    machine["yukawa"] = {
        "rational": yk.rational,
        "witness": list(yk.witness) if yk.witness else None,
        "couplings": {",".join(k): package.field.format(v)
                      for k, v in sorted(yk.tensor.items()) if v},
    }
    human = [f"mirror check: {args.a_file} against the polyvector side of "
             f"{args.b_file}"]
    human.append(f"verdict: {verdict.status}")
    human.append("yukawa couplings "
                 + ("all rational" if yk.rational
                    else f"NOT rational, witness {yk.witness}"))
    return machine, human


def cmd_corpus(args):
    if args.list:
        machine = {"command": "corpus", "catalog": list(CATALOG)}
        return machine, list(CATALOG)
    names = list(CATALOG) if args.all else ([args.name] if args.name else [])
    if not names:
        raise SchemaError("corpus needs a name, --list or --all")
    for nm in names:
        if nm not in CATALOG:
            raise PreconditionError(f"unknown corpus entry {nm!r}")
    written = []
    os.makedirs(args.out, exist_ok=True)
    for nm in names:
        doc = build_entry(nm)
        path = os.path.join(args.out, f"{nm}.json")
        tmp = path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(dump_document(doc))
        os.replace(tmp, path)
        written.append(path)
    machine = {"command": "corpus", "written": written}
    return machine, [f"wrote {p}" for p in written]


COMMANDS = {
    "cohomology": cmd_cohomology,
    "minimal-model": cmd_minimal_model,
    "formality": cmd_formality,
    "mirror": cmd_mirror,
    "corpus": cmd_corpus,
}


def main(argv=None):
    ap = make_parser()
    args = ap.parse_args(argv)
    try:
        machine, human = COMMANDS[args.command](args)
    except SchemaError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except PreconditionError as e:
        print(f"precondition failed: {e}", file=sys.stderr)
        return 3
    except InternalConsistencyError as e:
        print(f"internal consistency failure: {e}", file=sys.stderr)
        return 4
    if getattr(args, "format", "text") == "json":
        sys.stdout.write(dump_document(machine))
    else:
        for line in human:
            print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
