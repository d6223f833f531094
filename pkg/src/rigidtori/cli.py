"""Batch front end: analyze / rigidity / enumerate-rigid / polarize /
deform / selftest.

Reads a JSON input document, writes a human-readable summary to stdout and,
with --output, a machine-readable JSON report.  Exit status: 0 success,
1 domain error (e.g. a non-rigid action passed to polarize), 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import deform as deform_mod
from . import polarize as polarize_mod
from .characters import DEFAULT_SEED, character_table, centre_decomposition, galois_orbits
from .fixtures import NON_CM_QUARTIC, group_by_name
from .hodge import (HSViolation, InconsistentCharacter, InvalidRepresentation,
                    RoundingFailure, brute_force_hom_dimension,
                    exact_structure_from_spec, hodge_character_from_numeric,
                    isotypic_split, rigidity_by_centre, rigidity_by_character,
                    spec_from_character, enumerate_rigid_types)
from .groups import InvalidGroup
from .polyfields import RealEmbeddingPresent, ReduciblePolynomial
from .schemas import (SchemaError, dump_report, load_group_doc,
                      load_representation_doc, load_symbolic_spec, to_jsonable)

DOMAIN_ERRORS = (
    polarize_mod.NotRigid, polarize_mod.NonCMFieldActive,
    polarize_mod.NotCMField, polarize_mod.RelationIFails,
    polarize_mod.NotPositiveDefinite, polarize_mod.RosatiFails,
    deform_mod.NoConvergence, deform_mod.BudgetExhausted,
    HSViolation, InconsistentCharacter, RoundingFailure,
    InvalidRepresentation, InvalidGroup,
    RealEmbeddingPresent, ReduciblePolynomial,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rigidtori",
        description="Rigidity, polarizations, and projective deformations "
                    "of finite group actions on complex tori.")
    parser.add_argument("command", choices=[
        "analyze", "rigidity", "enumerate-rigid", "polarize", "deform",
        "selftest"])
    parser.add_argument("--input", help="path to the JSON input document")
    parser.add_argument("--output", help="path for the machine-readable report")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--max-denominator", type=int, default=256)
    parser.add_argument("--epsilon", type=float, default=1.0)
    parser.add_argument("--g-invariant", action="store_true")
    parser.add_argument("--tolerance-relation-i", type=float,
                        default=polarize_mod.RELATION_I_TOL)
    parser.add_argument("--tolerance-min-eigenvalue", type=float,
                        default=polarize_mod.MIN_EIGENVALUE_BOUND)
    parser.add_argument("--tolerance-newton", type=float,
                        default=deform_mod.NEWTON_TOL)
    parser.add_argument("--tolerance-margin", type=float,
                        default=deform_mod.POSITIVITY_MARGIN)
    parser.add_argument("--tolerance-chart-condition", type=float,
                        default=deform_mod.CHART_CONDITION_BOUND)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "selftest":
            report = run_selftest(args)
        else:
            if not args.input:
                parser.error("--input is required for this command")
            with open(args.input) as fh:
                doc = json.load(fh)
            runner = {
                "analyze": run_analyze,
                "rigidity": run_rigidity,
                "enumerate-rigid": run_enumerate,
                "polarize": run_polarize,
                "deform": run_deform,
            }[args.command]
            report = runner(doc, args)
    except (SchemaError, json.JSONDecodeError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        payload = {"error": type(exc).__name__, "message": str(exc)}
        witness = getattr(exc, "witness", None)
        if witness is not None:
            payload["witness"] = witness
        best = getattr(exc, "best", None)
        if best is not None:
            payload["diagnostics"] = best
        _emit(args, {"command": args.command, "seed": args.seed,
                     "error": payload})
        print(f"domain error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    _emit(args, report)
    if args.command == "selftest" and not report["result"]["ok"]:
        return 1
    return 0


def _emit(args, report):
    text = dump_report(report)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    render_human(to_jsonable(report))


def render_human(report):
    result = report.get("result", report.get("error", {}))
    print(f"== {report.get('command', '?')} ==")
    _render(result, indent=0)


def _is_scalar(x):
    return not isinstance(x, (dict, list, tuple)) or (
        isinstance(x, dict) and "display" in x)


def _render(node, indent):
    pad = "  " * indent
    if isinstance(node, dict) and "display" not in node:
        for key in sorted(node):
            value = node[key]
            if _is_scalar(value) or not value:
                print(f"{pad}{key}: {_scalar(value)}")
            else:
                print(f"{pad}{key}:")
                _render(value, indent + 1)
    elif isinstance(node, (list, tuple)):
        if all(_is_scalar(x) for x in node):
            print(f"{pad}[{', '.join(_scalar(x) for x in node)}]")
        else:
            for x in node:
                _render(x, indent)
    else:
        print(f"{pad}{_scalar(node)}")


def _scalar(x):
    from fractions import Fraction
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict) and "display" in x:
        return x["display"]
    return str(x)


# -- command implementations --------------------------------------------------


def run_analyze(doc, args):
    group = load_group_doc(doc)
    table = character_table(group, seed=args.seed)
    decomp = galois_orbits(table)
    centre = centre_decomposition(table, decomp)
    classes = table.classes
    rows = []
    for r in range(table.size):
        rows.append({
            "degree": table.degrees[r],
            "values": [v for v in table.rows[r]],
        })
    orbit_docs = []
    for j, orbit in enumerate(decomp.orbits):
        orbit_docs.append({
            "rows": list(orbit.rows),
            "field": {
                "conductor": orbit.field_spec.field.m,
                "fixing_subgroup": list(orbit.field_spec.fixing_subgroup),
                "degree": orbit.field_spec.degree,
            },
            "classification": orbit.tag,
            "idempotent": list(orbit.idempotent),
        })
    result = {
        "group": {"name": group.name, "order": group.order,
                  "exponent": group.exponent},
        "classes": {
            "count": classes.count,
            "sizes": list(classes.sizes),
            "representatives": list(classes.representatives),
            "element_orders": [group.element_order[g]
                               for g in classes.representatives],
        },
        "character_table": rows,
        "galois_orbits": orbit_docs,
        "centre_fields": [
            {"orbit": s.orbit_index, "degree": s.field_spec.degree,
             "classification": s.tag}
            for s in centre],
    }
    return {"command": "analyze", "seed": args.seed, "result": result}


def _spec_and_structure(rep, j_matrix, spec_doc, args):
    """Resolve the Hodge data pathways of a representation document."""
    table = character_table(rep.group, seed=args.seed)
    decomp = galois_orbits(table)
    spec = None
    chi10 = None
    structure = None
    if spec_doc is not None:
        spec = load_symbolic_spec(spec_doc, decomp)
        structure = exact_structure_from_spec(rep, spec)
        chi10 = structure.hodge_character()
    elif j_matrix is not None:
        chi10 = hodge_character_from_numeric(rep, j_matrix)
        spec = spec_from_character(chi10)
    else:
        raise SchemaError("representation document needs J_matrix or "
                          "symbolic_spec for this command")
    return table, decomp, spec, chi10, structure


def run_rigidity(doc, args):
    rep, j_matrix, spec_doc = load_representation_doc(doc)
    table, decomp, spec, chi10, structure = _spec_and_structure(
        rep, j_matrix, spec_doc, args)
    char_report = rigidity_by_character(chi10, table)
    centre_report = rigidity_by_centre(spec)
    methods = [
        {"method": "character", "hom_dimension": char_report.hom_dimension,
         "is_rigid": char_report.is_rigid},
        {"method": "centre", "hom_dimension": None,
         "is_rigid": centre_report.is_rigid},
    ]
    if structure is None and char_report.is_rigid:
        structure = exact_structure_from_spec(rep, spec)
    if structure is not None:
        bf = brute_force_hom_dimension(rep, structure, chi10)
        methods.append({"method": "brute_force", "hom_dimension": bf,
                        "is_rigid": bf == 0})
    else:
        methods.append({"method": "brute_force", "hom_dimension": None,
                        "is_rigid": None,
                        "skipped": "no exact complex structure available "
                                   "for a non-rigid numeric input"})
    verdicts = {m["is_rigid"] for m in methods if m["is_rigid"] is not None}
    dims = {m["hom_dimension"] for m in methods
            if m["hom_dimension"] is not None}
    result = {
        "hom_dimension": char_report.hom_dimension,
        "is_rigid": char_report.is_rigid,
        "infinitesimal_deformation_dimension": char_report.hom_dimension,
        "tau_table": [
            {"orbit": row[0], "embedding_coset": row[1], "tau": row[2],
             "tau_conjugate": row[3], "product": row[4]}
            for row in char_report.tau_rows],
        "methods": methods,
        "agreement": len(verdicts) == 1 and len(dims) <= 1,
    }
    return {"command": "rigidity", "seed": args.seed, "result": result}


def run_enumerate(doc, args):
    rep, j_matrix, spec_doc = load_representation_doc(doc)
    table = character_table(rep.group, seed=args.seed)
    decomp = galois_orbits(table)
    pieces = isotypic_split(rep, decomp)
    mults = [len(img) // orbit.field_spec.degree
             for (p, img), orbit in zip(pieces, decomp.orbits)]
    specs = enumerate_rigid_types(decomp, mults)
    expected = 1
    blocked = False
    for j, orbit in enumerate(decomp.orbits):
        if mults[j] > 0:
            if orbit.tag == "TotallyReal":
                blocked = True
            else:
                expected *= 2 ** (orbit.field_spec.degree // 2)
    expected = 0 if blocked else expected
    result = {
        "multiplicities": mults,
        "count": len(specs),
        "expected_count": expected,
        "types": [
            {"summands": [
                {"orbit": s.orbit_index, "multiplicity": s.multiplicity,
                 "tau": {str(a): v for a, v in s.tau}}
                for s in sp.summands if s.multiplicity > 0]}
            for sp in specs],
    }
    return {"command": "enumerate-rigid", "seed": args.seed, "result": result}


def run_polarize(doc, args):
    if isinstance(doc, dict) and "polynomial" in doc:
        return _run_polarize_polynomial(doc, args)
    rep, j_matrix, spec_doc = load_representation_doc(doc)
    table, decomp, spec, chi10, structure = _spec_and_structure(
        rep, j_matrix, spec_doc, args)
    form = polarize_mod.assemble_polarization(
        rep, spec=spec, g_invariant=args.g_invariant, seed=args.seed)
    cert = form.certificate
    result = {
        "rank": form.rank,
        "matrix": [list(row) for row in form.matrix],
        "zeta_per_summand": [
            {"orbit": orbit, "copies": copies, "zeta_coords": list(coords)}
            for orbit, copies, coords, _ in form.provenance],
        "signs": [
            {"orbit": orbit,
             "imaginary_signs": {str(a): s for a, s in sign_table}}
            for orbit, _, _, sign_table in form.provenance],
        "certificate": {
            "relation_I": cert.relation_i,
            "relation_II": cert.relation_ii,
            "rosati": cert.rosati,
            "g_invariant": cert.g_invariant,
            "mode": cert.mode,
        },
    }
    return {"command": "polarize", "seed": args.seed,
            "options": {"g_invariant": bool(args.g_invariant)},
            "result": result}


def _run_polarize_polynomial(doc, args):
    from .schemas import _check_keys
    _check_keys(doc, {"polynomial", "designated_roots"}, set(),
                "polynomial document")
    cert = polarize_mod.polarization_exists(
        doc["polynomial"], doc["designated_roots"],
        max_denominator=args.max_denominator)
    result = {
        "verdict": cert.verdict,
        "witness": list(cert.witness) if cert.witness else None,
        "signs": list(cert.witness_signs) if cert.witness_signs else None,
        "obstruction": cert.obstruction,
    }
    return {"command": "polarize", "seed": args.seed, "result": result}


def run_deform(doc, args):
    rep, j_matrix, spec_doc = load_representation_doc(doc)
    if j_matrix is None and spec_doc is not None:
        table = character_table(rep.group, seed=args.seed)
        decomp = galois_orbits(table)
        spec = load_symbolic_spec(spec_doc, decomp)
        structure = exact_structure_from_spec(rep, spec)
        j_matrix = structure.j_matrix_float().tolist()
    if j_matrix is None:
        raise SchemaError("deform needs J_matrix or symbolic_spec")
    res = deform_mod.find_projective_neighbor(
        rep, j_matrix, max_denominator=args.max_denominator,
        epsilon=args.epsilon, tol=args.tolerance_newton,
        margin=args.tolerance_margin,
        condition_bound=args.tolerance_chart_condition)
    result = {
        "xi_coords": list(res.xi_coords),
        "denominator": res.denominator,
        "t_norm": res.t_norm,
        "residual": res.residual,
        "positivity_margin": res.positivity_margin,
        "iterations": res.iterations,
        "chart_dimension": res.chart_dimension,
        "t_matrix": [list(row) for row in res.t_matrix],
    }
    return {"command": "deform", "seed": args.seed,
            "options": {"max_denominator": args.max_denominator,
                        "epsilon": args.epsilon},
            "result": result}


def run_selftest(args):
    """Quick bundled checks: orthogonality on three groups, the Gaussian
    polarization golden value, the non-CM quartic, one deformation run."""
    checks = []

    def record(name, fn):
        try:
            fn()
            checks.append({"check": name, "ok": True})
        except Exception as exc:  # noqa: BLE001 - report everything
            checks.append({"check": name, "ok": False,
                           "error": f"{type(exc).__name__}: {exc}"})

    def check_tables():
        for name in ("S3", "Q8", "Z12"):
            table = character_table(group_by_name(name), seed=args.seed)
            table.verify()
            table.verify_columns()

    def check_gaussian():
        from .fixtures import gaussian_action
        rep = gaussian_action()
        form = polarize_mod.assemble_polarization(
            rep, j_matrix=[[0, -1], [1, 0]], seed=args.seed)
        expected = ((0, 1), (-1, 0))
        got = tuple(tuple(int(x) for x in row) for row in form.matrix)
        assert got == expected, f"Gaussian form {got} != {expected}"

    def check_quartic():
        cert = polarize_mod.polarization_exists(NON_CM_QUARTIC, (0, 2))
        assert cert.verdict == "infeasible"

    def check_deform():
        from .fixtures import trivial_action
        rng = np.random.default_rng(args.seed)
        rep = trivial_action(4)
        while True:
            a = rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2))
            full = np.hstack([a, np.conj(a)])
            if np.linalg.cond(full) < 50:
                break
        j = (full @ np.diag([1j, 1j, -1j, -1j]) @ np.linalg.inv(full)).real
        res = deform_mod.find_projective_neighbor(rep, j, max_denominator=64,
                                                  epsilon=10.0)
        assert res.residual < deform_mod.NEWTON_TOL

    record("character_tables", check_tables)
    record("gaussian_polarization", check_gaussian)
    record("non_cm_quartic", check_quartic)
    record("projective_deformation", check_deform)
    ok = all(c["ok"] for c in checks)
    return {"command": "selftest", "seed": args.seed,
            "result": {"ok": ok, "checks": checks}}


if __name__ == "__main__":
    sys.exit(main())
