"""Strict input documents and deterministic report serialization.

Input documents are JSON with a closed key set (unknown fields are
rejected).  Machine-readable reports serialize every exact number as a
"p/q" string and cyclotomic values as coefficient vectors, with sorted
keys, so byte-identical output across runs is a matter of determinism of
the pipeline itself.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .cyclotomic import CyclotomicNumber
from .fixtures import builtin_representation, group_by_name
from .groups import FiniteGroup
from .hodge import IntegralRepresentation, SummandType, SymbolicHodgeSpec

__all__ = [
    "SchemaError",
    "load_group_doc",
    "load_representation_doc",
    "to_jsonable",
    "dump_report",
]


class SchemaError(ValueError):
    pass


def _check_keys(doc, required, optional, what):
    if not isinstance(doc, dict):
        raise SchemaError(f"{what} must be an object")
    keys = set(doc)
    missing = required - keys
    if missing:
        raise SchemaError(f"{what} is missing fields {sorted(missing)}")
    unknown = keys - required - optional
    if unknown:
        raise SchemaError(f"{what} has unknown fields {sorted(unknown)}")


def load_group_doc(doc) -> FiniteGroup:
    """Group from {'builtin': name} or {'name', 'cayley_table' |
    'permutation_generators'}."""
    if isinstance(doc, dict) and set(doc) == {"builtin"}:
        try:
            return group_by_name(doc["builtin"])
        except KeyError as exc:
            raise SchemaError(str(exc)) from exc
    _check_keys(doc, {"name"}, {"cayley_table", "permutation_generators"},
                "group document")
    has_table = "cayley_table" in doc
    has_perms = "permutation_generators" in doc
    if has_table == has_perms:
        raise SchemaError(
            "group document needs exactly one of cayley_table / "
            "permutation_generators")
    try:
        if has_table:
            return FiniteGroup(doc["cayley_table"], name=str(doc["name"]))
        return FiniteGroup.from_permutations(
            doc["permutation_generators"], name=str(doc["name"]))
    except (ValueError, TypeError, IndexError) as exc:
        raise SchemaError(f"invalid group: {exc}") from exc


def load_representation_doc(doc):
    """Representation inputs: returns (rep, j_matrix | None, spec | None).

    Accepts {'builtin': name} or a full document with the group, integer
    matrices (per element or per generator), and optionally a float
    J_matrix or a symbolic_spec."""
    if isinstance(doc, dict) and set(doc) == {"builtin"}:
        try:
            rep = builtin_representation(doc["builtin"])
        except KeyError as exc:
            raise SchemaError(str(exc)) from exc
        return rep, None, None
    _check_keys(doc, {"group", "rank"},
                {"element_matrices", "generator_matrices", "generator_elements",
                 "J_matrix", "symbolic_spec"},
                "representation document")
    group = load_group_doc(doc["group"])
    rank = doc["rank"]
    if not isinstance(rank, int) or rank <= 0 or rank % 2:
        raise SchemaError("rank must be a positive even integer")
    try:
        if "element_matrices" in doc:
            if "generator_matrices" in doc:
                raise SchemaError("give element_matrices or "
                                  "generator_matrices, not both")
            rep = IntegralRepresentation(group, doc["element_matrices"])
        elif "generator_matrices" in doc:
            gen_elems = doc.get("generator_elements")
            if gen_elems is None:
                if not hasattr(group, "permutations"):
                    raise SchemaError(
                        "generator_elements is required with a Cayley-table "
                        "group")
                gen_elems = _permutation_generator_indices(group, doc)
            rep = IntegralRepresentation.from_generators(
                group, gen_elems, doc["generator_matrices"])
        else:
            raise SchemaError("representation needs matrices")
    except SchemaError:
        raise
    except (ValueError, TypeError, IndexError) as exc:
        raise SchemaError(f"invalid representation: {exc}") from exc
    if rep.rank != rank:
        raise SchemaError(f"declared rank {rank} but matrices have rank "
                          f"{rep.rank}")
    j_matrix = None
    if "J_matrix" in doc:
        j_matrix = doc["J_matrix"]
        if (not isinstance(j_matrix, list) or len(j_matrix) != rank
                or any(len(r) != rank for r in j_matrix)):
            raise SchemaError("J_matrix must be a rank x rank array")
    spec_doc = doc.get("symbolic_spec")
    return rep, j_matrix, spec_doc


def _permutation_generator_indices(group, doc):
    perms = group.permutations
    gens = doc["group"]["permutation_generators"]
    out = []
    lookup = {p: i for i, p in enumerate(perms)}
    for g in gens:
        out.append(lookup[tuple(g)])
    return out


def load_symbolic_spec(spec_doc, decomposition) -> SymbolicHodgeSpec:
    """{'multiplicities': [...], 'tau': {orbit: {coset: value}}} against a
    computed Galois-orbit decomposition."""
    _check_keys(spec_doc, {"multiplicities", "tau"}, set(), "symbolic_spec")
    mults = spec_doc["multiplicities"]
    orbits = decomposition.orbits
    if len(mults) != len(orbits):
        raise SchemaError(
            f"need {len(orbits)} multiplicities, one per centre summand")
    tau_doc = spec_doc["tau"]
    summands = []
    for j, orbit in enumerate(orbits):
        reps = orbit.field_spec.coset_reps()
        given = tau_doc.get(str(j), {})
        tau = []
        for a in reps:
            if str(a) in given:
                tau.append((a, int(given[str(a)])))
            elif mults[j] == 0:
                tau.append((a, 0))
            else:
                raise SchemaError(
                    f"tau missing for orbit {j}, embedding coset {a}")
        extra = set(given) - {str(a) for a in reps}
        if extra:
            raise SchemaError(f"tau has unknown cosets {sorted(extra)} "
                              f"for orbit {j}")
        summands.append(SummandType(orbit_index=j, multiplicity=int(mults[j]),
                                    tau=tuple(tau)))
    return SymbolicHodgeSpec(decomposition=decomposition,
                             summands=tuple(summands))


# -- serialization ------------------------------------------------------------


def to_jsonable(value):
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, CyclotomicNumber):
        return {
            "conductor": value.field.m,
            "coeffs": [to_jsonable(c) for c in value.coeffs],
            "display": value.as_string(),
        }
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, float):
        return float(value)
    if hasattr(value, "item") and not isinstance(value, (str, bytes)):
        return to_jsonable(value.item())
    return value


def dump_report(report: dict) -> str:
    return json.dumps(to_jsonable(report), sort_keys=True, indent=2) + "\n"
