"""Exact root-datum, polytope, gluing and cohomology computations.

Structured inputs (root data, polytopes, covers, lattices, oracle tables) use
the same JSON schemas as the command line tool; the wrappers below accept
either a dict or an already-serialized JSON string.
"""

import json as _json

from ._polyweyl import (
    cech_vanishing as _cech_vanishing,
    classify_su2,
    cut_corner as _cut_corner,
    delzant_check,
    fiber_structure as _fiber_structure,
    global_sections as _global_sections,
    glue_weyl as _glue_weyl,
    hermite_normal_form,
    is_direct_summand,
    mf_check as _mf_check,
    phi_m as _phi_m,
    quotient_invariants,
    rank1_multiply,
    recognize_finite_type,
    smith_normal_form,
    special_roots as _special_roots,
    symplectic_identity_check,
    weight_monoid,
)

__all__ = [
    "cech_vanishing",
    "classify_su2",
    "cut_corner",
    "delzant_check",
    "fiber_structure",
    "global_sections",
    "glue_weyl",
    "hermite_normal_form",
    "is_direct_summand",
    "mf_check",
    "phi_m",
    "quotient_invariants",
    "rank1_multiply",
    "recognize_finite_type",
    "smith_normal_form",
    "special_roots",
    "symplectic_identity_check",
    "weight_monoid",
]


def _as_json(doc):
    if doc is None:
        return ""
    if isinstance(doc, str):
        return doc
    return _json.dumps(doc)


def mf_check(polytope, lattice, datum, oracle=None):
    return _mf_check(_as_json(polytope), _as_json(lattice), _as_json(datum), _as_json(oracle))


def glue_weyl(datum, polytope):
    return _glue_weyl(_as_json(datum), _as_json(polytope))


def phi_m(datum, polytope, lattice=None):
    out = _phi_m(_as_json(datum), _as_json(polytope), _as_json(lattice))
    out["datum"] = _json.loads(out.pop("datum_json"))
    return out


def fiber_structure(datum, point):
    return _fiber_structure(_as_json(datum), [str(c) for c in point])


def global_sections(datum):
    return _global_sections(_as_json(datum))


def special_roots(datum):
    return _special_roots(_as_json(datum))


def cech_vanishing(datum, polytope, cover):
    return _cech_vanishing(_as_json(datum), _as_json(polytope), _as_json(cover))


def cut_corner(polytope, vertex, eps):
    return _json.loads(_cut_corner(_as_json(polytope), [str(c) for c in vertex], str(eps)))
