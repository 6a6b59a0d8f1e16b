"""Parsing and serialization of the JSON-style exact documents.

Rationals travel as strings "num/den" (denominator omitted when 1); raw
JSON integers are accepted on input.  Non-reduced fractions like "2/4" are
accepted and reduced.  Parse errors carry the path of the offending field.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DocumentError
from .exact import Mat, Vec
from .geom import GroupElement, Polytope, Simplex
from .lattice import Lattice


def rational_to_str(q: Fraction) -> str:
    return str(q)


def parse_rational(value, path: str) -> Fraction:
    if isinstance(value, bool):
        raise DocumentError(path, "expected a rational string, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise DocumentError(path, f"invalid rational {value!r}: {exc}") from None
    raise DocumentError(path, f"expected a rational string, got {type(value).__name__}")


def parse_vector(value, path: str, dim: int | None = None) -> Vec:
    if not isinstance(value, list):
        raise DocumentError(path, "expected a list of rationals")
    v = tuple(parse_rational(x, f"{path}[{i}]") for i, x in enumerate(value))
    if dim is not None and len(v) != dim:
        raise DocumentError(path, f"expected {dim} coordinates, got {len(v)}")
    return v


def parse_simplex(value, path: str, dim: int | None = None) -> Simplex:
    if not isinstance(value, list):
        raise DocumentError(path, "expected a list of vertices")
    verts = tuple(parse_vector(v, f"{path}[{i}]", dim) for i, v in enumerate(value))
    try:
        return Simplex(verts)
    except Exception as exc:
        raise DocumentError(path, str(exc)) from None


def simplex_doc(s: Simplex) -> list:
    return [[str(x) for x in v] for v in s.vertices]


def parse_polytope(doc, path: str = "$", validate: bool = True) -> Polytope:
    if not isinstance(doc, dict) or "simplices" not in doc:
        raise DocumentError(path, "polytope document needs a 'simplices' field")
    dim = doc.get("dim")
    if not isinstance(dim, int) or dim < 1:
        raise DocumentError(f"{path}.dim", "expected a positive integer dimension")
    sims = doc["simplices"]
    if not isinstance(sims, list):
        raise DocumentError(f"{path}.simplices", "expected a list")
    simplices = tuple(parse_simplex(s, f"{path}.simplices[{i}]", dim)
                      for i, s in enumerate(sims))
    try:
        return Polytope(dim, simplices, validate=validate)
    except Exception as exc:
        raise DocumentError(path, str(exc)) from None


def polytope_doc(p: Polytope) -> dict:
    return {"dim": p.dim, "simplices": [simplex_doc(s) for s in p.simplices]}


def parse_element(doc, path: str = "$", validate: bool = True) -> GroupElement:
    if not isinstance(doc, dict) or "terms" not in doc:
        raise DocumentError(path, "group element document needs a 'terms' field")
    dim = doc.get("dim")
    if not isinstance(dim, int) or dim < 1:
        raise DocumentError(f"{path}.dim", "expected a positive integer dimension")
    terms = []
    for i, term in enumerate(doc["terms"]):
        tpath = f"{path}.terms[{i}]"
        if not isinstance(term, dict) or "coeff" not in term or "simplex" not in term:
            raise DocumentError(tpath, "term needs 'coeff' and 'simplex' fields")
        coeff = term["coeff"]
        if not isinstance(coeff, int) or coeff == 0:
            raise DocumentError(f"{tpath}.coeff", "expected a nonzero integer")
        terms.append((coeff, parse_simplex(term["simplex"], f"{tpath}.simplex", dim)))
    try:
        return GroupElement(dim, tuple(terms))
    except Exception as exc:
        raise DocumentError(path, str(exc)) from None


def element_doc(p: GroupElement) -> dict:
    return {"dim": p.dim,
            "terms": [{"coeff": m, "simplex": simplex_doc(s)} for m, s in p.terms]}


def parse_lattice(doc, path: str = "$") -> Lattice:
    if not isinstance(doc, dict) or "basis" not in doc:
        raise DocumentError(path, "lattice document needs a 'basis' field")
    rows = doc["basis"]
    if not isinstance(rows, list) or not rows:
        raise DocumentError(f"{path}.basis", "expected a nonempty list of rows")
    basis = tuple(parse_vector(r, f"{path}.basis[{i}]", len(rows))
                  for i, r in enumerate(rows))
    try:
        return Lattice(basis)
    except Exception as exc:
        raise DocumentError(f"{path}.basis", str(exc)) from None


def lattice_doc(l: Lattice) -> dict:
    return {"basis": [[str(x) for x in row] for row in l.basis]}


def parse_document(doc, path: str = "$", validate: bool = True):
    """Dispatch on the document shape: lattice, group element or polytope."""
    if not isinstance(doc, dict):
        raise DocumentError(path, "expected a JSON object")
    if "basis" in doc:
        return parse_lattice(doc, path)
    if "terms" in doc:
        return parse_element(doc, path, validate=validate)
    if "simplices" in doc:
        return parse_polytope(doc, path, validate=validate)
    raise DocumentError(path, "unrecognized document: need 'basis', 'terms' or 'simplices'")


def certificate_doc(pieces) -> dict:
    """Certificate document; 'coeff' is omitted for plain +1 pieces."""
    out = []
    for piece in pieces:
        if len(piece) == 2:
            s, shift = piece
            entry = {"simplex": simplex_doc(s), "shift": [str(x) for x in shift]}
        else:
            s, shift, coeff = piece
            entry = {"simplex": simplex_doc(s), "shift": [str(x) for x in shift],
                     "coeff": coeff}
        out.append(entry)
    return {"pieces": out}
