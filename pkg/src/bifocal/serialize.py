"""JSON forms of every artifact.

Rationals are strings ``"p/q"`` (``"p"`` when q = 1); matrices are row-major
arrays of arrays of such strings.  Key order is fixed so identical inputs give
byte-identical files.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .camera import ProjectionPair, make_pair
from .canon import CanonicalReduction, Decomposition
from .errors import ShapeError, ValidationError
from .exterior import MultiIndex, PluckerVector
from .gtensor import GrassmannTensor, Profile
from .moduli import TauPoint
from .ratmat import RatMat, Subspace, format_rat, rat, span


def rat_to_json(x: Fraction) -> str:
    return format_rat(x)


def rat_from_json(s) -> Fraction:
    try:
        return rat(s)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"bad rational literal {s!r}") from exc


def mat_to_json(m: RatMat) -> list[list[str]]:
    return [[format_rat(x) for x in row] for row in m.tolist()]


def mat_from_json(data, cols: int | None = None) -> RatMat:
    if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
        raise ValidationError("a matrix must be a JSON array of arrays")
    try:
        return RatMat([[rat_from_json(x) for x in r] for r in data], cols=cols)
    except ShapeError as exc:
        raise ValidationError(str(exc)) from exc


def vec_to_json(v) -> list[str]:
    return [format_rat(x) for x in v]


def pair_to_dict(pair: ProjectionPair) -> dict[str, Any]:
    return {"k": pair.k, "h1": pair.h1, "h2": pair.h2,
            "A": mat_to_json(pair.A), "B": mat_to_json(pair.B)}


def pair_from_dict(d: dict) -> ProjectionPair:
    try:
        A = mat_from_json(d["A"])
        B = mat_from_json(d["B"])
    except KeyError as exc:
        raise ValidationError(f"pair file is missing {exc}") from exc
    pair = make_pair(A, B)
    for key in ("k", "h1", "h2"):
        if key in d and d[key] != getattr(pair, key):
            raise ValidationError(f"declared {key}={d[key]} disagrees with the matrices")
    return pair


def _labels(labels: tuple[MultiIndex, ...]) -> list[list[int]]:
    return [list(m.indices) for m in labels]


def tensor_to_dict(T: GrassmannTensor) -> dict[str, Any]:
    return {"k": T.k, "h1": T.h1, "h2": T.h2,
            "alpha1": T.profile.alpha1, "alpha2": T.profile.alpha2,
            "row_labels": _labels(T.row_labels), "col_labels": _labels(T.col_labels),
            "F": mat_to_json(T.F)}


def tensor_from_dict(d: dict) -> GrassmannTensor:
    k, h1, h2 = d["k"], d["h1"], d["h2"]
    profile = Profile.for_dims(k, h1, h2, d["alpha1"], d["alpha2"])
    rows = tuple(MultiIndex(tuple(r), h2 + 1) for r in d["row_labels"])
    cols = tuple(MultiIndex(tuple(c), h1 + 1) for c in d["col_labels"])
    F = mat_from_json(d["F"], cols=len(cols))
    if F.rows != len(rows):
        raise ValidationError("tensor matrix does not match its labels")
    return GrassmannTensor(k, h1, h2, profile, rows, cols, F)


def reduction_to_dict(red: CanonicalReduction) -> dict[str, Any]:
    return {"G": mat_to_json(red.G), "K1": mat_to_json(red.K1), "K2": mat_to_json(red.K2),
            "detG": format_rat(red.detG), "canonical": mat_to_json(red.canonical)}


def reduction_from_dict(d: dict) -> CanonicalReduction:
    return CanonicalReduction(mat_from_json(d["G"]), mat_from_json(d["K1"]), mat_from_json(d["K2"]),
                              rat_from_json(d["detG"]), mat_from_json(d["canonical"]))


def decomposition_to_dict(dec: Decomposition) -> dict[str, Any]:
    return {"scalar": format_rat(dec.scalar),
            "terms": [{"P": vec_to_json(P), "Q": vec_to_json(Q)} for P, Q in dec.terms]}


def decomposition_from_dict(d: dict) -> Decomposition:
    terms = tuple((tuple(map(rat_from_json, t["P"])), tuple(map(rat_from_json, t["Q"])))
                  for t in d["terms"])
    return Decomposition(rat_from_json(d["scalar"]), terms)


def tau_to_dict(tau: TauPoint) -> dict[str, Any]:
    return {"i": tau.i, "tau1": mat_to_json(tau.tau1), "tau2": mat_to_json(tau.tau2)}


def tau_from_dict(d: dict) -> TauPoint:
    i = d["i"]
    return TauPoint(i, mat_from_json(d["tau1"], cols=i), mat_from_json(d["tau2"], cols=i))


def subspace_to_dict(s: Subspace) -> dict[str, Any]:
    return {"ambient_dim": s.ambient_dim, "basis": mat_to_json(s.basis)}


def subspace_from_dict(d: dict) -> Subspace:
    """Read a subspace; any generator matrix is accepted and canonicalized."""
    n = d["ambient_dim"]
    rows = d["basis"]
    if len(rows) != n:
        raise ValidationError(f"basis has {len(rows)} rows, ambient dimension is {n}")
    width = len(rows[0]) if rows else 0
    return span(mat_from_json(rows, cols=width))


def plucker_to_dict(p: PluckerVector) -> dict[str, Any]:
    return {"r": p.r, "n": p.n, "coords": vec_to_json(p.coords)}


def plucker_from_dict(d: dict) -> PluckerVector:
    return PluckerVector(d["r"], d["n"], tuple(map(rat_from_json, d["coords"])))


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def write_json(obj: dict, path: str | Path | None) -> str:
    text = dumps(obj)
    if path is not None and str(path) != "-":
        Path(path).write_text(text)
    return text


def read_json(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
