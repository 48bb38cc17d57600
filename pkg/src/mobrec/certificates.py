"""JSON certificates: big integers as decimal strings, versioned by a format tag."""

from __future__ import annotations

import json
from typing import Any, Dict

from . import checker
from .arith import from_decimal, rat_to_str, to_decimal
from .classify import Classification, Verdict
from .colorings import Archimedean, PAdic, Parity
from .graph import CliqueCert, PairWitness
from .multfun import ModDirichlet, describe
from .ratio_sets import MoebiusParams

CLIQUE_FORMAT = checker.CLIQUE_FORMAT
CLASSIFICATION_FORMAT = checker.CLASSIFICATION_FORMAT


def _jsonable(x: Any) -> Any:
    if isinstance(x, bool) or x is None or isinstance(x, (str, float)):
        return x
    if isinstance(x, int):
        return to_decimal(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


def coloring_dict(spec) -> Dict[str, Any]:
    if isinstance(spec, Archimedean):
        return {"kind": "Archimedean", "alpha": rat_to_str(spec.alpha),
                "beta": rat_to_str(spec.beta), "k": spec.k, "t": "1/log(alpha*beta)"}
    if isinstance(spec, PAdic):
        return {"kind": "PAdic", "p": spec.p, "k": spec.k, "colors": spec.num_colors}
    if isinstance(spec, Parity):
        return {"kind": "Parity", "p": spec.p, "k": spec.k, "colors": 2}
    raise TypeError(spec)


def witness_dict(f) -> Dict[str, Any]:
    out = describe(f)
    if isinstance(f, ModDirichlet):
        g = f.group
        out["generators"] = [g.generator] if f.p != 2 else ([-1, 5][: len(g.orders)])
        out["orders"] = list(g.orders)
    return out


def clique_to_dict(cert: CliqueCert) -> Dict[str, Any]:
    p = cert.params
    pairs = [
        {"i": i, "j": j, "n": to_decimal(w.n), "orientation": "forward" if w.forward else "backward"}
        for (i, j), w in sorted(cert.witnesses.items())
    ]
    meta = {}
    for key, val in cert.meta.items():
        if key == "levels":
            meta["levels"] = [
                {"k": lv.k, "H": to_decimal(lv.H), "multiplier": lv.multiplier_expr or None,
                 "ell": None if lv.ell is None else to_decimal(lv.ell)}
                for lv in val
            ]
        elif key == "reduction":
            meta["reduction"] = reduction_dict(val)
        else:
            meta[key] = _jsonable(val)
    return {
        "format": CLIQUE_FORMAT,
        "params": [p.a, p.b, p.c, p.d],
        "vertices": [to_decimal(v) for v in cert.vertices],
        "pairs": pairs,
        "meta": meta,
    }


def clique_from_dict(data: Dict[str, Any]) -> CliqueCert:
    if data.get("format") != CLIQUE_FORMAT:
        raise ValueError(f"not a clique certificate: {data.get('format')!r}")
    params = MoebiusParams(*(int(x) for x in data["params"]))
    vs = tuple(from_decimal(v) for v in data["vertices"])
    wits = {
        (p["i"], p["j"]): PairWitness(p["orientation"] == "forward", from_decimal(p["n"]))
        for p in data["pairs"]
    }
    return CliqueCert(params, vs, wits, dict(data.get("meta", {})))


def reduction_dict(red) -> Dict[str, Any]:
    return {
        "normalized": [red.a, red.b, red.d], "g": red.g, "swapped": red.swapped,
        "j": red.j, "k": red.k_bez, "T": red.T,
        "A": red.A, "B": red.B, "J": red.J, "C": red.C, "D": red.D,
    }


def classification_to_dict(cl: Classification) -> Dict[str, Any]:
    p = cl.params
    out: Dict[str, Any] = {
        "format": CLASSIFICATION_FORMAT,
        "params": [p.a, p.b, p.c, p.d],
        "verdict": cl.verdict.value,
    }
    if cl.verdict is Verdict.RECURRENT:
        out["reduction"] = _jsonable(reduction_dict(cl.reduction))
    elif cl.verdict is Verdict.NON_RECURRENT:
        out["case"] = {"label": cl.case.label, "name": cl.case.name, "p": cl.case.p, "k": cl.case.k}
        out["coloring"] = coloring_dict(cl.coloring)
        out["witness"] = witness_dict(cl.witness)
        out["chromatic_upper_bound"] = cl.chromatic_upper_bound
    return out


def dumps(data: Dict[str, Any]) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def verify_dict(data: Dict[str, Any]):
    """(ok, message) from the standalone checker."""
    return checker.check(json.loads(json.dumps(data)))
