"""Report documents: canonical JSON with input digests.

Reports carry no timing field, so identical inputs render byte-identical
text; wall time belongs in the human summary on stderr.
"""

from __future__ import annotations

import hashlib
import json

from .atypes import AType, ClosedAType
from .geometry import Variety, VarietyMorphism
from .structures import FinStructure, Hom
from .syntax import (App, Const, Eq, Rel, Sentence, Var, print_atom,
                     print_sentence)


def file_digest(path) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def structure_view(A: FinStructure) -> dict:
    return {
        "name": A.name,
        "sorts": {s: list(A.carriers[s]) for s in A.sig.sorts},
        "functions": {f: {",".join(args): val
                          for args, val in sorted(tbl.items())}
                      for f, tbl in A.functions.items()},
        "relations": {r: [list(t) for t in sorted(tups)]
                      for r, tups in A.relations.items()},
        "constants": dict(A.constants),
    }


def hom_view(h: Hom) -> dict:
    return {"source": h.source.name, "target": h.target.name,
            "mapping": h.as_dict()}


def closed_view(c: ClosedAType) -> dict:
    terms = c.universe.terms
    rels = sorted(f"{r}({', '.join(str(terms[i]) for i in ids)})"
                  for r, ids in c.rel_atoms)
    return {
        "n_terms": len(terms),
        "n_classes": len(set(c.class_of.values())),
        "classes": [[str(t) for t in cls] for cls in c.classes()],
        "relations": rels,
    }


def atype_view(pi: AType) -> dict:
    out = {"variables": [f"{v.name}:{v.sort}" for v in pi.variables],
           "atoms": sorted(print_atom(a) for a in pi.atoms)}
    if pi.base is not None:
        out["base"] = pi.base.name
    return out


def _key(k):
    if isinstance(k, str):
        return k
    if isinstance(k, tuple):
        return ",".join(str(x) for x in k)
    return str(k)


def jsonable(obj):
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if isinstance(obj, dict):
        return {_key(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if isinstance(obj, (set, frozenset)):
        items = [jsonable(x) for x in obj]
        return sorted(items, key=lambda v: json.dumps(v, sort_keys=True))
    if isinstance(obj, (Eq, Rel)):
        return print_atom(obj)
    if isinstance(obj, (Var, Const, App)):
        return str(obj)
    if isinstance(obj, Sentence):
        return print_sentence(obj)
    if isinstance(obj, FinStructure):
        return structure_view(obj)
    if isinstance(obj, Hom):
        return hom_view(obj)
    if isinstance(obj, ClosedAType):
        return closed_view(obj)
    if isinstance(obj, AType):
        return atype_view(obj)
    if isinstance(obj, Variety):
        return {"name": obj.name, "points": [list(p) for p in obj.points]}
    if isinstance(obj, VarietyMorphism):
        return {"source": obj.source.name, "target": obj.target.name,
                "graph": [[list(s), list(t)] for s, t in
                          sorted(obj.graph.items())]}
    return str(obj)


def make_report(command: str, inputs=(), scope=None, body=None) -> dict:
    report = {
        "command": command,
        "inputs": {str(p): file_digest(p) for p in inputs},
        "scope": dict(scope or {}),
    }
    report.update(body or {})
    return report


def render_report(report: dict) -> str:
    return json.dumps(jsonable(report), sort_keys=True, indent=2) + "\n"
