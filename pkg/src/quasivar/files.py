"""Line-oriented file formats: signatures, theories, structures, a-types,
varieties, and variety morphisms.

Files that build on another name it after `over`; that path resolves
relative to the referring file's directory.  UTF-8, `#` starts a comment,
blank lines are ignored.
"""

from __future__ import annotations

import os
import re

from .errors import ParseError, SortError, ValidationError
from .atypes import AType, make_atype
from .geometry import Variety, VarietyMorphism, make_morphism, rational_points
from .structures import FinStructure
from .syntax import (Signature, Theory, Var, atom_key, is_plain_name,
                     parse_atom, parse_signature, parse_theory, print_atom,
                     print_signature, print_theory)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _write(path: str, text: str):
    if not text.endswith("\n"):
        text += "\n"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _resolve(ref: str, relative_to: str) -> str:
    if os.path.isabs(ref):
        return ref
    return os.path.normpath(os.path.join(os.path.dirname(relative_to), ref))


def _body_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield lineno, body


# --- signatures and theories ---

def load_signature(path: str) -> Signature:
    return parse_signature(_read(path))


def save_signature(sig: Signature, path: str):
    _write(path, print_signature(sig))


_THEORY_HEAD = re.compile(r"^theory\s+(\S+)\s+over\s+(\S+)$")


def load_theory(path: str) -> Theory:
    text = _read(path)
    lines = list(_body_lines(text))
    if not lines or not _THEORY_HEAD.match(lines[0][1]):
        raise ParseError(f"{path}: expected 'theory NAME over SIGFILE' header")
    m = _THEORY_HEAD.match(lines[0][1])
    sig = load_signature(_resolve(m.group(2), path))
    rest = "\n".join(body for _no, body in lines[1:])
    return parse_theory(rest, sig, name=m.group(1))


def save_theory(t: Theory, path: str, sigfile: str):
    out = [f"theory {t.name} over {sigfile}"]
    out.append(print_theory(t))
    _write(path, "\n".join(out))


# --- structures ---

_STRUCT_HEAD = re.compile(r"^structure\s+(\S+)\s+over\s+(\S+)$")
_ENTRY = re.compile(r"^(sort|fun|rel|const)\s+(\S+)\s*=\s*(.*)$")
_TUPLE = re.compile(r"\(([^()]*)\)")
_FUN_ENTRY = re.compile(r"\(([^()]*)\)\s*->\s*([^\s,{}]+)")


def _brace(body: str, path: str, lineno: int) -> str:
    if not (body.startswith("{") and body.endswith("}")):
        raise ParseError(f"{path}:{lineno}: expected a {{...}} list")
    return body[1:-1].strip()


def _split_tuple(inner: str):
    inner = inner.strip()
    if not inner:
        return ()
    return tuple(x.strip() for x in inner.split(","))


def load_structure(path: str) -> FinStructure:
    text = _read(path)
    lines = list(_body_lines(text))
    if not lines or not _STRUCT_HEAD.match(lines[0][1]):
        raise ParseError(f"{path}: expected 'structure NAME over SIGFILE' header")
    head = _STRUCT_HEAD.match(lines[0][1])
    name = head.group(1)
    sig = load_signature(_resolve(head.group(2), path))
    carriers, functions, relations, constants = {}, {}, {}, {}
    for lineno, body in lines[1:]:
        m = _ENTRY.match(body)
        if not m:
            raise ParseError(f"{path}:{lineno}: expected "
                             "'sort|fun|rel|const NAME = ...'")
        kind, sym, rhs = m.groups()
        if kind == "const":
            constants[sym] = rhs.strip()
            continue
        inner = _brace(rhs, path, lineno)
        if kind == "sort":
            carriers[sym] = _split_tuple(inner)
        elif kind == "rel":
            relations[sym] = {tuple(_split_tuple(t.group(1)))
                              for t in _TUPLE.finditer(inner)}
        else:
            tbl = {}
            for t in _FUN_ENTRY.finditer(inner):
                tbl[tuple(_split_tuple(t.group(1)))] = t.group(2)
            functions[sym] = tbl
    return FinStructure(sig, carriers, functions, relations, constants,
                        name=name)


def _renamed(A: FinStructure) -> FinStructure:
    # the format spells elements as plain names; rename if anything is not
    if all(is_plain_name(e) for s in A.sig.sorts for e in A.carriers[s]):
        return A
    new = {}
    i = 0
    for s in A.sig.sorts:
        for e in A.carriers[s]:
            new[e] = f"e{i}"
            i += 1
    carriers = {s: tuple(new[e] for e in A.carriers[s]) for s in A.sig.sorts}
    functions = {f: {tuple(new[a] for a in args): new[v]
                     for args, v in tbl.items()}
                 for f, tbl in A.functions.items()}
    relations = {r: {tuple(new[a] for a in tup) for tup in tups}
                 for r, tups in A.relations.items()}
    constants = {c: new[e] for c, e in A.constants.items()}
    return FinStructure(A.sig, carriers, functions, relations, constants,
                        name=A.name)


def save_structure(A: FinStructure, path: str, sigfile: str):
    A = _renamed(A)
    out = [f"structure {A.name} over {sigfile}"]
    for s in A.sig.sorts:
        out.append(f"sort {s} = {{{', '.join(A.carriers[s])}}}")
    for f in A.sig.functions:
        entries = [f"({','.join(args)})->{val}"
                   for args, val in sorted(A.functions[f].items())]
        out.append(f"fun {f} = {{{', '.join(entries)}}}")
    for r in A.sig.relations:
        entries = [f"({','.join(tup)})" for tup in sorted(A.relations[r])]
        out.append(f"rel {r} = {{{', '.join(entries)}}}")
    for c in A.sig.constants:
        out.append(f"const {c} = {A.constants[c]}")
    _write(path, "\n".join(out))


# --- a-types and varieties ---

_ATYPE_HEAD = re.compile(r"^atype\s+over\s+(\S+)(?:\s+vars\s+(.+))?$")


def _parse_vars(spec: str, sig: Signature):
    out = []
    for piece in spec.split(","):
        piece = piece.strip()
        if ":" not in piece:
            raise ParseError(f"variable {piece!r} needs the form name:sort")
        vname, sort = (x.strip() for x in piece.split(":", 1))
        if sort not in sig.sorts:
            raise ParseError(f"unknown sort {sort!r} for variable {vname!r}")
        out.append(Var(vname, sort))
    return tuple(out)


def load_atype(path: str) -> AType:
    text = _read(path)
    lines = list(_body_lines(text))
    if not lines or not _ATYPE_HEAD.match(lines[0][1]):
        raise ParseError(f"{path}: expected 'atype over STRUCTFILE [vars ...]'"
                         " header")
    head = _ATYPE_HEAD.match(lines[0][1])
    A = load_structure(_resolve(head.group(1), path))
    variables = _parse_vars(head.group(2), A.sig) if head.group(2) else ()
    atoms = []
    for lineno, body in lines[1:]:
        try:
            atoms.append(parse_atom(body, A.sig, variables=variables,
                                    params=A.param_sorts()))
        except (ParseError, SortError) as exc:
            raise ParseError(f"{path}:{lineno}: {exc}") from exc
    return make_atype(A, variables, atoms)


def save_atype(pi: AType, path: str, structfile: str):
    head = f"atype over {structfile}"
    if pi.variables:
        head += " vars " + ", ".join(f"{v.name}:{v.sort}"
                                     for v in pi.variables)
    out = [head]
    out.extend(print_atom(a) for a in sorted(pi.atoms, key=atom_key))
    _write(path, "\n".join(out))


def load_variety(path: str, name: str = None) -> Variety:
    pi = load_atype(path)
    if name is None:
        name = os.path.splitext(os.path.basename(path))[0]
    return rational_points(pi, name=name)


def sigfile_of_structure(path: str) -> str:
    """Resolved path of the signature file a structure file builds on."""
    for _no, body in _body_lines(_read(path)):
        m = _STRUCT_HEAD.match(body)
        if not m:
            break
        return _resolve(m.group(2), path)
    raise ParseError(f"{path}: expected 'structure NAME over SIGFILE' header")


def structfile_of_atype(path: str) -> str:
    """Resolved path of the structure file an a-type file builds on."""
    for _no, body in _body_lines(_read(path)):
        m = _ATYPE_HEAD.match(body)
        if not m:
            break
        return _resolve(m.group(1), path)
    raise ParseError(f"{path}: expected 'atype over STRUCTFILE' header")


# --- variety morphisms ---

_MORPHISM_HEAD = re.compile(
    r'^morphism\s+from\s+(\S+)\s+to\s+(\S+)\s+formula\s+"(.*)"$')


def load_morphism(path: str, ctx) -> VarietyMorphism:
    lines = list(_body_lines(_read(path)))
    if len(lines) != 1 or not _MORPHISM_HEAD.match(lines[0][1]):
        raise ParseError(f"{path}: expected one line "
                         '\'morphism from VFILE to WFILE formula "..."\'')
    m = _MORPHISM_HEAD.match(lines[0][1])
    V = load_variety(_resolve(m.group(1), path))
    W = load_variety(_resolve(m.group(2), path))
    joint = V.variables + W.variables
    if len({v.name for v in joint}) != len(joint):
        raise ValidationError("source and target varieties share a "
                              "variable name")
    A = V.ambient
    atoms = tuple(parse_atom(part.strip(), A.sig, variables=joint,
                             params=A.param_sorts())
                  for part in m.group(3).split("&"))
    return make_morphism(V, W, atoms, ctx)
