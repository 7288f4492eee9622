"""Many-sorted signatures, terms, atomic formulas and the small sentence fragments.

Sentences are restricted to the shapes the engines actually decide:
atomic, implication (conjunction of atoms entailing one atom), clause
(conjunction entailing a disjunction, possibly empty = falsity), negated
conjunction, and existentially quantified conjunction.  The empty
conjunction is truth, the empty disjunction is falsity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import ParseError, SortError

# Words with fixed meaning in the file grammars; they cannot name symbols,
# sorts or elements that appear in parsed text.
RESERVED_WORDS = frozenset({
    "forall", "exists", "not", "true", "false",
    "sort", "fun", "rel", "const", "structure", "over", "vars",
    "atype", "theory", "morphism", "from", "to", "formula",
})

_PLAIN_NAME = re.compile(r"[A-Za-z0-9_]+\*?\Z")


def is_plain_name(name: str) -> bool:
    return bool(_PLAIN_NAME.match(name)) and name not in RESERVED_WORDS


def name_text(name: str) -> str:
    """Render a name for file output, quoting it when not a plain identifier."""
    if is_plain_name(name):
        return name
    return "'" + name + "'"


# ---------------------------------------------------------------------------
# signatures


class Signature:
    """A many-sorted signature: sorts, function/relation symbols, constants."""

    def __init__(self, sorts, functions=(), relations=(), constants=()):
        self.sorts = tuple(sorts)
        self.functions = {}
        self.relations = {}
        self.constants = {}
        if len(set(self.sorts)) != len(self.sorts):
            raise SortError("duplicate sort name")
        declared = set(self.sorts)
        if isinstance(functions, dict):
            functions = [(n, a, r) for n, (a, r) in functions.items()]
        if isinstance(relations, dict):
            relations = list(relations.items())
        if isinstance(constants, dict):
            constants = list(constants.items())
        for name, argsorts, result in functions:
            argsorts = tuple(argsorts)
            if not argsorts:
                raise SortError(f"function {name} needs at least one argument (use const)")
            self._check_symbol(name, declared, argsorts + (result,))
            self.functions[name] = (argsorts, result)
        for name, argsorts in relations:
            argsorts = tuple(argsorts)
            self._check_symbol(name, declared, argsorts)
            self.relations[name] = argsorts
        for name, sort in constants:
            self._check_symbol(name, declared, (sort,))
            self.constants[name] = sort

    def _check_symbol(self, name, declared, sorts):
        if name in self.functions or name in self.relations or name in self.constants:
            raise SortError(f"duplicate symbol name {name!r}")
        if name in RESERVED_WORDS:
            raise SortError(f"symbol name {name!r} is a reserved word")
        for s in sorts:
            if s not in declared:
                raise SortError(f"unknown sort {s!r} in declaration of {name!r}")

    def symbol_names(self):
        out = set(self.functions)
        out.update(self.relations)
        out.update(self.constants)
        return out

    def __eq__(self, other):
        return (isinstance(other, Signature)
                and self.sorts == other.sorts
                and self.functions == other.functions
                and self.relations == other.relations
                and self.constants == other.constants)

    def __hash__(self):
        return hash((self.sorts,
                     tuple(sorted(self.functions.items())),
                     tuple(sorted(self.relations.items())),
                     tuple(sorted(self.constants.items()))))

    def __repr__(self):
        return (f"Signature(sorts={self.sorts!r}, functions={sorted(self.functions)!r}, "
                f"relations={sorted(self.relations)!r}, constants={sorted(self.constants)!r})")


# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class Var:
    name: str
    sort: str

    def __str__(self):
        return name_text(self.name)


@dataclass(frozen=True)
class Const:
    """A constant symbol or a parameter naming an element of a structure."""

    name: str
    sort: str

    def __str__(self):
        return name_text(self.name)


@dataclass(frozen=True)
class App:
    func: str
    args: tuple
    sort: str

    def __str__(self):
        return name_text(self.func) + "(" + ", ".join(str(a) for a in self.args) + ")"


Term = Union[Var, Const, App]


def term_depth(t: Term) -> int:
    if isinstance(t, App):
        return 1 + max(term_depth(a) for a in t.args)
    return 0


def term_vars(t: Term):
    out = set()

    def walk(u):
        if isinstance(u, Var):
            out.add(u)
        elif isinstance(u, App):
            for a in u.args:
                walk(a)

    walk(t)
    return out


def subterms(t: Term):
    yield t
    if isinstance(t, App):
        for a in t.args:
            yield from subterms(a)


def term_key(t: Term):
    """Canonical order: depth first, then printed form."""
    return (term_depth(t), str(t))


def substitute(t: Term, mapping: Mapping[Var, Term]) -> Term:
    if isinstance(t, Var):
        return mapping.get(t, t)
    if isinstance(t, App):
        return App(t.func, tuple(substitute(a, mapping) for a in t.args), t.sort)
    return t


# ---------------------------------------------------------------------------
# atomic formulas


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term

    def __str__(self):
        return f"{self.left} = {self.right}"


@dataclass(frozen=True)
class Rel:
    rel: str
    args: tuple

    def __str__(self):
        return name_text(self.rel) + "(" + ", ".join(str(a) for a in self.args) + ")"


Atom = Union[Eq, Rel]


def atom_terms(a: Atom):
    if isinstance(a, Eq):
        return (a.left, a.right)
    return a.args


def atom_vars(a: Atom):
    out = set()
    for t in atom_terms(a):
        out |= term_vars(t)
    return out


def atom_depth(a: Atom) -> int:
    return max(term_depth(t) for t in atom_terms(a)) if atom_terms(a) else 0


def atom_key(a: Atom):
    return (0, str(a)) if isinstance(a, Eq) else (1, str(a))


def substitute_atom(a: Atom, mapping: Mapping[Var, Term]) -> Atom:
    if isinstance(a, Eq):
        return Eq(substitute(a.left, mapping), substitute(a.right, mapping))
    return Rel(a.rel, tuple(substitute(t, mapping) for t in a.args))


def check_atom(a: Atom, sig: Signature) -> None:
    """Raise SortError unless the atom is well-sorted against sig."""
    if isinstance(a, Eq):
        _check_term(a.left, sig)
        _check_term(a.right, sig)
        if a.left.sort != a.right.sort:
            raise SortError(f"equality between sorts {a.left.sort!r} and {a.right.sort!r}")
    else:
        if a.rel not in sig.relations:
            raise SortError(f"unknown relation {a.rel!r}")
        want = sig.relations[a.rel]
        if len(a.args) != len(want):
            raise SortError(f"relation {a.rel!r} expects {len(want)} arguments")
        for t, s in zip(a.args, want):
            _check_term(t, sig)
            if t.sort != s:
                raise SortError(f"argument of {a.rel!r} has sort {t.sort!r}, expected {s!r}")


def _check_term(t: Term, sig: Signature) -> None:
    if isinstance(t, App):
        if t.func not in sig.functions:
            raise SortError(f"unknown function {t.func!r}")
        argsorts, result = sig.functions[t.func]
        if len(t.args) != len(argsorts):
            raise SortError(f"function {t.func!r} expects {len(argsorts)} arguments")
        if t.sort != result:
            raise SortError(f"application of {t.func!r} tagged with sort {t.sort!r}")
        for a, s in zip(t.args, argsorts):
            _check_term(a, sig)
            if a.sort != s:
                raise SortError(f"argument of {t.func!r} has sort {a.sort!r}, expected {s!r}")
    elif isinstance(t, Const) and t.name in sig.constants:
        if sig.constants[t.name] != t.sort:
            raise SortError(f"constant {t.name!r} tagged with sort {t.sort!r}")


# ---------------------------------------------------------------------------
# sentences


@dataclass(frozen=True)
class Atomic:
    atom: Atom


@dataclass(frozen=True)
class Implication:
    """Conjunction of atoms entailing a single atom (quasi-algebraic matrix)."""

    premises: tuple
    conclusion: Atom


@dataclass(frozen=True)
class Clause:
    """Conjunction entailing a disjunction; empty disjunction means falsity."""

    premises: tuple
    disjuncts: tuple


@dataclass(frozen=True)
class Negation:
    """Negated conjunction of atoms (h-universal matrix)."""

    premises: tuple


@dataclass(frozen=True)
class Existential:
    """Existentially quantified conjunction of atoms (coherent-primitive matrix)."""

    exvars: tuple
    atoms: tuple


Matrix = Union[Atomic, Implication, Clause, Negation, Existential]


@dataclass(frozen=True)
class Sentence:
    prefix: tuple  # universally quantified Vars
    matrix: Matrix


def make_clause(premises, disjuncts):
    """Build the clause matrix, collapsing a one-atom disjunction to an implication."""
    premises = tuple(premises)
    disjuncts = tuple(disjuncts)
    if len(disjuncts) == 1:
        return Implication(premises, disjuncts[0])
    return Clause(premises, disjuncts)


def matrix_atoms(m: Matrix):
    if isinstance(m, Atomic):
        return (m.atom,)
    if isinstance(m, Implication):
        return m.premises + (m.conclusion,)
    if isinstance(m, Clause):
        return m.premises + m.disjuncts
    if isinstance(m, Negation):
        return m.premises
    return m.atoms


def sentence_vars(s: Sentence):
    seen = set(s.prefix)
    if isinstance(s.matrix, Existential):
        seen.update(s.matrix.exvars)
    return seen


def classify_sentence(s: Sentence) -> str:
    """Most specific tag among atomic, quasi-algebraic, universal, h-universal, coherent."""
    m = s.matrix
    if isinstance(m, Atomic):
        return "atomic"
    if isinstance(m, Implication):
        return "quasi-algebraic"
    if isinstance(m, Clause):
        if not m.disjuncts:
            return "h-universal"
        if len(m.disjuncts) == 1:
            return "quasi-algebraic"
        return "universal"
    if isinstance(m, Negation):
        return "h-universal"
    if isinstance(m, Existential):
        return "coherent"
    raise SortError(f"unsupported matrix {m!r}")


def is_universal_shape(s: Sentence) -> bool:
    """Whether the sentence fits the conjunction-entails-disjunction shape."""
    return classify_sentence(s) in ("atomic", "quasi-algebraic", "universal", "h-universal")


def check_sentence(s: Sentence, sig: Signature) -> None:
    """Well-sortedness plus the free-variable discipline (free vars ⊆ prefix)."""
    bound = set(s.prefix)
    if isinstance(s.matrix, Existential):
        overlap = bound & set(s.matrix.exvars)
        if overlap:
            raise SortError(f"variable bound twice: {sorted(v.name for v in overlap)}")
        bound |= set(s.matrix.exvars)
    for a in matrix_atoms(s.matrix):
        check_atom(a, sig)
        for v in atom_vars(a):
            if v not in bound:
                raise SortError(f"unbound variable {v.name!r}")


# ---------------------------------------------------------------------------
# printing


def print_atom(a: Atom) -> str:
    return str(a)


def _print_conj(atoms) -> str:
    return " & ".join(print_atom(a) for a in atoms) if atoms else "true"


def print_matrix(m: Matrix) -> str:
    if isinstance(m, Atomic):
        return print_atom(m.atom)
    if isinstance(m, Implication):
        return _print_conj(m.premises) + " -> " + print_atom(m.conclusion)
    if isinstance(m, Clause):
        rhs = " | ".join(print_atom(a) for a in m.disjuncts) if m.disjuncts else "false"
        return _print_conj(m.premises) + " -> " + rhs
    if isinstance(m, Negation):
        return "not " + _print_conj(m.premises)
    if isinstance(m, Existential):
        vs = ", ".join(f"{name_text(v.name)}:{v.sort}" for v in m.exvars)
        return f"exists {vs} . " + _print_conj(m.atoms)
    raise SortError(f"unsupported matrix {m!r}")


def print_sentence(s: Sentence) -> str:
    if s.prefix:
        vs = ", ".join(f"{name_text(v.name)}:{v.sort}" for v in s.prefix)
        return f"forall {vs} . " + print_matrix(s.matrix)
    return print_matrix(s.matrix)


def print_signature(sig: Signature) -> str:
    lines = []
    for s in sig.sorts:
        lines.append(f"sort {name_text(s)}")
    for name, (argsorts, result) in sig.functions.items():
        lines.append(f"fun {name_text(name)} : " + " ".join(argsorts) + f" -> {result}")
    for name, argsorts in sig.relations.items():
        lines.append(f"rel {name_text(name)} : " + " ".join(argsorts))
    for name, sort in sig.constants.items():
        lines.append(f"const {name_text(name)} : {sort}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# tokenizing and parsing

_TOKEN = re.compile(r"->|[(),.:=&|]|[A-Za-z0-9_]+\*?|'[^'\n]*'|\S")


class _Tokens:
    def __init__(self, text: str, line: int = 1):
        self.items = []
        for lineno, raw in enumerate(text.splitlines() or [""], start=line):
            body = raw.split("#", 1)[0]
            for m in _TOKEN.finditer(body):
                self.items.append((m.group(0), lineno, m.start() + 1))
        self.pos = 0

    def peek(self):
        return self.items[self.pos][0] if self.pos < len(self.items) else None

    def next(self, expect=None):
        if self.pos >= len(self.items):
            raise ParseError(f"unexpected end of input, expected {expect or 'more input'}")
        tok, line, col = self.items[self.pos]
        self.pos += 1
        if expect is not None and tok != expect:
            raise ParseError(f"expected {expect!r}, found {tok!r}", line, col)
        return tok

    def next_name(self, what="name"):
        if self.pos >= len(self.items):
            raise ParseError(f"unexpected end of input, expected {what}")
        tok, line, col = self.items[self.pos]
        if tok.startswith("'") and tok.endswith("'") and len(tok) >= 2:
            self.pos += 1
            return tok[1:-1]
        if _PLAIN_NAME.match(tok):
            self.pos += 1
            return tok
        raise ParseError(f"expected {what}, found {tok!r}", line, col)

    def error(self, message):
        if self.pos < len(self.items):
            tok, line, col = self.items[self.pos]
            raise ParseError(message + f", found {tok!r}", line, col)
        raise ParseError(message + " at end of input")

    def at_end(self):
        return self.pos >= len(self.items)


class TermEnv:
    """Name resolution context for terms: variables and parameter constants."""

    def __init__(self, sig: Signature, variables: Sequence[Var] = (),
                 params: Optional[Mapping[str, str]] = None):
        self.sig = sig
        if isinstance(variables, dict):
            variables = [Var(n, s) for n, s in variables.items()]
        self.vars = {v.name: v for v in variables}
        self.params = dict(params or {})  # name -> sort

    def resolve(self, name: str, toks: _Tokens) -> Term:
        if name in self.vars:
            return self.vars[name]
        if name in self.sig.constants:
            return Const(name, self.sig.constants[name])
        if name in self.params:
            return Const(name, self.params[name])
        toks.error(f"unknown name {name!r}")


def _parse_term(toks: _Tokens, env: TermEnv) -> Term:
    name = toks.next_name("term")
    if toks.peek() == "(" and name in env.sig.functions:
        toks.next("(")
        args = [_parse_term(toks, env)]
        while toks.peek() == ",":
            toks.next(",")
            args.append(_parse_term(toks, env))
        toks.next(")")
        argsorts, result = env.sig.functions[name]
        if len(args) != len(argsorts):
            toks.error(f"function {name!r} expects {len(argsorts)} arguments")
        for a, s in zip(args, argsorts):
            if a.sort != s:
                toks.error(f"argument of {name!r} has sort {a.sort!r}, expected {s!r}")
        return App(name, tuple(args), result)
    if name in env.sig.functions:
        toks.error(f"function {name!r} used without arguments")
    return env.resolve(name, toks)


def _parse_atom(toks: _Tokens, env: TermEnv) -> Atom:
    save = toks.pos
    name = toks.next_name("atom")
    if name in env.sig.relations and toks.peek() == "(":
        toks.next("(")
        args = []
        if toks.peek() != ")":
            args.append(_parse_term(toks, env))
            while toks.peek() == ",":
                toks.next(",")
                args.append(_parse_term(toks, env))
        toks.next(")")
        atom = Rel(name, tuple(args))
        check_atom(atom, env.sig)
        return atom
    toks.pos = save
    left = _parse_term(toks, env)
    toks.next("=")
    right = _parse_term(toks, env)
    if left.sort != right.sort:
        toks.error(f"equality between sorts {left.sort!r} and {right.sort!r}")
    return Eq(left, right)


def _parse_conj(toks: _Tokens, env: TermEnv):
    if toks.peek() == "true":
        toks.next()
        return ()
    atoms = [_parse_atom(toks, env)]
    while toks.peek() == "&":
        toks.next("&")
        atoms.append(_parse_atom(toks, env))
    return tuple(atoms)


def _parse_varlist(toks: _Tokens, sig: Signature):
    out = []
    while True:
        name = toks.next_name("variable")
        toks.next(":")
        sort = toks.next_name("sort")
        if sort not in sig.sorts:
            toks.error(f"unknown sort {sort!r}")
        out.append(Var(name, sort))
        if toks.peek() != ",":
            return tuple(out)
        toks.next(",")


def parse_atom(text: str, sig: Signature, variables: Sequence[Var] = (),
               params: Optional[Mapping[str, str]] = None) -> Atom:
    toks = _Tokens(text)
    atom = _parse_atom(toks, TermEnv(sig, variables, params))
    if not toks.at_end():
        toks.error("trailing input after atom")
    return atom


def parse_term(text: str, sig: Signature, variables: Sequence[Var] = (),
               params: Optional[Mapping[str, str]] = None) -> Term:
    toks = _Tokens(text)
    term = _parse_term(toks, TermEnv(sig, variables, params))
    if not toks.at_end():
        toks.error("trailing input after term")
    return term


def parse_sentence(text: str, sig: Signature,
                   params: Optional[Mapping[str, str]] = None) -> Sentence:
    toks = _Tokens(text)
    prefix = ()
    if toks.peek() == "forall":
        toks.next("forall")
        prefix = _parse_varlist(toks, sig)
        toks.next(".")
    env = TermEnv(sig, prefix, params)
    if toks.peek() == "not":
        toks.next("not")
        matrix = Negation(_parse_conj(toks, env))
    elif toks.peek() == "exists":
        toks.next("exists")
        exvars = _parse_varlist(toks, sig)
        clash = {v.name for v in prefix} & {v.name for v in exvars}
        if clash:
            toks.error(f"variable bound twice: {sorted(clash)}")
        toks.next(".")
        env2 = TermEnv(sig, prefix + exvars, params)
        matrix = Existential(exvars, _parse_conj(toks, env2))
    else:
        conj = _parse_conj(toks, env)
        if toks.peek() == "->":
            toks.next("->")
            if toks.peek() == "false":
                toks.next()
                matrix = Clause(conj, ())
            else:
                disjuncts = [_parse_atom(toks, env)]
                while toks.peek() == "|":
                    toks.next("|")
                    disjuncts.append(_parse_atom(toks, env))
                matrix = make_clause(conj, disjuncts)
        else:
            if len(conj) != 1:
                toks.error("a bare conjunction is not a sentence; expected '->'")
            matrix = Atomic(conj[0])
    if not toks.at_end():
        toks.error("trailing input after sentence")
    s = Sentence(prefix, matrix)
    check_sentence(s, sig)
    return s


def parse_signature(text: str) -> Signature:
    sorts, functions, relations, constants = [], [], [], []

    def check_sorts(used, lineno):
        for s in used:
            if s not in sorts:
                raise ParseError(f"unknown sort {s!r}", lineno)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        toks = _Tokens(body, line=lineno)
        head = toks.next()
        if head == "sort":
            sorts.append(toks.next_name("sort name"))
        elif head == "fun":
            name = toks.next_name("function name")
            toks.next(":")
            argsorts = []
            while toks.peek() != "->":
                if toks.at_end():
                    raise ParseError("expected '->'", lineno)
                argsorts.append(toks.next_name("sort"))
            toks.next("->")
            result = toks.next_name("result sort")
            check_sorts(argsorts + [result], lineno)
            functions.append((name, tuple(argsorts), result))
        elif head == "rel":
            name = toks.next_name("relation name")
            toks.next(":")
            argsorts = []
            while not toks.at_end():
                argsorts.append(toks.next_name("sort"))
            check_sorts(argsorts, lineno)
            relations.append((name, tuple(argsorts)))
        elif head == "const":
            name = toks.next_name("constant name")
            toks.next(":")
            sort = toks.next_name("sort")
            check_sorts([sort], lineno)
            constants.append((name, sort))
        else:
            raise ParseError(f"unknown declaration {head!r}", lineno)
        if not toks.at_end():
            toks.error("trailing input in declaration")
    try:
        return Signature(sorts, functions, relations, constants)
    except SortError as exc:
        raise ParseError(str(exc)) from exc


@dataclass(frozen=True)
class Theory:
    name: str
    signature: Signature
    sentences: tuple

    def tags(self):
        return tuple(classify_sentence(s) for s in self.sentences)


def parse_theory(text: str, sig: Signature, name: str = "theory") -> Theory:
    """One sentence per non-empty line; the caller resolves the signature."""
    sentences = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        try:
            sentences.append(parse_sentence(body, sig))
        except ParseError as exc:
            raise ParseError(f"{exc} [sentence on line {lineno}]") from exc
    return Theory(name, sig, tuple(sentences))


def print_theory(t: Theory) -> str:
    return "\n".join(print_sentence(s) for s in t.sentences) + "\n"
