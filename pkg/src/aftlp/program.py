"""Propositional normal logic programs: syntax, parsing and printing.

Grammar::

    program     := statement*
    statement   := "#atom" atom "." | rule
    rule        := atom "." | atom ":-" literal ("," literal)* "."
    literal     := atom | "not" atom
    atom        := [a-z][A-Za-z0-9_]*

``%`` starts a comment that runs to the end of the line.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DomainError, ProgramSyntaxError

ATOM_RE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")
KEYWORDS = frozenset({"not"})


class Literal(NamedTuple):
    atom: str
    negated: bool = False

    def __str__(self) -> str:
        return f"not {self.atom}" if self.negated else self.atom

    def complement(self) -> "Literal":
        return Literal(self.atom, not self.negated)


def pos(atom: str) -> Literal:
    return Literal(atom, False)


def neg(atom: str) -> Literal:
    return Literal(atom, True)


def check_atom(name: str) -> str:
    if not isinstance(name, str) or not ATOM_RE.match(name) or name in KEYWORDS:
        raise DomainError(f"invalid atom name {name!r}")
    return name


def _dedupe(items: Iterable) -> tuple:
    return tuple(dict.fromkeys(items))


@dataclass(frozen=True)
class Rule:
    """``head :- body``; an empty body is a fact.

    Repeated body literals are dropped.  A body holding both ``a`` and
    ``not a`` is kept as written.
    """

    head: str
    body: tuple[Literal, ...] = ()

    def __post_init__(self):
        check_atom(self.head)
        body = _dedupe(Literal(*lit) for lit in self.body)
        for lit in body:
            check_atom(lit.atom)
        object.__setattr__(self, "body", body)

    def atoms(self) -> set[str]:
        return {self.head, *(lit.atom for lit in self.body)}

    def __str__(self) -> str:
        if not self.body:
            return f"{self.head}."
        return f"{self.head} :- {', '.join(map(str, self.body))}."


@dataclass(frozen=True)
class Program:
    rules: tuple[Rule, ...]
    universe: tuple[str, ...]

    def __init__(self, rules: Iterable[Rule], extra_atoms: Iterable[str] = ()):
        rules = tuple(rules)
        atoms = {check_atom(a) for a in extra_atoms}
        for r in rules:
            atoms |= r.atoms()
        object.__setattr__(self, "rules", rules)
        object.__setattr__(self, "universe", tuple(sorted(atoms)))

    def with_atoms(self, atoms: Iterable[str]) -> "Program":
        return Program(self.rules, set(self.universe) | set(atoms))

    def rules_for(self, atom: str) -> list[Rule]:
        return [r for r in self.rules if r.head == atom]

    def to_text(self) -> str:
        heads_and_bodies = {a for r in self.rules for a in r.atoms()}
        lines = [f"#atom {a}." for a in self.universe if a not in heads_and_bodies]
        lines += [str(r) for r in self.rules]
        return "\n".join(lines) + ("\n" if lines else "")

    def __str__(self) -> str:
        return self.to_text()


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>%[^\n]*)
  | (?P<decl>\#atom\b)
  | (?P<arrow>:-)
  | (?P<dot>\.)
  | (?P<comma>,)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)


class _Token(NamedTuple):
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, line_start, i = 1, 0, 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise ProgramSyntaxError(f"unexpected character {text[i]!r}", line, i - line_start + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            tokens.append(_Token(kind, m.group(), line, i - line_start + 1))
        chunk = m.group()
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = i + chunk.rindex("\n") + 1
        i = m.end()
    tokens.append(_Token("eof", "", line, i - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            found = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise ProgramSyntaxError(f"expected {what}, found {found}", tok.line, tok.column)
        self.i += 1
        return tok

    def atom(self) -> str:
        tok = self.take("ident", "an atom")
        if not ATOM_RE.match(tok.text) or tok.text in KEYWORDS:
            raise ProgramSyntaxError(f"invalid atom {tok.text!r}", tok.line, tok.column)
        return tok.text

    def literal(self) -> Literal:
        tok = self.peek()
        if tok.kind == "ident" and tok.text == "not":
            self.i += 1
            return neg(self.atom())
        return pos(self.atom())

    def program(self) -> Program:
        rules: list[Rule] = []
        declared: list[str] = []
        while self.peek().kind != "eof":
            if self.peek().kind == "decl":
                self.i += 1
                declared.append(self.atom())
                self.take("dot", "'.'")
                continue
            head = self.atom()
            body: list[Literal] = []
            if self.peek().kind == "arrow":
                self.i += 1
                body.append(self.literal())
                while self.peek().kind == "comma":
                    self.i += 1
                    body.append(self.literal())
            self.take("dot", "',' or '.'" if body else "':-' or '.'")
            rules.append(Rule(head, tuple(body)))
        return Program(rules, declared)


def parse(text: str) -> Program:
    """Parse program text; raises :class:`ProgramSyntaxError` with a position."""
    return _Parser(text).program()


def program(rules: Sequence[tuple[str, Sequence[str]]] | str, extra_atoms: Iterable[str] = ()) -> Program:
    """Build a program from ``(head, ["q", "not r", ...])`` pairs or from text."""
    if isinstance(rules, str):
        return parse(rules).with_atoms(extra_atoms)
    built = []
    for head, body in rules:
        lits = [neg(b[4:].strip()) if b.startswith("not ") else pos(b) for b in body]
        built.append(Rule(head, tuple(lits)))
    return Program(built, extra_atoms)
