"""Quiver presentations (Q, I) and the line-oriented ``.alg`` text format.

Example::

    field gf 7
    quiver
      vertices 1 2 3
      arrow a1 : 1 -> 2
      arrow b : 2 -> 3
      arrow g : 3 -> 1
    relations
      a1*b
      b*g
      g*a1

Paths compose left to right: in ``a1*b`` the arrow ``a1`` is traversed first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Iterable

from .linalg import Field

__all__ = [
    "Arrow",
    "Quiver",
    "Path",
    "Relation",
    "QuiverPresentation",
    "PresentationError",
    "PresentationSyntaxError",
    "NonParallelRelation",
    "LengthOneTerm",
    "UnknownArrow",
    "UnknownVertex",
    "MissingField",
    "parse_presentation",
    "serialize_presentation",
    "load_fixture",
    "FIXTURES",
]


class PresentationError(ValueError):
    pass


class PresentationSyntaxError(PresentationError):
    def __init__(self, line: int, message: str):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")


class NonParallelRelation(PresentationError):
    pass


class LengthOneTerm(PresentationError):
    pass


class UnknownArrow(PresentationError):
    pass


class UnknownVertex(PresentationError):
    pass


class MissingField(PresentationError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise PresentationError("duplicate vertex identifiers")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise PresentationError("duplicate arrow names")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise UnknownVertex(f"arrow {a.name} uses an undeclared vertex")

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise UnknownArrow(f"unknown arrow {name!r}")

    @property
    def arrow_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.arrows)

    def arrow_index(self, name: str) -> int:
        try:
            return self.arrow_names.index(name)
        except ValueError:
            raise UnknownArrow(f"unknown arrow {name!r}") from None

    def is_acyclic(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        queue = [v for v in self.vertices if indeg[v] == 0]
        seen = 0
        while queue:
            v = queue.pop()
            seen += 1
            for a in self.arrows:
                if a.source == v:
                    indeg[a.target] -= 1
                    if indeg[a.target] == 0:
                        queue.append(a.target)
        return seen == len(self.vertices)


@dataclass(frozen=True)
class Path:
    source: str
    target: str
    word: tuple[str, ...] = ()

    @classmethod
    def from_word(cls, quiver: Quiver, word: Iterable[str]) -> "Path":
        word = tuple(word)
        if not word:
            raise PresentationError("use Path.trivial for empty words")
        arrows = [quiver.arrow(n) for n in word]
        for x, y in zip(arrows, arrows[1:]):
            if x.target != y.source:
                raise PresentationError(f"{x.name}*{y.name} does not compose")
        return cls(arrows[0].source, arrows[-1].target, word)

    @classmethod
    def trivial(cls, vertex: str) -> "Path":
        return cls(vertex, vertex, ())

    def __len__(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return "*".join(self.word) if self.word else f"e{self.source}"


@dataclass(frozen=True)
class Relation:
    """Linear combination of parallel paths of length >= 2."""

    terms: tuple[tuple[object, Path], ...]

    def __post_init__(self):
        if not self.terms:
            raise PresentationError("relation without terms")
        ends = {(p.source, p.target) for _, p in self.terms}
        if len(ends) != 1:
            raise NonParallelRelation(f"terms are not parallel: {self}")
        for _, p in self.terms:
            if len(p) < 2:
                raise LengthOneTerm(f"term {p} has length {len(p)} < 2")

    @property
    def source(self) -> str:
        return self.terms[0][1].source

    @property
    def target(self) -> str:
        return self.terms[0][1].target

    def arrows_used(self) -> set[str]:
        return {a for _, p in self.terms for a in p.word}

    def as_dict(self) -> dict[tuple[str, ...], object]:
        out: dict[tuple[str, ...], object] = {}
        for c, p in self.terms:
            out[p.word] = out.get(p.word, 0) + c
        return {w: c for w, c in out.items() if c != 0}

    def __str__(self) -> str:
        return _format_terms([(c, p.word) for c, p in self.terms])


def _format_terms(terms) -> str:
    parts = []
    for k, (c, word) in enumerate(terms):
        c = Fraction(c) if not isinstance(c, int) else c
        neg = c < 0
        mag = -c if neg else c
        body = "*".join(word)
        if mag != 1:
            body = f"{mag}*{body}"
        if k == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


@dataclass(frozen=True)
class QuiverPresentation:
    field: Field
    quiver: Quiver
    relations: tuple[Relation, ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        names = set(self.quiver.arrow_names)
        for r in self.relations:
            missing = r.arrows_used() - names
            if missing:
                raise UnknownArrow(f"relation {r} uses unknown arrows {sorted(missing)}")
            for c, _ in r.terms:
                if self.field.p is not None and int(Fraction(c).denominator) % self.field.p == 0:
                    raise PresentationError(f"coefficient {c} undefined in {self.field}")
            if all(self.field.scalar(c) == 0 for c in r.as_dict().values()) or not r.as_dict():
                raise PresentationError(f"relation {r} is zero over {self.field}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuiverPresentation):
            return NotImplemented
        return (
            self.field == other.field
            and self.quiver == other.quiver
            and [_canon(self.field, r) for r in self.relations]
            == [_canon(other.field, r) for r in other.relations]
        )

    def __hash__(self):
        return hash((self.field, self.quiver, len(self.relations)))


def _canon(F: Field, r: Relation):
    return tuple(sorted((w, F.scalar(c)) for w, c in r.as_dict().items() if F.scalar(c) != 0))


_ARROW_RE = re.compile(r"^arrow\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)$")
_TERM_RE = re.compile(r"^(?:(\d+(?:/\d+)?)\s*\*\s*)?([^\s*+\-]+(?:\s*\*\s*[^\s*+\-]+)*)$")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_presentation(text: str, name: str = "") -> QuiverPresentation:
    """Parse the ``.alg`` DSL; raises a ``PresentationError`` subclass on bad input."""
    field_spec: Field | None = None
    vertices: list[str] = []
    arrows: list[Arrow] = []
    raw_relations: list[tuple[int, str]] = []
    section = None
    saw_quiver = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        head = line.split()[0]
        if head == "field":
            parts = line.split()
            if len(parts) == 2 and parts[1] == "q":
                field_spec = Field.rationals()
            elif len(parts) == 3 and parts[1] == "gf" and parts[2].isdigit():
                try:
                    field_spec = Field.gf(int(parts[2]))
                except ValueError as exc:
                    raise PresentationSyntaxError(lineno, str(exc)) from None
            else:
                raise PresentationSyntaxError(lineno, "expected 'field gf <p>' or 'field q'")
            section = None
            continue
        if line == "quiver":
            section = "quiver"
            saw_quiver = True
            continue
        if line == "relations":
            section = "relations"
            continue
        if section == "quiver":
            if head == "vertices":
                vertices.extend(line.split()[1:])
                continue
            m = _ARROW_RE.match(line)
            if m:
                arrows.append(Arrow(*m.groups()))
                continue
            raise PresentationSyntaxError(lineno, f"cannot parse quiver line {line!r}")
        if section == "relations":
            raw_relations.append((lineno, line))
            continue
        raise PresentationSyntaxError(lineno, f"unexpected line {line!r}")
    if field_spec is None:
        raise MissingField("no 'field' line")
    if not saw_quiver:
        raise MissingField("no 'quiver' section")
    if not vertices:
        raise MissingField("no vertices declared")
    quiver = Quiver(tuple(vertices), tuple(arrows))
    relations = tuple(_parse_relation(quiver, lineno, line) for lineno, line in raw_relations)
    return QuiverPresentation(field_spec, quiver, relations, name=name)


def _split_terms(lineno: int, line: str) -> list[tuple[int, str]]:
    tokens = [t.strip() for t in re.findall(r"[+-]|[^+-]+", line) if t.strip()]
    out: list[tuple[int, str]] = []
    sign, want_term = 1, True
    for tok in tokens:
        if tok in ("+", "-"):
            if want_term and out:
                raise PresentationSyntaxError(lineno, "two operators in a row")
            sign = -1 if tok == "-" else 1
            want_term = True
            continue
        out.append((sign, tok))
        sign, want_term = 1, False
    if want_term:
        raise PresentationSyntaxError(lineno, "relation ends with an operator")
    return out


def _parse_relation(quiver: Quiver, lineno: int, line: str) -> Relation:
    terms = []
    for sign, tok in _split_terms(lineno, line):
        m = _TERM_RE.match(tok)
        if not m:
            raise PresentationSyntaxError(lineno, f"bad term {tok!r}")
        coeff = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        coeff *= sign
        word = tuple(x.strip() for x in m.group(2).split("*"))
        for a in word:
            if a not in quiver.arrow_names:
                raise UnknownArrow(f"line {lineno}: unknown arrow {a!r}")
        if len(word) < 2:
            raise LengthOneTerm(f"line {lineno}: term {tok!r} has length {len(word)} < 2")
        try:
            path = Path.from_word(quiver, word)
        except PresentationError as exc:
            raise PresentationSyntaxError(lineno, str(exc)) from None
        c = int(coeff) if coeff.denominator == 1 else coeff
        terms.append((c, path))
    try:
        return Relation(tuple(terms))
    except NonParallelRelation as exc:
        raise NonParallelRelation(f"line {lineno}: {exc}") from None


def serialize_presentation(p: QuiverPresentation) -> str:
    F = p.field
    lines = [f"field gf {F.p}" if F.p else "field q", "quiver", "  vertices " + " ".join(p.quiver.vertices)]
    for a in p.quiver.arrows:
        lines.append(f"  arrow {a.name} : {a.source} -> {a.target}")
    lines.append("relations")
    for r in p.relations:
        lines.append("  " + str(r))
    return "\n".join(lines) + "\n"


FIXTURES = ("K1", "A2", "H4", "L1", "L2", "L3", "C3", "XU")


def load_fixture(name: str, field: str | Field | None = None) -> QuiverPresentation:
    """Bundled fixture by name; ``field`` ('gf7', 'q' or a Field) overrides the file's field."""
    text = resources.files("arrowkernel.fixtures").joinpath(f"{name}.alg").read_text(encoding="utf-8")
    pres = parse_presentation(text, name=name)
    if field is not None:
        if isinstance(field, str):
            field = Field.rationals() if field.lower() == "q" else Field.gf(int(field.lower().removeprefix("gf")))
        pres = QuiverPresentation(field, pres.quiver, pres.relations, name=name)
    return pres
