"""Reader and writer for the ``.crn`` text format.

One reaction per line::

    # water-gas shift
    r1: 1 CO2 + 1 H2 <=> 1 CO + 1 H2O [k12, k21]
    r2: 2 CO -> 1 CO2 + 1 C [k34]

``<=>`` takes a forward and a backward rate, ``->`` exactly one.  ``0`` is
the empty complex.  Species are declared by first use unless a
``species: A, B, ...`` header fixes their order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .network import Complex, Reaction, ReactionNetwork, Species

SYNTAX = "syntax"
UNKNOWN_SYMBOL = "unknown-symbol"
DUPLICATE = "duplicate"
ARITY = "arity"

_TOKEN = re.compile(
    r"(?P<ws>[ \t]+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>[0-9]+)"
    r"|(?P<op><=>|->|[:+\[\],])"
)


@dataclass(frozen=True)
class ParseError:
    line: int
    column: int
    message: str
    kind: str

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.kind}: {self.message}"


class CRNParseError(ValueError):
    """Raised by :func:`parse_network`; ``errors`` holds every problem found."""

    def __init__(self, errors: list[ParseError]):
        self.errors = errors
        super().__init__("\n".join(str(e) for e in errors))


@dataclass
class _Tok:
    kind: str  # ident, int, op, eol
    text: str
    col: int


@dataclass
class _RawReaction:
    lineno: int
    name: _Tok
    reactant: list[tuple[_Tok, int]]
    product: list[tuple[_Tok, int]]
    reversible: bool
    rates: list[_Tok]
    arrow: _Tok


class _LineError(Exception):
    def __init__(self, col: int, message: str, kind: str = SYNTAX):
        self.col = col
        self.message = message
        self.kind = kind


def _tokenize(line: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(line):
        m = _TOKEN.match(line, pos)
        if m is None:
            raise _LineError(pos + 1, f"unexpected character {line[pos]!r}")
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), pos + 1))
        pos = m.end()
    toks.append(_Tok("eol", "", max(1, len(line))))
    return toks


class _LineParser:
    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        tok = self.toks[self.i]
        if tok.kind != "eol":
            self.i += 1
        return tok

    def expect(self, kind: str, text: Optional[str] = None, what: str = "") -> _Tok:
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            found = "end of line" if tok.kind == "eol" else repr(tok.text)
            raise _LineError(tok.col, f"expected {what or text or kind}, found {found}")
        return self.next()

    def complex(self) -> list[tuple[_Tok, int]]:
        tok = self.peek()
        if tok.kind == "int" and int(tok.text) == 0 and self.toks[self.i + 1].kind != "ident":
            self.next()
            return []
        terms = [self.term()]
        while self.peek().kind == "op" and self.peek().text == "+":
            self.next()
            terms.append(self.term())
        return terms

    def term(self) -> tuple[_Tok, int]:
        coeff = 1
        tok = self.peek()
        if tok.kind == "int":
            self.next()
            coeff = int(tok.text)
            if coeff < 1:
                raise _LineError(tok.col, "stoichiometric coefficient must be at least 1")
        ident = self.expect("ident", what="species name")
        return ident, coeff

    def reaction(self, lineno: int) -> _RawReaction:
        name = self.expect("ident", what="reaction name")
        self.expect("op", ":")
        reactant = self.complex()
        arrow = self.peek()
        if arrow.kind != "op" or arrow.text not in ("<=>", "->"):
            found = "end of line" if arrow.kind == "eol" else repr(arrow.text)
            raise _LineError(arrow.col, f"expected '<=>' or '->', found {found}")
        self.next()
        product = self.complex()
        self.expect("op", "[")
        rates = [self.expect("ident", what="rate symbol")]
        while self.peek().kind == "op" and self.peek().text == ",":
            self.next()
            rates.append(self.expect("ident", what="rate symbol"))
        self.expect("op", "]")
        self.expect("eol", what="end of line")
        return _RawReaction(lineno, name, reactant, product, arrow.text == "<=>", rates, arrow)

    def header(self) -> list[_Tok]:
        self.expect("ident", "species")
        self.expect("op", ":")
        names = []
        if self.peek().kind == "eol":
            return names
        names.append(self.expect("ident", what="species name"))
        while self.peek().kind == "op" and self.peek().text == ",":
            self.next()
            names.append(self.expect("ident", what="species name"))
        self.expect("eol", what="end of line")
        return names


def _is_header(toks: list[_Tok]) -> bool:
    return (
        len(toks) >= 2
        and toks[0].kind == "ident"
        and toks[0].text == "species"
        and toks[1].text == ":"
        and not any(t.kind == "op" and t.text in ("<=>", "->") for t in toks)
    )


def parse_network(text: str) -> ReactionNetwork:
    """Parse ``.crn`` text into a validated :class:`ReactionNetwork`.

    Raises :class:`CRNParseError` listing all errors found in one pass.
    """
    if text.startswith("﻿"):
        text = text[1:]
    errors: list[ParseError] = []
    raws: list[_RawReaction] = []
    header: Optional[tuple[int, list[_Tok]]] = None

    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].rstrip()
        if not body.strip():
            continue
        try:
            toks = _tokenize(body)
            parser = _LineParser(toks)
            if _is_header(toks):
                if header is not None:
                    raise _LineError(toks[0].col, "species header given twice", DUPLICATE)
                header = (lineno, parser.header())
            else:
                raws.append(parser.reaction(lineno))
        except _LineError as exc:
            errors.append(ParseError(lineno, exc.col, exc.message, exc.kind))

    species_ids: dict[str, int] = {}
    if header is not None:
        hline, names = header
        for tok in names:
            if tok.text in species_ids:
                errors.append(ParseError(hline, tok.col, f"species {tok.text!r} declared twice", DUPLICATE))
            else:
                species_ids[tok.text] = len(species_ids)

    symbols: set[str] = set()
    reactions: list[Reaction] = []
    used: set[int] = set()
    for raw in raws:
        ok = True
        for tok in [raw.name, *raw.rates]:
            if tok.text in symbols:
                errors.append(ParseError(raw.lineno, tok.col, f"symbol {tok.text!r} already used", DUPLICATE))
                ok = False
            symbols.add(tok.text)
        want = 2 if raw.reversible else 1
        if len(raw.rates) != want:
            errors.append(
                ParseError(
                    raw.lineno,
                    raw.arrow.col,
                    f"'{raw.arrow.text}' needs {want} rate symbol{'s' if want > 1 else ''}, got {len(raw.rates)}",
                    ARITY,
                )
            )
            ok = False
        sides = []
        for terms in (raw.reactant, raw.product):
            mapping: dict[int, int] = {}
            for tok, coeff in terms:
                sid = species_ids.get(tok.text)
                if sid is None:
                    if header is not None:
                        errors.append(
                            ParseError(raw.lineno, tok.col, f"species {tok.text!r} not in species header", UNKNOWN_SYMBOL)
                        )
                        ok = False
                        continue
                    sid = species_ids[tok.text] = len(species_ids)
                if sid in mapping:
                    errors.append(
                        ParseError(raw.lineno, tok.col, f"species {tok.text!r} appears twice in one complex", DUPLICATE)
                    )
                    ok = False
                mapping[sid] = coeff
                used.add(sid)
            sides.append(Complex.from_mapping(mapping))
        if ok and sides[0] == sides[1]:
            errors.append(ParseError(raw.lineno, raw.arrow.col, "reactant equals product", DUPLICATE))
            ok = False
        if ok:
            reactions.append(
                Reaction(
                    id=len(reactions),
                    reactant=sides[0],
                    product=sides[1],
                    reversible=raw.reversible,
                    forward_rate=raw.rates[0].text,
                    backward_rate=raw.rates[1].text if raw.reversible else None,
                    name=raw.name.text,
                )
            )

    if header is not None:
        hline, names = header
        for tok in names:
            sid = species_ids.get(tok.text)
            if sid is not None and sid not in used:
                errors.append(
                    ParseError(hline, tok.col, f"species {tok.text!r} is never used", UNKNOWN_SYMBOL)
                )

    if errors:
        errors.sort(key=lambda e: (e.line, e.column))
        raise CRNParseError(errors)
    species = tuple(Species(i, name) for name, i in sorted(species_ids.items(), key=lambda kv: kv[1]))
    return ReactionNetwork(species, tuple(reactions))


def _format_complex(network: ReactionNetwork, cplx: Complex) -> str:
    if cplx.is_zero():
        return "0"
    return " + ".join(f"{c} {network.species[s].name}" for s, c in cplx.terms)


def format_reaction(network: ReactionNetwork, reaction: Reaction) -> str:
    arrow = "<=>" if reaction.reversible else "->"
    rates = ", ".join(reaction.rate_symbols)
    return (
        f"{reaction.name or f'r{reaction.id + 1}'}: {_format_complex(network, reaction.reactant)} "
        f"{arrow} {_format_complex(network, reaction.product)} [{rates}]"
    )


def format_network(network: ReactionNetwork) -> str:
    """Canonical ``.crn`` text; ``parse_network`` inverts it exactly."""
    lines = []
    if network.species:
        lines.append("species: " + ", ".join(s.name for s in network.species))
    lines.extend(format_reaction(network, r) for r in network.reactions)
    return "\n".join(lines) + "\n"


def read_network(path) -> ReactionNetwork:
    with open(path, encoding="utf-8") as fh:
        return parse_network(fh.read())
