#!/usr/bin/env python
from __future__ import annotations
from dataclasses import dataclass, field, fields
from pathlib import Path
import hashlib
import re

from .alphabet import Alphabet, Ordering, Word, shortlex_compare
from .errors import ConfigError, InputError, NonReducingRuleError
from .rewriting import Rule, RewritingSystem
from .subgroup import Membership, SubgroupOracle

_SECTION = re.compile(r"^\[\s*(?P<kind>[A-Za-z_]+)(?:\s+(?P<name>\S+))?\s*\]$")
_SETTING = re.compile(r"^(?P<key>[A-Za-z_][A-Za-z0-9_]*)\s*=\s*(?P<value>.*)$")


@dataclass(frozen=True)
class Params:
    """Numeric job parameters; *K* and *ft* default to M² and K"""

    M: int = 1
    K: int | None = None
    R: int = 8
    n_check: int = 12
    max_vertices: int = 2_000_000
    max_rules: int = 200
    max_len: int = 20
    ft: int | None = None

    @property
    def k(self) -> int:
        return self.M * self.M if self.K is None else self.K

    @property
    def ft_const(self) -> int:
        return self.k if self.ft is None else self.ft


@dataclass(frozen=True)
class SubgraphSpec:
    name: str
    vertices: tuple[Word, ...]


@dataclass(frozen=True)
class JobConfig:
    """Everything one configuration file declares about a group"""

    source: Path
    digest: str     #: sha256 of the file text
    rewriting: RewritingSystem
    params: Params
    subgroups: dict[str, SubgroupOracle] = field(default_factory=dict)
    subgraphs: dict[str, SubgraphSpec] = field(default_factory=dict)
    language: Path | None = None

    @property
    def alphabet(self) -> Alphabet:
        return self.rewriting.alphabet

    def subgroup(self, name: str) -> SubgroupOracle:
        try:
            return self.subgroups[name]
        except KeyError:
            raise InputError(f"no subgroup named '{name}'") from None

    def subgraph(self, name: str) -> SubgraphSpec:
        try:
            return self.subgraphs[name]
        except KeyError:
            raise InputError(f"no subgraph named '{name}'") from None


@dataclass
class _Line:
    number: int
    text: str
    column: int  #: 1-based column where *text* starts


class _Parser:
    """One pass collecting sections, then interpretation with the
       alphabet first"""

    def __init__(self, text: str, source: str):
        self.source = source
        self.sections: list[tuple[str, str | None, _Line, list[_Line]]] = []
        self._split(text)

    def error(self, message: str, line: _Line, offset: int = 0):
        return ConfigError(message, line.number, line.column + offset,
                           self.source)

    def _split(self, text: str):
        current: list[_Line] | None = None
        for number, raw in enumerate(text.splitlines(), start=1):
            content = raw.split("#", 1)[0].rstrip()
            stripped = content.lstrip()
            if not stripped:
                continue
            line = _Line(number, stripped, len(content) - len(stripped) + 1)
            if stripped.startswith("["):
                match = _SECTION.match(stripped)
                if match is None:
                    raise self.error("malformed section header", line)
                current = []
                self.sections.append((match["kind"], match["name"], line,
                                      current))
            elif current is None:
                raise self.error("setting outside of any section", line)
            else:
                current.append(line)

    def settings(self, lines: list[_Line],
                 known: tuple[str, ...]) -> dict[str, tuple[str, _Line]]:
        found: dict[str, tuple[str, _Line]] = {}
        for line in lines:
            match = _SETTING.match(line.text)
            if match is None:
                raise self.error("expected 'key = value'", line)
            key = match["key"]
            if key not in known:
                raise self.error(f"unknown key '{key}'", line)
            if key in found:
                raise self.error(f"duplicate key '{key}'", line)
            found[key] = (match["value"].strip(), line)
        return found

    def words(self, alphabet: Alphabet, text: str, line: _Line) -> Word:
        try:
            return alphabet.parse(text)
        except InputError as error:
            offset = line.text.find(text) if text else 0
            raise self.error(str(error), line, max(offset, 0)) from None


def _alphabet(parser: _Parser, header: _Line,
              lines: list[_Line]) -> Alphabet:
    found = parser.settings(lines, ("letters", "inverses", "order"))
    if "letters" not in found:
        raise parser.error("[alphabet] needs 'letters'", header)
    letters = found["letters"][0].split()
    pairs: dict[str, str] = {}
    if "inverses" in found:
        value, line = found["inverses"]
        for token in value.split():
            left, colon, right = token.partition(":")
            if not colon or not left or not right:
                raise parser.error(f"bad inverse pair '{token}'", line,
                                   line.text.find(token))
            pairs[left] = right
    order = found["order"][0].split() if "order" in found else None
    try:
        return Alphabet.from_pairs(letters, pairs, order)
    except InputError as error:
        raise parser.error(str(error), header) from None


def _rules(parser: _Parser, alphabet: Alphabet,
           lines: list[_Line]) -> list[Rule]:
    rules = []
    for line in lines:
        lhs, arrow, rhs = line.text.partition("->")
        if not arrow:
            raise parser.error("expected 'lhs -> rhs'", line)
        left = parser.words(alphabet, lhs.strip(), line)
        if not left:
            raise parser.error("empty left-hand side", line)
        right = parser.words(alphabet, rhs.strip(), line)
        if shortlex_compare(alphabet, right, left) is not Ordering.LESS:
            error = NonReducingRuleError(alphabet.format(left),
                                         alphabet.format(right))
            raise parser.error(str(error), line, line.text.find("->"))
        rules.append((left, right))
    return rules


def _integer(parser: _Parser, value: str, line: _Line, least: int = 0) -> int:
    try:
        number = int(value.replace("_", ""))
    except ValueError:
        raise parser.error(f"'{value}' is not an integer", line,
                           line.text.find(value)) from None
    if number < least:
        raise parser.error(f"value must be at least {least}", line,
                           line.text.find(value))
    return number


def _params(parser: _Parser, lines: list[_Line]) -> Params:
    names = tuple(f.name for f in fields(Params))
    found = parser.settings(lines, names)
    least = {"M": 0, "K": 1, "R": 0, "n_check": 1, "ft": 0}
    values = {key: _integer(parser, value, line, least.get(key, 1))
              for key, (value, line) in found.items()}
    return Params(**values)


def _subgroup(parser: _Parser, name: str, header: _Line, lines: list[_Line],
              alphabet: Alphabet, params: Params) -> SubgroupOracle:
    found = parser.settings(lines, ("generators", "membership"))
    generators: list[Word] = []
    if "generators" in found:
        value, line = found["generators"]
        generators = [parser.words(alphabet, token.strip(), line)
                      for token in value.split(",") if token.strip()]
    if "membership" not in found:
        raise parser.error(f"subgroup {name} needs 'membership'", header)
    value, line = found["membership"]
    strategy, _, rest = value.partition(" ")
    if strategy == Membership.PARABOLIC.value:
        letters = frozenset(parser.words(alphabet, rest, line))
        return SubgroupOracle(name, tuple(generators), Membership.PARABOLIC,
                              letters=letters)
    if strategy == Membership.ENUMERATE.value:
        depth = _integer(parser, rest.strip().removeprefix("depth=").strip(),
                         line)
        if depth < 2 * params.R:
            raise parser.error(f"enumerate depth ≥ {2 * params.R} required",
                               line, line.text.find(rest))
        return SubgroupOracle(name, tuple(generators), Membership.ENUMERATE,
                              depth=depth)
    raise parser.error(f"unknown membership strategy '{strategy}'", line,
                       line.text.find(strategy))


def _subgraph(parser: _Parser, name: str, header: _Line, lines: list[_Line],
              alphabet: Alphabet) -> SubgraphSpec:
    found = parser.settings(lines, ("vertices",))
    if "vertices" not in found:
        raise parser.error(f"subgraph {name} needs 'vertices'", header)
    value, line = found["vertices"]
    vertices = tuple(parser.words(alphabet, token.strip(), line)
                     for token in value.split(";"))
    return SubgraphSpec(name, vertices)


def parse_text(text: str, source: Path | str = "<config>") -> JobConfig:
    """Parse configuration *text*; see :func:`parse_config`"""
    source = Path(source)
    parser = _Parser(text, str(source))
    by_kind: dict[str, list] = {}
    for kind, name, header, lines in parser.sections:
        if kind not in ("alphabet", "rules", "params", "subgroup",
                        "subgraph", "language"):
            raise parser.error(f"unknown section [{kind}]", header)
        if kind in ("subgroup", "subgraph") and name is None:
            raise parser.error(f"[{kind}] needs a name", header)
        if kind not in ("subgroup", "subgraph") and kind in by_kind:
            raise parser.error(f"duplicate section [{kind}]", header)
        by_kind.setdefault(kind, []).append((name, header, lines))
    if "alphabet" not in by_kind:
        raise ConfigError("missing [alphabet] section", 1, 1, str(source))

    _, header, lines = by_kind["alphabet"][0]
    alphabet = _alphabet(parser, header, lines)

    rules: list[Rule] = []
    if "rules" in by_kind:
        _, header, lines = by_kind["rules"][0]
        rules = _rules(parser, alphabet, lines)
        rewriting = RewritingSystem(alphabet, tuple(rules))
    else:
        rewriting = RewritingSystem(alphabet, ())

    params = Params()
    if "params" in by_kind:
        _, _, lines = by_kind["params"][0]
        params = _params(parser, lines)

    subgroups: dict[str, SubgroupOracle] = {}
    for name, header, lines in by_kind.get("subgroup", []):
        if name in subgroups:
            raise parser.error(f"duplicate subgroup {name}", header)
        subgroups[name] = _subgroup(parser, name, header, lines, alphabet,
                                    params)

    subgraphs: dict[str, SubgraphSpec] = {}
    for name, header, lines in by_kind.get("subgraph", []):
        if name in subgraphs:
            raise parser.error(f"duplicate subgraph {name}", header)
        subgraphs[name] = _subgraph(parser, name, header, lines, alphabet)

    language = None
    if "language" in by_kind:
        _, _, lines = by_kind["language"][0]
        value, _ = parser.settings(lines, ("dfa",)).get("dfa", ("", None))
        if value:
            language = source.parent / value

    digest = hashlib.sha256(text.encode()).hexdigest()
    return JobConfig(source, digest, rewriting, params, subgroups,
                     subgraphs, language)


def parse_config(path: Path | str) -> JobConfig:
    """Read and validate a job configuration file.

       :raises FileNotFoundError: If *path* does not exist
       :raises ConfigError: On a syntax error, an unknown letter, a
                            non-reducing rule or an invalid subgroup, with
                            the line and column of the problem
    """
    path = Path(path)
    return parse_text(path.read_text(), path)


def bundled_configs() -> list[Path]:
    """Paths of the example configurations shipped with the package"""
    return sorted((Path(__file__).parent / "examples").glob("*.gs"))
