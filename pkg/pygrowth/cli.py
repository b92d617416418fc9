#!/usr/bin/env python
from __future__ import annotations
from dataclasses import replace
from pathlib import Path
import logging
import re
import sys

import click

from .automaton import (FftpAutomaton, GEODESICS, accepting_states,
                        build_automaton, coset_accept_name,
                        cone_type_quotient, intersect_language)
from .ball import Ball, build_ball
from .config import JobConfig, bundled_configs, parse_config
from .dfa import DFA, export_dfa, load_dfa
from .errors import GrowthError, InputError, OracleMismatch
from .fellow import LANGUAGE_NOTE, ProjectionMode, check_fftp, check_projections
from .growth import (CountKind, SeriesKind, SeriesPair, TransitionMatrices,
                     brute_force_counts, coset_growth_series, coset_weights,
                     embedding_series, geodesic_series, sphere_or_ball_series,
                     transition_matrices, validate_combing)
from .report import RunReport
from .rewriting import (Incomplete, RewritingSystem, check_confluence,
                        complete)
from .series import RationalSeries, common_denominator, growth_rate, \
    polynomial_coefficients
from .subgroup import FiniteSubgraph, SubgroupOracle, load_subgraph
from .transversal import shortlex_transversal_acceptor

logger = logging.getLogger(__name__)

_NAMED = re.compile(r"^(?P<kind>coset|transversal)\((?P<name>[^()\s]+)\)$")


class Session:
    """Caches the ball, automaton and matrices shared by the subcommands
       run against one configuration"""

    def __init__(self, config: JobConfig, checked: bool = True):
        self.config = config
        self.params = config.params
        self.checked = checked
        self.diagnostics: list[str] = []
        self._rewriting: RewritingSystem | None = None
        self._ball: Ball | None = None
        self._automata: dict[int, FftpAutomaton] = {}
        self._matrices: dict[int, TransitionMatrices] = {}
        self._oracles: dict[tuple, list[int]] = {}

    @property
    def radius(self) -> int:
        """Smallest radius serving every default subcommand"""
        p = self.params
        return max(p.R + p.M + 1, 2 * p.k + 2, p.n_check, p.ft_const + 1,
                   2 * (p.R // 2))

    @property
    def rewriting(self) -> RewritingSystem:
        if self._rewriting is None:
            rs = self.config.rewriting
            if check_confluence(rs):
                rs = replace(rs, confluent=True)
            else:
                result = complete(rs, self.params.max_rules,
                                  self.params.max_len)
                if isinstance(result, Incomplete):
                    raise InputError("rewriting system is not confluent and "
                                     f"completion gave up: {result.reason}")
                self.diagnostics.append(f"completed to {len(result.rules)} "
                                        "rules")
                logger.info("completed %s to %d rules", self.config.source,
                            len(result.rules))
                rs = result
            self._rewriting = rs
        return self._rewriting

    def ball(self, at_least: int = 0) -> Ball:
        if self._ball is None or self._ball.radius < at_least:
            radius = max(self.radius, at_least)
            logger.debug("building ball of radius %d", radius)
            self._ball = build_ball(self.rewriting, radius,
                                    self.params.max_vertices)
        return self._ball

    def automaton(self, K: int | None = None) -> FftpAutomaton:
        K = self.params.k if K is None else K
        if K not in self._automata:
            ball = self.ball(2 * K + 2)
            aut = build_automaton(ball, K, min(self.params.M, K))
            for name in self.config.subgroups:
                aut = accepting_states(aut, ball, f"coset({name})",
                                       self.config.subgroups)
            self._automata[K] = aut
        return self._automata[K]

    def matrices(self, K: int | None = None) -> TransitionMatrices:
        K = self.params.k if K is None else K
        if K not in self._matrices:
            self._matrices[K] = transition_matrices(self.automaton(K))
        return self._matrices[K]

    def subgroup(self, name: str) -> SubgroupOracle:
        return self.config.subgroup(name)

    def subgraph(self, name: str) -> FiniteSubgraph:
        spec = self.config.subgraph(name)
        return load_subgraph(self.ball(), spec.vertices, name)

    @property
    def check_length(self) -> int:
        """Last index compared against brute force: n_check, raised to
           2·states + 2 for large automata"""
        return max(self.params.n_check, 2 * len(self.matrices()) + 2)

    def oracle(self, kind: CountKind, subgroup: SubgroupOracle | None = None,
               subgraph: FiniteSubgraph | None = None) -> list[int] | None:
        if not self.checked:
            return None
        n = self.check_length
        key = (kind, subgroup and subgroup.name, subgraph and subgraph.name)
        if key not in self._oracles:
            self._oracles[key] = brute_force_counts(
                self.ball(n), kind, n, subgroup, subgraph)
        return self._oracles[key]


def _series(report: RunReport, name: str, compute) -> RationalSeries | None:
    try:
        series = compute()
    except OracleMismatch as mismatch:
        report.verdict(f"{name} oracle", False, str(mismatch))
        return None
    report.add_series(name, series)
    if series.checked:
        report.verdict(f"{name} oracle", True,
                       f"{len(series.verified_prefix)} coefficients")
    return series


def _check_confluence(session: Session, report: RunReport):
    rs = session.config.rewriting
    result = check_confluence(rs)
    report.verdict("confluence", result.confluent,
                   f"{result.pairs_checked} critical pairs")
    if not result.confluent:
        fmt = rs.alphabet.format
        report.value("critical word", fmt(result.word) or "ε")
        report.value("normal forms", " / ".join(
            fmt(w) or "ε" for w in result.normal_forms))


def _complete(session: Session, report: RunReport):
    p = session.params
    result = complete(session.config.rewriting, p.max_rules, p.max_len)
    if isinstance(result, Incomplete):
        report.verdict("completion", False, result.reason)
        result = result.partial
    else:
        report.verdict("completion", True, f"{len(result.rules)} rules")
    for rule in result.rules:
        report.value("rule", result.format_rule(rule))


def _check_fftp(session: Session, report: RunReport, M: int | None = None,
                R: int | None = None):
    M = session.params.M if M is None else M
    R = session.params.R if R is None else R
    ball = session.ball(R + M + 1)
    result = check_fftp(ball, M, R)
    report.verdict(f"fftp M={M} R={R}", result.passed,
                   f"{result.paths_checked} paths, {result.failures} "
                   "failures")
    if result.counterexample is not None:
        report.value("counterexample",
                     ball.alphabet.format(result.counterexample))
        report.value("counterexample replays", result.replay(ball))
    for note in result.notes:
        report.note(note)


def _check_projections(session: Session, report: RunReport, name: str,
                       mode: str = "bounded", M: int | None = None,
                       R: int | None = None):
    M = session.params.M if M is None else M
    R = session.params.R // 2 if R is None else R
    ball = session.ball(2 * R)
    result = check_projections(ball, session.subgroup(name), M, R,
                               ProjectionMode(mode))
    report.verdict(f"{mode} projections {name} M={M} R={R}", result.passed,
                   f"{result.edges_checked} edges")
    if result.counterexample is not None:
        fmt = ball.alphabet.format
        report.value("counterexample edge", " -> ".join(
            fmt(w) or "ε" for w in result.counterexample))
    if result.fellow_implied is not None:
        report.verdict("bounded implies fellow", result.fellow_implied)


def _build_automaton(session: Session, report: RunReport,
                     K: int | None = None):
    aut = session.automaton(K)
    report.value("K", aut.K)
    report.value("states", len(aut))
    report.value("live states", len(aut.live))
    report.verdict("state semantics", aut.semantics.passed,
                   aut.semantics.format(aut.alphabet))
    for name in sorted(aut.accept):
        report.value(f"accept {name}", len(aut.accept[name]))
    report.value("cone types", cone_type_quotient(aut).cone_types)


def _combing(session: Session, report: RunReport):
    aut, ball = session.automaton(), session.ball()
    combing = validate_combing(aut, ball, min(session.params.R, ball.radius))
    report.verdict("markov combing", combing.passed,
                   f"{combing.vertices} vertices")
    if combing.worst is not None:
        report.value("combing mass", f"{combing.total} at "
                     f"{aut.alphabet.format(combing.worst) or 'ε'}")


def _pair(report: RunReport, name: str, compute,
          cumulative: str | None = None) -> SeriesPair | None:
    try:
        pair = compute()
    except OracleMismatch as mismatch:
        report.verdict(f"{name} oracle", False, str(mismatch))
        return None
    report.add_series(name, pair.exact)
    report.add_series(cumulative or f"{name} cumulative", pair.cumulative)
    if pair.exact.checked:
        report.verdict(f"{name} oracle", True,
                       f"{len(pair.exact.verified_prefix)} coefficients, "
                       "cumulative included")
    return pair


def _growth(session: Session, report: RunReport, kind: str = "sphere",
            combing: bool = True):
    aut, matrices = session.automaton(), session.matrices()
    if combing:
        _combing(session, report)
    if kind == "geodesic":
        oracle = session.oracle(CountKind.GEODESIC)
        _pair(report, "geodesic",
              lambda: geodesic_series(aut, matrices, oracle))
        return
    series_kind = SeriesKind(kind)
    oracle = session.oracle(CountKind(kind))
    _series(report, kind, lambda: sphere_or_ball_series(
        aut, matrices, kind=series_kind, oracle=oracle))


def _coset_growth(session: Session, report: RunReport, name: str):
    H = session.subgroup(name)
    _check_projections(session, report, name)
    aut, matrices = session.automaton(), session.matrices()
    oracle = session.oracle(CountKind.COSET, subgroup=H)
    pair = _pair(report, f"coset {name} sphere",
                 lambda: coset_growth_series(aut, H, matrices, oracle),
                 f"coset {name} ball")
    if pair is None:
        return
    rate = growth_rate(pair.exact, matrices.weighted, matrices.start,
                       _weight_vector(aut, H, matrices))
    report.value(f"coset {name} rate", rate.format())
    report.value(f"coset {name} exponential", rate.exponential)


def _embed_growth(session: Session, report: RunReport, name: str):
    Z = session.subgraph(name)
    report.value(f"{name} diameter", Z.diameter)
    report.value(f"{name} orbit size", Z.orbit_size)
    aut, matrices = session.automaton(), session.matrices()
    oracle = session.oracle(CountKind.EMBED, subgraph=Z)
    _series(report, f"embedding {name}", lambda: embedding_series(
        aut, session.ball(), Z, matrices, oracle))


def _transversal(session: Session, name: str) -> DFA:
    ball = session.ball()
    return shortlex_transversal_acceptor(
        session.automaton(), ball, session.subgroup(name),
        session.params.ft_const, check_len=min(8, ball.radius - 1))


def _shortlex_transversal(session: Session, report: RunReport, name: str,
                          output: Path | None = None):
    machine = _transversal(session, name)
    report.value(f"transversal {name} states", len(machine))
    counts = machine.count_accepted(session.check_length)
    report.value(f"transversal {name} counts", counts)
    oracle = session.oracle(CountKind.COSET, subgroup=session.subgroup(name))
    if oracle is not None:
        report.verdict(f"transversal {name} one word per coset",
                       counts == oracle)
    if output is not None:
        export_dfa(machine, output)


def _weight_vector(aut: FftpAutomaton, H: SubgroupOracle,
                   matrices: TransitionMatrices) -> list:
    weight = coset_weights(aut, H)
    return [weight(s) for s in matrices.states]


def _rate(session: Session, report: RunReport):
    """Rates of the sphere, geodesic and coset series. The power iteration
       runs on the matrix and weight vector whose uAⁿw gives each series:
       combing weights for spheres and cosets, letter counts for geodesics.
    """
    aut, matrices = session.automaton(), session.matrices()
    found = [
        ("sphere", lambda: sphere_or_ball_series(
            aut, matrices, oracle=session.oracle(CountKind.SPHERE)),
         matrices.weighted, None),
        ("geodesic", lambda: geodesic_series(
            aut, matrices, session.oracle(CountKind.GEODESIC)).exact,
         matrices.counts, None)]
    for name, H in session.config.subgroups.items():
        found.append((f"coset {name}", lambda H=H: coset_growth_series(
            aut, H, matrices, session.oracle(CountKind.COSET, H)).exact,
            matrices.weighted, _weight_vector(aut, H, matrices)))
    rated = []
    for name, compute, matrix, weight in found:
        try:
            series = compute()
        except OracleMismatch as mismatch:
            report.verdict(f"rate {name} oracle", False, str(mismatch))
            continue
        rated.append(series)
        rate = growth_rate(series, matrix, matrices.start, weight)
        report.value(f"rate {name}", rate.format())
        if rate.power_iteration is None:
            report.value(f"rate {name} power iteration", "skipped (λ = 1)")
        else:
            report.verdict(f"rate {name} power iteration", rate.agrees())
    denominator = common_denominator(rated)
    report.value("common denominator", "[" + ",".join(
        str(c) for c in polynomial_coefficients(denominator)) + "]")


def _export_dfa(session: Session, report: RunReport, which: str,
                output: Path | None = None):
    aut = session.automaton()
    match = _NAMED.match(which)
    if which == GEODESICS:
        machine = aut.to_dfa()
    elif which == "cone-types":
        machine = cone_type_quotient(aut).dfa
    elif which == "language":
        if session.config.language is None:
            raise InputError("configuration declares no [language] dfa")
        language = load_dfa(session.config.language, aut.alphabet.order)
        machine = intersect_language(aut, language)
        report.note(LANGUAGE_NOTE)
    elif match and match["kind"] == "coset":
        machine = aut.to_dfa(coset_accept_name(session.subgroup(
            match["name"])))
    elif match:
        machine = _transversal(session, match["name"])
    else:
        raise InputError(f"unknown machine '{which}'")
    report.value("dfa states", len(machine.canonical()))
    if output is None:
        report.value("dfa", "\n" + machine.dumps().rstrip("\n"))
    else:
        export_dfa(machine, output)
        report.value("dfa written", output)


def _everything(session: Session, report: RunReport):
    """The full pipeline used by ``selftest``"""
    config = session.config
    _check_confluence(session, report)
    _check_fftp(session, report)
    _build_automaton(session, report)
    _combing(session, report)
    for kind in ("sphere", "ball", "geodesic"):
        _growth(session, report, kind, combing=False)
    for name in config.subgroups:
        _coset_growth(session, report, name)
        _shortlex_transversal(session, report, name)
    for name in config.subgraphs:
        _embed_growth(session, report, name)
    _rate(session, report)


_COMMANDS = {
    "check-confluence": _check_confluence,
    "complete": _complete,
    "check-fftp": _check_fftp,
    "check-projections": _check_projections,
    "build-automaton": _build_automaton,
    "growth": _growth,
    "coset-growth": _coset_growth,
    "embed-growth": _embed_growth,
    "shortlex-transversal": _shortlex_transversal,
    "rate": _rate,
    "export-dfa": _export_dfa,
    "all": _everything,
}


def run(subcommand: str, config: JobConfig | None, unchecked: bool = False,
        **options) -> RunReport:
    """Run *subcommand* against *config* and collect a :class:`RunReport`.

       ``selftest`` ignores *config* and runs every bundled example with
       oracle checks on.

       :raises GrowthError: When a precondition of the subcommand fails
    """
    label = " ".join([subcommand] + [f"{k}={v}" for k, v in options.items()
                                     if v is not None])
    if subcommand == "selftest":
        report = RunReport(label, "")
        for path in bundled_configs():
            sub = run("all", parse_config(path))
            report.merge(sub, path.stem)
        return report
    if subcommand not in _COMMANDS:
        raise InputError(f"unknown subcommand '{subcommand}'")
    if config is None:
        raise InputError(f"{subcommand} needs a configuration")
    report = RunReport(label, config.digest)
    session = Session(config, checked=not unchecked)
    with report.timed(subcommand):
        _COMMANDS[subcommand](session, report, **options)
    for text in session.diagnostics:
        report.note(text)
    if unchecked:
        report.note("oracle comparison skipped (--unchecked)")
    return report


class ConfigPath(click.ParamType):
    """A configuration file, or the name of a bundled example"""

    name = "config"

    def convert(self, value, param, ctx) -> Path:
        path = Path(value)
        if path.is_file():
            return path
        for bundled in bundled_configs():
            if bundled.stem == value:
                return bundled
        self.fail(f"no configuration file or bundled example '{value}'",
                  param, ctx)


def _execute(ctx: click.Context, subcommand: str, config: Path | None,
             **options):
    settings = ctx.obj
    try:
        job = parse_config(config) if config is not None else None
        report = run(subcommand, job, unchecked=settings["unchecked"],
                     **options)
    except GrowthError as error:
        click.echo(f"error: {type(error).__name__}: {error}", err=True)
        ctx.exit(2)
    click.echo(report.render(timings=settings["timings"]), nl=False)
    ctx.exit(0 if report.passed else 1)


config_argument = click.argument("config", type=ConfigPath())


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Log progress to stderr.")
@click.option("--unchecked", is_flag=True,
              help="Skip brute-force oracle comparisons.")
@click.option("--no-timings", is_flag=True,
              help="Omit the timings block from reports.")
@click.pass_context
def main(ctx: click.Context, verbose: bool, unchecked: bool,
         no_timings: bool):
    """Growth series of groups and cosets from fftp automata"""
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s",
                        stream=sys.stderr)
    logging.captureWarnings(True)
    ctx.obj = {"unchecked": unchecked, "timings": not no_timings}


@main.command("check-confluence")
@config_argument
@click.pass_context
def check_confluence_command(ctx, config):
    """Check that every critical pair resolves."""
    _execute(ctx, "check-confluence", config)


@main.command("complete")
@config_argument
@click.pass_context
def complete_command(ctx, config):
    """Run bounded Knuth-Bendix completion."""
    _execute(ctx, "complete", config)


@main.command("check-fftp")
@config_argument
@click.option("--M", "M", type=int, default=None, help="Fellow constant.")
@click.option("--R", "R", type=int, default=None, help="Word length bound.")
@click.pass_context
def check_fftp_command(ctx, config, M, R):
    """Check the falsification by fellow traveler property."""
    _execute(ctx, "check-fftp", config, M=M, R=R)


@main.command("check-projections")
@config_argument
@click.argument("subgroup")
@click.option("--mode", type=click.Choice([m.value for m in ProjectionMode]),
              default="bounded")
@click.option("--M", "M", type=int, default=None)
@click.option("--R", "R", type=int, default=None)
@click.pass_context
def check_projections_command(ctx, config, subgroup, mode, M, R):
    """Check fellow or bounded projections onto SUBGROUP."""
    _execute(ctx, "check-projections", config, name=subgroup, mode=mode,
             M=M, R=R)


@main.command("build-automaton")
@config_argument
@click.option("--K", "K", type=int, default=None)
@click.pass_context
def build_automaton_command(ctx, config, K):
    """Build and validate the fftp automaton."""
    _execute(ctx, "build-automaton", config, K=K)


@main.command("growth")
@config_argument
@click.option("--sphere", "kind", flag_value="sphere")
@click.option("--ball", "kind", flag_value="ball")
@click.option("--geodesic", "kind", flag_value="geodesic")
@click.pass_context
def growth_command(ctx, config, kind):
    """Vertex or geodesic growth series."""
    _execute(ctx, "growth", config, kind=kind or "sphere")


@main.command("coset-growth")
@config_argument
@click.argument("subgroup")
@click.pass_context
def coset_growth_command(ctx, config, subgroup):
    """Growth series of the Schreier graph of SUBGROUP."""
    _execute(ctx, "coset-growth", config, name=subgroup)


@main.command("embed-growth")
@config_argument
@click.argument("subgraph")
@click.pass_context
def embed_growth_command(ctx, config, subgraph):
    """Growth series counting translates of SUBGRAPH."""
    _execute(ctx, "embed-growth", config, name=subgraph)


@main.command("shortlex-transversal")
@config_argument
@click.argument("subgroup")
@click.option("-o", "--output", type=click.Path(path_type=Path),
              default=None, help="Write the acceptor here.")
@click.pass_context
def shortlex_transversal_command(ctx, config, subgroup, output):
    """Acceptor of shortlex-least coset representatives."""
    _execute(ctx, "shortlex-transversal", config, name=subgroup,
             output=output)


@main.command("rate")
@config_argument
@click.pass_context
def rate_command(ctx, config):
    """Exponential growth rates and their common denominator."""
    _execute(ctx, "rate", config)


@main.command("export-dfa")
@config_argument
@click.argument("which")
@click.option("-o", "--output", type=click.Path(path_type=Path),
              default=None)
@click.pass_context
def export_dfa_command(ctx, config, which, output):
    """Export a machine: geodesics, cone-types, language, coset(H) or
       transversal(H)."""
    _execute(ctx, "export-dfa", config, which=which, output=output)


@main.command("selftest")
@click.pass_context
def selftest_command(ctx):
    """Run every bundled example end to end."""
    _execute(ctx, "selftest", None)


if __name__ == "__main__":
    main()
