"""Command-line surface: alfa check | translate | embed | oracle | fuzz | search | enumerate | corpus | nd-compile | serve.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import click

from src.config import get_settings
from src.exceptions import KernelError
from src.models.formula import embed, translate
from src.models.lemma import LemmaDb
from src.models.proof import SystemId
from src.models.schemas import CorpusReport, ScriptReport
from src.services.corpus import CorpusRunner
from src.services.fuzz import RuleFuzzer
from src.services.lemmas import dependency_order
from src.services.natural_deduction import check_nd, compile_nd, endpoints_equivalent
from src.services.rules import registry
from src.services.search import SearchBudget, enumerate_consequences, search_report
from src.services.semantics import oracle_report, parse_logic
from src.services.workflow import ProofWorkflow
from src.syntax.formulas import parse_formula, print_formula
from src.syntax.graphs import parse_graph, print_graph
from src.syntax.natural_deduction import parse_nd_file
from src.syntax.proofs import print_proof

OK, FAILED, USAGE = 0, 1, 2


def _abort(message: str, code: int = USAGE) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        _abort(f"cannot read {path}: {e.strerror or e}")


def _system(text: str) -> SystemId:
    try:
        return SystemId.parse(text)
    except KernelError as e:
        _abort(str(e))


def _lemma_db(paths: Sequence[str], use_corpus: bool) -> LemmaDb:
    """Lemmas from the given scripts, or from the corpus when none are given."""
    if paths:
        sources = [(path, _read(path)) for path in paths]
    elif use_corpus and Path(get_settings().corpus_dir).is_dir():
        sources = CorpusRunner().scripts()
    else:
        return LemmaDb()
    return ProofWorkflow().run(sources)["db"]


def _print_script_report(report: ScriptReport) -> None:
    prefix = f"{report.path}: " if report.path else ""
    for verdict in report.theorems:
        line = f"{prefix}{verdict.theorem} [{verdict.system}] "
        if verdict.accepted:
            line += "ACCEPT"
            if verdict.certified is not None:
                line += " certified" if verdict.certified else " NOT CERTIFIED"
            if verdict.expanded is not None:
                line += " expanded" if verdict.expanded else " EXPANSION REJECTED"
        else:
            where = f" at {verdict.location}" if verdict.location else ""
            line += f"REJECT{where}: {verdict.reason}"
        click.echo(line)


@click.group()
def cli():
    """Proof kernel for existential graphs: ALFAO, ALFA_I, ALFA_IO and ALFA_IO_CLASSIC."""


@cli.command()
@click.argument("paths", nargs=-1, required=True)
@click.option("--lemmas", "lemma_paths", multiple=True, help="Scripts whose theorems are loaded as lemmas first.")
@click.option("--certify", is_flag=True, help="Check endpoints with the semantic oracle.")
@click.option("--expand", is_flag=True, help="Re-check every theorem with its lemmas inlined.")
@click.option("--json", "as_json", is_flag=True, help="Print a structured report.")
def check(paths: Tuple[str, ...], lemma_paths: Tuple[str, ...], certify: bool, expand: bool, as_json: bool):
    """Check every theorem of the given .gpf scripts, in order."""
    try:
        db = _lemma_db(lemma_paths, use_corpus=False)
        state = ProofWorkflow().run([(path, _read(path)) for path in paths], db=db, certify=certify, expand=expand)
    except KernelError as e:
        _abort(str(e))
    if as_json:
        click.echo("[" + ",".join(report.model_dump_json() for report in state["reports"]) + "]")
    else:
        for report in state["reports"]:
            _print_script_report(report)
        total = sum(len(report.theorems) for report in state["reports"])
        click.echo(f"{total} theorem(s) checked")
    sys.exit(OK if state["ok"] else FAILED)


@cli.command("translate")
@click.argument("graph")
def translate_command(graph: str):
    """Print the formula a graph denotes."""
    try:
        click.echo(print_formula(translate(parse_graph(graph))))
    except KernelError as e:
        _abort(str(e))


@cli.command("embed")
@click.argument("formula")
def embed_command(formula: str):
    """Print the graph a formula embeds to."""
    try:
        click.echo(print_graph(embed(parse_formula(formula))))
    except KernelError as e:
        _abort(str(e))


@cli.command()
@click.argument("logic")
@click.argument("formula")
@click.option("--worlds", type=int, default=None, help="Largest countermodel to look for.")
@click.option("--json", "as_json", is_flag=True)
def oracle(logic: str, formula: str, worlds: Optional[int], as_json: bool):
    """Decide FORMULA in cpc or ipc; invalid ipc formulas get a Kripke countermodel."""
    try:
        report = oracle_report(parse_logic(logic), parse_formula(formula), worlds)
    except KernelError as e:
        _abort(str(e))
    if as_json:
        click.echo(report.model_dump_json(indent=2))
        return
    click.echo(f"{'VALID' if report.valid else 'INVALID'}: {report.formula}")
    if report.countermodel is not None:
        model = report.countermodel
        click.echo(f"countermodel with {len(model.worlds)} world(s):")
        pairs = ", ".join(f"{w} <= {v}" for w, v in model.order) or "(discrete)"
        click.echo(f"order: {pairs}")
        for world in model.worlds:
            click.echo(f"  world {world} forces: {' '.join(model.forced[world]) or '-'}")
    elif report.note:
        click.echo(report.note)


@cli.command()
@click.argument("system")
@click.option("--iterations", type=click.IntRange(min=1), default=None, help="Instances per rule.")
@click.option("--seed", type=int, default=0)
@click.option("--second-degree", "second_degree", type=click.IntRange(min=0), default=None,
              help="Premise instances per second-degree rule (defaults to --iterations).")
@click.option("--add-rule", "extra_rules", multiple=True, help="Add a rule to the registry before fuzzing.")
@click.option("--json", "as_json", is_flag=True)
def fuzz(system: str, iterations: Optional[int], seed: int, second_degree: Optional[int],
         extra_rules: Tuple[str, ...], as_json: bool):
    """Random soundness and substitutivity checks of every rule of SYSTEM."""
    system_id = _system(system)
    try:
        rules = registry(system_id).with_rules(*extra_rules) if extra_rules else None
        report = RuleFuzzer(system_id, seed, iterations, rules, second_degree).run()
    except KernelError as e:
        _abort(str(e))
    if as_json:
        click.echo(report.model_dump_json(indent=2))
    else:
        click.echo(f"{report.system}: seed {report.seed}, {report.iterations} instance(s) per rule")
        for name, count in report.instances_per_rule.items():
            click.echo(f"  {name:<6} {count}")
        for name, count in report.second_degree_instances.items():
            click.echo(f"  {name:<6} {count} (second degree)")
        for counterexample in report.counterexamples:
            click.echo(
                f"COUNTEREXAMPLE {counterexample.rule} ({counterexample.kind}): "
                f"{counterexample.source} |- {counterexample.target}  [{counterexample.formula}]"
            )
            if counterexample.detail:
                click.echo(f"  {counterexample.detail}")
        click.echo(f"{len(report.counterexamples)} failure(s)")
    sys.exit(OK if report.ok else FAILED)


def _budget(steps: Optional[int], size: Optional[int], branch: Optional[int], pool: Sequence[str]) -> SearchBudget:
    return SearchBudget.from_settings(
        max_steps=steps,
        max_graph_size=size,
        max_branch=branch,
        witness_pool=tuple(parse_graph(text) for text in pool) or None,
    )


@cli.command()
@click.argument("system")
@click.argument("source")
@click.argument("target")
@click.option("--steps", type=int, default=None, help="Largest derivation, counted in steps.")
@click.option("--size", type=int, default=None, help="Largest intermediate graph.")
@click.option("--branch", type=int, default=None, help="Moves tried per graph.")
@click.option("--witness-pool", "pool", multiple=True, help="Witness graph for existential rules (repeatable).")
@click.option("--lemmas", "lemma_paths", multiple=True, help="Scripts providing lemmas (default: the corpus).")
@click.option("--no-corpus", is_flag=True, help="Search without corpus lemmas.")
@click.option("--json", "as_json", is_flag=True)
def search(system: str, source: str, target: str, steps: Optional[int], size: Optional[int],
           branch: Optional[int], pool: Tuple[str, ...], lemma_paths: Tuple[str, ...], no_corpus: bool,
           as_json: bool):
    """Look for a derivation of SOURCE |- TARGET in SYSTEM."""
    system_id = _system(system)
    try:
        budget = _budget(steps, size, branch, pool)
        db = _lemma_db(lemma_paths, use_corpus=not no_corpus)
        report = search_report(system_id, db, parse_graph(source), parse_graph(target), budget)
    except KernelError as e:
        _abort(str(e))
    if as_json:
        click.echo(report.model_dump_json(indent=2))
    elif report.found:
        click.echo(report.script, nl=False)
    else:
        click.echo(f"NOT FOUND: {report.note}")
    sys.exit(OK if report.found else FAILED)


@cli.command("enumerate")
@click.argument("source")
@click.option("--system", "system", default="ALFAO", show_default=True)
@click.option("--steps", type=int, default=1, show_default=True)
@click.option("--size", type=int, default=None)
@click.option("--rule", "rules", multiple=True, help="Restrict to these rules (repeatable).")
@click.option("--witness-pool", "pool", multiple=True)
def enumerate_command(source: str, system: str, steps: int, size: Optional[int], rules: Tuple[str, ...],
                      pool: Tuple[str, ...]):
    """Print every graph reachable from SOURCE, one per line, each certified by the oracle."""
    system_id = _system(system)
    try:
        budget = _budget(steps, size, None, pool)
        graphs = enumerate_consequences(system_id, LemmaDb(), parse_graph(source), budget, rules or None)
    except KernelError as e:
        _abort(str(e))
    for graph in sorted(graphs, key=lambda g: (len(g.key), g.key)):
        click.echo(print_graph(graph))


def _print_corpus(report: CorpusReport) -> None:
    click.echo(f"{'id':<16} {'system':<16} {'verdict':<8} {'certified':<10} {'expanded':<9} locus")
    for row in report.rows:
        flag = " (transcription uncertain)" if row.uncertain else ""
        click.echo(
            f"{row.id:<16} {row.system:<16} {row.verdict:<8} {str(row.certified):<10} "
            f"{str(row.expanded):<9} {row.locus}{flag}"
        )
        if row.quote:
            click.echo(f"  \"{row.quote}\"")
        if row.reason:
            click.echo(f"  {row.reason}")
    for row in report.nd_rows:
        status = "ok" if row.accepted and row.compiled and row.equivalent else "FAILED"
        click.echo(f"nd #{row.index:<3} {status:<7} {row.judgment}" + (f"  ({row.reason})" if row.reason else ""))
    for row in report.conjectures:
        found = f"found in {row.steps} step(s)" if row.found else "not found"
        click.echo(f"conjecture {row.name:<4} {row.source} |- {row.target}: sound={row.sound}, {found}")


@cli.command()
@click.option("--dir", "corpus_dir", type=click.Path(file_okay=False), default=None)
@click.option("--nd/--no-nd", default=True, help="Also compile the natural deduction proofs.")
@click.option("--conjectures/--no-conjectures", default=True, help="Also try the inverse-rule conjectures.")
@click.option("--json", "as_json", is_flag=True)
def corpus(corpus_dir: Optional[str], nd: bool, conjectures: bool, as_json: bool):
    """Check the whole corpus and print one row per derivation."""
    try:
        report = CorpusRunner(corpus_dir).run(nd=nd, conjectures=conjectures)
    except OSError as e:
        _abort(f"cannot read corpus: {e}")
    except KernelError as e:
        _abort(str(e))
    if as_json:
        click.echo(report.model_dump_json(indent=2))
    else:
        _print_corpus(report)
    sys.exit(OK if report.ok else FAILED)


@cli.command("nd-compile")
@click.argument("path")
@click.option("--r8id", is_flag=True, help="Close top-level discharges with R8ID.")
def nd_compile(path: str, r8id: bool):
    """Check natural deduction proofs and print their ALFA_I derivations."""
    try:
        proofs = parse_nd_file(_read(path))
    except KernelError as e:
        _abort(str(e))
    derivations = []
    failed = False
    for index, proof in enumerate(proofs, start=1):
        verdict = check_nd(proof)
        if not verdict.accepted:
            click.echo(f"% proof {index} rejected: {verdict.reason}", err=True)
            failed = True
            continue
        try:
            derivation = compile_nd(proof, use_r8id=r8id, name=f"nd_{index}")
        except KernelError as e:
            click.echo(f"% proof {index} did not compile: {e}", err=True)
            failed = True
            continue
        if not endpoints_equivalent(proof, derivation):
            click.echo(f"% proof {index}: endpoints are not equivalent to the judgment", err=True)
            failed = True
        derivations.append(derivation)
    click.echo(print_proof(derivations), nl=False)
    sys.exit(FAILED if failed else OK)


@cli.command()
@click.argument("paths", nargs=-1, required=True)
def lemmas(paths: Tuple[str, ...]):
    """List the lemmas the scripts register, each with the lemmas it uses."""
    try:
        db = _lemma_db(paths, use_corpus=False)
    except KernelError as e:
        _abort(str(e))
    for name, uses in dependency_order(db):
        click.echo(f"{name}: {', '.join(uses) if uses else '-'}")


@cli.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host: str, port: int):
    """Run the HTTP API."""
    import uvicorn

    uvicorn.run("src.main:app", host=host, port=port)


def main(argv: Optional[List[str]] = None) -> None:
    cli.main(args=argv, prog_name="alfa")


if __name__ == "__main__":
    main()
