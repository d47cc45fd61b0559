"""The machine-checked corpus: derived rules of the four systems, ND proofs and open inverse rules."""
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from src.config import get_settings
from src.exceptions import KernelError
from src.models.lemma import LemmaDb
from src.models.proof import SYSTEM_LOGIC, Logic, Sequent, SystemId
from src.models.schemas import CheckVerdict, ConjectureRow, CorpusReport, CorpusRow, NDRow
from src.services.natural_deduction import check_nd, compile_nd, endpoints_equivalent
from src.services.search import SearchBudget, prove
from src.services.semantics import sequent_sound
from src.services.workflow import ProofWorkflow
from src.syntax.formulas import print_formula
from src.syntax.graphs import parse_graph
from src.syntax.natural_deduction import parse_nd_file

SCRIPTS = ("alfao.gpf", "alfa_i.gpf", "alfa_io.gpf", "alfa_io_classic.gpf")
ND_PROOFS = Path("nd") / "proofs.ndp"


@dataclass(frozen=True)
class CorpusEntry:
    """One derived rule: where it is stated and the sentence that states it."""

    id: str
    locus: str
    quote: str
    script: str
    system: SystemId
    expected: str = "accept"
    uncertain: bool = False

    @property
    def logic(self) -> Logic:
        """The logic its endpoints are certified under."""
        return SYSTEM_LOGIC[self.system]


# Derivations whose transcription is uncertain; a failure here points at the script first.
UNCERTAIN = frozenset({"r5_prime", "e_p_inverse"})


def _entries(script: str, system: SystemId, *rows: Tuple[str, str, str]) -> List[CorpusEntry]:
    return [
        CorpusEntry(id=name, locus=locus, quote=quote, script=script, system=system, uncertain=name in UNCERTAIN)
        for name, locus, quote in rows
    ]


# Registration order: every theorem may use the ones listed before it.
CORPUS: Tuple[CorpusEntry, ...] = tuple(
    _entries(
        "alfao.gpf",
        SystemId.ALFAO,
        ("r1", "ALFAO theorems: R1 (A |- A A) dropped as a basic rule",
         "can be suppressed as it's basic rule"),
        ("conj_insertion", "ALFAO theorems: conjunction insertion a, b |- a and b",
         "known in the Hilbert type systems as insertion of"),
        ("r7_derived", "ALFAO theorems: R7 from R5, R2 and R8",
         "$R_7$ is deductible by $R_5$,$R_2$ and $R_8$."),
        ("r4_derived", "ALFAO theorems: R4 from R5, R2, R6 and R8",
         "$R_4$ is deductible by $R_5$,$R_2$,$R_6$ and $R_8$."),
        ("r8_inverse", "ALFAO inverse rules: inverse of R8",
         "it is awaited that $R_8^-$ would be equally strong to it's inverse"),
        ("mp", "ALFAO modus ponens: R5; R2; R6",
         "The Modus Ponendo Ponens is a theorem of $ALFAo$"),
        ("mp_deduces_r6", "ALFAO modus ponens: modus ponens yields R6",
         "$MP$ deduces $R_6$."),
    )
    + _entries(
        "alfa_i.gpf",
        SystemId.ALFA_I,
        ("r8i_inverse", "ALFA_I deductions: inverse of R8i",
         "The proof of this rule is similar to clasic proof."),
        ("ctx", "ALFA_I deductions: context rule from R0",
         "The rule just demonstrated is a direct consequence of the use of $R_0$."),
        ("i_p2", "ALFA_I deductions: I_p2, a negated conjunction becomes a scroll",
         "Some of the demonstrated theorems suggest the change of the basic rules of $ALFA_I$ by those"),
        ("e_p", "ALFA_I deductions: E_p, a scroll becomes a cut around a cut",
         "any single dotted closed curve can be closed (complete)"),
        ("i_p3", "ALFA_I deductions: I_p3, a disjunction becomes a scroll from a negated disjunct",
         "the passage from the disjunction of two graphs to their implication derives from closing one of "
         "the semi-dotted curves"),
        ("disj_double_cut", "ALFA_I deductions: a disjunction curve gives the double-cut form",
         "opening (the opposite of closing) the other semi-dotted curve"),
    )
    + _entries(
        "alfa_io.gpf",
        SystemId.ALFA_IO,
        ("i_c", "ALFA_IO deductions: double-cut introduction",
         "The previous theorems prove the equivalence between $ALFA_{Io}$ and $ALFA_I$."),
        ("e_bot", "ALFA_IO deductions: ex falso from the empty cut",
         r"the rule $E_\bot$ can also be considered of insertion"),
        ("r5_prime", "ALFA_IO deductions: R5', a special case of R5",
         "$R_5^{'}$ is a particular case of $R_5$"),
        ("i_neg", "ALFA_IO deductions: negation introduction",
         r"this is proved by demonstrating that $I_\neg, E_\bot, E_\neg$ are deductions of the first"),
        ("e_neg", "ALFA_IO deductions: negation elimination",
         r"this is proved by demonstrating that $I_\neg, E_\bot, E_\neg$ are deductions of the first"),
        ("r5", "ALFA_IO and ALFAO: R5 (deiteration)",
         "We will then deduce those $ALFAo$ rules that belong to $ALFA_{Io}$."),
        ("r7", "ALFA_IO and ALFAO: R7 (double cut inside a cut)",
         "the rules $R_0,R_2,R_3,R_5$ and $R_7$ belong to both systems"),
        ("r7_inverse", "ALFA_IO and ALFAO: inverse of R7",
         "$R_7^-$ is deduced in order to facilitate the deduction of the $R_3$ rule."),
        ("r3", "ALFA_IO and ALFAO: R3 (insertion into a cut)",
         "$R_7^-$ is deduced in order to facilitate the deduction of the $R_3$ rule."),
    )
    + _entries(
        "alfa_io_classic.gpf",
        SystemId.ALFA_IO_CLASSIC,
        ("e_p_inverse", "ALFA_IO_CLASSIC: inverse of E_p with the classical disjunction rule",
         "it is enough to prove that the $E_p^{-1}$ rule belongs to the new system"),
        ("r6", "ALFA_IO_CLASSIC: R6",
         r"all rules of $ALFAo$ are theorems of $ALFA_{Io}+\{I_{\vee p}\}$"),
        ("r4", "ALFA_IO_CLASSIC: R4",
         r"the rules $R_4$ and $R_6$ belong to $ALFA_{Io}+\{I_{\vee p}\}$"),
        ("r8", "ALFA_IO_CLASSIC: R8",
         "It remains to be seen that $R_8$ is deductible from this system"),
    )
)

# Inverse rules stated for ALFAO without derivations.
CONJECTURES: Tuple[Tuple[str, str, str], ...] = (
    ("R1-", "a a", "a"),
    ("R4-", "(b (a b))", "(b (a))"),
    ("R5-", "a (b)", "a (a b)"),
    ("R6-", "a", "((a))"),
    ("R7-", "(a ((b)))", "(a b)"),
)


def _verdict_row(entry: CorpusEntry, verdict: Optional[CheckVerdict]) -> CorpusRow:
    if verdict is None:
        return CorpusRow(
            id=entry.id,
            locus=entry.locus,
            quote=entry.quote,
            logic=entry.logic.value,
            system=entry.system.value,
            script=entry.script,
            verdict="missing",
            certified=False,
            expanded=False,
            uncertain=entry.uncertain,
            reason="theorem not found in its script",
        )
    return CorpusRow(
        id=entry.id,
        locus=entry.locus,
        quote=entry.quote,
        logic=entry.logic.value,
        system=verdict.system,
        script=entry.script,
        expected=entry.expected,
        verdict="accept" if verdict.accepted else "reject",
        certified=bool(verdict.certified),
        expanded=bool(verdict.expanded),
        uncertain=entry.uncertain,
        reason=verdict.reason,
    )


class CorpusRunner:
    """Checks every corpus script in order, then the ND proofs and the conjectures."""

    def __init__(self, corpus_dir: Union[str, Path, None] = None, budget: Optional[SearchBudget] = None):
        self.corpus_dir = Path(corpus_dir or get_settings().corpus_dir)
        self.budget = budget or SearchBudget.from_settings(max_steps=3, max_graph_size=8)
        self.workflow = ProofWorkflow()
        self.db = LemmaDb()

    def scripts(self) -> List[Tuple[str, str]]:
        return [(name, (self.corpus_dir / name).read_text(encoding="utf-8")) for name in SCRIPTS]

    def check_scripts(self, run_id: Optional[str] = None) -> List[CorpusRow]:
        state = self.workflow.run(self.scripts(), certify=True, expand=True, run_id=run_id)
        self.db = state["db"]
        verdicts: Dict[str, CheckVerdict] = {}
        for report in state["reports"]:
            for verdict in report.theorems:
                verdicts.setdefault(verdict.theorem, verdict)
        return [_verdict_row(entry, verdicts.get(entry.id)) for entry in CORPUS]

    def check_nd(self) -> List[NDRow]:
        path = self.corpus_dir / ND_PROOFS
        rows = []
        for index, proof in enumerate(parse_nd_file(path.read_text(encoding="utf-8")), start=1):
            verdict = check_nd(proof)
            if not verdict.accepted:
                rows.append(NDRow(index=index, judgment=print_formula(proof.conclusion), accepted=False,
                                  compiled=False, equivalent=False, reason=verdict.reason))
                continue
            judgment = print_formula(verdict.judgment.as_formula())
            try:
                derivation = compile_nd(proof, name=f"nd_{index}")
            except KernelError as e:
                rows.append(NDRow(index=index, judgment=judgment, accepted=True, compiled=False,
                                  equivalent=False, reason=str(e)))
                continue
            rows.append(NDRow(index=index, judgment=judgment, accepted=True, compiled=True,
                              equivalent=endpoints_equivalent(proof, derivation)))
        return rows

    def check_conjectures(self) -> List[ConjectureRow]:
        rows = []
        for name, source_text, target_text in CONJECTURES:
            source, target = parse_graph(source_text), parse_graph(target_text)
            derivation = prove(SystemId.ALFAO, self.db, source, target, self.budget)
            rows.append(
                ConjectureRow(
                    name=name,
                    system=SystemId.ALFAO.value,
                    source=source.key,
                    target=target.key,
                    sound=sequent_sound(Logic.CLASSICAL, Sequent(source, target)),
                    found=derivation is not None,
                    steps=derivation.step_count() if derivation is not None else None,
                )
            )
        return rows

    def run(self, nd: bool = True, conjectures: bool = True, run_id: Optional[str] = None) -> CorpusReport:
        report = CorpusReport(rows=self.check_scripts(run_id))
        if nd:
            report.nd_rows = self.check_nd()
        if conjectures:
            report.conjectures = self.check_conjectures()
        return report


def run_corpus(
    corpus_dir: Union[str, Path, None] = None,
    nd: bool = True,
    conjectures: bool = True,
    budget: Optional[SearchBudget] = None,
) -> CorpusReport:
    return CorpusRunner(corpus_dir, budget).run(nd=nd, conjectures=conjectures)


def corpus_db(corpus_dir: Union[str, Path, None] = None) -> LemmaDb:
    """The lemma database built from every accepted corpus theorem."""
    runner = CorpusRunner(corpus_dir)
    state = runner.workflow.run(runner.scripts())
    return state["db"]