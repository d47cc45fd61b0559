"""LangGraph workflow for checking proof scripts against a growing lemma database."""
import sys
import time
from typing import Dict, List, Optional, Tuple, TypedDict

from langgraph.graph import END, StateGraph

from src.exceptions import KernelError
from src.models.lemma import LemmaDb, LemmaEntry
from src.models.proof import SYSTEM_LOGIC, Derivation, ProofScript
from src.models.schemas import CheckVerdict, ScriptReport
from src.observability.tracing import create_span, create_trace, flush_langfuse, log_score
from src.services.checker import DerivationChecker
from src.services.lemmas import expand as inline_lemmas
from src.services.semantics import sequent_sound
from src.syntax.proofs import parse_proof


class ProofState(TypedDict):
    """State of one run over a sequence of scripts."""
    sources: List[Tuple[Optional[str], str]]
    certify: bool
    expand: bool
    scripts: List[Tuple[Optional[str], ProofScript]]
    db: LemmaDb
    accepted: Dict[str, Derivation]
    reports: List[ScriptReport]
    ok: Optional[bool]
    trace_id: Optional[str]


class ProofWorkflow:
    """load_scripts -> check_theorems -> certify -> expand_lemmas -> summarize.

    Accepted theorems are registered as lemmas in declaration order, so a
    later script may use every theorem of an earlier one.
    """

    def __init__(self):
        self.graph = self._build_graph()

    def _span(self, state: ProofState, name: str, input_data: Optional[dict] = None):
        if not state.get("trace_id"):
            return None
        return create_span(state["trace_id"], name, input_data=input_data)

    @staticmethod
    def _end(span, started: float, output: dict) -> None:
        if span:
            span.end(output=output, metadata={"latency_ms": (time.time() - started) * 1000})

    def _load_scripts(self, state: ProofState) -> ProofState:
        started = time.time()
        span = self._span(state, "load_scripts", {"paths": [path for path, _ in state["sources"]]})
        state["scripts"] = [(path, parse_proof(text)) for path, text in state["sources"]]
        self._end(span, started, {"theorems": sum(len(script) for _, script in state["scripts"])})
        return state

    def _check_theorems(self, state: ProofState) -> ProofState:
        started = time.time()
        span = self._span(state, "check_theorems")
        db = state["db"]
        reports = []
        for path, script in state["scripts"]:
            report = ScriptReport(path=path)
            for derivation in script:
                if derivation.name in db:
                    verdict = CheckVerdict(
                        theorem=derivation.name,
                        system=derivation.system.value,
                        accepted=False,
                        reason=f"lemma {derivation.name!r} is already registered",
                        source=derivation.initial.key,
                        target=derivation.final.key,
                    )
                else:
                    verdict = DerivationChecker(db).check(derivation)
                if verdict.accepted:
                    db = db.with_entry(LemmaEntry.from_derivation(derivation.name, derivation))
                    state["accepted"][derivation.name] = derivation
                report.theorems.append(verdict)
            reports.append(report)
        state["db"] = db
        state["reports"] = reports
        self._end(span, started, {"accepted": len(state["accepted"]), "lemmas": len(db)})
        return state

    def _certify(self, state: ProofState) -> ProofState:
        if not state["certify"]:
            return state
        started = time.time()
        span = self._span(state, "certify")
        for verdict in self._accepted_verdicts(state):
            derivation = state["accepted"][verdict.theorem]
            verdict.certified = sequent_sound(SYSTEM_LOGIC[derivation.system], derivation.sequent)
        self._end(span, started, {"certified": self._count(state, "certified")})
        return state

    def _expand_lemmas(self, state: ProofState) -> ProofState:
        if not state["expand"]:
            return state
        started = time.time()
        span = self._span(state, "expand_lemmas")
        empty = DerivationChecker(LemmaDb())
        for verdict in self._accepted_verdicts(state):
            derivation = state["accepted"][verdict.theorem]
            try:
                verdict.expanded = empty.check(inline_lemmas(derivation, state["db"])).accepted
            except KernelError as e:
                print(f"[WARNING] Failed to expand {verdict.theorem}: {e}", file=sys.stderr)
                verdict.expanded = False
        self._end(span, started, {"expanded": self._count(state, "expanded")})
        return state

    def _summarize(self, state: ProofState) -> ProofState:
        verdicts = [verdict for report in state["reports"] for verdict in report.theorems]
        ok = all(verdict.accepted for verdict in verdicts)
        if state["certify"]:
            ok = ok and all(verdict.certified for verdict in verdicts)
        if state["expand"]:
            ok = ok and all(verdict.expanded for verdict in verdicts)
        state["ok"] = ok
        if state.get("trace_id") and verdicts:
            accepted = sum(verdict.accepted for verdict in verdicts)
            log_score(state["trace_id"], "accepted_ratio", accepted / len(verdicts))
        return state

    @staticmethod
    def _accepted_verdicts(state: ProofState) -> List[CheckVerdict]:
        return [
            verdict
            for report in state["reports"]
            for verdict in report.theorems
            if verdict.accepted and verdict.theorem in state["accepted"]
        ]

    @staticmethod
    def _count(state: ProofState, field: str) -> int:
        return sum(bool(getattr(verdict, field)) for report in state["reports"] for verdict in report.theorems)

    def _build_graph(self):
        workflow = StateGraph(ProofState)

        workflow.add_node("load_scripts", self._load_scripts)
        workflow.add_node("check_theorems", self._check_theorems)
        workflow.add_node("certify_endpoints", self._certify)
        workflow.add_node("expand_lemmas", self._expand_lemmas)
        workflow.add_node("summarize", self._summarize)

        workflow.set_entry_point("load_scripts")
        workflow.add_edge("load_scripts", "check_theorems")
        workflow.add_edge("check_theorems", "certify_endpoints")
        workflow.add_edge("certify_endpoints", "expand_lemmas")
        workflow.add_edge("expand_lemmas", "summarize")
        workflow.add_edge("summarize", END)

        return workflow.compile()

    def run(
        self,
        sources: List[Tuple[Optional[str], str]],
        db: Optional[LemmaDb] = None,
        certify: bool = False,
        expand: bool = False,
        run_id: Optional[str] = None,
    ) -> ProofState:
        """
        Check every theorem of every source, in order.

        Args:
            sources: (path, text) pairs; path may be None for inline scripts
            db: Lemmas available before the first script
            certify: Also check endpoints with the semantic oracle
            expand: Also re-check the lemma-free expansion of each theorem
            run_id: Optional run id for tracing

        Returns:
            Final state with per-script reports and the extended lemma database
        """
        trace = create_trace("proof_check", run_id=run_id, metadata={"scripts": len(sources)})
        initial_state: ProofState = {
            "sources": list(sources),
            "certify": certify,
            "expand": expand,
            "scripts": [],
            "db": db or LemmaDb(),
            "accepted": {},
            "reports": [],
            "ok": None,
            "trace_id": trace.id if trace else None,
        }
        final_state = self.graph.invoke(initial_state)
        flush_langfuse()
        return final_state
