"""Pydantic schemas for reports, API payloads and persisted runs."""
from datetime import datetime
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field


class CheckVerdict(BaseModel):
    """Outcome of checking one derivation."""
    theorem: Optional[str] = Field(None, description="Theorem name, when the derivation has one")
    system: str = Field(..., description="System the derivation was checked in")
    accepted: bool = Field(..., description="True iff every step is licensed")
    step_index: Optional[int] = Field(None, description="1-based index of the rejected step in its block")
    location: Optional[str] = Field(None, description="Path to the rejected step, e.g. 'have h1, step 2'")
    reason: Optional[str] = Field(None, description="Why the step was rejected")
    source: str = Field("", description="Initial graph")
    target: str = Field("", description="Final graph")
    certified: Optional[bool] = Field(None, description="Endpoints sequent-sound under the system's logic")
    expanded: Optional[bool] = Field(None, description="Lemma-inlined expansion re-checks")


class ScriptReport(BaseModel):
    path: Optional[str] = Field(None, description="Script path, if read from disk")
    theorems: List[CheckVerdict] = Field(default_factory=list)

    @property
    def accepted(self) -> bool:
        return all(verdict.accepted for verdict in self.theorems)


class KripkeModelOut(BaseModel):
    """Printable countermodel: worlds, order pairs (w <= v) and forced atoms."""
    worlds: List[int] = Field(..., description="World identifiers; 0 is the root")
    order: List[Tuple[int, int]] = Field(..., description="Pairs (w, v) with w <= v, reflexive pairs omitted")
    forced: Dict[int, List[str]] = Field(..., description="Atoms forced at each world")


class OracleReport(BaseModel):
    logic: str = Field(..., description="cpc or ipc")
    formula: str = Field(..., description="Formula as printed")
    valid: bool
    countermodel: Optional[KripkeModelOut] = None
    note: Optional[str] = None


class Counterexample(BaseModel):
    rule: str
    kind: str = Field(..., description="soundness or substitutivity")
    source: str
    target: str
    formula: Optional[str] = Field(None, description="Implication whose validity failed")
    detail: Optional[str] = None


class FuzzReport(BaseModel):
    system: str
    seed: int
    iterations: int
    smallest_instances: int = Field(0, description="Fixed smallest instances checked before random ones")
    instances_per_rule: Dict[str, int] = Field(default_factory=dict)
    second_degree_instances: Dict[str, int] = Field(default_factory=dict)
    counterexamples: List[Counterexample] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


class SearchReport(BaseModel):
    system: str
    source: str
    target: str
    found: bool
    steps: Optional[int] = None
    script: Optional[str] = Field(None, description="Checkable .gpf text of the derivation found")
    semantically_valid: bool = Field(..., description="Oracle verdict for source -> target under the system's logic")
    note: Optional[str] = None


class CorpusRow(BaseModel):
    id: str
    locus: str
    quote: str = Field("", description="Verbatim sentence stating the derived rule")
    logic: str = Field("", description="Logic the endpoints are certified under")
    system: str
    script: str
    expected: str = "accept"
    verdict: str
    certified: bool
    expanded: bool
    uncertain: bool = False
    reason: Optional[str] = None


class ConjectureRow(BaseModel):
    """Inverse rules asserted without derivation: oracle soundness plus a bounded search."""
    name: str
    system: str
    source: str
    target: str
    sound: bool
    found: bool
    steps: Optional[int] = None


class NDRow(BaseModel):
    index: int
    judgment: str
    accepted: bool
    compiled: bool
    equivalent: bool
    reason: Optional[str] = None


class CorpusReport(BaseModel):
    rows: List[CorpusRow] = Field(default_factory=list)
    nd_rows: List[NDRow] = Field(default_factory=list)
    conjectures: List[ConjectureRow] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(row.verdict == row.expected and row.certified and row.expanded for row in self.rows) and all(
            row.accepted and row.compiled and row.equivalent for row in self.nd_rows
        )


# -- API payloads -----------------------------------------------------------


class GraphInput(BaseModel):
    graph: str = Field(..., description="Graph in linear notation")


class FormulaInput(BaseModel):
    formula: str = Field(..., description="Formula in T/F/~/&/v/-> notation")


class TranslationOutput(BaseModel):
    graph: str
    formula: str


class OracleInput(BaseModel):
    logic: str = Field(..., description="cpc or ipc")
    formula: str


class ScriptInput(BaseModel):
    script: str = Field(..., description="Proof script text (.gpf)")
    certify: bool = Field(False, description="Also certify endpoints with the oracle")


class ProofRun(BaseModel):
    """A persisted check or corpus run."""
    run_id: str
    kind: str = Field(..., description="check or corpus")
    timestamp: datetime
    ok: bool
    report: dict
