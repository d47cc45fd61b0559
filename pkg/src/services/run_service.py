"""Service layer for checking scripts and storing runs."""
import json
from datetime import datetime
from typing import List, Optional
from uuid import uuid4

from sqlalchemy.orm import Session

from src.models.database import ProofRunDB
from src.models.lemma import LemmaDb
from src.models.schemas import ProofRun, ScriptInput
from src.services.corpus import CorpusRunner
from src.services.workflow import ProofWorkflow


class RunService:
    """Runs the proof workflow or the corpus and persists each run."""

    def __init__(self, corpus_dir: Optional[str] = None):
        self.workflow = ProofWorkflow()
        self.corpus_dir = corpus_dir

    def _generate_run_id(self, kind: str) -> str:
        """Run ids look like check_20260101_120000_1a2b3c."""
        timestamp = datetime.utcnow()
        return f"{kind}_{timestamp.strftime('%Y%m%d_%H%M%S')}_{uuid4().hex[:6]}"

    def _store(self, db: Session, kind: str, ok: bool, report: dict, input_text: Optional[str]) -> ProofRun:
        run = ProofRun(
            run_id=self._generate_run_id(kind),
            kind=kind,
            timestamp=datetime.utcnow(),
            ok=ok,
            report=report,
        )
        record = ProofRunDB(
            run_id=run.run_id,
            kind=kind,
            timestamp=run.timestamp,
            ok=ok,
            input_text=input_text,
            report_json=json.dumps(report),
        )
        db.add(record)
        db.commit()
        db.refresh(record)
        return run

    def check_script(self, script_input: ScriptInput, db: Session, lemmas: Optional[LemmaDb] = None) -> ProofRun:
        """
        Check an inline script and store the result.

        Raises:
            ParseError: If the script does not parse
        """
        state = self.workflow.run([(None, script_input.script)], db=lemmas, certify=script_input.certify)
        report = state["reports"][0]
        payload = {"theorems": [verdict.model_dump() for verdict in report.theorems]}
        return self._store(db, "check", bool(state["ok"]), payload, script_input.script)

    def run_corpus(self, db: Session, nd: bool = True, conjectures: bool = False) -> ProofRun:
        report = CorpusRunner(self.corpus_dir).run(nd=nd, conjectures=conjectures)
        payload = report.model_dump()
        return self._store(db, "corpus", report.ok, payload, None)

    def get_run(self, run_id: str, db: Session) -> ProofRun:
        record = db.query(ProofRunDB).filter(ProofRunDB.run_id == run_id).first()
        if not record:
            raise ValueError(f"Run {run_id} not found")
        return self._to_schema(record)

    def list_runs(self, db: Session, kind: Optional[str] = None) -> List[ProofRun]:
        query = db.query(ProofRunDB)
        if kind:
            query = query.filter(ProofRunDB.kind == kind)
        return [self._to_schema(record) for record in query.order_by(ProofRunDB.timestamp.desc()).all()]

    @staticmethod
    def _to_schema(record: ProofRunDB) -> ProofRun:
        return ProofRun(
            run_id=record.run_id,
            kind=record.kind,
            timestamp=record.timestamp,
            ok=record.ok,
            report=json.loads(record.report_json),
        )
