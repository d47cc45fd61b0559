"""API endpoints for translation, oracles and proof checking."""
from typing import List, Optional

from fastapi import APIRouter, Depends, HTTPException
from sqlalchemy.orm import Session

from src.exceptions import KernelError
from src.models.database import get_db
from src.models.formula import embed, translate
from src.models.schemas import (
    FormulaInput,
    GraphInput,
    OracleInput,
    OracleReport,
    ProofRun,
    ScriptInput,
    TranslationOutput,
)
from src.services.run_service import RunService
from src.services.semantics import oracle_report, parse_logic
from src.syntax.formulas import parse_formula, print_formula
from src.syntax.graphs import parse_graph, print_graph

router = APIRouter(prefix="/api/v1", tags=["proofs"])
run_service = RunService()


@router.post("/translate", response_model=TranslationOutput)
async def translate_graph(graph_input: GraphInput) -> TranslationOutput:
    """Read a graph as a formula."""
    try:
        graph = parse_graph(graph_input.graph)
    except KernelError as e:
        raise HTTPException(status_code=400, detail=str(e))
    return TranslationOutput(graph=print_graph(graph), formula=print_formula(translate(graph)))


@router.post("/embed", response_model=TranslationOutput)
async def embed_formula(formula_input: FormulaInput) -> TranslationOutput:
    try:
        formula = parse_formula(formula_input.formula)
    except KernelError as e:
        raise HTTPException(status_code=400, detail=str(e))
    return TranslationOutput(graph=print_graph(embed(formula)), formula=print_formula(formula))


@router.post("/oracle", response_model=OracleReport)
async def run_oracle(oracle_input: OracleInput) -> OracleReport:
    """
    Decide validity in CPC or IPC.

    Invalid IPC formulas come with a Kripke countermodel when one is found.
    """
    try:
        return oracle_report(parse_logic(oracle_input.logic), parse_formula(oracle_input.formula))
    except KernelError as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.post("/check", response_model=ProofRun, status_code=201)
async def check_script(script_input: ScriptInput, db: Session = Depends(get_db)) -> ProofRun:
    """Check every theorem of a script and store the run."""
    try:
        return run_service.check_script(script_input, db)
    except KernelError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=str(e))


@router.post("/corpus/runs", response_model=ProofRun, status_code=201)
async def run_corpus(nd: bool = True, db: Session = Depends(get_db)) -> ProofRun:
    try:
        return run_service.run_corpus(db, nd=nd)
    except Exception as e:
        raise HTTPException(status_code=500, detail=str(e))


@router.get("/runs", response_model=List[ProofRun])
async def list_runs(kind: Optional[str] = None, db: Session = Depends(get_db)) -> List[ProofRun]:
    return run_service.list_runs(db, kind)


@router.get("/runs/{run_id}", response_model=ProofRun)
async def get_run(run_id: str, db: Session = Depends(get_db)) -> ProofRun:
    try:
        return run_service.get_run(run_id, db)
    except ValueError as e:
        raise HTTPException(status_code=404, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=str(e))
