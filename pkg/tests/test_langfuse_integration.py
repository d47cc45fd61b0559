"""Tests for Langfuse integration."""
import sys
import os

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.models.lemma import LemmaDb
from src.models.proof import SystemId
from src.observability.langfuse_client import LangfuseClient, get_langfuse
from src.observability.tracing import create_span, create_trace, log_score, trace_operation
from src.services.search import SearchBudget, prove
from src.services.workflow import ProofWorkflow
from src.syntax.graphs import parse_graph

SCRIPTS = [
    ("first.gpf", "system ALFAO\ntheorem swap\nfrom: a b\n  step R2 => a\nqed\n"),
    (
        "second.gpf",
        "system ALFAO\ntheorem uses_swap\nfrom: p q\n  lemma swap => p\nqed\n"
        "theorem wrong\nfrom: p\n  step R2 => q\nqed\n",
    ),
]


def test_langfuse_client_initialization():
    """Client initializes when keys are set and stays disabled otherwise."""
    client = get_langfuse()

    if client:
        print("\n[PASS] Langfuse client initialized successfully")
        print(f"  Langfuse enabled: {LangfuseClient.is_enabled()}")
    else:
        assert not LangfuseClient.is_enabled()
        print("\n[INFO] Langfuse not configured (this is OK for local testing)")


def test_workflow_with_tracing():
    """Theorems of earlier scripts become lemmas of later ones."""
    result = ProofWorkflow().run(SCRIPTS, certify=True, expand=True, run_id="test_run_001")

    assert result["ok"] is False
    first, second = result["reports"]
    assert first.path == "first.gpf"
    assert [v.accepted for v in second.theorems] == [True, False]
    assert second.theorems[0].certified is True
    assert second.theorems[0].expanded is True
    assert second.theorems[1].certified is None
    assert "swap" in result["db"] and "uses_swap" in result["db"]
    assert "wrong" not in result["db"]

    if LangfuseClient.is_enabled():
        assert result.get("trace_id") is not None
        print(f"\n[PASS] Workflow executed with tracing: {result.get('trace_id')}")
    else:
        assert result.get("trace_id") is None
        print("\n[PASS] Workflow executed without tracing (Langfuse not configured)")


def test_disabled_langfuse():
    """Test that system works correctly when Langfuse is disabled."""
    original_state = LangfuseClient.is_enabled()
    LangfuseClient.disable()

    try:
        assert get_langfuse() is None
        assert create_trace("proof_check") is None
        assert create_span("t", "check_theorems") is None
        log_score("t", "accepted_ratio", 1.0)

        result = ProofWorkflow().run(SCRIPTS[:1], db=LemmaDb())
        assert result["ok"] is True
        assert result.get("trace_id") is None

        derivation = prove(SystemId.ALFAO, LemmaDb(), parse_graph("a b"), parse_graph("a"), SearchBudget(max_steps=1))
        assert derivation is not None

        print("\n[PASS] Workflow works correctly with Langfuse disabled")

    finally:
        if original_state:
            LangfuseClient.enable()


def test_trace_operation_preserves_the_wrapped_function():
    @trace_operation("double")
    def double(x: int) -> int:
        """Twice x."""
        return 2 * x

    assert double(4) == 8
    assert double.__name__ == "double"
    assert double.__doc__ == "Twice x."
