"""Langfuse tracing for proof runs, searches and fuzzing."""
from src.observability.langfuse_client import LangfuseClient, get_langfuse
from src.observability.tracing import create_span, create_trace, flush_langfuse, log_score, trace_operation

__all__ = [
    "LangfuseClient",
    "create_span",
    "create_trace",
    "flush_langfuse",
    "get_langfuse",
    "log_score",
    "trace_operation",
]
