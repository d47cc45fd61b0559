"""Tracing helpers: traces per run, spans per workflow node, scores per verdict."""
import sys
from functools import wraps
from typing import Any, Callable, Dict, Optional

from langfuse.decorators import langfuse_context, observe

from src.observability.langfuse_client import get_langfuse


def _warn(what: str, error: Exception) -> None:
    print(f"[WARNING] Failed to {what}: {error}", file=sys.stderr)


def trace_operation(name: str):
    """Decorator tracing a kernel operation (search, fuzz) when Langfuse is configured.

    Usage:
        @trace_operation("search")
        def prove(system, db, source, target, budget=None): ...
    """

    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args, **kwargs):
            if get_langfuse() is None:
                return func(*args, **kwargs)
            metadata = {"operation": name}

            @observe(name=name)
            def observed(*inner_args, **inner_kwargs):
                try:
                    langfuse_context.update_current_observation(metadata=metadata)
                except Exception as e:
                    _warn("attach Langfuse metadata", e)
                return func(*inner_args, **inner_kwargs)

            return observed(*args, **kwargs)

        return wrapper

    return decorator


def create_trace(name: str, run_id: Optional[str] = None, metadata: Optional[Dict[str, Any]] = None):
    langfuse = get_langfuse()
    if langfuse is None:
        return None
    trace_metadata = dict(metadata or {})
    if run_id:
        trace_metadata["run_id"] = run_id
    try:
        return langfuse.trace(name=name, metadata=trace_metadata)
    except Exception as e:
        _warn("create Langfuse trace", e)
        return None


def create_span(
    trace_id: str,
    name: str,
    input_data: Optional[Dict[str, Any]] = None,
    metadata: Optional[Dict[str, Any]] = None,
):
    langfuse = get_langfuse()
    if langfuse is None:
        return None
    try:
        return langfuse.span(trace_id=trace_id, name=name, input=input_data, metadata=metadata)
    except Exception as e:
        _warn("create Langfuse span", e)
        return None


def log_score(trace_id: str, name: str, value: float, comment: Optional[str] = None) -> None:
    """Attach a score, e.g. the share of accepted theorems in a corpus run."""
    langfuse = get_langfuse()
    if langfuse is None:
        return
    try:
        langfuse.score(trace_id=trace_id, name=name, value=value, comment=comment)
    except Exception as e:
        _warn("log Langfuse score", e)


def flush_langfuse() -> None:
    langfuse = get_langfuse()
    if langfuse:
        try:
            langfuse.flush()
        except Exception as e:
            _warn("flush Langfuse", e)
