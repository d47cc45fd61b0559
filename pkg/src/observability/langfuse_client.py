"""Langfuse client for tracing kernel runs."""
import sys
from typing import Optional

from langfuse import Langfuse

from src.config import get_settings


class LangfuseClient:
    """Lazily created, process-wide Langfuse client.

    Tracing is optional: without keys the client stays disabled and every
    tracing helper becomes a no-op.
    """

    _instance: Optional[Langfuse] = None
    _enabled: bool = True

    @classmethod
    def get_client(cls) -> Optional[Langfuse]:
        if not cls._enabled:
            return None
        if cls._instance is None:
            settings = get_settings()
            if not settings.langfuse_public_key or not settings.langfuse_secret_key:
                print(
                    "[WARNING] Langfuse not configured. Set LANGFUSE_PUBLIC_KEY and LANGFUSE_SECRET_KEY.",
                    file=sys.stderr,
                )
                cls._enabled = False
                return None
            try:
                cls._instance = Langfuse(
                    public_key=settings.langfuse_public_key,
                    secret_key=settings.langfuse_secret_key,
                    host=settings.langfuse_host,
                )
                print(f"[INFO] Langfuse client initialized: {settings.langfuse_host}", file=sys.stderr)
            except Exception as e:
                print(f"[WARNING] Failed to initialize Langfuse: {e}", file=sys.stderr)
                cls._enabled = False
                return None
        return cls._instance

    @classmethod
    def disable(cls) -> None:
        cls._enabled = False

    @classmethod
    def enable(cls) -> None:
        cls._enabled = True

    @classmethod
    def is_enabled(cls) -> bool:
        return cls._enabled and (cls._instance is not None or cls.get_client() is not None)


def get_langfuse() -> Optional[Langfuse]:
    return LangfuseClient.get_client()
