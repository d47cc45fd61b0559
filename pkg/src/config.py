"""Runtime configuration, read from the environment and .env."""
from functools import lru_cache
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv
from pydantic import AliasChoices, Field
from pydantic_settings import BaseSettings, SettingsConfigDict

PROJECT_ROOT = Path(__file__).resolve().parent.parent

# The Langfuse SDK reads LANGFUSE_* from the process environment, not from Settings.
load_dotenv()


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="ALFA_", env_file=".env", extra="ignore")

    database_url: str = Field(
        "sqlite:///./data/alfa_graphs.db",
        validation_alias=AliasChoices("ALFA_DATABASE_URL", "DATABASE_URL"),
    )
    corpus_dir: Path = PROJECT_ROOT / "corpus"

    search_max_steps: int = 6
    search_max_graph_size: int = 10
    search_max_branch: int = 32

    fuzz_iterations: int = 1000
    fuzz_max_atoms: int = 3
    fuzz_max_depth: int = 3

    kripke_max_worlds: int = 6
    kripke_trials: int = 2000

    langfuse_public_key: Optional[str] = Field(None, validation_alias="LANGFUSE_PUBLIC_KEY")
    langfuse_secret_key: Optional[str] = Field(None, validation_alias="LANGFUSE_SECRET_KEY")
    langfuse_host: str = Field("http://localhost:3000", validation_alias="LANGFUSE_HOST")


@lru_cache
def get_settings() -> Settings:
    return Settings()
