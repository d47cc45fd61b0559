"""Main FastAPI application."""
from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from src.api.proofs import router as proofs_router
from src.models.database import init_db

init_db()

app = FastAPI(
    title="Alfa Graphs",
    description="Proof kernel for existential graphs over classical and intuitionistic logic",
    version="0.1.0",
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(proofs_router)


@app.get("/")
async def root():
    return {
        "name": "Alfa Graphs",
        "version": "0.1.0",
        "systems": ["ALFAO", "ALFA_I", "ALFA_IO", "ALFA_IO_CLASSIC"],
    }


@app.get("/health")
async def health():
    """Health check endpoint."""
    return {"status": "healthy"}
