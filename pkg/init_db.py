"""Create the run-store tables (proof_runs) for the HTTP API."""
from src.models.database import DATABASE_URL, init_db

if __name__ == "__main__":
    print(f"Initializing run store at {DATABASE_URL}...")
    init_db()
    print("Tables created: proof_runs")
