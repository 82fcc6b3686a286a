import os
from dotenv import load_dotenv

load_dotenv()

PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), "../.."))
DATA_DIR = os.path.join(PROJECT_ROOT, "data")


def default_thread_count() -> int:
    """Worker count for radial-row and particle parallelism (OAM_SPDC_THREADS)."""
    raw = os.getenv("OAM_SPDC_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def log_dir() -> str:
    return os.getenv("OAM_SPDC_LOG_DIR", os.path.join(PROJECT_ROOT, "logs"))
