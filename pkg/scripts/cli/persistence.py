import logging
import os
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from typing import List, Optional

import pandas as pd
import yaml

from scripts import __version__

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.yaml"


@dataclass
class RunManifest:
    command: str
    config: dict
    seed: Optional[int] = None
    outputs: List[str] = field(default_factory=list)
    version: str = __version__
    # modification time of the config file, so reruns write identical manifests
    timestamp: Optional[str] = None

    def write(self, out_dir: str) -> str:
        path = os.path.join(out_dir, MANIFEST_NAME)
        write_yaml(asdict(self), path)
        return path


def source_timestamp(path: Optional[str]) -> Optional[str]:
    """UTC modification time of ``path``, or None for runs without a config file."""
    if not path:
        return None
    return datetime.fromtimestamp(os.path.getmtime(path), tz=timezone.utc).isoformat(timespec="seconds")


def write_table(frame: pd.DataFrame, path: str, index: bool = False) -> str:
    """CSV preceded by a pointer to the manifest that produced it."""
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(f"# manifest: {MANIFEST_NAME}\n")
        frame.to_csv(f, index=index, lineterminator="\n")
    logger.info(f"Saved {len(frame)} rows to {path}")
    return path


def read_table(path: str) -> pd.DataFrame:
    return pd.read_csv(path, comment="#")


def write_yaml(data: dict, path: str) -> str:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        yaml.safe_dump(data, f, sort_keys=False)
    logger.info(f"Saved {path}")
    return path
