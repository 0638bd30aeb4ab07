"""Run manifests: what was run, on which inputs, with which settings."""
import hashlib
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field

from genotype_data.serialization import write_json

MANIFEST_NAME = "manifest.json"


class RunManifest(BaseModel):
    """Record written once into every run directory."""
    subcommand: str
    configuration: Dict[str, Any]
    input_digests: Dict[str, str] = Field(default_factory=dict)
    tool_version: str
    seed: Optional[int] = None
    duration_seconds: float = 0.0


def file_digest(path) -> str:
    """SHA-256 of a file's bytes."""
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for block in iter(lambda: f.read(1 << 20), b""):
            digest.update(block)
    return digest.hexdigest()


def input_digests(paths: Dict[str, Optional[str]]) -> Dict[str, str]:
    """Digest every input given on the command line, keyed by option name."""
    return {name: file_digest(path) for name, path in sorted(paths.items()) if path}


def prepare_run_directory(out_dir) -> Path:
    """Create the run directory; refuse one that already holds a run.

    Raises:
        ValueError: If ``out_dir`` already contains a manifest
    """
    out_dir = Path(out_dir)
    if (out_dir / MANIFEST_NAME).exists():
        raise ValueError(f"{out_dir} already contains a run; choose a new --out-dir")
    out_dir.mkdir(parents=True, exist_ok=True)
    return out_dir


def write_manifest(manifest: RunManifest, out_dir) -> Path:
    return write_json(manifest.model_dump(), Path(out_dir) / MANIFEST_NAME)
