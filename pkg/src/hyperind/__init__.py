"""Independent sets in (r+1)-uniform hypergraphs with bounded r-degree."""

from importlib import resources
import json

__version__ = "0.1.0"


def report_schema() -> dict:
    """JSON schema of the pipeline report (``report_v1``)."""
    return json.loads((resources.files("hyperind") / "data" / "report_v1.schema.json").read_text())
