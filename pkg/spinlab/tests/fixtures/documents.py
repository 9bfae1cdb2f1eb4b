"""
Geometry documents used by the file-based tests.

"""
import json
from pathlib import Path

from spinlab.catalog import stiefel_v2r4, stiefel_v2r5
from spinlab.geometry import to_document


FIXTURES = Path(__file__).parent
GOLDENS = FIXTURES.parent / "goldens"

BIANCHI_COUNTEREXAMPLE = FIXTURES / "bianchi_counterexample.json"


def stiefel_with_scalars(k: int, scal_g_min: str, t_norm2: str, mu2_list: list) -> dict:
    """
    A Stiefel document carrying externally normalized scalars.

    """
    document = to_document(stiefel_v2r4() if k == 4 else stiefel_v2r5())
    document["name"] = f"stiefel_v2r{k}_external"
    document["scalars"] = dict(
        scal_g_min=scal_g_min,
        t_norm2=t_norm2,
        mu2_list=mu2_list,
        provenance="external normalization",
    )
    return document


def m5_document() -> dict:
    return stiefel_with_scalars(4, "36/5", "8/5", [4])


def m7_document() -> dict:
    return stiefel_with_scalars(5, "54/7", "4/7", [4])


def write_document(path: Path, document) -> Path:
    with open(path, "w", encoding="utf-8") as fp:
        json.dump(document, fp, ensure_ascii=False)
    return path
