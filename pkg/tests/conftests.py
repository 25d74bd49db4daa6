import json
from pathlib import Path

import numpy as np

from cosetmeter.internals.codes import bicycle, five_qubit, shor9, steane
from cosetmeter.internals.gf2 import BitMatrix, rank
from cosetmeter.internals.stabilizer import (
    CssCode,
    StabilizerCode,
    css_to_stabilizer,
)

# a bicycle code small enough for brute-force enumeration (N - k <= 14)
SMALL_BICYCLE = (8, 4, 3)


def builtin_codes() -> list[StabilizerCode]:
    return [
        css_to_stabilizer(steane()),
        css_to_stabilizer(shor9()),
        five_qubit(),
        css_to_stabilizer(bicycle(*SMALL_BICYCLE)),
    ]


def builtin_css_codes() -> list[CssCode]:
    return [steane(), shor9(), bicycle(*SMALL_BICYCLE), bicycle(4, 2, 0)]


def row_equivalent(a: BitMatrix, b: BitMatrix) -> bool:
    return rank(np.vstack([a, b])) == rank(a) == rank(b)


def write_document(directory: Path, name: str, document: dict) -> Path:
    path = directory / name
    path.write_text(json.dumps(document))
    return path


HAMMING_ROWS = [
    [1, 0, 1, 0, 1, 0, 1],
    [0, 1, 1, 0, 0, 1, 1],
    [0, 0, 0, 1, 1, 1, 1],
]

STEANE_DOCUMENT = {
    "name": "steane-file",
    "n": 7,
    "k": 1,
    "format": "css",
    "hx": HAMMING_ROWS,
    "hz": HAMMING_ROWS,
}

# X and Z on the same qubit anticommute
ANTICOMMUTING_DOCUMENT = {
    "name": "anticommuting",
    "n": 2,
    "k": 0,
    "format": "stabilizer",
    "pcm": [[1, 0, 0, 0], [0, 0, 1, 0]],
}
