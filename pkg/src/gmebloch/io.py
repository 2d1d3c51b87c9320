"""State files and machine-readable reports.

State file schema::

    {"kind": "density" | "pure", "d": <int>, "label": <string, optional>,
     "data": <nested [re, im] arrays>}
"""
from dataclasses import dataclass, field, asdict
import csv
import io
import json

import numpy as np

from . import __version__
from .bloch import DensityMatrix
from .criteria import CriterionReport
from .errors import InvalidStateError
from .states import PureState

KINDS = ("density", "pure")


class StateFileError(ValueError):
    """The file is unreadable or does not follow the schema."""


def _to_pairs(a):
    a = np.asarray(a, dtype=complex)
    return np.stack([a.real, a.imag], axis=-1).tolist()


def _from_pairs(data, shape):
    arr = np.asarray(data, dtype=float)
    if arr.shape != shape + (2,):
        raise InvalidStateError("shape", f"payload shape {arr.shape[:-1] if arr.ndim else ()} "
                                         f"does not match expected {shape}")
    return arr[..., 0] + 1j * arr[..., 1]


@dataclass
class StateFile:
    kind: str
    d: int
    data: list
    label: str = None

    def to_json(self):
        doc = {"kind": self.kind, "d": self.d}
        if self.label is not None:
            doc["label"] = self.label
        doc["data"] = self.data
        return json.dumps(doc)

    @classmethod
    def from_state(cls, state, label=None):
        if isinstance(state, PureState):
            return cls("pure", state.d, _to_pairs(state.amplitudes), label)
        return cls("density", state.d, _to_pairs(state.matrix), label)

    @classmethod
    def parse(cls, text):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise StateFileError(f"not valid JSON: {exc}") from None
        if not isinstance(doc, dict):
            raise StateFileError("top level must be a JSON object")
        for key in ("kind", "d", "data"):
            if key not in doc:
                raise StateFileError(f"missing field {key!r}")
        if doc["kind"] not in KINDS:
            raise StateFileError(f"kind must be one of {KINDS}, got {doc['kind']!r}")
        if not isinstance(doc["d"], int) or isinstance(doc["d"], bool) or doc["d"] < 2:
            raise StateFileError(f"d must be an integer >= 2, got {doc['d']!r}")
        label = doc.get("label")
        if label is not None and not isinstance(label, str):
            raise StateFileError("label must be a string")
        return cls(doc["kind"], doc["d"], doc["data"], label)

    @classmethod
    def load(cls, path):
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise StateFileError(f"cannot read {path}: {exc.strerror}") from None
        return cls.parse(text)

    def state(self, tol=None):
        """Validated PureState or DensityMatrix."""
        dim = self.d**3
        if self.kind == "pure":
            return PureState(self.d, _from_pairs(self.data, (dim,)))
        return DensityMatrix(self.d, _from_pairs(self.data, (dim, dim)), tol=tol)


@dataclass
class Report:
    input: dict
    criterion: CriterionReport
    version: str = __version__
    wall_time: float = None
    seeds: list = field(default_factory=list)

    def as_dict(self, meta=True):
        out = {"input": self.input, **self.criterion.as_dict(),
               "version": self.version, "seeds": list(self.seeds)}
        if meta:
            out["wall_time"] = self.wall_time
        return out

    def to_json(self, meta=True):
        return json.dumps(self.as_dict(meta), indent=2)

    @classmethod
    def from_json(cls, text):
        doc = json.loads(text)
        crit = CriterionReport.from_dict(doc)
        return cls(doc["input"], crit, doc["version"], doc.get("wall_time"), doc["seeds"])

    def flat(self):
        """Single-level mapping for CSV output."""
        row = {f"input_{k}": v for k, v in self.input.items()}
        c = self.criterion
        row["d"] = c.d
        row.update({f"norm_{k}": v for k, v in c.norms.items()})
        row["t_value"] = c.t_value
        row.update({f"bound_{k}": v for k, v in asdict(c.bounds).items() if k != "d"})
        row.update(c.verdicts)
        row.update({f"margin_{k}": v for k, v in c.margins.items()})
        return row


def rows_to_csv(rows, comments=()):
    buf = io.StringIO()
    for line in comments:
        buf.write(f"# {line}\n")
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in row.items()})
    return buf.getvalue()
