"""Reading tables, run configuration and result serialization."""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .distributions import JointTable, PairedSample
from .inference import DEFAULT_ALPHA, DEFAULT_EPS, DirectionScore

SCORE_KEYS = (
    "direction", "l_xy_bits", "l_yx_bits", "delta_bits", "confidence",
    "dependent", "n", "k_x", "k_y", "codec",
)
ENV_SEED = "MDLCAUSA_SEED"
ENV_FORMAT = "MDLCAUSA_FORMAT"


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class Dataset:
    """A categorical table; ``labels[i][code]`` is the original value of column ``i``."""

    names: tuple
    sample: PairedSample
    labels: tuple

    def column(self, ref: str) -> int:
        """Index of a column given its name or its 0-based position."""
        if ref in self.names:
            return self.names.index(ref)
        try:
            i = int(ref)
        except ValueError:
            raise KeyError(f"unknown column {ref!r}; available: {', '.join(self.names)}") from None
        if not 0 <= i < len(self.names):
            raise KeyError(f"column index {i} out of range 0..{len(self.names) - 1}")
        return i


@dataclass(frozen=True)
class RunConfig:
    codec: str = "crude"
    eps: float = DEFAULT_EPS
    alpha: float = DEFAULT_ALPHA
    gate: bool = True
    seed: int = 0
    format: str = "json"

    @classmethod
    def from_env(cls, env=None, **overrides) -> "RunConfig":
        """Defaults, then environment variables, then explicit ``overrides``."""
        env = os.environ if env is None else env
        base = {}
        if env.get(ENV_SEED):
            base["seed"] = int(env[ENV_SEED])
        if env.get(ENV_FORMAT):
            base["format"] = env[ENV_FORMAT]
        base.update({k: v for k, v in overrides.items() if v is not None})
        cfg = cls(**base)
        if cfg.format not in ("json", "csv"):
            raise ValueError(f"format must be json or csv, got {cfg.format!r}")
        return cfg


def _sniff(first_line: str) -> str:
    return "\t" if "\t" in first_line else ","


def load_table(path, delimiter: str | None = None, has_header: bool = True) -> Dataset:
    """Read a CSV/TSV file and code each column by first appearance.

    The delimiter is a tab if the first line contains one and a comma
    otherwise, unless given explicitly.
    """
    text = Path(path).read_text()
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ParseError(f"{path}: file is empty")
    delim = delimiter or _sniff(lines[0])
    records = list(csv.reader(lines, delimiter=delim))
    width = len(records[0])
    if has_header:
        names = tuple(h.strip() for h in records[0])
        body, first_line = records[1:], 2
    else:
        names = tuple(str(i) for i in range(width))
        body, first_line = records, 1
    if not body:
        raise ParseError(f"{path}: no data rows")
    codes = [[] for _ in range(width)]
    maps = [{} for _ in range(width)]
    for lineno, rec in enumerate(body, start=first_line):
        if len(rec) != width:
            raise ParseError(f"{path}: line {lineno} has {len(rec)} fields, expected {width}")
        for j, raw in enumerate(rec):
            v = raw.strip()
            if not v:
                raise ParseError(f"{path}: line {lineno}, column {names[j]!r} is empty")
            codes[j].append(maps[j].setdefault(v, len(maps[j])))
    labels = tuple(tuple(m) for m in maps)
    s = PairedSample(tuple(np.array(c, dtype=np.int64) for c in codes), tuple(len(m) for m in maps))
    return Dataset(names, s, labels)


def load_joint(path) -> JointTable:
    """Probability matrix from a delimited file of numbers, one row per X value."""
    lines = [ln for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines:
        raise ParseError(f"{path}: file is empty")
    delim = _sniff(lines[0])
    try:
        rows = [[float(v) for v in rec] for rec in csv.reader(lines, delimiter=delim)]
    except ValueError as e:
        raise ParseError(f"{path}: {e}") from None
    if len({len(r) for r in rows}) != 1:
        raise ParseError(f"{path}: rows have different lengths")
    return JointTable(np.array(rows))


def score_record(score: DirectionScore, k_x: int, k_y: int, codec: str) -> dict:
    return {
        "direction": score.decision.value,
        "l_xy_bits": score.l_xy,
        "l_yx_bits": score.l_yx,
        "delta_bits": score.delta,
        "confidence": score.confidence,
        "dependent": score.dependent,
        "n": score.n,
        "k_x": k_x,
        "k_y": k_y,
        "codec": codec,
    }


def format_record(record: dict, fmt: str = "json") -> str:
    """One record as a JSON object or as a CSV header plus row."""
    if fmt == "json":
        return json.dumps(record)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(record.keys())
    w.writerow([_csv_value(v) for v in record.values()])
    return buf.getvalue().rstrip("\n")


def _csv_value(v):
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return repr(v)
    return v
