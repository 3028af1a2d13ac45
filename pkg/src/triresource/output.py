"""Run metadata, number formatting and CSV serialization."""
from __future__ import annotations

import datetime as _dt
import io
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from triresource import kernels
from triresource.config import DEFAULT_TOLERANCES
from triresource.kernels import COLUMNS
from triresource.states import RNG_ALGORITHM

SAMPLE_COLUMNS = COLUMNS[:12]
SAMPLE_HEADER = "index," + ",".join(SAMPLE_COLUMNS)


def fmt(x) -> str:
    """Shortest decimal that round-trips to the same double (at most 17 significant digits)."""
    return repr(float(x))


@dataclass(frozen=True)
class RunMetadata:
    seed: int | None
    n_samples: int
    rng_algorithm: str = RNG_ALGORITHM
    tolerances: dict = field(default_factory=DEFAULT_TOLERANCES.as_dict)
    tool_version: str = ""
    timestamp: str | None = None
    # compiled and numpy kernels can differ in the last bit, so artifacts name theirs
    kernel_backend: str = ""

    def __post_init__(self):
        if not self.tool_version:
            from triresource import __version__

            object.__setattr__(self, "tool_version", __version__)
        if not self.kernel_backend:
            object.__setattr__(self, "kernel_backend", kernels.BACKEND)

    @classmethod
    def now(cls, **kwargs) -> "RunMetadata":
        stamp = _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0).isoformat()
        return cls(timestamp=stamp, **kwargs)

    def to_dict(self) -> dict:
        return asdict(self)

    def comment_lines(self) -> list[str]:
        tols = " ".join(f"{k}={v!r}" for k, v in self.tolerances.items())
        lines = [
            f"# tool_version: {self.tool_version}",
            f"# rng_algorithm: {self.rng_algorithm}",
            f"# seed: {self.seed}",
            f"# n_samples: {self.n_samples}",
            f"# tolerances: {tols}",
            f"# kernel_backend: {self.kernel_backend}",
        ]
        if self.timestamp:
            lines.append(f"# timestamp: {self.timestamp}")
        return lines


def write_csv(path, header: str, rows: np.ndarray, metadata: RunMetadata, extra_comments=(), start: int = 0) -> None:
    """Write ``#`` comments, the header, then ``index,<values...>`` rows with LF endings."""
    buf = io.StringIO()
    for line in [*metadata.comment_lines(), *extra_comments]:
        buf.write(line + "\n")
    buf.write(header + "\n")
    for i, row in enumerate(rows):
        buf.write(str(start + i))
        for value in row:
            buf.write("," + fmt(value))
        buf.write("\n")
    Path(path).write_bytes(buf.getvalue().encode())


def read_csv(path) -> tuple[dict[str, str], list[str], np.ndarray]:
    """Return ``(comments, header, values)``; ``values`` includes the index column."""
    comments, header, rows = {}, None, []
    with open(path) as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                key, _, value = line[1:].partition(":")
                comments[key.strip()] = value.strip()
            elif header is None:
                header = line.split(",")
            elif line:
                rows.append([float(v) for v in line.split(",")])
    if header is None:
        raise ValueError(f"{path}: no header line")
    values = np.array(rows, dtype=float).reshape(-1, len(header))
    return comments, header, values
