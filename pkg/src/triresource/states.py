"""Three-qubit pure states: explicit amplitudes, boundary families, Haar sampling, file I/O."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from triresource.config import DEFAULT_TOLERANCES
from triresource.errors import DegenerateStateError, NormalizationError, ParameterRangeError

RNG_ALGORITHM = "PCG64/box-muller"
CONVENTION = "A-msb"
DRAWS_PER_STATE = 16
_U53 = 2.0**-53


@dataclass(frozen=True, eq=False)
class PureState3:
    """Normalized three-qubit pure state.

    ``amplitudes[4*a + 2*b + c]`` is the coefficient of ``|abc>``. The array is
    read-only. ``norm_factor`` is the factor that was applied to the raw input
    to normalize it (1.0 for inputs that were already normalized).
    """

    amplitudes: np.ndarray
    norm_factor: float = 1.0
    label: str = field(default="", compare=False)

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape != (8,):
            raise ValueError(f"expected 8 amplitudes, got {amps.size}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        deviation = abs(float(np.vdot(amps, amps).real) - 1.0)
        if deviation > DEFAULT_TOLERANCES.structural:
            raise NormalizationError(deviation)
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def __eq__(self, other):
        if not isinstance(other, PureState3):
            return NotImplemented
        return bool(np.array_equal(self.amplitudes, other.amplitudes))

    def __hash__(self):
        return hash(self.amplitudes.tobytes())

    def __repr__(self):
        return f"PureState3({self.label or np.round(self.amplitudes, 6).tolist()})"

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(2, 2, 2)


def make_state(amplitudes: Sequence[complex], label: str = "") -> PureState3:
    """Normalize eight amplitudes into a :class:`PureState3`."""
    amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
    if amps.shape != (8,):
        raise ValueError(f"expected 8 amplitudes, got {amps.size}")
    if not np.all(np.isfinite(amps)):
        raise ValueError("amplitudes must be finite")
    norm = float(np.linalg.norm(amps))
    if norm == 0.0:
        raise DegenerateStateError("cannot normalize the all-zero vector")
    if norm == 1.0:
        return PureState3(amps, 1.0, label)
    return PureState3(amps / norm, 1.0 / norm, label)


def _basis(pairs: dict[int, float], label: str) -> PureState3:
    amps = np.zeros(8, dtype=complex)
    for index, value in pairs.items():
        amps[index] = value
    return PureState3(amps, 1.0, label)


def psi_alpha(alpha: float) -> PureState3:
    """Generalized GHZ state ``cos(alpha)|000> + sin(alpha)|111>``."""
    return _basis({0: math.cos(alpha), 7: math.sin(alpha)}, f"alpha={alpha!r}")


def psi_m(m: float) -> PureState3:
    """``(|000> + m(|010> + |101>) + |111>) / sqrt(2 + 2 m^2)`` for m in [0, 1].

    GHZ at ``m = 0``, W class at ``m = 1``.
    """
    if not 0.0 <= m <= 1.0:
        raise ParameterRangeError(f"m must lie in [0, 1], got {m!r}")
    n = 1.0 / math.sqrt(2.0 + 2.0 * m * m)
    return _basis({0: n, 2: m * n, 5: m * n, 7: n}, f"m={m!r}")


def psi_theta(theta: float) -> PureState3:
    """Biseparable ``cos(theta)|001> + sin(theta)|100>``: qubit B is |0>, AC carries the entanglement."""
    return _basis({1: math.cos(theta), 4: math.sin(theta)}, f"theta={theta!r}")


GHZ = psi_alpha(math.pi / 4)


# --- Haar sampling -----------------------------------------------------------


@dataclass(frozen=True)
class SamplerConfig:
    seed: int
    count: int

    def __post_init__(self):
        if isinstance(self.count, bool) or not isinstance(self.count, (int, np.integer)):
            raise TypeError("count must be an integer")
        if self.count < 1:
            raise ParameterRangeError(f"count must be >= 1, got {self.count}")
        if not 0 <= self.seed < 2**64:
            raise ParameterRangeError("seed must be an unsigned 64-bit integer")


def _bit_generator(seed: int, start: int) -> np.random.PCG64:
    bg = np.random.PCG64(seed)
    if start:
        bg.advance(DRAWS_PER_STATE * start)
    return bg


def _box_muller(raw: np.ndarray) -> np.ndarray:
    """Map pairs of raw 64-bit words to complex standard normals.

    Each amplitude takes two words: ``u1 in (0, 1]`` sets the modulus
    ``sqrt(-2 ln u1)``, ``u2 in [0, 1)`` the phase ``2 pi u2``. Real and imaginary
    parts are then independent N(0, 1) variates.
    """
    raw = raw.reshape(-1, 8, 2)
    u1 = ((raw[..., 0] >> np.uint64(11)).astype(np.float64) + 1.0) * _U53
    u2 = (raw[..., 1] >> np.uint64(11)).astype(np.float64) * _U53
    r = np.sqrt(-2.0 * np.log(u1))
    phase = 2.0 * np.pi * u2
    return r * np.cos(phase) + 1j * (r * np.sin(phase))


def haar_amplitudes(seed: int, start: int, count: int) -> np.ndarray:
    """Haar-random states ``start .. start+count-1`` of the stream for ``seed``.

    Returns a (count, 8) complex array of normalized rows. State ``k`` always
    consumes raw draws ``16k .. 16k+15`` of PCG64(seed), so any slice of the
    stream can be produced independently (workers own disjoint slices).
    """
    if count == 0:
        return np.empty((0, 8), dtype=complex)
    raw = _bit_generator(seed, start).random_raw(DRAWS_PER_STATE * count)
    amps = _box_muller(raw)
    norms = np.linalg.norm(amps, axis=1)
    for row in np.flatnonzero(norms == 0.0):
        amps[row], norms[row] = _resample(seed, start + int(row))
    return amps / norms[:, None]


def _resample(seed: int, index: int) -> tuple[np.ndarray, float]:
    # measure-zero event; redraw from a side stream keyed by (seed, index)
    bg = np.random.PCG64(np.random.SeedSequence([seed, index]))
    while True:
        amps = _box_muller(bg.random_raw(DRAWS_PER_STATE))[0]
        norm = float(np.linalg.norm(amps))
        if norm > 0.0:
            return amps, norm


def haar_sample(config: SamplerConfig, chunk: int = 4096) -> Iterator[PureState3]:
    """Stream ``config.count`` Haar-random states, reproducible per seed."""
    for start in range(0, config.count, chunk):
        block = haar_amplitudes(config.seed, start, min(chunk, config.count - start))
        for offset, amps in enumerate(block):
            yield PureState3(amps, 1.0, f"haar[{config.seed}:{start + offset}]")


# --- file formats -------------------------------------------------------------


def state_to_json(state: PureState3) -> str:
    body = {"convention": CONVENTION, "amplitudes": [[float(z.real), float(z.imag)] for z in state.amplitudes]}
    return json.dumps(body)


def state_to_text(state: PureState3) -> str:
    return "".join(f"{float(z.real)!r} {float(z.imag)!r}\n" for z in state.amplitudes)


def _from_pairs(pairs) -> PureState3:
    if len(pairs) != 8 or any(len(p) != 2 for p in pairs):
        raise ValueError("expected 8 [re, im] pairs")
    amps = np.array([complex(float(re), float(im)) for re, im in pairs])
    deviation = abs(float(np.vdot(amps, amps).real) - 1.0)
    if deviation <= DEFAULT_TOLERANCES.structural:
        # keep the stored bits untouched so that write/read round-trips exactly
        return PureState3(amps)
    return make_state(amps)


def parse_state(text: str) -> PureState3:
    """Parse either the JSON or the 8-line ``re im`` text format."""
    stripped = text.strip()
    if stripped.startswith("{"):
        data = json.loads(stripped)
        if not isinstance(data, dict) or "amplitudes" not in data:
            raise ValueError("state JSON needs an 'amplitudes' field")
        convention = data.get("convention", CONVENTION)
        if convention != CONVENTION:
            raise ValueError(f"unsupported convention {convention!r}")
        return _from_pairs(data["amplitudes"])
    lines = [line.split() for line in stripped.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    return _from_pairs(lines)


def read_state(path: str | Path) -> PureState3:
    return parse_state(Path(path).read_text())


def write_state(state: PureState3, path: str | Path, fmt: str | None = None) -> None:
    path = Path(path)
    fmt = fmt or ("json" if path.suffix.lower() == ".json" else "text")
    text = state_to_json(state) + "\n" if fmt == "json" else state_to_text(state)
    path.write_text(text)
