"""QAPLIB-format instance parsing, best-known cost registry, solution files.

An instance file is a whitespace-separated token stream: one integer n
followed by two n*n integer matrices; line breaks are insignificant.  The
first matrix is bound to the flow role, the second to the distance role (one
global convention, checked against published optima in the test suite).

All matrices are 64-bit integers; cost arithmetic everywhere is exact.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable

import numpy as np

from .errors import DomainError, IntegrityError, MalformedInstanceError, TokenParseError

log = logging.getLogger(__name__)

_TOKEN_RE = re.compile(r"\S+")


@dataclass(frozen=True)
class Instance:
    """A QAP instance: n locations/units plus flow and distance matrices."""

    name: str
    n: int
    flow: np.ndarray
    distance: np.ndarray

    def __post_init__(self):
        if self.n < 2:
            raise DomainError(f"instance {self.name!r}: n must be >= 2, got {self.n}")
        for label, m in (("flow", self.flow), ("distance", self.distance)):
            if m.shape != (self.n, self.n):
                raise DomainError(
                    f"instance {self.name!r}: {label} matrix is {m.shape}, expected {(self.n, self.n)}"
                )
            if m.dtype != np.int64:
                raise DomainError(f"instance {self.name!r}: {label} matrix must be int64")
            m.setflags(write=False)

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.name == other.name
            and self.n == other.n
            and np.array_equal(self.flow, other.flow)
            and np.array_equal(self.distance, other.distance)
        )


def _read_text(source: str | IO[str] | Path) -> str:
    if isinstance(source, Path):
        return source.read_text()
    if isinstance(source, str):
        return source
    return source.read()


def parse_instance(source: str | IO[str] | Path, name: str = "instance") -> Instance:
    """Parse a QAPLIB-format token stream into an Instance.

    Expects 1 + 2*n*n integer tokens; arbitrary whitespace/line breaks.
    """
    text = _read_text(source)
    if isinstance(source, Path) and name == "instance":
        name = source.stem
    tokens = list(_TOKEN_RE.finditer(text))
    if not tokens:
        raise MalformedInstanceError("empty instance stream", byte_offset=0)

    def to_int(match: re.Match) -> int:
        try:
            return int(match.group())
        except ValueError:
            raise TokenParseError(
                f"non-integer token {match.group()!r}", byte_offset=match.start()
            ) from None

    n = to_int(tokens[0])
    if n < 2:
        raise DomainError(f"instance size must be >= 2, got {n}")
    expected = 1 + 2 * n * n
    if len(tokens) < expected:
        raise MalformedInstanceError(
            f"expected {expected} tokens for n={n}, got {len(tokens)}",
            byte_offset=len(text),
        )
    if len(tokens) > expected:
        raise MalformedInstanceError(
            f"expected {expected} tokens for n={n}, got {len(tokens)}",
            byte_offset=tokens[expected].start(),
        )
    values = np.array([to_int(t) for t in tokens[1:]], dtype=np.int64)
    flow = values[: n * n].reshape(n, n).copy()
    distance = values[n * n :].reshape(n, n).copy()
    return Instance(name=name, n=n, flow=flow, distance=distance)


@dataclass
class BestKnownRegistry:
    """Map from instance name to best-known cost (always strictly positive)."""

    entries: dict[str, int] = field(default_factory=dict)

    def get(self, name: str) -> int | None:
        return self.entries.get(name)


def load_best_known(source: str | IO[str] | Path) -> BestKnownRegistry:
    """Load a CSV of "name,cost" lines; duplicate names last-wins with a warning."""
    text = _read_text(source)
    entries: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(",")
        if len(parts) != 2 or not parts[0].strip():
            raise TokenParseError(f"malformed registry line {raw!r}", line=lineno)
        name = parts[0].strip()
        try:
            cost = int(parts[1])
        except ValueError:
            raise TokenParseError(
                f"non-integer cost {parts[1]!r} in registry", line=lineno
            ) from None
        if cost <= 0:
            raise DomainError(
                f"best-known cost for {name!r} must be positive, got {cost} (line {lineno})"
            )
        if name in entries:
            log.warning("duplicate best-known entry for %r: keeping last value %d", name, cost)
        entries[name] = cost
    return BestKnownRegistry(entries)


@dataclass(frozen=True)
class SolutionRecord:
    """A solution to a named instance plus provenance metadata.

    The permutation is 0-based internally; files render 1-based unit numbers.
    """

    instance_name: str
    permutation: np.ndarray
    cost: int
    algorithm: str = ""
    seed: int = 0
    config_digest: str = ""


def evaluate_cost(instance: Instance, permutation: np.ndarray) -> int:
    """Independent full cost recompute: sum of flow[p_i,p_j] * distance[i,j]."""
    p = np.asarray(permutation)
    return int(np.sum(instance.flow[np.ix_(p, p)] * instance.distance, dtype=np.int64))


def write_solution(record: SolutionRecord, sink: IO[str], instance: Instance) -> None:
    """Emit "name\\nn\\ncost\\np_1 .. p_n\\n" (1-based); refuses on cost mismatch."""
    actual = evaluate_cost(instance, record.permutation)
    if actual != record.cost:
        raise IntegrityError(
            f"solution for {record.instance_name!r} claims cost {record.cost}, "
            f"re-evaluation gives {actual}"
        )
    n = len(record.permutation)
    perm_1based = " ".join(str(int(v) + 1) for v in record.permutation)
    sink.write(f"{record.instance_name}\n{n}\n{record.cost}\n{perm_1based}\n")


def read_solution(source: str | IO[str] | Path) -> SolutionRecord:
    """Parse a solution file written by write_solution."""
    lines = _read_text(source).splitlines()
    if len(lines) < 4:
        raise TokenParseError("solution file needs 4 lines", line=len(lines))
    name = lines[0].strip()
    n = int(lines[1])
    cost = int(lines[2])
    perm = np.array([int(v) - 1 for v in lines[3].split()], dtype=np.int64)
    if len(perm) != n:
        raise TokenParseError(f"permutation length {len(perm)} != n={n}", line=4)
    return SolutionRecord(instance_name=name, permutation=perm, cost=cost)


def random_instance(n: int, rng, low: int = 0, high: int = 99, name: str | None = None) -> Instance:
    """Uniform random instance with zero diagonals (entries in [low, high])."""
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    span = high - low + 1

    def matrix() -> np.ndarray:
        m = np.empty((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                m[i, j] = 0 if i == j else low + rng.randbelow(span)
        return m

    return Instance(
        name=name or f"rand{n}", n=n, flow=matrix(), distance=matrix()
    )


def write_qaplib(inst: Instance, sink: IO[str]) -> None:
    """Emit an instance in QAPLIB token format (n, flow matrix, distance matrix)."""
    sink.write(f"{inst.n}\n\n")
    for m in (inst.flow, inst.distance):
        for row in m:
            sink.write(" ".join(str(int(v)) for v in row) + "\n")
        sink.write("\n")


def iter_suite(path: Path) -> Iterable[Path]:
    """Yield instance paths listed one-per-line in a suite file."""
    for raw in path.read_text().splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            yield (path.parent / line).resolve() if not Path(line).is_absolute() else Path(line)
