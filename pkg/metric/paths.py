"""
Unit-speed vertex paths and loops
"""
from dataclasses import dataclass, field
from typing import Any, List, Optional, Sequence, Tuple

from graphs.errors import MalformedInputError

SEGMENT = "segment"
LOOP = "loop"


@dataclass(frozen=True)
class PathRecord:
    """
    A finite path; the parameter of vertex i is exactly i.

    Loops repeat their first vertex at the end, so ``length`` is the number
    of edges in both cases.
    """

    vertices: Tuple[Any, ...]
    kind: str = SEGMENT
    certificate: Optional[Any] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if self.kind not in (SEGMENT, LOOP):
            raise MalformedInputError(f"unknown path kind {self.kind!r}")
        if not self.vertices:
            raise MalformedInputError("a path needs at least one vertex")
        if self.kind == LOOP and (len(self.vertices) < 2 or self.vertices[0] != self.vertices[-1]):
            raise MalformedInputError("a loop must end at its first vertex")

    @classmethod
    def loop(cls, cycle: Sequence[Any]) -> "PathRecord":
        """Close a vertex cycle given without the repeated endpoint."""
        cycle = tuple(cycle)
        if cycle and cycle[0] == cycle[-1] and len(cycle) > 1:
            return cls(cycle, LOOP)
        return cls(cycle + cycle[:1], LOOP)

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def start(self) -> Any:
        return self.vertices[0]

    @property
    def end(self) -> Any:
        return self.vertices[-1]

    @property
    def cycle(self) -> Tuple[Any, ...]:
        """Loop positions without the closing repeat."""
        return self.vertices[:-1] if self.kind == LOOP else self.vertices

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __getitem__(self, i):
        return self.vertices[i]

    def reversed(self) -> "PathRecord":
        return PathRecord(tuple(reversed(self.vertices)), self.kind)

    def concat(self, other: "PathRecord") -> "PathRecord":
        """Join two segments sharing an endpoint; the shared vertex appears once."""
        if self.end != other.start:
            raise MalformedInputError(f"cannot concatenate: {self.end!r} != {other.start!r}")
        return PathRecord(self.vertices + other.vertices[1:])

    def subpath(self, i: int, j: int) -> "PathRecord":
        """Vertices i..j inclusive."""
        if not 0 <= i <= j < len(self.vertices):
            raise MalformedInputError(f"bad subpath bounds [{i}, {j}] for length {self.length}")
        return PathRecord(self.vertices[i:j + 1])

    def is_simple(self) -> bool:
        return len(set(self.cycle)) == len(self.cycle)

    def validate(self, oracle) -> "PathRecord":
        """Raise if consecutive vertices are not adjacent under the oracle."""
        for a, b in zip(self.vertices, self.vertices[1:]):
            if b not in oracle.neighbors(a):
                raise MalformedInputError(f"path step {a!r} -> {b!r} is not an edge of {oracle.family}")
        return self

    def with_certificate(self, certificate: Any) -> "PathRecord":
        return PathRecord(self.vertices, self.kind, certificate)

    def to_json(self) -> List[Any]:
        return [list(v) if isinstance(v, tuple) else v for v in self.vertices]


def join_paths(*parts: PathRecord) -> PathRecord:
    out = parts[0]
    for p in parts[1:]:
        out = out.concat(p)
    return out
