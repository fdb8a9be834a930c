"""Side-information graph model, problem instances and their JSON format.

A SideInfoGraph is the directed bipartite graph of n packet nodes and
m receiver nodes: receiver i demands packet f(i) and caches the packets
in X_i.  Packets and receivers are numbered from 1.  All types here are
immutable; graph surgeries return new graphs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

from .errors import IcsieError, ParseError
from .gfield import field_for

SIDE_ERROR_MODELS = ("error", "erasure")


@dataclass(frozen=True)
class SideInfoGraph:
    n: int
    m: int
    f: tuple[int, ...]                 # demand map, f[i-1] = packet wanted by receiver i
    X: tuple[frozenset[int], ...]      # cache sets, X[i-1] subset of {1..n}

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError("need at least one packet and one receiver")
        if len(self.f) != self.m or len(self.X) != self.m:
            raise ValueError("f and X must have one entry per receiver")
        for i in range(self.m):
            if not 1 <= self.f[i] <= self.n:
                raise IndexError(f"f({i + 1}) = {self.f[i]} out of range")
            bad = [j for j in self.X[i] if not 1 <= j <= self.n]
            if bad:
                raise IndexError(f"X_{i + 1} contains out-of-range packets {bad}")

    @staticmethod
    def make(n: int, f, X) -> "SideInfoGraph":
        return SideInfoGraph(n=n, m=len(f), f=tuple(f),
                             X=tuple(frozenset(s) for s in X))

    def y_set(self, i: int) -> frozenset[int]:
        """Interfering packets of receiver i: neither demanded nor cached."""
        if not 1 <= i <= self.m:
            raise IndexError(f"receiver {i} out of range")
        return frozenset(range(1, self.n + 1)) - ({self.f[i - 1]} | self.X[i - 1])

    def validate(self) -> list[str]:
        """All semantic invariants, one message per violation; empty when ok."""
        problems = []
        for i in range(1, self.m + 1):
            if self.f[i - 1] in self.X[i - 1]:
                problems.append(
                    f"demand-in-side-info: receiver {i} demands packet "
                    f"{self.f[i - 1]} which it already caches")
        demanded = set(self.f)
        for j in range(1, self.n + 1):
            if j not in demanded:
                problems.append(f"undemanded-packet: packet {j} has no receiver")
        return problems

    def is_unipartite(self) -> bool:
        return self.m == self.n and all(self.f[i] == i + 1 for i in range(self.m))

    def delete_packets(self, B) -> tuple["SideInfoGraph", dict[int, int]]:
        """Remove the packets in B (and receivers demanding them).

        Remaining packets are re-indexed densely in ascending order; the
        returned map sends old indices to new ones so sub-instance results
        stay traceable.
        """
        B = set(B)
        bad = [j for j in B if not 1 <= j <= self.n]
        if bad:
            raise IndexError(f"packets {bad} out of range")
        keep = [j for j in range(1, self.n + 1) if j not in B]
        if not keep:
            raise ValueError("cannot delete every packet")
        old_to_new = {j: k + 1 for k, j in enumerate(keep)}
        f2, X2 = [], []
        for i in range(self.m):
            if self.f[i] in B:
                continue
            f2.append(old_to_new[self.f[i]])
            X2.append(frozenset(old_to_new[j] for j in self.X[i] if j not in B))
        if not f2:
            raise ValueError("deletion removes every receiver")
        return SideInfoGraph(n=len(keep), m=len(f2), f=tuple(f2), X=tuple(X2)), old_to_new

    def delete_side_edges(self, deletions: dict[int, set[int]]) -> "SideInfoGraph":
        """Shrink cache sets: deletions maps receiver i to packets dropped from X_i."""
        X2 = list(self.X)
        for i, drop in deletions.items():
            if not 1 <= i <= self.m:
                raise IndexError(f"receiver {i} out of range")
            extra = set(drop) - self.X[i - 1]
            if extra:
                raise IndexError(f"receiver {i} does not cache {sorted(extra)}")
            X2[i - 1] = self.X[i - 1] - set(drop)
        return replace(self, X=tuple(X2))


def clique_graph(n: int) -> SideInfoGraph:
    """Unipartite clique: receiver i demands i and caches everything else."""
    return SideInfoGraph.make(
        n, range(1, n + 1),
        [frozenset(range(1, n + 1)) - {i} for i in range(1, n + 1)])


@dataclass(frozen=True)
class ProblemSpec:
    graph: SideInfoGraph
    q: int
    delta_s: int
    delta_c: int = 0
    side_error_model: str = "error"

    def __post_init__(self):
        if self.delta_s < 0 or self.delta_c < 0:
            raise ValueError("delta_s and delta_c must be nonnegative")
        if self.side_error_model not in SIDE_ERROR_MODELS:
            raise ValueError(f"unknown side_error_model {self.side_error_model!r}")
        field_for(self.q)  # raises on non-prime-power q

    @property
    def field(self):
        return field_for(self.q)

    def side_weight_cap(self) -> int:
        """Cache-weight budget for interference vectors: 2*delta_s for the
        error model, delta_s when side information is erased instead."""
        if self.side_error_model == "erasure":
            return self.delta_s
        return 2 * self.delta_s


def parse_instance(text: str) -> ProblemSpec:
    """Parse the JSON instance document; see serialize_instance for the schema."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top level must be a JSON object")

    def need(key, kind):
        if key not in doc:
            raise ParseError(f"missing field {key!r}")
        val = doc[key]
        if kind is int and (not isinstance(val, int) or isinstance(val, bool)):
            raise ParseError(f"field {key!r} must be an integer")
        if kind is list and not isinstance(val, list):
            raise ParseError(f"field {key!r} must be an array")
        return val

    n = need("n", int)
    m = need("m", int)
    q = need("q", int)
    delta_s = need("delta_s", int)
    delta_c = need("delta_c", int)
    f = need("f", list)
    X = need("X", list)
    model = doc.get("side_error_model", "error")
    if model not in SIDE_ERROR_MODELS:
        raise ParseError(f"side_error_model must be one of {SIDE_ERROR_MODELS}")
    if len(f) != m:
        raise ParseError(f"f has {len(f)} entries, expected m = {m}")
    if len(X) != m:
        raise ParseError(f"X has {len(X)} entries, expected m = {m}")
    for i, xs in enumerate(X, start=1):
        if not isinstance(xs, list):
            raise ParseError(f"X[{i}] must be an array")
        if xs != sorted(set(xs)):
            raise ParseError(f"X[{i}] must be strictly ascending")
    try:
        graph = SideInfoGraph.make(n, f, X)
        return ProblemSpec(graph=graph, q=q, delta_s=delta_s, delta_c=delta_c,
                           side_error_model=model)
    except (IcsieError, ValueError, IndexError) as exc:
        raise ParseError(str(exc)) from exc


def serialize_instance(spec: ProblemSpec) -> str:
    """Deterministic JSON rendering; parse(serialize(s)) == s."""
    g = spec.graph
    doc = {
        "n": g.n,
        "m": g.m,
        "q": spec.q,
        "delta_s": spec.delta_s,
        "delta_c": spec.delta_c,
        "side_error_model": spec.side_error_model,
        "f": list(g.f),
        "X": [sorted(s) for s in g.X],
    }
    return json.dumps(doc, indent=1)
