"""Time-varying directed communication graphs as periodic slot schedules.

Edges are ordered pairs (j, i) meaning j sends to i.  Self-loops are
implicit everywhere: protocols always operate on N_i^in(t) united with
{i}, and stored edge sets never contain (i, i).
"""

from __future__ import annotations

from dataclasses import dataclass

Edge = tuple[int, int]


class InvalidSize(Exception):
    pass


class NotUniformlyConnected(Exception):
    pass


def _is_strongly_connected(m: int, edges: frozenset[Edge]) -> bool:
    fwd: dict[int, list[int]] = {i: [] for i in range(1, m + 1)}
    bck: dict[int, list[int]] = {i: [] for i in range(1, m + 1)}
    for j, i in edges:
        fwd[j].append(i)
        bck[i].append(j)

    def reach(adj):
        seen = {1}
        stack = [1]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == m

    return reach(fwd) and reach(bck)


def compute_connectivity_window(m: int, slots: tuple[frozenset[Edge], ...]) -> int:
    """Smallest T such that every length-T slot window has a strongly connected union.

    Window starts are checked over one full period; the search is bounded
    by P*m, past which a uniformly connected schedule must have succeeded.
    """
    period = len(slots)
    for window in range(1, period * m + 1):
        ok = True
        for start in range(period):
            union: set[Edge] = set()
            for t in range(start, start + window):
                union |= slots[t % period]
            if not _is_strongly_connected(m, frozenset(union)):
                ok = False
                break
        if ok:
            return window
    raise NotUniformlyConnected(f"no window of length <= {period * m} is strongly connected")


@dataclass(frozen=True)
class GraphSchedule:
    """Periodic sequence of directed edge sets over m nodes (1-based ids)."""

    m: int
    slots: tuple[frozenset[Edge], ...]
    window: int  # T of uniform strong connectivity

    @property
    def period(self) -> int:
        return len(self.slots)

    def edges(self, t: int) -> frozenset[Edge]:
        return self.slots[t % self.period]

    def in_neighbors(self, node: int, t: int) -> tuple[int, ...]:
        return tuple(sorted(j for j, i in self.edges(t) if i == node))

    def out_neighbors(self, node: int, t: int) -> tuple[int, ...]:
        return tuple(sorted(i for j, i in self.edges(t) if j == node))

    def out_degree(self, node: int, t: int) -> int:
        return sum(1 for j, _ in self.edges(t) if j == node)


def make_schedule(m: int, slots) -> GraphSchedule:
    """Validate edge sets and compute the connectivity window T."""
    if m < 1:
        raise InvalidSize("node count must be >= 1")
    clean = []
    for edges in slots:
        es = frozenset((int(j), int(i)) for j, i in edges)
        for j, i in es:
            if not (1 <= j <= m and 1 <= i <= m):
                raise ValueError(f"edge ({j},{i}) out of node range 1..{m}")
            if j == i:
                raise ValueError("self-loops are implicit; do not store them")
        clean.append(es)
    window = compute_connectivity_window(m, tuple(clean))
    return GraphSchedule(m=m, slots=tuple(clean), window=window)


def directed_cycle(m: int) -> GraphSchedule:
    """Static cycle 1 -> 2 -> ... -> m -> 1."""
    if m < 2:
        raise InvalidSize("directed cycle needs m >= 2")
    edges = {(i, i % m + 1) for i in range(1, m + 1)}
    return make_schedule(m, [edges])


def complete(m: int) -> GraphSchedule:
    """Static complete digraph: all m(m-1) ordered pairs."""
    if m < 2:
        raise InvalidSize("complete graph needs m >= 2")
    edges = {(j, i) for j in range(1, m + 1) for i in range(1, m + 1) if j != i}
    return make_schedule(m, [edges])


def customized(m: int, bidirectional: bool = True) -> GraphSchedule:
    """Complete graph on nodes 1..m-1 plus a pendant link {m-1, m}.

    The pendant link is bidirectional by default; with
    ``bidirectional=False`` only (m, m-1) and (m-1, m) survive anyway
    since a one-way pendant would break strong connectivity, so the flag
    is kept for symmetry of the clique edges (always bidirectional).
    """
    if m < 3:
        raise InvalidSize("customized graph needs m >= 3")
    edges = {(j, i) for j in range(1, m) for i in range(1, m) if j != i}
    edges.add((m - 1, m))
    edges.add((m, m - 1))
    return make_schedule(m, [edges])


TOPOLOGIES = {
    "cycle": directed_cycle,
    "customized": customized,
    "complete": complete,
}


def schedule_from_config(config: dict) -> GraphSchedule:
    """Schedule from {"topology": ..., "m": int, "slots": [[[j,i],...],...]}."""
    topology = config["topology"]
    m = int(config["m"])
    if topology == "explicit":
        return make_schedule(m, config["slots"])
    try:
        return TOPOLOGIES[topology](m)
    except KeyError:
        raise ValueError(f"unknown topology {topology!r}") from None
