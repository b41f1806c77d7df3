"""Deciding whether an oriented 4-valent sphere map is balanced.

Three conditions: every face is a Jordan domain, the two color classes
have equally many faces, and every directed simple cycle that keeps blue
faces on its left sees strictly more blue than white faces on its left
side.  The local condition is decided by a max-flow computation on the
face adjacency network; exhaustive cycle enumeration is kept as an
independent oracle.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .errors import PreconditionFailed, TooLarge
from .maps import ColoredMap


@dataclass
class Matching:
    """How many 2-valent vertices to insert on each edge (keyed by edge id)."""
    counts: Dict[int, int]

    def total(self) -> int:
        return sum(self.counts.values())


@dataclass
class BalanceReport:
    jordan_ok: bool
    global_ok: bool
    local_ok: Optional[bool]  # None when gated off by an earlier failure
    witness: Optional[dict] = None
    matching: Optional[Matching] = None

    @property
    def balanced(self) -> bool:
        return bool(self.jordan_ok and self.global_ok and self.local_ok)

    def to_dict(self) -> dict:
        out = {"jordan": self.jordan_ok, "global": self.global_ok,
               "local": self.local_ok, "balanced": self.balanced}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def face_corners(cm: ColoredMap, face: int) -> int:
    """Number of boundary corners of a face (vertex visits, with multiplicity)."""
    return len(cm.m.faces[face])


def face_weights(cm: ColoredMap) -> List[int]:
    """w(F) = V - corners(F) for every face."""
    n = cm.m.num_vertices
    return [n - len(orbit) for orbit in cm.m.faces]


def check_jordan(cm: ColoredMap) -> Tuple[bool, Optional[dict]]:
    """A face is a Jordan domain iff its boundary walk meets no vertex twice."""
    m = cm.m
    for i, orbit in enumerate(m.faces):
        seen = set()
        for d in orbit:
            v = m.vertex_of[d]
            if v in seen:
                return False, {"face": i, "vertex": v}
            seen.add(v)
    return True, None


def check_global(cm: ColoredMap) -> bool:
    """Equal face counts: #blue = #white = V/2 + 1."""
    blue = len(cm.blue_faces)
    white = cm.m.num_faces - blue
    return blue == white


# -- curve oracle ---------------------------------------------------------------


def enumerate_blue_left_curves(cm: ColoredMap, max_vertices: int = 10):
    """All vertex-simple directed cycles following the blue-left edge
    directions, each with the blue/white face counts of its left side.

    Returns a list of (darts, B, W).  Exponential; guarded by a vertex cap.
    """
    m = cm.m
    if m.num_vertices > max_vertices:
        raise TooLarge("curve oracle capped at %d vertices" % max_vertices)
    out_darts: Dict[int, List[int]] = {}
    for v in m.vertex_ids():
        out_darts[v] = []
    for e in m.edges():
        f = cm.forward_dart(e)
        out_darts[m.vertex_of[f]].append(f)
    for v in out_darts:
        out_darts[v].sort()

    cycles: List[Tuple[int, ...]] = []

    def extend(path: List[int], used_vertices: set, target: int):
        head = m.vertex_of[m.alpha[path[-1]]]
        if head == target:
            cycles.append(tuple(path))
            # a longer cycle through target again would repeat it
        if head in used_vertices:
            return
        used_vertices.add(head)
        for nxt in out_darts[head]:
            # darts below the start belong to a cycle counted from there
            if nxt > path[0]:
                extend(path + [nxt], used_vertices, target)
        used_vertices.remove(head)

    for start in sorted(d for outs in out_darts.values() for d in outs):
        v0 = m.vertex_of[start]
        extend([start], {v0}, v0)

    results = []
    for darts in cycles:
        B, W = curve_left_counts(cm, darts)
        results.append((darts, B, W))
    return results


def curve_left_counts(cm: ColoredMap, darts: Tuple[int, ...]) -> Tuple[int, int]:
    """Blue/white face counts in the open disk left of a directed cycle.

    The side is grown from the faces adjacent to the curve's left darts,
    crossing only edges the curve does not use.
    """
    m = cm.m
    cut = {m.edge_of(d) for d in darts}
    left = {m.face_of[d] for d in darts}
    right = {m.face_of[m.alpha[d]] for d in darts}
    for region in (left, right):
        frontier = list(region)
        while frontier:
            f = frontier.pop()
            for d in m.faces[f]:
                if m.edge_of(d) in cut:
                    continue
                g = m.face_of[m.alpha[d]]
                if g not in region:
                    region.add(g)
                    frontier.append(g)
    if left & right or len(left) + len(right) != m.num_faces:
        raise PreconditionFailed("curve does not separate the sphere")
    B = sum(1 for f in left if f in cm.blue_faces)
    W = len(left) - B
    return B, W


def check_local_curves(cm: ColoredMap, max_vertices: int = 10):
    """Local balance via the exhaustive curve oracle."""
    for darts, B, W in enumerate_blue_left_curves(cm, max_vertices):
        if B <= W:
            return False, {"curve": list(darts), "blue_left": B, "white_left": W}
    return True, None


# -- max-flow formulation --------------------------------------------------------


class _FlowNet:
    """Tiny deterministic Edmonds-Karp on integer capacities."""

    def __init__(self):
        self.adj: Dict[object, List[object]] = {}
        self.cap: Dict[Tuple[object, object], int] = {}

    def add_edge(self, u, v, c):
        if v not in self.adj.setdefault(u, []):
            self.adj[u].append(v)
        if u not in self.adj.setdefault(v, []):
            self.adj[v].append(u)
        self.cap[(u, v)] = self.cap.get((u, v), 0) + c
        self.cap.setdefault((v, u), 0)

    def max_flow(self, s, t) -> Tuple[int, Dict[Tuple[object, object], int]]:
        flow: Dict[Tuple[object, object], int] = {k: 0 for k in self.cap}
        total = 0
        while True:
            parent = {s: None}
            q = deque([s])
            while q and t not in parent:
                u = q.popleft()
                for v in self.adj.get(u, []):
                    if v not in parent and self.cap[(u, v)] - flow[(u, v)] > 0:
                        parent[v] = u
                        q.append(v)
            if t not in parent:
                return total, flow
            # bottleneck along the BFS path
            path = []
            v = t
            while parent[v] is not None:
                path.append((parent[v], v))
                v = parent[v]
            aug = min(self.cap[e] - flow[e] for e in path)
            for e in path:
                flow[e] += aug
                flow[(e[1], e[0])] -= aug
            total += aug


def _build_network(cm: ColoredMap):
    w = face_weights(cm)
    blue = sorted(cm.blue_faces)
    white = sorted(cm.white_faces)
    total_blue = sum(w[f] for f in blue)
    net = _FlowNet()
    for f in blue:
        net.add_edge("D", ("b", f), w[f])
    for f in white:
        net.add_edge(("w", f), "A", w[f])
    shared: Dict[Tuple[int, int], List[int]] = {}
    m = cm.m
    for e in m.edges():
        f1, f2 = m.edge_sides(e)
        b, wh = (f1, f2) if f1 in cm.blue_faces else (f2, f1)
        shared.setdefault((b, wh), []).append(e)
    for (b, wh), edges in sorted(shared.items()):
        net.add_edge(("b", b), ("w", wh), total_blue)  # effectively unbounded
    return net, w, total_blue, shared


def check_balance_flow(cm: ColoredMap) -> Tuple[bool, Optional[Matching], dict]:
    """Local balance via max flow: balanced iff the flow fills the whole
    blue supply.  On success the flow is decomposed into a Matching, each
    blue-white pair's flow going to its least shared edge."""
    jordan, wit = check_jordan(cm)
    if not jordan or not check_global(cm):
        raise PreconditionFailed("flow test requires Jordan faces and global balance")
    net, w, total_blue, shared = _build_network(cm)
    value, flow = net.max_flow("D", "A")
    info = {"flow_value": value, "capacity": total_blue}
    if value < total_blue:
        return False, None, info
    counts: Dict[int, int] = {}
    for (b, wh), edges in sorted(shared.items()):
        f = flow.get((("b", b), ("w", wh)), 0)
        if f > 0:
            counts[min(edges)] = counts.get(min(edges), 0) + f
    return True, Matching(counts), info


def matching_is_valid(cm: ColoredMap, matching: Matching) -> bool:
    """Every face equation corners(F) + inserted-on-boundary = V holds."""
    m = cm.m
    n = m.num_vertices
    for i, orbit in enumerate(m.faces):
        boundary_edges = {m.edge_of(d) for d in orbit}
        ins = sum(matching.counts.get(e, 0) for e in boundary_edges)
        if len(orbit) + ins != n:
            return False
    return all(c >= 0 for c in matching.counts.values())


def is_balanced(cm: ColoredMap, oracle: str = "flow",
                max_vertices: int = 10) -> BalanceReport:
    """Conjunction of the three balance conditions.

    ``oracle`` selects how local balance is decided: "flow" (default),
    "curves", or "both" (must agree, used for auditing).
    """
    if oracle not in ("flow", "curves", "both"):
        raise PreconditionFailed("unknown oracle %r" % oracle)
    jordan, wit = check_jordan(cm)
    if not jordan:
        return BalanceReport(False, check_global(cm), None, witness=wit)
    glob = check_global(cm)
    if not glob:
        blue = len(cm.blue_faces)
        wit = {"blue": blue, "white": cm.m.num_faces - blue}
        return BalanceReport(True, False, None, witness=wit)
    matching = None
    if oracle in ("flow", "both"):
        ok_flow, matching, info = check_balance_flow(cm)
    if oracle in ("curves", "both"):
        ok_curves, cwit = check_local_curves(cm, max_vertices)
    if oracle == "flow":
        local, wit = ok_flow, (None if ok_flow else info)
    elif oracle == "curves":
        local, wit = ok_curves, cwit
    else:
        if ok_flow != ok_curves:
            raise PreconditionFailed(
                "flow and curve oracles disagree: flow=%s curves=%s" % (ok_flow, ok_curves))
        local, wit = ok_flow, (cwit if not ok_curves else None)
    return BalanceReport(True, True, local, witness=wit,
                         matching=matching if local else None)
