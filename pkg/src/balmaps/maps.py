"""Combinatorial maps on the sphere.

A map is encoded by a pair of permutations of the darts 1..2E: ``sigma``
cycles darts counterclockwise around each vertex, ``alpha`` swaps the two
darts of each edge.  The face permutation is ``phi = sigma o alpha``
(apply ``alpha`` first); each phi-orbit walks a face boundary keeping that
face on the left.

Vertices are identified by the minimal dart of their sigma-cycle, faces by
their index in the list of phi-orbits sorted by minimal dart.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import (
    AlphaHasFixedPoint,
    AlphaNotInvolution,
    Disconnected,
    InvalidInput,
    InvalidPinch,
    NonZeroGenus,
    NotFourValent,
)

Perm = Tuple[int, ...]  # 1-based image table, slot 0 unused


def perm_from_cycles(cycles: Iterable[Sequence[int]], n: int) -> Perm:
    """Build a 1-based image table from a list of cycles on 1..n."""
    img = list(range(n + 1))
    seen = [False] * (n + 1)
    for cyc in cycles:
        for i, x in enumerate(cyc):
            if not 1 <= x <= n:
                raise InvalidInput("dart %r out of range 1..%d" % (x, n))
            if seen[x]:
                raise InvalidInput("dart %d appears in two cycles" % x)
            seen[x] = True
            img[x] = cyc[(i + 1) % len(cyc)]
    return tuple(img)


def perm_cycles(perm: Perm) -> List[Tuple[int, ...]]:
    """Cycles of a permutation, each rotated to start at its minimal dart,
    sorted by that dart."""
    n = len(perm) - 1
    seen = [False] * (n + 1)
    out = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        x = perm[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = perm[x]
        out.append(tuple(cyc))
    return out


def _check_perm(img: Sequence[int], n: int, name: str) -> Perm:
    if len(img) != n + 1:
        raise InvalidInput("%s image table must have length darts+1" % name)
    hit = [False] * (n + 1)
    for x in img[1:]:
        if not 1 <= x <= n or hit[x]:
            raise InvalidInput("%s is not a permutation of 1..%d" % (name, n))
        hit[x] = True
    return tuple(img)


class CombinatorialMap:
    """An embedded graph on the oriented sphere, as a rotation system."""

    __slots__ = ("n", "sigma", "alpha", "phi", "faces", "face_of",
                 "vertex_of", "_vertices", "_code", "_colored_codes")

    def __init__(self, sigma: Sequence[int], alpha: Sequence[int], check: bool = True):
        n = len(sigma) - 1
        if check:
            if n < 2 or n % 2:
                raise InvalidInput("dart count must be a positive even integer")
            sigma = _check_perm(sigma, n, "sigma")
            alpha = _check_perm(alpha, n, "alpha")
            for d in range(1, n + 1):
                if alpha[d] == d:
                    raise AlphaHasFixedPoint("alpha fixes dart %d" % d)
                if alpha[alpha[d]] != d:
                    raise AlphaNotInvolution("alpha is not an involution at dart %d" % d)
        self.n = n
        self.sigma = tuple(sigma)
        self.alpha = tuple(alpha)
        self.phi = tuple(0 if d == 0 else self.sigma[self.alpha[d]] for d in range(n + 1))

        self._vertices = perm_cycles(self.sigma)
        self.vertex_of = [0] * (n + 1)
        for cyc in self._vertices:
            v = cyc[0]
            for d in cyc:
                self.vertex_of[d] = v

        self.faces = perm_cycles(self.phi)
        self.face_of = [0] * (n + 1)
        for i, orbit in enumerate(self.faces):
            for d in orbit:
                self.face_of[d] = i

        if check:
            if not self._connected():
                raise Disconnected("sigma and alpha do not act transitively")
            if self.num_vertices - self.num_edges + self.num_faces != 2:
                raise NonZeroGenus(
                    "V-E+F = %d, not a sphere map"
                    % (self.num_vertices - self.num_edges + self.num_faces))

        self._code = None
        self._colored_codes = {}

    # -- basic counts --------------------------------------------------------

    @property
    def num_edges(self) -> int:
        return self.n // 2

    @property
    def num_vertices(self) -> int:
        return len(self._vertices)

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    def vertices(self) -> List[Tuple[int, ...]]:
        return list(self._vertices)

    def vertex_ids(self) -> List[int]:
        return [cyc[0] for cyc in self._vertices]

    def vertex_cycle(self, v: int) -> Tuple[int, ...]:
        for cyc in self._vertices:
            if cyc[0] == v:
                return cyc
        raise InvalidInput("no vertex %d" % v)

    def degree(self, v: int) -> int:
        return len(self.vertex_cycle(v))

    def edges(self) -> List[int]:
        """Edge ids: the smaller dart of each alpha-pair, ascending."""
        return [d for d in range(1, self.n + 1) if d < self.alpha[d]]

    def edge_of(self, d: int) -> int:
        return min(d, self.alpha[d])

    def edge_sides(self, e: int) -> Tuple[int, int]:
        """Face indices on the two sides of edge e."""
        return self.face_of[e], self.face_of[self.alpha[e]]

    def is_four_valent(self) -> bool:
        return all(len(c) == 4 for c in self._vertices)

    def _connected(self) -> bool:
        seen = [False] * (self.n + 1)
        stack = [1]
        seen[1] = True
        cnt = 0
        while stack:
            d = stack.pop()
            cnt += 1
            for nb in (self.sigma[d], self.alpha[d]):
                if not seen[nb]:
                    seen[nb] = True
                    stack.append(nb)
        return cnt == self.n

    # -- isomorphism ----------------------------------------------------------

    def _bfs_trace(self, root: int) -> Tuple[List[int], List[int]]:
        """Relabel darts by BFS discovery from ``root``; return (trace, order).

        The trace lists, for each dart in discovery order, the discovery
        labels of its sigma- and alpha-images.  Two rooted maps are
        isomorphic iff their traces agree.
        """
        lab = [0] * (self.n + 1)
        order = [root]
        lab[root] = 1
        i = 0
        while i < len(order):
            d = order[i]
            i += 1
            for nb in (self.sigma[d], self.alpha[d]):
                if not lab[nb]:
                    lab[nb] = len(order) + 1
                    order.append(nb)
        trace = []
        for d in order:
            trace.append(lab[self.sigma[d]])
            trace.append(lab[self.alpha[d]])
        return trace, order

    def canonical_code(self) -> Tuple[int, ...]:
        """Lexicographically least BFS trace over all root darts.

        Complete invariant: two maps have equal codes iff some dart
        relabeling commutes with both sigma and alpha.
        """
        if self._code is None:
            best = None
            for root in range(1, self.n + 1):
                trace, _ = self._bfs_trace(root)
                if best is None or trace < best:
                    best = trace
            self._code = (self.n,) + tuple(best)
        return self._code

    def canonical_roots(self) -> List[int]:
        """Roots whose BFS trace equals the canonical code; one per automorphism."""
        code = self.canonical_code()[1:]
        return [r for r in range(1, self.n + 1)
                if tuple(self._bfs_trace(r)[0]) == code]

    def relabeled(self, perm: Perm) -> "CombinatorialMap":
        """Conjugate sigma and alpha by a dart permutation (an isomorphic copy)."""
        n = self.n
        sigma = [0] * (n + 1)
        alpha = [0] * (n + 1)
        for d in range(1, n + 1):
            sigma[perm[d]] = perm[self.sigma[d]]
            alpha[perm[d]] = perm[self.alpha[d]]
        return CombinatorialMap(sigma, alpha)

    def __eq__(self, other):
        return (isinstance(other, CombinatorialMap)
                and self.sigma == other.sigma and self.alpha == other.alpha)

    def __hash__(self):
        return hash((self.sigma, self.alpha))

    def __repr__(self):
        return "CombinatorialMap(V=%d, E=%d, F=%d)" % (
            self.num_vertices, self.num_edges, self.num_faces)


def build_map(sigma_cycles: Iterable[Sequence[int]],
              alpha_pairs: Iterable[Sequence[int]],
              darts: Optional[int] = None) -> CombinatorialMap:
    """Construct a validated map from sigma cycles and alpha pairs."""
    cyc = [tuple(c) for c in sigma_cycles]
    pairs = [tuple(p) for p in alpha_pairs]
    if darts is None:
        darts = max(max(c) for c in cyc if c) if cyc else 0
    for p in pairs:
        if len(p) != 2:
            raise AlphaNotInvolution("alpha must be given as dart pairs")
    sigma = perm_from_cycles(cyc, darts)
    alpha = perm_from_cycles(pairs, darts)
    return CombinatorialMap(sigma, alpha)


def isomorphic(a: CombinatorialMap, b: CombinatorialMap) -> bool:
    return a.canonical_code() == b.canonical_code()


def isomorphism_brute_force(a: CombinatorialMap, b: CombinatorialMap) -> Optional[Perm]:
    """Search all dart bijections for one commuting with sigma and alpha.

    Exponential; a test oracle for maps with at most ~8 darts.
    """
    if a.n != b.n:
        return None
    darts = range(1, a.n + 1)
    for images in itertools.permutations(darts):
        perm = (0,) + images
        ok = True
        for d in darts:
            if (perm[a.sigma[d]] != b.sigma[perm[d]]
                    or perm[a.alpha[d]] != b.alpha[perm[d]]):
                ok = False
                break
        if ok:
            return perm
    return None


# -- colored maps -------------------------------------------------------------


class ColoredMap:
    """A 4-valent sphere map with a chosen blue class of its checkerboard
    coloring.

    Each edge is implicitly directed so that its blue face is on the left:
    the forward dart of an edge is the dart whose face is blue.
    """

    __slots__ = ("m", "blue_faces", "_colored_code")

    def __init__(self, m: CombinatorialMap, blue_faces: Iterable[int], check: bool = True):
        self.m = m
        self.blue_faces = frozenset(blue_faces)
        self._colored_code = None
        if check:
            if not m.is_four_valent():
                raise NotFourValent("all vertices must have valence 4")
            for f in self.blue_faces:
                if not 0 <= f < m.num_faces:
                    raise InvalidInput("blue face index %r out of range" % (f,))
            for e in m.edges():
                f1, f2 = m.edge_sides(e)
                if (f1 in self.blue_faces) == (f2 in self.blue_faces):
                    raise InvalidInput("blue_faces is not a proper 2-coloring")

    def is_blue(self, face: int) -> bool:
        return face in self.blue_faces

    @property
    def white_faces(self) -> frozenset:
        return frozenset(range(self.m.num_faces)) - self.blue_faces

    def is_forward(self, d: int) -> bool:
        """True if dart d points along its edge's blue-left direction."""
        return self.m.face_of[d] in self.blue_faces

    def forward_dart(self, e: int) -> int:
        return e if self.is_forward(e) else self.m.alpha[e]

    def swapped(self) -> "ColoredMap":
        return ColoredMap(self.m, self.white_faces, check=False)

    def colored_code(self) -> Tuple[int, ...]:
        """Canonical code refined by the blue/white bit of every face."""
        if self._colored_code is None:
            m = self.m
            best = None
            for root in range(1, m.n + 1):
                trace, order = m._bfs_trace(root)
                lab = [0] * (m.n + 1)
                for i, d in enumerate(order):
                    lab[d] = i + 1
                keyed = sorted((min(lab[d] for d in orbit), i)
                               for i, orbit in enumerate(m.faces))
                bits = [1 if i in self.blue_faces else 0 for _, i in keyed]
                cand = trace + bits
                if best is None or cand < best:
                    best = cand
            self._colored_code = (m.n,) + tuple(best)
        return self._colored_code

    def __eq__(self, other):
        return (isinstance(other, ColoredMap)
                and self.m == other.m and self.blue_faces == other.blue_faces)

    def __hash__(self):
        return hash((self.m, self.blue_faces))

    def __repr__(self):
        return "ColoredMap(V=%d, blue=%d, white=%d)" % (
            self.m.num_vertices, len(self.blue_faces),
            self.m.num_faces - len(self.blue_faces))


def checkerboard(m: CombinatorialMap) -> Tuple[ColoredMap, ColoredMap]:
    """The two proper face 2-colorings of a 4-valent map.

    The first coloring is the one where face 0 is blue.
    """
    if not m.is_four_valent():
        raise NotFourValent("checkerboard coloring needs a 4-valent map")
    color = [-1] * m.num_faces
    color[0] = 1
    stack = [0]
    while stack:
        f = stack.pop()
        for d in m.faces[f]:
            g = m.face_of[m.alpha[d]]
            if color[g] == -1:
                color[g] = 1 - color[f]
                stack.append(g)
            elif color[g] == color[f]:
                raise NotFourValent("face adjacency is not bipartite")
    blue = frozenset(i for i, c in enumerate(color) if c == 1)
    first = ColoredMap(m, blue)
    return first, first.swapped()


def canonical_form(obj) -> Tuple[int, ...]:
    """Canonical code of a CombinatorialMap or ColoredMap."""
    if isinstance(obj, ColoredMap):
        return obj.colored_code()
    return obj.canonical_code()


# -- generators ---------------------------------------------------------------


def _from_rotations(vertex_germs: List[List[Tuple[int, int]]]) -> CombinatorialMap:
    """Build a map from, per vertex, the counterclockwise list of
    (edge id, end) germs.  Edge e gets darts 2e+1 (end 0) and 2e+2 (end 1)."""
    used = {}
    cycles = []
    for germs in vertex_germs:
        cyc = []
        for e, end in germs:
            d = 2 * e + 1 + end
            if d in used:
                raise InvalidInput("edge end (%d,%d) used twice" % (e, end))
            used[d] = True
            cyc.append(d)
        cycles.append(cyc)
    n = len(used)
    pairs = [(2 * e + 1, 2 * e + 2) for e in range(n // 2)]
    return build_map(cycles, pairs, darts=n)


def quadratic() -> CombinatorialMap:
    """Two circles crossing at two points: V=2, E=4, F=4."""
    u = [(0, 0), (1, 0), (2, 0), (3, 0)]
    v = [(0, 1), (3, 1), (2, 1), (1, 1)]
    return _from_rotations([u, v])


def octahedron() -> CombinatorialMap:
    """The octahedron map, drawn as a triangle inside a triangle.

    Outer vertices o1..o3, inner i1..i3; i_k sits between o_k and o_{k+1}.
    Edges 0..2 outer arcs o_k-o_{k+1}, 3..5 inner arcs i_k-i_{k+1},
    6..8 cords o_k-i_k, 9..11 cords i_k-o_{k+1}.
    """
    rot = []
    for k in range(3):
        out_k, out_prev = k, (k - 1) % 3
        rot.append([(out_k, 0), (6 + k, 0), (9 + (k - 1) % 3, 1), (out_prev, 1)])
    for k in range(3):
        in_k, in_prev = 3 + k, 3 + (k - 1) % 3
        rot.append([(9 + k, 0), (in_k, 0), (in_prev, 1), (6 + k, 1)])
    return _from_rotations(rot)


def turkshead(n: int) -> CombinatorialMap:
    """The 3 x n turkshead: a drum-lacing diagram with 2n crossings.

    Vertices a_1..a_n on an outer circle and b_1..b_n on an inner one;
    edges are the outer arcs a_k-a_{k+1}, inner arcs b_k-b_{k+1} and the
    cords a_k-b_k, b_k-a_{k+1}.  V=2n, E=4n, F=2n+2.
    """
    if n < 1:
        raise InvalidInput("turkshead index must be >= 1")
    # edge ids: outer_k = k, inner_k = n+k, cordA_k (a_k-b_k) = 2n+k,
    # cordB_k (b_k-a_{k+1}) = 3n+k
    rot = []
    for k in range(n):
        rot.append([(k, 0), (2 * n + k, 0), (3 * n + (k - 1) % n, 1), ((k - 1) % n, 1)])
    for k in range(n):
        rot.append([(3 * n + k, 0), (n + k, 0), (n + (k - 1) % n, 1), (2 * n + k, 1)])
    return _from_rotations(rot)


def pinch(cm, dart1: int, dart2: int):
    """Identify two boundary points of one face into a new 4-valent vertex.

    The points are interior points of the (distinct) edges carrying dart1
    and dart2, which must lie on the same face.  Splits that face in two;
    for a ColoredMap both parts keep the face's color, so that color's
    count goes up by one.
    """
    colored = isinstance(cm, ColoredMap)
    m = cm.m if colored else cm
    if not (1 <= dart1 <= m.n and 1 <= dart2 <= m.n):
        raise InvalidPinch("dart out of range")
    if m.face_of[dart1] != m.face_of[dart2]:
        raise InvalidPinch("darts lie on different faces")
    if m.edge_of(dart1) == m.edge_of(dart2):
        raise InvalidPinch("darts lie on the same edge")
    n = m.n
    x1, y1, x2, y2 = n + 1, n + 2, n + 3, n + 4
    d1p, d2p = m.alpha[dart1], m.alpha[dart2]
    alpha = list(m.alpha) + [0] * 4
    alpha[dart1], alpha[x1] = x1, dart1
    alpha[y1], alpha[d1p] = d1p, y1
    alpha[dart2], alpha[x2] = x2, dart2
    alpha[y2], alpha[d2p] = d2p, y2
    sigma = list(m.sigma) + [0] * 4
    # new vertex: counterclockwise (x1, y2, x2, y1)
    sigma[x1], sigma[y2], sigma[x2], sigma[y1] = y2, x2, y1, x1
    m2 = CombinatorialMap(sigma, alpha)
    if not colored:
        return m2
    blue2 = set()
    for i, orbit in enumerate(m2.faces):
        old = next(d for d in orbit if d <= n)
        if m.face_of[old] in cm.blue_faces:
            blue2.add(i)
    return ColoredMap(m2, blue2)


def generate(kind: str, *args):
    """Dispatch for the named generators: quadratic, octahedron,
    turkshead(n), pinch(cm, dart1, dart2)."""
    if kind == "quadratic":
        return quadratic()
    if kind == "octahedron":
        return octahedron()
    if kind == "turkshead":
        return turkshead(*args)
    if kind == "pinch":
        return pinch(*args)
    raise InvalidInput("unknown generator %r" % kind)


# -- duality -------------------------------------------------------------------


@dataclass(frozen=True)
class FaceLabeledGraph:
    """Bipartite sphere map with red-labeled faces, the dual of a realized
    4-valent diagram.

    ``blue_vertices`` are vertex ids (minimal darts); ``face_red`` assigns a
    distinct label in 1..2d-2 to every face; ``blue_labels`` optionally
    labels the blue vertices 1..d.
    """
    m: CombinatorialMap
    blue_vertices: frozenset
    face_red: Tuple[int, ...]
    blue_labels: Optional[Tuple[Tuple[int, int], ...]] = None  # (vertex, label)

    @property
    def d(self) -> int:
        return len(self.blue_vertices)

    def white_vertices(self) -> frozenset:
        return frozenset(self.m.vertex_ids()) - self.blue_vertices

    def blue_label_map(self) -> Dict[int, int]:
        return dict(self.blue_labels) if self.blue_labels else {}

    def validate(self) -> None:
        m = self.m
        blues = self.blue_vertices
        for e in m.edges():
            u, v = m.vertex_of[e], m.vertex_of[m.alpha[e]]
            if (u in blues) == (v in blues):
                raise InvalidInput("graph is not bipartite on blue/white vertices")
        d = len(blues)
        if m.num_vertices != 2 * d:
            raise InvalidInput("need equally many blue and white vertices")
        if m.num_faces != 2 * d - 2:
            raise InvalidInput("face count must be 2d-2")
        if sorted(self.face_red) != list(range(1, 2 * d - 1)):
            raise InvalidInput("face labels must be a bijection onto 1..2d-2")
        if self.blue_labels is not None:
            lab = self.blue_label_map()
            if set(lab) != set(blues) or sorted(lab.values()) != list(range(1, d + 1)):
                raise InvalidInput("blue vertex labels must be a bijection onto 1..d")

    def canonical_code(self) -> Tuple[int, ...]:
        """Canonical form refined by face reds and blue vertex labels."""
        m = self.m
        lab_map = self.blue_label_map()
        best = None
        for root in range(1, m.n + 1):
            trace, order = m._bfs_trace(root)
            lab = [0] * (m.n + 1)
            for i, d in enumerate(order):
                lab[d] = i + 1
            fkey = sorted((min(lab[d] for d in orbit), i)
                          for i, orbit in enumerate(m.faces))
            deco = [self.face_red[i] for _, i in fkey]
            vkey = sorted((min(lab[d] for d in cyc), cyc[0])
                          for cyc in m._vertices)
            for _, v in vkey:
                if v in self.blue_vertices:
                    deco.append(lab_map.get(v, -1))
                else:
                    deco.append(0)
            cand = trace + deco
            if best is None or cand < best:
                best = cand
        return (m.n,) + tuple(best)


def dual_bipartite(cm: ColoredMap, labels: Dict[int, int]) -> FaceLabeledGraph:
    """Dual of a realized colored map: one blue vertex per blue face, one
    white per white face, one edge per edge of the diagram, and one face per
    4-valent vertex, red-labeled by that vertex's critical label.
    """
    from .errors import NotRealized
    m = cm.m
    n = m.num_vertices
    if sorted(labels.get(v, 0) for v in m.vertex_ids()) != list(range(1, n + 1)):
        raise NotRealized("need distinct critical labels 1..%d" % n)
    # dual on the same darts: sigma* = phi^(-1), alpha* = alpha.  With this
    # chirality the greater-label-left orientation of the dual has unique
    # incoming edges at blue vertices (and unique outgoing at white), which
    # the tree bijection relies on.  Dual faces are the primal vertices;
    # the face left of a dual dart c is the primal vertex of alpha(c).
    phi_inv = [0] * (m.n + 1)
    for d_ in range(1, m.n + 1):
        phi_inv[m.phi[d_]] = d_
    dual = CombinatorialMap(phi_inv, m.alpha)
    blue_vs = frozenset(orbit[0] for i, orbit in enumerate(m.faces)
                        if i in cm.blue_faces)
    reds = []
    for orbit in dual.faces:
        v = m.vertex_of[m.alpha[orbit[0]]]
        reds.append(labels[v])
    g = FaceLabeledGraph(dual, blue_vs, tuple(reds))
    g.validate()
    return g
