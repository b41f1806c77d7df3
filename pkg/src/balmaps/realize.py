"""Constructive realization of balanced maps as branched-cover monodromy.

A balanced diagram is enriched with 2-valent vertices until every face has
exactly n = 2d-2 boundary vertices, vertex labels in Z/n are integrated
along the derived edge directions, and the monodromy transpositions are
read off the blue/white sheet pairings.  The inverse direction glues d
blue and d white n-gons according to a transposition tuple and recovers
the diagram, which makes realizability checkable with no reference to the
balance conditions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from .balance import Matching, is_balanced, matching_is_valid
from .errors import (
    InconsistentCocycle,
    InvalidInput,
    InvalidMatching,
    InvalidTuple,
    LimitExceeded,
    NoGenericRealization,
    NotBalanced,
)
from .maps import ColoredMap, CombinatorialMap

Pair = Tuple[int, int]


# -- transposition tuples --------------------------------------------------------


@dataclass(frozen=True)
class TranspositionTuple:
    """(tau_1, ..., tau_n) in S_d with trivial product and transitive action."""
    d: int
    taus: Tuple[Pair, ...]

    @property
    def n(self) -> int:
        return len(self.taus)

    def validate(self) -> None:
        d = self.d
        if d < 2:
            raise InvalidTuple("degree must be at least 2")
        if len(self.taus) != 2 * d - 2:
            raise InvalidTuple("need 2d-2 transpositions")
        for p in self.taus:
            if len(p) != 2 or not (1 <= p[0] <= d and 1 <= p[1] <= d) or p[0] == p[1]:
                raise InvalidTuple("%r is not a transposition of 1..%d" % (p, d))
        prod = list(range(d + 1))
        for a, b in self.taus:
            # left-multiply by (a b): prod becomes tau o prod
            for x in range(1, d + 1):
                if prod[x] == a:
                    prod[x] = b
                elif prod[x] == b:
                    prod[x] = a
        if prod != list(range(d + 1)):
            raise InvalidTuple("product of the tuple is not the identity")
        if not self.is_transitive():
            raise InvalidTuple("tuple does not act transitively")

    def is_transitive(self) -> bool:
        parent = list(range(self.d + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.taus:
            parent[find(a)] = find(b)
        return len({find(x) for x in range(1, self.d + 1)}) == 1

    def conjugate(self, g: Tuple[int, ...]) -> "TranspositionTuple":
        taus = tuple(tuple(sorted((g[a], g[b]))) for a, b in self.taus)
        return TranspositionTuple(self.d, taus)


def canonical_tuple(t: TranspositionTuple) -> Tuple[Pair, ...]:
    """Lexicographically least flat encoding over all diagonal conjugations."""
    import itertools
    best = None
    for images in itertools.permutations(range(1, t.d + 1)):
        g = (0,) + images
        cand = tuple(tuple(sorted((g[a], g[b]))) for a, b in t.taus)
        if best is None or cand < best:
            best = cand
    return best


def tuples_conjugate(a: TranspositionTuple, b: TranspositionTuple) -> bool:
    return a.d == b.d and canonical_tuple(a) == canonical_tuple(b)


# -- enrichment --------------------------------------------------------------------


@dataclass
class EnrichedMap:
    """A colored diagram with 2-valent vertices inserted on its edges.

    ``full`` is the subdivided map; ``full_blue`` its blue face indices;
    ``crit`` the ids of the original 4-valent vertices.
    """
    base: ColoredMap
    counts: Dict[int, int]
    full: CombinatorialMap
    full_blue: frozenset
    crit: frozenset

    @property
    def n(self) -> int:
        return len(self.crit)


@dataclass
class Labeling:
    """Vertex labels in Z/n, increasing by one along every directed edge."""
    labels: Dict[int, int]
    n: int

    def critical(self, em: EnrichedMap) -> Dict[int, int]:
        return {v: self.labels[v] for v in em.crit}

    def shifted(self, offset: int) -> "Labeling":
        return Labeling(
            {v: (l - 1 + offset) % self.n + 1 for v, l in self.labels.items()},
            self.n)


def enumerate_matchings(cm: ColoredMap, cap: int = 100000) -> Iterator[Matching]:
    """All nonnegative integer solutions of the face equations
    corners(F) + inserted(F) = V, in lexicographic order of per-edge counts.
    """
    m = cm.m
    n = m.num_vertices
    edges = m.edges()
    rem = [n - len(orbit) for orbit in m.faces]
    if any(r < 0 for r in rem):
        return
    blue_total = sum(rem[f] for f in cm.blue_faces)
    white_total = sum(rem[f] for f in range(m.num_faces) if f not in cm.blue_faces)
    if blue_total != white_total:
        return
    sides = [m.edge_sides(e) for e in edges]
    k = len(edges)
    future = [[0] * (k + 1) for _ in range(m.num_faces)]
    for i in range(k - 1, -1, -1):
        for f in range(m.num_faces):
            future[f][i] = future[f][i + 1]
        f1, f2 = sides[i]
        future[f1][i] += 1
        if f2 != f1:
            future[f2][i] += 1

    counts = [0] * k
    yielded = [0]
    nf = m.num_faces

    def rec(i: int):
        if i == k:
            if all(r == 0 for r in rem):
                yielded[0] += 1
                if yielded[0] > cap:
                    raise LimitExceeded("matching enumeration cap exceeded")
                yield Matching({edges[j]: counts[j] for j in range(k) if counts[j]})
            return
        f1, f2 = sides[i]
        hi = min(rem[f1], rem[f2])
        for c in range(hi + 1):
            counts[i] = c
            rem[f1] -= c
            rem[f2] -= c
            if all(rem[f] == 0 or future[f][i + 1] > 0 for f in range(nf)):
                yield from rec(i + 1)
            rem[f1] += c
            rem[f2] += c
        counts[i] = 0

    yield from rec(0)


def enrich(cm: ColoredMap, matching: Matching) -> EnrichedMap:
    """Insert matching.counts[e] 2-valent vertices on each edge e."""
    if not matching_is_valid(cm, matching):
        raise InvalidMatching("matching violates a face equation")
    m = cm.m
    sigma = list(m.sigma)
    alpha = list(m.alpha)
    nxt = m.n
    for e in m.edges():
        k = matching.counts.get(e, 0)
        if k == 0:
            continue
        d, dp = e, m.alpha[e]
        new = list(range(nxt + 1, nxt + 2 * k + 1))
        nxt += 2 * k
        sigma.extend([0] * 2 * k)
        alpha.extend([0] * 2 * k)
        # chain d -(c1)- c2 ... -(ck)- dp; vertex c_i has darts new[2i-2], new[2i-1]
        for i in range(k):
            a, b = new[2 * i], new[2 * i + 1]
            sigma[a], sigma[b] = b, a
        alpha[d] = new[0]
        alpha[new[0]] = d
        for i in range(k - 1):
            alpha[new[2 * i + 1]] = new[2 * i + 2]
            alpha[new[2 * i + 2]] = new[2 * i + 1]
        alpha[new[2 * k - 1]] = dp
        alpha[dp] = new[2 * k - 1]
    full = CombinatorialMap(sigma, alpha)
    full_blue = frozenset(
        i for i, orbit in enumerate(full.faces)
        if m.face_of[next(d for d in orbit if d <= m.n)] in cm.blue_faces)
    crit = frozenset(m.vertex_of[d] for d in range(1, m.n + 1))
    em = EnrichedMap(cm, dict(matching.counts), full, full_blue, crit)
    n = m.num_vertices
    for orbit in full.faces:
        if len(orbit) != n:
            raise InvalidMatching("a face does not have exactly %d boundary vertices" % n)
    return em


def _directed_edges(em: EnrichedMap) -> List[Tuple[int, int, int]]:
    """(forward dart, tail vertex, head vertex) for every edge of the full map."""
    full = em.full
    out = []
    for e in full.edges():
        d = e if full.face_of[e] in em.full_blue else full.alpha[e]
        out.append((d, full.vertex_of[d], full.vertex_of[full.alpha[d]]))
    return out


def integrate_labels(em: EnrichedMap, seed_vertex: Optional[int] = None,
                     seed_label: int = 1) -> Labeling:
    """Integrate the +1 coboundary from a seed vertex.

    Always succeeds on a valid enrichment: every face has n boundary steps,
    so the increments cancel around every face and the sphere has no other
    cycles to obstruct.
    """
    full = em.full
    n = em.n
    if seed_vertex is None:
        seed_vertex = full.vertex_of[1]
    adj: Dict[int, List[Tuple[int, int]]] = {v: [] for v in full.vertex_ids()}
    for d, tail, head in _directed_edges(em):
        adj[tail].append((head, 1))
        adj[head].append((tail, -1))
    labels = {seed_vertex: (seed_label - 1) % n + 1}
    stack = [seed_vertex]
    while stack:
        v = stack.pop()
        for w, step in adj[v]:
            want = (labels[v] - 1 + step) % n + 1
            if w not in labels:
                labels[w] = want
                stack.append(w)
            elif labels[w] != want:
                raise InconsistentCocycle(
                    "label conflict at vertex %d (core map bug)" % w)
    return Labeling(labels, n)


# -- monodromy extraction -----------------------------------------------------------


class _ExtractionFailed(Exception):
    """Internal: the enriched labeling does not define sheet bijections."""


def _sheet_bijections(em: EnrichedMap, lab: Labeling):
    """Per label j, the blue-to-white face pairing across arcs from label j
    to label j+1."""
    full = em.full
    n = em.n
    p = [dict() for _ in range(n + 1)]  # p[j]: blue face -> white face
    for d, tail, head in _directed_edges(em):
        j = lab.labels[tail]
        bf, wf = full.face_of[d], full.face_of[full.alpha[d]]
        if bf in p[j] and p[j][bf] != wf:
            raise _ExtractionFailed("blue face crosses arc %d twice" % j)
        p[j][bf] = wf
    blues = sorted(em.full_blue)
    whites = sorted(set(range(full.num_faces)) - em.full_blue)
    for j in range(1, n + 1):
        if set(p[j]) != set(blues) or sorted(p[j].values()) != whites:
            raise _ExtractionFailed("arc %d pairing is not a bijection" % j)
    return p, blues, whites


def monodromy(em: EnrichedMap, lab: Labeling) -> TranspositionTuple:
    """Extract the transposition tuple of a realized enriched diagram.

    Sheets are the blue faces in canonical order; whites are identified
    with blues through the arc between labels n and 1, so the product of
    the extracted transpositions telescopes to the identity.
    """
    crit = lab.critical(em)
    n = em.n
    if sorted(crit.values()) != list(range(1, n + 1)):
        raise InvalidInput("critical labels must be pairwise distinct")
    try:
        p, blues, whites = _sheet_bijections(em, lab)
    except _ExtractionFailed as exc:
        raise InvalidInput(str(exc))
    d = len(blues)
    sheet = {f: i + 1 for i, f in enumerate(blues)}
    whitenum = {p[n][f]: sheet[f] for f in blues}
    # P[j] on sheets 1..d
    P = [None] * (n + 1)
    for j in range(1, n + 1):
        P[j] = (0,) + tuple(whitenum[p[j][blues[i - 1]]] for i in range(1, d + 1))
    Pinv = [None] * (n + 1)
    for j in range(1, n + 1):
        inv = [0] * (d + 1)
        for x in range(1, d + 1):
            inv[P[j][x]] = x
        Pinv[j] = tuple(inv)
    taus = []
    for j in range(1, n + 1):
        prev = P[j - 1] if j > 1 else P[n]
        perm = tuple(Pinv[j][prev[x]] if x else 0 for x in range(d + 1))
        moved = [x for x in range(1, d + 1) if perm[x] != x]
        if len(moved) != 2 or perm[moved[0]] != moved[1]:
            raise InvalidInput("arc pairings at label %d are not a transposition" % j)
        taus.append((moved[0], moved[1]))
    t = TranspositionTuple(d, tuple(taus))
    t.validate()
    return t


# -- gluing a diagram from a tuple ---------------------------------------------------


@dataclass
class Realization:
    colored: ColoredMap
    enriched: EnrichedMap
    labeling: Labeling
    critical_labels: Optional[Dict[int, int]] = None  # keyed by colored-map vertex

    def diagram_labels(self) -> Dict[int, int]:
        if self.critical_labels is not None:
            return dict(self.critical_labels)
        return {v: self.labeling.labels[v] for v in self.colored.m.vertex_ids()}


def graph_from_monodromy(t: TranspositionTuple) -> Realization:
    """Glue d blue and d white n-gons along the sheet pairings of the tuple
    and suppress the 2-valent vertices.

    Side j of blue polygon i is glued to side j of white polygon
    beta_j(i), where beta_0 is the identity and beta_j = beta_{j-1} o tau_j.
    """
    t.validate()
    d, n = t.d, t.n
    beta = [list(range(d + 1))]
    for a, b in t.taus:
        prev = beta[-1]
        cur = list(prev)
        cur[a], cur[b] = prev[b], prev[a]
        beta.append(cur)
    if beta[n] != list(range(d + 1)):
        raise InvalidTuple("sheet pairings do not close up")

    def bdart(i, j):
        return (i - 1) * n + j

    def wdart(k, j):
        return d * n + (k - 1) * n + j

    total = 2 * d * n
    alpha = [0] * (total + 1)
    phi = [0] * (total + 1)
    for i in range(1, d + 1):
        for j in range(1, n + 1):
            b = bdart(i, j)
            w = wdart(beta[j][i], j)
            alpha[b], alpha[w] = w, b
            phi[b] = bdart(i, j % n + 1)
            phi[w] = wdart(beta[j][i], (j - 2) % n + 1)
    sigma = [0] * (total + 1)
    for x in range(1, total + 1):
        sigma[x] = phi[alpha[x]]
    full = CombinatorialMap(sigma, alpha)

    labels: Dict[int, int] = {}
    for i in range(1, d + 1):
        for j in range(1, n + 1):
            for dart, lab in ((bdart(i, j), j), (wdart(i, j), j % n + 1)):
                v = full.vertex_of[dart]
                if labels.setdefault(v, lab) != lab:
                    raise InvalidTuple("inconsistent corner labels (gluing bug)")
    full_blue = frozenset(full.face_of[bdart(i, 1)] for i in range(1, d + 1))
    if len(full_blue) != d:
        raise InvalidTuple("blue polygons did not stay distinct")
    crit = frozenset(v for v in full.vertex_ids() if full.degree(v) == 4)
    if len(crit) != n or any(full.degree(v) not in (2, 4) for v in full.vertex_ids()):
        raise InvalidTuple("glued complex is not a generic diagram")

    reduced, red_blue, counts, keep = _suppress_two_valent(full, full_blue, crit)
    cm = ColoredMap(reduced, red_blue)
    em = EnrichedMap(cm, counts, full, full_blue, crit)
    lab = Labeling(labels, n)
    crit_labels = {v: labels[full.vertex_of[keep[v - 1]]]
                   for v in reduced.vertex_ids()}
    return Realization(cm, em, lab, crit_labels)


def _suppress_two_valent(full: CombinatorialMap, full_blue: frozenset,
                         crit: frozenset):
    """Forget the 2-valent vertices, fusing edge chains.

    Returns the reduced map (darts relabeled 1..4n), its blue face indices,
    and the per-reduced-edge insertion counts.
    """
    keep = sorted(d for d in range(1, full.n + 1) if full.vertex_of[d] in crit)
    new_id = {d: i + 1 for i, d in enumerate(keep)}
    sigma = [0] * (len(keep) + 1)
    alpha = [0] * (len(keep) + 1)
    chain_len: Dict[int, int] = {}
    for dart in keep:
        sigma[new_id[dart]] = new_id[full.sigma[dart]]
        cur = dart
        passed = 0
        while True:
            nxt = full.alpha[cur]
            if full.vertex_of[nxt] in crit:
                alpha[new_id[dart]] = new_id[nxt]
                break
            passed += 1
            cur = full.sigma[nxt]
        chain_len[new_id[dart]] = passed
    reduced = CombinatorialMap(sigma, alpha)
    red_blue = set()
    for i, orbit in enumerate(reduced.faces):
        old = keep[orbit[0] - 1]
        if full.face_of[old] in full_blue:
            red_blue.add(i)
    counts = {}
    for e in reduced.edges():
        if chain_len[e]:
            counts[e] = chain_len[e]
    return reduced, frozenset(red_blue), counts, keep


# -- top-level decision procedures ----------------------------------------------------


def realize_generic(cm: ColoredMap, cap: int = 100000) -> Tuple[EnrichedMap, Labeling]:
    """First matching (in canonical order) whose integrated labeling gives
    pairwise distinct critical labels.

    Label offsets shift every label equally, so they never affect
    distinctness; the returned labeling uses offset 1.
    """
    report = is_balanced(cm)
    if not report.balanced:
        raise NotBalanced("map is not balanced")
    for matching in enumerate_matchings(cm, cap):
        em = enrich(cm, matching)
        lab = integrate_labels(em)
        crit = lab.critical(em)
        if len(set(crit.values())) == em.n:
            return em, lab
    raise NoGenericRealization(
        "no matching yields pairwise distinct critical labels")


def is_realizable(cm: ColoredMap, cap: int = 100000) -> bool:
    """Whether the diagram is the preimage of a circle under some generic
    branched self-cover of the sphere.

    Fully constructive and independent of the balance conditions: search
    matchings, integrate labels, extract a monodromy tuple, reglue, and
    compare with the input.
    """
    m = cm.m
    if m.num_vertices % 2 or m.num_vertices < 2:
        return False
    target = cm.colored_code()
    for matching in enumerate_matchings(cm, cap):
        em = enrich(cm, matching)
        lab = integrate_labels(em)
        crit = lab.critical(em)
        if len(set(crit.values())) != em.n:
            continue
        try:
            t = monodromy(em, lab)
        except (InvalidInput, InvalidTuple):
            continue
        rebuilt = graph_from_monodromy(t)
        if rebuilt.colored.colored_code() == target:
            return True
    return False
