"""Exhaustive generation of connected 4-valent sphere maps.

With the vertex rotation fixed to the standard blocks (1 2 3 4)(5 6 7 8)...,
every 4-valent map appears as some edge involution alpha; the search pairs
the smallest unpaired dart first, normalizing the choice of a fresh vertex
block (least untouched block, first dart), and prunes by tracking partial
face orbits so that only genus-0 completions survive.  Duplicates are
removed by canonical form.

The mass formula sum(4V / |Aut|) over the classes equals the number of
rooted 4-valent sphere maps with V vertices, 2 * 3^V (2V)! / (V! (V+2)!),
which the test suite uses as an exhaustiveness oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List

from .errors import LimitExceeded
from .maps import ColoredMap, CombinatorialMap, checkerboard


def rooted_count(v: int) -> int:
    """Rooted 4-valent sphere maps with v vertices (= rooted planar maps
    with v edges)."""
    return 2 * 3 ** v * math.factorial(2 * v) // (
        math.factorial(v) * math.factorial(v + 2))


def enumerate_four_valent(n_vertices: int) -> List[CombinatorialMap]:
    """All connected 4-valent sphere maps with the given number of vertices,
    one representative per orientation-preserving isomorphism class."""
    V = n_vertices
    n = 4 * V
    target_faces = V + 2
    sigma = [0] * (n + 1)
    for v in range(V):
        for i in range(4):
            sigma[4 * v + 1 + i] = 4 * v + 1 + (i + 1) % 4

    alpha = [0] * (n + 1)
    phi_next = [0] * (n + 1)  # partial phi, 0 = undefined
    touched = [False] * V
    found = {}

    def closed_faces(d: int, c: int) -> int:
        # new arrows d -> sigma[c] and c -> sigma[d] were just added;
        # count freshly completed phi-cycles (1 if both arrows lie on the
        # same cycle, else one per returning walk)
        x = phi_next[d]
        through_c = False
        while x and x != d:
            if x == c:
                through_c = True
            x = phi_next[x]
        if x == d:
            if through_c:
                return 1
            closed = 1
        else:
            closed = 0
        x = phi_next[c]
        while x and x != c:
            x = phi_next[x]
        return closed + (1 if x == c else 0)

    def rec(first_free: int, faces_done: int, pairs_left: int):
        d = first_free
        while d <= n and alpha[d]:
            d += 1
        if d > n:
            if faces_done == target_faces:
                try:
                    m = CombinatorialMap(sigma, alpha)
                except Exception:
                    return
                code = m.canonical_code()
                if code not in found:
                    found[code] = m
            return
        blk_d = (d - 1) // 4
        was_touched_d = touched[blk_d]
        touched[blk_d] = True
        cands = []
        fresh = None
        for c in range(d + 1, n + 1):
            if alpha[c]:
                continue
            blk = (c - 1) // 4
            if touched[blk]:
                cands.append(c)
            elif fresh is None and c == 4 * blk + 1:
                fresh = c
        if fresh is not None:
            cands.append(fresh)
        for c in cands:
            blk_c = (c - 1) // 4
            was_touched_c = touched[blk_c]
            touched[blk_c] = True
            alpha[d], alpha[c] = c, d
            phi_next[d] = sigma[c]
            phi_next[c] = sigma[d]
            fd = faces_done + closed_faces(d, c)
            if fd <= target_faces and fd + 2 * (pairs_left - 1) >= target_faces:
                rec(d + 1, fd, pairs_left - 1)
            alpha[d] = alpha[c] = 0
            phi_next[d] = phi_next[c] = 0
            touched[blk_c] = was_touched_c
        touched[blk_d] = was_touched_d

    rec(1, 0, n // 2)
    return [found[c] for c in sorted(found)]


@dataclass
class Corpus:
    """Every connected 4-valent sphere map with 2, 4, ..., max_vertices
    vertices, in both colorings, deduplicated up to colored isomorphism."""
    max_vertices: int
    colored: List[ColoredMap]
    uncolored: List[CombinatorialMap]


def build_corpus(max_vertices: int) -> Corpus:
    if max_vertices > 6:
        raise LimitExceeded("corpus generation capped at 6 vertices")
    uncolored: List[CombinatorialMap] = []
    colored: List[ColoredMap] = []
    seen = set()
    for v in range(2, max_vertices + 1, 2):
        for m in enumerate_four_valent(v):
            uncolored.append(m)
            for cm in checkerboard(m):
                code = cm.colored_code()
                if code not in seen:
                    seen.add(code)
                    colored.append(cm)
    return Corpus(max_vertices, colored, uncolored)
