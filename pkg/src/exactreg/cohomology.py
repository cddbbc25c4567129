"""First cohomology of the collared Anderson-Putnam graph and the substitution action on it."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactalg import BezoutWitness, IntPoly, Matrix, eventual_image, minpoly_matrix, reduced_resultant
from .exactalg.lattice import NotCoprimeError, resultant
from .exactalg.poly import gcd_poly
from .language import BlockSystem, anchored_count_vector, collar, factors, min_anchor_order
from .substitution import PerronData, Substitution, Word, perron_data


class CohomologyError(RuntimeError):
    """Internal inconsistency in the cohomology computation."""


@dataclass(frozen=True)
class APGraph:
    """Edges are collared letters; vertices are glued edge endpoints."""

    num_vertices: int
    tail: tuple[int, ...]
    head: tuple[int, ...]
    tree: tuple[bool, ...]
    tree_order: tuple[int, ...]
    tree_from: tuple[int, ...]
    root: int

    @property
    def num_edges(self) -> int:
        return len(self.tail)

    @property
    def nontree(self) -> tuple[int, ...]:
        return tuple(e for e, t in enumerate(self.tree) if not t)

    @property
    def h1_dim(self) -> int:
        return self.num_edges - self.num_vertices + 1

    def reduce(self, cochain: Sequence) -> tuple:
        """H^1 coordinates (on non-tree edges) of an edge cochain.

        Subtracts the coboundary of the potential that kills the cochain on
        tree edges, with the root pinned to zero.
        """
        pot = [0] * self.num_vertices
        for e, frm in zip(self.tree_order, self.tree_from):
            if frm == self.tail[e]:
                pot[self.head[e]] = pot[frm] + cochain[e]
            else:
                pot[self.tail[e]] = pot[frm] - cochain[e]
        return tuple(cochain[e] - (pot[self.head[e]] - pot[self.tail[e]]) for e in self.nontree)

    def cochain(self, coords: Sequence) -> list:
        """Edge cochain supported on non-tree edges with the given coordinates."""
        out = [0] * self.num_edges
        for e, v in zip(self.nontree, coords):
            out[e] = v
        return out


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def build_ap_graph(bs: BlockSystem) -> APGraph:
    m = bs.radius
    n = bs.size
    # endpoint 2e is the left end of edge e, 2e+1 its right end
    uf = _UnionFind(2 * n)
    for w in factors(bs.substitution, 2 * m + 2):
        uf.union(2 * bs.lookup(w[:-1]) + 1, 2 * bs.lookup(w[1:]))
    label: dict[int, int] = {}
    for end in range(2 * n):
        r = uf.find(end)
        if r not in label:
            label[r] = len(label)
    tail = tuple(label[uf.find(2 * e)] for e in range(n))
    head = tuple(label[uf.find(2 * e + 1)] for e in range(n))
    nv = len(label)
    adj: list[list[tuple[int, int]]] = [[] for _ in range(nv)]
    for e in range(n):
        adj[tail[e]].append((e, head[e]))
        adj[head[e]].append((e, tail[e]))
    root = 0
    seen = [False] * nv
    seen[root] = True
    tree = [False] * n
    order, order_from = [], []
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for e, u in sorted(adj[v]):
            if not seen[u]:
                seen[u] = True
                tree[e] = True
                order.append(e)
                order_from.append(v)
                queue.append(u)
    if not all(seen):
        raise CohomologyError("Anderson-Putnam graph is disconnected")
    return APGraph(nv, tail, head, tuple(tree), tuple(order), tuple(order_from), root)


def h1_action(bs: BlockSystem, g: APGraph) -> Matrix:
    """Pullback of the substitution on H^1 in the non-tree-edge basis."""
    _check_paths(bs, g)
    cols = []
    for e in g.nontree:
        beta = [bs.matrix[e, c] for c in range(bs.size)]
        cols.append(g.reduce(beta))
    return Matrix.from_columns(cols)


def _check_paths(bs: BlockSystem, g: APGraph) -> None:
    for c, rule in enumerate(bs.rules):
        for a, b in zip(rule, rule[1:]):
            if g.head[a] != g.tail[b]:
                raise CohomologyError(f"image of collared letter {c} is not an edge path")


@dataclass(frozen=True)
class CohomologyPresentation:
    substitution: Substitution
    perron: PerronData
    block_system: BlockSystem
    graph: APGraph
    A0: Matrix
    basis: tuple[tuple[int, ...], ...]
    A: Matrix
    p: IntPoly
    q: IntPoly
    r: IntPoly
    witness: BezoutWitness

    @property
    def k(self) -> int:
        return len(self.basis)

    @property
    def D(self) -> int:
        return self.witness.D

    @property
    def resultant(self) -> int:
        return resultant(self.q, self.r)

    @property
    def basis_matrix(self) -> Matrix:
        return Matrix.from_columns(self.basis)

    def to_eventual(self, h1: Sequence, order: int) -> tuple[Fraction, ...]:
        """Eventual-image coordinates of a class observed at supertile order ``order``.

        Pushes forward ``dim`` times into the eventual image, then undoes
        the accumulated power of A.
        """
        dim = self.A0.nrows
        z = self.A0 ** dim @ tuple(h1)
        w = self.basis_matrix.solve(z)
        return tuple(self.A ** (-(dim + order)) @ w)

    def trace_functional(self, freqs: Sequence) -> tuple:
        """Frequency pairing on eventual-image coordinates."""
        out = []
        for b in self.basis:
            total = 0
            for e, v in zip(self.graph.nontree, b):
                if v:
                    total = freqs[e] * v + total
            out.append(total)
        return tuple(out)


def action_polynomials(s: Substitution, m: int = 1, perron: PerronData | None = None) -> CohomologyPresentation:
    perron = perron or perron_data(s)
    bs = collar(s, m)
    g = build_ap_graph(bs)
    a0 = h1_action(bs, g)
    basis = eventual_image(a0)
    if not basis:
        raise CohomologyError("eventual image of the H^1 action is zero")
    bmat = Matrix.from_columns(basis)
    cols = [bmat.solve(a0 @ b) for b in basis]
    a = Matrix.from_columns(cols)
    if not a.is_integer() and all(v.denominator == 1 for row in a.rows for v in row):
        a = Matrix([[int(v) for v in row] for row in a.rows])
    p = minpoly_matrix(a)
    q = perron.q
    if not q.divides(p):
        raise CohomologyError(f"minimal polynomial of lambda {q} does not divide p = {p}")
    r = p.exact_div(q)
    if gcd_poly(q, r).degree > 0:
        raise NotCoprimeError(f"q = {q} and r = {r} share a root; q^2 divides p")
    return CohomologyPresentation(s, perron, bs, g, a0, tuple(basis), a, p, q, r,
                                  reduced_resultant(q, r))


def cohomology_rank(s: Substitution, m: int = 1) -> int:
    bs = collar(s, m)
    g = build_ap_graph(bs)
    return len(eventual_image(h1_action(bs, g)))


@dataclass(frozen=True)
class PatchClass:
    patch: Word
    coords: tuple[Fraction, ...]


def patch_class(patch: Sequence[int], pres: CohomologyPresentation, order: int | None = None) -> PatchClass:
    """Class of the indicator cochain of ``patch`` in eventual-image coordinates."""
    p = tuple(patch)
    bs = pres.block_system
    n = min_anchor_order(bs, len(p)) if order is None else order
    values = anchored_count_vector(p, bs, n).values
    return PatchClass(p, pres.to_eventual(pres.graph.reduce(values), n))
