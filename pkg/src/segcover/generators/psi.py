"""Weighted instances from Partitioned Subgraph Isomorphism with a 3-regular pattern.

Every pattern vertex ``a`` gets a choice gadget on the line ``y = a`` whose
chains are the host vertices coloured ``a``; every host edge ``uv`` becomes a
vertical segment of tiny weight between the two gadgets' copies of its number.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from ..geometry import Point
from ..instance import Instance, Solution
from .choice import Chain, choice_cover_names, place_choice_gadget
from .meta import Builder, GadgetMeta

Edge = tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _other(e: Edge, u: int) -> int:
    return e[1] if e[0] == u else e[0]


@dataclass(frozen=True)
class PsiInput:
    H: tuple[Edge, ...]
    G: tuple[Edge, ...]
    colors: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "H", tuple(sorted({_edge(*e) for e in self.H})))
        object.__setattr__(self, "G", tuple(sorted({_edge(*e) for e in self.G})))
        object.__setattr__(self, "colors", dict(self.colors))

    @property
    def k(self) -> int:
        return len({v for e in self.H for v in e})

    def validate(self) -> None:
        k = self.k
        degree: dict[int, int] = {}
        for a, b in self.H:
            if a == b:
                raise ValueError(f"pattern graph has a loop at {a}")
            degree[a] = degree.get(a, 0) + 1
            degree[b] = degree.get(b, 0) + 1
        if set(degree) != set(range(1, k + 1)):
            raise ValueError(f"pattern vertices must be 1..{k}, got {sorted(degree)}")
        irregular = [a for a, d in sorted(degree.items()) if d != 3]
        if irregular:
            raise ValueError(f"pattern graph is not 3-regular (vertex {irregular[0]} has degree {degree[irregular[0]]})")
        h_edges = set(self.H)
        for u, v in self.G:
            if u not in self.colors or v not in self.colors:
                raise ValueError(f"host edge {u}-{v} has an uncoloured endpoint")
            if _edge(self.colors[u], self.colors[v]) not in h_edges:
                raise ValueError(
                    f"host edge {u}-{v} joins colours {self.colors[u]} and {self.colors[v]}, "
                    "which are not adjacent in the pattern"
                )


def pad_host(p: PsiInput, min_edges: int) -> tuple[PsiInput, dict[int, int]]:
    """Duplicate one host vertex (edges and colour included) until there are more than ``min_edges`` edges.

    Copies are twins of the original, so embeddings exist before iff after.
    Returns the padded input and a map copy -> original.
    """
    if len(p.G) > min_edges:
        return p, {}
    if not p.G:
        raise ValueError("host graph has no edges; nothing to pad with")
    source = min(v for e in p.G for v in e)
    nbrs = sorted({v for e in p.G for v in e if source in e} - {source})
    edges = list(p.G)
    colors = dict(p.colors)
    copies: dict[int, int] = {}
    fresh = max(max(colors), max(v for e in p.G for v in e)) + 1
    while len(edges) <= min_edges:
        copies[fresh] = source
        colors[fresh] = colors[source]
        edges.extend(_edge(fresh, v) for v in nbrs)
        fresh += 1
    return PsiInput(p.H, tuple(edges), colors), copies


def gen_psi(p: PsiInput) -> tuple[Instance, GadgetMeta]:
    p.validate()
    k = p.k
    p, copies = pad_host(p, 100 * k)
    colors = p.colors
    ell = len(p.H)

    # number host edges so that each colour class E_ab is one contiguous block
    def oriented(e: Edge, ab: Edge) -> Edge:
        u, v = e
        return (u, v) if colors[u] == ab[0] else (v, u)

    classes: dict[Edge, list[Edge]] = {ab: [] for ab in p.H}
    for e in p.G:
        classes[_edge(colors[e[0]], colors[e[1]])].append(e)
    xi: dict[Edge, int] = {}
    for ab in p.H:
        for e in sorted(classes[ab], key=lambda e: oriented(e, ab)):
            xi[e] = len(xi) + 1
    N = len(xi)
    eps = Fraction(1, N * N)
    delta = Fraction(1, N**4)
    W = k * (N + 1 - 6 * eps) + delta * ell

    incident: dict[int, list[Edge]] = {}
    for e in p.G:
        for v in e:
            incident.setdefault(v, []).append(e)

    b = Builder("psi")
    neighbour_order: dict[int, list[int]] = {}
    chain_vertices: dict[int, list[int]] = {}
    for a in range(1, k + 1):
        # pattern edges are numbered in sorted order, so this orders the blocks left to right
        nbrs = [y if x == a else x for x, y in p.H if a in (x, y)]
        neighbour_order[a] = nbrs
        chains = []
        for u in sorted(v for v, c in colors.items() if c == a):
            sets = [{xi[e] for e in incident.get(u, ()) if colors[_other(e, u)] == bt} for bt in nbrs]
            if all(sets):
                chains.append((u, Chain(tuple(frozenset(s) for s in sets))))
        chain_vertices[a] = [u for u, _ in chains]
        place_choice_gadget(b, N, chains, height=a, prefix=f"a{a}/", weigh_by_length=True)
    for e in sorted(p.G, key=xi.get):
        u, v = e
        x = xi[e]
        b.segment(f"s:{u}-{v}", Point.of(x, colors[u]), Point.of(x, colors[v]), delta, "edges")

    b.meta.params.update(
        k=k,
        ell=ell,
        k_prime=11 * k // 2,
        N=N,
        eps=eps,
        delta=delta,
        W=W,
        H=[list(e) for e in p.H],
        neighbour_order={str(a): v for a, v in neighbour_order.items()},
        chain_vertices={str(a): v for a, v in chain_vertices.items()},
        colors={str(v): c for v, c in sorted(colors.items())},
        xi=[[u, v, xi[(u, v)]] for u, v in sorted(xi, key=xi.get)],
        copies={str(c): o for c, o in copies.items()},
    )
    return b.build()


def build_psi_solution(meta: GadgetMeta, phi: Mapping[int, int]) -> Solution:
    """The cover of size ``11k/2`` and weight ``W`` induced by an embedding ``phi``."""
    params = meta.params
    k = int(params["k"])
    colors = {int(v): int(c) for v, c in params["colors"].items()}
    xi = {_edge(int(u), int(v)): int(x) for u, v, x in params["xi"]}
    phi = {int(a): int(u) for a, u in phi.items()}
    if set(phi) != set(range(1, k + 1)):
        raise ValueError(f"phi must map every pattern vertex 1..{k}")
    for a, u in phi.items():
        if colors.get(u) != a:
            raise ValueError(f"phi({a}) = {u} has colour {colors.get(u)}, not {a}")
    for a, c in params["H"]:
        if _edge(phi[a], phi[c]) not in xi:
            raise ValueError(f"phi is not an embedding: {phi[a]}-{phi[c]} is not a host edge")
    names = []
    for a in range(1, k + 1):
        picks = [xi[_edge(phi[a], bt)] for bt in (phi[x] for x in params["neighbour_order"][str(a)])]
        names += choice_cover_names(f"a{a}/", phi[a], picks)
    for a, c in params["H"]:
        u, v = _edge(phi[a], phi[c])
        names.append(f"s:{u}-{v}")
    return meta.solution(meta.segments[n] for n in names)
