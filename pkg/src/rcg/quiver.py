"""Dynkin quivers: orientations, Euler form, admissible orders and the
τ-orbit ordering of indecomposables that yields the leftmost word.

An arrow ``(i, j)`` means i -> j.  The Euler matrix is ``E[i][j] = δ_ij -
#(i -> j)``; on dimension vectors ⟨d, e⟩ = dᵀ E e, and E + Eᵀ is the Cartan
matrix.  The Auslander-Reiten translate acts on dimension vectors through
the Coxeter matrix Φ = -E⁻¹ Eᵀ (columns are vectors).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import flint

from .rootsys import (
    Root,
    RootSystem,
    Word,
    beta_roots,
    build_root_system,
    demazure_product,
    dynkin_edges,
    is_reduced,
    parse_type,
    sign_of,
)


class QuiverSyntaxError(ValueError):
    def __init__(self, message: str, column: int):
        super().__init__(f"column {column}: {message}")
        self.column = column


class QuiverConventionError(RuntimeError):
    """The τ-orbit dimension vectors disagree with the word's β-roots."""


@dataclass(frozen=True)
class Quiver:
    system: RootSystem
    arrows: frozenset[tuple[int, int]]

    def __post_init__(self):
        und = {tuple(sorted(a)) for a in self.arrows}
        edges = set(self.system.edges)
        if len(und) != len(self.arrows):
            raise ValueError("an edge is oriented twice")
        if und != edges:
            missing = sorted(edges - und)
            extra = sorted(und - edges)
            raise ValueError(f"orientation does not match the Dynkin graph (missing {missing}, extra {extra})")

    @property
    def rank(self) -> int:
        return self.system.rank

    @property
    def euler(self) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        e = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for i, j in self.arrows:
            e[i - 1][j - 1] -= 1
        return tuple(tuple(r) for r in e)

    def euler_form(self, d: Sequence[int], e: Sequence[int]) -> int:
        m = self.euler
        n = self.rank
        return sum(d[i] * m[i][j] * e[j] for i in range(n) if d[i] for j in range(n) if e[j])

    def is_source(self, v: int) -> bool:
        return all(j != v for _, j in self.arrows)

    def is_sink(self, v: int) -> bool:
        return all(i != v for i, _ in self.arrows)

    def __str__(self) -> str:
        return format_quiver(self)


def format_quiver(q: Quiver) -> str:
    arrows = ", ".join(f"{i}>{j}" for i, j in sorted(q.arrows, key=lambda a: (min(a), max(a))))
    return f"{q.system.name}: {arrows}" if arrows else f"{q.system.name}:"


def make_quiver(type_letter: str, rank: int, arrows) -> Quiver:
    return Quiver(build_root_system(type_letter, rank), frozenset(tuple(a) for a in arrows))


def linear_quiver(type_letter: str, rank: int) -> Quiver:
    """Every edge oriented from the smaller to the larger label."""
    return make_quiver(type_letter, rank, dynkin_edges(type_letter, rank))


_ARROW_RE = re.compile(r"\s*(\d+)\s*>\s*(\d+)\s*")


def parse_quiver(text: str) -> Quiver:
    """Parse ``"<TYPE><rank>: i>j, k>l, ..."`` (whitespace-insensitive)."""
    if ":" not in text:
        raise QuiverSyntaxError("expected ':' after the type", len(text) + 1)
    head, body = text.split(":", 1)
    try:
        letter, rank = parse_type(head)
    except ValueError as exc:
        raise QuiverSyntaxError(str(exc), 1) from None
    rs = build_root_system(letter, rank)
    offset = len(head) + 1
    arrows: list[tuple[int, int]] = []
    seen: dict[tuple[int, int], int] = {}
    if body.strip():
        col = offset
        for chunk in body.split(","):
            start = col + 1 + (len(chunk) - len(chunk.lstrip()))
            m = _ARROW_RE.fullmatch(chunk)
            if not m:
                raise QuiverSyntaxError(f"expected 'i>j', got {chunk.strip()!r}", start)
            i, j = int(m.group(1)), int(m.group(2))
            for v in (i, j):
                if not 1 <= v <= rank:
                    raise QuiverSyntaxError(f"vertex {v} out of range 1..{rank}", start)
            edge = (min(i, j), max(i, j))
            if edge not in rs.edges:
                raise QuiverSyntaxError(f"{i}-{j} is not an edge of {rs.name}", start)
            if edge in seen:
                raise QuiverSyntaxError(f"edge {edge[0]}-{edge[1]} oriented twice", start)
            seen[edge] = start
            arrows.append((i, j))
            col += len(chunk) + 1
    missing = sorted(set(rs.edges) - set(seen))
    if missing:
        a, b = missing[0]
        raise QuiverSyntaxError(f"edge {a}-{b} has no orientation", len(text) + 1)
    return Quiver(rs, frozenset(arrows))


def sigma(q: Quiver, v: int) -> Quiver:
    q.system.check_vertex(v)
    flipped = frozenset((j, i) if v in (i, j) else (i, j) for i, j in q.arrows)
    return Quiver(q.system, flipped)


def admissible_order(q: Quiver) -> tuple[int, ...]:
    """Topological order of the arrows; ties go to the smallest label."""
    indeg = {v: 0 for v in range(1, q.rank + 1)}
    for _, j in q.arrows:
        indeg[j] += 1
    order = []
    ready = sorted(v for v, d in indeg.items() if d == 0)
    while ready:
        v = ready.pop(0)
        order.append(v)
        for i, j in q.arrows:
            if i == v:
                indeg[j] -= 1
                if indeg[j] == 0:
                    ready.append(j)
        ready.sort()
    return tuple(order)


def is_admissible(q: Quiver, order: Sequence[int]) -> bool:
    pos = {v: k for k, v in enumerate(order)}
    return sorted(order) == list(range(1, q.rank + 1)) and all(pos[i] < pos[j] for i, j in q.arrows)


def injective_dims(q: Quiver) -> dict[int, Root]:
    """(dim I_i)_j = 1 iff there is a directed path j -> ... -> i."""
    n = q.rank
    out = {}
    for i in range(1, n + 1):
        reach = {i}
        frontier = [i]
        while frontier:
            v = frontier.pop()
            for a, b in q.arrows:
                if b == v and a not in reach:
                    reach.add(a)
                    frontier.append(a)
        out[i] = tuple(1 if j in reach else 0 for j in range(1, n + 1))
    return out


@lru_cache(maxsize=None)
def coxeter_matrix(q: Quiver) -> tuple[tuple[int, ...], ...]:
    n = q.rank
    e = flint.fmpq_mat(n, n, [c for row in q.euler for c in row])
    phi = -(e.inv() * e.transpose())
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            x = phi[i, j]
            if x.q != 1:
                raise QuiverConventionError("Coxeter matrix is not integral")
            row.append(int(x.p))
        rows.append(tuple(row))
    return tuple(rows)


def tau(q: Quiver, d: Sequence[int]) -> Root:
    c = coxeter_matrix(q)
    return tuple(sum(c[i][j] * d[j] for j in range(q.rank)) for i in range(q.rank))


@dataclass(frozen=True)
class IndecItem:
    vertex: int
    power: int
    dim: Root


@dataclass(frozen=True)
class IndecOrdering:
    quiver: Quiver
    order: tuple[int, ...]
    items: tuple[IndecItem, ...]

    @property
    def word(self) -> Word:
        return tuple(it.vertex for it in self.items)

    @property
    def roots(self) -> tuple[Root, ...]:
        return tuple(it.dim for it in self.items)

    def to_json(self) -> dict:
        return {
            "quiver": format_quiver(self.quiver),
            "order": list(self.order),
            "items": [{"vertex": it.vertex, "power": it.power, "dim": list(it.dim)} for it in self.items],
        }


def indec_ordering(q: Quiver, order: Sequence[int] | None = None) -> IndecOrdering:
    """τ-orbits of the injectives, round by round in an admissible order.

    Round j lists τ^j I_v for every vertex v (in ``order``) whose orbit is
    still a positive root.
    """
    if order is None:
        order = admissible_order(q)
    order = tuple(order)
    if not is_admissible(q, order):
        raise ValueError(f"{order} is not an admissible order for {format_quiver(q)}")
    rs = q.system
    current = dict(injective_dims(q))
    alive = list(order)
    items: list[IndecItem] = []
    power = 0
    while alive:
        nxt = []
        for v in alive:
            d = current[v]
            if sign_of(d) > 0 and rs.is_positive(d):
                items.append(IndecItem(v, power, d))
                current[v] = tau(q, d)
                nxt.append(v)
        alive = nxt
        power += 1
        if len(items) > rs.positive_count:
            raise QuiverConventionError("τ-orbits produced too many indecomposables")
    ordering = IndecOrdering(q, order, tuple(items))
    word = ordering.word
    betas = beta_roots(rs, word)
    if len(items) != rs.positive_count or betas != ordering.roots:
        raise QuiverConventionError(
            f"τ-orbit dimension vectors {ordering.roots} do not match the β-roots {betas}"
        )
    return ordering


def leftmost_word(q: Quiver, order: Sequence[int] | None = None) -> Word:
    rs = q.system
    w = indec_ordering(q, order).word
    if not is_reduced(rs, w) or len(demazure_product(rs, w)) != rs.positive_count:
        raise QuiverConventionError(f"leftmost word {w} is not a reduced word for w0")
    return w


def all_orientations(type_letter: str, rank: int):
    edges = dynkin_edges(type_letter, rank)
    for mask in range(2 ** len(edges)):
        arrows = [(a, b) if not (mask >> k) & 1 else (b, a) for k, (a, b) in enumerate(edges)]
        yield make_quiver(type_letter, rank, arrows)
