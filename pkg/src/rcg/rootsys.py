"""Simply-laced root systems and Weyl-word combinatorics.

Vertices are numbered 1..n (Bourbaki):

* ``A_n``: the path 1 - 2 - ... - n.
* ``D_n``: the path 1 - ... - (n-2), with n-1 and n both attached to n-2.
* ``E_n``: the path 1 - 3 - 4 - ... - n, with 2 attached to 4.

Roots are integer coordinate tuples over the simple roots.  Weyl elements
are stored as the tuple of images of the simple roots.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

Root = tuple[int, ...]
Word = tuple[int, ...]


class RootSystemError(ValueError):
    pass


def dynkin_edges(type_letter: str, rank: int) -> tuple[tuple[int, int], ...]:
    t = type_letter.upper()
    n = rank
    if t == "A":
        if n < 1:
            raise RootSystemError("A_n needs n >= 1")
        return tuple((i, i + 1) for i in range(1, n))
    if t == "D":
        if n < 4:
            raise RootSystemError("D_n needs n >= 4")
        path = [(i, i + 1) for i in range(1, n - 2)]
        return tuple(path + [(n - 2, n - 1), (n - 2, n)])
    if t == "E":
        if n not in (6, 7, 8):
            raise RootSystemError("E_n needs n in {6, 7, 8}")
        edges = [(1, 3), (2, 4), (3, 4)] + [(i, i + 1) for i in range(4, n)]
        return tuple(sorted(edges))
    raise RootSystemError(f"unknown type letter {type_letter!r}; expected A, D or E")


_TYPE_RE = re.compile(r"^\s*([ADEade])\s*_?\s*(\d+)\s*$")


def parse_type(text: str) -> tuple[str, int]:
    """``"A3"`` / ``"D_4"`` / ``"e8"`` -> (letter, rank)."""
    m = _TYPE_RE.match(text)
    if not m:
        raise RootSystemError(f"malformed type {text!r}; expected e.g. A3, D4, E6")
    letter, rank = m.group(1).upper(), int(m.group(2))
    dynkin_edges(letter, rank)
    return letter, rank


def format_word(w: Sequence[int]) -> str:
    return ",".join(str(i) for i in w)


def parse_word(text: str, rank: int | None = None) -> Word:
    s = text.strip()
    if not s:
        return ()
    out = []
    col = 0
    for tok in s.split(","):
        stripped = tok.strip()
        start = col + (len(tok) - len(tok.lstrip()))
        if not stripped.isdigit():
            raise ValueError(f"column {start + 1}: expected a vertex number, got {stripped!r}")
        v = int(stripped)
        if rank is not None and not 1 <= v <= rank:
            raise ValueError(f"column {start + 1}: vertex {v} out of range 1..{rank}")
        out.append(v)
        col += len(tok) + 1
    return tuple(out)


@dataclass(frozen=True)
class RootSystem:
    type_letter: str
    rank: int
    edges: tuple[tuple[int, int], ...]
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Root, ...]
    pos_index: dict = field(repr=False, compare=False, hash=False)

    @property
    def name(self) -> str:
        return f"{self.type_letter}{self.rank}"

    @property
    def positive_count(self) -> int:
        return len(self.positive_roots)

    @property
    def roots(self) -> tuple[Root, ...]:
        neg = tuple(negate(r) for r in reversed(self.positive_roots))
        return neg + self.positive_roots

    def simple(self, i: int) -> Root:
        self.check_vertex(i)
        v = [0] * self.rank
        v[i - 1] = 1
        return tuple(v)

    def check_vertex(self, i: int) -> None:
        if not 1 <= i <= self.rank:
            raise RootSystemError(f"vertex {i} out of range 1..{self.rank}")

    def check_word(self, w: Iterable[int]) -> Word:
        w = tuple(int(i) for i in w)
        for i in w:
            self.check_vertex(i)
        return w

    def is_root(self, x: Sequence[int]) -> bool:
        x = tuple(x)
        return x in self.pos_index or negate(x) in self.pos_index

    def is_positive(self, x: Sequence[int]) -> bool:
        return tuple(x) in self.pos_index

    def root_index(self, x: Sequence[int]) -> int:
        """Index of a positive root in ``positive_roots``."""
        try:
            return self.pos_index[tuple(x)]
        except KeyError:
            raise RootSystemError(f"{tuple(x)} is not a positive root of {self.name}") from None

    def neighbors(self, i: int) -> list[int]:
        return [j for j in range(1, self.rank + 1) if self.cartan[i - 1][j - 1] == -1]

    def highest_root(self) -> Root:
        return max(self.positive_roots, key=height)


def negate(x: Sequence[int]) -> Root:
    return tuple(-c for c in x)


def add(x: Sequence[int], y: Sequence[int]) -> Root:
    return tuple(a + b for a, b in zip(x, y))


def height(x: Sequence[int]) -> int:
    return sum(x)


def sign_of(x: Sequence[int]) -> int:
    """+1 for positive roots, -1 for negative ones (0 for the zero vector)."""
    for c in x:
        if c:
            return 1 if c > 0 else -1
    return 0


def pairing_vec(rs: RootSystem, x: Sequence[int], y: Sequence[int]) -> int:
    c = rs.cartan
    n = rs.rank
    return sum(x[i] * c[i][j] * y[j] for i in range(n) if x[i] for j in range(n) if y[j])


def pairing(rs: RootSystem, x: Sequence[int], y: Sequence[int]) -> int:
    return pairing_vec(rs, x, y)


def simple_pairing(rs: RootSystem, i: int, x: Sequence[int]) -> int:
    row = rs.cartan[i - 1]
    return sum(row[j] * x[j] for j in range(rs.rank) if x[j])


def reflect(rs: RootSystem, i: int, x: Sequence[int]) -> Root:
    p = simple_pairing(rs, i, x)
    if not p:
        return tuple(x)
    out = list(x)
    out[i - 1] -= p
    return tuple(out)


def reflect_word(rs: RootSystem, word: Sequence[int], x: Sequence[int]) -> Root:
    """Apply s_{w_1} s_{w_2} ... s_{w_k} to x (rightmost first)."""
    for i in reversed(word):
        x = reflect(rs, i, x)
    return tuple(x)


@lru_cache(maxsize=None)
def build_root_system(type_letter: str, rank: int) -> RootSystem:
    letter = type_letter.upper()
    edges = dynkin_edges(letter, rank)
    n = rank
    cartan = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        cartan[i - 1][j - 1] = cartan[j - 1][i - 1] = -1
    cartan_t = tuple(tuple(r) for r in cartan)
    # reflection closure from the simple roots
    proto = RootSystem(letter, n, edges, cartan_t, (), {})
    simples = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    seen = set(simples)
    queue = deque(simples)
    while queue:
        r = queue.popleft()
        for i in range(1, n + 1):
            s = reflect(proto, i, r)
            if s not in seen and negate(s) not in seen and sign_of(s) > 0:
                seen.add(s)
                queue.append(s)
    pos = tuple(sorted(seen, key=lambda r: (height(r), r)))
    rs = RootSystem(letter, n, edges, cartan_t, pos, {r: k for k, r in enumerate(pos)})
    expected = {"A": n * (n + 1) // 2, "D": n * (n - 1), "E": {6: 36, 7: 63, 8: 120}.get(n)}[letter]
    if len(pos) != expected:
        raise RootSystemError(f"{rs.name}: closure produced {len(pos)} roots, expected {expected}")
    return rs


def root_system(name: str) -> RootSystem:
    return build_root_system(*parse_type(name))


# --------------------------------------------------------------------------
# Weyl elements
# --------------------------------------------------------------------------

WeylElement = tuple[Root, ...]


def identity_element(rs: RootSystem) -> WeylElement:
    return tuple(rs.simple(i) for i in range(1, rs.rank + 1))


def act(rs: RootSystem, w: WeylElement, x: Sequence[int]) -> Root:
    out = [0] * rs.rank
    for i, c in enumerate(x):
        if c:
            img = w[i]
            for j in range(rs.rank):
                out[j] += c * img[j]
    return tuple(out)


def element_from_word(rs: RootSystem, word: Sequence[int]) -> WeylElement:
    return tuple(reflect_word(rs, word, rs.simple(i)) for i in range(1, rs.rank + 1))


def compose(rs: RootSystem, u: WeylElement, v: WeylElement) -> WeylElement:
    """u*v (v acts first)."""
    return tuple(act(rs, u, img) for img in v)


def times_simple(rs: RootSystem, w: WeylElement, i: int) -> WeylElement:
    """w * s_i."""
    return tuple(act(rs, w, reflect(rs, i, rs.simple(j))) for j in range(1, rs.rank + 1))


def simple_times(rs: RootSystem, i: int, w: WeylElement) -> WeylElement:
    """s_i * w."""
    return tuple(reflect(rs, i, img) for img in w)


def length(rs: RootSystem, w: WeylElement) -> int:
    return sum(1 for r in rs.positive_roots if sign_of(act(rs, w, r)) < 0)


def inverse_element(rs: RootSystem, w: WeylElement) -> WeylElement:
    return element_from_word(rs, tuple(reversed(reduced_word_of(rs, w))))


def reduced_word_of(rs: RootSystem, w: WeylElement) -> Word:
    """A reduced word for w by peeling right descents (w(α_i) < 0)."""
    letters: list[int] = []
    while True:
        for i in range(1, rs.rank + 1):
            if sign_of(w[i - 1]) < 0:
                letters.append(i)
                w = times_simple(rs, w, i)
                break
        else:
            break
    return tuple(reversed(letters))


def lexmin_reduced_word(rs: RootSystem, w: WeylElement) -> Word:
    """Lexicographically smallest reduced word: greedily strip the smallest left descent."""
    letters: list[int] = []
    current = w
    ell = length(rs, current)
    while ell:
        for i in range(1, rs.rank + 1):
            cand = simple_times(rs, i, current)
            cl = length(rs, cand)
            if cl < ell:
                letters.append(i)
                current, ell = cand, cl
                break
    return tuple(letters)


@lru_cache(maxsize=None)
def longest_element(rs: RootSystem) -> WeylElement:
    w = identity_element(rs)
    grew = True
    while grew:
        grew = False
        for i in range(1, rs.rank + 1):
            if sign_of(w[i - 1]) > 0:
                w = times_simple(rs, w, i)
                grew = True
                break
    return w


def longest_word(rs: RootSystem) -> Word:
    return lexmin_reduced_word(rs, longest_element(rs))


def opposition(rs: RootSystem, i: int) -> int:
    """ι with w0(α_i) = −α_{ι(i)}."""
    img = longest_element(rs)[i - 1]
    j = [k for k, c in enumerate(img) if c][0]
    return j + 1


# --------------------------------------------------------------------------
# words
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class WordAnalysis:
    is_reduced: bool
    beta_roots: tuple[Root, ...]
    weyl_perm: WeylElement


def beta_roots(rs: RootSystem, word: Sequence[int]) -> tuple[Root, ...]:
    out = []
    for k, i in enumerate(word):
        out.append(reflect_word(rs, word[:k], rs.simple(i)))
    return tuple(out)


def word_analysis(rs: RootSystem, word: Sequence[int]) -> WordAnalysis:
    word = rs.check_word(word)
    betas = beta_roots(rs, word)
    reduced = all(sign_of(b) > 0 for b in betas) and len(set(betas)) == len(betas)
    return WordAnalysis(reduced, betas, element_from_word(rs, word))


def is_reduced(rs: RootSystem, word: Sequence[int]) -> bool:
    return word_analysis(rs, word).is_reduced


@dataclass(frozen=True)
class DemazureResult:
    demazure: Word
    prefix_to_w0: Word


def demazure_product(rs: RootSystem, word: Sequence[int]) -> Word:
    """0-Hecke product of the letters, as a reduced word."""
    out: list[int] = []
    w = identity_element(rs)
    for i in rs.check_word(word):
        # appending s_i raises length iff w(α_i) > 0
        if sign_of(w[i - 1]) > 0:
            out.append(i)
            w = times_simple(rs, w, i)
    return tuple(out)


def demazure_and_complete(rs: RootSystem, word: Sequence[int]) -> DemazureResult:
    dem = demazure_product(rs, word)
    d = element_from_word(rs, dem)
    x = compose(rs, longest_element(rs), inverse_element(rs, d))
    prefix = reduced_word_of(rs, x)
    full = prefix + dem
    if len(full) != rs.positive_count or not is_reduced(rs, full):
        raise RootSystemError("completion to the longest element failed")
    return DemazureResult(dem, prefix)


# --------------------------------------------------------------------------
# braid and commutation moves
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Move:
    kind: str  # "commutation" or "braid"
    position: int  # 0-based index of the first letter touched

    def __str__(self) -> str:
        return f"{self.kind}({self.position})"


def applicable_moves(rs: RootSystem, word: Sequence[int]) -> list[Move]:
    moves = []
    c = rs.cartan
    for k in range(len(word) - 1):
        i, j = word[k], word[k + 1]
        if i != j and c[i - 1][j - 1] == 0:
            moves.append(Move("commutation", k))
        if k + 2 < len(word) and word[k + 2] == i and c[i - 1][j - 1] == -1:
            moves.append(Move("braid", k))
    return moves


def apply_move(rs: RootSystem, word: Sequence[int], move: Move) -> Word:
    w = list(word)
    k = move.position
    if move.kind == "commutation":
        if k + 1 >= len(w) or w[k] == w[k + 1] or rs.cartan[w[k] - 1][w[k + 1] - 1] != 0:
            raise RootSystemError(f"commutation not applicable at {k} in {format_word(word)}")
        w[k], w[k + 1] = w[k + 1], w[k]
    elif move.kind == "braid":
        if (
            k + 2 >= len(w)
            or w[k] != w[k + 2]
            or rs.cartan[w[k] - 1][w[k + 1] - 1] != -1
        ):
            raise RootSystemError(f"braid not applicable at {k} in {format_word(word)}")
        i, j = w[k], w[k + 1]
        w[k : k + 3] = [j, i, j]
    else:
        raise RootSystemError(f"unknown move kind {move.kind!r}")
    return tuple(w)


def reduced_words(rs: RootSystem, word: Sequence[int], limit: int | None = None) -> list[Word]:
    """All reduced words of the same element, by closure under moves."""
    start = rs.check_word(word)
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for mv in applicable_moves(rs, u):
            v = apply_move(rs, u, mv)
            if v not in seen:
                seen.add(v)
                if limit is not None and len(seen) > limit:
                    raise RootSystemError(f"more than {limit} reduced words")
                queue.append(v)
    return sorted(seen)


def move_path(rs: RootSystem, source: Sequence[int], target: Sequence[int]) -> list[Move]:
    """Shortest move sequence taking ``source`` to ``target`` (breadth-first)."""
    source, target = tuple(source), tuple(target)
    if source == target:
        return []
    parent: dict[Word, tuple[Word, Move] | None] = {source: None}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for mv in applicable_moves(rs, u):
            v = apply_move(rs, u, mv)
            if v in parent:
                continue
            parent[v] = (u, mv)
            if v == target:
                path = []
                node = v
                while parent[node] is not None:
                    prev, m = parent[node]
                    path.append(m)
                    node = prev
                return path[::-1]
            queue.append(v)
    raise RootSystemError(f"{format_word(target)} is not reachable from {format_word(source)}")
