"""Simply-laced Lie algebra with a Chevalley basis from the Euler-form cocycle.

Brackets::

    [h_i, e_γ]    = (α_i, γ) e_γ
    [e_γ, e_δ]    = ζ(γ)ζ(δ)ζ(γ+δ) (-1)^⟨γ,δ⟩ e_{γ+δ}    (γ+δ a root)
    [e_γ, e_{-γ}] = -h_γ,   h_γ = Σ c_i h_i for γ = Σ c_i α_i

⟨-,-⟩ is the quiver's Euler form and ζ is an optional sign twist with
ζ(γ) = ζ(-γ).  The basis is graded by height: negative roots (ascending),
then h_1..h_n at height 0, then positive roots.
"""

from __future__ import annotations

import hashlib
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import flint

from .quiver import Quiver
from .rootsys import Root, RootSystem, add, height, negate, sign_of, simple_pairing


class AlgebraAxiomError(RuntimeError):
    """A Chevalley-basis axiom failed: the sign convention is inconsistent."""


Twist = tuple[int, ...]  # one sign per positive root, in RootSystem order


def random_twist(rs: RootSystem, rng: random.Random) -> Twist:
    return tuple(rng.choice((1, -1)) for _ in rs.positive_roots)


@dataclass(frozen=True)
class BasisLabel:
    kind: str  # "h" or "e"
    vertex: int = 0
    root: Root = ()

    def __str__(self) -> str:
        if self.kind == "h":
            return f"h{self.vertex}"
        return f"e{list(self.root)}"


class ChevalleyAlgebra:
    def __init__(self, quiver: Quiver, twist: Twist | None = None):
        rs = quiver.system
        self.quiver = quiver
        self.system = rs
        n = rs.rank
        if twist is None:
            twist = (1,) * rs.positive_count
        twist = tuple(int(z) for z in twist)
        if len(twist) != rs.positive_count or any(z not in (1, -1) for z in twist):
            raise ValueError("a twist assigns ±1 to every positive root")
        self.twist = twist
        pos = rs.positive_roots
        labels = [BasisLabel("e", root=negate(r)) for r in reversed(pos)]
        labels += [BasisLabel("h", vertex=i) for i in range(1, n + 1)]
        labels += [BasisLabel("e", root=r) for r in pos]
        self.basis = tuple(labels)
        self.dim = len(labels)
        self.cartan_offset = len(pos)
        self._root_index = {lab.root: k for k, lab in enumerate(labels) if lab.kind == "e"}
        self.heights = tuple(0 if lab.kind == "h" else height(lab.root) for lab in labels)
        self._table: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}
        self._ad_cache: dict[int, flint.fmpq_mat] = {}
        # scratch space for derived read-only data (n_i matrices, etc.)
        self.cache: dict = {}
        self._build_table()

    # indexing ---------------------------------------------------------------
    def index_of_root(self, gamma: Sequence[int]) -> int:
        try:
            return self._root_index[tuple(gamma)]
        except KeyError:
            raise ValueError(f"{tuple(gamma)} is not a root of {self.system.name}") from None

    def index_of_cartan(self, i: int) -> int:
        self.system.check_vertex(i)
        return self.cartan_offset + i - 1

    def root_at(self, idx: int) -> Root:
        lab = self.basis[idx]
        if lab.kind != "e":
            raise ValueError(f"basis element {lab} is not a root vector")
        return lab.root

    def zeta(self, gamma: Sequence[int]) -> int:
        g = tuple(gamma)
        if sign_of(g) < 0:
            g = negate(g)
        return self.twist[self.system.root_index(g)]

    # structure constants ------------------------------------------------------
    def _cocycle(self, gamma: Root, delta: Root) -> int:
        return -1 if self.quiver.euler_form(gamma, delta) % 2 else 1

    def structure_constant(self, gamma: Sequence[int], delta: Sequence[int]) -> int:
        gamma, delta = tuple(gamma), tuple(delta)
        s = add(gamma, delta)
        if not self.system.is_root(s):
            raise ValueError(f"{gamma} + {delta} is not a root")
        return self.zeta(gamma) * self.zeta(delta) * self.zeta(s) * self._cocycle(gamma, delta)

    def _bracket_pair(self, a: int, b: int) -> tuple[tuple[int, int], ...]:
        la, lb = self.basis[a], self.basis[b]
        rs = self.system
        if la.kind == "h" and lb.kind == "h":
            return ()
        if la.kind == "h":
            c = simple_pairing(rs, la.vertex, lb.root)
            return ((b, c),) if c else ()
        if lb.kind == "h":
            c = -simple_pairing(rs, lb.vertex, la.root)
            return ((a, c),) if c else ()
        s = add(la.root, lb.root)
        if not any(s):
            return tuple(
                (self.cartan_offset + i, -c) for i, c in enumerate(la.root) if c
            )
        if rs.is_root(s):
            return ((self._root_index[s], self.structure_constant(la.root, lb.root)),)
        return ()

    def _build_table(self) -> None:
        for a in range(self.dim):
            for b in range(self.dim):
                t = self._bracket_pair(a, b)
                if t:
                    self._table[(a, b)] = t

    def bracket_basis(self, a: int, b: int) -> tuple[tuple[int, int], ...]:
        return self._table.get((a, b), ())

    def bracket(self, x: Sequence, y: Sequence) -> list[Fraction]:
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError("vectors must have the algebra dimension")
        out = [Fraction(0)] * self.dim
        xs = [(i, Fraction(v)) for i, v in enumerate(x) if v]
        ys = [(j, Fraction(v)) for j, v in enumerate(y) if v]
        for i, xv in xs:
            for j, yv in ys:
                for k, c in self._table.get((i, j), ()):
                    out[k] += c * xv * yv
        return out

    def gamma_const(self, x: Sequence[int], y: Sequence[int]) -> int:
        return self.structure_constant(x, y)

    def ad_matrix(self, idx: int) -> flint.fmpq_mat:
        """Matrix of ad(basis[idx]); column j holds [basis[idx], basis[j]]."""
        m = self._ad_cache.get(idx)
        if m is None:
            m = flint.fmpq_mat(self.dim, self.dim)
            for j in range(self.dim):
                for k, c in self._table.get((idx, j), ()):
                    m[k, j] = c
            self._ad_cache[idx] = m
        return m

    def ad_root(self, gamma: Sequence[int]) -> flint.fmpq_mat:
        return self.ad_matrix(self.index_of_root(gamma))

    def unit(self, idx: int) -> list[Fraction]:
        v = [Fraction(0)] * self.dim
        v[idx] = Fraction(1)
        return v

    def fingerprint(self) -> str:
        """Short hash of the root-vector structure-constant table."""
        h = hashlib.sha256()
        h.update(self.system.name.encode())
        for (a, b), t in sorted(self._table.items()):
            la, lb = self.basis[a], self.basis[b]
            if la.kind == "e" and lb.kind == "e":
                h.update(repr((a, b, t)).encode())
        return h.hexdigest()[:12]

    # axioms -------------------------------------------------------------------
    def verify_axioms(self, sample: int | None = None, seed: int = 0) -> None:
        """Check antisymmetry, the Cartan action, integrality and Jacobi.

        Jacobi runs over all triples i < j < k unless ``sample`` is given.
        """
        rs = self.system
        for (a, b), t in self._table.items():
            back = dict(self._table.get((b, a), ()))
            if any(back.get(k) != -c for k, c in t) or len(back) != len(t):
                raise AlgebraAxiomError(f"bracket not antisymmetric at {self.basis[a]}, {self.basis[b]}")
        for r in rs.positive_roots:
            for s in (r, negate(r)):
                for i in range(1, rs.rank + 1):
                    t = self.bracket_basis(self.index_of_cartan(i), self.index_of_root(s))
                    c = simple_pairing(rs, i, s)
                    if (t != ((self.index_of_root(s), c),)) if c else t:
                        raise AlgebraAxiomError(f"Cartan action wrong on {s}")
        if sample is None:
            triples = itertools.combinations(range(self.dim), 3)
        else:
            rng = random.Random(seed)
            triples = (tuple(rng.randrange(self.dim) for _ in range(3)) for _ in range(sample))
        for i, j, k in triples:
            acc: dict[int, int] = {}
            for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
                for m, c in self._table.get((y, z), ()):
                    for p, d in self._table.get((x, m), ()):
                        acc[p] = acc.get(p, 0) + c * d
            if any(acc.values()):
                raise AlgebraAxiomError(
                    f"Jacobi fails on ({self.basis[i]}, {self.basis[j]}, {self.basis[k]})"
                )

    def __repr__(self) -> str:
        return f"ChevalleyAlgebra({self.system.name}, dim={self.dim}, convention={self.fingerprint()})"


@lru_cache(maxsize=64)
def build_algebra(quiver: Quiver, twist: Twist | None = None) -> ChevalleyAlgebra:
    alg = ChevalleyAlgebra(quiver, twist)
    if quiver.rank <= 4:
        alg.verify_axioms()
    else:
        alg.verify_axioms(sample=4000)
    return alg
