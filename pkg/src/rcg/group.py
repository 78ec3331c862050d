"""The adjoint Chevalley group as exact rational matrices.

Generators follow the usual conventions::

    E(γ, t) = exp(t ad e_γ) = I + tA + t²A²/2          (A = ad e_γ, A³ = 0)
    h_i(t)  : e_γ ↦ t^{(α_i, γ)} e_γ,  Cartan fixed
    n_i(t)  = E(α_i, t) E(-α_i, 1/t) E(α_i, t) = h_i(t) n_i

Because the basis is ordered by ascending height, U⁺ is block *lower*
triangular as a matrix and U⁻ block upper triangular.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import flint

from .chevalley import ChevalleyAlgebra
from .exact import as_rational, format_rational, identity_matrix, to_fmpq
from .rootsys import Root, add, height, negate, reflect, sign_of, simple_pairing


class NotInBigCell(ValueError):
    """The element has no factorization u⁻·h·u⁺."""


class ConventionError(RuntimeError):
    """A generator identity that must hold as a matrix identity failed."""


class GroupElement:
    __slots__ = ("algebra", "matrix")

    def __init__(self, algebra: ChevalleyAlgebra, matrix: flint.fmpq_mat):
        self.algebra = algebra
        self.matrix = matrix

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if other.algebra is not self.algebra:
            raise ValueError("elements of different algebras")
        return GroupElement(self.algebra, self.matrix * other.matrix)

    def inv(self) -> "GroupElement":
        return GroupElement(self.algebra, self.matrix.inv())

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.algebra is other.algebra and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(tuple(str(e) for e in self.matrix.entries()))

    def is_identity(self) -> bool:
        return self.matrix == identity_matrix(self.algebra.dim)

    def entry(self, i: int, j: int) -> Fraction:
        return as_rational(self.matrix[i, j])

    def column(self, j: int) -> list[Fraction]:
        return [as_rational(self.matrix[i, j]) for i in range(self.algebra.dim)]

    def apply(self, vec: Sequence) -> list[Fraction]:
        n = self.algebra.dim
        v = flint.fmpq_mat(n, 1, [to_fmpq(x) for x in vec])
        w = self.matrix * v
        return [as_rational(w[i, 0]) for i in range(n)]

    def __pow__(self, k: int) -> "GroupElement":
        if k < 0:
            return self.inv() ** (-k)
        out = identity(self.algebra)
        for _ in range(k):
            out = out * self
        return out

    def __repr__(self) -> str:
        return f"GroupElement({self.algebra.system.name}, {self.algebra.dim}x{self.algebra.dim})"


def identity(alg: ChevalleyAlgebra) -> GroupElement:
    return GroupElement(alg, identity_matrix(alg.dim))


def product(alg: ChevalleyAlgebra, factors: Iterable[GroupElement]) -> GroupElement:
    m = identity_matrix(alg.dim)
    for f in factors:
        m = m * f.matrix
    return GroupElement(alg, m)


# --------------------------------------------------------------------------
# generators
# --------------------------------------------------------------------------

_SQ_CACHE: dict[tuple[int, int], flint.fmpq_mat] = {}


def _ad_squared(alg: ChevalleyAlgebra, idx: int) -> flint.fmpq_mat:
    key = (id(alg), idx)
    m = _SQ_CACHE.get(key)
    if m is None:
        a = alg.ad_matrix(idx)
        m = a * a
        _SQ_CACHE[key] = m
    return m


def gen_E(alg: ChevalleyAlgebra, gamma: Sequence[int], t) -> GroupElement:
    idx = alg.index_of_root(gamma)
    t = to_fmpq(t)
    a = alg.ad_matrix(idx)
    m = identity_matrix(alg.dim) + t * a + (t * t / 2) * _ad_squared(alg, idx)
    return GroupElement(alg, m)


def gen_h_root(alg: ChevalleyAlgebra, gamma: Sequence[int], t) -> GroupElement:
    """h_γ(t): e_δ ↦ t^{(γ, δ)} e_δ."""
    t = as_rational(t)
    if t == 0:
        raise ValueError("h parameter must be nonzero")
    rs = alg.system
    m = identity_matrix(alg.dim)
    for k, lab in enumerate(alg.basis):
        if lab.kind == "e":
            p = sum(gamma[i] * simple_pairing(rs, i + 1, lab.root) for i in range(rs.rank))
            m[k, k] = to_fmpq(t**p)
    return GroupElement(alg, m)


def gen_h(alg: ChevalleyAlgebra, i: int, t) -> GroupElement:
    return gen_h_root(alg, alg.system.simple(i), t)


def gen_h_multi(alg: ChevalleyAlgebra, ts: Sequence) -> GroupElement:
    """Π_i h_i(t_i)."""
    rs = alg.system
    ts = [as_rational(t) for t in ts]
    if any(t == 0 for t in ts):
        raise ValueError("h parameters must be nonzero")
    m = identity_matrix(alg.dim)
    for k, lab in enumerate(alg.basis):
        if lab.kind == "e":
            v = Fraction(1)
            for i in range(rs.rank):
                v *= ts[i] ** simple_pairing(rs, i + 1, lab.root)
            m[k, k] = to_fmpq(v)
    return GroupElement(alg, m)


def gen_n_root(alg: ChevalleyAlgebra, gamma: Sequence[int], t=1) -> GroupElement:
    t = as_rational(t)
    if t == 0:
        raise ValueError("n parameter must be nonzero")
    e = gen_E(alg, gamma, t)
    return e * gen_E(alg, negate(gamma), 1 / t) * e


def gen_n(alg: ChevalleyAlgebra, i: int, t=1) -> GroupElement:
    if t == 1:
        key = ("n", i)
        g = alg.cache.get(key)
        if g is None:
            g = alg.cache[key] = gen_n_root(alg, alg.system.simple(i), 1)
        return g
    return gen_n_root(alg, alg.system.simple(i), t)


def gen_n_inv(alg: ChevalleyAlgebra, i: int) -> GroupElement:
    key = ("ninv", i)
    g = alg.cache.get(key)
    if g is None:
        g = alg.cache[key] = gen_n(alg, i).inv()
    return g


def n_word(alg: ChevalleyAlgebra, word: Sequence[int], inverse: bool = False) -> GroupElement:
    """n_{w_1} ⋯ n_{w_k}, or n_{w_1}⁻¹ ⋯ n_{w_k}⁻¹ with ``inverse``."""
    out = identity(alg)
    for i in word:
        out = out * (gen_n_inv(alg, i) if inverse else gen_n(alg, i))
    return out


@dataclass(frozen=True)
class EtaResult:
    sign: int
    image: Root


def eta_root(alg: ChevalleyAlgebra, x: Sequence[int], gamma: Sequence[int]) -> EtaResult:
    """n_x e_γ = sign · e_{s_x(γ)}."""
    rs = alg.system
    n = gen_n_root(alg, x, 1)
    gamma = tuple(gamma)
    p = sum(x[i] * simple_pairing(rs, i + 1, gamma) for i in range(rs.rank))
    image = tuple(g - p * c for g, c in zip(gamma, x))
    return _signed_image(alg, n, gamma, image)


def eta(alg: ChevalleyAlgebra, i: int, gamma: Sequence[int]) -> EtaResult:
    """n_i e_γ = sign · e_{s_i(γ)}, read off the matrix of n_i."""
    gamma = tuple(gamma)
    key = ("eta", i, gamma)
    r = alg.cache.get(key)
    if r is None:
        r = alg.cache[key] = _signed_image(alg, gen_n(alg, i), gamma, reflect(alg.system, i, gamma))
    return r


def _signed_image(alg, g: GroupElement, gamma: Root, image: Root) -> EtaResult:
    col = g.column(alg.index_of_root(gamma))
    target = alg.index_of_root(image)
    nz = [(k, v) for k, v in enumerate(col) if v]
    if len(nz) != 1 or nz[0][0] != target or abs(nz[0][1]) != 1:
        raise ConventionError(f"n does not map e{list(gamma)} to ±e{list(image)}")
    return EtaResult(int(nz[0][1]), image)


def signed_image(alg: ChevalleyAlgebra, g: GroupElement, gamma: Sequence[int]) -> tuple[int, Root]:
    """For a monomial matrix g, g e_γ = sign · e_δ; returns (sign, δ)."""
    col = g.column(alg.index_of_root(gamma))
    nz = [(k, v) for k, v in enumerate(col) if v]
    if len(nz) != 1 or abs(nz[0][1]) != 1 or alg.basis[nz[0][0]].kind != "e":
        raise ConventionError(f"e{list(gamma)} is not sent to a signed root vector")
    return int(nz[0][1]), alg.basis[nz[0][0]].root


# --------------------------------------------------------------------------
# generator words
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Letter:
    kind: str  # "E", "H", "N", "Ninv"
    root: Root = ()
    vertex: int = 0
    param: Fraction = Fraction(1)

    def element(self, alg: ChevalleyAlgebra) -> GroupElement:
        if self.kind == "E":
            return gen_E(alg, self.root, self.param)
        if self.kind == "H":
            return gen_h(alg, self.vertex, self.param)
        if self.kind == "N":
            return gen_n(alg, self.vertex)
        if self.kind == "Ninv":
            return gen_n_inv(alg, self.vertex)
        raise ValueError(f"unknown letter kind {self.kind!r}")

    def text(self, alg: ChevalleyAlgebra | None = None) -> str:
        if self.kind == "E":
            sgn = "+" if sign_of(self.root) > 0 else "-"
            r = self.root if sgn == "+" else negate(self.root)
            if sum(r) == 1:
                ref = str(r.index(1) + 1)
            else:
                ref = "(" + ",".join(str(c) for c in r) + ")"
            return f"{sgn}{ref}:{format_rational(self.param)}"
        if self.kind == "H":
            return f"h{self.vertex}:{format_rational(self.param)}"
        if self.kind == "N":
            return f"n{self.vertex}"
        return f"n{self.vertex}^-1"


GenWord = tuple[Letter, ...]


class GenWordSyntaxError(ValueError):
    def __init__(self, message: str, column: int):
        super().__init__(f"column {column}: {message}")
        self.column = column


_E_RE = re.compile(r"^([+-])(\d+|r\d+|\(\s*-?\d+(?:\s*,\s*-?\d+)*\s*\)):(\S+)$")
_H_RE = re.compile(r"^h(\d+):(\S+)$")
_N_RE = re.compile(r"^n(\d+)(\^-1)?$")


def parse_genword(text: str, alg: ChevalleyAlgebra) -> GenWord:
    """Parse whitespace-separated tokens.

    ``+γ:t`` / ``-γ:t`` give E(±γ, t), where γ is a vertex (a simple root),
    ``r<k>`` (the k-th positive root, 1-based) or a coordinate tuple
    ``(1,1,0)``; ``h<i>:t`` is h_i(t); ``n<i>`` and ``n<i>^-1`` are n_i^{±1}.
    """
    rs = alg.system
    letters = []
    for m in re.finditer(r"\S+", text):
        tok, col = m.group(0), m.start() + 1
        try:
            if mm := _E_RE.match(tok):
                sgn, ref, par = mm.groups()
                if ref.startswith("r"):
                    k = int(ref[1:])
                    if not 1 <= k <= rs.positive_count:
                        raise ValueError(f"root index {k} out of range 1..{rs.positive_count}")
                    root = rs.positive_roots[k - 1]
                elif ref.startswith("("):
                    root = tuple(int(c) for c in ref.strip("() ").split(","))
                    if sign_of(root) < 0 or not rs.is_positive(root):
                        raise ValueError(f"{root} is not a positive root")
                else:
                    root = rs.simple(int(ref))
                if sgn == "-":
                    root = negate(root)
                letters.append(Letter("E", root=root, param=_rational(par)))
            elif mm := _H_RE.match(tok):
                v = int(mm.group(1))
                rs.check_vertex(v)
                t = _rational(mm.group(2))
                if t == 0:
                    raise ValueError("h parameter must be nonzero")
                letters.append(Letter("H", vertex=v, param=t))
            elif mm := _N_RE.match(tok):
                v = int(mm.group(1))
                rs.check_vertex(v)
                letters.append(Letter("Ninv" if mm.group(2) else "N", vertex=v))
            else:
                raise ValueError(f"unrecognised token {tok!r}")
        except ValueError as exc:
            raise GenWordSyntaxError(str(exc), col) from None
    return tuple(letters)


def _rational(s: str) -> Fraction:
    from .exact import parse_rational

    return parse_rational(s)


def format_genword(word: Sequence[Letter]) -> str:
    return " ".join(l.text() for l in word)


def evaluate_genword(alg: ChevalleyAlgebra, word: Sequence[Letter]) -> GroupElement:
    return product(alg, (l.element(alg) for l in word))


def root_product(alg: ChevalleyAlgebra, factors: Iterable[tuple[Root, object]]) -> GroupElement:
    return product(alg, (gen_E(alg, r, t) for r, t in factors))


# --------------------------------------------------------------------------
# subgroups, normal forms and Gauss decomposition
# --------------------------------------------------------------------------

def in_borel(g: GroupElement, sign: int) -> bool:
    """Does g preserve span{h_i} ⊕ span{e_γ : sign·γ > 0}?"""
    alg = g.algebra
    lo = alg.cartan_offset
    hi = lo + alg.system.rank
    m = g.matrix
    n = alg.dim
    if sign > 0:
        return all(m[i, j] == 0 for j in range(lo, n) for i in range(lo))
    return all(m[i, j] == 0 for j in range(hi) for i in range(hi, n))


def is_unipotent(g: GroupElement, sign: int) -> bool:
    """Block-triangular w.r.t. height with identity diagonal blocks."""
    alg = g.algebra
    hts = alg.heights
    m = g.matrix
    n = alg.dim
    for i in range(n):
        for j in range(n):
            v = m[i, j]
            d = (hts[i] - hts[j]) * sign
            if d < 0 and v != 0:
                return False
            if d == 0 and v != (1 if i == j else 0):
                return False
    return True


def _peel(g: GroupElement, sign: int) -> list[tuple[Root, Fraction]]:
    """Coordinates of a unipotent element, height by height.

    Returns factors ordered by ascending |height| (RootSystem order within a
    height) whose product is g; the caller verifies.
    """
    alg = g.algebra
    rs = alg.system
    by_height: dict[int, list[Root]] = {}
    for r in rs.positive_roots:
        by_height.setdefault(height(r), []).append(r if sign > 0 else negate(r))
    out: list[tuple[Root, Fraction]] = []
    rest = g
    for d in sorted(by_height):
        layer = []
        for gamma in by_height[d]:
            pos = gamma if sign > 0 else negate(gamma)
            i = next(k for k in range(1, rs.rank + 1) if simple_pairing(rs, k, pos))
            p = simple_pairing(rs, i, gamma)
            coef = rest.entry(alg.index_of_root(gamma), alg.index_of_cartan(i))
            t = -coef / p
            if t:
                layer.append((gamma, t))
        if layer:
            out.extend(layer)
            rest = root_product(alg, layer).inv() * rest
    return out


def nf_coords(u: GroupElement, order: Sequence[Root] | None = None, sign: int = 1) -> list[tuple[Root, Fraction]]:
    """Coordinates t_γ with Π_{γ in order} E(γ, t_γ) = u (zeros included)."""
    alg = u.algebra
    if not is_unipotent(u, sign):
        raise ValueError("element is not unipotent of the requested sign")
    if order is None:
        order = [r if sign > 0 else negate(r) for r in alg.system.positive_roots]
    order = [tuple(r) for r in order]
    peeled = _peel(u, sign)
    if root_product(alg, peeled) != u:
        raise ConventionError("height peeling did not reconstruct the element")
    collected = collect_reorder(alg, peeled, order)
    found = dict(collected)
    coords = [(r, found.get(r, Fraction(0))) for r in order]
    if root_product(alg, coords) != u:
        raise ConventionError("normal-form coordinates do not reconstruct the element")
    return coords


def collect_reorder(
    alg: ChevalleyAlgebra, factors: Sequence[tuple[Root, object]], order: Sequence[Root]
) -> list[tuple[Root, Fraction]]:
    """Rewrite a product of root elements into ``order``.

    Equal neighbours merge, zero factors drop, and an out-of-order pair is
    swapped using E_x(s)E_y(t) = E_y(t)E_x(s)E_{x+y}(N_{xy}st), with the
    (central) commutator placed after the pair.  Every swap only creates
    factors of strictly larger |height|, so the tuple of inversion counts
    listed from the largest height level down decreases lexicographically
    and the loop terminates.
    """
    rank = {tuple(r): k for k, r in enumerate(order)}
    fs = [(tuple(r), as_rational(t)) for r, t in factors]
    for r, _ in fs:
        if r not in rank:
            raise ValueError(f"{r} is not in the target order")
    rs = alg.system
    changed = True
    while changed:
        changed = False
        k = 0
        while k < len(fs):
            r, t = fs[k]
            if not t:
                del fs[k]
                changed = True
                continue
            if k + 1 < len(fs):
                r2, t2 = fs[k + 1]
                if r == r2:
                    fs[k : k + 2] = [(r, t + t2)]
                    changed = True
                    continue
                if rank[r] > rank[r2]:
                    s = add(r, r2)
                    repl = [(r2, t2), (r, t)]
                    if rs.is_root(s):
                        if s not in rank:
                            raise ValueError(f"commutator root {s} is not in the target order")
                        repl.append((s, alg.structure_constant(r, r2) * t * t2))
                    elif not any(s):
                        raise ValueError("opposite roots cannot be collected")
                    fs[k : k + 2] = repl
                    changed = True
                    k = max(k - 1, 0)
                    continue
            k += 1
    return fs


@dataclass(frozen=True)
class GaussResult:
    lower_coords: tuple[tuple[Root, Fraction], ...]
    h_matrix: GroupElement
    upper_coords: tuple[tuple[Root, Fraction], ...]
    h_character: tuple[Fraction, ...]  # eigenvalue on e_{α_j}

    @property
    def h_positive(self) -> bool:
        return all(c > 0 for c in self.h_character)


def gauss_decompose(g: GroupElement) -> GaussResult:
    """g = u⁻ · h · u⁺ with u± unipotent and h in the torus.

    In the reversed basis order u⁻ becomes lower and u⁺ upper triangular, so
    this is a pivot-free Doolittle LDU; reconstruction is checked exactly.
    """
    alg = g.algebra
    n = alg.dim
    rev = [[g.matrix[n - 1 - i, n - 1 - j] for j in range(n)] for i in range(n)]
    lower = [[flint.fmpq(0)] * n for _ in range(n)]
    upper = [[flint.fmpq(0)] * n for _ in range(n)]
    diag = [flint.fmpq(0)] * n
    a = [row[:] for row in rev]
    for k in range(n):
        piv = a[k][k]
        if piv == 0:
            raise NotInBigCell(f"leading minor {k + 1} vanishes")
        diag[k] = piv
        lower[k][k] = flint.fmpq(1)
        upper[k][k] = flint.fmpq(1)
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] / piv
                lower[i][k] = f
                row_k = a[k]
                row_i = a[i]
                for j in range(k, n):
                    if row_k[j] != 0:
                        row_i[j] -= f * row_k[j]
        for j in range(k + 1, n):
            if a[k][j] != 0:
                upper[k][j] = a[k][j] / piv
    # back to the height order: reversed-lower is the U⁻ factor
    um = flint.fmpq_mat(n, n, [lower[n - 1 - i][n - 1 - j] for i in range(n) for j in range(n)])
    dm = flint.fmpq_mat(n, n)
    for i in range(n):
        dm[i, i] = diag[n - 1 - i]
    up = flint.fmpq_mat(n, n, [upper[n - 1 - i][n - 1 - j] for i in range(n) for j in range(n)])
    u_minus, h, u_plus = GroupElement(alg, um), GroupElement(alg, dm), GroupElement(alg, up)
    lo, hi = alg.cartan_offset, alg.cartan_offset + alg.system.rank
    if any(dm[i, i] != 1 for i in range(lo, hi)):
        raise NotInBigCell("torus factor moves the Cartan subalgebra")
    try:
        if not (is_unipotent(u_minus, -1) and is_unipotent(u_plus, 1)):
            raise NotInBigCell("triangular factors are not unipotent root products")
        lower_coords = _peel(u_minus, -1)
        upper_coords = _peel(u_plus, 1)
    except (ConventionError, StopIteration) as exc:
        raise NotInBigCell(str(exc)) from None
    if root_product(alg, lower_coords) != u_minus or root_product(alg, upper_coords) != u_plus:
        raise NotInBigCell("triangular factors are not in the unipotent subgroups")
    rs = alg.system
    char = tuple(h.entry(alg.index_of_root(rs.simple(j)), alg.index_of_root(rs.simple(j))) for j in range(1, rs.rank + 1))
    # the torus factor must act by the character it has on the simple roots
    for k, lab in enumerate(alg.basis):
        if lab.kind == "e":
            v = Fraction(1)
            for j, c in enumerate(lab.root):
                v *= char[j] ** c
            if h.entry(k, k) != v:
                raise NotInBigCell("diagonal factor is not a torus element")
    if u_minus * h * u_plus != g:
        raise NotInBigCell("factors do not reconstruct the element")
    return GaussResult(tuple(lower_coords), h, tuple(upper_coords), char)


def torus_element(alg: ChevalleyAlgebra, character: Sequence) -> GroupElement:
    """Diagonal element acting on e_γ by Π_j χ_j^{c_j} for γ = Σ c_j α_j."""
    m = identity_matrix(alg.dim)
    char = [as_rational(c) for c in character]
    for k, lab in enumerate(alg.basis):
        if lab.kind == "e":
            v = Fraction(1)
            for j, c in enumerate(lab.root):
                v *= char[j] ** c
            m[k, k] = to_fmpq(v)
    return GroupElement(alg, m)


def h_character(alg: ChevalleyAlgebra, ts: Sequence) -> tuple[Fraction, ...]:
    """χ_j = Π_i t_i^{a_ij}, the eigenvalue of Π h_i(t_i) on e_{α_j}."""
    rs = alg.system
    ts = [as_rational(t) for t in ts]
    out = []
    for j in range(rs.rank):
        v = Fraction(1)
        for i in range(rs.rank):
            v *= ts[i] ** rs.cartan[i][j]
        out.append(v)
    return tuple(out)


def _exact_root(x: Fraction, d: int) -> Fraction | None:
    """The positive rational d-th root of x > 0, if there is one."""
    num, den = flint.fmpz(x.numerator), flint.fmpz(x.denominator)
    rn, rd = num.root(d), den.root(d)
    if rn**d != num or rd**d != den:
        return None
    return Fraction(int(rn), int(rd))


def h_coords_from_character(alg: ChevalleyAlgebra, character: Sequence) -> tuple[Fraction, ...] | None:
    """Positive rationals t with Π h_i(t_i) acting by ``character``, if any.

    log t = C⁻¹ log χ; with d = det C the exponents d·C⁻¹ are integral, so
    t_i is an exact d-th root whenever it is rational.
    """
    rs = alg.system
    char = [as_rational(c) for c in character]
    if any(c <= 0 for c in char):
        return None
    c = flint.fmpq_mat(rs.rank, rs.rank, [v for row in rs.cartan for v in row])
    d = int(c.det().p)
    adj = c.inv() * d
    out = []
    for i in range(rs.rank):
        v = Fraction(1)
        for j in range(rs.rank):
            e = adj[i, j]
            v *= char[j] ** int(e.p)
        r = _exact_root(v, d)
        if r is None:
            return None
        out.append(r)
    if h_character(alg, out) != tuple(char):
        return None
    return tuple(out)
