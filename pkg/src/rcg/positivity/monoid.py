"""Normal form u⁻ · h · u⁺ for words in the nonnegative monoid.

The input is a word in x_i(a) = E(α_i, a), y_i(a) = E(-α_i, -a) and
h_i(t) with a >= 0, t > 0.  It is rewritten using only the monoid
relations:

    x_i(a) x_i(b) = x_i(a+b),  y_i(a) y_i(b) = y_i(a+b),  h_i(s) h_i(t) = h_i(st)
    x_i(a) h_i(b) y_i(c) = y_i(c/(ac+b²)) h_i((ac+b²)/b) x_i(a/(ac+b²))
    x_i(a) y_j(c) = y_j(c) x_i(a)                         (i ≠ j)
    x_i(a) h_j(t) = h_j(t) x_i(t^{-a_ji} a),   h_j(t) y_i(c) = y_i(t^{-a_ji} c) h_j(t)
    u_i(a) u_j(b) u_i(c) = u_j(bc/(a+c)) u_i(a+c) u_j(ab/(a+c))   (a_ij = -1)

and each unipotent part is brought to the lexicographically smallest
reduced word of its Demazure product with positive parameters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..chevalley import ChevalleyAlgebra
from ..exact import as_rational, format_rational
from ..group import ConventionError, GroupElement, Letter, evaluate_genword, gen_h_multi
from ..rootsys import (
    RootSystem,
    Word,
    demazure_and_complete,
    demazure_product,
    element_from_word,
    identity_element,
    lexmin_reduced_word,
    move_path,
    negate,
    sign_of,
    times_simple,
)
from .chain import beta_chain, sample_region
from .theorems import cell_element, simple_product, verify_flag

_RANK = {"y": 0, "h": 1, "x": 2}


class MonoidError(ValueError):
    """The word is not a word in the nonnegative generators."""


def _to_internal(rs: RootSystem, word: Sequence[Letter]) -> list[tuple[str, int, Fraction]]:
    out = []
    for pos, l in enumerate(word, 1):
        if l.kind == "H":
            if l.param <= 0:
                raise MonoidError(f"letter {pos}: h parameter must be positive")
            out.append(("h", l.vertex, l.param))
        elif l.kind == "E":
            r = l.root
            pos_root = r if sign_of(r) > 0 else negate(r)
            if sum(pos_root) != 1:
                raise MonoidError(f"letter {pos}: only simple roots are allowed")
            i = pos_root.index(1) + 1
            if sign_of(r) > 0:
                if l.param < 0:
                    raise MonoidError(f"letter {pos}: x_{i} needs a nonnegative parameter")
                out.append(("x", i, l.param))
            else:
                if l.param > 0:
                    raise MonoidError(f"letter {pos}: E(-α_{i}, t) needs t <= 0")
                out.append(("y", i, -l.param))
        else:
            raise MonoidError(f"letter {pos}: n_i is not in the nonnegative monoid")
    return out


def flip(a, b, c) -> tuple[Fraction, Fraction, Fraction]:
    """x(a) h(b) y(c) = y(c') h(b') x(a'); returns (c', b', a')."""
    d = a * c + b * b
    return c / d, d / b, a / d


def braid(a, b, c) -> tuple[Fraction, Fraction, Fraction]:
    s = a + c
    if s == 0:
        raise ZeroDivisionError("braid move with a + c = 0")
    return b * c / s, s, a * b / s


def _sort_letters(rs: RootSystem, letters: list) -> list:
    c = rs.cartan
    w = list(letters)
    k = 0
    while k < len(w):
        kind, i, t = w[k]
        if (kind != "h" and t == 0) or (kind == "h" and t == 1):
            del w[k]
            k = max(k - 1, 0)
            continue
        if k + 1 >= len(w):
            break
        kind2, j, t2 = w[k + 1]
        if kind == kind2 and i == j:
            w[k : k + 2] = [(kind, i, t * t2 if kind == "h" else t + t2)]
            k = max(k - 1, 0)
            continue
        repl = None
        if kind == "x" and kind2 == "y":
            if i != j:
                repl = [w[k + 1], w[k]]
            else:
                c2, b2, a2 = flip(t, Fraction(1), t2)
                repl = [("y", i, c2), ("h", i, b2), ("x", i, a2)]
        elif kind == "x" and kind2 == "h":
            repl = [w[k + 1], ("x", i, t * t2 ** (-c[j - 1][i - 1]))]
        elif kind == "h" and kind2 == "y":
            repl = [("y", j, t2 * t ** (-c[i - 1][j - 1])), w[k]]
        elif kind == "h" and kind2 == "h" and j < i:
            repl = [w[k + 1], w[k]]
        if repl is not None:
            w[k : k + 2] = repl
            k = max(k - 1, 0)
            continue
        k += 1
    return w


def _apply_moves(rs: RootSystem, word: Word, params: list, moves) -> tuple[Word, list]:
    from ..rootsys import apply_move

    params = list(params)
    for mv in moves:
        k = mv.position
        if mv.kind == "commutation":
            params[k], params[k + 1] = params[k + 1], params[k]
        else:
            params[k : k + 3] = braid(*params[k : k + 3])
        word = apply_move(rs, word, mv)
    return word, params


def canonical_part(rs: RootSystem, vertices: Sequence[int], params: Sequence) -> tuple[Word, list]:
    """u_{i_1}(p_1)⋯ (p > 0) rewritten as a positive product over the
    lexicographically smallest reduced word of the Demazure product."""
    word: Word = ()
    cur: list = []
    w = identity_element(rs)
    for i, p in zip(vertices, params):
        if sign_of(w[i - 1]) > 0:
            word, cur = word + (i,), cur + [p]
            w = times_simple(rs, w, i)
            continue
        # bring the word to one ending in i, then absorb
        target = lexmin_reduced_word(rs, times_simple(rs, w, i)) + (i,)
        word, cur = _apply_moves(rs, word, cur, move_path(rs, word, target))
        cur[-1] = cur[-1] + p
    canon = lexmin_reduced_word(rs, w)
    return _apply_moves(rs, word, cur, move_path(rs, word, canon))


@dataclass(frozen=True)
class CellPart:
    cell: Word
    coords: tuple[Fraction, ...]
    prefix: Word  # prefix + cell is a reduced word of w0
    region_point: tuple[Fraction, ...]  # b with a^{(0)} = coords on the cell word

    def to_json(self) -> dict:
        return {
            "cell": list(self.cell),
            "coords": [format_rational(x) for x in self.coords],
            "prefix": list(self.prefix),
            "region_point": [format_rational(x) for x in self.region_point],
        }


@dataclass(frozen=True)
class Decomposition:
    minus: CellPart
    h: tuple[Fraction, ...]
    plus: CellPart
    element: GroupElement

    @property
    def h_positive(self) -> bool:
        return all(t > 0 for t in self.h)

    def to_json(self) -> dict:
        return {
            "minus": self.minus.to_json(),
            "h": {"positive": self.h_positive, "coords": [format_rational(x) for x in self.h]},
            "plus": self.plus.to_json(),
        }


def _cell_part(alg: ChevalleyAlgebra, cell: Word, coords, side: int) -> CellPart:
    rs = alg.system
    comp = demazure_and_complete(rs, cell)
    if comp.demazure != cell:
        raise ConventionError(f"cell word {cell} is not reduced")
    b = sample_region(rs, cell, coords) if cell else ()
    if cell and list(beta_chain(rs, cell, b).a0) != list(coords):
        raise ConventionError("region coordinates do not round-trip")
    if cell:
        full = comp.prefix_to_w0 + cell
        t = len(comp.prefix_to_w0)
        if side < 0:
            ce = cell_element(alg, full, t, b)
            if ce.lower != simple_product(alg, cell, coords, -1):
                raise ConventionError("cell element does not reproduce the lower part")
        elif not verify_flag(alg, cell, b, -1):
            raise ConventionError("flag check failed on the upper part")
    return CellPart(cell, tuple(coords), comp.prefix_to_w0, tuple(b))


def decompose_nonneg(alg: ChevalleyAlgebra, word: Sequence[Letter]) -> Decomposition:
    rs = alg.system
    letters = _to_internal(rs, word)
    target = evaluate_genword(alg, word)
    ys_in = [i for kind, i, t in letters if kind == "y" and t]
    xs_in = [i for kind, i, t in letters if kind == "x" and t]
    srt = _sort_letters(rs, letters)
    ys = [(i, t) for kind, i, t in srt if kind == "y"]
    hs = {i: t for kind, i, t in srt if kind == "h"}
    xs = [(i, t) for kind, i, t in srt if kind == "x"]
    kinds = [kind for kind, _, _ in srt]
    if kinds != sorted(kinds, key=_RANK.__getitem__):
        raise ConventionError("letters were not sorted into y · h · x")
    ycell, ycoords = canonical_part(rs, [i for i, _ in ys], [t for _, t in ys])
    xcell, xcoords = canonical_part(rs, [i for i, _ in xs], [t for _, t in xs])
    h = tuple(hs.get(i, Fraction(1)) for i in range(1, rs.rank + 1))
    for cell, src in ((ycell, ys_in), (xcell, xs_in)):
        if cell != lexmin_reduced_word(rs, element_from_word(rs, demazure_product(rs, src))):
            raise ConventionError("cell word is not the Demazure product of the input letters")
    if any(t <= 0 for t in list(ycoords) + list(xcoords) + list(h)):
        raise ConventionError("normal form has a nonpositive parameter")
    result = simple_product(alg, ycell, ycoords, -1) * gen_h_multi(alg, h) * simple_product(alg, xcell, xcoords, 1)
    if result != target:
        raise ConventionError("normal form does not reproduce the input matrix")
    return Decomposition(
        _cell_part(alg, ycell, ycoords, -1),
        h,
        _cell_part(alg, xcell, xcoords, 1),
        target,
    )


def format_part(cell: Word, coords, side: int) -> str:
    sign = "+" if side > 0 else "-"
    return " ".join(
        f"{sign}{i}:{format_rational(t if side > 0 else -as_rational(t))}" for i, t in zip(cell, coords)
    )
