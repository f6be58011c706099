"""Jet coordinates, symmetric multi-indices and total derivative operators.

A :class:`JetContext` declares independent variables, dependent variables and
a truncation order, and owns the table of jet coordinate symbols ``u_I``.
Truncation is strict: an operation that would need a coordinate beyond the
declared order raises :class:`TruncationError` instead of silently extending,
so every verification states its order budget explicitly.

Derivative subscripts are canonicalized to the declaration order of the
independent variables (``u_tx``, never ``u_xt``).
"""

from __future__ import annotations

import threading
from typing import Iterable, Optional, Sequence, Union

from .errors import JetcoverError, TruncationError
from .rational import RationalExpr, coerce
from .symbols import Symbol


class MultiIndex:
    """Symmetric multi-index: a sorted tuple of independent-variable positions."""

    __slots__ = ("positions",)

    def __init__(self, positions: Iterable[int] = ()):
        pos = tuple(sorted(positions))
        if any(p < 0 for p in pos):
            raise ValueError("multi-index positions must be nonnegative")
        self.positions = pos

    @property
    def order(self) -> int:
        return len(self.positions)

    def plus(self, position: int) -> "MultiIndex":
        return MultiIndex(self.positions + (position,))

    def counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self.positions:
            out[p] = out.get(p, 0) + 1
        return out

    def contains(self, other: "MultiIndex") -> bool:
        """Multiset containment: every position of `other` occurs at least as often."""
        mine = self.counts()
        for p, k in other.counts().items():
            if mine.get(p, 0) < k:
                return False
        return True

    def minus(self, other: "MultiIndex") -> "MultiIndex":
        mine = self.counts()
        for p, k in other.counts().items():
            if mine.get(p, 0) < k:
                raise ValueError("multi-index difference undefined")
            mine[p] -= k
        out: list[int] = []
        for p, k in mine.items():
            out.extend([p] * k)
        return MultiIndex(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiIndex):
            return NotImplemented
        return self.positions == other.positions

    def __hash__(self) -> int:
        return hash(self.positions)

    def __lt__(self, other: "MultiIndex") -> bool:
        return (self.order, self.positions) < (other.order, other.positions)

    def __repr__(self) -> str:
        return f"MultiIndex{self.positions}"


IndexLike = Union[MultiIndex, Sequence[int]]
DirectionLike = Union[int, Symbol, str]


class JetContext:
    """Coordinates of a truncated jet bundle.

    Independent variable names must be single characters so that jet symbol
    names like ``u_tx`` decompose unambiguously; dependent names may be any
    identifier without ``_`` or ``[``.
    """

    def __init__(
        self,
        independent: Sequence[Union[Symbol, str]],
        dependent: Sequence[Union[Symbol, str]],
        max_order: int,
    ):
        self.independent = tuple(
            s if isinstance(s, Symbol) else Symbol(s) for s in independent
        )
        self.dependent = tuple(
            s if isinstance(s, Symbol) else Symbol(s) for s in dependent
        )
        if not self.independent:
            raise JetcoverError("need at least one independent variable")
        if max_order < 0:
            raise JetcoverError("max_order must be nonnegative")
        names = [s.name for s in self.independent + self.dependent]
        if len(set(names)) != len(names):
            raise JetcoverError("variable names must be pairwise distinct")
        for s in self.independent:
            if len(s.name) != 1:
                raise JetcoverError(
                    f"independent variable name {s.name!r} must be a single character"
                )
        for s in self.dependent:
            if "_" in s.name or "[" in s.name:
                raise JetcoverError(f"dependent name {s.name!r} may not contain '_' or '['")
        self.max_order = max_order
        self._position = {s: i for i, s in enumerate(self.independent)}
        self._dep_by_name = {s.name: s for s in self.dependent}
        self._table: dict[tuple[Symbol, MultiIndex], Symbol] = {}
        self._reverse: dict[Symbol, tuple[Symbol, MultiIndex]] = {}
        self._lock = threading.Lock()
        for dep in self.dependent:
            self._register(dep, MultiIndex(()), dep)

    def _register(self, dep: Symbol, index: MultiIndex, symbol: Symbol) -> None:
        self._table[(dep, index)] = symbol
        self._reverse[symbol] = (dep, index)

    def position(self, direction: DirectionLike) -> int:
        if isinstance(direction, int):
            if not 0 <= direction < len(self.independent):
                raise JetcoverError(f"no independent variable at position {direction}")
            return direction
        if isinstance(direction, str):
            direction = Symbol(direction)
        pos = self._position.get(direction)
        if pos is None:
            raise JetcoverError(f"{direction.name!r} is not an independent variable")
        return pos

    def multi_index(self, index: IndexLike) -> MultiIndex:
        if isinstance(index, MultiIndex):
            return index
        return MultiIndex(self.position(p) if not isinstance(p, int) else p for p in index)

    def jet_name(self, dep: Symbol, index: MultiIndex) -> str:
        if index.order == 0:
            return dep.name
        letters = "".join(self.independent[p].name for p in index.positions)
        return f"{dep.name}_{letters}"

    def jet_symbol(self, dep: Union[Symbol, str], index: IndexLike) -> Symbol:
        """The coordinate symbol ``u_I``; deterministic and injective."""
        if isinstance(dep, str):
            dep = Symbol(dep)
        if dep not in self._dep_by_name.values():
            raise JetcoverError(f"{dep.name!r} is not a declared dependent variable")
        index = self.multi_index(index)
        if index.order > self.max_order:
            raise TruncationError(self.jet_name(dep, index), self.max_order)
        key = (dep, index)
        got = self._table.get(key)
        if got is not None:
            return got
        with self._lock:
            got = self._table.get(key)
            if got is None:
                got = Symbol(self.jet_name(dep, index))
                self._register(dep, index, got)
        return got

    def jet(self, dep: Union[Symbol, str], index: IndexLike) -> RationalExpr:
        return RationalExpr.from_symbol(self.jet_symbol(dep, index))

    def var(self, direction: DirectionLike) -> RationalExpr:
        return RationalExpr.from_symbol(self.independent[self.position(direction)])

    def decompose(self, symbol: Symbol) -> Optional[tuple[Symbol, MultiIndex]]:
        """Recognize ``symbol`` as a jet coordinate of this context, if it is one.

        Recognition is by name, so jet symbols created by a structurally
        identical context are recognized too.  Non-canonical spellings
        (subscripts out of declaration order) are not recognized.
        """
        got = self._reverse.get(symbol)
        if got is not None:
            return got
        name = symbol.name
        if "_" not in name:
            return None
        base, _, suffix = name.partition("_")
        dep = self._dep_by_name.get(base)
        if dep is None or not suffix:
            return None
        positions = []
        for ch in suffix:
            pos = self._position.get(Symbol(ch))
            if pos is None:
                return None
            positions.append(pos)
        index = MultiIndex(positions)
        if self.jet_name(dep, index) != name:
            return None  # not in canonical subscript order
        if index.order <= self.max_order:
            with self._lock:
                if symbol not in self._reverse:
                    self._register(dep, index, symbol)
        return (dep, index)

    def jet_symbols_in(self, expr: RationalExpr) -> list[tuple[Symbol, Symbol, MultiIndex]]:
        """All jet coordinates occurring in ``expr``, sorted by symbol name."""
        out = []
        for s in expr.symbols():
            d = self.decompose(s)
            if d is not None:
                out.append((s, d[0], d[1]))
        return out

    def __repr__(self) -> str:
        ind = ",".join(s.name for s in self.independent)
        dep = ",".join(s.name for s in self.dependent)
        return f"JetContext({ind}; {dep}; order<={self.max_order})"


def total_derivative(a, direction: DirectionLike, ctx: JetContext) -> RationalExpr:
    """The total derivative D_i: d/dx^i plus the sum of u_{Ii} d/du_I.

    The sum runs over every jet coordinate present in ``a``; needing a
    coordinate beyond ``ctx.max_order`` raises :class:`TruncationError`
    naming it.
    """
    a = coerce(a)
    pos = ctx.position(direction)
    result = a.derivative(ctx.independent[pos])
    for s, dep, index in ctx.jet_symbols_in(a):
        da = a.derivative(s)
        if da.is_zero():
            continue
        if index.order + 1 > ctx.max_order:
            raise TruncationError(ctx.jet_name(dep, index.plus(pos)), ctx.max_order)
        result = result + ctx.jet(dep, index.plus(pos)) * da
    return result


def iterated_total_derivative(a, index: IndexLike, ctx: JetContext) -> RationalExpr:
    """D_I = D_{i_1} after ... after D_{i_k}; independent of composition order."""
    a = coerce(a)
    for pos in ctx.multi_index(index).positions:
        a = total_derivative(a, pos, ctx)
    return a


def jet_symbol(dep: Union[Symbol, str], index: IndexLike, ctx: JetContext) -> Symbol:
    return ctx.jet_symbol(dep, index)
