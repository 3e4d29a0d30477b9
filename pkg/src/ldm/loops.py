"""Finite quasigroups as latin squares, principal isotopes, and permutation groups.

Elements are addressed by 0-based index everywhere in Python; the JSON
encoding uses 1-based indices.
"""
from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import BadParameters, CapExceeded, IncompleteRow, NotAGroup, NotLatin

DEFAULT_CLOSURE_CAP = 10 ** 6


@dataclass(frozen=True, eq=False)
class MultTable:
    names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]

    def __eq__(self, other):
        return isinstance(other, MultTable) and self.names == other.names and self.table == other.table

    def __hash__(self):
        return hash((self.names, self.table))

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def _ldiv(self):
        # _ldiv[a][b] = x with a*x = b
        out = [[0] * self.order for _ in range(self.order)]
        for a, row in enumerate(self.table):
            for x, b in enumerate(row):
                out[a][b] = x
        return out

    @cached_property
    def _rdiv(self):
        # _rdiv[b][a] = x with x*a = b
        out = [[0] * self.order for _ in range(self.order)]
        for x, row in enumerate(self.table):
            for a, b in enumerate(row):
                out[b][a] = x
        return out

    def ldiv(self, a: int, b: int) -> int:
        """``a \\ b``: the unique x with a*x = b."""
        return self._ldiv[a][b]

    def rdiv(self, b: int, a: int) -> int:
        """``b / a``: the unique x with x*a = b."""
        return self._rdiv[b][a]

    def index(self, name: str) -> int:
        return self.names.index(name)

    @cached_property
    def unit(self) -> int | None:
        """Two-sided identity element, if any."""
        ident = tuple(range(self.order))
        for e in range(self.order):
            if self.table[e] == ident and all(self.table[x][e] == x for x in range(self.order)):
                return e
        return None

    def is_loop(self) -> bool:
        return self.unit is not None

    def is_associative(self) -> bool:
        t = self.table
        r = range(self.order)
        return all(t[t[a][b]][c] == t[a][t[b][c]] for a in r for b in r for c in r)

    def is_group(self) -> bool:
        return self.unit is not None and self.is_associative()

    def inverse(self, a: int) -> int:
        e = self.unit
        if e is None:
            raise NotAGroup("table has no identity")
        return self.ldiv(a, e)

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "names": list(self.names),
            "table": [[v + 1 for v in row] for row in self.table],
        }

    @classmethod
    def from_json(cls, data: dict) -> MultTable:
        rows = data["table"]
        names = data.get("names")
        if "order" in data and data["order"] != len(rows):
            raise ValueError("order does not match table size")
        return validate_latin(rows, names, base=1)


def validate_latin(rows: Sequence[Sequence[int]], names: Sequence[str] | None = None, base: int = 0) -> MultTable:
    """Check that ``rows`` is a latin square with entries ``base..base+n-1``."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("table is not square")
    table = []
    for r in rows:
        if any(not isinstance(v, int) or not base <= v < base + n for v in r):
            raise ValueError(f"entry out of range in row {r}")
        table.append(tuple(v - base for v in r))
    full = set(range(n))
    for i, r in enumerate(table):
        if set(r) != full:
            raise NotLatin("row", i)
    for j in range(n):
        if {r[j] for r in table} != full:
            raise NotLatin("column", j)
    if names is None:
        names = [str(i + 1) for i in range(n)]
    names = tuple(str(x) for x in names)
    if len(names) != n or len(set(names)) != n:
        raise ValueError("element names must be n distinct tokens")
    return MultTable(names, tuple(table))


def divide(t: MultTable, side: str, a: int, b: int) -> int:
    """left: x with a*x = b; right: x with x*a = b."""
    if side == "left":
        return t.ldiv(a, b)
    if side == "right":
        return t.rdiv(b, a)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def principal_isotope(t: MultTable, u: int, v: int) -> MultTable:
    """Table of x o y = (x/v)(u\\y); a loop with unit u*v."""
    r = range(t.order)
    rows = tuple(tuple(t.mul(t.rdiv(x, v), t.ldiv(u, y)) for y in r) for x in r)
    return MultTable(t.names, rows)


def element_order(t: MultTable, a: int) -> int:
    e = t.unit
    k, x = 1, a
    while x != e:
        x = t.mul(x, a)
        k += 1
    return k


def element_order_census(t: MultTable) -> Counter:
    if not t.is_group():
        raise NotAGroup("element orders need a group table")
    return Counter(element_order(t, a) for a in range(t.order))


def standard_table(kind: str, *params: int) -> MultTable:
    """One of: ``cyclic n``, ``dihedral_geom m``, ``biextension m k``, ``elem_abelian r k``."""
    if kind == "cyclic":
        (n,) = params
        if n < 1:
            raise BadParameters("cyclic order must be positive")
        return MultTable(
            tuple(str(i) for i in range(n)),
            tuple(tuple((i + j) % n for j in range(n)) for i in range(n)),
        )
    if kind == "dihedral_geom":
        # h in 0..m-1 is the rotation h, m+h is h*sigma
        (m,) = params
        if m < 1:
            raise BadParameters("dihedral parameter must be positive")

        def mul(a, b):
            ra, sa = a % m, a >= m
            rb, sb = b % m, b >= m
            if not sa and not sb:
                return (ra + rb) % m
            if not sa and sb:
                return m + (rb - ra) % m
            if sa and not sb:
                return m + (ra + rb) % m
            return (rb - ra) % m

        n = 2 * m
        names = tuple(str(h) for h in range(m)) + tuple(f"{h}s" for h in range(m))
        return MultTable(names, tuple(tuple(mul(a, b) for b in range(n)) for a in range(n)))
    if kind == "biextension":
        m, k = params
        if m < 1 or not 0 <= k < m:
            raise BadParameters("biextension needs m >= 1 and 0 <= k < m")

        def mul(a, b):
            ra, pa = a % m, a >= m
            rb, pb = b % m, b >= m
            if pa and pb:
                return (ra + rb + k) % m
            if pa or pb:
                return m + (ra + rb) % m
            return (ra + rb) % m

        n = 2 * m
        names = tuple(str(h) for h in range(m)) + tuple(f"{h}'" for h in range(m))
        return MultTable(names, tuple(tuple(mul(a, b) for b in range(n)) for a in range(n)))
    if kind == "elem_abelian":
        r, k = params
        if r < 2 or k < 1:
            raise BadParameters("elementary abelian group needs r >= 2 and k >= 1")
        elems = list(itertools.product(range(r), repeat=k))
        pos = {e: i for i, e in enumerate(elems)}
        names = tuple("(" + ",".join(map(str, e)) + ")" for e in elems)
        rows = tuple(
            tuple(pos[tuple((x + y) % r for x, y in zip(a, b))] for b in elems) for a in elems
        )
        return MultTable(names, rows)
    raise BadParameters(f"unknown table kind {kind!r}")


# ---------------------------------------------------------------------------
# partial squares


@dataclass(frozen=True)
class PartialSquare:
    """n x n array of 0-based symbols, ``None`` where undetermined."""

    entries: tuple[tuple[int | None, ...], ...]

    @property
    def order(self) -> int:
        return len(self.entries)

    def is_row_complete(self, i: int) -> bool:
        row = self.entries[i]
        return None not in row and len(set(row)) == self.order

    def complete_rows(self) -> list[int]:
        return [i for i in range(self.order) if self.is_row_complete(i)]

    def undetermined(self) -> list[tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.entries) for j, v in enumerate(row) if v is None]

    def to_json(self) -> list[list[int]]:
        return [[0 if v is None else v + 1 for v in row] for row in self.entries]

    @classmethod
    def from_json(cls, rows) -> PartialSquare:
        return cls(tuple(tuple(None if v == 0 else v - 1 for v in row) for row in rows))

    def is_consistent(self) -> bool:
        """Each determined symbol at most once per row and column."""
        for lines in (self.entries, zip(*self.entries)):
            for ln in lines:
                vals = [v for v in ln if v is not None]
                if len(vals) != len(set(vals)):
                    return False
        return True


def complete_partial_square(s: PartialSquare, allowed: Sequence[Sequence[Iterable[int]]] | None = None) -> MultTable:
    """Lexicographically first latin completion of ``s``.

    Cells are filled in row-major order with the smallest legal symbol,
    backtracking on dead ends.  ``allowed[i][j]``, when given, restricts the
    symbols cell (i, j) may take.
    """
    n = s.order
    grid = [list(r) for r in s.entries]
    row_used = [set(v for v in r if v is not None) for r in grid]
    col_used = [set(grid[i][j] for i in range(n) if grid[i][j] is not None) for j in range(n)]
    holes = s.undetermined()
    cand = {
        (i, j): sorted(set(allowed[i][j]) if allowed is not None else range(n)) for i, j in holes
    }

    def legal(i, j):
        return [v for v in cand[(i, j)] if v not in row_used[i] and v not in col_used[j]]

    def fill(k):
        if k == len(holes):
            return True
        i, j = holes[k]
        for sym in legal(i, j):
            grid[i][j] = sym
            row_used[i].add(sym)
            col_used[j].add(sym)
            # forward check: every later hole in this row or column keeps a candidate
            if all(legal(a, b) for a, b in holes[k + 1:] if a == i or b == j) and fill(k + 1):
                return True
            row_used[i].discard(sym)
            col_used[j].discard(sym)
        grid[i][j] = None
        return False

    if not fill(0):
        raise ValueError("partial square has no latin completion")
    return validate_latin(grid)


# ---------------------------------------------------------------------------
# permutation groups
#
# A permutation is a tuple p with p[i] the image of i.  Products compose right
# to left: (p * q)[i] = p[q[i]].


def compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(p[i] for i in q)


def invert(p: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def from_cycles(degree: int, *cycles: Iterable[int]) -> tuple[int, ...]:
    """Permutation from 1-based cycles, e.g. ``from_cycles(3, (1, 2, 3))``."""
    img = list(range(degree))
    for cyc in cycles:
        cyc = [c - 1 for c in cyc]
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a] = b
    return tuple(img)


@dataclass(frozen=True, eq=False)
class PermGroup:
    degree: int
    generators: tuple[tuple[int, ...], ...]
    cap: int = field(default=DEFAULT_CLOSURE_CAP, repr=False)

    @cached_property
    def elements(self) -> frozenset[tuple[int, ...]]:
        ident = tuple(range(self.degree))
        seen = {ident}
        queue = deque([ident])
        while queue:
            g = queue.popleft()
            for s in self.generators:
                h = compose(s, g)
                if h not in seen:
                    seen.add(h)
                    if len(seen) > self.cap:
                        raise CapExceeded(f"closure exceeded {self.cap} elements")
                    queue.append(h)
        return frozenset(seen)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p) -> bool:
        return tuple(p) in self.elements


def perm_closure(gens: Sequence[Sequence[int]], cap: int = DEFAULT_CLOSURE_CAP, degree: int | None = None) -> PermGroup:
    gens = tuple(tuple(g) for g in gens)
    if degree is None:
        if not gens:
            raise ValueError("degree is required when there are no generators")
        degree = len(gens[0])
    if any(len(g) != degree for g in gens):
        raise ValueError("generators of different degrees")
    group = PermGroup(degree, gens, cap)
    group.elements  # noqa: B018 - force closure so CapExceeded surfaces here
    return group


def row_quotient_group(s: PartialSquare, rows: Iterable[int], cap: int = DEFAULT_CLOSURE_CAP) -> PermGroup:
    """Group generated by rho_x rho_b^-1 over the chosen rows, b the smallest."""
    rows = sorted(set(rows))
    if not rows:
        raise ValueError("need at least one row")
    for i in rows:
        if not s.is_row_complete(i):
            raise IncompleteRow(i)
    base_inv = invert(s.entries[rows[0]])
    gens = [compose(s.entries[x], base_inv) for x in rows]
    return perm_closure(gens, cap, degree=s.order)
