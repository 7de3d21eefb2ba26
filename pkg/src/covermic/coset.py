"""Todd-Coxeter coset enumeration and coset tables.

The enumerator is relator-driven (HLT) with scan-and-fill and full
transitive-closure coincidence merging over a union-find with path
compression.  Every returned table is checked for completeness, relator
closure, subgroup-word stabilization of coset 1 and transitivity, so a
bug here fails loudly rather than corrupting counts downstream.

Cosets are numbered 1..index in the public CosetTable; generator k acts
by table.action[k-1].  Internally rows are 0-based with 2g columns
(generator, inverse) interleaved.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .presentations import GroupPresentation
from .words import Word, free_reduce


class CosetLimitExceeded(RuntimeError):
    """Enumeration would exceed the live-coset limit (divergent or merely large)."""

    def __init__(self, limit: int):
        super().__init__(f"coset enumeration exceeded {limit} live cosets")
        self.limit = limit


class TableInvariantError(AssertionError):
    """A produced coset table violates one of its defining invariants."""


def word_to_cols(word: Sequence[int]) -> tuple[int, ...]:
    """Signed letters to column indices: +k -> 2(k-1), -k -> 2(k-1)+1."""
    return tuple(2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1 for x in word)


def _inv_col(c: int) -> int:
    return c ^ 1


@dataclass(frozen=True)
class CosetTable:
    """A complete coset table: the permutation action on cosets 1..index."""

    index: int
    action: tuple[tuple[int, ...], ...]  # per generator, images of 1..index
    base_subgroup_words: tuple[Word, ...] = ()

    def apply(self, coset: int, letter: int) -> int:
        """Image of a coset (1-based) under a signed generator letter."""
        if letter > 0:
            return self.action[letter - 1][coset - 1]
        return self._inverse_action()[-letter - 1][coset - 1]

    def _inverse_action(self) -> tuple[tuple[int, ...], ...]:
        inv = getattr(self, "_inv_cache", None)
        if inv is None:
            inv = tuple(_invert_perm(a) for a in self.action)
            object.__setattr__(self, "_inv_cache", inv)
        return inv

    def trace(self, coset: int, word: Sequence[int]) -> int:
        for x in word:
            coset = self.apply(coset, x)
        return coset

    def key(self) -> tuple[tuple[int, ...], ...]:
        """Hashable canonical content (used for dedup of standardized tables)."""
        return self.action


def _invert_perm(perm: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for i, img in enumerate(perm):
        inv[img - 1] = i + 1
    return tuple(inv)


# ---------------------------------------------------------------------------
# enumeration


class _Enumerator:
    def __init__(self, ngens: int, max_cosets: int):
        self.ngens = ngens
        self.ncols = 2 * ngens
        self.max_cosets = max_cosets
        self.table: list[list[Optional[int]]] = [[None] * self.ncols]
        self.p: list[int] = [0]  # union-find parents; p[i] <= i
        self.nlive = 1

    def rep(self, k: int) -> int:
        p = self.p
        r = k
        while p[r] != r:
            r = p[r]
        while p[k] != r:  # path compression
            p[k], k = r, p[k]
        return r

    def is_live(self, k: int) -> bool:
        return self.p[k] == k

    def define(self, alpha: int, col: int) -> int:
        if self.nlive >= self.max_cosets:
            raise CosetLimitExceeded(self.max_cosets)
        beta = len(self.table)
        self.table.append([None] * self.ncols)
        self.p.append(beta)
        self.nlive += 1
        self.table[alpha][col] = beta
        self.table[beta][_inv_col(col)] = alpha
        return beta

    def _merge(self, k: int, lam: int, queue: deque) -> None:
        k, lam = self.rep(k), self.rep(lam)
        if k == lam:
            return
        mu, nu = (k, lam) if k < lam else (lam, k)
        self.p[nu] = mu
        self.nlive -= 1
        queue.append(nu)

    def coincidence(self, alpha: int, beta: int) -> None:
        queue: deque = deque()
        self._merge(alpha, beta, queue)
        table = self.table
        while queue:
            gamma = queue.popleft()
            for c in range(self.ncols):
                delta = table[gamma][c]
                if delta is None:
                    continue
                table[delta][_inv_col(c)] = None
                mu, nu = self.rep(gamma), self.rep(delta)
                t_mu = table[mu][c]
                if t_mu is not None:
                    self._merge(nu, t_mu, queue)
                else:
                    t_nu = table[nu][_inv_col(c)]
                    if t_nu is not None:
                        self._merge(mu, t_nu, queue)
                    else:
                        table[mu][c] = nu
                        table[nu][_inv_col(c)] = mu

    def scan_and_fill(self, alpha: int, cols: Sequence[int]) -> None:
        """Scan the word from alpha, defining cosets to force closure."""
        table = self.table
        f, b = alpha, alpha
        i, j = 0, len(cols) - 1
        while True:
            while i <= j:
                nxt = table[f][cols[i]]
                if nxt is None:
                    break
                f = nxt
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i:
                prv = table[b][_inv_col(cols[j])]
                if prv is None:
                    break
                b = prv
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:  # deduction closes the cycle
                table[f][cols[i]] = b
                table[b][_inv_col(cols[i])] = f
                return
            f = self.define(f, cols[i])
            i += 1

    def run(self, relator_cols: list[tuple[int, ...]], subgroup_cols: list[tuple[int, ...]]) -> None:
        # Scan subgroup generators at coset 0 first, then relators at every
        # live coset; repeat until a full pass makes no change (coincidences
        # can invalidate earlier scans, so a stable pass is the stop rule).
        while True:
            before = (self.nlive, len(self.table), self._defined_count())
            for w in subgroup_cols:
                if w:
                    self.scan_and_fill(self.rep(0), w)
            alpha = 0
            while alpha < len(self.table):
                if self.is_live(alpha):
                    for r in relator_cols:
                        if not self.is_live(alpha):
                            break
                        if r:
                            self.scan_and_fill(alpha, r)
                alpha += 1
            # ensure completeness of definitions as well
            alpha = 0
            while alpha < len(self.table):
                if self.is_live(alpha):
                    row = self.table[alpha]
                    for c in range(self.ncols):
                        if row[c] is None:
                            self.define(alpha, c)
                alpha += 1
            after = (self.nlive, len(self.table), self._defined_count())
            if after == before:
                return

    def _defined_count(self) -> int:
        return sum(
            1
            for k in range(len(self.table))
            if self.is_live(k)
            for v in self.table[k]
            if v is not None
        )

    def extract(self) -> list[list[int]]:
        live = [k for k in range(len(self.table)) if self.is_live(k)]
        number = {k: i for i, k in enumerate(live)}
        out = []
        for k in live:
            row = []
            for c in range(self.ncols):
                v = self.table[k][c]
                if v is None:
                    raise TableInvariantError("incomplete table after enumeration")
                row.append(number[self.rep(v)])
            out.append(row)
        return out


def enumerate_cosets(
    p: GroupPresentation,
    subgroup_gens: Sequence[Word] = (),
    max_cosets: int = 0,
) -> CosetTable:
    """Complete coset table of the subgroup generated by subgroup_gens.

    Raises CosetLimitExceeded when live cosets would exceed max_cosets
    (the enumeration may be divergent or merely large; the caller decides).
    max_cosets must be given explicitly by library callers.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be >= 1")
    subgroup_words = tuple(free_reduce(w) for w in subgroup_gens)
    enum = _Enumerator(p.generator_count, max_cosets)
    enum.run(
        [word_to_cols(r) for r in p.relators],
        [word_to_cols(w) for w in subgroup_words],
    )
    rows = enum.extract()
    table = _table_from_rows(rows, p.generator_count, subgroup_words)
    table = standardize_table(table)
    check_table(p, table)
    return table


def _table_from_rows(
    rows: list[list[int]], ngens: int, base_words: tuple[Word, ...] = ()
) -> CosetTable:
    n = len(rows)
    action = tuple(
        tuple(rows[i][2 * g] + 1 for i in range(n)) for g in range(ngens)
    )
    return CosetTable(index=n, action=action, base_subgroup_words=base_words)


def standardize_table(t: CosetTable) -> CosetTable:
    """Renumber cosets by breadth-first scan from coset 1 in generator order.

    Idempotent; the output is the canonical representative of t up to
    renumberings fixing coset 1.  Columns scan generator then inverse.
    """
    perm = _bfs_numbering(t, 1)
    return _apply_numbering(t, perm)


def _bfs_numbering(t: CosetTable, base: int) -> dict[int, int]:
    """BFS renumbering sending base -> 1, scanning rows in new order."""
    inv = t._inverse_action()
    nu = {base: 1}
    order = [base]
    i = 0
    while i < len(order):
        alpha = order[i]
        i += 1
        for g in range(len(t.action)):
            for img in (t.action[g][alpha - 1], inv[g][alpha - 1]):
                if img not in nu:
                    nu[img] = len(order) + 1
                    order.append(img)
    return nu


def _apply_numbering(t: CosetTable, nu: dict[int, int]) -> CosetTable:
    n = t.index
    action = []
    old_of_new = {v: k for k, v in nu.items()}
    for g in range(len(t.action)):
        col = [0] * n
        for new in range(1, n + 1):
            col[new - 1] = nu[t.action[g][old_of_new[new] - 1]]
        action.append(tuple(col))
    return CosetTable(index=n, action=tuple(action), base_subgroup_words=t.base_subgroup_words)


@dataclass(frozen=True)
class PermutationRep:
    degree: int
    images: tuple[tuple[int, ...], ...]  # one permutation of 1..degree per generator

    def apply(self, point: int, letter: int) -> int:
        if letter > 0:
            return self.images[letter - 1][point - 1]
        return _invert_perm(self.images[-letter - 1])[point - 1]

    def word_perm(self, word: Sequence[int]) -> tuple[int, ...]:
        """Permutation (as image tuple) of an arbitrary word."""
        out = []
        for start in range(1, self.degree + 1):
            x = start
            for letter in word:
                x = self.apply(x, letter)
            out.append(x)
        return tuple(out)


def permutation_rep(t: CosetTable) -> PermutationRep:
    return PermutationRep(degree=t.index, images=t.action)


def group_order(p: GroupPresentation, max_cosets: int) -> Optional[int]:
    """Order of the presented group, or None when enumeration overflows.

    Overflow means unknown, never "infinite".
    """
    try:
        table = enumerate_cosets(p, (), max_cosets=max_cosets)
    except CosetLimitExceeded:
        return None
    return table.index


def check_table(p: GroupPresentation, t: CosetTable) -> None:
    """Assert completeness, relator closure, base-word stabilization of
    coset 1, and transitivity.  Raises TableInvariantError on violation."""
    n = t.index
    for g, perm in enumerate(t.action):
        if sorted(perm) != list(range(1, n + 1)):
            raise TableInvariantError(f"generator {g + 1} action is not a bijection")
    for r in p.relators:
        for start in range(1, n + 1):
            if t.trace(start, r) != start:
                raise TableInvariantError(f"relator {r} does not close at coset {start}")
    for w in t.base_subgroup_words:
        if t.trace(1, w) != 1:
            raise TableInvariantError(f"subgroup word {w} does not fix coset 1")
    seen = {1}
    stack = [1]
    while stack:
        alpha = stack.pop()
        for g in range(len(t.action)):
            for img in (t.action[g][alpha - 1], t._inverse_action()[g][alpha - 1]):
                if img not in seen:
                    seen.add(img)
                    stack.append(img)
    if len(seen) != n:
        raise TableInvariantError("action is not transitive")


def perm_group_order(images: Sequence[tuple[int, ...]], cap: int = 10**6) -> Optional[int]:
    """Order of the permutation group generated by image tuples, by closure.

    Returns None if the closure exceeds cap elements.  Identity-only input
    gives 1.  Used as the independent oracle for small finite quotients.
    """
    degree = len(images[0]) if images else 1
    ident = tuple(range(1, degree + 1))
    gens = [tuple(g) for g in images]
    els = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                prod = tuple(g[a[i] - 1] for i in range(degree))
                if prod not in els:
                    els.add(prod)
                    if len(els) > cap:
                        return None
                    nxt.append(prod)
        frontier = nxt
    return len(els)
