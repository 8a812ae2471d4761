"""Bounded enumeration of finitely presented groups by coset enumeration.

Used by the pushout construction: vertex groups of a glued groupoid arrive
as presentations, and only a bounded enumeration can decide whether the
gluing stays finite.  Cosets of the trivial subgroup are the elements, so a
completed table immediately gives a multiplication table and shortlex-style
words (BFS over the coset graph) for every element.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BoundExceeded
from .group import FiniteGroup


@dataclass
class EnumeratedGroup:
    group: FiniteGroup
    words: list          # per element, letters in application order (see below)
    gen_element: list    # element index of each presentation generator

    # a letter is 2*g for generator g, 2*g+1 for its inverse


def _letters(relator):
    out = []
    for g, sign in relator:
        out.append(2 * g if sign > 0 else 2 * g + 1)
    return out


def coset_enumeration(n_gens, relators, max_cosets):
    """Coset table of the trivial subgroup, or BoundExceeded.

    Returns (table, n_live) with cosets renumbered 0..n_live-1 and
    table[c][letter] giving the action of each generator letter.
    """
    width = 2 * n_gens
    rel_words = [_letters(r) for r in relators if r]
    table = [[None] * width]
    parent = [0]

    def rep(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    pending = []

    def merge(a, b):
        a, b = rep(a), rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        parent[b] = a
        pending.append(b)

    def process_coincidences():
        while pending:
            e = pending.pop()
            row = table[e]
            for x in range(width):
                f = row[x]
                if f is None:
                    continue
                row[x] = None
                if table[f][x ^ 1] == e:
                    table[f][x ^ 1] = None
                e1, f1 = rep(e), rep(f)
                if table[e1][x] is not None:
                    merge(f1, table[e1][x])
                elif table[f1][x ^ 1] is not None:
                    merge(e1, table[f1][x ^ 1])
                else:
                    table[e1][x] = f1
                    table[f1][x ^ 1] = e1

    def define(a, x):
        if len(table) >= max_cosets:
            raise BoundExceeded("coset enumeration", max_cosets)
        b = len(table)
        table.append([None] * width)
        parent.append(b)
        table[a][x] = b
        table[b][x ^ 1] = a
        return b

    def scan_and_fill(a, word):
        f, i = a, 0
        b, j = a, len(word) - 1
        while True:
            while i <= j and table[f][word[i]] is not None:
                f = rep(table[f][word[i]])
                i += 1
            if i > j:
                if f != b:
                    merge(f, b)
                    process_coincidences()
                return
            while j >= i and table[b][word[j] ^ 1] is not None:
                b = rep(table[b][word[j] ^ 1])
                j -= 1
            if j < i:
                merge(f, b)
                process_coincidences()
                return
            if j == i:
                table[f][word[i]] = b
                table[b][word[i] ^ 1] = f
                return
            f = define(f, word[i])
            i += 1

    # HLT sweeps until the table is stable, then verify closure and relators
    while True:
        changed = False
        idx = 0
        while idx < len(table):
            if rep(idx) != idx:
                idx += 1
                continue
            before = len(table)
            for w in rel_words:
                if rep(idx) != idx:
                    break
                scan_and_fill(idx, w)
            if rep(idx) == idx:
                for x in range(width):
                    if table[idx][x] is None:
                        define(idx, x)
            if len(table) != before:
                changed = True
            idx += 1
        # verify: closed and every relator traces to the start coset
        ok = True
        for c in range(len(table)):
            if rep(c) != c:
                continue
            row = table[c]
            for x in range(width):
                if row[x] is None or rep(row[x]) != row[x]:
                    ok = False
        if ok:
            for c in range(len(table)):
                if rep(c) != c:
                    continue
                for w in rel_words:
                    t = c
                    for x in w:
                        t = rep(table[t][x])
                    if t != c:
                        ok = False
        if ok and not changed:
            break
        if not changed and not ok:
            # stale merged entries: normalize the table and go again
            for c in range(len(table)):
                if rep(c) != c:
                    continue
                row = table[c]
                for x in range(width):
                    if row[x] is not None:
                        row[x] = rep(row[x])
            changed = True

    live = [c for c in range(len(table)) if rep(c) == c]
    renum = {c: k for k, c in enumerate(live)}
    out = [[renum[rep(table[c][x])] for x in range(width)] for c in live]
    return out, len(live)


def enumerate_fp_group(n_gens, relators, max_cosets):
    """EnumeratedGroup for <x_0..x_{n-1} | relators>, or BoundExceeded.

    Relators are lists of (generator, sign).  Element words come from a BFS
    over the coset graph and are reported in application order: the first
    letter of the word acts first.
    """
    table, n = coset_enumeration(n_gens, relators, max_cosets)
    width = 2 * n_gens
    # BFS words (letters act on the right; trace order = left-to-right)
    words_lr = [None] * n
    words_lr[0] = []
    frontier = [0]
    while frontier:
        nxt = []
        for c in frontier:
            for x in range(width):
                d = table[c][x]
                if words_lr[d] is None:
                    words_lr[d] = words_lr[c] + [x]
                    nxt.append(d)
        frontier = nxt

    def trace(c, word):
        for x in word:
            c = table[c][x]
        return c

    mult = tuple(tuple(trace(i, words_lr[j]) for j in range(n)) for i in range(n))
    group = FiniteGroup(mult, 0, tuple(range(n)), f"fp({n_gens} gens)")
    # application order is the reverse of trace order (left factor acts last)
    words = [list(reversed(w)) for w in words_lr]
    gen_element = [table[0][2 * g] for g in range(n_gens)]
    return EnumeratedGroup(group, words, gen_element)
