"""The symmetric-group baseline: cycle types, class-algebra structure constants
and their stability in ``n``.

Permutations are numpy arrays of images of ``0..n-1``; helpers accept
1-based cycle notation.  Products compose right to left: ``(x y)(i) = x(y(i))``.
"""

from __future__ import annotations

import functools
import itertools
import math
from collections import Counter

import numpy as np

from .combin import ncomplete_partition, partition, partitions

MAX_N = 9


class PermError(ValueError):
    pass


def perm_from_cycles(cycles, n: int) -> np.ndarray:
    """``[(3, 4, 5), (7, 8)]`` (1-based) as an image array on ``n`` points."""
    g = np.arange(n)
    seen = set()
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            if not 1 <= a <= n or a in seen:
                raise PermError(f"bad cycle {cyc} for n={n}")
            seen.add(a)
            g[a - 1] = b - 1
    return g


def _pad(g, n: int) -> np.ndarray:
    g = np.asarray(g, dtype=np.int64)
    if len(g) > n:
        raise PermError("permutation longer than n")
    return np.concatenate([g, np.arange(len(g), n)])


def cycle_lengths(g) -> list[int]:
    g = np.asarray(g)
    seen = np.zeros(len(g), dtype=bool)
    out = []
    for i in range(len(g)):
        if not seen[i]:
            k, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = g[j]
                k += 1
            out.append(k)
    return out


def cycle_type(g, n: int | None = None) -> tuple:
    g = _pad(g, len(g) if n is None else n)
    return partition(cycle_lengths(g))


def support(g) -> set:
    """Moved points, 1-based."""
    return {i + 1 for i, x in enumerate(np.asarray(g)) if x != i}


def refl_length_perm(g, n: int | None = None) -> int:
    g = _pad(g, len(g) if n is None else n)
    return len(g) - len(cycle_lengths(g))


def rep_of_type(parts, n: int) -> np.ndarray:
    """Permutation with consecutive cycles of the given lengths."""
    parts = tuple(parts) + (1,) * (n - sum(parts))
    g = np.arange(n)
    i = 0
    for k in parts:
        for j in range(k):
            g[i + j] = i + (j + 1) % k
        i += k
    return g


def centralizer_order(parts) -> int:
    """``prod a^{m_a} m_a!`` over part sizes ``a`` with multiplicity ``m_a``."""
    out = 1
    for a, m in Counter(parts).items():
        out *= a ** m * math.factorial(m)
    return out


def class_size(parts, n: int) -> int:
    parts = tuple(parts) + (1,) * (n - sum(parts))
    return math.factorial(n) // centralizer_order(parts)


# vectorized helpers ----------------------------------------------------------


@functools.lru_cache(maxsize=None)
def all_perms(n: int) -> np.ndarray:
    if n > MAX_N:
        raise PermError(f"n={n} exceeds the enumeration limit {MAX_N}")
    return np.array(list(itertools.permutations(range(n))), dtype=np.int8)


def _lengths_sorted(P) -> np.ndarray:
    """For each permutation, the sorted multiset of per-point cycle lengths.

    Two permutations have the same cycle type iff these rows agree.
    """
    P = np.asarray(P, dtype=np.int64)
    S, n = P.shape
    cur = P.copy()
    length = np.zeros((S, n), dtype=np.int64)
    idx = np.arange(n)
    rows = np.arange(S)[:, None]
    for k in range(1, n + 1):
        hit = (cur == idx[None, :]) & (length == 0)
        length[hit] = k
        cur = P[rows, cur]
    return np.sort(length, axis=1)


def _type_signature(parts, n: int) -> np.ndarray:
    parts = tuple(parts) + (1,) * (n - sum(parts))
    return np.sort(np.array([k for k in parts for _ in range(k)], dtype=np.int64))


@functools.lru_cache(maxsize=None)
def conj_class(parts: tuple, n: int) -> np.ndarray:
    """All permutations of the given cycle type (rows, sorted)."""
    g = rep_of_type(parts, n)
    S = all_perms(n).astype(np.int64)
    conj = np.empty_like(S)
    conj[np.arange(len(S))[:, None], S] = S[:, g]  # sigma g sigma^{-1}
    return np.unique(conj, axis=0)


def _inverse_rows(P):
    P = np.asarray(P, dtype=np.int64)
    inv = np.empty_like(P)
    inv[np.arange(len(P))[:, None], P] = np.arange(P.shape[1])[None, :]
    return inv


# structure constants ---------------------------------------------------------


def sc_symmetric(lam, mu, eta, n: int) -> int:
    """``c_{lam, mu}^{eta}(n)`` for modified cycle types, by fiber counting."""
    if n > MAX_N:
        raise PermError(f"n={n} exceeds the enumeration limit {MAX_N}")
    lam_n = ncomplete_partition(partition(lam), n)
    mu_n = ncomplete_partition(partition(mu), n)
    eta_n = ncomplete_partition(partition(eta), n)
    z = rep_of_type(eta_n, n)
    X = conj_class(lam_n, n)
    Y = _inverse_rows(X)[:, z]  # y = x^{-1} z
    sig = _type_signature(mu_n, n)
    return int((_lengths_sorted(Y) == sig[None, :]).all(axis=1).sum())


def expand_symmetric(lam, mu, n: int) -> dict:
    """Full expansion ``{eta: c}`` of ``K_lam K_mu`` in ``S_n``."""
    lam_n = ncomplete_partition(partition(lam), n)
    mu_n = ncomplete_partition(partition(mu), n)
    X = conj_class(lam_n, n)
    Xi = _inverse_rows(X)
    sig_mu = _type_signature(mu_n, n)
    out = {}
    for eta_n in partitions(n):
        z = rep_of_type(eta_n, n)
        c = int((_lengths_sorted(Xi[:, z]) == sig_mu[None, :]).all(axis=1).sum())
        if c:
            out[tuple(p - 1 for p in eta_n if p > 1)] = c
    return out


def modified_types_fitting(n: int) -> list[tuple]:
    """Modified cycle types whose completion fits ``S_n``."""
    out = []
    for k in range(n + 1):
        for p in partitions(k):
            if k + len(p) <= n:
                out.append(p)
    return out


def stability_check(n_lo: int, n_hi: int, fit: int | None = None) -> dict:
    """Top-degree constants for all triples fitting ``S_fit`` across ``n_lo..n_hi``."""
    fit = n_lo if fit is None else fit
    types = modified_types_fitting(fit)
    rows = []
    for lam, mu in itertools.combinations_with_replacement(types, 2):
        for eta in types:
            if sum(eta) != sum(lam) + sum(mu):
                continue
            vals = [sc_symmetric(lam, mu, eta, n) for n in range(n_lo, n_hi + 1)]
            rows.append({"lambda": lam, "mu": mu, "eta": eta, "values": vals,
                         "constant": len(set(vals)) == 1})
    return {"n": [n_lo, n_hi], "triples": rows, "holds": all(r["constant"] for r in rows)}


# centralizers of pairs -------------------------------------------------------


def _orbits(gens, n: int) -> list[list[int]]:
    seen, out = set(), []
    for i in range(n):
        if i in seen:
            continue
        orb, stack = [i], [i]
        seen.add(i)
        while stack:
            a = stack.pop()
            for g in gens:
                b = int(g[a])
                if b not in seen:
                    seen.add(b)
                    orb.append(b)
                    stack.append(b)
        out.append(sorted(orb))
    return out


def _match(gens, src: int, dst: int, orb_src, orb_dst) -> bool:
    """Whether ``src -> dst`` extends to an isomorphism of the two orbits."""
    if len(orb_src) != len(orb_dst):
        return False
    phi = {src: dst}
    stack = [src]
    while stack:
        a = stack.pop()
        for g in gens:
            b, c = int(g[a]), int(g[phi[a]])
            if b in phi:
                if phi[b] != c:
                    return False
            else:
                phi[b] = c
                stack.append(b)
    return len(set(phi.values())) == len(phi)


def joint_centralizer_order(gens, n: int) -> int:
    """``|C_{S_n}(g_1) cap ... cap C_{S_n}(g_k)|`` via orbit automorphisms.

    The joint centralizer permutes isomorphic orbits of ``<gens>`` and acts on
    each orbit by automorphisms, giving ``prod a_k^{m_k} m_k!``.
    """
    gens = [_pad(g, n) for g in gens]
    orbs = _orbits(gens, n)
    classes = []  # (representative orbit, multiplicity, |Aut|)
    for orb in orbs:
        for cl in classes:
            rep = cl[0]
            if any(_match(gens, rep[0], x, rep, orb) for x in orb):
                cl[1] += 1
                break
        else:
            aut = sum(_match(gens, orb[0], x, orb, orb) for x in orb)
            classes.append([orb, 1, aut])
    out = 1
    for _, m, a in classes:
        out *= a ** m * math.factorial(m)
    return out


def joint_centralizer_brute(gens, n: int) -> int:
    gens = [_pad(g, n).astype(np.int64) for g in gens]
    S = all_perms(n).astype(np.int64)
    ok = np.ones(len(S), dtype=bool)
    for g in gens:
        ok &= (S[:, g] == g[S]).all(axis=1)
    return int(ok.sum())


def index_function(g, h, n: int) -> int:
    """``|C(gh)| / |C(g) cap C(h)|`` in ``S_n``."""
    g, h = _pad(g, n), _pad(h, n)
    gh = g[h]
    num = joint_centralizer_order([gh], n)
    den = joint_centralizer_order([g, h], n)
    if num % den:
        raise ArithmeticError("C(g) cap C(h) is not a subgroup of C(gh)")
    return num // den


def polynomiality_check(g, h, m: int, window: int = 5) -> dict:
    """Finite differences of the index function on ``n = m .. m+window-1``.

    Differences of order ``deg + 1`` must vanish, with
    ``deg = |[g] cup [h]| - |[gh]|``.
    """
    g, h = _pad(g, m), _pad(h, m)
    deg = len(support(g) | support(h)) - len(support(g[h]))
    vals = [index_function(g, h, n) for n in range(m, m + window)]
    diffs = np.array(vals, dtype=object)
    for _ in range(deg + 1):
        diffs = diffs[1:] - diffs[:-1]
    holds = all(x == 0 for x in diffs) if deg + 1 < window else True
    return {"values": vals, "degree": deg, "holds": holds}


def support_lemma_check(n: int) -> dict:
    """``[g] cup [h] = [gh]`` for every pair with additive reflection length."""
    S = all_perms(n).astype(np.int64)
    moved = S != np.arange(n)[None, :]
    rl = n - np.array([len(cycle_lengths(g)) for g in S])
    pairs = 0
    bad = 0
    for i, g in enumerate(S):
        gh = g[S]  # g composed with every h
        rl_gh = n - _cycles_count(gh)
        add = rl[i] + rl == rl_gh
        union = moved[i][None, :] | moved
        moved_gh = gh != np.arange(n)[None, :]
        bad += int((add & ~(union == moved_gh).all(axis=1)).sum())
        pairs += int(add.sum())
    return {"n": n, "additive_pairs": pairs, "violations": bad, "holds": bad == 0}


def _cycles_count(P) -> np.ndarray:
    lengths = _lengths_sorted(P)
    return (1.0 / lengths).sum(axis=1).round().astype(np.int64)


def centralizer_splitting_check(n: int) -> bool:
    """``|C_{S_n}(g)| = |C_{S_[g]}(g)| (n - |[g]|)!`` for one g per class."""
    for parts in partitions(n):
        moved = tuple(p for p in parts if p > 1)
        k = sum(moved)
        if centralizer_order(parts) != centralizer_order(moved) * math.factorial(n - k):
            return False
        g = rep_of_type(parts, n)
        if joint_centralizer_brute([g], n) != centralizer_order(parts):
            return False
    return True
