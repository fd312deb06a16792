"""Partitions, partition-valued functions and their symplectic variants.

A partition is a plain tuple of non-increasing positive integers.  A
:class:`PartitionFn` maps monic irreducible polynomials to partitions and
classifies GL conjugacy classes; a :class:`SymplecticFn` adds Wall signs at
``t - 1`` and ``t + 1`` and classifies symplectic classes.

Signed partitions are stored grouped by part size, as ``((size, mult, sign),
...)`` sorted by size.
"""

from __future__ import annotations

import functools
import itertools
import json
from collections import Counter
from dataclasses import dataclass, field as dc_field

from .gf import GF
from .poly import Poly, dual, is_self_dual, monic_irreducibles


class TypeError_(ValueError):
    """Malformed or unrealizable type."""


# plain partitions ------------------------------------------------------------


def partition(parts) -> tuple:
    ps = tuple(sorted((int(p) for p in parts if int(p) != 0), reverse=True))
    if any(p < 0 for p in ps):
        raise TypeError_(f"negative part in {parts}")
    return ps


@functools.lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None) -> tuple:
    """All partitions of ``n`` with parts ``<= max_part``, largest first."""
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for k in range(min(n, max_part), 0, -1):
        for rest in partitions(n - k, k):
            out.append((k,) + rest)
    return tuple(out)


def multiplicities(parts) -> dict:
    return dict(sorted(Counter(parts).items()))


def modify_partition(parts) -> tuple:
    return tuple(p - 1 for p in parts if p > 1)


def complete_partition(parts) -> tuple:
    return tuple(p + 1 for p in parts)


def ncomplete_partition(parts, n: int) -> tuple:
    c = complete_partition(parts)
    pad = n - sum(c)
    if pad < 0:
        raise TypeError_(f"n={n} smaller than completed weight {sum(c)}")
    return c + (1,) * pad


def _signed_from(parts, signs: dict) -> tuple:
    return tuple((s, m, signs[s]) for s, m in sorted(Counter(parts).items()))


def is_symplectic_partition(signed) -> bool:
    return all(m % 2 == 0 and sign == -1 for s, m, sign in signed if s % 2 == 1)


@functools.lru_cache(maxsize=None)
def symplectic_partitions(n: int) -> tuple:
    """Signed partitions of ``n`` where odd parts have even multiplicity and
    sign -1, and each even part size carries a free sign."""
    out = []
    for ps in partitions(n):
        mult = Counter(ps)
        if any(s % 2 == 1 and m % 2 for s, m in mult.items()):
            continue
        evens = sorted(s for s in mult if s % 2 == 0)
        for choice in itertools.product((1, -1), repeat=len(evens)):
            signs = {s: -1 for s in mult}
            signs.update(zip(evens, choice))
            out.append(_signed_from(ps, signs))
    return tuple(out)


def signed_parts(signed) -> tuple:
    return partition(s for s, m, _ in signed for _ in range(m))


# partition-valued functions --------------------------------------------------


def t_minus_one(F: GF) -> Poly:
    return Poly(F, (int(F.neg(1)), 1))


def t_plus_one(F: GF) -> Poly:
    return Poly(F, (1, 1))


@dataclass(frozen=True)
class PartitionFn:
    """Finitely supported map from monic polynomials to partitions.

    Keys are sorted by ``(degree, coeffs)``; empty partitions are dropped.
    """

    field: GF
    items: tuple = ()

    def __post_init__(self):
        merged = {}
        for f, parts in self.items:
            parts = partition(parts)
            if parts:
                if f in merged:
                    raise TypeError_(f"duplicate key {f}")
                merged[f] = parts
        object.__setattr__(
            self, "items", tuple(sorted(merged.items(), key=lambda kv: kv[0].sort_key())))

    @classmethod
    def from_dict(cls, F: GF, d: dict) -> "PartitionFn":
        return cls(F, tuple(d.items()))

    def as_dict(self) -> dict:
        return dict(self.items)

    def __getitem__(self, f: Poly) -> tuple:
        return self.as_dict().get(f, ())

    def keys(self):
        return [f for f, _ in self.items]

    @property
    def weight(self) -> int:
        return sum(f.degree * sum(ps) for f, ps in self.items)

    def replace(self, f: Poly, parts) -> "PartitionFn":
        d = self.as_dict()
        d[f] = partition(parts)
        return PartitionFn.from_dict(self.field, d)

    def __repr__(self):
        inner = ", ".join(f"{f!r}: {ps}" for f, ps in self.items)
        return "{" + inner + "}"

    def to_json(self) -> dict:
        return {"factors": [{"poly": list(f.coeffs), "parts": list(ps)} for f, ps in self.items]}


@dataclass(frozen=True)
class SymplecticFn:
    """Partition-valued function on dual-irreducibles plus Wall signs.

    ``hminus`` / ``hplus`` are the signed partitions at ``t - 1`` / ``t + 1``.
    After :func:`modify` the signed partition at ``t - 1`` generally stops
    being symplectic; ``modified`` records that.
    """

    base: PartitionFn
    hminus: tuple = ()
    hplus: tuple = ()
    modified: bool = dc_field(default=False, compare=True)

    def __post_init__(self):
        object.__setattr__(self, "hminus", tuple(sorted(tuple(x) for x in self.hminus)))
        object.__setattr__(self, "hplus", tuple(sorted(tuple(x) for x in self.hplus)))
        F = self.field
        if signed_parts(self.hminus) != self.base[t_minus_one(F)]:
            raise TypeError_("signs at t-1 disagree with the base partition")
        if signed_parts(self.hplus) != self.base[t_plus_one(F)]:
            raise TypeError_("signs at t+1 disagree with the base partition")

    @property
    def field(self) -> GF:
        return self.base.field

    @property
    def weight(self) -> int:
        return self.base.weight

    def is_valid(self) -> bool:
        from .poly import is_dual_irreducible
        if self.modified:
            return False
        if not all(is_dual_irreducible(f) for f in self.base.keys()):
            return False
        return is_symplectic_partition(self.hminus) and is_symplectic_partition(self.hplus)

    def __repr__(self):
        F = self.field
        bits = []
        for f, ps in self.base.items:
            if f == t_minus_one(F):
                bits.append(f"{f!r}: " + _fmt_signed(self.hminus))
            elif f == t_plus_one(F):
                bits.append(f"{f!r}: " + _fmt_signed(self.hplus))
            else:
                bits.append(f"{f!r}: {ps}")
        tag = "°" if self.modified else ""
        return "{" + ", ".join(bits) + "}" + tag

    def to_json(self) -> dict:
        F = self.field
        out = []
        for f, ps in self.base.items:
            entry = {"poly": list(f.coeffs), "parts": list(ps)}
            if f == t_minus_one(F):
                entry["signs"] = [list(x) for x in self.hminus]
            elif f == t_plus_one(F):
                entry["signs"] = [list(x) for x in self.hplus]
            out.append(entry)
        d = {"factors": out}
        if self.modified:
            d["modified"] = True
        return d


def _fmt_signed(signed) -> str:
    return "(" + ",".join(f"{s}^({m},{'+' if e > 0 else '-'})" for s, m, e in signed) + ")"


# JSON ------------------------------------------------------------------------


def type_to_json(x) -> str:
    return json.dumps(x.to_json(), sort_keys=True)


def type_from_json(F: GF, data, kind: str = "gl"):
    """Inverse of ``to_json``; integers are reduced into ``F`` on load."""
    if isinstance(data, str):
        data = json.loads(data)
    base = {}
    hm, hp = (), ()
    tm, tp = t_minus_one(F), t_plus_one(F)
    for entry in data.get("factors", []):
        f = Poly.of(F, entry["poly"])
        if not f.is_monic():
            raise TypeError_(f"key {entry['poly']} is not monic")
        base[f] = partition(entry["parts"])
        if "signs" in entry:
            signed = tuple(tuple(int(v) for v in x) for x in entry["signs"])
            if f == tm:
                hm = signed
            elif f == tp:
                hp = signed
    pf = PartitionFn.from_dict(F, base)
    if kind != "sp":
        return pf
    if not hm and pf[tm]:
        hm = _default_signs(pf[tm])
    if not hp and pf[tp]:
        hp = _default_signs(pf[tp])
    return SymplecticFn(pf, hm, hp, modified=bool(data.get("modified", False)))


def _default_signs(parts):
    return _signed_from(parts, {s: -1 for s in parts})


# operators -------------------------------------------------------------------


def _shift_signed(signed, delta: int) -> tuple:
    return tuple((s + delta, m, e) for s, m, e in signed if s + delta > 0)


def modify(x):
    """Strip one box from every part at ``t - 1``."""
    if isinstance(x, tuple):
        return modify_partition(x)
    if isinstance(x, PartitionFn):
        tm = t_minus_one(x.field)
        return x.replace(tm, modify_partition(x[tm]))
    if isinstance(x, SymplecticFn):
        if x.modified:
            raise TypeError_("type is already modified")
        base = modify(x.base)
        return SymplecticFn(base, _shift_signed(x.hminus, -1), x.hplus, modified=True)
    raise TypeError(f"cannot modify {type(x).__name__}")


def complete(x):
    """Add one box to every part at ``t - 1``."""
    if isinstance(x, tuple):
        return complete_partition(x)
    if isinstance(x, PartitionFn):
        tm = t_minus_one(x.field)
        return x.replace(tm, complete_partition(x[tm]))
    if isinstance(x, SymplecticFn):
        if not x.modified:
            raise TypeError_("complete expects a modified symplectic type")
        base = complete(x.base)
        return SymplecticFn(base, _shift_signed(x.hminus, 1), x.hplus, modified=False)
    raise TypeError(f"cannot complete {type(x).__name__}")


def ncomplete(x, n: int):
    """Complete, then pad ``t - 1`` with 1-parts up to total weight ``n``.

    For symplectic types ``n`` is the rank, so the padded weight is ``2n``
    and the new 1-parts carry sign -1.
    """
    if isinstance(x, tuple):
        return ncomplete_partition(x, n)
    if isinstance(x, PartitionFn):
        c = complete(x)
        pad = n - c.weight
        if pad < 0:
            raise TypeError_(f"n={n} smaller than completed weight {c.weight}")
        tm = t_minus_one(x.field)
        return c.replace(tm, c[tm] + (1,) * pad)
    if isinstance(x, SymplecticFn):
        c = complete(x)
        pad = 2 * n - c.weight
        if pad < 0:
            raise TypeError_(f"2n={2 * n} smaller than completed weight {c.weight}")
        if pad % 2:
            raise TypeError_("odd padding; not a modified symplectic type")
        tm = t_minus_one(x.field)
        base = c.base.replace(tm, c.base[tm] + (1,) * pad)
        hm = c.hminus + (((1, pad, -1),) if pad else ())
        return SymplecticFn(base, hm, c.hplus)
    raise TypeError(f"cannot complete {type(x).__name__}")


def level(x) -> int:
    """Smallest n at which a modified type is realized (rank for symplectic)."""
    if isinstance(x, tuple):
        return sum(complete_partition(x))
    w = complete(x).weight
    return w // 2 if isinstance(x, SymplecticFn) else w


def weight(x) -> int:
    if isinstance(x, tuple):
        return sum(x)
    return x.weight


def unipotent_split(x: PartitionFn):
    tm = t_minus_one(x.field)
    e = PartitionFn(x.field, ((tm, x[tm]),))
    ne = PartitionFn(x.field, tuple((f, ps) for f, ps in x.items if f != tm))
    return e, ne


def union(a: PartitionFn, b: PartitionFn) -> PartitionFn:
    d = a.as_dict()
    for f, ps in b.items:
        d[f] = partition(d.get(f, ()) + ps)
    return PartitionFn.from_dict(a.field, d)


# enumeration -----------------------------------------------------------------


def _sp_keys(F: GF, w: int):
    tm, tp = t_minus_one(F), t_plus_one(F)
    keys = [tm, tp]
    seen = set()
    for f in monic_irreducibles(F, w):
        if f in (tm, tp) or f in seen:
            continue
        if is_self_dual(f):
            keys.append(f)
            seen.add(f)
        else:
            g = dual(f)
            seen.update((f, g))
            if 2 * f.degree <= w:
                keys.append(f * g)
    return sorted(keys, key=lambda f: f.sort_key())


def _distribute(keys, w, options):
    """Yield lists of (key, choice) with total weight exactly ``w``."""
    if w == 0:
        yield []
        return
    if not keys:
        return
    f, rest = keys[0], keys[1:]
    d = f.degree
    for s in range(0, w // d + 1):
        for choice in options(f, s):
            for tail in _distribute(rest, w - d * s, options):
                yield ([(f, choice)] if s else []) + tail


def enumerate_types(w: int, F: GF, kind: str = "gl") -> list:
    """All GL types of weight ``w`` or all symplectic types of weight ``w``."""
    if w < 0:
        raise TypeError_("negative weight")
    if kind == "gl":
        keys = monic_irreducibles(F, w) if w else []
        out = [PartitionFn(F, tuple(c)) for c in _distribute(keys, w, lambda f, s: partitions(s))]
        return sorted(out, key=_type_sort_key)
    if kind == "sp":
        if w % 2:
            raise TypeError_("symplectic types have even weight")
        if F.p == 2:
            raise TypeError_("symplectic types need odd q")
        tm, tp = t_minus_one(F), t_plus_one(F)
        keys = _sp_keys(F, w) if w else []

        def options(f, s):
            if s == 0:
                return [None]
            if f in (tm, tp):
                return symplectic_partitions(s)
            return partitions(s)

        out = []
        for combo in _distribute(keys, w, options):
            base, hm, hp = {}, (), ()
            for f, ch in combo:
                if f == tm:
                    hm = ch
                    base[f] = signed_parts(ch)
                elif f == tp:
                    hp = ch
                    base[f] = signed_parts(ch)
                else:
                    base[f] = ch
            out.append(SymplecticFn(PartitionFn.from_dict(F, base), hm, hp))
        return sorted(out, key=_type_sort_key)
    raise TypeError_(f"unknown kind {kind!r}")


def _type_sort_key(x):
    if isinstance(x, SymplecticFn):
        return (tuple((f.sort_key(), ps) for f, ps in x.base.items), x.hminus, x.hplus)
    return tuple((f.sort_key(), ps) for f, ps in x.items)


type_sort_key = _type_sort_key
