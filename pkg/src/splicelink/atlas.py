"""Enumerate every valid chain of a given degree.

Chains are grouped by ordered factorizations ``q_1 ... q_n`` of the degree;
within a factorization ``p_1`` ranges over ``(1, q_1)`` coprime to ``q_1``
and each later ``p_k`` over values below ``p_{k-1} q_{k-1} q_k`` that are
coprime to ``q_k`` and lie in ``H_{k-1}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd

from .semigroup import level_generators, member
from .splice import ChainInvariants, PuiseuxChain, invariants

NOTES = (
    "positive braids are listed and flagged; pass include_positive_braids=False "
    "to drop them",
    "degree 12 family [(3,4),(j,3)]: a published listing starts at j=3, which "
    "shares a factor with q_2=3; this atlas lists only coprime j in H_1",
)


@dataclass(frozen=True)
class AtlasEntry:
    chain: PuiseuxChain
    invariants: ChainInvariants

    @property
    def flags(self) -> dict:
        return {"positive_braid": self.invariants.positive_braid,
                "suff_negative": self.invariants.suff_negative}

    def to_dict(self) -> dict:
        return {"chain": self.chain.to_json(), **self.invariants.to_dict()}


def ordered_factorizations(n: int) -> list[tuple[int, ...]]:
    """All tuples of integers > 1 whose product is ``n``."""
    if n == 1:
        return [()]
    out = []
    for f in range(2, n + 1):
        if n % f == 0:
            out.extend((f,) + rest for rest in ordered_factorizations(n // f))
    return out


def _extend(prefix: list[tuple[int, int]], qs: tuple[int, ...]):
    k = len(prefix)
    if k == len(qs):
        yield list(prefix)
        return
    q = qs[k]
    if k == 0:
        candidates = (p for p in range(2, q) if gcd(p, q) == 1)
    else:
        pp, qp = prefix[-1]
        gens = level_generators(PuiseuxChain(prefix), k)
        candidates = (p for p in range(2, pp * qp * q)
                      if gcd(p, q) == 1 and member(gens, p))
    for p in candidates:
        prefix.append((p, q))
        yield from _extend(prefix, qs)
        prefix.pop()


def _sort_key(chain: PuiseuxChain):
    return (chain.n, chain.pairs)


def enumerate_chains(degree: int, include_positive_braids: bool = True) -> list[AtlasEntry]:
    """Every valid chain with ``q_1...q_n = degree`` in canonical order."""
    if degree < 2:
        raise ValueError("degree must be at least 2")
    chains = []
    for qs in ordered_factorizations(degree):
        for pairs in _extend([], qs):
            chains.append(PuiseuxChain(pairs))
    chains.sort(key=_sort_key)
    entries = [AtlasEntry(c, invariants(c)) for c in chains]
    if not include_positive_braids:
        entries = [e for e in entries if not e.invariants.positive_braid]
    return entries


def atlas_document(degree: int, include_positive_braids: bool = True) -> dict:
    entries = enumerate_chains(degree, include_positive_braids)
    return {
        "degree": degree,
        "include_positive_braids": include_positive_braids,
        "count": len(entries),
        "entries": [e.to_dict() for e in entries],
        "notes": list(NOTES),
    }


def format_table(doc: dict) -> str:
    header = ["chain", "genus", "d", "l", "pos", "suff"]
    rows = []
    for e in doc["entries"]:
        rows.append([
            "[" + ",".join(f"({p},{q})" for p, q in e["chain"]) + "]",
            str(e["genus"]),
            ",".join(map(str, e["d"])),
            ",".join(map(str, e["self_linking"])),
            "yes" if e["positive_braid"] else "no",
            "yes" if e["suff_negative"] else "no",
        ])
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    for r in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    lines.append(f"# degree {doc['degree']}: {doc['count']} chain(s)")
    return "\n".join(lines) + "\n"


def emit_atlas(degree: int, fmt: str = "json", include_positive_braids: bool = True,
               stream=None) -> str:
    doc = atlas_document(degree, include_positive_braids)
    if fmt == "json":
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    elif fmt == "table":
        text = format_table(doc)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if stream is not None:
        stream.write(text)
    return text
