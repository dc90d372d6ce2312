"""Synthetic query workloads with exact ground truth.

Keys are ASCII decimal renderings of a seeded splitmix64 stream.  Four query
mixes cover the interesting overlaps between the inserted set S and the
query set Q:

  same      Q cycles S: every truth label is present.
  disjoint  Q and S never overlap: every truth label is absent.
  mixed     even query slots cycle S, odd slots are disjoint, so exactly
            ceil(|Q|/2) queries are present.
  random    Q is drawn from the full 64-bit space and labeled by actual
            membership in S.

Overlap control is structural, not sampled: inserted values live in the
half-space with the top bit clear, disjoint query values in the half-space
with it set.  Everything is a pure function of (kind, sizes, seed), and the
ExactOracle multiset provides the ground truth filters are judged against.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

import numpy as np

from .hashing import splitmix64

KINDS = ("same", "mixed", "disjoint", "random")

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX_M1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX_M2 = np.uint64(0x94D049BB133111EB)

# Stream roles: each gets an independent splitmix base state per seed.
_TAG_INSERT = 0x7C0FFEE1A11CE5ED
_TAG_ABSENT = 0x2B0BB1E5D15A57E5
_TAG_RANDOM = 0x5EEDFACE0DDBA115
_TAG_MULT = 0x3C0C0A90F00DCAFE

_TOP_BIT = np.uint64(1) << np.uint64(63)


def _base_state(seed: int, tag: int) -> int:
    return splitmix64(seed ^ tag)[1]


def _stream(state0: int, start: int, count: int) -> np.ndarray:
    """Outputs start+1 .. start+count of the splitmix64 stream, vectorized."""
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    z = np.uint64(state0) + idx * _GAMMA
    z = (z ^ (z >> np.uint64(30))) * _MIX_M1
    z = (z ^ (z >> np.uint64(27))) * _MIX_M2
    return z ^ (z >> np.uint64(31))


def _distinct_stream(state0: int, count: int, top_bit: bool) -> np.ndarray:
    """First `count` distinct values of a half-space stream, in stream order."""
    out = np.empty(0, dtype=np.uint64)
    consumed = 0
    while len(out) < count:
        chunk = _stream(state0, consumed, max(count - len(out), 1024))
        consumed += len(chunk)
        chunk = chunk >> np.uint64(1)
        if top_bit:
            chunk = chunk | _TOP_BIT
        merged = np.concatenate([out, chunk])
        _, first = np.unique(merged, return_index=True)
        out = merged[np.sort(first)]
    return out[:count]


def _to_keys(values: np.ndarray) -> list[bytes]:
    """Decimal-render a uint64 array to a list of ASCII byte strings."""
    if len(values) == 0:
        return []
    return np.char.encode(values.astype("U20"), "ascii").tolist()


def gen_keys(n: int, seed: int) -> list[bytes]:
    """n distinct decimal keys, deterministic per seed."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return _to_keys(_distinct_stream(_base_state(seed, _TAG_INSERT), n, top_bit=False))


def gen_multiplicities(n: int, seed: int, high: int = 100) -> np.ndarray:
    """n deterministic multiplicities drawn from [1, high]."""
    if high < 1:
        raise ValueError("high must be >= 1")
    raw = _stream(_base_state(seed, _TAG_MULT), 0, n)
    return (raw % np.uint64(high)) + np.uint64(1)


@dataclass(frozen=True)
class QueryWorkload:
    """An inserted key list plus labeled queries; queries[t] has truth[t]."""

    kind: str
    seed: int
    inserted: list[bytes]
    queries: list[bytes]
    truth: np.ndarray  # uint8, 1 = present in inserted

    @property
    def n_insert(self) -> int:
        return len(self.inserted)

    @property
    def n_query(self) -> int:
        return len(self.queries)

    def labeled(self) -> Iterator[tuple[bytes, bool]]:
        for key, t in zip(self.queries, self.truth):
            yield key, bool(t)


def make_workload(kind: str, n_insert: int, n_query: int, seed: int) -> QueryWorkload:
    """Build one deterministic workload; see the module docstring for kinds."""
    if kind not in KINDS:
        raise ValueError(f"unknown workload kind {kind!r}; expected one of {KINDS}")
    if n_insert < 1:
        raise ValueError("n_insert must be >= 1")
    if n_query < 0:
        raise ValueError("n_query must be >= 0")

    ins_vals = _distinct_stream(_base_state(seed, _TAG_INSERT), n_insert, top_bit=False)

    if kind == "same":
        picks = np.arange(n_query, dtype=np.int64) % n_insert
        q_vals = ins_vals[picks]
        truth = np.ones(n_query, dtype=np.uint8)
    elif kind == "disjoint":
        q_vals = _distinct_stream(_base_state(seed, _TAG_ABSENT), n_query, top_bit=True)
        truth = np.zeros(n_query, dtype=np.uint8)
    elif kind == "mixed":
        n_present = (n_query + 1) // 2
        n_absent = n_query - n_present
        q_vals = np.zeros(n_query, dtype=np.uint64)
        q_vals[0::2] = ins_vals[np.arange(n_present, dtype=np.int64) % n_insert]
        q_vals[1::2] = _distinct_stream(_base_state(seed, _TAG_ABSENT), n_absent, top_bit=True)
        truth = np.zeros(n_query, dtype=np.uint8)
        truth[0::2] = 1
    else:  # random: full key space, labeled by membership
        q_vals = _stream(_base_state(seed, _TAG_RANDOM), 0, n_query)
        truth = np.isin(q_vals, ins_vals).astype(np.uint8)

    return QueryWorkload(
        kind=kind,
        seed=seed,
        inserted=_to_keys(ins_vals),
        queries=_to_keys(q_vals),
        truth=truth,
    )


class ExactOracle:
    """Exact multiset of inserted keys; the ground truth for every metric."""

    def __init__(self) -> None:
        self._counts: dict[bytes, int] = {}

    def add(self, key: bytes, times: int = 1) -> None:
        if times < 1:
            raise ValueError("times must be >= 1")
        self._counts[key] = self._counts.get(key, 0) + times

    def remove(self, key: bytes) -> bool:
        """Remove one occurrence; False if the key is absent."""
        current = self._counts.get(key, 0)
        if current == 0:
            return False
        if current == 1:
            del self._counts[key]
        else:
            self._counts[key] = current - 1
        return True

    def contains(self, key: bytes) -> bool:
        return key in self._counts

    def count(self, key: bytes) -> int:
        return self._counts.get(key, 0)

    def __len__(self) -> int:
        return len(self._counts)


def write_keys(path: str | Path, keys: list[bytes]) -> None:
    """One key per line, UTF-8."""
    with open(path, "wb") as fh:
        for key in keys:
            fh.write(key)
            fh.write(b"\n")


def read_keys(path: str | Path) -> list[bytes]:
    with open(path, "rb") as fh:
        return [line.rstrip(b"\n") for line in fh if line.strip()]


def write_truth(path: str | Path, truth: np.ndarray) -> None:
    """One '1' or '0' per line, aligned with the query file."""
    with open(path, "wb") as fh:
        for t in truth:
            fh.write(b"1\n" if t else b"0\n")


def read_truth(path: str | Path) -> np.ndarray:
    with open(path, "rb") as fh:
        return np.array([1 if line.strip() == b"1" else 0 for line in fh if line.strip()],
                        dtype=np.uint8)


def save_workload(workload: QueryWorkload, out_dir: str | Path) -> Path:
    """Write the three dataset files plus a manifest; returns the manifest path."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    names = {
        "insert_file": f"{workload.kind}_insert.txt",
        "query_file": f"{workload.kind}_query.txt",
        "truth_file": f"{workload.kind}_truth.txt",
    }
    write_keys(out / names["insert_file"], workload.inserted)
    write_keys(out / names["query_file"], workload.queries)
    write_truth(out / names["truth_file"], workload.truth)
    manifest = {
        "kind": workload.kind,
        "seed": workload.seed,
        "n_insert": workload.n_insert,
        "n_query": workload.n_query,
        **names,
    }
    manifest_path = out / f"{workload.kind}_manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    return manifest_path


def load_workload(manifest_path: str | Path) -> QueryWorkload:
    """Rebuild a workload from a manifest written by save_workload."""
    manifest_path = Path(manifest_path)
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    base = manifest_path.parent
    return QueryWorkload(
        kind=manifest["kind"],
        seed=manifest["seed"],
        inserted=read_keys(base / manifest["insert_file"]),
        queries=read_keys(base / manifest["query_file"]),
        truth=read_truth(base / manifest["truth_file"]),
    )
