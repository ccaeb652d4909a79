"""Seeded graph generators for the study families.

Three models, chosen to bracket the regularity conditions:

* ``er``  - Erdos-Renyi G(n, p); satisfies the conditions for moderate np.
* ``reg`` - random d-regular via stub pairing with edge-switch repair;
  kmax/sqrt(m) = sqrt(2d/n) decays at the critical rate.
* ``hub`` - ER base plus one vertex wired to ceil(sqrt(n-1)) others, so
  kmax grows like sqrt(n) and the max-degree condition fails by design.

Every generator is a pure function of (parameters, seed): the same call
produces a byte-identical canonical edge list on any platform.  The CLI
spec grammar is "er:p=<float>", "reg:d=<int>", "hub:p=<float>".
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InputError
from .graph import Graph
from .rng import MASK64, SplitMix64, stream_seed, uniform_block

_ER_RETRIES = 64
_PAIRING_ROUNDS = 60
_SWITCH_ATTEMPTS = 500
_PAIR_CHUNK = 1 << 22


def _er_edge_array(n: int, p: float, seed: int) -> list[tuple[int, int]]:
    """One Bernoulli(p) draw per unordered pair, visited lexicographically."""
    row_starts = np.concatenate(
        [[0], np.cumsum(n - 1 - np.arange(n - 1, dtype=np.int64))]
    )
    npairs = int(row_starts[-1])
    edges: list[tuple[int, int]] = []
    for start in range(0, npairs, _PAIR_CHUNK):
        count = min(_PAIR_CHUNK, npairs - start)
        u = uniform_block(seed, count, offset=start)
        sel = np.nonzero(u < p)[0] + start
        if sel.size:
            i = np.searchsorted(row_starts, sel, side="right") - 1
            j = sel - row_starts[i] + i + 1
            edges.extend(zip(i.tolist(), j.tolist()))
    return edges


def gen_er(n: int, p: float, seed: int) -> Graph:
    """G(n, p) conditioned on having at least one edge.

    Empty draws retry with seed+1 (bounded); this only matters for tiny
    n*p, where a handful of retries is enough or the model is hopeless.
    """
    if n < 2:
        raise InputError("er model needs n >= 2")
    if not 0.0 < p <= 1.0:
        raise InputError(f"er model needs 0 < p <= 1, got {p}")
    for attempt in range(_ER_RETRIES):
        edges = _er_edge_array(n, p, (seed + attempt) & MASK64)
        if edges:
            return Graph(n, edges)
    raise DomainError(
        f"er generator produced no edges in {_ER_RETRIES} attempts (n={n}, p={p})"
    )


def _shuffled(stubs: np.ndarray, rng: SplitMix64) -> np.ndarray:
    # Permutation by sorting random keys; stable sort pins the (measure
    # zero) tie behavior so the result is deterministic.
    keys = rng.uniforms(len(stubs))
    return stubs[np.argsort(keys, kind="stable")]


def _try_switch(
    u: int,
    v: int,
    k: int,
    edge_set: set[tuple[int, int]],
    edge_list: list[tuple[int, int]],
) -> bool:
    """Replace edge ``edge_list[k]`` = (x, y) by (u, x) and (v, y) if both are new."""
    x, y = edge_list[k]
    if x in (u, v) or y in (u, v):
        return False
    for a, b in (((u, x), (v, y)), ((u, y), (v, x))):
        ea = (min(a), max(a))
        eb = (min(b), max(b))
        if ea != eb and ea not in edge_set and eb not in edge_set:
            edge_set.remove((x, y))
            edge_list[k] = edge_list[-1]
            edge_list.pop()
            for e in (ea, eb):
                edge_set.add(e)
                edge_list.append(e)
            return True
    return False


def _switch_repair(
    leftover: list[int],
    edge_set: set[tuple[int, int]],
    edge_list: list[tuple[int, int]],
    rng: SplitMix64,
) -> None:
    """Place remaining stub pairs by splicing them into random existing edges.

    For stubs (u, v) pick an edge (x, y) disjoint from them; replacing it
    by (u, x) and (v, y) leaves the degrees of x and y unchanged while u
    and v each gain one.
    """
    for idx in range(0, len(leftover), 2):
        u, v = leftover[idx], leftover[idx + 1]
        for _ in range(_SWITCH_ATTEMPTS):
            if _try_switch(u, v, rng.randbelow(len(edge_list)), edge_set, edge_list):
                break
        else:
            raise DomainError("regular-graph repair failed; degree too close to n")


def gen_regular(n: int, d: int, seed: int) -> Graph:
    """Random simple d-regular graph by stub pairing with repair.

    Repeated pairing passes keep the valid pairs and reshuffle the rest;
    stubs that cannot pair cleanly are spliced in by edge switches.  The
    sampling law is not exactly uniform over regular graphs, which is
    irrelevant here; determinism and exact degrees are the contract.
    """
    if not 0 < d < n:
        raise InputError(f"regular model needs 0 < d < n, got d={d}, n={n}")
    if (n * d) % 2 != 0:
        raise DomainError(f"n*d must be even to realize a d-regular graph (n={n}, d={d})")
    rng = SplitMix64(seed)
    edge_set: set[tuple[int, int]] = set()
    edge_list: list[tuple[int, int]] = []
    work = np.repeat(np.arange(n, dtype=np.int64), d)
    stalls = 0
    for _ in range(_PAIRING_ROUNDS):
        if len(work) == 0:
            break
        work = _shuffled(work, rng)
        leftover: list[int] = []
        for i in range(0, len(work), 2):
            u = int(work[i])
            v = int(work[i + 1])
            if u == v:
                leftover += [u, v]
                continue
            e = (u, v) if u < v else (v, u)
            if e in edge_set:
                leftover += [u, v]
                continue
            edge_set.add(e)
            edge_list.append(e)
        if len(leftover) == len(work):
            stalls += 1
            if stalls >= 3:
                break
        else:
            stalls = 0
        work = np.asarray(leftover, dtype=np.int64)
    if len(work):
        _switch_repair([int(s) for s in work], edge_set, edge_list, rng)
    return Graph(n, edge_list)


def gen_hub(n: int, p: float, seed: int) -> Graph:
    """ER(n-1, p) base plus a hub adjacent to ceil(sqrt(n-1)) base vertices.

    The hub forces kmax >= ceil(sqrt(n-1)) for every seed, the canonical
    way to break the max-degree condition.  p = 0 is allowed (pure star);
    the hub edges guarantee m >= 1 regardless.
    """
    if n < 4:
        raise InputError(f"hub model needs n >= 4, got {n}")
    if not 0.0 <= p <= 1.0:
        raise InputError(f"hub model needs 0 <= p <= 1, got {p}")
    base_n = n - 1
    edges = _er_edge_array(base_n, p, stream_seed(seed, 0)) if p > 0.0 else []
    rng = SplitMix64(stream_seed(seed, 1))
    spokes = rng.sample_indices(ceil_sqrt(base_n), base_n)
    hub = n - 1
    edges.extend((v, hub) for v in spokes)
    return Graph(n, edges)


@dataclass(frozen=True)
class GeneratorSpec:
    """Parsed model spec; ``build`` instantiates it at a size and seed."""

    model: str
    p: float | None = None
    d: int | None = None

    def build(self, n: int, seed: int) -> Graph:
        if self.model == "er":
            return gen_er(n, self.p, seed)
        if self.model == "reg":
            return gen_regular(n, self.d, seed)
        if self.model == "hub":
            return gen_hub(n, self.p, seed)
        raise InputError(f"unknown generator model {self.model!r}")

    def __str__(self) -> str:
        if self.model == "reg":
            return f"reg:d={self.d}"
        return f"{self.model}:p={self.p!r}"


def parse_generator_spec(text: str) -> GeneratorSpec:
    """Parse "er:p=<float>", "reg:d=<int>" or "hub:p=<float>"."""
    model, _, params = text.partition(":")
    model = model.strip()
    key, _, value = params.partition("=")
    key = key.strip()
    value = value.strip()
    try:
        if model == "er" and key == "p":
            spec = GeneratorSpec(model="er", p=float(value))
            if not 0.0 < spec.p <= 1.0:
                raise InputError(f"er model needs 0 < p <= 1, got {spec.p}")
            return spec
        if model == "reg" and key == "d":
            spec = GeneratorSpec(model="reg", d=int(value))
            if spec.d < 1:
                raise InputError(f"reg model needs d >= 1, got {spec.d}")
            return spec
        if model == "hub" and key == "p":
            spec = GeneratorSpec(model="hub", p=float(value))
            if not 0.0 <= spec.p <= 1.0:
                raise InputError(f"hub model needs 0 <= p <= 1, got {spec.p}")
            return spec
    except ValueError:
        raise InputError(f"bad parameter value in generator spec {text!r}") from None
    raise InputError(
        f"bad generator spec {text!r}; expected er:p=<float>, reg:d=<int> or hub:p=<float>"
    )


def ceil_sqrt(x: int) -> int:
    """ceil(sqrt(x)) in exact integer arithmetic; gen_hub wires this many spokes at x = n - 1."""
    r = math.isqrt(x)
    return r if r * r == x else r + 1
