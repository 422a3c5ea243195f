"""Exact walk enumeration on the hypercubic lattice Z^d.

Three walk families: fully self-avoiding, memory-tau (no revisit of the
last tau sites), and simple (unconstrained).  Counts are exact big
integers of walks started at the origin.  Two independent counting routes
exist on purpose: an optimized depth-first enumerator with constant-time
occupancy checks, and a brute-force generate-and-filter enumerator that
shares no code with it.

Canonical-class counting factors out the signed-permutation symmetry of
the lattice: a walk is canonical when the coordinate axes make their
first appearance in increasing order and each axis is first stepped in
the positive direction.  The first use of an axis pins both its image and
its sign under any signed permutation, so the stabilizer of a walk inside
the symmetries of its D used axes is trivial and every equivalence class
of walks of dimensionality D in Z^d has size exactly
2d(2d-2)...(2d-2D+2).  That product is what makes fixed-length counts
polynomials in 2d, and it is the correctness crux of this module: no
tie-breaking is ever needed because the canonical form is unique by
construction.

Positions are packed into a single integer, one bit field per coordinate,
sized so that steps can never carry between fields.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb, factorial

from .ffpoly import FallingFactorialPoly


class BudgetExceededError(RuntimeError):
    pass


@dataclass(frozen=True)
class WalkModel:
    kind: str  # "saw" | "memory" | "simple"
    tau: int | None = None

    def __post_init__(self):
        if self.kind not in ("saw", "memory", "simple"):
            raise ValueError(f"unknown walk model {self.kind!r}")
        if self.kind == "memory":
            if self.tau is None or self.tau < 0:
                raise ValueError("memory model needs tau >= 0")
        elif self.tau is not None:
            raise ValueError(f"{self.kind} model takes no tau")

    @classmethod
    def saw(cls) -> "WalkModel":
        return cls("saw")

    @classmethod
    def memory(cls, tau: int) -> "WalkModel":
        return cls("memory", tau)

    @classmethod
    def simple(cls) -> "WalkModel":
        return cls("simple")

    @property
    def effective_window(self) -> int | None:
        """Number of trailing sites a new site must avoid (None = all)."""
        if self.kind == "saw":
            return None
        if self.kind == "simple" or self.tau <= 1:
            return 0
        return self.tau

    def label(self) -> str:
        return self.kind if self.kind != "memory" else f"memory-{self.tau}"


@dataclass(frozen=True)
class WalkCensus:
    model: WalkModel
    d: int
    counts: tuple  # counts[i] is the number of walks of length i+1
    n_requested: int
    max_attained: int

    @property
    def partial(self) -> bool:
        return self.max_attained < self.n_requested

    def count(self, n: int) -> int:
        if not 1 <= n <= self.max_attained:
            raise IndexError(f"length {n} not in census (max {self.max_attained})")
        return self.counts[n - 1]

    def to_dict(self) -> dict:
        tau = "inf" if self.model.kind == "saw" else (
            0 if self.model.kind == "simple" else self.model.tau
        )
        return {
            "model": self.model.kind,
            "d": self.d,
            "tau": tau,
            "counts": [str(c) for c in self.counts],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "WalkCensus":
        kind = data["model"]
        tau = data["tau"]
        model = WalkModel(kind, int(tau) if kind == "memory" else None)
        counts = tuple(int(c) for c in data["counts"])
        return cls(model, int(data["d"]), counts, len(counts), len(counts))

    def to_csv(self) -> str:
        lines = ["n,count"]
        lines += [f"{n + 1},{c}" for n, c in enumerate(self.counts)]
        return "\n".join(lines) + "\n"


# ----------------------------------------------------------- position packing


def _packing(d: int, n_max: int):
    bits = max(5, (2 * n_max + 2).bit_length())
    offset = 1 << (bits - 1)
    origin = sum(offset << (bits * i) for i in range(d))
    deltas = []
    for i in range(d):
        deltas.append(1 << (bits * i))
        deltas.append(-(1 << (bits * i)))
    return origin, deltas


def _estimated_nodes(model: WalkModel, d: int, n: int) -> int:
    total = 0
    if model.kind == "simple":
        for k in range(1, n + 1):
            total += (2 * d) ** k
    else:
        for k in range(1, n + 1):
            total += 2 * d * max(1, (2 * d - 1)) ** (k - 1)
    return total


DEFAULT_NODE_BUDGET = 400_000_000


# ------------------------------------------------------------ optimized DFS


def enumerate_walks(
    model: WalkModel,
    d: int,
    n_max: int,
    budget: int = DEFAULT_NODE_BUDGET,
    jobs: int = 1,
    prefix_depth: int = 4,
) -> WalkCensus:
    """Exact counts per length via depth-first extension.

    Occupancy is a hash set of visited sites for self-avoiding walks and a
    sliding window of the last tau sites for memory walks.  If the upper
    estimate of nodes for n_max exceeds ``budget`` the census is truncated
    to the largest feasible length and flagged partial.
    """
    if d < 1 or n_max < 1:
        raise ValueError("need d >= 1 and n_max >= 1")
    n_do = n_max
    while n_do > 0 and _estimated_nodes(model, d, n_do) > budget:
        n_do -= 1
    if n_do == 0:
        raise BudgetExceededError(
            f"even length 1 exceeds the node budget {budget} for d={d}"
        )
    if jobs > 1 and n_do > prefix_depth:
        counts = _enumerate_parallel(model, d, n_do, jobs, prefix_depth)
    else:
        counts = _enumerate_sequential(model, d, n_do)
    return WalkCensus(model, d, tuple(counts[1:]), n_max, n_do)


def _enumerate_sequential(model: WalkModel, d: int, n_max: int) -> list:
    origin, deltas = _packing(d, n_max)
    counts = [0] * (n_max + 1)
    window = model.effective_window
    if window is None:
        _dfs_saw(origin, 0, {origin}, counts, deltas, n_max)
    elif window == 0:
        for n in range(1, n_max + 1):
            counts[n] = (2 * d) ** n
    else:
        _dfs_window((origin,), 0, counts, deltas, n_max, window)
    return counts


def _dfs_saw(pos, depth, visited, counts, deltas, n_max):
    nd = depth + 1
    if nd == n_max:
        c = 0
        for dl in deltas:
            if pos + dl not in visited:
                c += 1
        counts[nd] += c
        return
    for dl in deltas:
        q = pos + dl
        if q in visited:
            continue
        counts[nd] += 1
        visited.add(q)
        _dfs_saw(q, nd, visited, counts, deltas, n_max)
        visited.discard(q)


def _dfs_window(window, depth, counts, deltas, n_max, tau):
    pos = window[-1]
    nd = depth + 1
    if nd == n_max:
        c = 0
        for dl in deltas:
            if pos + dl not in window:
                c += 1
        counts[nd] += c
        return
    keep = window[1:] if len(window) == tau else window
    for dl in deltas:
        q = pos + dl
        if q in window:
            continue
        counts[nd] += 1
        _dfs_window(keep + (q,), nd, counts, deltas, n_max, tau)


# parallel splitting: enumerate all valid prefixes of a fixed depth, then
# farm each independent subtree out to a worker; aggregation is a plain sum


def _count_subtree(args):
    model_kind, tau, d, n_max, prefix = args
    model = WalkModel(model_kind, tau)
    _, deltas = _packing(d, n_max)
    counts = [0] * (n_max + 1)
    depth = len(prefix) - 1
    window = model.effective_window
    if window is None:
        _dfs_saw(prefix[-1], depth, set(prefix), counts, deltas, n_max)
    elif window == 0:
        for n in range(depth + 1, n_max + 1):
            counts[n] = (2 * d) ** (n - depth)
    else:
        _dfs_window(prefix[-window:], depth, counts, deltas, n_max, window)
    return counts


def _enumerate_parallel(model, d, n_max, jobs, prefix_depth):
    depth = min(prefix_depth, n_max - 1)
    # note: prefixes are enumerated with the n_max packing so subtree
    # positions can never collide across the wider coordinate range
    origin, deltas = _packing(d, n_max)
    counts = [0] * (n_max + 1)
    window = model.effective_window

    prefix_paths: list = []

    def rec(path):
        nd = len(path)  # length of walk after appending next
        pos = path[-1]
        for dl in deltas:
            q = pos + dl
            if window is None:
                if q in path:
                    continue
            elif window > 0 and q in path[-window:]:
                continue
            counts[nd] += 1
            if nd == depth:
                prefix_paths.append(tuple(path) + (q,))
            else:
                rec(path + [q])

    if window == 0:
        for n in range(1, n_max + 1):
            counts[n] = (2 * d) ** n
        return counts
    rec([origin])
    tasks = [(model.kind, model.tau, d, n_max, p) for p in prefix_paths]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for sub in pool.map(_count_subtree, tasks, chunksize=64):
            for i, c in enumerate(sub):
                counts[i] += c
    return counts


# ------------------------------------------------------------- brute force


def brute_force_enumerate(model: WalkModel, d: int, n_max: int) -> WalkCensus:
    """Generate every step sequence and filter by the model predicate.

    Deliberately naive and structurally unrelated to the optimized
    enumerator; used as its oracle.  Refuses ranges where (2d)^n_max is
    unreasonable.
    """
    if (2 * d) ** n_max > 20_000_000:
        raise BudgetExceededError("brute force is intended for d <= 2, n <= 8")
    steps = []
    for i in range(d):
        e = [0] * d
        e[i] = 1
        steps.append(tuple(e))
        steps.append(tuple(-x for x in e))

    def admissible(points) -> bool:
        if model.kind == "simple":
            return True
        tau = None if model.kind == "saw" else model.tau
        for i in range(len(points)):
            for j in range(i + 1, len(points)):
                if tau is not None and j - i > tau:
                    break
                if points[i] == points[j]:
                    return False
        return True

    counts = [0] * (n_max + 1)
    for n in range(1, n_max + 1):
        for seq in itertools.product(steps, repeat=n):
            pos = (0,) * d
            pts = [pos]
            for st in seq:
                pos = tuple(p + s for p, s in zip(pos, st))
                pts.append(pos)
            if admissible(pts):
                counts[n] += 1
    return WalkCensus(model, d, tuple(counts[1:]), n_max, n_max)


# -------------------------------------------------------- canonical classes


@dataclass(frozen=True)
class DimTable:
    """Counts f(n, D) of canonical classes of length-n walks using D axes."""

    model: WalkModel
    n_max: int
    f: dict

    def count(self, n: int, D: int) -> int:
        return self.f.get((n, D), 0)

    def poly(self, n: int) -> FallingFactorialPoly:
        if not 1 <= n <= self.n_max:
            raise IndexError(f"length {n} outside table range {self.n_max}")
        return FallingFactorialPoly(
            {D: c for (m, D), c in self.f.items() if m == n}
        )

    def evaluate(self, n: int, d: int) -> int:
        v = self.poly(n).evaluate(d)
        assert v.denominator == 1
        return v.numerator

    def to_dict(self) -> dict:
        tau = "inf" if self.model.kind == "saw" else self.model.tau
        return {
            "model": self.model.kind,
            "tau": tau,
            "n_max": self.n_max,
            "classes": [
                {"n": n, "D": D, "count": str(c)}
                for (n, D), c in sorted(self.f.items())
            ],
        }


def canonical_classes(model: WalkModel, n_max: int, ambient: int | None = None) -> DimTable:
    """Count canonical walks per (length, dimensionality).

    Enumerates only walks whose axes appear in increasing order with a
    positive first step along each axis, in ambient dimension >= n_max.
    A length-n walk touches at most n axes, so the ambient default n_max
    loses nothing; computing with a larger ambient gives identical tables.
    """
    if model.kind == "simple":
        model = WalkModel.memory(0)
    if model.kind not in ("saw", "memory"):
        raise ValueError("canonical classes are defined for saw or memory models")
    amb = n_max if ambient is None else ambient
    if amb < n_max:
        raise ValueError("ambient dimension must be at least n_max")
    origin, _ = _packing(amb, n_max)
    bits = max(5, (2 * n_max + 2).bit_length())
    axis_delta = [1 << (bits * i) for i in range(amb)]
    f: dict = {}
    window = model.effective_window

    def bump(n, D):
        key = (n, D)
        f[key] = f.get(key, 0) + 1

    def rec_saw(pos, depth, used, visited):
        nd = depth + 1
        limit = used + 1 if used < amb else used
        for i in range(limit):
            new_axis = i == used
            for sign in ((1,) if new_axis else (1, -1)):
                q = pos + sign * axis_delta[i]
                if q in visited:
                    continue
                nu = used + 1 if new_axis else used
                bump(nd, nu)
                if nd < n_max:
                    visited.add(q)
                    rec_saw(q, nd, nu, visited)
                    visited.discard(q)

    def rec_window(window_sites, depth, used):
        pos = window_sites[-1]
        nd = depth + 1
        if not window:
            keep = ()
        elif len(window_sites) == window:
            keep = window_sites[1:]
        else:
            keep = window_sites
        limit = used + 1 if used < amb else used
        for i in range(limit):
            new_axis = i == used
            for sign in ((1,) if new_axis else (1, -1)):
                q = pos + sign * axis_delta[i]
                if window and q in window_sites:
                    continue
                nu = used + 1 if new_axis else used
                bump(nd, nu)
                if nd < n_max:
                    rec_window(keep + (q,), nd, nu)

    if model.kind == "saw":
        rec_saw(origin, 0, 0, {origin})
    else:
        rec_window((origin,), 0, 0)
    return DimTable(model, n_max, f)


def dimensional_polynomial(table: DimTable, n: int) -> FallingFactorialPoly:
    """Exact fixed-length count as a polynomial in 2d."""
    return table.poly(n)


# --------------------------------------------------------- simple-walk DP


@dataclass(frozen=True)
class SimpleWalkCounts:
    d: int
    returns: dict  # even length 2m -> walks ending at the origin
    to_neighbor: dict  # odd length 2m-1 -> walks ending at e_1
    even_max_elsewhere: dict  # even length -> max endpoint count away from 0

    def m_range(self) -> range:
        return range(1, len(self.returns) + 1)


def simple_walk_counts(d: int, m_max: int) -> SimpleWalkCounts:
    """Endpoint-distribution dynamic programming for simple walks."""
    if d < 1 or m_max < 1:
        raise ValueError("need d >= 1 and m_max >= 1")
    n_steps = 2 * m_max
    origin, deltas = _packing(d, n_steps)
    e1 = origin + deltas[0]
    dist = {origin: 1}
    returns, to_neighbor, even_max_elsewhere = {}, {}, {}
    for k in range(1, n_steps + 1):
        nxt: dict = {}
        for pos, c in dist.items():
            for dl in deltas:
                q = pos + dl
                nxt[q] = nxt.get(q, 0) + c
        dist = nxt
        if k % 2 == 0:
            returns[k] = dist.get(origin, 0)
            even_max_elsewhere[k] = max(
                (c for pos, c in dist.items() if pos != origin), default=0
            )
        else:
            to_neighbor[k] = dist.get(e1, 0)
    return SimpleWalkCounts(d, returns, to_neighbor, even_max_elsewhere)


def check_simple_walk_bounds(counts: SimpleWalkCounts) -> dict:
    """Verify the odd/even identity and the return-count inequalities.

    Checks, for every stored m: (a) 2d * c_{2m-1}(e1) = c_{2m}(0) exactly;
    (b) the even count is maximal at the origin; (c) the m-dimensional
    subspace bound c_{2m}(0) <= binom(d, m) (2m)^{2m} when m <= d;
    (d) the always-valid count bound c_{2m}(0) <= (2d)^{2m}; and (e)
    (2m) c_{2m}(0) <= 20^m (2d)^m m!.
    """
    d = counts.d
    worst = {"hammersley": 0.0, "crude": 0.0, "factorial": 0.0}
    for m in counts.m_range():
        r = counts.returns[2 * m]
        t = counts.to_neighbor[2 * m - 1]
        if t * 2 * d != r:
            return {"passed": False, "m": m, "reason": "odd/even identity"}
        if counts.even_max_elsewhere[2 * m] > r:
            return {"passed": False, "m": m, "reason": "origin not maximal"}
        if m <= d:
            bound = comb(d, m) * (2 * m) ** (2 * m)
            if r > bound:
                return {"passed": False, "m": m, "reason": "subspace bound"}
            worst["hammersley"] = max(worst["hammersley"], r / bound)
        crude = (2 * d) ** (2 * m)
        if r > crude:
            return {"passed": False, "m": m, "reason": "crude bound"}
        worst["crude"] = max(worst["crude"], r / crude)
        fact = 20**m * (2 * d) ** m * factorial(m)
        if 2 * m * r > fact:
            return {"passed": False, "m": m, "reason": "factorial bound"}
        worst["factorial"] = max(worst["factorial"], 2 * m * r / fact)
    return {"passed": True, "d": d, "m_max": len(counts.returns), "worst_ratios": worst}
