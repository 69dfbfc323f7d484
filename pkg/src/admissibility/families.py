"""Commuting families built from a reproducible spec, and a tightness search.

Every construction commutes by design; the pairwise commutator check in
:meth:`CommutingFamily.from_matrices` still runs on every output, so a
construction bug is a hard error rather than a silent bad family.

Constructions (the ``construction`` field of a :class:`FamilySpec`):

``polynomial``
    ``p_i(N)`` with ``N = jordan_matrix(seed)`` and integer coefficients on
    ``N, N^2, ...`` (no constant term).  Params: ``seed``, ``l``,
    ``coeff_bound`` and optionally explicit ``coefficients``.
``kronecker-shift``
    ``I x ... x J_m x ... x I`` with ``J_m`` in slot ``i``.  Params: ``m``, ``l``.
``schur``
    Matrix units in the top-right ``rows x cols`` corner of an ``n x n``
    matrix; all pairwise products vanish.  Params: ``k`` (shorthand for the
    full ``k x k`` corner of ``M_{2k}``) or ``n``, ``rows``, ``cols``,
    ``positions``.
``block-diagonal``
    Blocks given as nested specs with the same ``l``; optional ``shifts``
    adds a scalar per block and generator.
``conjugated``
    ``S A S^-1`` for every generator of ``inner`` with ``S`` a random
    unimodular integer matrix drawn from ``rng_seed``.
"""

from __future__ import annotations

import hashlib
import json
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra_closure import commuting_bound_check, generated_algebra_basis
from .exact_core import DEFAULT_SIZE_CAP, CommutingFamily, Matrix, block_diag, check_size, to_rational
from .spectral import Partition, jordan_block, jordan_matrix

log = logging.getLogger(__name__)

CONSTRUCTIONS = ("polynomial", "kronecker-shift", "schur", "block-diagonal", "conjugated")


def derive_seed(master: int, index) -> int:
    """64-bit seed for sub-task ``index`` of a run seeded with ``master``."""
    digest = hashlib.sha256(f"{master}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


@dataclass(frozen=True)
class FamilySpec:
    construction: str
    params: dict = field(default_factory=dict)
    rng_seed: int = 0

    def __post_init__(self):
        if self.construction not in CONSTRUCTIONS:
            raise ValueError(f"unknown construction {self.construction!r}; expected one of {CONSTRUCTIONS}")

    def to_json(self):
        return {"construction": self.construction, "params": self.params, "rng_seed": self.rng_seed}

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or "construction" not in obj:
            raise ValueError("family spec must be an object with a 'construction' key")
        return cls(obj["construction"], dict(obj.get("params", {})), int(obj.get("rng_seed", 0)))

    def canonical(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    def __hash__(self):
        return hash(self.canonical())


# ---------------------------------------------------------------------------
# Constructors

def _polynomial_coefficients(depth, l, coeff_bound, rng):
    return [[rng.randint(-coeff_bound, coeff_bound) for _ in range(depth)] for _ in range(l)]


def polynomial_family(seed, l, coeff_bound=1, rng_seed=0, coefficients=None) -> CommutingFamily:
    """``l`` integer polynomials without constant term in ``jordan_matrix(seed)``.

    ``coefficients[i][k]`` multiplies ``N^(k+1)``; sampled from ``rng_seed``
    when omitted.
    """
    seed = seed if isinstance(seed, Partition) else Partition.of(seed)
    if l < 1 or coeff_bound < 1:
        raise ValueError("need l >= 1 and coeff_bound >= 1")
    N = jordan_matrix(seed)
    depth = seed.largest - 1
    if coefficients is None:
        coefficients = _polynomial_coefficients(depth, l, coeff_bound, random.Random(rng_seed))
    if len(coefficients) != l:
        raise ValueError(f"expected {l} coefficient lists, got {len(coefficients)}")
    powers = [N]
    while len(powers) < depth:
        powers.append(powers[-1] @ N)
    gens = []
    for coeffs in coefficients:
        A = Matrix.zero(seed.n)
        for c, P in zip(coeffs, powers):
            if c:
                A = A + P.scale(c)
        gens.append(A)
    return CommutingFamily.from_matrices(gens, seed.n)


def kronecker_shift_family(m: int, l: int, size_cap=DEFAULT_SIZE_CAP) -> CommutingFamily:
    if m < 2 or l < 1:
        raise ValueError("need m >= 2 and l >= 1")
    n = m ** l
    check_size(n, size_cap)
    I, J = Matrix.identity(m), jordan_block(m)
    gens = []
    for slot in range(l):
        A = None
        for i in range(l):
            factor = J if i == slot else I
            A = factor if A is None else A.kron(factor)
        gens.append(A)
    return CommutingFamily.from_matrices(gens, n)


def corner_family(n, rows, cols, positions, size_cap=DEFAULT_SIZE_CAP) -> CommutingFamily:
    """Matrix units ``E_{i, n-cols+j}`` for ``(i, j)`` in ``positions``."""
    check_size(n, size_cap)
    if rows < 1 or cols < 1 or rows + cols > n:
        raise ValueError(f"corner {rows}x{cols} does not fit above the diagonal of M_{n}")
    gens = []
    for i, j in positions:
        if not (0 <= i < rows and 0 <= j < cols):
            raise ValueError(f"position {(i, j)} outside the {rows}x{cols} corner")
        gens.append(Matrix.unit(n, i, n - cols + j))
    return CommutingFamily.from_matrices(gens, n)


def schur_family(k: int, size_cap=DEFAULT_SIZE_CAP) -> CommutingFamily:
    """All ``k^2`` matrix units ``E_{i, j+k}`` in ``M_{2k}``; algebra dimension ``k^2 + 1``."""
    if k < 1:
        raise ValueError("need k >= 1")
    return corner_family(2 * k, k, k, [(i, j) for i in range(k) for j in range(k)], size_cap)


def random_unimodular(n, rng, bound=3, steps=None):
    """``(S, S^-1)`` with det S = +-1 and every entry of S within ``[-bound, bound]``.

    A signed permutation followed by row additions that keep the entry bound.
    """
    if steps is None:
        steps = 2 * n
    perm = list(range(n))
    rng.shuffle(perm)
    signs = [rng.choice((-1, 1)) for _ in range(n)]
    S = [[0] * n for _ in range(n)]
    for i, j in enumerate(perm):
        S[i][j] = signs[i]
    # S^-1 of a signed permutation is its transpose
    T = [[S[j][i] for j in range(n)] for i in range(n)]
    if n > 1:
        for _ in range(steps):
            i, j = rng.sample(range(n), 2)
            c = rng.choice((-1, 1))
            row = [a + c * b for a, b in zip(S[i], S[j])]
            if max(abs(x) for x in row) > bound:
                continue
            S[i] = row
            # S' = E S  =>  S'^-1 = S^-1 E^-1: column j of T loses c * column i
            for r in range(n):
                T[r][j] -= c * T[r][i]
    return Matrix(S), Matrix(T)


def build_family(spec: FamilySpec, size_cap=DEFAULT_SIZE_CAP) -> CommutingFamily:
    """Deterministically reproduce the family described by ``spec``."""
    p = spec.params
    kind = spec.construction
    if kind == "polynomial":
        return polynomial_family(
            p["seed"], p["l"], p.get("coeff_bound", 1), spec.rng_seed, p.get("coefficients")
        )
    if kind == "kronecker-shift":
        return kronecker_shift_family(p["m"], p["l"], size_cap)
    if kind == "schur":
        if "k" in p:
            return schur_family(p["k"], size_cap)
        return corner_family(p["n"], p["rows"], p["cols"], [tuple(x) for x in p["positions"]], size_cap)
    if kind == "block-diagonal":
        blocks = [build_family(FamilySpec.from_json(b), size_cap) for b in p["blocks"]]
        if not blocks:
            raise ValueError("block-diagonal needs at least one block")
        l = blocks[0].l
        if any(b.l != l for b in blocks):
            raise ValueError("all blocks must have the same number of generators")
        shifts = p.get("shifts")
        gens = []
        for g in range(l):
            parts = []
            for b, block in enumerate(blocks):
                A = block.generators[g]
                if shifts is not None:
                    A = A.shift(-to_rational(shifts[b][g], f"params.shifts[{b}][{g}]"))
                parts.append(A)
            gens.append(block_diag(parts))
        n = sum(b.n for b in blocks)
        check_size(n, size_cap)
        return CommutingFamily.from_matrices(gens, n)
    if kind == "conjugated":
        inner = build_family(FamilySpec.from_json(p["inner"]), size_cap)
        S, S_inv = random_unimodular(inner.n, random.Random(spec.rng_seed), p.get("bound", 3), p.get("steps"))
        gens = [S @ A @ S_inv for A in inner.generators]
        return CommutingFamily.from_matrices(gens, inner.n)
    raise ValueError(f"unknown construction {kind!r}")


# ---------------------------------------------------------------------------
# Random families

SHIFT_VALUES = ("-2", "-1", "0", "1/2", "1", "2", "3")


def random_partition(n, rng) -> Partition:
    parts = []
    remaining = n
    while remaining:
        k = rng.randint(1, remaining)
        parts.append(k)
        remaining -= k
    return Partition.of(parts)


def random_composition(n, k, rng):
    """``k`` positive integers summing to ``n`` (``k <= n``)."""
    cuts = sorted(rng.sample(range(1, n), k - 1))
    bounds = [0] + cuts + [n]
    return [b - a for a, b in zip(bounds, bounds[1:])]


def random_polynomial_spec(n, l, rng, coeff_bound=None) -> FamilySpec:
    seed = random_partition(n, rng)
    cb = coeff_bound or rng.randint(1, 3)
    coeffs = _polynomial_coefficients(seed.largest - 1, l, cb, rng)
    return FamilySpec("polynomial", {"seed": seed.to_json(), "l": l, "coeff_bound": cb, "coefficients": coeffs})


def random_block_diagonal_spec(n, l, rng, shifted=True, distinct=False) -> FamilySpec:
    """Polynomial blocks on a random composition of ``n``.

    With ``distinct`` the per-block eigenvalue tuples are pairwise different,
    so the joint decomposition recovers exactly these blocks.
    """
    k = rng.randint(2, min(3, n)) if n > 1 else 1
    sizes = random_composition(n, k, rng)
    blocks = [random_polynomial_spec(s, l, rng).to_json() for s in sizes]
    params = {"blocks": blocks}
    if shifted or distinct:
        seen = set()
        shifts = []
        for _ in sizes:
            while True:
                t = tuple(rng.choice(SHIFT_VALUES) for _ in range(l))
                key = tuple(Fraction(x) for x in t)
                if not distinct or key not in seen:
                    break
            seen.add(key)
            shifts.append(list(t))
        params["shifts"] = shifts
    return FamilySpec("block-diagonal", params)


def conjugate_spec(inner: FamilySpec, rng_seed, bound=3) -> FamilySpec:
    return FamilySpec("conjugated", {"inner": inner.to_json(), "bound": bound}, rng_seed)


def random_commuting_family(n: int, l: int, rng_seed: int):
    """A reproducible random verified-commuting family on ``Q^n``; returns ``(family, spec)``."""
    if n < 1 or l < 1:
        raise ValueError("need n >= 1 and l >= 1")
    rng = random.Random(rng_seed)
    if n == 1:
        spec = FamilySpec("polynomial", {"seed": [1], "l": l, "coeff_bound": 1, "coefficients": [[] for _ in range(l)]})
        return build_family(spec), spec
    if rng.random() < 0.5:
        spec = random_polynomial_spec(n, l, rng)
    else:
        spec = random_block_diagonal_spec(n, l, rng, shifted=rng.random() < 0.5)
    if rng.random() < 0.5:
        spec = conjugate_spec(spec, rng.getrandbits(63))
    return build_family(spec), spec


def random_block_diagonal_family(n: int, l: int, rng_seed: int, conjugate=True):
    """Block-diagonal family whose blocks carry pairwise distinct eigenvalue tuples.

    Returns ``(family, spec, block_sizes)``; ``n`` must be at least 2.
    """
    rng = random.Random(rng_seed)
    spec = random_block_diagonal_spec(n, l, rng, distinct=True)
    sizes = [Partition(tuple(b["params"]["seed"])).n for b in spec.params["blocks"]]
    if conjugate:
        spec = conjugate_spec(spec, rng.getrandbits(63))
    return build_family(spec), spec, sizes


# ---------------------------------------------------------------------------
# Tightness search

@dataclass(frozen=True)
class TightnessRecord:
    spec: FamilySpec
    n: int
    l: int
    dim: int
    ratio_display: str
    evaluations: int = 1
    violation: bool = False

    def to_json(self):
        return {
            "spec": self.spec.to_json(),
            "n": self.n,
            "l": self.l,
            "dim": self.dim,
            "ratio_display": self.ratio_display,
            "evaluations": self.evaluations,
            "violation": self.violation,
        }


def _evaluate(spec, n, l):
    family = build_family(spec)
    dim = generated_algebra_basis(family).dim
    report = commuting_bound_check(dim, n, l)
    return TightnessRecord(spec, n, l, dim, report.approx["ratio"], violation=not report.holds)


def _search_kinds(n, l):
    kinds = ["polynomial"]
    if n >= 2:
        kinds += ["schur", "block-diagonal"]
    if n >= 2 ** l:
        kinds.append("kronecker-shift")
    return kinds


def _initial_spec(kind, n, l, rng) -> FamilySpec:
    if kind == "polynomial":
        return random_polynomial_spec(n, l, rng, coeff_bound=2)
    if kind == "block-diagonal":
        return random_block_diagonal_spec(n, l, rng, shifted=False)
    if kind == "schur":
        rows = n // 2
        cols = n - rows
        cells = [(i, j) for i in range(rows) for j in range(cols)]
        if l <= len(cells):
            positions = rng.sample(cells, l)
        else:
            positions = cells + [rng.choice(cells) for _ in range(l - len(cells))]
        return FamilySpec("schur", {"n": n, "rows": rows, "cols": cols, "positions": [list(c) for c in positions]})
    if kind == "kronecker-shift":
        m = 2
        while (m + 1) ** l <= n:
            m += 1
        kron = FamilySpec("kronecker-shift", {"m": m, "l": l})
        pad = n - m ** l
        if not pad:
            return kron
        zero = FamilySpec("polynomial", {"seed": [1] * pad, "l": l, "coeff_bound": 1, "coefficients": [[] for _ in range(l)]})
        return FamilySpec("block-diagonal", {"blocks": [kron.to_json(), zero.to_json()]})
    raise ValueError(kind)


def _mutate_polynomial(params, rng):
    seed = list(params["seed"])
    l = params["l"]
    cb = params.get("coeff_bound", 1)
    coeffs = [list(c) for c in params["coefficients"]]
    if coeffs and coeffs[0] and rng.random() < 0.6:
        i = rng.randrange(l)
        k = rng.randrange(len(coeffs[i]))
        coeffs[i][k] = max(-cb, min(cb, coeffs[i][k] + rng.choice((-1, 1))))
    else:
        # move one box of the seed partition
        i = rng.randrange(len(seed))
        seed[i] -= 1
        j = rng.randrange(len(seed) + 1)
        if j == len(seed):
            seed.append(1)
        else:
            seed[j] += 1
        seed = sorted((s for s in seed if s > 0), reverse=True)
        depth = seed[0] - 1
        coeffs = [(c + [rng.randint(-cb, cb) for _ in range(depth)])[:depth] for c in coeffs]
    return {"seed": seed, "l": l, "coeff_bound": cb, "coefficients": coeffs}


def _mutate(spec: FamilySpec, rng) -> FamilySpec:
    p = spec.params
    if spec.construction == "polynomial":
        return FamilySpec("polynomial", _mutate_polynomial(p, rng))
    if spec.construction == "schur" and "positions" in p:
        n, rows, cols = p["n"], p["rows"], p["cols"]
        positions = [list(x) for x in p["positions"]]
        if rng.random() < 0.2:
            rows = max(1, min(n - 1, rows + rng.choice((-1, 1))))
            cols = n - rows
            positions = [[min(i, rows - 1), min(j, cols - 1)] for i, j in positions]
        else:
            t = rng.randrange(len(positions))
            positions[t] = [rng.randrange(rows), rng.randrange(cols)]
        return FamilySpec("schur", {"n": n, "rows": rows, "cols": cols, "positions": positions})
    if spec.construction == "block-diagonal":
        blocks = list(p["blocks"])
        mutable = [i for i, b in enumerate(blocks) if b["construction"] == "polynomial"]
        if not mutable:
            return spec
        if len(mutable) >= 2 and rng.random() < 0.3:
            # move one unit of size between two polynomial blocks
            a, b = rng.sample(mutable, 2)
            sa = blocks[a]["params"]["seed"]
            if sum(sa) > 1:
                l = blocks[a]["params"]["l"]
                blocks[a] = random_polynomial_spec(sum(sa) - 1, l, rng, coeff_bound=2).to_json()
                blocks[b] = random_polynomial_spec(sum(blocks[b]["params"]["seed"]) + 1, l, rng, coeff_bound=2).to_json()
        else:
            i = rng.choice(mutable)
            blocks[i] = FamilySpec("polynomial", _mutate_polynomial(blocks[i]["params"], rng)).to_json()
        params = dict(p)
        params["blocks"] = blocks
        return FamilySpec("block-diagonal", params)
    return spec


def tightness_search(n: int, l: int, budget: int, rng_seed: int) -> TightnessRecord:
    """Hill climbing with restarts over family specs, maximizing the algebra dimension.

    ``budget`` counts family evaluations.  Restart ``r`` starts from the
    construction ``kinds[r % len(kinds)]``, seeded by ``derive_seed(rng_seed, r)``.
    Ties on dimension go to the lexicographically smallest canonical spec.
    A family that violates the bound ends the search immediately with
    ``violation=True``.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    kinds = _search_kinds(n, l)
    restarts = max(1, budget // 10)
    share, extra = divmod(budget, restarts)
    best = None
    used = 0
    for r in range(restarts):
        rng = random.Random(derive_seed(rng_seed, r))
        steps = share + (1 if r < extra else 0)
        current = _evaluate(_initial_spec(kinds[r % len(kinds)], n, l, rng), n, l)
        used += 1
        candidates = [current]
        for _ in range(steps - 1):
            if current.violation:
                break
            record = _evaluate(_mutate(current.spec, rng), n, l)
            used += 1
            candidates.append(record)
            if record.dim >= current.dim:
                current = record
        for record in candidates:
            if record.violation:
                log.error("bound violated by %s (dim %d, n %d, l %d)", record.spec.canonical(), record.dim, n, l)
                return _with_count(record, used)
            if best is None or (-record.dim, record.spec.canonical()) < (-best.dim, best.spec.canonical()):
                best = record
    return _with_count(best, used)


def _with_count(record, used):
    return TightnessRecord(record.spec, record.n, record.l, record.dim, record.ratio_display, used, record.violation)
