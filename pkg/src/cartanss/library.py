"""Worked model cards with independently derived expected results.

Each card bundles an EquivariantModel with the numbers a correct engine must
reproduce: total cohomology, nonzero second-page dimensions, the stabilization
page, basic cohomology dims and (where meaningful) the absolute value of the
single transgression entry.  The fixed cards were derived by hand from the
defining complexes and are cross-checked in the test suite against the
brute-force rank oracle; the composable cards derive their expectations by
Kunneth counting, which never touches the page machinery.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .liealg import LieData, lie_cohomology
from .model import BasicComplex, EquivariantModel
from .qlinalg import Matrix, as_q, inverse

MODEL_NAMES = (
    "hopf",
    "weighted_hopf",
    "kronecker",
    "group_su2",
    "group_torus",
    "trivial_product",
)

DESCRIPTIONS = {
    "hopf": "circle action of the Hopf fibration; one Euler generator, transgression 1",
    "weighted_hopf": "weighted circle action (lens spaces); transgression w (default w=2)",
    "kronecker": "irrational line flow on the 2-torus (slope-independent model)",
    "group_su2": "SU(2) acting on itself; basic complex is a point",
    "group_torus": "n-torus acting on itself (default n=2)",
    "trivial_product": "product action: zero Euler operators, Kunneth second page",
}


@dataclass(frozen=True)
class ExpectedResults:
    total_cohomology: tuple[int, ...]
    e2_dims: dict = field(compare=False)  # nonzero cells (p, q) -> dim
    stabilization: int = 2
    basic_cohomology: tuple[int, ...] = (1,)
    d2_abs_at_01: int | None = None


@dataclass(frozen=True)
class ModelCard:
    model: EquivariantModel
    expected: ExpectedResults
    note: str = ""


def su2_lie() -> LieData:
    """Structure constants of su(2) in an orthonormal basis: c[1][2][3] = 1."""
    return LieData.from_structure_constants(3, {(1, 2, 3): 1}, completion="full")


def heisenberg_lie() -> LieData:
    """Bracket-antisymmetric but not ad-invariant: rejected by the validator."""
    return LieData.from_structure_constants(3, {(1, 2, 3): 1}, completion="bracket")


def mutated_jacobi_lie() -> LieData:
    """Fails the Jacobi identity (and so delta^2 = 0): c[1][2][3] = c[1][3][1] = 1."""
    return LieData.from_structure_constants(
        3, {(1, 2, 3): 1, (1, 3, 1): 1}, completion="bracket"
    )


def rescaled_su2_lie() -> LieData:
    """Passes Jacobi and delta^2 = 0 but fails full antisymmetry (rescaled su(2))."""
    return LieData.from_structure_constants(
        3, {(1, 2, 3): 1, (2, 3, 1): 2, (3, 1, 2): 1}, completion="bracket"
    )


def heisenberg_model() -> EquivariantModel:
    """Heisenberg data over a point: the canonical validator-rejection fixture."""
    return EquivariantModel(
        "heisenberg", heisenberg_lie(), BasicComplex.build([("1", 0)])
    )


def _sphere_basic(weight: Fraction) -> BasicComplex:
    return BasicComplex.build(
        [("1", 0), ("v", 2)],
        euler=[(1, 0, 1, weight)],
    )


def _hopf_card(weight: int, name: str) -> ModelCard:
    model = EquivariantModel(name, LieData.abelian(1), _sphere_basic(as_q(weight)))
    expected = ExpectedResults(
        total_cohomology=(1, 0, 0, 1),
        e2_dims={(0, 0): 1, (0, 1): 1, (2, 0): 1, (2, 1): 1},
        stabilization=3,
        basic_cohomology=(1, 0, 1),
        d2_abs_at_01=abs(weight),
    )
    return ModelCard(model, expected, DESCRIPTIONS["hopf" if weight == 1 else "weighted_hopf"])


def _kronecker_card() -> ModelCard:
    basic = BasicComplex.build([("1", 0), ("kappa", 1)])
    model = EquivariantModel("kronecker", LieData.abelian(1), basic)
    expected = ExpectedResults(
        total_cohomology=(1, 2, 1),
        e2_dims={(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): 1},
        stabilization=2,
        basic_cohomology=(1, 1),
    )
    return ModelCard(model, expected, DESCRIPTIONS["kronecker"])


def _group_card(lie: LieData, name: str, desc: str) -> ModelCard:
    model = EquivariantModel(name, lie, BasicComplex.build([("1", 0)]))
    hdims = lie_cohomology(lie).dims
    expected = ExpectedResults(
        total_cohomology=hdims,
        e2_dims={(0, q): d for q, d in enumerate(hdims) if d},
        stabilization=2,
        basic_cohomology=(1,),
    )
    return ModelCard(model, expected, desc)


def _kunneth_expected(basic_dims: tuple[int, ...], lie_dims: tuple[int, ...]) -> ExpectedResults:
    total = [0] * (len(basic_dims) + len(lie_dims) - 1)
    e2 = {}
    for p, bp in enumerate(basic_dims):
        for q, lq in enumerate(lie_dims):
            if bp and lq:
                e2[(p, q)] = bp * lq
                total[p + q] += bp * lq
    return ExpectedResults(
        total_cohomology=tuple(total),
        e2_dims=e2,
        stabilization=2,
        basic_cohomology=basic_dims,
    )


def _complex_cohomology_dims(basic: BasicComplex) -> tuple[int, ...]:
    """H(B, d_hor) dims by plain rank counting (no page machinery)."""
    dims = []
    for p in range(basic.max_degree + 1):
        here = len(basic.gens_of_degree(p))
        r_out = basic.d_hor_matrix(p).rank()
        r_in = basic.d_hor_matrix(p - 1).rank() if p else 0
        dims.append(here - r_out - r_in)
    return tuple(dims)


def _trivial_product_card(basic=None, lie=None) -> ModelCard:
    if basic is None:
        basic = BasicComplex.build(
            [("1", 0), ("a1", 1), ("a2", 1), ("a12", 2)]
        )
    if lie is None:
        lie = LieData.abelian(2)
    if basic.euler_entries:
        raise ValueError("trivial product requires zero Euler operators")
    model = EquivariantModel("trivial_product", lie, basic)
    expected = _kunneth_expected(
        _complex_cohomology_dims(basic), lie_cohomology(lie).dims
    )
    return ModelCard(model, expected, DESCRIPTIONS["trivial_product"])


def get_model(name: str, param=None, *, basic=None, lie=None) -> ModelCard:
    """Look up a library card by name, with the card's parameter if it takes one.

    weighted_hopf takes a nonzero integer weight (default 2); group_torus takes
    the torus rank n >= 1 (default 2); trivial_product accepts a custom
    (basic, lie) pair with zero Euler operators.  Unknown names and invalid
    parameters raise ValueError.
    """
    if name == "hopf":
        if param is not None:
            raise ValueError("hopf takes no parameter")
        return _hopf_card(1, "hopf")
    if name == "weighted_hopf":
        w = 2 if param is None else param
        if not isinstance(w, int) or isinstance(w, bool) or w == 0:
            raise ValueError(f"weight must be a nonzero integer: {param!r}")
        return _hopf_card(w, f"weighted_hopf({w})")
    if name == "kronecker":
        if param is not None:
            raise ValueError("kronecker takes no parameter")
        return _kronecker_card()
    if name == "group_su2":
        if param is not None:
            raise ValueError("group_su2 takes no parameter")
        return _group_card(su2_lie(), "group_su2", DESCRIPTIONS["group_su2"])
    if name == "group_torus":
        n = 2 if param is None else param
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise ValueError(f"torus rank must be a positive integer: {param!r}")
        card = _group_card(
            LieData.abelian(n), f"group_torus({n})", DESCRIPTIONS["group_torus"]
        )
        assert card.expected.total_cohomology == tuple(comb(n, k) for k in range(n + 1))
        return card
    if name == "trivial_product":
        if param is not None:
            raise ValueError("trivial_product is configured by basic/lie, not a parameter")
        return _trivial_product_card(basic, lie)
    raise ValueError(f"unknown model name: {name!r}")


def all_default_cards() -> list[ModelCard]:
    return [get_model(name) for name in MODEL_NAMES]


def _random_invertible(rng: random.Random, size: int) -> Matrix:
    if size == 0:
        return Matrix.of([], cols=0)
    while True:
        m = Matrix.of(
            [[rng.randint(-2, 2) for _ in range(size)] for _ in range(size)]
        )
        if m.rank() == size:
            return m


def random_trivial_product(rng: random.Random, tag: str = "random_trivial_product") -> ModelCard:
    """A random valid trivial-product card with Kunneth-derived expectations.

    The basic complex is a random direct sum of dots and single arrows (every
    finite complex over a field splits this way) twisted by a random
    degree-preserving change of basis, so d_hor is dense-ish while the
    cohomology dims stay equal to the dot counts by construction.
    """
    n = rng.randint(1, 2)
    lie = LieData.abelian(n)
    max_deg = rng.randint(1, 3)
    dots = [rng.randint(0, 2) for _ in range(max_deg + 1)]
    dots[0] = max(dots[0], 1)  # keep a unit
    arrows = [rng.randint(0, 1) for _ in range(max_deg)]

    per_degree: list[list[str]] = [[] for _ in range(max_deg + 1)]
    arrow_slots = []  # (src_degree, src_local, dst_local, coeff)
    for p in range(max_deg + 1):
        for k in range(dots[p]):
            per_degree[p].append(f"g{p}_{len(per_degree[p])}")
    for p in range(max_deg):
        for _ in range(arrows[p]):
            src_local = len(per_degree[p])
            per_degree[p].append(f"g{p}_{src_local}")
            dst_local = len(per_degree[p + 1])
            per_degree[p + 1].append(f"g{p + 1}_{dst_local}")
            coeff = Fraction(rng.choice([1, 2, 3, -1, -2]), rng.choice([1, 2]))
            arrow_slots.append((p, src_local, dst_local, coeff))

    # arrows always populate their target degree, so only dot-free trailing
    # degrees can be empty; drop them to keep degree ranges in sync
    while len(per_degree) > 1 and not per_degree[-1]:
        per_degree.pop()
        dots.pop()
    max_deg = len(per_degree) - 1

    d_per_degree = []
    for p in range(max_deg + 1):
        rows = len(per_degree[p + 1]) if p < max_deg else 0
        cols = len(per_degree[p])
        data = [[Fraction(0)] * cols for _ in range(rows)]
        for sp, sl, dl, coeff in arrow_slots:
            if sp == p:
                data[dl][sl] = coeff
        d_per_degree.append(Matrix.of(data, cols=cols))

    basis_change = [_random_invertible(rng, len(per_degree[p])) for p in range(max_deg + 1)]
    basis_change.append(Matrix.of([], cols=0))
    generators = []
    offset = {}
    for p in range(max_deg + 1):
        offset[p] = len(generators)
        generators.extend((name, p) for name in per_degree[p])
    d_entries = []
    for p in range(max_deg):
        twisted = basis_change[p + 1] @ d_per_degree[p] @ inverse(basis_change[p])
        for i in range(twisted.rows):
            for j in range(twisted.cols):
                v = twisted.entry(i, j)
                if v:
                    d_entries.append((offset[p] + j, offset[p + 1] + i, v))

    basic = BasicComplex.build(generators, d_hor=d_entries)
    model = EquivariantModel(tag, lie, basic)
    expected = _kunneth_expected(
        tuple(dots), tuple(comb(n, q) for q in range(n + 1))
    )
    return ModelCard(model, expected, "randomized trivial product")
