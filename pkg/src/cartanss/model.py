"""Invariant-forms model of a locally free action, from finite data.

The complex is spanned by monomials g (x) chi_I where g runs over the
generators of a finite-dimensional graded "basic" complex (B, d_hor) and I
over multi-indices of connection generators.  Bidegree of g (x) chi_I is
(p, q) = (deg g, |I|); total degree is p + q.

The total differential splits by chi-count into three parts:

    d21(g (x) chi_{i_1..i_q}) = sum_j (-1)^(p + j - 1) E_{i_j}(g) (x) chi_{I \\ i_j}
    d10(g (x) chi_I)          = d_hor(g) (x) chi_I
    d01(g (x) chi_I)          = -(-1)^p  g (x) delta(chi_I)

with p = deg g and E_i the degree +2 Euler operators on B.  total_d is their
sum; validate_model checks that each bidegree component of total_d^2
vanishes, which is exactly the compatibility required of (d_hor, E_i, delta).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .liealg import (
    ChiElement,
    LieData,
    MultiIndex,
    _check_multi_index,
    all_multi_indices,
    ce_delta,
    contract as chi_contract,
    multi_indices,
)
from .qlinalg import Matrix, as_q
from .reports import CheckResult, ValidationReport

_ZERO = Fraction(0)


@dataclass(frozen=True)
class BasicComplex:
    """Graded space with a degree +1 differential and degree +2 Euler operators.

    generators: (name, degree) pairs; indices into this tuple are 0-based.
    d_hor_entries: (src, dst, coeff) triples, d_hor(g_src) += coeff * g_dst.
    euler_entries: (i, src, dst, coeff) with i the 1-based connection index.

    Degree bookkeeping (dst one degree above src for d_hor, two for Euler) is
    deliberately not enforced here; validate_model reports it, so malformed
    models can be loaded and diagnosed rather than refused at construction.
    """

    generators: tuple[tuple[str, int], ...]
    d_hor_entries: tuple[tuple[int, int, Fraction], ...] = ()
    euler_entries: tuple[tuple[int, int, int, Fraction], ...] = ()

    @classmethod
    def build(cls, generators, d_hor=(), euler=()) -> "BasicComplex":
        gens = tuple((str(name), int(deg)) for name, deg in generators)
        if any(deg < 0 for _, deg in gens):
            raise ValueError("generator degrees must be >= 0")
        if any(not name for name, _ in gens):
            raise ValueError("generator names must be nonempty")
        if len({name for name, _ in gens}) != len(gens):
            raise ValueError("generator names must be distinct")
        ng = len(gens)

        def gen_ok(g):
            return isinstance(g, int) and not isinstance(g, bool) and 0 <= g < ng

        d_rows = []
        seen_d = set()
        for src, dst, coeff in d_hor:
            if not (gen_ok(src) and gen_ok(dst)):
                raise ValueError(f"d_hor entry ({src},{dst}) out of range")
            if (src, dst) in seen_d:
                raise ValueError(f"duplicate d_hor entry ({src},{dst})")
            seen_d.add((src, dst))
            d_rows.append((src, dst, as_q(coeff)))
        e_rows = []
        seen_e = set()
        for i, src, dst, coeff in euler:
            if not isinstance(i, int) or isinstance(i, bool) or i < 1:
                raise ValueError(f"euler connection index must be >= 1: {i!r}")
            if not (gen_ok(src) and gen_ok(dst)):
                raise ValueError(f"euler entry ({i},{src},{dst}) out of range")
            if (i, src, dst) in seen_e:
                raise ValueError(f"duplicate euler entry ({i},{src},{dst})")
            seen_e.add((i, src, dst))
            e_rows.append((i, src, dst, as_q(coeff)))
        return cls(gens, tuple(sorted(d_rows)), tuple(sorted(e_rows)))

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    def degree_of(self, g: int) -> int:
        return self.generators[g][1]

    def name_of(self, g: int) -> str:
        return self.generators[g][0]

    @property
    def max_degree(self) -> int:
        return max((deg for _, deg in self.generators), default=0)

    def gens_of_degree(self, p: int) -> tuple[int, ...]:
        return tuple(g for g, (_, deg) in enumerate(self.generators) if deg == p)

    def euler_indices(self) -> tuple[int, ...]:
        return tuple(sorted({i for i, _, _, _ in self.euler_entries}))

    def d_hor_matrix(self, p: int) -> Matrix:
        """d_hor restricted to degree p, in per-degree generator coordinates."""
        src = self.gens_of_degree(p)
        tgt = self.gens_of_degree(p + 1)
        pos = {g: i for i, g in enumerate(tgt)}
        data = [[_ZERO] * len(src) for _ in tgt]
        for j, g in enumerate(src):
            for dst, coeff in _d_map(self).get(g, ()):
                if dst in pos:
                    data[pos[dst]][j] = coeff
        return Matrix.of(data, cols=len(src))

    def euler_matrix(self, i: int, p: int) -> Matrix:
        src = self.gens_of_degree(p)
        tgt = self.gens_of_degree(p + 2)
        pos = {g: i2 for i2, g in enumerate(tgt)}
        data = [[_ZERO] * len(src) for _ in tgt]
        for j, g in enumerate(src):
            for dst, coeff in _euler_map(self).get((i, g), ()):
                if dst in pos:
                    data[pos[dst]][j] = coeff
        return Matrix.of(data, cols=len(src))


@lru_cache(maxsize=256)
def _d_map(basic: BasicComplex) -> dict[int, tuple[tuple[int, Fraction], ...]]:
    out: dict[int, list] = {}
    for src, dst, coeff in basic.d_hor_entries:
        out.setdefault(src, []).append((dst, coeff))
    return {g: tuple(v) for g, v in out.items()}


@lru_cache(maxsize=256)
def _euler_map(basic: BasicComplex) -> dict[tuple[int, int], tuple[tuple[int, Fraction], ...]]:
    out: dict[tuple[int, int], list] = {}
    for i, src, dst, coeff in basic.euler_entries:
        out.setdefault((i, src), []).append((dst, coeff))
    return {k: tuple(v) for k, v in out.items()}


@dataclass(frozen=True)
class EquivariantModel:
    name: str
    lie: LieData
    basic: BasicComplex


class ModelElement:
    """Linear combination of (generator, multi-index) monomials over Fraction."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean: dict[tuple[int, MultiIndex], Fraction] = {}
        for (g, idx), val in dict(coeffs or {}).items():
            if not isinstance(g, int) or isinstance(g, bool) or g < 0:
                raise ValueError(f"generator index must be a non-negative integer: {g!r}")
            v = as_q(val)
            if v:
                clean[(g, _check_multi_index(idx))] = v
        self.coeffs = clean

    @classmethod
    def zero(cls) -> "ModelElement":
        return cls()

    @classmethod
    def monomial(cls, g: int, idx, coeff=1) -> "ModelElement":
        return cls({(g, tuple(idx)): coeff})

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "ModelElement") -> "ModelElement":
        out = dict(self.coeffs)
        for key, v in other.coeffs.items():
            out[key] = out.get(key, _ZERO) + v
        return ModelElement(out)

    def __sub__(self, other: "ModelElement") -> "ModelElement":
        return self + (-other)

    def __neg__(self) -> "ModelElement":
        return ModelElement({k: -v for k, v in self.coeffs.items()})

    def __rmul__(self, scalar) -> "ModelElement":
        c = as_q(scalar)
        return ModelElement({k: c * v for k, v in self.coeffs.items()})

    def chi_lengths(self) -> set[int]:
        return {len(I) for _, I in self.coeffs}

    def __eq__(self, other) -> bool:
        return isinstance(other, ModelElement) and self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self) -> str:
        if not self.coeffs:
            return "ModelElement(0)"
        parts = []
        for g, I in sorted(self.coeffs):
            v = self.coeffs[(g, I)]
            chi = "1" if not I else "chi(" + ",".join(map(str, I)) + ")"
            parts.append(f"{v}*g{g}(x){chi}")
        return "ModelElement(" + " + ".join(parts) + ")"


def bidegrees(model: EquivariantModel, x: ModelElement) -> set[tuple[int, int]]:
    return {(model.basic.degree_of(g), len(I)) for g, I in x.coeffs}


def filtration_degree(x: ModelElement) -> int:
    """Largest chi-count in the support; the smallest q with x in F^(deg-q)."""
    if x.is_zero:
        raise ValueError("filtration degree of the zero element is undefined")
    return max(len(I) for _, I in x.coeffs)


def bihomogeneous_part(model: EquivariantModel, x: ModelElement, p: int, q: int) -> ModelElement:
    return ModelElement(
        {
            (g, I): v
            for (g, I), v in x.coeffs.items()
            if model.basic.degree_of(g) == p and len(I) == q
        }
    )


def canonical_decomposition(model: EquivariantModel, x: ModelElement) -> list[ModelElement]:
    """Split into bihomogeneous pieces, ordered by increasing chi-count.

    For a total-degree-homogeneous x this is the usual horizontal-degree
    descending decomposition; each piece can equivalently be extracted by
    iterated contraction against its multi-indices.
    """
    keys = sorted(bidegrees(model, x), key=lambda pq: (pq[1], -pq[0]))
    return [bihomogeneous_part(model, x, p, q) for p, q in keys]


def contract(model: EquivariantModel, ell: int, x: ModelElement) -> ModelElement:
    """Interior product on the model: basic factors are horizontal."""
    out: dict[tuple[int, MultiIndex], Fraction] = {}
    for (g, I), v in x.coeffs.items():
        ci = chi_contract(ell, ChiElement.basis(I))
        if ci.is_zero:
            continue
        sign = -1 if model.basic.degree_of(g) % 2 else 1
        for J, w in ci.coeffs.items():
            key = (g, J)
            out[key] = out.get(key, _ZERO) + sign * v * w
    return ModelElement(out)


def d10(model: EquivariantModel, x: ModelElement) -> ModelElement:
    """d_hor on the basic factor, identity on the chi factor, no sign."""
    dm = _d_map(model.basic)
    out: dict[tuple[int, MultiIndex], Fraction] = {}
    for (g, I), v in x.coeffs.items():
        for dst, coeff in dm.get(g, ()):
            key = (dst, I)
            out[key] = out.get(key, _ZERO) + v * coeff
    return ModelElement(out)


def one_tensor_delta(model: EquivariantModel, x: ModelElement) -> ModelElement:
    """(1 (x) delta) with the Koszul sign: g (x) chi_I -> (-1)^(deg g) g (x) delta(chi_I)."""
    out = ModelElement.zero()
    for (g, I), v in x.coeffs.items():
        dI = ce_delta(model.lie, ChiElement.basis(I))
        if dI.is_zero:
            continue
        sign = -1 if model.basic.degree_of(g) % 2 else 1
        out = out + ModelElement({(g, J): sign * v * w for J, w in dI.coeffs.items()})
    return out


def d01(model: EquivariantModel, x: ModelElement) -> ModelElement:
    """Minus (1 (x) delta) with the Koszul sign."""
    return -one_tensor_delta(model, x)


def d21(model: EquivariantModel, x: ModelElement) -> ModelElement:
    """Euler component: sum_j (-1)^(p+j-1) E_{i_j}(g) (x) chi_{I minus i_j}."""
    em = _euler_map(model.basic)
    out: dict[tuple[int, MultiIndex], Fraction] = {}
    for (g, I), v in x.coeffs.items():
        p = model.basic.degree_of(g)
        for j, gen in enumerate(I):
            hits = em.get((gen, g))
            if not hits:
                continue
            sign = -1 if (p + j) % 2 else 1
            J = I[:j] + I[j + 1:]
            for dst, coeff in hits:
                key = (dst, J)
                out[key] = out.get(key, _ZERO) + sign * v * coeff
    return ModelElement(out)


def total_d(model: EquivariantModel, x: ModelElement) -> ModelElement:
    return d21(model, x) + d10(model, x) + d01(model, x)


def monomial_basis(model: EquivariantModel, k: int) -> tuple[tuple[int, MultiIndex], ...]:
    """Basis of total degree k, ordered by descending horizontal degree.

    Within one horizontal degree: generators in declaration order, then
    multi-indices lexicographically.  The descending order makes every
    filtration step a coordinate prefix.
    """
    out: list[tuple[int, MultiIndex]] = []
    n = model.lie.n
    for p in range(model.basic.max_degree, -1, -1):
        q = k - p
        if q < 0 or q > n:
            continue
        for g in model.basic.gens_of_degree(p):
            for I in multi_indices(n, q):
                out.append((g, I))
    return tuple(out)


def max_total_degree(model: EquivariantModel) -> int:
    return model.basic.max_degree + model.lie.n


def element_to_vector(model: EquivariantModel, x: ModelElement, k: int) -> tuple[Fraction, ...]:
    pos = {key: i for i, key in enumerate(monomial_basis(model, k))}
    v = [_ZERO] * len(pos)
    for key, val in x.coeffs.items():
        if key not in pos:
            g, I = key
            raise ValueError(
                f"monomial {model.basic.name_of(g)} (x) chi{list(I)} is not in total degree {k}"
            )
        v[pos[key]] = val
    return tuple(v)


def vector_to_element(model: EquivariantModel, vec, k: int) -> ModelElement:
    basis = monomial_basis(model, k)
    if len(vec) != len(basis):
        raise ValueError("coordinate length mismatch")
    return ModelElement({key: v for key, v in zip(basis, vec)})


def total_matrix(model: EquivariantModel, k: int) -> Matrix:
    """Matrix of total_d from degree k to k+1 in the monomial bases."""
    src = monomial_basis(model, k)
    tgt_len = len(monomial_basis(model, k + 1))
    cols = [
        element_to_vector(model, total_d(model, ModelElement.monomial(g, I)), k + 1)
        for g, I in src
    ]
    data = [[cols[j][i] for j in range(len(src))] for i in range(tgt_len)]
    return Matrix.of(data, cols=len(src))


def total_cohomology(model: EquivariantModel) -> tuple[int, ...]:
    """Cohomology dimensions of (total complex, total_d), degree by degree.

    Straight rank computation, independent of any filtration: the abutment
    oracle for the spectral machinery.
    """
    top = max_total_degree(model)
    dims = [len(monomial_basis(model, k)) for k in range(top + 2)]
    ranks = [total_matrix(model, k).rank() for k in range(top + 1)]
    out = []
    for k in range(top + 1):
        prev = ranks[k - 1] if k > 0 else 0
        out.append(dims[k] - ranks[k] - prev)
    return tuple(out)


def _identity_check(model, name, op) -> CheckResult:
    basic = model.basic
    for g in range(basic.num_generators):
        p = basic.degree_of(g)
        for I in all_multi_indices(model.lie.n):
            x = ModelElement.monomial(g, I)
            if not op(x).is_zero:
                return CheckResult(
                    name,
                    False,
                    f"fails on {basic.name_of(g)} (x) chi{list(I)} (bidegree ({p},{len(I)}))",
                )
    return CheckResult(name, True)


def validate_model(model: EquivariantModel) -> ValidationReport:
    """Structural checks plus every bidegree component of total_d^2 = 0."""
    basic = model.basic
    checks = []

    has_unit = any(deg == 0 for _, deg in basic.generators)
    checks.append(
        CheckResult(
            "degree-zero unit",
            has_unit,
            "" if has_unit else "basic complex has no degree-0 generator",
        )
    )

    bad_e = next((i for i in basic.euler_indices() if i > model.lie.n), None)
    checks.append(
        CheckResult(
            "euler index range",
            bad_e is None,
            "" if bad_e is None else f"euler operator E_{bad_e} exceeds n={model.lie.n}",
        )
    )

    deg_bad = ""
    for src, dst, _ in basic.d_hor_entries:
        if basic.degree_of(dst) != basic.degree_of(src) + 1:
            deg_bad = (
                f"d_hor sends {basic.name_of(src)} (deg {basic.degree_of(src)}) to "
                f"{basic.name_of(dst)} (deg {basic.degree_of(dst)}), not degree +1"
            )
            break
    if not deg_bad:
        for i, src, dst, _ in basic.euler_entries:
            if basic.degree_of(dst) != basic.degree_of(src) + 2:
                deg_bad = (
                    f"E_{i} sends {basic.name_of(src)} (deg {basic.degree_of(src)}) to "
                    f"{basic.name_of(dst)} (deg {basic.degree_of(dst)}), not degree +2"
                )
                break
    checks.append(CheckResult("degree bookkeeping", not deg_bad, deg_bad))

    D10 = lambda x: d10(model, x)  # noqa: E731
    D01 = lambda x: d01(model, x)  # noqa: E731
    D21 = lambda x: d21(model, x)  # noqa: E731

    checks.append(_identity_check(model, "d_hor squared", lambda x: D10(D10(x))))

    bad_idx = next(
        (
            I
            for I in all_multi_indices(model.lie.n)
            if not ce_delta(model.lie, ce_delta(model.lie, ChiElement.basis(I))).is_zero
        ),
        None,
    )
    checks.append(
        CheckResult(
            "delta squared",
            bad_idx is None,
            "" if bad_idx is None else f"delta^2(chi{list(bad_idx)}) != 0",
        )
    )

    checks.append(
        _identity_check(model, "bidegree (0,2) component", lambda x: D01(D01(x)))
    )
    checks.append(
        _identity_check(
            model, "bidegree (1,1) component", lambda x: D10(D01(x)) + D01(D10(x))
        )
    )
    checks.append(
        _identity_check(
            model,
            "bidegree (2,0) component",
            lambda x: D10(D10(x)) + D21(D01(x)) + D01(D21(x)),
        )
    )
    checks.append(
        _identity_check(
            model, "bidegree (3,-1) component", lambda x: D21(D10(x)) + D10(D21(x))
        )
    )
    checks.append(
        _identity_check(model, "bidegree (4,-2) component", lambda x: D21(D21(x)))
    )
    checks.append(
        _identity_check(
            model,
            "total differential squared",
            lambda x: total_d(model, total_d(model, x)),
        )
    )

    return ValidationReport("model", tuple(checks))
