"""Exterior algebra on dual generators and Lie algebra cohomology, exactly.

Conventions, fixed once and used everywhere downstream:

* ``c[a][b][k]`` encodes the bracket pairing <[u_a, u_b], u_k> in an
  orthonormal basis u_1..u_n.  Valid data is antisymmetric in (a, b), fully
  antisymmetric under all permutations of (a, b, k) (the invariant-metric
  condition), and satisfies the Jacobi identity.
* The differential on the exterior algebra of the dual generators chi_1..chi_n
  is
      delta chi_k = sum_{a<b} c[a][b][k] chi_a ^ chi_b,
  extended as a graded derivation of degree +1:
      delta(chi_{i_1} ^ ... ^ chi_{i_q})
        = sum_j (-1)^(j-1) chi_{i_1} ^ ... ^ delta chi_{i_j} ^ ... ^ chi_{i_q}.
* contract(i, -) is the interior product with the i-th basis direction, the
  graded derivation of degree -1 with contract(i, chi_j) = [i == j].
* The infinitesimal action of the l-th basis direction is the degree-zero
  derivation given by the homotopy formula
      coadjoint(l, -) = contract(l, delta(-)) + delta(contract(l, -)),
  which on generators evaluates to
      coadjoint(l, chi_i) = sum_k c[l][k][i] chi_k,
  i.e. minus the dual of ad(u_l).  Its joint kernel over l is the invariant
  subcomplex.

Multi-indices are strictly increasing tuples of 1-based generator indices;
the basis of the exterior algebra is enumerated by length, then
lexicographically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

from .qlinalg import Matrix, Subspace, as_q, image, kernel_basis, quotient_map
from .reports import CheckResult, ValidationReport

MultiIndex = tuple[int, ...]

_ZERO = Fraction(0)


def _check_multi_index(idx) -> MultiIndex:
    I = tuple(idx)
    for x in I:
        if not isinstance(x, int) or isinstance(x, bool) or x < 1:
            raise ValueError(f"multi-index entries must be positive integers: {I!r}")
    if any(I[j] >= I[j + 1] for j in range(len(I) - 1)):
        raise ValueError(f"multi-index must be strictly increasing: {I!r}")
    return I


def multi_indices(n: int, q: int) -> tuple[MultiIndex, ...]:
    """All degree-q multi-indices on generators 1..n, lexicographically."""
    if q < 0:
        return ()
    return tuple(combinations(range(1, n + 1), q))


def all_multi_indices(n: int) -> tuple[MultiIndex, ...]:
    out: list[MultiIndex] = []
    for q in range(n + 1):
        out.extend(multi_indices(n, q))
    return tuple(out)


class ChiElement:
    """Element of the exterior algebra on chi_1, chi_2, ... over Fraction.

    Stored as multi-index -> coefficient with zero coefficients pruned, so
    equality is structural.  Instances are treated as immutable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean: dict[MultiIndex, Fraction] = {}
        for idx, val in dict(coeffs or {}).items():
            v = as_q(val)
            if v:
                clean[_check_multi_index(idx)] = v
        self.coeffs = clean

    @classmethod
    def zero(cls) -> "ChiElement":
        return cls()

    @classmethod
    def unit(cls) -> "ChiElement":
        return cls({(): 1})

    @classmethod
    def chi(cls, i: int) -> "ChiElement":
        return cls({(i,): 1})

    @classmethod
    def basis(cls, idx) -> "ChiElement":
        return cls({tuple(idx): 1})

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def degrees(self) -> set[int]:
        return {len(I) for I in self.coeffs}

    def homogeneous_component(self, q: int) -> "ChiElement":
        return ChiElement({I: v for I, v in self.coeffs.items() if len(I) == q})

    def __add__(self, other: "ChiElement") -> "ChiElement":
        out = dict(self.coeffs)
        for I, v in other.coeffs.items():
            out[I] = out.get(I, _ZERO) + v
        return ChiElement(out)

    def __sub__(self, other: "ChiElement") -> "ChiElement":
        return self + (-other)

    def __neg__(self) -> "ChiElement":
        return ChiElement({I: -v for I, v in self.coeffs.items()})

    def __rmul__(self, scalar) -> "ChiElement":
        c = as_q(scalar)
        return ChiElement({I: c * v for I, v in self.coeffs.items()})

    def wedge(self, other: "ChiElement") -> "ChiElement":
        return wedge(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, ChiElement) and self.coeffs == other.coeffs

    __hash__ = None  # mutable-dict backed

    def __repr__(self) -> str:
        if not self.coeffs:
            return "ChiElement(0)"
        parts = []
        for I in sorted(self.coeffs, key=lambda J: (len(J), J)):
            v = self.coeffs[I]
            label = "1" if not I else "chi(" + ",".join(map(str, I)) + ")"
            parts.append(f"{v}*{label}")
        return "ChiElement(" + " + ".join(parts) + ")"


def _merge_multi_indices(I: MultiIndex, J: MultiIndex):
    """Merge two disjoint increasing tuples; returns (sign, merged) or None."""
    if set(I) & set(J):
        return None
    merged: list[int] = []
    inversions = 0
    i = j = 0
    while i < len(I) and j < len(J):
        if I[i] < J[j]:
            merged.append(I[i])
            i += 1
        else:
            merged.append(J[j])
            inversions += len(I) - i
            j += 1
    merged.extend(I[i:])
    merged.extend(J[j:])
    return (-1 if inversions % 2 else 1), tuple(merged)


def wedge(a: ChiElement, b: ChiElement) -> ChiElement:
    out: dict[MultiIndex, Fraction] = {}
    for I, v in a.coeffs.items():
        for J, w in b.coeffs.items():
            m = _merge_multi_indices(I, J)
            if m is None:
                continue
            sign, K = m
            out[K] = out.get(K, _ZERO) + sign * v * w
    return ChiElement(out)


def contract(i: int, a: ChiElement) -> ChiElement:
    """Interior product with the i-th basis direction (degree -1 derivation)."""
    if not isinstance(i, int) or isinstance(i, bool) or i < 1:
        raise ValueError(f"generator index must be a positive integer: {i!r}")
    out: dict[MultiIndex, Fraction] = {}
    for I, v in a.coeffs.items():
        if i not in I:
            continue
        pos = I.index(i)
        J = I[:pos] + I[pos + 1:]
        sign = -1 if pos % 2 else 1
        out[J] = out.get(J, _ZERO) + sign * v
    return ChiElement(out)


@dataclass(frozen=True)
class LieData:
    """Structure constants of an n-dimensional metric Lie algebra, 0-based storage."""

    n: int
    c: tuple[tuple[tuple[Fraction, ...], ...], ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n must be a positive integer: {self.n!r}")
        if len(self.c) != self.n or any(
            len(plane) != self.n or any(len(row) != self.n for row in plane)
            for plane in self.c
        ):
            raise ValueError("structure constant array must be n x n x n")

    def bracket_coeff(self, a: int, b: int, k: int) -> Fraction:
        """c[a][b][k] with 1-based indices."""
        return self.c[a - 1][b - 1][k - 1]

    @classmethod
    def abelian(cls, n: int) -> "LieData":
        plane = tuple(tuple([_ZERO] * n) for _ in range(n))
        return cls(n, tuple(plane for _ in range(n)))

    @classmethod
    def from_structure_constants(cls, n, entries, completion: str = "full") -> "LieData":
        """Build c from sparse 1-based entries (a, b, k) -> value.

        completion:
          "full"    each entry fixes its whole signed S3-orbit (indices distinct)
          "bracket" each entry fixes c[a][b][k] and c[b][a][k] = -value only
          "none"    entries placed verbatim

        Listing two entries that touch the same slot is an error, even when
        consistent: one representative per orbit.
        """
        if completion not in ("full", "bracket", "none"):
            raise ValueError(f"unknown completion mode {completion!r}")
        if isinstance(entries, dict):
            items = [(a, b, k, v) for (a, b, k), v in entries.items()]
        else:
            items = [tuple(e) for e in entries]
        arr = [[[_ZERO] * n for _ in range(n)] for _ in range(n)]
        taken: set[tuple[int, int, int]] = set()

        def put(a, b, k, v):
            if (a, b, k) in taken:
                raise ValueError(f"duplicate structure constant slot ({a},{b},{k})")
            taken.add((a, b, k))
            arr[a - 1][b - 1][k - 1] = v

        for a, b, k, v in items:
            for x in (a, b, k):
                if not isinstance(x, int) or isinstance(x, bool) or not 1 <= x <= n:
                    raise ValueError(f"structure constant index out of range: ({a},{b},{k})")
            v = as_q(v)
            if completion == "none":
                put(a, b, k, v)
            elif completion == "bracket":
                if a == b:
                    raise ValueError(f"entry ({a},{b},{k}) has equal bracket indices")
                put(a, b, k, v)
                put(b, a, k, -v)
            else:
                if len({a, b, k}) != 3:
                    raise ValueError(
                        f"fully antisymmetric entry needs distinct indices: ({a},{b},{k})"
                    )
                for perm in permutations((0, 1, 2)):
                    idx = (a, b, k)
                    tgt = tuple(idx[p] for p in perm)
                    sign = _perm_sign(perm)
                    put(*tgt, sign * v)
        return cls(n, tuple(tuple(tuple(row) for row in plane) for plane in arr))


def _perm_sign(perm) -> int:
    inv = sum(
        1
        for i in range(len(perm))
        for j in range(i + 1, len(perm))
        if perm[i] > perm[j]
    )
    return -1 if inv % 2 else 1


def delta_gen(L: LieData, k: int) -> ChiElement:
    """delta chi_k = sum_{a<b} c[a][b][k] chi_a ^ chi_b."""
    out = {}
    for a in range(1, L.n + 1):
        for b in range(a + 1, L.n + 1):
            v = L.bracket_coeff(a, b, k)
            if v:
                out[(a, b)] = v
    return ChiElement(out)


def ce_delta(L: LieData, a: ChiElement) -> ChiElement:
    """The differential, extended over products as a graded derivation."""
    out = ChiElement.zero()
    for I, v in a.coeffs.items():
        for pos, gen in enumerate(I):
            dg = delta_gen(L, gen)
            if dg.is_zero:
                continue
            sign = -1 if pos % 2 else 1
            term = wedge(ChiElement.basis(I[:pos]), wedge(dg, ChiElement.basis(I[pos + 1:])))
            out = out + (sign * v) * term
    return out


def coadjoint(L: LieData, ell: int, a: ChiElement) -> ChiElement:
    """Infinitesimal action of the ell-th direction: contract o delta + delta o contract.

    A degree-zero (ungraded) derivation that commutes with ce_delta; on
    generators coadjoint(l, chi_i) = sum_k c[l][k][i] chi_k.
    """
    if not isinstance(ell, int) or isinstance(ell, bool) or not 1 <= ell <= L.n:
        raise ValueError(f"direction index out of range: {ell!r}")
    return contract(ell, ce_delta(L, a)) + ce_delta(L, contract(ell, a))


def chi_to_vector(a: ChiElement, n: int, q: int) -> tuple[Fraction, ...]:
    """Coordinates of the degree-q component in the canonical basis of Lambda^q."""
    pos = {I: i for i, I in enumerate(multi_indices(n, q))}
    v = [_ZERO] * len(pos)
    for I, val in a.coeffs.items():
        if len(I) == q:
            if I not in pos:
                raise ValueError(f"multi-index {I} exceeds n={n}")
            v[pos[I]] = val
    return tuple(v)


def chi_from_vector(vec, n: int, q: int) -> ChiElement:
    idxs = multi_indices(n, q)
    if len(vec) != len(idxs):
        raise ValueError("coordinate length mismatch")
    return ChiElement({I: v for I, v in zip(idxs, vec)})


def _matrix_of_op(op, n: int, q_src: int, q_tgt: int) -> Matrix:
    src = multi_indices(n, q_src)
    tgt = multi_indices(n, q_tgt)
    cols = [chi_to_vector(op(ChiElement.basis(I)), n, q_tgt) for I in src]
    data = [[cols[j][i] for j in range(len(src))] for i in range(len(tgt))]
    return Matrix.of(data, cols=len(src))


def delta_matrix(L: LieData, q: int) -> Matrix:
    """Matrix of the differential Lambda^q -> Lambda^{q+1}."""
    return _matrix_of_op(lambda x: ce_delta(L, x), L.n, q, q + 1)


def coadjoint_matrix(L: LieData, ell: int, q: int) -> Matrix:
    """Matrix of the ell-th infinitesimal action on Lambda^q."""
    return _matrix_of_op(lambda x: coadjoint(L, ell, x), L.n, q, q)


@dataclass(frozen=True)
class LieCohomology:
    dims: tuple[int, ...]
    reps: tuple[tuple[ChiElement, ...], ...]


def lie_cohomology(L: LieData) -> LieCohomology:
    """Per-degree dimensions and representative cocycles of ker(delta)/im(delta).

    The data must pass validate_lie; on invalid data the coboundaries need not
    sit inside the cocycles and this raises.
    """
    dims: list[int] = []
    reps: list[tuple[ChiElement, ...]] = []
    for q in range(L.n + 1):
        ker = kernel_basis(delta_matrix(L, q))
        if q == 0:
            img = Subspace.zero(ker.ambient_dim)
        else:
            img = image(delta_matrix(L, q - 1))
        rep_rows, _ = quotient_map(ker, img)
        dims.append(rep_rows.rows)
        reps.append(tuple(chi_from_vector(r, L.n, q) for r in rep_rows.data))
    return LieCohomology(tuple(dims), tuple(reps))


def invariant_subcomplex(L: LieData) -> tuple[Subspace, ...]:
    """Per degree q, the joint kernel of all infinitesimal actions on Lambda^q."""
    out = []
    for q in range(L.n + 1):
        stacked = Matrix.vstack(*[coadjoint_matrix(L, ell, q) for ell in range(1, L.n + 1)])
        out.append(kernel_basis(stacked))
    return tuple(out)


def validate_lie(L: LieData) -> ValidationReport:
    """Check bracket antisymmetry, full antisymmetry, Jacobi, and delta^2 = 0."""
    checks = []

    bad = None
    for a in range(1, L.n + 1):
        for b in range(1, L.n + 1):
            for k in range(1, L.n + 1):
                if L.bracket_coeff(a, b, k) != -L.bracket_coeff(b, a, k):
                    bad = (a, b, k)
                    break
            if bad:
                break
        if bad:
            break
    checks.append(
        CheckResult(
            "bracket antisymmetry",
            bad is None,
            "" if bad is None else "c[{1}][{0}][{2}] != -c[{0}][{1}][{2}]".format(*bad),
        )
    )

    bad = None
    for a in range(1, L.n + 1):
        for b in range(1, L.n + 1):
            for k in range(1, L.n + 1):
                if L.bracket_coeff(a, b, k) != -L.bracket_coeff(a, k, b):
                    bad = (a, b, k)
                    break
            if bad:
                break
        if bad:
            break
    checks.append(
        CheckResult(
            "full antisymmetry",
            bad is None,
            ""
            if bad is None
            else "c[{0}][{2}][{1}] != -c[{0}][{1}][{2}] "
            "(structure constants are not ad-invariant)".format(*bad),
        )
    )

    jac = None
    for a in range(1, L.n + 1):
        for b in range(1, L.n + 1):
            for e in range(1, L.n + 1):
                for k in range(1, L.n + 1):
                    s = sum(
                        (
                            L.bracket_coeff(a, b, m) * L.bracket_coeff(m, e, k)
                            + L.bracket_coeff(b, e, m) * L.bracket_coeff(m, a, k)
                            + L.bracket_coeff(e, a, m) * L.bracket_coeff(m, b, k)
                        )
                        for m in range(1, L.n + 1)
                    )
                    if s:
                        jac = (a, b, e, k, s)
                        break
                if jac:
                    break
            if jac:
                break
        if jac:
            break
    checks.append(
        CheckResult(
            "jacobi identity",
            jac is None,
            ""
            if jac is None
            else "cyclic sum is {4} at (a,b,e,k)=({0},{1},{2},{3})".format(*jac),
        )
    )

    bad_idx = None
    for I in all_multi_indices(L.n):
        if not ce_delta(L, ce_delta(L, ChiElement.basis(I))).is_zero:
            bad_idx = I
            break
    checks.append(
        CheckResult(
            "delta squared",
            bad_idx is None,
            "" if bad_idx is None else f"delta^2(chi{list(bad_idx)}) != 0",
        )
    )

    return ValidationReport("lie data", tuple(checks))
