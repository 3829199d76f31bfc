"""Spectral sequence of a filtered cochain complex, every page, exactly.

For a decreasing filtration F^0 >= F^1 >= ... compatible with the degree +1
differential d, the pages are computed from the general-position spaces

    Z_r^{p,q} = { x in F^p C^{p+q} : d x in F^{p+r} C^{p+q+1} }
    E_r^{p,q} = Z_r^{p,q} / ( d Z_{r-1}^{p-r+1, q+r-2} + Z_{r-1}^{p+1, q-1} )

with F^p = C for p <= 0, so the formulas hold uniformly for all r >= 0.  The
differential d_r : E_r^{p,q} -> E_r^{p+r, q-r+1} is induced by d on
representatives; every quotient is realized by explicit coset representatives
plus a coordinate projection, so induced maps are honest matrices.

The filtration of the invariant-forms model is by chi-count complement:
F^p C^m is spanned by monomials of horizontal degree >= p.  Page r = 0 and
r = 1 are bookkeeping pages of the bigraded model; the geometric content
starts at r = 2, which is where stabilization is searched for.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import (
    EquivariantModel,
    max_total_degree,
    monomial_basis,
    total_cohomology,
    total_matrix,
)
from .qlinalg import Matrix, Subspace, image, preimage, quotient_map, sum_and_intersect


@dataclass(frozen=True)
class FilteredComplex:
    """Finite cochain complex over Q with a decreasing, exhaustive filtration.

    dims[m] is the ambient dimension of C^m for 0 <= m <= max_degree;
    d[m] maps C^m to C^(m+1) (the top one has zero rows);
    filtration[m][p] is F^p C^m for 0 <= p <= m+1 (F^(m+1) = 0).
    labels[m] optionally names the coordinates of C^m.
    """

    dims: tuple[int, ...]
    d: tuple[Matrix, ...]
    filtration: tuple[tuple[Subspace, ...], ...]
    labels: tuple[tuple, ...] = field(default=())

    @property
    def max_degree(self) -> int:
        return len(self.dims) - 1

    def ambient(self, m: int) -> int:
        if 0 <= m <= self.max_degree:
            return self.dims[m]
        return 0

    def dmat(self, m: int) -> Matrix:
        if 0 <= m <= self.max_degree:
            return self.d[m]
        return Matrix.zero(self.ambient(m + 1), self.ambient(m))

    def filt(self, p: int, m: int) -> Subspace:
        """F^p C^m with the conventions F^p = C for p <= 0 and F^p = 0 deep enough."""
        if m < 0 or m > self.max_degree:
            return Subspace.zero(self.ambient(m))
        if p <= 0:
            return Subspace.full(self.dims[m])
        levels = self.filtration[m]
        if p >= len(levels):
            return Subspace.zero(self.dims[m])
        return levels[p]

    def check_structure(self) -> None:
        """Assert shapes, decreasing filtration, and d-compatibility (test hook)."""
        for m in range(self.max_degree + 1):
            if self.d[m].cols != self.dims[m]:
                raise AssertionError(f"d[{m}] column count mismatch")
            target = self.dims[m + 1] if m + 1 <= self.max_degree else 0
            if self.d[m].rows != target:
                raise AssertionError(f"d[{m}] row count mismatch")
            levels = self.filtration[m]
            if levels[0].dim != self.dims[m] or levels[-1].dim != 0:
                raise AssertionError(f"filtration of C^{m} must run from full to zero")
            for p in range(len(levels) - 1):
                if not levels[p].contains(levels[p + 1]):
                    raise AssertionError(f"filtration not decreasing at F^{p + 1} C^{m}")
            for p in range(len(levels)):
                img = image(self.dmat(m), levels[p])
                if not self.filt(p, m + 1).contains(img):
                    raise AssertionError(f"d does not preserve F^{p} at degree {m}")


def cartan_filtration(model: EquivariantModel) -> FilteredComplex:
    """Filtration by horizontal degree of the invariant-forms model.

    Monomial bases are ordered by descending horizontal degree, so each F^p
    is a coordinate-prefix subspace.  The model must pass validate_model.
    """
    top = max_total_degree(model)
    dims = []
    dmats = []
    levels_all = []
    labels = []
    for m in range(top + 1):
        basis = monomial_basis(model, m)
        dims.append(len(basis))
        labels.append(basis)
        dmats.append(total_matrix(model, m))
        levels = []
        for p in range(m + 2):
            prefix = sum(
                1 for g, _ in basis if model.basic.degree_of(g) >= p
            )
            rows = [
                [1 if j == i else 0 for j in range(len(basis))] for i in range(prefix)
            ]
            levels.append(Subspace.from_rows(len(basis), rows))
        levels_all.append(tuple(levels))
    return FilteredComplex(tuple(dims), tuple(dmats), tuple(levels_all), tuple(labels))


@dataclass(frozen=True)
class PageCell:
    """One spot E_r^{p,q}: ambient data plus the quotient presentation."""

    p: int
    q: int
    dim: int
    reps: Matrix      # dim rows; coset representatives in C^(p+q) coordinates
    proj: Matrix      # quotient coordinates of any vector of z_space
    z_space: Subspace
    divisor: Subspace


@dataclass(frozen=True)
class SpectralPage:
    r: int
    cells: dict[tuple[int, int], PageCell]
    dr: dict[tuple[int, int], Matrix]

    def dims(self) -> dict[tuple[int, int], int]:
        return {pq: c.dim for pq, c in self.cells.items() if c.dim}

    def dr_ranks(self) -> dict[tuple[int, int], int]:
        return {pq: m.rank() for pq, m in self.dr.items()}

    def dr_is_zero(self) -> bool:
        return all(m.is_zero() for m in self.dr.values())


def _z_space(fc: FilteredComplex, r: int, p: int, m: int, cache: dict) -> Subspace:
    """Z_r at filtration p, total degree m: F^p meeting d^{-1}(F^{p+r})."""
    key = (r, p, m)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if fc.ambient(m) == 0:
        out = Subspace.zero(0)
    else:
        fp = fc.filt(p, m)
        pre = preimage(fc.dmat(m), fc.filt(p + r, m + 1))
        _, out = sum_and_intersect(fp, pre)
    cache[key] = out
    return out


def page(fc: FilteredComplex, r: int, _cache: dict | None = None) -> SpectralPage:
    """The full r-th page with its differential, cell by cell."""
    if r < 0:
        raise ValueError("page index must be >= 0")
    cache: dict = {} if _cache is None else _cache
    cells: dict[tuple[int, int], PageCell] = {}
    top = fc.max_degree
    for m in range(top + 1):
        for p in range(m + 1):
            q = m - p
            z = _z_space(fc, r, p, m, cache)
            born = image(fc.dmat(m - 1), _z_space(fc, r - 1, p - r + 1, m - 1, cache))
            other = _z_space(fc, r - 1, p + 1, m, cache)
            divisor, _ = sum_and_intersect(born, other)
            if not z.contains(divisor):
                raise AssertionError(f"divisor escapes Z_{r} at (p,q)=({p},{q})")
            reps, proj = quotient_map(z, divisor)
            cells[(p, q)] = PageCell(p, q, reps.rows, reps, proj, z, divisor)
    dr: dict[tuple[int, int], Matrix] = {}
    for (p, q), cell in cells.items():
        if cell.dim == 0:
            continue
        tgt = cells.get((p + r, q - r + 1))
        if tgt is None or tgt.dim == 0:
            dr[(p, q)] = Matrix.zero(0 if tgt is None else tgt.dim, cell.dim)
            continue
        cols = []
        dm = fc.dmat(p + q)
        for rep in cell.reps.data:
            y = dm.apply(rep)
            if not tgt.z_space.contains_vector(y):
                raise AssertionError(f"d of a representative escapes Z at ({p},{q})")
            cols.append(tgt.proj.apply(y))
        data = [[cols[j][i] for j in range(len(cols))] for i in range(tgt.dim)]
        dr[(p, q)] = Matrix.of(data, cols=cell.dim)
    return SpectralPage(r, cells, dr)


def limit_page(fc: FilteredComplex) -> tuple[SpectralPage, int]:
    """First stable page: smallest r >= 2 with d_r = 0 and dims(E_r) = dims(E_{r+1}).

    For a finite filtered complex this is reached no later than max_degree + 2.
    """
    cache: dict = {}
    r = 2
    current = page(fc, r, cache)
    bound = fc.max_degree + 2
    while True:
        nxt = page(fc, r + 1, cache)
        if current.dr_is_zero() and current.dims() == nxt.dims():
            return current, r
        if r >= bound:
            raise AssertionError("spectral sequence failed to stabilize in bound")
        current = nxt
        r += 1


def homology_dims(pg: SpectralPage) -> dict[tuple[int, int], int]:
    """Dims of ker(d_r)/im(d_r) per cell: the next page computed the slow way."""
    out: dict[tuple[int, int], int] = {}
    for (p, q), cell in pg.cells.items():
        if cell.dim == 0:
            continue
        out_rank = pg.dr[(p, q)].rank()
        inc = pg.dr.get((p - pg.r, q + pg.r - 1))
        in_rank = inc.rank() if inc is not None else 0
        h = cell.dim - out_rank - in_rank
        if h:
            out[(p, q)] = h
    return out


@dataclass(frozen=True)
class AbutmentRow:
    degree: int
    stable_total: int
    cohomology_dim: int

    @property
    def ok(self) -> bool:
        return self.stable_total == self.cohomology_dim


@dataclass(frozen=True)
class AbutmentReport:
    rows: tuple[AbutmentRow, ...]
    stabilization: int

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.rows)


def abutment_check(model: EquivariantModel) -> AbutmentReport:
    """Compare per-degree sums over the stable page with total cohomology dims."""
    fc = cartan_filtration(model)
    stable, r_stab = limit_page(fc)
    hdims = total_cohomology(model)
    sums = [0] * len(hdims)
    for (p, q), d in stable.dims().items():
        sums[p + q] += d
    rows = tuple(
        AbutmentRow(k, sums[k], hdims[k]) for k in range(len(hdims))
    )
    return AbutmentReport(rows, r_stab)
