"""Davis chamber of a Coxeter system and rational duality verdicts.

The chamber K is the order complex of the poset of spherical generator
subsets with the empty set adjoined: vertices are spherical subsets,
simplices are chains under strict inclusion, and the empty set is a cone
point.  The mirror of a generator is the full subcomplex on the subsets
containing it.

For every spherical subset T the pair (K, union of mirrors over the
complement of T) has exact rational relative cohomology; the top degree
carrying a nonzero entry over all T is the cohomological dimension, and
the verdict is a duality verdict exactly when every nonzero entry sits in
that single degree.  The scan includes T empty by default (the union of
all mirrors); ``include_empty=False`` reproduces the nontrivial-subsets-only
reading for comparison, which demotes rank-one cases to dimension zero.

Finite systems short-circuit: a compact group has dimension zero and is
trivially a duality group.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .coxeter import CoxeterSystem
from .errors import ValidationError
from .simplicial import SimplicialComplex, relative_cohomology, union_complexes


class WFinite(ValidationError):
    """The Coxeter group is finite; duality data degenerates to degree 0."""


class PosetTooLarge(ValidationError):
    pass


DEFAULT_GENERATOR_CAP = 16


@dataclass(frozen=True)
class SphericalPoset:
    """All spherical generator subsets, the empty set included, sorted."""

    subsets: tuple

    @classmethod
    def from_system(cls, system, cap=DEFAULT_GENERATOR_CAP, size_cap=4096):
        if system.n > cap:
            raise PosetTooLarge(f"{system.n} generators exceed the cap {cap}")
        found = [frozenset()]
        for size in range(1, system.n + 1):
            for subset in combinations(system.generators, size):
                if system.is_spherical(subset):
                    found.append(frozenset(subset))
                    if len(found) > size_cap:
                        raise PosetTooLarge(f"more than {size_cap} spherical subsets")
        return cls(tuple(sorted(found, key=lambda s: (len(s), tuple(sorted(s))))))

    def __contains__(self, subset):
        return frozenset(subset) in self.subsets

    def __len__(self):
        return len(self.subsets)


@dataclass(frozen=True)
class DavisChamber:
    system: CoxeterSystem
    poset: SphericalPoset
    complex: SimplicialComplex
    vertex_of_subset: dict
    mirrors: dict  # generator -> full subcomplex on subsets containing it


def build_chamber(system, cap=DEFAULT_GENERATOR_CAP, allow_finite=False):
    """Order complex of the spherical poset together with all mirrors.

    Raises ``WFinite`` when the full generator set is spherical (the group
    is finite), unless ``allow_finite`` is set for diagnostics.
    """
    if system.is_spherical(tuple(system.generators)) and not allow_finite:
        raise WFinite("the full generator set is spherical")
    poset = SphericalPoset.from_system(system, cap)
    vertex_of_subset = {subset: i for i, subset in enumerate(poset.subsets)}

    # chains of the inclusion order: build upward from every subset
    covers = {
        subset: [other for other in poset.subsets if subset < other]
        for subset in poset.subsets
    }
    chains = []

    def extend(chain, top):
        chains.append(tuple(vertex_of_subset[s] for s in chain))
        for nxt in covers[top]:
            extend(chain + [nxt], nxt)

    for subset in poset.subsets:
        extend([subset], subset)
    chamber = SimplicialComplex(chains, generate_closure=False)

    mirrors = {}
    for s in system.generators:
        containing = {vertex_of_subset[sub] for sub in poset.subsets if s in sub}
        mirror_chains = [
            chain for chain in chains if set(chain) <= containing
        ]
        mirrors[s] = (
            SimplicialComplex(mirror_chains, generate_closure=False)
            if mirror_chains
            else SimplicialComplex.empty()
        )
    return DavisChamber(system, poset, chamber, vertex_of_subset, mirrors)


@dataclass(frozen=True)
class DualityVerdict:
    """Top nonvanishing degree and one-degree concentration over the scan.

    ``table`` maps each scanned subset T (as a sorted generator tuple) to
    the tuple of relative cohomology dimensions of (K, mirrors off T).
    """

    cd: int
    is_duality: bool
    table: tuple  # ((T, dims), ...) sorted

    def entries(self):
        for subset, dims in self.table:
            for degree, dim in enumerate(dims):
                if dim:
                    yield subset, degree, dim

    def to_json(self):
        return {
            "cd": self.cd,
            "duality": self.is_duality,
            "table": [
                {"T": list(subset), "dims": list(dims)} for subset, dims in self.table
            ],
        }


def _verdict_from_rows(rows):
    degrees_seen = set()
    for _, dims in rows:
        for degree, dim in enumerate(dims):
            if dim:
                degrees_seen.add(degree)
    return DualityVerdict(
        cd=max(degrees_seen, default=0),
        is_duality=len(degrees_seen) <= 1,
        table=tuple(rows),
    )


def _mirror_union_off(chamber, subset):
    mirrors = [chamber.mirrors[s] for s in chamber.system.generators if s not in subset]
    if not mirrors:
        return SimplicialComplex.empty()
    return union_complexes(mirrors)


def _relative_row(chamber, subset):
    away = _mirror_union_off(chamber, subset)
    dims = relative_cohomology(chamber.complex, away)
    return tuple(sorted(subset)), tuple(dims)


def relative_table(chamber, include_empty=True, jobs=1):
    """The duality verdict of a built chamber.

    Scans every spherical subset T (the empty set included by default) and
    tabulates the relative cohomology of (K, union of mirrors off T).
    ``jobs`` parallelizes the independent per-subset computations; results
    are merged in subset order, so output is deterministic either way.
    """
    scanned = [s for s in chamber.poset.subsets if include_empty or s]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_relative_row, [chamber] * len(scanned), scanned))
    else:
        rows = [_relative_row(chamber, subset) for subset in scanned]
    rows.sort(key=lambda row: (len(row[0]), row[0]))
    return _verdict_from_rows(rows)


def finite_type_verdict(system):
    """Degenerate verdict for finite groups: dimension 0, duality, the
    single entry carried by the full generator set."""
    full = tuple(system.generators)
    return DualityVerdict(cd=0, is_duality=True, table=((full, (1,)),))


def duality_verdict(system, include_empty=True, jobs=1, cap=DEFAULT_GENERATOR_CAP):
    """End-to-end verdict for a Coxeter system, finite types short-circuited."""
    if system.is_spherical(tuple(system.generators)):
        return finite_type_verdict(system)
    chamber = build_chamber(system, cap)
    return relative_table(chamber, include_empty=include_empty, jobs=jobs)


def kac_moody_verdict(system, include_empty=True, jobs=1, cap=DEFAULT_GENERATOR_CAP):
    """Duality verdict transferred to the associated building-automorphism
    group: dimension and duality verdict coincide with the Coxeter verdict.
    Requires an infinite system."""
    if system.is_spherical(tuple(system.generators)):
        raise WFinite("transfer needs an infinite Coxeter group")
    chamber = build_chamber(system, cap)
    return relative_table(chamber, include_empty=include_empty, jobs=jobs)
