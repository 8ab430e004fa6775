"""Exhaustive census of elliptic curves over F_q up to F_q-isomorphism.

The measure gives a class E the weight 1/(q #Aut(E)), so that the weights of
all classes sum to 1.
"""
import json
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from . import kernels
from .arith import prime_power
from .chebyshev import U
from .errors import CeilingExceeded, NotPrime, SingularModel
from .ffield import (
    CENSUS_CEILING,
    FieldElement,
    FieldSpec,
    from_index,
    index_of,
    make_field,
    tables_for,
)

# q^5 models must fit in memory for the long-model orbit closure
LONG_MODEL_CEILING = 32


@dataclass(frozen=True)
class CurveModel:
    field: FieldSpec
    a1: FieldElement
    a2: FieldElement
    a3: FieldElement
    a4: FieldElement
    a6: FieldElement

    @classmethod
    def from_indices(cls, spec, idx):
        return cls(spec, *(from_index(spec, i) for i in idx))

    @classmethod
    def from_coeffs(cls, spec, coeffs):
        """Build from five coefficient lists (or ints for prime fields)."""
        elems = []
        for c in coeffs:
            c = [c] if isinstance(c, int) else list(c)
            c = [x % spec.p for x in c] + [0] * (spec.v - len(c))
            elems.append(FieldElement(tuple(c)))
        return cls(spec, *elems)

    def indices(self):
        return tuple(index_of(self.field, a) for a in (self.a1, self.a2, self.a3, self.a4, self.a6))

    def coeff_vectors(self):
        return [list(a.coeffs) for a in (self.a1, self.a2, self.a3, self.a4, self.a6)]


@dataclass(frozen=True)
class IsoClass:
    rep: CurveModel
    aut_count: int
    npoints: int
    t: int
    n1: int
    n2: int

    @property
    def is_supersingular(self):
        return self.t % self.rep.field.p == 0

    def sort_key(self):
        return (self.t, self.n1, self.n2, self.rep.indices())


@dataclass(frozen=True)
class CensusTable:
    q: int
    field: FieldSpec
    classes: tuple

    @property
    def p(self):
        return self.field.p

    def to_json(self):
        return {
            "q": self.q,
            "field": self.field.to_json(),
            "classes": [
                {
                    "rep": c.rep.coeff_vectors(),
                    "aut": c.aut_count,
                    "npoints": c.npoints,
                    "t": c.t,
                    "n1": c.n1,
                    "n2": c.n2,
                }
                for c in self.classes
            ],
        }

    @classmethod
    def from_json(cls, obj):
        spec = make_field(obj["field"]["p"], obj["field"]["v"])
        if list(spec.modulus) != obj["field"]["modulus"]:
            raise ValueError("cached field modulus is not canonical")
        classes = tuple(
            IsoClass(CurveModel.from_coeffs(spec, c["rep"]), c["aut"], c["npoints"], c["t"], c["n1"], c["n2"])
            for c in obj["classes"]
        )
        return cls(obj["q"], spec, classes)


def _census_field(q, ceiling):
    pv = prime_power(q)
    if pv is None:
        raise NotPrime(f"{q} is not a prime power")
    p, v = pv
    if q > ceiling:
        raise CeilingExceeded(f"q = {q} exceeds census ceiling {ceiling}")
    if p <= 3 and q > LONG_MODEL_CEILING:
        raise CeilingExceeded(f"q = {q}: long-model enumeration is limited to q <= {LONG_MODEL_CEILING}")
    return make_field(p, v)


def enumerate_census(q, ceiling=CENSUS_CEILING):
    spec = _census_field(q, ceiling)
    T = tables_for(spec)
    orbs = kernels.orbits(T)
    models = [o[:5] for o in orbs]
    inv = kernels.invariants(T, models)
    classes = []
    for o, (npts, n1) in zip(orbs, inv):
        classes.append(
            IsoClass(CurveModel.from_indices(spec, o[:5]), o[5], npts, q + 1 - npts, n1, npts // n1)
        )
    classes.sort(key=IsoClass.sort_key)
    return CensusTable(q, spec, tuple(classes))


def cache_dir():
    return Path(os.environ.get("ELLSTAT_CACHE", ".ellstat-cache"))


def cache_path(q, directory=None):
    spec = make_field(*prime_power(q))
    mod = "".join(map(str, spec.modulus))
    return Path(directory or cache_dir()) / f"census_p{spec.p}_v{spec.v}_m{mod}.json"


def dump_census(table):
    return json.dumps(table.to_json(), separators=(",", ":"), sort_keys=True)


def save_census(table, path=None):
    path = Path(path or cache_path(table.q))
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_census(table))
    return path


def load_census(path):
    return CensusTable.from_json(json.loads(Path(path).read_text()))


@lru_cache(maxsize=None)
def census(q, use_disk=False):
    """Memoized census; with ``use_disk`` the JSON cache is read and written."""
    if use_disk:
        path = cache_path(q)
        if path.exists():
            return load_census(path)
        table = enumerate_census(q)
        save_census(table, path)
        return table
    return enumerate_census(q)


# -- single-model operations -------------------------------------------------

def _checked(model):
    T = tables_for(model.field)
    idx = model.indices()
    if kernels.discriminant(T, *idx) == 0:
        raise SingularModel("discriminant vanishes")
    return T, idx


def point_count(model):
    T, idx = _checked(model)
    return kernels.count_points(T, idx)


def group_structure(model, npoints=None):
    T, idx = _checked(model)
    if npoints is None:
        npoints = kernels.count_points(T, idx)
    n1 = kernels.group_exponent(T, idx, npoints)
    return n1, npoints // n1


# -- expectations ------------------------------------------------------------

def phi_A(cls, A):
    return 1 if cls.n1 % A.n1 == 0 and cls.n2 % A.n2 == 0 else 0


def expect(table, f):
    """(1/q) * sum of f(E)/#Aut(E) over classes, exact."""
    total = Fraction(0)
    for c in table.classes:
        total += Fraction(f(c)) / c.aut_count
    return total / table.q


def weight(table, cls):
    return Fraction(1, table.q * cls.aut_count)


def extension_expect(table, A, r):
    """E_q(#E(F_{q^r}) Phi_A) from the base-field census."""
    if r < 1:
        raise ValueError("r must be positive")
    q = table.q

    def frob_power_trace(t):
        if r == 1:
            return U(1, t, q)
        return U(r, t, q) - q * U(r - 2, t, q)

    return expect(table, lambda c: (q**r + 1 - frob_power_trace(c.t)) * phi_A(c, A))
