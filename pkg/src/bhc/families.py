"""Named constellation families and the compact text grammar for them.

A FamilySpec ties a family kind (projective, unitary, Sophie Germain,
half-power, symplectic, custom) to its polynomials and to whatever
closed-form root-count knowledge exists for it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .polynomials import (
    IntPolynomial,
    X,
    format_poly,
    half_power_poly,
    parse_poly,
    projective_poly,
    sophie_germain_polys,
    unitary_poly,
)

PROJECTIVE = "projective"
UNITARY = "unitary"
SOPHIE_GERMAIN = "sophie_germain"
HALF_POWER = "half_power"
SYMPLECTIC = "symplectic"
CUSTOM = "custom"


@dataclass(frozen=True)
class FamilySpec:
    """Tagged descriptor of a constellation family.

    Use the classmethod constructors; they validate the parameter ranges.
    """

    kind: str
    e: int = 0
    n: int = 0
    j: int = 0
    k: int = 0
    polys: tuple[IntPolynomial, ...] = field(default=())

    @classmethod
    def projective(cls, e: int, n: int) -> "FamilySpec":
        if e < 1 or n < 2:
            raise ValueError(f"projective family needs e >= 1, n >= 2, got ({e},{n})")
        return cls(PROJECTIVE, e=e, n=n)

    @classmethod
    def unitary(cls, e: int, n: int) -> "FamilySpec":
        if e < 1 or n < 3 or n % 2 == 0:
            raise ValueError(f"unitary family needs e >= 1 and odd n >= 3, got ({e},{n})")
        return cls(UNITARY, e=e, n=n)

    @classmethod
    def sophie_germain(cls) -> "FamilySpec":
        return cls(SOPHIE_GERMAIN)

    @classmethod
    def half_power(cls, k: int) -> "FamilySpec":
        if k < 0:
            raise ValueError(f"half-power family needs k >= 0, got {k}")
        return cls(HALF_POWER, k=k)

    @classmethod
    def symplectic(cls, j: int, k: int) -> "FamilySpec":
        if j < 1:
            raise ValueError(f"symplectic family needs j >= 1, got {j}")
        if k < 0:
            raise ValueError(f"symplectic family needs k >= 0, got {k}")
        return cls(SYMPLECTIC, j=j, k=k)

    @classmethod
    def custom(cls, polys) -> "FamilySpec":
        polys = tuple(polys)
        if not polys:
            raise ValueError("custom family needs at least one polynomial")
        if any(p.is_zero for p in polys):
            raise ValueError("custom family polynomials must be nonzero")
        if len(set(polys)) != len(polys):
            raise ValueError("custom family polynomials must be pairwise distinct")
        return cls(CUSTOM, polys=polys)

    def resolve_polynomials(self) -> tuple[IntPolynomial, ...]:
        """The polynomial tuple (f_1, ..., f_k) this family constrains to be prime."""
        if self.kind == PROJECTIVE:
            return (X, projective_poly(self.e, self.n))
        if self.kind == UNITARY:
            return (X, unitary_poly(self.e, self.n))
        if self.kind == SOPHIE_GERMAIN:
            return sophie_germain_polys()
        if self.kind == HALF_POWER:
            return half_power_poly(self.k)
        if self.kind == SYMPLECTIC:
            return half_power_poly(self.j + self.k)
        if self.kind == CUSTOM:
            return self.polys
        raise ValueError(f"unknown family kind {self.kind!r}")

    @property
    def half_power_exponent(self) -> int | None:
        """The exponent k with f_2 = ((2t+1)^(2^k)+1)/2, for the two kinds that have one."""
        if self.kind == HALF_POWER:
            return self.k
        if self.kind == SYMPLECTIC:
            return self.j + self.k
        return None

    def __str__(self) -> str:
        return format_family(self)


def format_family(spec: FamilySpec) -> str:
    """Inverse of parse_family."""
    if spec.kind == PROJECTIVE:
        return f"psl:{spec.e},{spec.n}"
    if spec.kind == UNITARY:
        return f"psu:{spec.e},{spec.n}"
    if spec.kind == SOPHIE_GERMAIN:
        return "sg"
    if spec.kind == HALF_POWER:
        return f"hp:{spec.k}"
    if spec.kind == SYMPLECTIC:
        return f"sp:{spec.j},{spec.k}"
    if spec.kind == CUSTOM:
        return "custom:" + ";".join(format_poly(p).replace(" ", "") for p in spec.polys)
    raise ValueError(f"unknown family kind {spec.kind!r}")


def parse_family(text: str) -> FamilySpec:
    """Parse the CLI grammar: ``psl:e,n`` | ``psu:e,n`` | ``sg`` | ``hp:k`` |
    ``sp:j,k`` | ``custom:<poly>;<poly>`` with ``<poly>`` as ``c0+c1*t+...``."""
    s = text.strip()
    if s == "sg":
        return FamilySpec.sophie_germain()
    tag, sep, rest = s.partition(":")
    if not sep:
        raise ValueError(f"bad family spec {text!r}")
    if tag == "psl":
        e, n = _parse_int_pair(rest, text)
        return FamilySpec.projective(e, n)
    if tag == "psu":
        e, n = _parse_int_pair(rest, text)
        return FamilySpec.unitary(e, n)
    if tag == "hp":
        return FamilySpec.half_power(_parse_int(rest, text))
    if tag == "sp":
        j, k = _parse_int_pair(rest, text)
        return FamilySpec.symplectic(j, k)
    if tag == "custom":
        parts = [p for p in rest.split(";") if p]
        if not parts:
            raise ValueError(f"custom family needs polynomials: {text!r}")
        return FamilySpec.custom(parse_poly(p) for p in parts)
    raise ValueError(f"unknown family tag {tag!r} in {text!r}")


def _parse_int(s: str, full: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise ValueError(f"bad integer {s!r} in family spec {full!r}") from None


def _parse_int_pair(s: str, full: str) -> tuple[int, int]:
    parts = s.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected two comma-separated integers in {full!r}")
    return _parse_int(parts[0], full), _parse_int(parts[1], full)
