"""Concrete countable groups with canonical enumerations.

Supported groups: the integers Z, the lattices Z^2 and Z^3, and the
discrete Heisenberg group H3 (integer triples (x, y, z) multiplying as
upper-triangular matrices, (x,y,z)*(x',y',z') = (x+x', y+y', z+z'+x*y')).
Heisenberg is the designated non-abelian case: several identities in this
package are order-of-multiplication sensitive and only a non-abelian group
exposes bugs in them.

Each group carries a canonical enumeration g_1, g_2, g_3, ... of all its
elements (a bijection with {1, 2, 3, ...}, independent of any order of
type Z considered elsewhere):

* Z:  0, 1, -1, 2, -2, ...
* Z2: square spiral from (0, 0), first step towards (1, 0).
* Z3, H3: layered by Chebyshev norm max(|x|,|y|,|z|), lexicographic
  within each shell.

The enumeration index fixes the totally bounded metric

    rho(a, b) = 0 if a = b else 1 / 2^min(index(a), index(b)),

with indices starting at 1, so sup rho = 1/2.  All numeric outputs
downstream (order metrics, asymptotic certificates) depend on these
choices; changing an enumeration changes the numbers, which is why the
enumerations above are frozen.

Elements are plain Python values: an ``int`` for Z, an int 2-tuple for
Z2, an int 3-tuple for Z3 and H3.  Text encoding is the coordinates
joined by commas ("3", "1,-2", "1,0,2").
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import isqrt

from .prf import prf_below

Element = int | tuple[int, ...]


class Group:
    """A concrete countable group: operations plus a canonical enumeration.

    Subclasses fix the element representation, the group law, the
    enumeration, and the Folner boxes.  All operations are pure and all
    values immutable, so instances are safe for unrestricted concurrent
    use.
    """

    name: str
    dim: int  # coordinate arity of the element representation
    enumeration_name: str  # frozen canonical enumeration, named in reports

    @property
    def identity(self) -> Element:
        raise NotImplementedError

    def op(self, a: Element, b: Element) -> Element:
        raise NotImplementedError

    def inv(self, a: Element) -> Element:
        raise NotImplementedError

    def enumerate(self, n: int) -> Element:
        """n-th element of the canonical enumeration, n >= 1."""
        raise NotImplementedError

    def index_of(self, g: Element) -> int:
        """Position (>= 1) of g in the canonical enumeration."""
        raise NotImplementedError

    def folner_box(self, radius: int) -> list[Element]:
        """Box-shaped Folner set; monotone in radius, contains identity."""
        raise NotImplementedError

    def coordinate_box(self, radius: int) -> list[Element]:
        """All elements with every coordinate in [-radius, radius].

        The standard observation box for comparing configurations; for
        the abelian groups it coincides with folner_box.
        """
        if radius < 0:
            raise ValueError("radius must be >= 0")
        span = range(-radius, radius + 1)
        return [self.from_coords(c) for c in product(span, repeat=self.dim)]

    def check(self, g: Element) -> Element:
        """Validate that g is a well-formed element of this group."""
        raise NotImplementedError

    def coords(self, g: Element) -> tuple[int, ...]:
        # hot path: assumes a well-formed element (boundaries validate)
        return (g,) if self.dim == 1 else g  # type: ignore[return-value]

    def from_coords(self, c: tuple[int, ...]) -> Element:
        return c[0] if self.dim == 1 else tuple(c)

    def rho(self, a: Element, b: Element) -> Fraction:
        """Totally bounded metric induced by the canonical enumeration."""
        if a == b:
            return Fraction(0)
        return Fraction(1, 2 ** min(self.index_of(a), self.index_of(b)))

    def encode(self, g: Element) -> str:
        return ",".join(str(c) for c in self.coords(g))

    def parse(self, text: str) -> Element:
        parts = text.strip().split(",")
        if len(parts) != self.dim:
            raise ValueError(
                f"{self.name} element needs {self.dim} coordinates, got {text!r}"
            )
        try:
            coord = tuple(int(p) for p in parts)
        except ValueError as exc:
            raise ValueError(f"bad element encoding {text!r}") from exc
        return self.from_coords(coord)

    def __repr__(self) -> str:
        return f"<group {self.name}>"


def _check_tuple(g: Element, dim: int, name: str) -> tuple[int, ...]:
    if (
        not isinstance(g, tuple)
        or len(g) != dim
        or not all(isinstance(c, int) for c in g)
    ):
        raise ValueError(f"not a {name} element: {g!r}")
    return g


class IntegerGroup(Group):
    """(Z, +) with the zigzag enumeration 0, 1, -1, 2, -2, ..."""

    name = "Z"
    dim = 1
    enumeration_name = "zigzag(0,1,-1,2,-2,...)"

    @property
    def identity(self) -> int:
        return 0

    def op(self, a, b):
        if type(a) is not int or type(b) is not int:
            raise ValueError(f"Z operands must be ints: {a!r}, {b!r}")
        return a + b

    def inv(self, a):
        if type(a) is not int:
            raise ValueError(f"not a Z element: {a!r}")
        return -a

    def enumerate(self, n: int) -> int:
        if n < 1:
            raise ValueError("enumeration index must be >= 1")
        if n == 1:
            return 0
        return n // 2 if n % 2 == 0 else -(n // 2)

    def index_of(self, g) -> int:
        g = self.check(g)
        if g == 0:
            return 1
        return 2 * g if g > 0 else 1 - 2 * g

    def folner_box(self, radius: int) -> list[int]:
        if radius < 1:
            raise ValueError("radius must be >= 1")
        return list(range(-radius, radius + 1))

    def check(self, g):
        if not isinstance(g, int) or isinstance(g, bool):
            raise ValueError(f"not a Z element: {g!r}")
        return g


class PlaneGroup(Group):
    """(Z^2, +) enumerated along the square spiral from the origin."""

    name = "Z2"
    dim = 2
    enumeration_name = "square-spiral"

    @property
    def identity(self) -> tuple[int, int]:
        return (0, 0)

    def op(self, a, b):
        if type(a) is not tuple or type(b) is not tuple or len(a) != 2 or len(b) != 2:
            raise ValueError(f"Z2 operands must be int pairs: {a!r}, {b!r}")
        return (a[0] + b[0], a[1] + b[1])

    def inv(self, a):
        if type(a) is not tuple or len(a) != 2:
            raise ValueError(f"not a Z2 element: {a!r}")
        return (-a[0], -a[1])

    def enumerate(self, n: int) -> tuple[int, int]:
        if n < 1:
            raise ValueError("enumeration index must be >= 1")
        if n == 1:
            return (0, 0)
        r = (isqrt(n - 1) + 1) // 2
        p = n - (2 * r - 1) ** 2 - 1  # position along ring r, 0 <= p < 8r
        side, q = divmod(p, 2 * r)
        if side == 0:
            return (r, -r + 1 + q)
        if side == 1:
            return (r - 1 - q, r)
        if side == 2:
            return (-r, r - 1 - q)
        return (-r + 1 + q, -r)

    def index_of(self, g) -> int:
        x, y = self.check(g)
        r = max(abs(x), abs(y))
        if r == 0:
            return 1
        if x == r and y > -r:
            p = y + r - 1
        elif y == r:
            p = 2 * r + (r - 1 - x)
        elif x == -r:
            p = 4 * r + (r - 1 - y)
        else:
            p = 6 * r + (x + r - 1)
        return (2 * r - 1) ** 2 + p + 1

    def folner_box(self, radius: int) -> list[tuple[int, int]]:
        if radius < 1:
            raise ValueError("radius must be >= 1")
        span = range(-radius, radius + 1)
        return [(x, y) for x in span for y in span]

    def check(self, g):
        return _check_tuple(g, 2, "Z2")


class _ShellEnumeration:
    """Shared enumeration of Z^3 triples: Chebyshev shells, lex inside."""

    @staticmethod
    def _slice_size(x: int, r: int) -> int:
        # number of shell-r cells with first coordinate x
        if abs(x) == r:
            return (2 * r + 1) ** 2
        return (2 * r + 1) ** 2 - (2 * r - 1) ** 2

    def enumerate(self, n: int) -> tuple[int, int, int]:
        if n < 1:
            raise ValueError("enumeration index must be >= 1")
        if n == 1:
            return (0, 0, 0)
        r = 1
        while (2 * r + 1) ** 3 < n:
            r += 1
        t = n - (2 * r - 1) ** 3 - 1
        for x in range(-r, r + 1):
            size = self._slice_size(x, r)
            if t < size:
                break
            t -= size
        if abs(x) == r:
            y, z = divmod(t, 2 * r + 1)
            return (x, y - r, z - r)
        for y in range(-r, r + 1):
            size = 2 * r + 1 if abs(y) == r else 2
            if t < size:
                break
            t -= size
        if abs(y) == r:
            return (x, y, t - r)
        return (x, y, -r if t == 0 else r)

    def index_of(self, g: tuple[int, int, int]) -> int:
        x, y, z = g
        r = max(abs(x), abs(y), abs(z))
        if r == 0:
            return 1
        t = sum(self._slice_size(c, r) for c in range(-r, x))
        if abs(x) == r:
            t += (y + r) * (2 * r + 1) + (z + r)
        else:
            for c in range(-r, y):
                t += 2 * r + 1 if abs(c) == r else 2
            if abs(y) == r:
                t += z + r
            else:
                t += 0 if z == -r else 1
        return (2 * r - 1) ** 3 + t + 1


class SpaceGroup(Group):
    """(Z^3, +) enumerated by Chebyshev shells with lexicographic ties."""

    name = "Z3"
    dim = 3
    enumeration_name = "chebyshev-shell-lex"
    _shells = _ShellEnumeration()

    @property
    def identity(self) -> tuple[int, int, int]:
        return (0, 0, 0)

    def op(self, a, b):
        if type(a) is not tuple or type(b) is not tuple or len(a) != 3 or len(b) != 3:
            raise ValueError(f"Z3 operands must be int triples: {a!r}, {b!r}")
        return (a[0] + b[0], a[1] + b[1], a[2] + b[2])

    def inv(self, a):
        if type(a) is not tuple or len(a) != 3:
            raise ValueError(f"not a Z3 element: {a!r}")
        return (-a[0], -a[1], -a[2])

    def enumerate(self, n: int):
        return self._shells.enumerate(n)

    def index_of(self, g) -> int:
        return self._shells.index_of(self.check(g))

    def folner_box(self, radius: int):
        if radius < 1:
            raise ValueError("radius must be >= 1")
        span = range(-radius, radius + 1)
        return [(x, y, z) for x in span for y in span for z in span]

    def check(self, g):
        return _check_tuple(g, 3, "Z3")


class HeisenbergGroup(Group):
    """Discrete Heisenberg group on integer triples (x, y, z).

    (x,y,z) stands for the upper-triangular matrix [[1,x,z],[0,1,y],[0,0,1]],
    so the product is (x+x', y+y', z+z'+x*y') and the inverse of (x,y,z)
    is (-x, -y, x*y-z).  The enumeration ignores the group law and lists
    the coordinate triples by Chebyshev shells (same as Z3); Folner boxes
    grow as (r, r, r^2) to track the commutator stretching.
    """

    name = "H3"
    dim = 3
    enumeration_name = "chebyshev-shell-lex"
    _shells = _ShellEnumeration()

    @property
    def identity(self) -> tuple[int, int, int]:
        return (0, 0, 0)

    def op(self, a, b):
        if type(a) is not tuple or type(b) is not tuple or len(a) != 3 or len(b) != 3:
            raise ValueError(f"H3 operands must be int triples: {a!r}, {b!r}")
        return (a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1])

    def inv(self, a):
        if type(a) is not tuple or len(a) != 3:
            raise ValueError(f"not an H3 element: {a!r}")
        x, y, z = a
        return (-x, -y, x * y - z)

    def enumerate(self, n: int):
        return self._shells.enumerate(n)

    def index_of(self, g) -> int:
        return self._shells.index_of(self.check(g))

    def folner_box(self, radius: int):
        if radius < 1:
            raise ValueError("radius must be >= 1")
        span = range(-radius, radius + 1)
        zspan = range(-radius * radius, radius * radius + 1)
        return [(x, y, z) for x in span for y in span for z in zspan]

    def check(self, g):
        return _check_tuple(g, 3, "H3")


_GROUPS: dict[str, Group] = {
    "Z": IntegerGroup(),
    "Z2": PlaneGroup(),
    "Z3": SpaceGroup(),
    "H3": HeisenbergGroup(),
}


def get_group(name: str) -> Group:
    """Look up a group by its selection string: Z, Z2, Z3 or H3."""
    try:
        return _GROUPS[name]
    except KeyError:
        raise ValueError(
            f"unknown group {name!r}; choose from {sorted(_GROUPS)}"
        ) from None


def seeded_element(group: Group, radius: int, seed: int, *parts) -> Element:
    """Deterministic pseudorandom element of folner_box(radius)."""
    box = group.folner_box(radius)
    return box[prf_below(seed, len(box), "elt", *parts)]
