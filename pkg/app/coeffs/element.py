"""
Coefficients over F2[U_1..U_N] and free modules with a distinguished basis.

Everything downstream (complexes, the strand algebra, bordered modules) is a
`FreeElement`: a set of (monomial, tag) pairs, presence meaning coefficient 1.
"""

import logging
from dataclasses import dataclass
from typing import Callable, FrozenSet, Hashable, Iterable, Iterator, Optional, Tuple


logger = logging.getLogger(__name__)


class DimensionError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Monomial:
    exponents: Tuple[int, ...]

    def __post_init__(self):
        if any(e < 0 for e in self.exponents):
            logger.error("Negative exponent in %s", self.exponents)
            raise ValueError(f"Monomial exponents must be non-negative: {self.exponents}")

    @classmethod
    def one(cls, n: int) -> "Monomial":
        return cls((0,) * n)

    @classmethod
    def var(cls, n: int, index: int) -> "Monomial":
        """U_index, 1-based as the markers are."""
        if not 1 <= index <= n:
            logger.error("U_%d asked for N=%d", index, n)
            raise DimensionError(f"U_{index} does not exist for N={n}")
        return cls(tuple(1 if i == index - 1 else 0 for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def grading(self) -> Tuple[int, int]:
        """(A, mu) of the monomial: every U_l has (-1, -2)."""
        return -self.degree, -2 * self.degree

    def __mul__(self, other: "Monomial") -> "Monomial":
        return monomial_mul(self, other)

    def __str__(self) -> str:
        parts = []
        for index, e in enumerate(self.exponents, start=1):
            if e == 1:
                parts.append(f"U{index}")
            elif e > 1:
                parts.append(f"U{index}^{e}")
        return "".join(parts) or "1"


def monomial_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if m1.n != m2.n:
        logger.error("Multiplying monomials of N=%d and N=%d", m1.n, m2.n)
        raise DimensionError(f"Monomials live in different rings: N={m1.n} vs N={m2.n}")
    return Monomial(tuple(a + b for a, b in zip(m1.exponents, m2.exponents)))


Term = Tuple[Monomial, Hashable]


@dataclass(frozen=True)
class FreeElement:
    """
    An F2-linear combination of (Monomial, tag) pairs.

    `n` is the number of U variables; the zero element is the empty set.
    """

    n: int
    terms: FrozenSet[Term] = frozenset()

    @classmethod
    def zero(cls, n: int) -> "FreeElement":
        return cls(n, frozenset())

    @classmethod
    def basis(cls, n: int, tag: Hashable, monomial: Optional[Monomial] = None) -> "FreeElement":
        return cls(n, frozenset([(monomial or Monomial.one(n), tag)]))

    @classmethod
    def sum(cls, n: int, terms: Iterable[Term]) -> "FreeElement":
        """Build an element from terms, cancelling repeated ones in pairs."""
        acc = set()
        for term in terms:
            if term[0].n != n:
                logger.error("Term %s summed over N=%d", term, n)
                raise DimensionError(f"Term {term} does not live over N={n}")
            if term in acc:
                acc.remove(term)
            else:
                acc.add(term)
        return cls(n, frozenset(acc))

    def __add__(self, other: "FreeElement") -> "FreeElement":
        return element_add(self, other)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Term]:
        return iter(self.terms)

    def __contains__(self, term: Term) -> bool:
        return term in self.terms

    def tags(self) -> FrozenSet[Hashable]:
        return frozenset(tag for _, tag in self.terms)

    def scale(
        self,
        monomial: Monomial,
        relabel: Optional[Callable[[Hashable], Hashable]] = None,
    ) -> "FreeElement":
        return element_scale(monomial, relabel, self)

    def sorted_terms(self, key: Callable[[Hashable], object] = str) -> list:
        return sorted(self.terms, key=lambda t: (key(t[1]), t[0].exponents))

    def format(self, key: Callable[[Hashable], object] = str) -> str:
        if not self.terms:
            return "0"
        out = []
        for m, tag in self.sorted_terms(key):
            coeff = "" if m.degree == 0 else str(m) + "·"
            out.append(f"{coeff}{tag}")
        return " + ".join(out)

    def __str__(self) -> str:
        return self.format()


def element_add(e1: FreeElement, e2: FreeElement) -> FreeElement:
    if e1.n != e2.n:
        logger.error("Adding elements over N=%d and N=%d", e1.n, e2.n)
        raise DimensionError(f"Elements live over different rings: N={e1.n} vs N={e2.n}")
    return FreeElement(e1.n, e1.terms ^ e2.terms)


def element_scale(
    monomial: Monomial,
    relabel: Optional[Callable[[Hashable], Hashable]],
    element: FreeElement,
) -> FreeElement:
    """
    Multiply every term by `monomial` and push its tag through `relabel`.

    Terms that collide after relabeling cancel in pairs.
    """
    if monomial.n != element.n:
        logger.error("Scaling an N=%d element by an N=%d monomial", element.n, monomial.n)
        raise DimensionError(f"Scaling N={element.n} element by N={monomial.n} monomial")
    relabel = relabel or (lambda tag: tag)
    return FreeElement.sum(
        element.n, ((monomial_mul(monomial, m), relabel(tag)) for m, tag in element.terms)
    )
