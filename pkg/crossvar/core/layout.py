import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional

from crossvar.core.errors import LayoutTableError
from crossvar.core.frequency import ProductType, UNCORRELATED_TYPES
from crossvar.core.utils import format_rational, parse_rational

logger = logging.getLogger(__name__)

RLA = "rla"

# probability that both pairs of a product of each type cross in a uniformly
# random linear arrangement
RLA_PROBABILITIES = {
    ProductType.T00: Fraction(1, 9),
    ProductType.T24: Fraction(1, 3),
    ProductType.T13: Fraction(1, 6),
    ProductType.T12: Fraction(2, 15),
    ProductType.T04: Fraction(0),
    ProductType.T03: Fraction(1, 12),
    ProductType.T021: Fraction(1, 10),
    ProductType.T022: Fraction(7, 60),
    ProductType.T01: Fraction(1, 9),
}


@dataclass(frozen=True)
class ExpectationTable:
    """
    A random layout, described by the probability ``delta`` that two
    independent edges cross and by the expectation ``gamma[w]`` of the
    centred product of crossing indicators for each product type.
    """

    name: str
    delta: Fraction
    gamma: Mapping[ProductType, Fraction]

    def __post_init__(self) -> None:
        offenders = _consistency_offenders(self.delta, self.gamma)
        if offenders:
            raise LayoutTableError(offenders)

    def __getitem__(self, omega: ProductType) -> Fraction:
        return self.gamma[omega]

    def __hash__(self) -> int:
        return hash((self.name, self.delta, tuple(self.gamma[w] for w in ProductType)))

    @classmethod
    def from_probabilities(
        cls, name: str, delta: Fraction, probabilities: Mapping[ProductType, Fraction]
    ) -> "ExpectationTable":
        """Build a table from the probabilities that both pairs of a product cross.

        Args:
            name (str): Layout label.
            delta (Fraction): Probability that two independent edges cross.
            probabilities (Mapping[ProductType, Fraction]): Joint crossing probability per type.

        Raises:
            LayoutTableError: if a type is missing or the table is inconsistent.

        Returns:
            ExpectationTable: Table with gamma[w] = p[w] - delta^2
        """
        missing = [f"missing type {w.value}" for w in ProductType if w not in probabilities]
        if missing:
            raise LayoutTableError(missing)
        delta = Fraction(delta)
        gamma = {w: Fraction(probabilities[w]) - delta * delta for w in ProductType}
        return cls(name=name, delta=delta, gamma=gamma)

    def expectation(self, q: int) -> Fraction:
        """Expected number of crossings, q * delta."""
        return q * self.delta

    def is_rla(self) -> bool:
        rla = builtin_rla_table()
        return self.delta == rla.delta and all(
            self.gamma[w] == rla.gamma[w] for w in ProductType
        )

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "delta": format_rational(self.delta),
            "gamma": {w.value: format_rational(self.gamma[w]) for w in ProductType},
        }


def _consistency_offenders(
    delta: Fraction, gamma: Mapping[ProductType, Fraction]
) -> List[str]:
    offenders = [f"missing type {w.value}" for w in ProductType if w not in gamma]
    if offenders:
        return offenders

    if not 0 <= delta <= 1:
        offenders.append(f"delta = {delta} is not a probability")
    if gamma[ProductType.T24] != delta - delta * delta:
        offenders.append(
            f"E_24 = {gamma[ProductType.T24]} differs from delta - delta^2 = {delta - delta * delta}"
        )
    for w in UNCORRELATED_TYPES:
        if gamma[w] != 0:
            offenders.append(f"E_{w.value} = {gamma[w]} should be 0 (p_{w.value} = delta^2)")
    for w in ProductType:
        p = gamma[w] + delta * delta
        if not 0 <= p <= 1:
            offenders.append(f"p_{w.value} = {p} is not a probability")
    return offenders


_RLA_TABLE: Optional[ExpectationTable] = None


def builtin_rla_table() -> ExpectationTable:
    """The uniformly random linear arrangement, delta = 1/3.

    Returns:
        ExpectationTable: Built-in rla table
    """
    global _RLA_TABLE
    if _RLA_TABLE is None:
        _RLA_TABLE = ExpectationTable.from_probabilities(
            RLA, Fraction(1, 3), RLA_PROBABILITIES
        )
    return _RLA_TABLE


def load_layout_table(source: str, name: str = "custom") -> ExpectationTable:
    """Parse a layout table.

    Each non-comment line reads ``key = p/q`` where key is ``delta``,
    ``name``, ``p_<type>`` (joint crossing probability) or ``E_<type>``
    (centred expectation). Every type needs a p or an E value.

    Args:
        source (str): Layout table text.
        name (str, optional): Label used when the text has no ``name`` line. Defaults to "custom".

    Raises:
        LayoutTableError: listing every missing, malformed or inconsistent entry.

    Returns:
        ExpectationTable: Parsed table
    """
    offenders: List[str] = []
    delta: Optional[Fraction] = None
    probabilities: Dict[ProductType, Fraction] = {}
    expectations: Dict[ProductType, Fraction] = {}

    for number, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep:
            offenders.append(f"line {number}: expected 'key = value'")
            continue
        if key == "name":
            name = value
            continue

        try:
            number_value = parse_rational(value)
        except ValueError as e:
            offenders.append(f"line {number}: {e}")
            continue

        if key == "delta":
            delta = number_value
            continue

        prefix, _, code = key.partition("_")
        try:
            omega = ProductType(code)
        except ValueError:
            offenders.append(f"line {number}: unknown key {key!r}")
            continue
        if prefix == "p":
            probabilities[omega] = number_value
        elif prefix == "E":
            expectations[omega] = number_value
        else:
            offenders.append(f"line {number}: unknown key {key!r}")

    if delta is None:
        offenders.append("missing delta")
        raise LayoutTableError(offenders)

    gamma: Dict[ProductType, Fraction] = {}
    for w in ProductType:
        from_p = probabilities[w] - delta * delta if w in probabilities else None
        from_e = expectations.get(w)
        if from_p is None and from_e is None:
            offenders.append(f"missing type {w.value}")
        elif from_p is not None and from_e is not None and from_p != from_e:
            offenders.append(f"p_{w.value} and E_{w.value} disagree")
        else:
            gamma[w] = from_p if from_p is not None else from_e

    if offenders:
        raise LayoutTableError(offenders)

    table = ExpectationTable(name=name, delta=delta, gamma=gamma)
    logger.info(f"Loaded layout table {name!r} with delta = {format_rational(delta)}")
    return table


def read_layout_table(filepath: str) -> ExpectationTable:
    with open(filepath, encoding="utf-8") as file:
        return load_layout_table(file.read())


def resolve_layout(layout: str) -> ExpectationTable:
    """Return the built-in rla table for ``"rla"``, otherwise read the table file."""
    if layout == RLA:
        return builtin_rla_table()
    return read_layout_table(layout)
