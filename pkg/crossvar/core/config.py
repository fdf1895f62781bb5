from dataclasses import dataclass, asdict


@dataclass
class OracleConfig:
    """Cost guards for the brute-force oracles and the sampler."""

    max_census_vertices: int = 12
    max_edge_subsets: int = 6_000_000
    max_pair_products: int = 24_000_000
    max_exhaustive_vertices: int = 9
    monte_carlo_block: int = 10_000

    def __post_init__(self) -> None:
        for name, value in asdict(self).items():
            if value < 1:
                raise ValueError(f"{name} should be positive, got {value}")

    def to_dict(self) -> dict:
        return asdict(self)


DEFAULT_CONFIG = OracleConfig()
