"""Hall algebras of finite modules with alternating and Hermitian pairings, their
Hall-Littlewood realizations, and the associated Cohen-Lenstra type measures."""

from . import basering, exactalg, hallconst, identities, measures, modlat, partitions, symfunc

__all__ = ["basering", "exactalg", "hallconst", "identities", "measures", "modlat",
           "partitions", "symfunc"]
__version__ = "0.1.0"
