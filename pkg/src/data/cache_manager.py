"""Cache manager using diskcache for persistent caching of oracle results."""

from typing import Any, Optional

from diskcache import Cache

from ..config import settings
from ..lattice.colex import PerColor


# Part of every oracle key; bump when OracleResult or the oracle numerics change
ORACLE_SCHEMA_VERSION = 2


def oracle_identifier(lattice: str, region: str, lambda_x: PerColor, temperature: float,
                      version: int = ORACLE_SCHEMA_VERSION) -> str:
    """Stable key text for one oracle evaluation point."""
    lam = ",".join(repr(float(v)) for v in lambda_x)
    return f"v{version}|{lattice}|{region}|{lam}|{float(temperature)!r}"


class CacheManager:
    """Manages disk-based caching of brute-force oracle results."""

    def __init__(self, directory: Optional[str] = None):
        if directory is None:
            settings.ensure_dirs()
            directory = str(settings.cache_dir)
        self._cache = Cache(
            directory,
            size_limit=settings.cache.max_size_mb * 1024 * 1024
        )
        self._ttl_seconds = settings.cache.ttl_hours * 3600

    def _make_key(self, prefix: str, identifier: str) -> str:
        """Create a cache key from prefix and identifier."""
        return f"{prefix}:{identifier}"

    def get(self, prefix: str, identifier: str) -> Optional[Any]:
        """Retrieve item from cache."""
        key = self._make_key(prefix, identifier)
        return self._cache.get(key)

    def set(self, prefix: str, identifier: str, value: Any) -> None:
        """Store item in cache with TTL."""
        key = self._make_key(prefix, identifier)
        self._cache.set(key, value, expire=self._ttl_seconds)

    def get_oracle(self, identifier: str) -> Optional[dict]:
        """Get a cached oracle result (as a dict)."""
        return self.get("oracle", identifier)

    def set_oracle(self, identifier: str, result: dict) -> None:
        """Cache an oracle result."""
        self.set("oracle", identifier, result)

    def __len__(self) -> int:
        return len(self._cache)

    def clear(self) -> None:
        """Clear all cached data."""
        self._cache.clear()

    def close(self) -> None:
        """Close the cache connection."""
        self._cache.close()
