import pytest


def trial_division_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def naive_constellation_count(polys, x: int, primality=trial_division_prime) -> int:
    """Double loop over t and the polynomials, no sieve, no pre-filter."""
    return sum(1 for t in range(1, x + 1) if all(primality(p(t)) for p in polys))


@pytest.fixture
def tmp_json(tmp_path):
    return tmp_path / "out.json"
