from hypothesis import strategies as st

from nilcone.combinatorics import Bipartition, Partition


@st.composite
def partitions(draw, max_weight=8):
    n = draw(st.integers(0, max_weight))
    parts, left = [], n
    while left:
        p = draw(st.integers(1, min(left, parts[-1] if parts else left)))
        parts.append(p)
        left -= p
    return Partition(parts)


@st.composite
def bipartitions(draw, max_size=8):
    mu = draw(partitions(max_size))
    nu = draw(partitions(max_size - mu.weight))
    return Bipartition(mu, nu)


fields = st.sampled_from([2, 3, 4, 5, 7, 8, 9])
