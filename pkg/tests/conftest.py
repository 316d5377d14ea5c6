from hypothesis import settings
from hypothesis import strategies as st

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


@st.composite
def partitions(draw, max_size=30, max_len=None):
    """Random partitions of size at most ``max_size``."""
    total = draw(st.integers(0, max_size))
    parts = []
    left = total
    while left:
        cap = min(left, parts[-1] if parts else left)
        p = draw(st.integers(1, cap))
        parts.append(p)
        left -= p
        if max_len is not None and len(parts) == max_len:
            break
    return tuple(parts)


@st.composite
def boxed(draw, n, k):
    """A partition inside the (n-1) x k box."""
    parts = sorted((draw(st.integers(0, k)) for _ in range(n - 1)), reverse=True)
    return tuple(p for p in parts if p)
