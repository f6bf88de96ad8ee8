"""Binary-reflected Gray codes and cycles in the hypercube Q_n.

Words are ints; bit ``k`` of a word is coordinate ``k``.  Every routine that
builds a cycle or path checks its own output before returning it.
"""

from __future__ import annotations

from typing import Sequence

from .graph import bits


class HypercubeError(ValueError):
    pass


def brgc_term(j: int, n: int) -> int:
    if not 0 <= j < 1 << n:
        raise HypercubeError(f"index {j} outside 0..{(1 << n) - 1}")
    return j ^ (j >> 1)


def brgc_cycle(n: int) -> list[int]:
    if n < 2:
        raise HypercubeError("Q_n has no cycle for n < 2")
    return [j ^ (j >> 1) for j in range(1 << n)]


def format_word(w: int, n: int) -> str:
    return format(w, f"0{n}b") if n else ""


def brgc_table(n: int, rows: int = 8) -> str:
    """Terms laid out column-major, ``rows`` per column (the usual printed layout)."""
    terms = [format_word(j ^ (j >> 1), n) for j in range(1 << n)]
    cols = [terms[i:i + rows] for i in range(0, len(terms), rows)]
    return "\n".join(" ".join(col[r] for col in cols if r < len(col)) for r in range(rows)) + "\n"


def subset_gray_cycle(base: int, free: Sequence[int]) -> list[int]:
    """``base`` united with every subset of ``free`` in reflected Gray order.

    Bit ``k`` of the code word selects vertex ``free[k]``.
    """
    if len(free) < 2:
        raise HypercubeError("need at least two free vertices")
    fmask = 0
    for v in free:
        fmask |= 1 << v
    if fmask.bit_count() != len(free):
        raise HypercubeError("free vertices repeat")
    if base & fmask:
        raise HypercubeError("base and free vertices overlap")
    return [base | word_to_set(j ^ (j >> 1), free) for j in range(1 << len(free))]


def word_to_set(word: int, free: Sequence[int]) -> int:
    out = 0
    for k in bits(word):
        out |= 1 << free[k]
    return out


def set_to_word(mask: int, free: Sequence[int]) -> int:
    return sum(1 << k for k, v in enumerate(free) if mask >> v & 1)


def is_hypercube_cycle(seq: Sequence[int], n: int) -> bool:
    if len(seq) < 4 or len(seq) % 2 or len(set(seq)) != len(seq):
        return False
    if any(w >> n for w in seq):
        return False
    return all((seq[i] ^ seq[i - 1]).bit_count() == 1 for i in range(len(seq)))


def _check_edge(n: int, a: int, b: int) -> None:
    if a >> n or b >> n or a < 0 or b < 0:
        raise HypercubeError(f"words must be {n}-bit")
    if (a ^ b).bit_count() != 1:
        raise HypercubeError(f"{a} and {b} are not adjacent in Q_{n}")


def _cycle_in_subcube(dims: list[int], a: int, b: int, length: int) -> list[int]:
    # Subcube: words agreeing with a outside ``dims``; a ^ b is one of ``dims``.
    if len(dims) == 2:
        other = dims[0] if (a ^ b) != 1 << dims[0] else dims[1]
        return [a, b, b ^ (1 << other), a ^ (1 << other)]
    flip = (a ^ b).bit_length() - 1
    split = max(d for d in dims if d != flip)
    rest = [d for d in dims if d != split]
    half = 1 << len(rest)
    if length <= half:
        return _cycle_in_subcube(rest, a, b, length)
    low = _cycle_in_subcube(rest, a, b, half)
    i = low.index(a)
    if low[(i + 1) % half] != b:
        low.reverse()
        i = low.index(a)
    # drop the edge just after (a, b); the remaining Hamilton path keeps (a, b)
    p, q = low[(i + 1) % half], low[(i + 2) % half]
    j = (i + 2) % half
    path = low[j:] + low[:j]  # q ... p
    assert path[0] == q and path[-1] == p
    bit = 1 << split
    p2, q2 = p ^ bit, q ^ bit
    rem = length - half
    if rem == 2:
        top = [p2, q2]
    else:
        cyc = _cycle_in_subcube(rest, p2, q2, rem)
        k = cyc.index(p2)
        top = cyc[k:] + cyc[:k]
        if top[1] == q2:
            top = [top[0]] + top[1:][::-1]
        assert top[-1] == q2
    return path + top


def bipan_cycle_with_edge(n: int, a: int, b: int, length: int) -> list[int]:
    """A cycle of exactly ``length`` words in Q_n on which ``a`` and ``b`` are consecutive.

    The cube is split on a coordinate other than the one separating ``a`` and
    ``b``.  Short cycles recurse into the half holding the edge; longer ones
    take a Hamilton cycle of that half, open it at a different edge (p, q)
    and close it through a (p', q') path of the remaining length in the
    other half.
    """
    _check_edge(n, a, b)
    if length % 2 or not 4 <= length <= 1 << n:
        raise HypercubeError(f"cycle length {length} must be even and in 4..{1 << n}")
    cyc = _cycle_in_subcube(list(range(n)), a, b, length)
    i = cyc.index(a)
    cyc = cyc[i:] + cyc[:i]
    if cyc[1] != b:
        cyc = [cyc[0]] + cyc[1:][::-1]
    if not is_hypercube_cycle(cyc, n) or len(cyc) != length or cyc[1] != b:
        raise HypercubeError(f"internal construction failed for n={n}, a={a}, b={b}, len={length}")
    return cyc


def hamiltonian_path_between_adjacent(n: int, a: int, b: int) -> list[int]:
    """Every word of Q_n exactly once, from ``a`` to its neighbour ``b``."""
    _check_edge(n, a, b)
    if n == 1:
        return [a, b]
    cyc = bipan_cycle_with_edge(n, a, b, 1 << n)
    path = [cyc[0]] + cyc[1:][::-1]  # a, ..., b
    if len(set(path)) != 1 << n or any((path[i] ^ path[i + 1]).bit_count() != 1 for i in range(len(path) - 1)):
        raise HypercubeError("internal Hamilton path construction failed")
    return path
