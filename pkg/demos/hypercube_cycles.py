"""Print the 5-bit reflected Gray code and every even cycle through one edge of Q4."""

from tarsgraph import bipan_cycle_with_edge, brgc_table, hamiltonian_path_between_adjacent
from tarsgraph.gray import format_word


def main():
    print(brgc_table(5))
    n, a, b = 4, 0b0000, 0b0100
    print(f"cycles of Q{n} through {format_word(a, n)}-{format_word(b, n)}:")
    for length in range(4, 2**n + 1, 2):
        cyc = bipan_cycle_with_edge(n, a, b, length)
        print(f"  {length:2d}: " + " ".join(format_word(w, n) for w in cyc))
    path = hamiltonian_path_between_adjacent(n, a, b)
    print("Hamilton path:", " ".join(format_word(w, n) for w in path))


if __name__ == "__main__":
    main()
