"""Decremental graphs and the exact bounded-depth distance tree.

Builds the 6-node example used across the test suite (root r with three
children a, b, c and grandchildren d, e), deletes the edge (r, a), and shows
how the tree repairs its levels while charging exactly five messages.
"""

from decaps import DecrementalGraph, EsTree

NAMES = "r a b c d e".split()
EDGES = [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (1, 2), (2, 5), (3, 5), (4, 5)]


def show(tree):
    print("   levels:", {NAMES[x]: tree.level_query(x) for x in range(6)})


def main():
    g = DecrementalGraph.from_edge_list(6, EDGES)
    print(f"graph: n={g.n}, m={g.m}, degree(a)={g.degree(1)}")

    tree = EsTree(g, root=0, depth=3)
    print("initial tree (root r, depth 3):")
    show(tree)

    print("deleting (r, a)...")
    dropped = tree.increase_or_delete(0, 1)
    show(tree)
    print(f"   dropped past depth: {sorted(dropped)}; "
          f"messages charged: {tree.messages} (a notified 3 neighbors, d notified 2)")

    print("deleting (a, e) and (a, d): a keeps level 2 via b")
    for u, v in [(1, 5), (1, 4)]:
        tree.increase_or_delete(u, v)
    show(tree)

    print("deleting (a, b) disconnects a:")
    dropped = tree.increase_or_delete(1, 2)
    show(tree)
    print(f"   dropped: {[NAMES[x] for x in sorted(dropped)]}")


if __name__ == "__main__":
    main()
