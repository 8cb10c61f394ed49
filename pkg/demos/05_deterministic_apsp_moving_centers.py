"""Deterministic approximate APSP: greedy covers with moving centers.

The path scenario: one center covers a path plus a shortcut; severing the
shortcut opens a second center, and a later deletion strands the first
center's component so the center collects it and relocates across the cut.
Layer-level opens stay below 2n/q and the total moving distance below n.
"""

from decaps import ApspIndexDet, DecrementalGraph, DetCenterCover, bfs_apsp


def main():
    q = 8
    n = q + 2
    edges = [(i, i + 1) for i in range(n - 1)] + [(q // 2 - 1, q + 1)]
    g = DecrementalGraph.from_edge_list(n, sorted(edges))
    cov = DetCenterCover(g, q=q, Q=4 * q)
    print(f"path of {n} nodes with a shortcut; q={q}")
    print(f"initial: {cov.opens} center at node {cov.location(0)}")

    cov.delete(q // 2 - 1, q + 1)
    print(f"after cutting the shortcut: {cov.opens} centers "
          f"(new one at {cov.location(1)})")

    cov.delete(q // 4, q // 4 + 1)
    print(f"after stranding the head of the path: center 0 moved to "
          f"{cov.location(0)}, collected {sorted(cov.collected[0])}, "
          f"radius now {cov.radius2[0] / 2}")
    print(f"opens={cov.opens} (<= 2n/q = {2 * n // q}), "
          f"moving distance={cov.moving_distance} (<= n = {n})")

    # the layered index drives one cover per distance scale
    g2 = DecrementalGraph.from_edge_list(9, [(i, i + 1) for i in range(8)])
    idx = ApspIndexDet(g2, eps=0.5)
    truth = bfs_apsp(g2)
    print("\nlayered (1+eps,0) index on a 9-node path, eps=0.5:")
    for x, y in [(0, 8), (0, 4), (3, 5)]:
        print(f"  dist({x},{y}) = {truth[x, y]:.0f}, "
              f"query -> {idx.query(x, y)}")
    idx.delete(4, 5)
    print(f"  after deleting (4,5): query(0, 8) -> {idx.query(0, 8)}")


if __name__ == "__main__":
    main()
