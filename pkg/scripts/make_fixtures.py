"""Regenerate the bundled fixture graphs and partitions.

    python scripts/make_fixtures.py src/commdiff/data/fixtures
"""

import random
import sys
from pathlib import Path


def ring_of_cliques(k, size):
    edges, blocks = [], []
    for c in range(k):
        nodes = [c * size + i + 1 for i in range(size)]
        blocks.append(nodes)
        edges += [(a, b) for i, a in enumerate(nodes) for b in nodes[i + 1:]]
    for c in range(k):
        edges.append((blocks[c][-1], blocks[(c + 1) % k][0]))
    return edges, blocks


def path_of_cliques(k, size):
    edges, blocks = ring_of_cliques(k, size)
    edges.pop()  # drop the closing link
    return edges, blocks


def planted(k, size, p_in, p_out, seed):
    rng = random.Random(seed)
    blocks = [[c * size + i + 1 for i in range(size)] for c in range(k)]
    label = {v: c for c, b in enumerate(blocks) for v in b}
    nodes = [v for b in blocks for v in b]
    edges = []
    for i, a in enumerate(nodes):
        for b in nodes[i + 1:]:
            if rng.random() < (p_in if label[a] == label[b] else p_out):
                edges.append((a, b))
    # keep every block internally connected
    for b in blocks:
        for a, c in zip(b, b[1:]):
            if (a, c) not in edges:
                edges.append((a, c))
    return edges, blocks


def two_triangles():
    return [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)], [[1, 2, 3], [4, 5, 6]]


def random_partition(blocks, seed):
    rng = random.Random(seed)
    nodes = sorted(v for b in blocks for v in b)
    groups = {}
    for v in nodes:
        groups.setdefault(rng.randrange(len(blocks)), []).append(v)
    return [groups[k] for k in sorted(groups)]


def adversarial_partition(blocks):
    # stripe across blocks: member i of every block goes to community i
    width = max(len(b) for b in blocks)
    return [[b[i] for b in blocks if i < len(b)] for i in range(width)]


FIXTURES = {
    "two_triangles": two_triangles(),
    "ring_of_cliques": ring_of_cliques(4, 5),
    "path_of_cliques": path_of_cliques(3, 4),
    "planted": planted(3, 8, 0.7, 0.05, seed=11),
}


def write(out: Path):
    out.mkdir(parents=True, exist_ok=True)
    for name, (edges, blocks) in FIXTURES.items():
        (out / f"{name}.edges").write_text("".join(f"{a} {b}\n" for a, b in sorted(edges)))
        parts = {
            "aligned": blocks,
            "random": random_partition(blocks, seed=5),
            "adversarial": adversarial_partition(blocks),
        }
        for kind, groups in parts.items():
            text = "# format: A\n" + "".join(" ".join(map(str, sorted(g))) + "\n" for g in groups)
            (out / f"{name}.{kind}.cmty").write_text(text)


if __name__ == "__main__":
    write(Path(sys.argv[1]))
