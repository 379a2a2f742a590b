#!/usr/bin/env python3
"""Independent Merkle-root oracle for 1..8 leaves.

Leaves are SHA-256(bytes([i])). The tree is built recursively as an explicit
node structure: a node over an odd-length level is paired with a copy of
itself, and a single leaf is its own root.
"""
import hashlib
import json
import pathlib


def sha(b):
    return hashlib.sha256(b).digest()


def root(nodes):
    if len(nodes) == 1:
        return nodes[0]
    if len(nodes) % 2:
        nodes = nodes + [nodes[-1]]
    return root([sha(nodes[i] + nodes[i + 1]) for i in range(0, len(nodes), 2)])


def main():
    out = []
    for n in range(1, 9):
        leaves = [sha(bytes([i])) for i in range(n)]
        out.append({"leaves": n, "root": root(leaves).hex()})
    path = pathlib.Path(__file__).resolve().parent.parent / "data" / "merkle_roots.json"
    path.write_text(json.dumps(out, indent=1) + "\n")


if __name__ == "__main__":
    main()
