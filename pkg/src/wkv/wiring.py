"""Wiring diagrams: pairings of boundary points plus a count of closed circles.

Boundary points of a diagram with m outputs and input faces of sizes
n_1..n_k are written ("o", p) for 0 <= p < m and ("i", f, p) for
0 <= f < k, 0 <= p < n_f.
"""

import json

__all__ = ["WiringDiagram", "wcompose", "identity_wiring", "WiringError"]


class WiringError(ValueError):
    pass


def _points(outputs, inputs):
    pts = [("o", p) for p in range(outputs)]
    for f, size in enumerate(inputs):
        pts.extend(("i", f, p) for p in range(size))
    return pts


class WiringDiagram:
    __slots__ = ("outputs", "inputs", "pairing", "circles")

    def __init__(self, outputs, inputs, pairs, circles=0):
        if circles < 0:
            raise WiringError("circles must be >= 0")
        self.outputs = int(outputs)
        self.inputs = tuple(int(s) for s in inputs)
        self.circles = int(circles)
        pts = set(_points(self.outputs, self.inputs))
        mate = {}
        for a, b in pairs:
            a, b = tuple(a), tuple(b)
            for x in (a, b):
                if x not in pts:
                    raise WiringError("unknown boundary point %r" % (x,))
                if x in mate:
                    raise WiringError("point %r matched twice" % (x,))
            if a == b:
                raise WiringError("point %r matched to itself" % (a,))
            mate[a], mate[b] = b, a
        if len(mate) != len(pts):
            raise WiringError("pairing is not perfect")
        self.pairing = mate

    def pairs(self):
        """Sorted list of matched pairs, each pair sorted."""
        out = set()
        for a, b in self.pairing.items():
            out.add(tuple(sorted((a, b))))
        return sorted(out)

    def __eq__(self, other):
        return (isinstance(other, WiringDiagram) and self.outputs == other.outputs
                and self.inputs == other.inputs and self.circles == other.circles
                and self.pairing == other.pairing)

    def __hash__(self):
        return hash((self.outputs, self.inputs, self.circles, tuple(self.pairs())))

    def to_dict(self):
        return {"outputs": self.outputs, "inputs": list(self.inputs),
                "pairs": [[list(a), list(b)] for a, b in self.pairs()], "circles": self.circles}

    @classmethod
    def from_dict(cls, data):
        pairs = [(tuple(a), tuple(b)) for a, b in data["pairs"]]
        return cls(data["outputs"], data.get("inputs", []), pairs, data.get("circles", 0))

    def __repr__(self):
        return "WiringDiagram(%d, %s, %s, circles=%d)" % (self.outputs, list(self.inputs),
                                                           json.dumps(self.to_dict()["pairs"]), self.circles)


def identity_wiring(n):
    return WiringDiagram(n, [n], [(("o", p), ("i", 0, p)) for p in range(n)])


def wcompose(outer, inner):
    """Plug inner[f] into input face f of outer and follow the strands."""
    inner = list(inner)
    if len(inner) != len(outer.inputs):
        raise WiringError("outer has %d input faces, got %d diagrams" % (len(outer.inputs), len(inner)))
    for f, (size, d) in enumerate(zip(outer.inputs, inner)):
        if d.outputs != size:
            raise WiringError("face %d has size %d but diagram has %d outputs" % (f, size, d.outputs))
    # Renumber inner input faces consecutively.
    offsets = []
    new_inputs = []
    for d in inner:
        offsets.append(len(new_inputs))
        new_inputs.extend(d.inputs)

    def inner_pt(f, x):
        # a point of inner[f] as a node of the glued graph
        if x[0] == "o":
            return ("g", f, x[1])  # glued to outer face f, point x[1]
        return ("i", offsets[f] + x[1], x[2])

    def outer_pt(x):
        return x if x[0] == "o" else ("g", x[1], x[2])

    adj = {}
    for a, b in outer.pairing.items():
        adj.setdefault(outer_pt(a), []).append(outer_pt(b))
    for f, d in enumerate(inner):
        for a, b in d.pairing.items():
            adj.setdefault(inner_pt(f, a), []).append(inner_pt(f, b))

    boundary = _points(outer.outputs, new_inputs)
    seen = set()
    pairs = []
    for start in boundary:
        if start in seen:
            continue
        prev, cur = None, start
        seen.add(cur)
        while True:
            nxt = [y for y in adj[cur] if y != prev] if prev is not None else adj[cur]
            prev, cur = cur, nxt[0]
            seen.add(cur)
            if cur[0] != "g":
                break
        pairs.append((start, cur))
    loops = 0
    for node in adj:
        if node in seen:
            continue
        loops += 1
        stack = [node]
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            stack.extend(adj[x])
    circles = outer.circles + sum(d.circles for d in inner) + loops
    return WiringDiagram(outer.outputs, new_inputs, pairs, circles)
