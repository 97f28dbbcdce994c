import random

import pytest

from wkv.wiring import WiringDiagram, WiringError, identity_wiring, wcompose


def cup():
    # no outputs, one input face of size 2, joined
    return WiringDiagram(0, [2], [(("i", 0, 0), ("i", 0, 1))])


def cap():
    return WiringDiagram(2, [], [(("o", 0), ("o", 1))])


def random_wiring(rng, outputs, inputs):
    pts = [("o", p) for p in range(outputs)]
    for f, s in enumerate(inputs):
        pts += [("i", f, p) for p in range(s)]
    rng.shuffle(pts)
    return WiringDiagram(outputs, inputs, list(zip(pts[::2], pts[1::2])), rng.randint(0, 2))


def random_sizes(rng, total_parity, k):
    sizes = [rng.randint(0, 3) for _ in range(k)]
    if (sum(sizes) + total_parity) % 2:
        sizes[0] += 1
    return sizes


def test_identity_is_neutral():
    rng = random.Random(1)
    for _ in range(20):
        d = random_wiring(rng, 4, [2, 2])
        assert wcompose(identity_wiring(4), [d]) == d
        ids = [identity_wiring(s) for s in d.inputs]
        assert wcompose(d, ids) == d


def test_cap_into_cup_makes_a_circle():
    w = wcompose(cup(), [cap()])
    assert w.circles == 1 and w.outputs == 0 and w.inputs == ()


def test_circles_add_up():
    a = WiringDiagram(2, [2], [(("o", 0), ("i", 0, 1)), (("o", 1), ("i", 0, 0))], circles=2)
    b = WiringDiagram(2, [], [(("o", 0), ("o", 1))], circles=1)
    w = wcompose(a, [b])
    assert w.circles == 3 and w.pairs() == [(("o", 0), ("o", 1))]


def test_composition_is_associative():
    rng = random.Random(7)
    for _ in range(40):
        outer = random_wiring(rng, 2, random_sizes(rng, 0, 2))
        mids = [random_wiring(rng, s, random_sizes(rng, s, 2)) for s in outer.inputs]
        inner_sizes = [s for m in mids for s in m.inputs]
        leaves = [random_wiring(rng, s, random_sizes(rng, s, 1)) for s in inner_sizes]
        left = wcompose(wcompose(outer, mids), leaves)
        groups, k = [], 0
        for m in mids:
            groups.append(wcompose(m, leaves[k:k + len(m.inputs)]))
            k += len(m.inputs)
        right = wcompose(outer, groups)
        assert left == right


def test_size_mismatch():
    with pytest.raises(WiringError):
        wcompose(cup(), [identity_wiring(4)])
    with pytest.raises(WiringError):
        wcompose(cup(), [])


@pytest.mark.parametrize("pairs", [
    [(("o", 0), ("o", 0))],
    [(("o", 0), ("o", 1)), (("o", 1), ("o", 0))],
    [(("o", 0), ("o", 5))],
    [],
])
def test_invalid_pairings(pairs):
    with pytest.raises(WiringError):
        WiringDiagram(2, [], pairs)


def test_dict_round_trip():
    rng = random.Random(3)
    d = random_wiring(rng, 3, [1, 2])
    assert WiringDiagram.from_dict(d.to_dict()) == d
    assert hash(WiringDiagram.from_dict(d.to_dict())) == hash(d)
