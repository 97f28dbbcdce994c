"""Count arrow diagrams two ways: brute-force quotient and PBW prediction."""

from wkv.diagoracle import dims_pbw, dims_raw

for n, top in ((1, 4), (2, 4), (3, 3)):
    for sw in (False, True):
        raw = [dims_raw(n, d, sw) for d in range(top + 1)]
        pbw = [dims_pbw(n, d, sw) for d in range(top + 1)]
        print("strands=%d sw=%-5s raw=%s pbw=%s" % (n, sw, raw, pbw))
