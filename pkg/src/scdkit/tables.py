"""Bundled taut-free decompositions of P(5,3), P(5,4), and P(5,5).

These three decompositions are the ground anchors of the whole package:
every taut-free decomposition it can generate is bootstrapped from them
by lifting, level surgery, and shifting.  Each line is one chain, bottom
up; each token is five binary digits (hypercube coordinate, leftmost
digit first) followed by one decimal level digit.

They were found by hand-guided search and are shipped as data because no
known procedure rediscovers them cheaply.  The test suite revalidates
them on import: partition, symmetry, and zero taut chains.
"""

RAW_P53 = """\
110000 111000 111100 111110
011000 011100 011110 011111
001100 001110 101110 101111
000110 100110 110110 110111
100010 110010 111010 111011
000000 100000 101000 101001 111001 111101 111111 111112
010000 010100 010101 011101 011102 011112
001000 001010 001011 001111 001112 101112
000100 100100 100101 100111 100112 110112
000010 010010 010011 110011 110012 111012
000001 100001 110001 110002 110102 111102
010001 011001 011002 011012
001001 001101 001102 101102
000101 000111 000112 010112
000011 100011 100012 101012
000002 100002 101002 111002
010002 010102
001002 001012
000102 100102
000012 010012
110100 110101
011010 011011
101100 101101
010110 010111
101010 101011
"""

RAW_P54 = """\
000000 100000 101000 101100 101101 101102 111102 111103 111113
010000 010100 010110 010111 010112 011112 011113
001000 001010 101010 101011 101012 101112 101113
000100 100100 110100 110101 110102 110112 110113
000010 010010 011010 011011 011012 111012 111013
110000 110001 110002 111002 111003
011000 011001 011002 011102 011103
001100 001101 001102 001112 001113
000110 000111 000112 100112 100113
100010 100011 100012 110012 110013
111000 111100 111110
011100 011110 011111
001110 101110 101111
100110 110110 110111
110010 111010 111011
000001 100001 101001 111001 111101 111111 111112
010001 010101 010102 010103 110103
001001 001011 001012 001013 011013
000101 100101 100102 100103 101103
000011 010011 010012 010013 010113
000002 100002 101002 101003 101013
010002 010003 011003
001002 001003 001103
000102 000103 000113
000012 000013 100013
000003 100003 110003
011101
001111
100111
110011
"""

RAW_P55 = """\
000001 000002 000003 000004 000014 100014 110014 110114
010001 010002 010003 010004 010014 010114
100001 100002 100003 100004 110004 111004
010000 110000 110001 110002 110003 110103 110104 111104
001001 001002 001003 001004 001104 101104
011001 011002 011003 011004
101001 101002 101003 101004
101000 111000 111001 111002 111003 111103
000101 000102 000103 000104 100104 100114
010101 010102 010103 010104
100100 100101 100102 100103 100113 101113
000100 001100 001101 011101 011102 011103 011104 011114
101100 101101 101102 101103
110100 111100 111101 111102
000011 000012 000013 001013 001014 101014
100011 100012 100013 101013
110010 110011 110012 110013
000000 001000 001010 001011 001012 001112 001113 001114 101114 111114
000010 010010 010011 011011 011012 011013 011014 111014
011000 011010 111010 111011 111012 111013
000111 000112 000113 000114
010100 010110 010111 010112 010113 011113
000110 100110 110110 110111 110112 110113
011100 011110 011111 011112
001110 001111 101111 101112
100000 100010 101010 101110 111110 111111 111112 111113
110101 110102
100111 100112
101011 101012
010012 010013
001102 001103
"""

BUILTIN_TABLES = {
    "P53": (5, 3, RAW_P53),
    "P54": (5, 4, RAW_P54),
    "P55": (5, 5, RAW_P55),
}
