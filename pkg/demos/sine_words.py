"""Words of U and H pieces strung along sine curves.

Y-windows only see their word up to reversal; the sequence deciders give the
same answer on the corresponding finite sequences.

    python3 demos/sine_words.py
"""
import itertools

from topoinc.homeo import is_homeomorphic
from topoinc.sequences import BitSeqSpec, reflect_equiv, shift_equiv
from topoinc.spaces import SpaceSpec, build, decode_g


def main():
    K = 2
    words = ["11000", "00011", "10100", "01010"]
    models = {w: build(SpaceSpec("Y", g=BitSeqSpec.from_window(w, K), K=K)) for w in words}
    for w, m in models.items():
        print(f"Y[{w}] decodes to {decode_g(m)}")
    for w1, w2 in itertools.combinations(words, 2):
        same, _ = is_homeomorphic(models[w1], models[w2])
        s1 = BitSeqSpec("0", "1" + w1 + "1", "0")
        s2 = BitSeqSpec("0", "1" + w2 + "1", "0")
        print(f"{w1} ~ {w2}: homeomorphic={same} shift={shift_equiv(s1, s2)} "
              f"reflect={reflect_equiv(s1, s2)}")


if __name__ == "__main__":
    main()
