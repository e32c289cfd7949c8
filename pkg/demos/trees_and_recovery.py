"""Build the trees A[M], read M back off the deletion spectrum, and trim one
tree into another.

    python3 demos/trees_and_recovery.py
"""
from topoinc.homeo import embeds
from topoinc.invariants import p_spectrum
from topoinc.spaces import SpaceSpec, build, decode_A


def main():
    for M in ([4], [4, 6], [5, 7, 9], [4, 8, 12]):
        model = build(SpaceSpec("A", M=M))
        spec = p_spectrum(model)
        print(f"A{M}: {len(model.vertices)} vertices, {len(model.edges)} edges")
        print(f"  deletion counts seen: {list(spec.values)}")
        print(f"  decoded M: {list(decode_A(model).values)}")

    # a branch point of order d can only land on one of order >= d
    pairs = [([4], [5]), ([5], [4]), ([4, 6], [5, 7, 9]), ([5, 7, 9], [4, 6])]
    for M1, M2 in pairs:
        ok, _ = embeds(build(SpaceSpec("A", M=M1)), build(SpaceSpec("A", M=M2)))
        print(f"A{M1} embeds in A{M2}: {ok}")


if __name__ == "__main__":
    main()
