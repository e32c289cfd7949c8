"""The apex of a C-window: deleting it splits off a piece per tail, and the
count grows with the window.  What is left around it without cut points is Q.

    python3 demos/apex_and_q.py
"""
from topoinc.complex import PointClass, delete
from topoinc.invariants import cutfree_closure_components, deletion_count, find_apex, super_cut_scan
from topoinc.sequences import BitSeqSpec
from topoinc.spaces import SpaceSpec, build


def main():
    g = BitSeqSpec("1", "0", "10")
    for K in (1, 2, 3):
        model = build(SpaceSpec("C", g=g, K=K))
        apex = find_apex(model)
        print(f"K={K}: removing the apex leaves {deletion_count(model, PointClass.vertex(apex))} pieces")

    for frame, x, y in super_cut_scan(SpaceSpec("C", g=g, K=1), 1, 2)["super_cut"]:
        print(f"count grows from K=1 to K=2 at ({x}, {y}) in the {frame} frame")

    model = build(SpaceSpec("C", g=g, K=2))
    apex = find_apex(model)
    punctured = delete(model, PointClass.vertex(apex))
    for c in cutfree_closure_components(model, apex):
        comp = punctured.components[c]
        print(f"cut-free piece at the apex: {len(comp.vertices)} vertices, {len(comp.edges)} edges")


if __name__ == "__main__":
    main()
