"""Perturbation bounds for the angular factor on two instructive pairs."""

from polarpert import certify, named_instance

# Orthogonal projections of different rank: the gap differences vanish even
# though the ranks differ, so the main bound applies and holds.
c = certify(*named_instance("remark-projections"))
print("remark-projections")
print(f"  qdist={c.qdist}  bound_main={c.bound_main}  bound_improved={c.bound_improved:.5f}")
print(f"  ranks {c.hyp.rank1}/{c.hyp.rank2}, main applicable: {c.main_applicable}")

# A rank drop by a tiny perturbation: the angular factor jumps by 1 while the
# would-be main bound is 0.04.  The hypothesis fails, so no contradiction;
# the unconditional closed-range bound still holds.
c = certify(*named_instance("nested-rank-drop(0.01)"))
print("nested-rank-drop(0.01)")
print(f"  qdist={c.qdist}  would-be bound_main={c.bound_main:.4f}  main applicable: {c.main_applicable}")
print(f"  bound_cr_plain={c.bound_cr_plain:.4f} holds: {c.cr_plain_holds}")
