DEFAULT_TOLERANCE = 1e-9
DEFAULT_EIGEN_TOLERANCE = 1e-8
DEFAULT_CURVATURE_TOLERANCE = 1e-10
REPRESENTATION_TOLERANCE = 1e-12

HOLONOMY_CAVEAT = "orientable blocks and Hol ⊂ SO(n_1)×…×SO(n_k) are assumed, not checked"
SPLIT_CAVEAT = "split geometries with T ≠ 0 need k ≥ 3"
