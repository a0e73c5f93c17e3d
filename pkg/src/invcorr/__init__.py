"""Finite inverse semigroups, inverse sets, correspondences and Morita equivalence."""
