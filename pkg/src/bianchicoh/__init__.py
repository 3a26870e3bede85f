"""First cohomology of congruence subgroups of Bianchi groups.

Computes H^1(Gamma_0(n), Z/q) and its parabolic, unit-invariant subspace
for SL_2 over the five norm-Euclidean imaginary quadratic rings, together
with degeneracy maps between levels and Hecke operators, ending in a
numerical check that the kernel of the level-raising map is Eisenstein.
"""

__version__ = "0.1.0"
