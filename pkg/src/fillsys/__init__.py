"""Chord-diagram chain complexes of filling systems and exact integer checks on them."""

from .chain import ChainVector, DifferentialMatrix, assemble_matrix, differential
from .diagram import ChordWord, apply_permutation, canonicalize, crossing_graph, from_chords, rotate
from .enumerate import Basis, BudgetExceededError, enumerate_basis
from .figures import build_x, build_y, build_z, verify_vanishing
from .filling import FillingSystem, boundary_profile, delete_chord, is_disconnected, is_filling_system
from .zlinalg import SparseIntMatrix, cokernel, smith_normal_form, solve_in_image

__version__ = "0.1.0"

__all__ = [
    "Basis",
    "BudgetExceededError",
    "ChainVector",
    "ChordWord",
    "DifferentialMatrix",
    "FillingSystem",
    "SparseIntMatrix",
    "apply_permutation",
    "assemble_matrix",
    "boundary_profile",
    "build_x",
    "build_y",
    "build_z",
    "canonicalize",
    "cokernel",
    "crossing_graph",
    "delete_chord",
    "differential",
    "enumerate_basis",
    "from_chords",
    "is_disconnected",
    "is_filling_system",
    "rotate",
    "smith_normal_form",
    "solve_in_image",
    "verify_vanishing",
]
