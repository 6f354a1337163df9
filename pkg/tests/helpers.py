"""Shared constructions for the tests: random Weyl words and twists."""

import random

from lietriad.double import DoubleSigmaSystem, conjugate
from lietriad.rootsys import compose, diagram_automorphism_perms, diagram_permutation


def random_weyl(rs, rng: random.Random, length=None):
    """A Weyl group element as a root permutation, from a random word."""
    if length is None:
        length = 2 * rs.npos
    word = [rng.randrange(rs.rank) for _ in range(length)]
    return rs.word_permutation(word)


def random_automorphism(rs, rng: random.Random):
    """A random element of Aut(Δ) = W ⋊ Aut(Π)."""
    nodes = rng.choice(diagram_automorphism_perms(rs))
    return compose(random_weyl(rs, rng), diagram_permutation(rs, nodes))


def random_twist(ds: DoubleSigmaSystem, rng: random.Random) -> DoubleSigmaSystem:
    """(φσ₁φ⁻¹, wφσ₂φ⁻¹w⁻¹) for random φ in Aut(Δ) and w in W."""
    rs = ds.rs
    phi = random_automorphism(rs, rng)
    w = random_weyl(rs, rng)
    return DoubleSigmaSystem(rs, conjugate(ds.sigma1, phi),
                             conjugate(ds.sigma2, compose(w, phi)))
