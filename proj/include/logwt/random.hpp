#pragma once

// Seeded generators for the randomized property suites.

#include <random>

#include "logwt/cubes.hpp"

namespace logwt {

using Rng = std::mt19937_64;

Mat random_matrix(const Field& f, Rng& rng, std::size_t rows, std::size_t cols, int spread = 2);
Mat random_invertible(const Field& f, Rng& rng, std::size_t n);

/// A complex with a known splitting: cohomology pieces plus contractible
/// pairs k -> k, disguised by random invertible changes of basis g[n].
struct SplitComplex {
    Complex complex;
    std::map<int, std::size_t> h;       // cohomology dims by degree
    std::map<int, Mat> basis_change;    // disguised = g * standard
    std::map<int, std::size_t> pairs_in;   // pairs arriving in degree n
};

/// Degrees [lo, hi], each degree of dimension at most max_dim.
SplitComplex random_split_complex(const Field& f, Rng& rng, int lo, int hi, std::size_t max_dim);
Complex random_complex(const Field& f, Rng& rng, int lo, int hi, std::size_t max_dim);

/// A chain map X -> Y whose effect on cohomology is a random block A_n,
/// plus a random null-homotopic part. `quasi_iso` is whether every A_n is
/// invertible.
struct RandomMapCase {
    ChainMap map;
    bool quasi_iso;
};
RandomMapCase random_chain_map(const Field& f, Rng& rng, int lo, int hi, std::size_t max_dim);

/// Nested subcomplexes generated by random vectors v together with d v.
/// `steps` generating rounds; the first level has user index `first`.
FilteredComplex random_filtration(const Complex& c, Rng& rng, int steps, int first,
                                  Direction dir = Direction::Increasing);

/// A commuting r-cube built from random complexes each living on an interval
/// {S : A <= S <= B} of vertices, with a random scalar per axis on the
/// summand, then disguised by a random chain isomorphism at every vertex.
/// `surjective_edges` makes every scalar nonzero and every interval downward closed.
CubeDiagram random_cube(const Field& f, Rng& rng, int r, int lo, int hi, std::size_t max_dim,
                        bool surjective_edges = false);

}  // namespace logwt
