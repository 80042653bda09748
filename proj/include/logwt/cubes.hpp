#pragma once

// Strictly commuting cubes of complexes, indexed by subsets of {0, .., r-1}
// stored as bitmasks. The edge (S, i) with i not in S maps P(S) -> P(S + i).

#include <map>
#include <vector>

#include "logwt/filtered.hpp"

namespace logwt {

using Mask = unsigned;

inline bool has(Mask s, int i) { return (s >> i) & 1u; }
inline Mask with(Mask s, int i) { return s | (1u << i); }
int popcount(Mask s);

class CubeDiagram {
public:
    /// vertices has 2^r entries; edges keyed by (S, i) for every i not in S.
    /// Throws on shape mismatches or a non-commuting square face.
    CubeDiagram(int r, std::vector<Complex> vertices, std::map<std::pair<Mask, int>, ChainMap> edges);

    int arity() const { return r_; }
    Mask full() const { return (1u << r_) - 1; }
    const Complex& vertex(Mask s) const { return vertices_.at(s); }
    const ChainMap& edge(Mask s, int i) const { return edges_.at({s, i}); }
    /// Composite P(S) -> P(T) for S contained in T (adding axes in ascending order).
    ChainMap map(Mask s, Mask t) const;

    /// Vertexwise dual with reversed arrows; the vertex S of the result is dual(P(full - S)).
    CubeDiagram dual() const;

private:
    int r_;
    std::vector<Complex> vertices_;
    std::map<std::pair<Mask, int>, ChainMap> edges_;
};

/// A cube whose vertices carry filtrations preserved by every edge.
struct FilteredCube {
    CubeDiagram cube;
    std::vector<FilteredComplex> filtrations;
    FilteredCube(CubeDiagram c, std::vector<FilteredComplex> f);
    FilteredMap edge(Mask s, int i) const;
};

/// Iterated fibre by totalization: degree n is the sum over U of P(U)^{n-|U|}.
Complex total_fiber(const CubeDiagram& p);
/// Iterated cones, one axis at a time in the given order (ascending by default).
Complex total_cofiber(const CubeDiagram& p);
Complex total_cofiber(const CubeDiagram& p, const std::vector<int>& axis_order);
/// Cone along one axis: an (r-1)-cube of cones of P(S) -> P(S + axis).
CubeDiagram cone_along(const CubeDiagram& p, int axis);

FilteredComplex filtered_total_fiber(const FilteredCube& p);
FilteredComplex filtered_total_cofiber(const FilteredCube& p);

/// Vertex S is the total fibre of the face {T : T inside the complement of S}.
CubeDiagram cube_shift(const CubeDiagram& p);
/// Vertex S is the total cofibre of the face {T + complement(S) : T inside S}.
CubeDiagram cube_unshift(const CubeDiagram& p);

/// Diagram on {-1, 0, 1}^r (coordinates stored as vectors). Hypercolumns are
/// strict short exact sequences.
struct LatticeDiagram {
    int r = 0;
    std::map<std::vector<int>, Complex> vertices;
    std::map<std::pair<std::vector<int>, int>, ChainMap> edges;  // (x, axis): x -> x + e_axis
};

/// Kernel row data: for axis i and S without i, an injection K -> P(S) whose
/// image is the kernel of the edge P(S) -> P(S + i).
using ExactRows = std::map<std::pair<Mask, int>, ChainMap>;

/// The kernels of the edges, as rows. Throws if an edge is not degreewise surjective.
ExactRows kernel_rows(const CubeDiagram& a);
/// Builds the lattice; throws if rows are not exact or a hypercolumn fails to be exact.
LatticeDiagram extend_by_exact_rows(const CubeDiagram& a, const ExactRows& rows);
/// The {-1, 0} part, read as a cube (coordinate -1 -> absent, 0 -> present).
CubeDiagram restrict_unshift(const LatticeDiagram& l);
/// The {0, 1} part, read as a cube.
CubeDiagram restrict_upper(const LatticeDiagram& l);

/// Pairings over a finite poset. a <= b means a map a -> b. F is
/// contravariant (F(b) -> F(a)), G covariant (G(a) -> G(b)), and for a <= b
/// the pairing is a bilinear form F(b)^i x G(a)^{u-i} -> k, with u the degree
/// of the unit.
struct PosetPairing {
    std::size_t size = 0;
    std::vector<std::vector<bool>> leq;
    std::vector<Complex> f, g;
    std::map<std::pair<std::size_t, std::size_t>, ChainMap> f_maps;  // (a, b), a <= b: F(b) -> F(a)
    std::map<std::pair<std::size_t, std::size_t>, ChainMap> g_maps;  // (a, b), a <= b: G(a) -> G(b)
    int unit_degree = 0;
    /// (a, b) -> degree i -> matrix B with P(x, y) = x^T B y.
    std::map<std::pair<std::size_t, std::size_t>, std::map<int, Mat>> forms;

    /// Pairing is a chain map into k[-u] (P(dx, y) = (-1)^{|x|+1} P(x, dy)).
    bool is_chain_pairing() const;
    /// The twisted-arrow identity for a' <= a <= b <= b'.
    bool is_natural() const;
};

/// phi_a : F(a) -> shift(dual(G(a)), -u), from the pairing on a <= a. Throws
/// if the pairing is not natural or the family fails to commute with the maps.
std::vector<ChainMap> pairing_to_dual_transformation(const PosetPairing& q);
/// Every component a quasi-isomorphism.
bool is_perfect(const std::vector<ChainMap>& phi);

}  // namespace logwt
