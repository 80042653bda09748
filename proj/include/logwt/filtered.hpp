#pragma once

// Strict filtered complexes: a complex together with a nested chain of
// subcomplexes. Levels are stored increasingly; a decreasing filtration F^q
// is held as the increasing F_p = F^{-p} and only relabelled on the way in
// and out (see to_internal / from_internal).

#include <map>
#include <tuple>
#include <vector>

#include "logwt/complexes.hpp"

namespace logwt {

enum class Direction { Increasing, Decreasing };

/// Increasing index <-> user index. The only place F_p = F^{-p} lives.
inline int to_internal(Direction d, int index) { return d == Direction::Increasing ? index : -index; }
inline int from_internal(Direction d, int p) { return d == Direction::Increasing ? p : -p; }

class FilteredComplex {
public:
    FilteredComplex() = default;
    /// levels[i] is the level with user index first + i (F_{first+i} or
    /// F^{first+i}). Missing zero / whole end levels are added; throws if
    /// levels are not nested or not closed under d.
    FilteredComplex(Complex ambient, Direction dir, int first, std::vector<Subcomplex> levels);

    /// 0 below `level`, everything from `level` on (in the given direction).
    static FilteredComplex trivial(const Complex& c, int level, Direction dir = Direction::Increasing);

    const Complex& ambient() const { return ambient_; }
    Direction direction() const { return dir_; }
    const Field& field() const { return ambient_.field(); }

    /// Level with the user index (F_i or F^i).
    Subcomplex at(int index) const { return level(to_internal(dir_, index)); }
    /// Increasing level F_p.
    Subcomplex level(int p) const;
    /// Internal increasing window [a, b]: F_a = 0 and F_b = whole.
    int window_lo() const { return a_; }
    int window_hi() const { return b_; }
    /// The same window in user indices, ordered low to high.
    std::pair<int, int> user_window() const;

    /// Same levels, relabelled into the other direction.
    FilteredComplex reversed_direction() const;
    /// F'_p = F_{p-k} (increasing index).
    FilteredComplex shift_levels(int k) const;

    friend bool operator==(const FilteredComplex& x, const FilteredComplex& y);

private:
    Complex ambient_;
    Direction dir_ = Direction::Increasing;
    int a_ = 0, b_ = 0;
    std::vector<Subcomplex> levels_;  // F_a .. F_b
};

/// Filtration-preserving chain map.
struct FilteredMap {
    FilteredComplex source, target;
    ChainMap map;
    FilteredMap(FilteredComplex s, FilteredComplex t, ChainMap m);
};

/// W_j = tau^{<= j}, increasing.
FilteredComplex whitehead_tower(const Complex& c);

/// Deligne's shear: Dec(F)_p C^n = F_{p-n} C^n cap d^{-1}(F_{p-n-1} C^{n+1}).
/// The result keeps the direction of the input.
FilteredComplex decalage(const FilteredComplex& f);

/// gr keyed by user index: F_p / F_{p-1}, or F^q / F^{q+1}.
std::map<int, Complex> graded_pieces(const FilteredComplex& f);

/// Spectral sequence in the decreasing convention; E_r^{p,q} sits in total
/// degree p + q and d_r goes to E_r^{p+r, q-r+1}.
struct BiGradedPages {
    int r_max = 0;
    std::map<std::tuple<int, int, int>, std::size_t> dims;     // (r, p, q) -> dim, nonzero only
    std::map<std::tuple<int, int, int>, std::size_t> d_ranks;  // rank of d_r out of (r, p, q), nonzero only
    std::size_t dim(int r, int p, int q) const;
    std::size_t rank(int r, int p, int q) const;
};
BiGradedPages spectral_sequence(const FilteredComplex& f, int r_max);
/// Enough pages for the sequence to have stabilised.
int stabilization_page(const FilteredComplex& f);

using Table = std::map<std::pair<int, int>, std::size_t>;  // (w, m) -> dim, nonzero only

/// dim Gr_w H^m of the filtration induced on cohomology, w in user indices.
Table cohomology_graded_table(const FilteredComplex& f);
/// dim H^m(gr_w), w in user indices.
Table e1_table(const FilteredComplex& f);
/// rank of H^n(F_p) -> H^n(F_q) for window p <= q (increasing indices): (p, q, n) -> rank.
std::map<std::tuple<int, int, int>, std::size_t> rank_invariant(const FilteredComplex& f);

/// H^0 of the complex of degreewise filtration-preserving maps.
std::size_t filtered_hom_classes(const FilteredComplex& f, const FilteredComplex& g);

/// Level q becomes tau^{<= -q}(F^q). Requires a decreasing filtration.
FilteredComplex diagonal_connective_cover(const FilteredComplex& f);

/// gr_p(f) is a quasi-isomorphism for every p. Throws if f does not preserve levels.
bool filtered_quasi_iso(const FilteredMap& f);

/// Levelwise direct sum; both filtrations must share a direction.
FilteredComplex filtered_direct_sum(const FilteredComplex& x, const FilteredComplex& y);
/// cone(f) with levels cone(f|_{F_p}).
FilteredComplex filtered_cone(const FilteredMap& f);
/// The complex shifted by m, same levels.
FilteredComplex filtered_shift(const FilteredComplex& f, int m);
/// Induced filtration on a subcomplex, written in the subcomplex's own coordinates.
FilteredComplex restrict_filtration(const FilteredComplex& f, const Subcomplex& sub);

}  // namespace logwt
