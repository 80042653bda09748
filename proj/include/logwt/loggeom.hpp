#pragma once

// Logarithmic de Rham / Hodge complexes of the projective line with marked
// points (an explicit Cech model on the two standard charts), tabulated snc
// scenarios, and the two constructions of the weight filtration.

#include <optional>
#include <set>
#include <string>

#include "logwt/cubes.hpp"

namespace logwt {

/// A point of the projective line: a field element or infinity.
struct LinePoint {
    bool infinity = false;
    Scalar value;  // unused at infinity
    friend bool operator==(const LinePoint& a, const LinePoint& b) {
        return a.infinity == b.infinity && (a.infinity || a.value == b.value);
    }
};

LinePoint parse_line_point(const Field& f, const std::string& s);  // "inf" or a scalar
std::string format_line_point(const Field& f, const LinePoint& p);

struct P1Arrangement {
    Field field;
    std::vector<LinePoint> points;
    /// Throws std::invalid_argument on repeated points.
    P1Arrangement(Field f, std::vector<LinePoint> pts);
    std::size_t size() const { return points.size(); }
};

/// (p, q) -> dim H^q(-, Omega^p).
using HodgeTable = std::map<std::pair<int, int>, std::size_t>;

/// Cech-de Rham windows for every sub-arrangement of a fixed arrangement,
/// all living in one ambient complex so that inclusions are literal.
///
/// Ambient degrees: 0 = functions on U0 + U1, 1 = functions on U01 + forms on
/// U0 + forms on U1, 2 = forms on U01. Functions are Laurent coefficients in
/// x; a form is h dx / Q with Q the monic product of (x - a) over the finite
/// nonzero marked points.
class P1Model {
public:
    explicit P1Model(P1Arrangement arr);

    const P1Arrangement& arrangement() const { return arr_; }
    const Complex& ambient() const { return ambient_; }
    Mask all_points() const { return (1u << arr_.size()) - 1; }

    /// Log forms along the points in `subset`.
    Subcomplex log_forms(Mask subset) const;
    /// Log forms vanishing along `subset` (functions vanish there, 1-forms are regular).
    Subcomplex compact_forms(Mask subset) const;
    /// Forms of de Rham degree >= 1.
    Subcomplex hodge_part() const;

    /// Residue at point i: ambient -> a complex in degrees 1, 2 with one
    /// coordinate per chart containing the point.
    Complex residue_target(std::size_t i) const;
    std::map<int, Mat> residue_matrices(std::size_t i) const;
    /// Value at point i of functions, same chart bookkeeping in degrees 0, 1.
    Complex value_target(std::size_t i) const;
    std::map<int, Mat> value_matrices(std::size_t i) const;

    /// Wedge then trace, ambient degree i against ambient degree 2 - i.
    Mat trace_form(int i) const;

private:
    enum Chart { U0, U1, U01 };
    bool in_chart(std::size_t point, Chart c) const;
    Subspace functions(Chart c, Mask vanish) const;
    Subspace forms(Chart c, Mask poles) const;
    Vec eval_row(const Scalar& a, std::size_t len, int low) const;

    P1Arrangement arr_;
    int window_ = 0;                  // N: functions live in degrees [-N, N]
    std::vector<std::size_t> finite_;  // indices of the finite nonzero points
    std::vector<Scalar> q_;            // coefficients of Q, low to high
    std::size_t nf_ = 0, nw_ = 0;      // function / form window sizes
    Complex ambient_;
};

/// Pole-order filtered complex and its Hodge pieces.
struct LogHodgeComplexes {
    FilteredComplex de_rham;                      // P_0 = no poles, P_1 = everything
    std::vector<FilteredComplex> hodge_graded;    // j = 0, 1 (the j piece sits in degrees >= j)
    std::vector<FilteredComplex> hodge_filtered;  // a = 0, 1: forms of degree >= a
};
LogHodgeComplexes p1_log_hodge_complexes(const P1Arrangement& arr);

struct CompactSide {
    Complex complex;
    /// Inclusion into the compact complex of the arrangement without point i.
    std::vector<ChainMap> localization;
};
CompactSide p1_compactly_supported(const P1Arrangement& arr);

struct SequenceVerdict {
    bool exact = false;     // degreewise short exact
    bool gr_split = false;  // on gr of the pole-order filtration: exact, with a chain section
};
/// 0 -> Omega(log D - p_i) -> Omega(log D) -> residue at p_i -> 0.
SequenceVerdict residue_sequence(const P1Arrangement& arr, std::size_t i);
/// 0 -> Omega_c(log D) -> Omega_c(log D - p_i) -> value at p_i -> 0, degreewise exact.
bool localization_sequence(const P1Arrangement& arr, std::size_t i);

/// Some chain map s with g o s = id, if one exists.
std::optional<ChainMap> chain_section(const ChainMap& g);

/// Subsets of the points ordered by reverse inclusion; log side via
/// restriction, compact side via extension by zero, pairing = wedge + trace.
PosetPairing p1_pairing(const P1Arrangement& arr);
struct PairingVerdict {
    bool chain = false, natural = false, perfect = false;
    std::size_t poset_size = 0;
    bool ok() const { return chain && natural && perfect; }
};
PairingVerdict poincare_pairing_check(const P1Arrangement& arr);

// ---------------------------------------------------------------------------
// Tabulated scenarios.

struct Stratum {
    std::vector<HodgeTable> components;
    HodgeTable total() const;
};

struct SncdScenario {
    std::string name;
    Field field = Field::rationals();
    int n = 0;  // dimension of X
    int r = 0;  // number of divisor components
    std::map<Mask, Stratum> strata;  // missing subsets are empty
    /// (from J, to I, p, q) with J inside I: H^q(D_J, Omega^p) -> H^q(D_I, Omega^p).
    std::map<std::tuple<Mask, Mask, int, int>, Mat> pullbacks;
    std::optional<P1Arrangement> line;  // explicit mode
    /// Position of each pullback in the source file, for error paths.
    std::map<std::tuple<Mask, Mask, int, int>, std::size_t> pullback_index;

    HodgeTable table(Mask i) const;
    /// Pullback for the pair, zero when not given.
    Mat pullback(Mask from, Mask to, int p, int q) const;
};

/// Names the offending field, e.g. "pullbacks[2].matrix".
struct ScenarioError : std::invalid_argument {
    std::string path;
    ScenarioError(std::string field_path, const std::string& what)
        : std::invalid_argument(field_path + ": " + what), path(std::move(field_path)) {}
};

/// Shapes, subsets, and strict functoriality of the pullbacks.
void validate(const SncdScenario& s);
/// The tabulated data of the projective line with the given points.
SncdScenario scenario_from_line(const P1Arrangement& arr);
/// P1 Hodge table: h^{00} = h^{11} = 1.
HodgeTable projective_space_table(int n);

enum class Track { DeRham, HodgeGraded, HodgeFiltered };
std::string track_name(Track t);

struct TrackPiece {
    int index = 0;  // Hodge degree j or filtration step a; 0 for de Rham
    FilteredComplex filtered;
    Table graded;  // (w, m) -> dim Gr^W_w H^m
    Table e1;      // (w, m) -> dim H^m(gr_w)
};
struct TrackResult {
    Track track = Track::DeRham;
    std::vector<TrackPiece> pieces;
};

/// The filtered total cofibre of the Whitehead towers of the dualized,
/// shifted strata, edges given by transposed pullbacks.
TrackResult weight_side(const SncdScenario& s, Track t);
/// Decalage of the pole-order filtration on the explicit model.
TrackResult pole_order_side(const P1Arrangement& arr, Track t);
/// Throws if the scenario has no explicit line.
TrackResult pole_order_side(const SncdScenario& s, Track t);

// ---------------------------------------------------------------------------
// Dual complex and weight zero.

struct SimplicialComplexT {
    int vertices = 0;
    std::set<Mask> faces;  // nonempty faces, closed under nonempty subsets
};
/// Faces are the subsets with a nonempty stratum.
SimplicialComplexT dual_complex(const SncdScenario& s);
std::map<int, std::size_t> reduced_cohomology(const SimplicialComplexT& d, const Field& f);
/// H^{s+1} of the total fibre below corresponds to reduced H^s of the dual complex.
constexpr int kDualComplexOffset = 1;
/// Total fibre of I -> H^0(D_I, O), edges the (0, 0) pullbacks.
Complex grw0_compactly_supported(const SncdScenario& s);

/// (i, j) -> dim Gr^W_{i+j} H^{i+j} of the j-th Hodge piece of the projective
/// cone over X. Throws unless dim X >= 1 and h^{00} = 1. Also throws if some
/// class lands off the diagonal w = m.
Table cone_weights(const HodgeTable& x, const Field& base);
/// The closed form: base at (0, 0), h^{j-1, i-1}(X) at (i, j) otherwise.
Table cone_closed_form(const HodgeTable& x);

}  // namespace logwt
