#pragma once

// Bounded cochain complexes of finite-dimensional vector spaces.
//
// Grading is cohomological: d(n) maps degree n to degree n+1. A connective
// object in homological language corresponds to cohomology in degrees <= 0
// here: the homological cover tau_{>=q} is the cohomological truncation
// tau^{<=-q}, so an increasing Whitehead filtration W_j is tau^{<=j}.

#include <map>
#include <vector>

#include "logwt/exactalg.hpp"

namespace logwt {

class Complex {
public:
    /// The zero complex.
    explicit Complex(Field f = Field::rationals());
    /// dims[i] is the dimension in degree lo + i; diffs[i] is d(lo + i) and
    /// has shape dims[i+1] x dims[i] (the last differential maps to zero and
    /// may be omitted). Throws if shapes are wrong or d o d != 0.
    Complex(Field f, int lo, std::vector<std::size_t> dims, std::vector<Mat> diffs);

    /// dim copies of the field in a single degree.
    static Complex concentrated(Field f, int degree, std::size_t dim);

    const Field& field() const { return field_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    bool is_zero_support() const { return hi_ < lo_; }
    std::size_t dim(int n) const;
    /// Differential out of degree n, shape dim(n+1) x dim(n).
    Mat d(int n) const;
    std::size_t total_dim() const;
    long euler_characteristic() const;

    friend bool operator==(const Complex& a, const Complex& b);

private:
    Field field_;
    int lo_ = 0, hi_ = -1;
    std::vector<std::size_t> dims_;
    std::vector<Mat> d_;
};

/// Family of matrices f(n): source^n -> target^n commuting with d.
class ChainMap {
public:
    ChainMap(Complex source, Complex target, std::map<int, Mat> components);
    static ChainMap identity(const Complex& c);
    static ChainMap zero(const Complex& source, const Complex& target);

    const Complex& source() const { return source_; }
    const Complex& target() const { return target_; }
    /// Component in degree n, shape target.dim(n) x source.dim(n).
    Mat at(int n) const;

    ChainMap compose_after(const ChainMap& first) const;  // this o first

private:
    Complex source_, target_;
    std::map<int, Mat> f_;
};

/// A degreewise choice of subspaces of an ambient complex.
struct Subcomplex {
    std::map<int, Subspace> spaces;  // missing degrees are zero

    Subspace at(const Complex& ambient, int n) const;
    static Subcomplex zero() { return {}; }
    static Subcomplex whole(const Complex& c);
    bool is_closed_in(const Complex& ambient) const;
    bool contains(const Complex& ambient, const Subcomplex& other) const;
    friend bool operator==(const Subcomplex& a, const Subcomplex& b);
};

Subcomplex intersect(const Complex& ambient, const Subcomplex& a, const Subcomplex& b);
Subcomplex add(const Complex& ambient, const Subcomplex& a, const Subcomplex& b);

/// The subcomplex written in coordinates of its RREF bases.
Complex realize(const Complex& ambient, const Subcomplex& sub);
/// big / small with the induced differential (coordinates in QuotientCoords bases).
Complex quotient(const Complex& ambient, const Subcomplex& big, const Subcomplex& small);

/// The map big_s/small_s -> big_t/small_t induced by f. Throws if f does not
/// carry big_s into big_t and small_s into small_t.
ChainMap induced_quotient_map(const ChainMap& f, const Subcomplex& big_s, const Subcomplex& small_s,
                              const Subcomplex& big_t, const Subcomplex& small_t);

struct Cohomology {
    std::size_t dim = 0;
    std::vector<Vec> representatives;  // cocycles, one per basis class
};

Cohomology cohomology(const Complex& c, int n);
/// Nonzero cohomology dimensions by degree.
std::map<int, std::size_t> cohomology_dims(const Complex& c);
bool is_acyclic(const Complex& c);

/// cone(f)^n = target^n + source^{n+1}, d(y, x) = (d y + f x, -d x).
Complex cone(const ChainMap& f);
/// fib(f) = cone(f)[-1].
Complex fiber(const ChainMap& f);
/// Inclusion target -> cone(f) and projection cone(f) -> source[1].
ChainMap cone_inclusion(const ChainMap& f);
bool is_quasi_iso(const ChainMap& f);
/// Same cohomology dimensions in every degree; over a field this is exactly
/// the existence of a quasi-isomorphism.
bool quasi_isomorphic(const Complex& a, const Complex& b);

/// shift(C, m)^n = C^{n+m} with differential (-1)^m d.
Complex shift(const Complex& c, int m);
ChainMap shift(const ChainMap& f, int m);
/// dual(C)^n = (C^{-n})^*, differential (-1)^{n+1} d^T.
Complex dual(const Complex& c);
/// Transposed components; a map A -> B gives dual(B) -> dual(A).
ChainMap dual(const ChainMap& f);
/// Koszul-signed tensor product; blocks ordered by the degree of the left factor.
Complex tensor(const Complex& a, const Complex& b);
Complex direct_sum(const Complex& a, const Complex& b);
ChainMap direct_sum(const ChainMap& f, const ChainMap& g);

/// tau^{<= n}: C^k for k < n, ker d^n in degree n, zero above.
Subcomplex smart_truncate(const Complex& c, int n);

struct HomBlock {
    int source_degree;  // k: the block is Hom(C^k, D^{k+n})
    std::size_t offset, rows, cols;
};

struct HomComplex {
    Complex complex;
    std::map<int, std::vector<HomBlock>> blocks;  // per hom degree n
};

/// Hom^n = prod_k Hom(C^k, D^{k+n}) with d f = d_D f - (-1)^n f d_C. Blocks are
/// vectorized row-major.
HomComplex hom_complex(const Complex& c, const Complex& d);

}  // namespace logwt
