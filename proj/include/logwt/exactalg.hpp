#pragma once

// Exact linear algebra over the rationals and prime fields.
//
// Matrices are dense and row-major. Column-vector convention throughout: a
// Mat of shape m x n is a linear map from k^n to k^m. Subspaces are stored
// by a basis in reduced row echelon form, so two equal subspaces have equal
// representations.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace logwt {

using Scalar = mpq_class;
using Vec = std::vector<Scalar>;

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Coefficient field: Q or F_p. All arithmetic goes through the field so the
/// same matrix code serves both cases; prime-field values are kept as
/// integers in [0, p).
class Field {
public:
    enum class Kind { Rationals, Prime };

    static Field rationals() { return Field(Kind::Rationals, 0); }
    static Field prime(std::int64_t p);

    Kind kind() const { return kind_; }
    std::int64_t characteristic() const { return p_; }
    bool is_prime() const { return kind_ == Kind::Prime; }

    Scalar normalize(const Scalar& a) const;
    Scalar from_int(std::int64_t v) const { return normalize(Scalar(v)); }
    Scalar add(const Scalar& a, const Scalar& b) const { return normalize(a + b); }
    Scalar sub(const Scalar& a, const Scalar& b) const { return normalize(a - b); }
    Scalar mul(const Scalar& a, const Scalar& b) const { return normalize(a * b); }
    Scalar neg(const Scalar& a) const { return normalize(-a); }
    Scalar inv(const Scalar& a) const;
    Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

    /// "Q" or "F5".
    std::string name() const;
    /// Parses "Q" / "F<p>".
    static Field parse(const std::string& s);

    /// Rationals as "num/den" (or "num" when den = 1), prime-field values as
    /// the integer representative.
    std::string format(const Scalar& a) const;
    Scalar parse_scalar(const std::string& s) const;

    friend bool operator==(const Field& a, const Field& b) { return a.kind_ == b.kind_ && a.p_ == b.p_; }

private:
    Field(Kind k, std::int64_t p) : kind_(k), p_(p) {}
    Kind kind_;
    std::int64_t p_;
};

bool is_prime_number(std::int64_t n);

class Mat {
public:
    Mat() : field_(Field::rationals()) {}
    Mat(Field f, std::size_t rows, std::size_t cols);
    Mat(Field f, std::size_t rows, std::size_t cols, std::vector<Scalar> entries);

    static Mat zero(Field f, std::size_t rows, std::size_t cols) { return Mat(f, rows, cols); }
    static Mat identity(Field f, std::size_t n);
    static Mat from_ints(Field f, const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols = 0);
    static Mat from_rows(Field f, const std::vector<Vec>& rows, std::size_t cols);

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, const Scalar& v) { data_[i * cols_ + j] = field_.normalize(v); }

    Vec row(std::size_t i) const;
    Vec col(std::size_t j) const;
    bool is_zero() const;

    Mat transpose() const;
    Mat operator*(const Mat& b) const;
    Vec apply(const Vec& v) const;
    Mat operator+(const Mat& b) const;
    Mat operator-(const Mat& b) const;
    Mat scaled(const Scalar& s) const;

    /// Copy of rows [r0, r0+nr) and columns [c0, c0+nc).
    Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Mat& b);

    static Mat vstack(const Mat& a, const Mat& b);
    static Mat hstack(const Mat& a, const Mat& b);
    static Mat kron(const Mat& a, const Mat& b);

    friend bool operator==(const Mat& a, const Mat& b);
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

private:
    Field field_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> data_;
};

struct RrefResult {
    Mat reduced;
    std::vector<std::size_t> pivots;
};

RrefResult rref(const Mat& m);
std::size_t rank(const Mat& m);

/// A linear subspace of k^ambient given by an RREF basis (one basis vector per row).
class Subspace {
public:
    Subspace() = default;
    /// Span of the rows of `generators`.
    static Subspace span(const Mat& generators);
    static Subspace span(Field f, std::size_t ambient, const std::vector<Vec>& vectors);
    static Subspace zero(Field f, std::size_t ambient);
    static Subspace full(Field f, std::size_t ambient);

    const Field& field() const { return basis_.field(); }
    std::size_t ambient_dim() const { return basis_.cols(); }
    std::size_t dim() const { return basis_.rows(); }
    const Mat& basis() const { return basis_; }
    Vec vector(std::size_t i) const { return basis_.row(i); }
    std::vector<Vec> vectors() const;

    bool contains(const Vec& v) const;
    bool contains(const Subspace& other) const;
    bool is_zero() const { return dim() == 0; }
    bool is_full() const { return dim() == ambient_dim(); }

    /// Rows whose kernel is this subspace (a basis of the annihilator).
    Mat annihilator() const;

    /// Coordinates of v in the RREF basis; throws if v is not in the subspace.
    Vec coordinates(const Vec& v) const;

    friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

private:
    explicit Subspace(Mat b) : basis_(std::move(b)) {}
    Mat basis_;
};

Subspace kernel_basis(const Mat& m);
Subspace image(const Mat& m);
/// Image of a subspace under a linear map.
Subspace image(const Mat& m, const Subspace& u);
Subspace sum(const Subspace& u, const Subspace& v);
Subspace intersection(const Subspace& u, const Subspace& v);
/// {x : m x in u}.
Subspace preimage(const Mat& m, const Subspace& u);

/// Complement basis of u inside v: vectors of v which, together with u, form a
/// basis of v. Requires u contained in v. The result is deterministic.
std::vector<Vec> quotient_basis(const Subspace& v, const Subspace& u);

/// Splits a subspace pair into coordinates for the quotient v / u.
class QuotientCoords {
public:
    QuotientCoords(const Subspace& v, const Subspace& u);
    std::size_t dim() const { return complement_.size(); }
    const std::vector<Vec>& complement() const { return complement_; }
    /// Coordinates of x (in v) modulo u, in the complement basis.
    Vec project(const Vec& x) const;

private:
    std::vector<Vec> complement_;
    std::size_t sub_dim_ = 0;
    Mat solver_;  // E with R = E B, B = basis of u followed by complement
    std::vector<std::size_t> pivots_;
    Subspace whole_;
};

/// Some x with m x = b, free variables set to zero; nullopt when unsolvable.
std::optional<Vec> solve(const Mat& m, const Vec& b);

/// Inverse of a square matrix; nullopt when singular.
std::optional<Mat> inverse(const Mat& m);

Vec zero_vec(const Field& f, std::size_t n);
bool is_zero(const Vec& v);

}  // namespace logwt
