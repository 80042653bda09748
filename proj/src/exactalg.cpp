#include "logwt/exactalg.hpp"

#include <algorithm>
#include <sstream>

namespace logwt {

bool is_prime_number(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Field Field::prime(std::int64_t p) {
    if (!is_prime_number(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
    return Field(Kind::Prime, p);
}

Scalar Field::normalize(const Scalar& a) const {
    if (kind_ == Kind::Rationals) {
        Scalar r(a);
        r.canonicalize();
        return r;
    }
    mpz_class num = a.get_num() % p_;
    mpz_class den = a.get_den() % p_;
    if (den == 0) throw std::domain_error("denominator divisible by the characteristic");
    if (num < 0) num += p_;
    if (den < 0) den += p_;
    if (den != 1) {
        mpz_class inv;
        mpz_class pp(static_cast<long>(p_));
        mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pp.get_mpz_t());
        num = (num * inv) % pp;
    }
    return Scalar(num);
}

Scalar Field::inv(const Scalar& a) const {
    if (a == 0) throw std::domain_error("division by zero");
    if (kind_ == Kind::Rationals) return Scalar(1) / a;
    mpz_class r;
    mpz_class v = a.get_num();
    mpz_class pp(static_cast<long>(p_));
    mpz_invert(r.get_mpz_t(), v.get_mpz_t(), pp.get_mpz_t());
    return Scalar(r);
}

std::string Field::name() const {
    return kind_ == Kind::Rationals ? "Q" : "F" + std::to_string(p_);
}

Field Field::parse(const std::string& s) {
    if (s == "Q") return rationals();
    if (s.size() >= 2 && s[0] == 'F') {
        std::int64_t p = 0;
        try {
            std::size_t used = 0;
            p = std::stoll(s.substr(1), &used);
            if (used != s.size() - 1) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw std::invalid_argument("unknown field '" + s + "'");
        }
        return prime(p);
    }
    throw std::invalid_argument("unknown field '" + s + "'");
}

std::string Field::format(const Scalar& a) const {
    Scalar n = normalize(a);
    if (kind_ == Kind::Prime) return n.get_num().get_str();
    if (n.get_den() == 1) return n.get_num().get_str();
    return n.get_num().get_str() + "/" + n.get_den().get_str();
}

Scalar Field::parse_scalar(const std::string& s) const {
    Scalar v;
    if (v.set_str(s, 10) != 0) throw std::invalid_argument("malformed scalar '" + s + "'");
    if (v.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    v.canonicalize();
    if (kind_ == Kind::Prime) {
        if (v.get_den() != 1 || v < 0 || v >= p_)
            throw std::invalid_argument("prime-field scalar '" + s + "' must be an integer in [0, " + std::to_string(p_) + ")");
    }
    return normalize(v);
}

// ---------------------------------------------------------------------------

Mat::Mat(Field f, std::size_t rows, std::size_t cols) : field_(f), rows_(rows), cols_(cols), data_(rows * cols) {}

Mat::Mat(Field f, std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : field_(f), rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) throw DimensionError("entry count does not match matrix shape");
    for (auto& e : data_) e = field_.normalize(e);
}

Mat Mat::identity(Field f, std::size_t n) {
    Mat m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
    return m;
}

Mat Mat::from_ints(Field f, const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols) {
    if (!rows.empty()) cols = rows[0].size();
    Mat m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw DimensionError("ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, Scalar(static_cast<long>(rows[i][j])));
    }
    return m;
}

Mat Mat::from_rows(Field f, const std::vector<Vec>& rows, std::size_t cols) {
    Mat m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw DimensionError("ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

Vec Mat::row(std::size_t i) const {
    return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
               data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vec Mat::col(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = data_[i * cols_ + j];
    return v;
}

bool Mat::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s == 0; });
}

Mat Mat::transpose() const {
    Mat t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = data_[i * cols_ + j];
    return t;
}

Mat Mat::operator*(const Mat& b) const {
    if (cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
    Mat r(field_, rows_, b.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& a = data_[i * cols_ + k];
            if (a == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const Scalar& bb = b.data_[k * b.cols_ + j];
                if (bb != 0) r.data_[i * b.cols_ + j] += a * bb;
            }
        }
    }
    for (auto& e : r.data_) e = field_.normalize(e);
    return r;
}

Vec Mat::apply(const Vec& v) const {
    if (v.size() != cols_) throw DimensionError("matrix-vector shape mismatch");
    Vec r(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Scalar acc = 0;
        for (std::size_t j = 0; j < cols_; ++j)
            if (data_[i * cols_ + j] != 0 && v[j] != 0) acc += data_[i * cols_ + j] * v[j];
        r[i] = field_.normalize(acc);
    }
    return r;
}

Mat Mat::operator+(const Mat& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionError("matrix sum shape mismatch");
    Mat r(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.add(data_[i], b.data_[i]);
    return r;
}

Mat Mat::operator-(const Mat& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionError("matrix difference shape mismatch");
    Mat r(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.sub(data_[i], b.data_[i]);
    return r;
}

Mat Mat::scaled(const Scalar& s) const {
    Mat r(*this);
    for (auto& e : r.data_) e = field_.mul(e, s);
    return r;
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
    Mat b(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b.data_[i * nc + j] = data_[(r0 + i) * cols_ + c0 + j];
    return b;
}

void Mat::set_block(std::size_t r0, std::size_t c0, const Mat& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw DimensionError("block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j) data_[(r0 + i) * cols_ + c0 + j] = b.data_[i * b.cols_ + j];
}

Mat Mat::vstack(const Mat& a, const Mat& b) {
    if (a.cols_ != b.cols_) throw DimensionError("vstack column mismatch");
    Mat r(a.field_, a.rows_ + b.rows_, a.cols_);
    r.set_block(0, 0, a);
    r.set_block(a.rows_, 0, b);
    return r;
}

Mat Mat::hstack(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_) throw DimensionError("hstack row mismatch");
    Mat r(a.field_, a.rows_, a.cols_ + b.cols_);
    r.set_block(0, 0, a);
    r.set_block(0, a.cols_, b);
    return r;
}

Mat Mat::kron(const Mat& a, const Mat& b) {
    Mat r(a.field_, a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j) {
            const Scalar& x = a(i, j);
            if (x == 0) continue;
            for (std::size_t k = 0; k < b.rows_; ++k)
                for (std::size_t l = 0; l < b.cols_; ++l)
                    r.data_[(i * b.rows_ + k) * r.cols_ + j * b.cols_ + l] = a.field_.mul(x, b(k, l));
        }
    return r;
}

bool operator==(const Mat& a, const Mat& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

// ---------------------------------------------------------------------------

RrefResult rref(const Mat& m) {
    const Field& f = m.field();
    std::vector<Vec> rows;
    rows.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        Scalar inv = f.inv(rows[r][c]);
        for (std::size_t j = c; j < m.cols(); ++j)
            if (rows[r][j] != 0) rows[r][j] = f.mul(rows[r][j], inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Scalar factor = rows[i][c];
            for (std::size_t j = c; j < m.cols(); ++j)
                if (rows[r][j] != 0) rows[i][j] = f.sub(rows[i][j], f.mul(factor, rows[r][j]));
        }
        pivots.push_back(c);
        ++r;
    }
    Mat out(f, m.rows(), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (rows[i][j] != 0) out.set(i, j, rows[i][j]);
    return {std::move(out), std::move(pivots)};
}

std::size_t rank(const Mat& m) { return rref(m).pivots.size(); }

Vec zero_vec(const Field&, std::size_t n) { return Vec(n); }

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s == 0; });
}

// ---------------------------------------------------------------------------

Subspace Subspace::span(const Mat& generators) {
    auto r = rref(generators);
    return Subspace(r.reduced.block(0, 0, r.pivots.size(), generators.cols()));
}

Subspace Subspace::span(Field f, std::size_t ambient, const std::vector<Vec>& vectors) {
    return span(Mat::from_rows(f, vectors, ambient));
}

Subspace Subspace::zero(Field f, std::size_t ambient) { return Subspace(Mat(f, 0, ambient)); }

Subspace Subspace::full(Field f, std::size_t ambient) { return Subspace(Mat::identity(f, ambient)); }

std::vector<Vec> Subspace::vectors() const {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis_.row(i));
    return out;
}

bool Subspace::contains(const Vec& v) const {
    if (v.size() != ambient_dim()) throw DimensionError("vector/subspace dimension mismatch");
    // Reduce v against the RREF basis.
    const Field& f = field();
    Vec w = v;
    std::vector<std::size_t> piv;
    for (std::size_t i = 0; i < dim(); ++i) {
        std::size_t j = 0;
        while (basis_(i, j) == 0) ++j;
        piv.push_back(j);
    }
    for (std::size_t i = 0; i < piv.size(); ++i) {
        if (w[piv[i]] == 0) continue;
        Scalar c = w[piv[i]];
        for (std::size_t j = 0; j < w.size(); ++j)
            if (basis_(i, j) != 0) w[j] = f.sub(w[j], f.mul(c, basis_(i, j)));
    }
    return logwt::is_zero(w);
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_dim() != ambient_dim()) throw DimensionError("subspace ambient mismatch");
    for (std::size_t i = 0; i < other.dim(); ++i)
        if (!contains(other.vector(i))) return false;
    return true;
}

Mat Subspace::annihilator() const {
    // Kernel of the basis matrix, as rows: w with B w = 0, so the rows w
    // satisfy w . b = 0 for every basis vector b.
    return kernel_basis(basis_).basis_;
}

Vec Subspace::coordinates(const Vec& v) const {
    // In an RREF basis the coordinates are the entries at the pivot columns.
    if (!contains(v)) throw std::invalid_argument("vector not in subspace");
    Vec x(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        std::size_t j = 0;
        while (basis_(i, j) == 0) ++j;
        x[i] = v[j];
    }
    return x;
}

Subspace kernel_basis(const Mat& m) {
    const Field& f = m.field();
    auto r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : r.pivots) is_pivot[p] = true;
    std::vector<Vec> vecs;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v(m.cols());
        v[free] = 1;
        for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = f.neg(r.reduced(i, free));
        vecs.push_back(std::move(v));
    }
    return Subspace::span(f, m.cols(), vecs);
}

Subspace image(const Mat& m) { return Subspace::span(m.transpose()); }

Subspace image(const Mat& m, const Subspace& u) {
    if (m.cols() != u.ambient_dim()) throw DimensionError("image: map/subspace dimension mismatch");
    return Subspace::span((m * u.basis().transpose()).transpose());
}

Subspace sum(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim() != v.ambient_dim()) throw DimensionError("sum: ambient dimension mismatch");
    return Subspace::span(Mat::vstack(u.basis(), v.basis()));
}

Subspace intersection(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim() != v.ambient_dim()) throw DimensionError("intersection: ambient dimension mismatch");
    // x in U and V  <=>  x in U and annihilator(V) x = 0.
    Mat ann = v.annihilator();
    Mat restricted = ann * u.basis().transpose();  // acts on coordinates in U
    Subspace coeffs = kernel_basis(restricted);
    return Subspace::span(coeffs.basis() * u.basis());
}

Subspace preimage(const Mat& m, const Subspace& u) {
    if (m.rows() != u.ambient_dim()) throw DimensionError("preimage: map/subspace dimension mismatch");
    Mat ann = u.annihilator();
    if (ann.rows() == 0) return Subspace::full(m.field(), m.cols());
    return kernel_basis(ann * m);
}

std::vector<Vec> quotient_basis(const Subspace& v, const Subspace& u) {
    if (u.ambient_dim() != v.ambient_dim()) throw DimensionError("quotient: ambient dimension mismatch");
    if (!v.contains(u)) throw std::invalid_argument("quotient: subspace is not contained in the ambient subspace");
    std::vector<Vec> out;
    Subspace acc = u;
    for (std::size_t i = 0; i < v.dim() && acc.dim() < v.dim(); ++i) {
        Vec b = v.vector(i);
        if (acc.contains(b)) continue;
        out.push_back(b);
        acc = sum(acc, Subspace::span(v.field(), v.ambient_dim(), {b}));
    }
    return out;
}

QuotientCoords::QuotientCoords(const Subspace& v, const Subspace& u) : whole_(v) {
    complement_ = quotient_basis(v, u);
    sub_dim_ = u.dim();
    std::vector<Vec> rows = u.vectors();
    rows.insert(rows.end(), complement_.begin(), complement_.end());
    const Field& f = v.field();
    std::size_t k = rows.size();
    std::size_t n = v.ambient_dim();
    // [B | I] -> [R | E] with R = E B in RREF; since B has full row rank the
    // pivots lie in the first n columns.
    Mat aug(f, k, n + k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.set(i, j, rows[i][j]);
        aug.set(i, n + i, 1);
    }
    auto r = rref(aug);
    solver_ = r.reduced.block(0, n, k, k);
    pivots_ = r.pivots;
}

Vec QuotientCoords::project(const Vec& x) const {
    const Field& f = whole_.field();
    std::size_t k = solver_.rows();
    // coordinates wrt R: c_R[i] = x[pivot_i]; wrt B: c_R * E.
    Vec out(complement_.size());
    for (std::size_t j = sub_dim_; j < k; ++j) {
        Scalar acc = 0;
        for (std::size_t i = 0; i < k; ++i) {
            const Scalar& xi = x[pivots_[i]];
            if (xi != 0 && solver_(i, j) != 0) acc += xi * solver_(i, j);
        }
        out[j - sub_dim_] = f.normalize(acc);
    }
    return out;
}

std::optional<Vec> solve(const Mat& m, const Vec& b) {
    if (b.size() != m.rows()) throw DimensionError("solve: right-hand side has wrong length");
    const Field& f = m.field();
    Mat aug(f, m.rows(), m.cols() + 1);
    aug.set_block(0, 0, m);
    for (std::size_t i = 0; i < m.rows(); ++i) aug.set(i, m.cols(), b[i]);
    auto r = rref(aug);
    Vec x(m.cols());
    for (std::size_t i = 0; i < r.pivots.size(); ++i) {
        if (r.pivots[i] == m.cols()) return std::nullopt;
        x[r.pivots[i]] = r.reduced(i, m.cols());
    }
    return x;
}

std::optional<Mat> inverse(const Mat& m) {
    if (m.rows() != m.cols()) throw DimensionError("inverse of a non-square matrix");
    std::size_t n = m.rows();
    auto r = rref(Mat::hstack(m, Mat::identity(m.field(), n)));
    if (r.pivots.size() < n || (n > 0 && r.pivots[n - 1] >= n)) return std::nullopt;
    return r.reduced.block(0, n, n, n);
}

}  // namespace logwt
