#include "logwt/complexes.hpp"

#include <algorithm>
#include <functional>

namespace logwt {

namespace {

Scalar sign(int e) { return (e % 2 == 0) ? Scalar(1) : Scalar(-1); }

// Assemble a complex on [lo, hi] from per-degree callbacks.
Complex build(const Field& f, int lo, int hi, const std::function<std::size_t(int)>& dim,
              const std::function<Mat(int)>& diff) {
    if (hi < lo) return Complex(f);
    std::vector<std::size_t> dims;
    std::vector<Mat> ds;
    for (int n = lo; n <= hi; ++n) dims.push_back(dim(n));
    for (int n = lo; n < hi; ++n) ds.push_back(diff(n));
    return Complex(f, lo, std::move(dims), std::move(ds));
}

struct Range {
    int lo = 0, hi = -1;
    void include(int a, int b) {
        if (b < a) return;
        if (hi < lo) { lo = a; hi = b; return; }
        lo = std::min(lo, a);
        hi = std::max(hi, b);
    }
};

}  // namespace

// ---------------------------------------------------------------------------

Complex::Complex(Field f) : field_(f) {}

Complex::Complex(Field f, int lo, std::vector<std::size_t> dims, std::vector<Mat> diffs)
    : field_(f), lo_(lo), hi_(lo + static_cast<int>(dims.size()) - 1), dims_(std::move(dims)) {
    if (dims_.empty()) {
        lo_ = 0;
        hi_ = -1;
        if (!diffs.empty()) throw DimensionError("differentials given for an empty complex");
        return;
    }
    if (diffs.size() == dims_.size()) {
        if (diffs.back().rows() != 0 || diffs.back().cols() != dims_.back())
            throw DimensionError("last differential must map to zero");
        diffs.pop_back();
    }
    if (diffs.size() + 1 != dims_.size()) throw DimensionError("wrong number of differentials");
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        if (diffs[i].rows() != dims_[i + 1] || diffs[i].cols() != dims_[i])
            throw DimensionError("differential out of degree " + std::to_string(lo_ + static_cast<int>(i)) +
                                 " has the wrong shape");
        if (!(diffs[i].field() == field_)) throw DimensionError("differential over a different field");
    }
    for (std::size_t i = 0; i + 1 < diffs.size(); ++i)
        if (!(diffs[i + 1] * diffs[i]).is_zero())
            throw std::invalid_argument("d o d != 0 at degree " + std::to_string(lo_ + static_cast<int>(i)));
    d_ = std::move(diffs);
}

Complex Complex::concentrated(Field f, int degree, std::size_t dim) { return Complex(f, degree, {dim}, {}); }

std::size_t Complex::dim(int n) const {
    if (n < lo_ || n > hi_) return 0;
    return dims_[static_cast<std::size_t>(n - lo_)];
}

Mat Complex::d(int n) const {
    if (n >= lo_ && n < hi_) return d_[static_cast<std::size_t>(n - lo_)];
    return Mat(field_, dim(n + 1), dim(n));
}

std::size_t Complex::total_dim() const {
    std::size_t s = 0;
    for (auto x : dims_) s += x;
    return s;
}

long Complex::euler_characteristic() const {
    long s = 0;
    for (int n = lo_; n <= hi_; ++n) s += (n % 2 == 0 ? 1 : -1) * static_cast<long>(dim(n));
    return s;
}

bool operator==(const Complex& a, const Complex& b) {
    if (!(a.field_ == b.field_)) return false;
    Range r;
    r.include(a.lo_, a.hi_);
    r.include(b.lo_, b.hi_);
    for (int n = r.lo; n <= r.hi; ++n) {
        if (a.dim(n) != b.dim(n)) return false;
        if (a.d(n) != b.d(n)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

ChainMap::ChainMap(Complex source, Complex target, std::map<int, Mat> components)
    : source_(std::move(source)), target_(std::move(target)) {
    if (!(source_.field() == target_.field())) throw DimensionError("chain map between different fields");
    Range r;
    r.include(source_.lo(), source_.hi());
    r.include(target_.lo(), target_.hi());
    for (auto& [n, m] : components) {
        if (m.rows() != target_.dim(n) || m.cols() != source_.dim(n))
            throw DimensionError("chain map component in degree " + std::to_string(n) + " has the wrong shape");
        if (!m.is_zero() && (n < r.lo || n > r.hi)) throw DimensionError("chain map component outside support");
    }
    for (int n = r.lo; n <= r.hi; ++n) {
        auto it = components.find(n);
        f_.emplace(n, it != components.end() ? it->second : Mat(source_.field(), target_.dim(n), source_.dim(n)));
    }
    for (int n = r.lo - 1; n <= r.hi; ++n)
        if (at(n + 1) * source_.d(n) != target_.d(n) * at(n))
            throw std::invalid_argument("chain map does not commute with d in degree " + std::to_string(n));
}

ChainMap ChainMap::identity(const Complex& c) {
    std::map<int, Mat> m;
    for (int n = c.lo(); n <= c.hi(); ++n) m.emplace(n, Mat::identity(c.field(), c.dim(n)));
    return ChainMap(c, c, std::move(m));
}

ChainMap ChainMap::zero(const Complex& source, const Complex& target) { return ChainMap(source, target, {}); }

Mat ChainMap::at(int n) const {
    auto it = f_.find(n);
    if (it != f_.end()) return it->second;
    return Mat(source_.field(), target_.dim(n), source_.dim(n));
}

ChainMap ChainMap::compose_after(const ChainMap& first) const {
    if (!(first.target_ == source_)) throw DimensionError("composition of non-composable chain maps");
    std::map<int, Mat> m;
    Range r;
    r.include(first.source_.lo(), first.source_.hi());
    for (int n = r.lo; n <= r.hi; ++n) m.emplace(n, at(n) * first.at(n));
    return ChainMap(first.source_, target_, std::move(m));
}

// ---------------------------------------------------------------------------

Subspace Subcomplex::at(const Complex& ambient, int n) const {
    auto it = spaces.find(n);
    if (it == spaces.end()) return Subspace::zero(ambient.field(), ambient.dim(n));
    if (it->second.ambient_dim() != ambient.dim(n)) throw DimensionError("subcomplex does not fit its ambient");
    return it->second;
}

Subcomplex Subcomplex::whole(const Complex& c) {
    Subcomplex s;
    for (int n = c.lo(); n <= c.hi(); ++n) s.spaces.emplace(n, Subspace::full(c.field(), c.dim(n)));
    return s;
}

bool Subcomplex::is_closed_in(const Complex& ambient) const {
    for (int n = ambient.lo(); n <= ambient.hi(); ++n)
        if (!at(ambient, n + 1).contains(image(ambient.d(n), at(ambient, n)))) return false;
    return true;
}

bool Subcomplex::contains(const Complex& ambient, const Subcomplex& other) const {
    for (int n = ambient.lo(); n <= ambient.hi(); ++n)
        if (!at(ambient, n).contains(other.at(ambient, n))) return false;
    return true;
}

bool operator==(const Subcomplex& a, const Subcomplex& b) {
    auto covered = [](const Subcomplex& x, const Subcomplex& y) {
        for (auto& [n, s] : x.spaces) {
            if (s.is_zero()) continue;
            auto it = y.spaces.find(n);
            if (it == y.spaces.end() || it->second != s) return false;
        }
        return true;
    };
    return covered(a, b) && covered(b, a);
}

Subcomplex intersect(const Complex& ambient, const Subcomplex& a, const Subcomplex& b) {
    Subcomplex s;
    for (int n = ambient.lo(); n <= ambient.hi(); ++n)
        s.spaces.emplace(n, intersection(a.at(ambient, n), b.at(ambient, n)));
    return s;
}

Subcomplex add(const Complex& ambient, const Subcomplex& a, const Subcomplex& b) {
    Subcomplex s;
    for (int n = ambient.lo(); n <= ambient.hi(); ++n) s.spaces.emplace(n, sum(a.at(ambient, n), b.at(ambient, n)));
    return s;
}

Complex realize(const Complex& ambient, const Subcomplex& sub) {
    const Field& f = ambient.field();
    return build(
        f, ambient.lo(), ambient.hi(), [&](int n) { return sub.at(ambient, n).dim(); },
        [&](int n) {
            Subspace src = sub.at(ambient, n), tgt = sub.at(ambient, n + 1);
            Mat m(f, tgt.dim(), src.dim());
            Mat d = ambient.d(n);
            for (std::size_t i = 0; i < src.dim(); ++i) {
                Vec c = tgt.coordinates(d.apply(src.vector(i)));
                for (std::size_t r = 0; r < c.size(); ++r) m.set(r, i, c[r]);
            }
            return m;
        });
}

Complex quotient(const Complex& ambient, const Subcomplex& big, const Subcomplex& small) {
    const Field& f = ambient.field();
    std::map<int, QuotientCoords> q;
    for (int n = ambient.lo(); n <= ambient.hi(); ++n)
        q.emplace(n, QuotientCoords(big.at(ambient, n), small.at(ambient, n)));
    auto qdim = [&](int n) -> std::size_t {
        auto it = q.find(n);
        return it == q.end() ? 0 : it->second.dim();
    };
    return build(f, ambient.lo(), ambient.hi(), qdim, [&](int n) {
        Mat m(f, qdim(n + 1), qdim(n));
        if (m.empty()) return m;
        Mat d = ambient.d(n);
        const auto& src = q.at(n);
        const auto& tgt = q.at(n + 1);
        for (std::size_t i = 0; i < src.dim(); ++i) {
            Vec c = tgt.project(d.apply(src.complement()[i]));
            for (std::size_t r = 0; r < c.size(); ++r) m.set(r, i, c[r]);
        }
        return m;
    });
}

ChainMap induced_quotient_map(const ChainMap& f, const Subcomplex& big_s, const Subcomplex& small_s,
                              const Subcomplex& big_t, const Subcomplex& small_t) {
    const Complex& S = f.source();
    const Complex& T = f.target();
    Complex qs = quotient(S, big_s, small_s);
    Complex qt = quotient(T, big_t, small_t);
    std::map<int, Mat> comps;
    for (int n = std::min(S.lo(), T.lo()); n <= std::max(S.hi(), T.hi()); ++n) {
        Mat fn = f.at(n);
        Subspace bs = big_s.at(S, n), ss = small_s.at(S, n);
        Subspace bt = big_t.at(T, n), st = small_t.at(T, n);
        if (!bt.contains(image(fn, bs)) || !st.contains(image(fn, ss)))
            throw std::invalid_argument("map does not preserve the filtration in degree " + std::to_string(n));
        QuotientCoords qsrc(bs, ss), qtgt(bt, st);
        Mat m(S.field(), qtgt.dim(), qsrc.dim());
        for (std::size_t i = 0; i < qsrc.dim(); ++i) {
            Vec c = qtgt.project(fn.apply(qsrc.complement()[i]));
            for (std::size_t r = 0; r < c.size(); ++r) m.set(r, i, c[r]);
        }
        comps.emplace(n, std::move(m));
    }
    return ChainMap(qs, qt, std::move(comps));
}

// ---------------------------------------------------------------------------

Cohomology cohomology(const Complex& c, int n) {
    Subspace z = kernel_basis(c.d(n));
    Subspace b = image(c.d(n - 1));
    Cohomology h;
    h.representatives = quotient_basis(z, b);
    h.dim = h.representatives.size();
    return h;
}

std::map<int, std::size_t> cohomology_dims(const Complex& c) {
    std::map<int, std::size_t> out;
    for (int n = c.lo(); n <= c.hi(); ++n) {
        std::size_t z = c.dim(n) - rank(c.d(n));
        std::size_t b = rank(c.d(n - 1));
        if (z > b) out[n] = z - b;
    }
    return out;
}

bool is_acyclic(const Complex& c) { return cohomology_dims(c).empty(); }

Complex cone(const ChainMap& f) {
    const Complex& X = f.source();
    const Complex& Y = f.target();
    Range r;
    r.include(Y.lo(), Y.hi());
    r.include(X.lo() - 1, X.hi() - 1);
    return build(
        X.field(), r.lo, r.hi, [&](int n) { return Y.dim(n) + X.dim(n + 1); },
        [&](int n) {
            Mat m(X.field(), Y.dim(n + 1) + X.dim(n + 2), Y.dim(n) + X.dim(n + 1));
            m.set_block(0, 0, Y.d(n));
            m.set_block(0, Y.dim(n), f.at(n + 1));
            m.set_block(Y.dim(n + 1), Y.dim(n), X.d(n + 1).scaled(-1));
            return m;
        });
}

Complex fiber(const ChainMap& f) { return shift(cone(f), -1); }

ChainMap cone_inclusion(const ChainMap& f) {
    Complex c = cone(f);
    const Complex& Y = f.target();
    std::map<int, Mat> m;
    for (int n = Y.lo(); n <= Y.hi(); ++n) {
        Mat inc(Y.field(), c.dim(n), Y.dim(n));
        inc.set_block(0, 0, Mat::identity(Y.field(), Y.dim(n)));
        m.emplace(n, std::move(inc));
    }
    return ChainMap(Y, c, std::move(m));
}

bool is_quasi_iso(const ChainMap& f) { return is_acyclic(cone(f)); }

bool quasi_isomorphic(const Complex& a, const Complex& b) {
    return a.field() == b.field() && cohomology_dims(a) == cohomology_dims(b);
}

Complex shift(const Complex& c, int m) {
    return build(
        c.field(), c.lo() - m, c.hi() - m, [&](int n) { return c.dim(n + m); },
        [&](int n) { return c.d(n + m).scaled(sign(m)); });
}

ChainMap shift(const ChainMap& f, int m) {
    std::map<int, Mat> comps;
    Range r;
    r.include(f.source().lo(), f.source().hi());
    r.include(f.target().lo(), f.target().hi());
    for (int n = r.lo; n <= r.hi; ++n) comps.emplace(n - m, f.at(n));
    return ChainMap(shift(f.source(), m), shift(f.target(), m), std::move(comps));
}

Complex dual(const Complex& c) {
    return build(
        c.field(), -c.hi(), -c.lo(), [&](int n) { return c.dim(-n); },
        [&](int n) { return c.d(-n - 1).transpose().scaled(sign(n + 1)); });
}

ChainMap dual(const ChainMap& f) {
    std::map<int, Mat> comps;
    Range r;
    r.include(f.source().lo(), f.source().hi());
    r.include(f.target().lo(), f.target().hi());
    for (int n = r.lo; n <= r.hi; ++n) comps.emplace(-n, f.at(n).transpose());
    return ChainMap(dual(f.target()), dual(f.source()), std::move(comps));
}

Complex tensor(const Complex& a, const Complex& b) {
    const Field& f = a.field();
    if (a.is_zero_support() || b.is_zero_support()) return Complex(f);
    int lo = a.lo() + b.lo(), hi = a.hi() + b.hi();
    // Offset of the block A^i (x) B^{n-i} inside degree n.
    auto offset = [&](int n, int i) {
        std::size_t o = 0;
        for (int k = a.lo(); k < i; ++k) o += a.dim(k) * b.dim(n - k);
        return o;
    };
    auto dim = [&](int n) { return offset(n, a.hi() + 1); };
    return build(f, lo, hi, dim, [&](int n) {
        Mat m(f, dim(n + 1), dim(n));
        for (int i = a.lo(); i <= a.hi(); ++i) {
            int j = n - i;
            if (a.dim(i) * b.dim(j) == 0) continue;
            std::size_t col = offset(n, i);
            if (a.dim(i + 1) * b.dim(j) > 0)
                m.set_block(offset(n + 1, i + 1), col, Mat::kron(a.d(i), Mat::identity(f, b.dim(j))));
            if (a.dim(i) * b.dim(j + 1) > 0)
                m.set_block(offset(n + 1, i), col, Mat::kron(Mat::identity(f, a.dim(i)), b.d(j)).scaled(sign(i)));
        }
        return m;
    });
}

Complex direct_sum(const Complex& a, const Complex& b) {
    Range r;
    r.include(a.lo(), a.hi());
    r.include(b.lo(), b.hi());
    return build(
        a.field(), r.lo, r.hi, [&](int n) { return a.dim(n) + b.dim(n); },
        [&](int n) {
            Mat m(a.field(), a.dim(n + 1) + b.dim(n + 1), a.dim(n) + b.dim(n));
            m.set_block(0, 0, a.d(n));
            m.set_block(a.dim(n + 1), a.dim(n), b.d(n));
            return m;
        });
}

ChainMap direct_sum(const ChainMap& f, const ChainMap& g) {
    Complex s = direct_sum(f.source(), g.source());
    Complex t = direct_sum(f.target(), g.target());
    std::map<int, Mat> comps;
    Range r;
    r.include(s.lo(), s.hi());
    r.include(t.lo(), t.hi());
    for (int n = r.lo; n <= r.hi; ++n) {
        Mat m(s.field(), t.dim(n), s.dim(n));
        m.set_block(0, 0, f.at(n));
        m.set_block(f.target().dim(n), f.source().dim(n), g.at(n));
        comps.emplace(n, std::move(m));
    }
    return ChainMap(s, t, std::move(comps));
}

Subcomplex smart_truncate(const Complex& c, int n) {
    Subcomplex s;
    for (int k = c.lo(); k <= std::min(n - 1, c.hi()); ++k) s.spaces.emplace(k, Subspace::full(c.field(), c.dim(k)));
    if (n >= c.lo() && n <= c.hi()) s.spaces.emplace(n, kernel_basis(c.d(n)));
    return s;
}

HomComplex hom_complex(const Complex& c, const Complex& d) {
    const Field& f = c.field();
    HomComplex out{Complex(f), {}};
    if (c.is_zero_support() || d.is_zero_support()) return out;
    int lo = d.lo() - c.hi(), hi = d.hi() - c.lo();
    std::map<int, std::size_t> total;
    for (int n = lo; n <= hi; ++n) {
        std::size_t off = 0;
        for (int k = c.lo(); k <= c.hi(); ++k) {
            std::size_t rows = d.dim(k + n), cols = c.dim(k);
            if (rows * cols == 0) continue;
            out.blocks[n].push_back({k, off, rows, cols});
            off += rows * cols;
        }
        total[n] = off;
    }
    auto find = [&](int n, int k) -> const HomBlock* {
        auto it = out.blocks.find(n);
        if (it == out.blocks.end()) return nullptr;
        for (const auto& b : it->second)
            if (b.source_degree == k) return &b;
        return nullptr;
    };
    out.complex = build(
        f, lo, hi, [&](int n) { return total[n]; },
        [&](int n) {
            Mat m(f, total[n + 1], total[n]);
            auto it = out.blocks.find(n);
            if (it == out.blocks.end()) return m;
            for (const auto& b : it->second) {
                int k = b.source_degree;
                if (const HomBlock* t = find(n + 1, k))
                    m.set_block(t->offset, b.offset, Mat::kron(d.d(k + n), Mat::identity(f, b.cols)));
                if (const HomBlock* t = find(n + 1, k - 1))
                    m.set_block(t->offset, b.offset,
                                Mat::kron(Mat::identity(f, b.rows), c.d(k - 1).transpose()).scaled(-sign(n)));
            }
            return m;
        });
    return out;
}

}  // namespace logwt
