#include "logwt/loggeom.hpp"

#include <algorithm>

namespace logwt {

LinePoint parse_line_point(const Field& f, const std::string& s) {
    if (s == "inf" || s == "infinity") return {true, Scalar(0)};
    return {false, f.parse_scalar(s)};
}

std::string format_line_point(const Field& f, const LinePoint& p) { return p.infinity ? "inf" : f.format(p.value); }

P1Arrangement::P1Arrangement(Field f, std::vector<LinePoint> pts) : field(f), points(std::move(pts)) {
    for (auto& p : points)
        if (!p.infinity) p.value = field.normalize(p.value);
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (points[i] == points[j])
                throw std::invalid_argument("repeated point " + format_line_point(field, points[i]));
    if (points.size() > 16) throw std::invalid_argument("too many points");
}

namespace {

Subspace cut_out(const Field& f, std::size_t n, const std::vector<Vec>& rows) {
    if (rows.empty()) return Subspace::full(f, n);
    return kernel_basis(Mat::from_rows(f, rows, n));
}

Vec unit(const Field& f, std::size_t n, std::size_t i) {
    Vec v = zero_vec(f, n);
    v[i] = 1;
    return v;
}

Subspace block_sum(const Field& f, const std::vector<Subspace>& parts) {
    std::size_t n = 0;
    for (const auto& p : parts) n += p.ambient_dim();
    std::vector<Vec> gens;
    std::size_t off = 0;
    for (const auto& p : parts) {
        for (const auto& v : p.vectors()) {
            Vec w = zero_vec(f, n);
            std::copy(v.begin(), v.end(), w.begin() + static_cast<std::ptrdiff_t>(off));
            gens.push_back(std::move(w));
        }
        off += p.ambient_dim();
    }
    return Subspace::span(f, n, gens);
}

Scalar power(const Field& f, const Scalar& a, int e) {
    Scalar base = e < 0 ? f.inv(a) : a;
    Scalar out = f.from_int(1);
    for (int t = 0; t < std::abs(e); ++t) out = f.mul(out, base);
    return out;
}

// First `len` coefficients of 1 / p as a power series, p[0] invertible.
std::vector<Scalar> inverse_series(const Field& f, const std::vector<Scalar>& p, std::size_t len) {
    std::vector<Scalar> c(len, Scalar(0));
    Scalar inv0 = f.inv(p[0]);
    for (std::size_t t = 0; t < len; ++t) {
        Scalar acc = t == 0 ? f.from_int(1) : Scalar(0);
        for (std::size_t u = 1; u <= t && u < p.size(); ++u) acc = f.sub(acc, f.mul(p[u], c[t - u]));
        c[t] = f.mul(acc, inv0);
    }
    return c;
}

// Literal inclusion realize(small) -> realize(big) inside one ambient.
ChainMap inclusion(const Complex& a, const Subcomplex& small, const Subcomplex& big) {
    std::map<int, Mat> comps;
    for (int n = a.lo(); n <= a.hi(); ++n) {
        Subspace s = small.at(a, n), b = big.at(a, n);
        Mat m(a.field(), b.dim(), s.dim());
        for (std::size_t k = 0; k < s.dim(); ++k) {
            Vec c = b.coordinates(s.vector(k));
            for (std::size_t z = 0; z < c.size(); ++z) m.set(z, k, c[z]);
        }
        comps.emplace(n, std::move(m));
    }
    return ChainMap(realize(a, small), realize(a, big), std::move(comps));
}

// An ambient map restricted to a subcomplex, written in its coordinates.
ChainMap restricted(const Complex& a, const Subcomplex& sub, const Complex& target, const std::map<int, Mat>& m) {
    std::map<int, Mat> comps;
    for (int n = a.lo(); n <= a.hi(); ++n) {
        auto it = m.find(n);
        if (it == m.end()) continue;
        comps.emplace(n, it->second * sub.at(a, n).basis().transpose());
    }
    return ChainMap(realize(a, sub), target, std::move(comps));
}

bool degreewise_short_exact(const ChainMap& i, const ChainMap& p) {
    const Complex& mid = i.target();
    int lo = std::min({mid.lo(), i.source().lo(), p.target().lo()});
    int hi = std::max({mid.hi(), i.source().hi(), p.target().hi()});
    for (int n = lo; n <= hi; ++n) {
        Mat a = i.at(n), b = p.at(n);
        if (rank(a) != a.cols() || rank(b) != b.rows()) return false;
        if (!(b * a).is_zero()) return false;
        if (a.cols() + b.rows() != mid.dim(n)) return false;
    }
    return true;
}

}  // namespace

// ---------------------------------------------------------------------------

P1Model::P1Model(P1Arrangement arr) : arr_(std::move(arr)), ambient_(arr_.field) {
    const Field& f = arr_.field;
    window_ = static_cast<int>(arr_.size()) + 2;
    q_ = {f.from_int(1)};
    for (std::size_t i = 0; i < arr_.size(); ++i) {
        const LinePoint& p = arr_.points[i];
        if (p.infinity || p.value == 0) continue;
        finite_.push_back(i);
        std::vector<Scalar> next(q_.size() + 1, Scalar(0));
        for (std::size_t t = 0; t < q_.size(); ++t) {
            next[t + 1] = f.add(next[t + 1], q_[t]);
            next[t] = f.sub(next[t], f.mul(p.value, q_[t]));
        }
        q_ = std::move(next);
    }
    int big_n = window_;
    std::size_t m = finite_.size();
    nf_ = static_cast<std::size_t>(2 * big_n + 1);
    nw_ = static_cast<std::size_t>(2 * big_n) + m + 1;

    // f -> h with f' dx = h dx / Q.
    Mat dmat(f, nw_, nf_);
    for (int i = -big_n; i <= big_n; ++i) {
        if (i == 0) continue;
        for (std::size_t t = 0; t < q_.size(); ++t) {
            std::size_t row = static_cast<std::size_t>(i + static_cast<int>(t) + big_n);
            std::size_t col = static_cast<std::size_t>(i + big_n);
            dmat.set(row, col, f.add(dmat(row, col), f.mul(f.from_int(i), q_[t])));
        }
    }
    Mat d0(f, nf_ + 2 * nw_, 2 * nf_);
    d0.set_block(0, 0, Mat::identity(f, nf_).scaled(-1));
    d0.set_block(0, nf_, Mat::identity(f, nf_));
    d0.set_block(nf_, 0, dmat);
    d0.set_block(nf_ + nw_, nf_, dmat);
    Mat d1(f, nw_, nf_ + 2 * nw_);
    d1.set_block(0, 0, dmat.scaled(-1));
    d1.set_block(0, nf_, Mat::identity(f, nw_).scaled(-1));
    d1.set_block(0, nf_ + nw_, Mat::identity(f, nw_));
    ambient_ = Complex(f, 0, {2 * nf_, nf_ + 2 * nw_, nw_}, {d0, d1});
}

bool P1Model::in_chart(std::size_t point, Chart c) const {
    const LinePoint& p = arr_.points[point];
    if (p.infinity) return c == U1;
    if (p.value == 0) return c == U0;
    return true;
}

Vec P1Model::eval_row(const Scalar& a, std::size_t len, int low) const {
    const Field& f = arr_.field;
    Vec v(len);
    for (std::size_t t = 0; t < len; ++t) v[t] = power(f, a, low + static_cast<int>(t));
    return v;
}

Subspace P1Model::functions(Chart c, Mask vanish) const {
    const Field& f = arr_.field;
    std::vector<Vec> rows;
    std::size_t zero_index = static_cast<std::size_t>(window_);
    for (int i = -window_; i <= window_; ++i) {
        bool drop = (c == U0 && i < 0) || (c == U1 && i > 0);
        if (drop) rows.push_back(unit(f, nf_, static_cast<std::size_t>(i + window_)));
    }
    for (std::size_t p = 0; p < arr_.size(); ++p) {
        if (!has(vanish, static_cast<int>(p)) || !in_chart(p, c)) continue;
        const LinePoint& pt = arr_.points[p];
        if (pt.infinity || pt.value == 0)
            rows.push_back(unit(f, nf_, zero_index));
        else
            rows.push_back(eval_row(pt.value, nf_, -window_));
    }
    return cut_out(f, nf_, rows);
}

Subspace P1Model::forms(Chart c, Mask poles) const {
    const Field& f = arr_.field;
    std::vector<Vec> rows;
    bool pole_at_zero = false, pole_at_inf = false;
    for (std::size_t p = 0; p < arr_.size(); ++p) {
        if (!has(poles, static_cast<int>(p))) continue;
        if (arr_.points[p].infinity) pole_at_inf = true;
        else if (arr_.points[p].value == 0) pole_at_zero = true;
    }
    for (std::size_t p : finite_)
        if (!has(poles, static_cast<int>(p))) rows.push_back(eval_row(arr_.points[p].value, nw_, -window_ - 1));
    int m = static_cast<int>(finite_.size());
    for (int i = -window_ - 1; i <= window_ + m - 1; ++i) {
        bool drop = (c == U0 && i < (pole_at_zero ? -1 : 0)) || (c == U1 && i > m - 2 + (pole_at_inf ? 1 : 0));
        if (drop) rows.push_back(unit(f, nw_, static_cast<std::size_t>(i + window_ + 1)));
    }
    return cut_out(f, nw_, rows);
}

Subcomplex P1Model::log_forms(Mask subset) const {
    const Field& f = arr_.field;
    Subcomplex s;
    s.spaces[0] = block_sum(f, {functions(U0, 0), functions(U1, 0)});
    s.spaces[1] = block_sum(f, {functions(U01, 0), forms(U0, subset), forms(U1, subset)});
    s.spaces[2] = forms(U01, subset);
    return s;
}

Subcomplex P1Model::compact_forms(Mask subset) const {
    const Field& f = arr_.field;
    Subcomplex s;
    s.spaces[0] = block_sum(f, {functions(U0, subset), functions(U1, subset)});
    s.spaces[1] = block_sum(f, {functions(U01, subset), forms(U0, 0), forms(U1, 0)});
    s.spaces[2] = forms(U01, 0);
    return s;
}

Subcomplex P1Model::hodge_part() const {
    const Field& f = arr_.field;
    Subcomplex s;
    s.spaces[1] = block_sum(f, {Subspace::zero(f, nf_), Subspace::full(f, nw_), Subspace::full(f, nw_)});
    s.spaces[2] = Subspace::full(f, nw_);
    return s;
}

namespace {

// Charts containing a point, in the order U0, U1; plus whether U01 contains it.
std::pair<std::size_t, bool> chart_count(const LinePoint& p) {
    if (p.infinity || p.value == 0) return {1, false};
    return {2, true};
}

Complex two_term(const Field& f, int lo, const LinePoint& p) {
    auto [c0, mid] = chart_count(p);
    if (!mid) return Complex(f, lo, {c0}, {});
    return Complex(f, lo, {c0, 1}, {Mat::from_ints(f, {{-1, 1}})});
}

}  // namespace

Complex P1Model::residue_target(std::size_t i) const { return two_term(arr_.field, 1, arr_.points[i]); }
Complex P1Model::value_target(std::size_t i) const { return two_term(arr_.field, 0, arr_.points[i]); }

std::map<int, Mat> P1Model::residue_matrices(std::size_t i) const {
    const Field& f = arr_.field;
    const LinePoint& p = arr_.points[i];
    int m = static_cast<int>(finite_.size());
    Vec res(nw_, Scalar(0));
    if (!p.infinity && p.value != 0) {
        Scalar dq(0);
        for (std::size_t t = 1; t < q_.size(); ++t)
            dq = f.add(dq, f.mul(f.from_int(static_cast<std::int64_t>(t)), power(f, p.value, static_cast<int>(t) - 1)) * q_[t]);
        dq = f.normalize(dq);
        Scalar s = f.inv(dq);
        res = eval_row(p.value, nw_, -window_ - 1);
        for (auto& x : res) x = f.mul(x, s);
    } else if (!p.infinity) {
        // Coefficient of x^{-1} in h / Q at 0.
        auto c = inverse_series(f, q_, nw_ + 1);
        for (int d = -window_ - 1; d <= -1; ++d) res[static_cast<std::size_t>(d + window_ + 1)] = c[static_cast<std::size_t>(-1 - d)];
    } else {
        // Minus the coefficient of x^{-1} in the expansion of h / Q at infinity.
        std::vector<Scalar> rev(q_.rbegin(), q_.rend());
        auto e = inverse_series(f, rev, nw_ + 1);
        for (int d = m - 1; d <= window_ + m - 1; ++d)
            res[static_cast<std::size_t>(d + window_ + 1)] = f.neg(e[static_cast<std::size_t>(d + 1 - m)]);
    }
    auto [c0, mid] = chart_count(p);
    std::map<int, Mat> out;
    out.emplace(0, Mat(f, 0, 2 * nf_));
    Mat r1(f, c0, nf_ + 2 * nw_);
    std::size_t row = 0;
    for (Chart c : {U0, U1}) {
        if (!in_chart(i, c)) continue;
        std::size_t off = nf_ + (c == U0 ? 0 : nw_);
        for (std::size_t t = 0; t < nw_; ++t) r1.set(row, off + t, res[t]);
        ++row;
    }
    out.emplace(1, r1);
    Mat r2(f, mid ? 1 : 0, nw_);
    if (mid)
        for (std::size_t t = 0; t < nw_; ++t) r2.set(0, t, res[t]);
    out.emplace(2, r2);
    return out;
}

std::map<int, Mat> P1Model::value_matrices(std::size_t i) const {
    const Field& f = arr_.field;
    const LinePoint& p = arr_.points[i];
    Vec val = (p.infinity || p.value == 0) ? unit(f, nf_, static_cast<std::size_t>(window_)) : eval_row(p.value, nf_, -window_);
    auto [c0, mid] = chart_count(p);
    std::map<int, Mat> out;
    Mat v0(f, c0, 2 * nf_);
    std::size_t row = 0;
    for (Chart c : {U0, U1}) {
        if (!in_chart(i, c)) continue;
        std::size_t off = c == U0 ? 0 : nf_;
        for (std::size_t t = 0; t < nf_; ++t) v0.set(row, off + t, val[t]);
        ++row;
    }
    out.emplace(0, v0);
    Mat v1(f, mid ? 1 : 0, nf_ + 2 * nw_);
    if (mid)
        for (std::size_t t = 0; t < nf_; ++t) v1.set(0, t, val[t]);
    out.emplace(1, v1);
    out.emplace(2, Mat(f, 0, nw_));
    return out;
}

Mat P1Model::trace_form(int i) const {
    const Field& f = arr_.field;
    auto c = inverse_series(f, q_, static_cast<std::size_t>(2 * window_ + 2));
    // T[f index][h index] = residue at 0 of x^a * x^b dx / Q.
    Mat t(f, nf_, nw_);
    for (int a = -window_; a <= window_; ++a)
        for (int b = -window_ - 1; b <= window_ + static_cast<int>(finite_.size()) - 1; ++b) {
            int e = -1 - a - b;
            if (e >= 0) t.set(static_cast<std::size_t>(a + window_), static_cast<std::size_t>(b + window_ + 1), c[static_cast<std::size_t>(e)]);
        }
    if (i == 0) {
        Mat m(f, 2 * nf_, nw_);
        m.set_block(0, 0, t);  // f0 against the U01 form
        return m;
    }
    if (i == 2) {
        Mat m(f, nw_, 2 * nf_);
        m.set_block(0, nf_, t.transpose());  // U01 form against f1
        return m;
    }
    if (i == 1) {
        Mat m(f, nf_ + 2 * nw_, nf_ + 2 * nw_);
        m.set_block(0, nf_ + nw_, t);                  // g against the U1 form
        m.set_block(nf_, 0, t.transpose().scaled(-1));  // U0 form against g
        return m;
    }
    throw std::invalid_argument("trace form degree out of range");
}

// ---------------------------------------------------------------------------

LogHodgeComplexes p1_log_hodge_complexes(const P1Arrangement& arr) {
    P1Model model(arr);
    const Complex& a = model.ambient();
    Subcomplex whole = model.log_forms(model.all_points());
    Subcomplex regular = model.log_forms(0);
    FilteredComplex pole(a, Direction::Increasing, 0, {regular, whole});
    LogHodgeComplexes out;
    out.de_rham = restrict_filtration(pole, whole);
    Subcomplex upper = intersect(a, whole, model.hodge_part());
    FilteredComplex one = restrict_filtration(pole, upper);
    out.hodge_graded = {FilteredComplex::trivial(quotient(a, whole, upper), 0), one};
    out.hodge_filtered = {out.de_rham, one};
    return out;
}

CompactSide p1_compactly_supported(const P1Arrangement& arr) {
    P1Model model(arr);
    const Complex& a = model.ambient();
    Mask all = model.all_points();
    CompactSide out;
    out.complex = realize(a, model.compact_forms(all));
    for (std::size_t i = 0; i < arr.size(); ++i)
        out.localization.push_back(inclusion(a, model.compact_forms(all), model.compact_forms(all & ~(1u << i))));
    return out;
}

SequenceVerdict residue_sequence(const P1Arrangement& arr, std::size_t i) {
    P1Model model(arr);
    const Complex& a = model.ambient();
    Mask all = model.all_points();
    Mask rest = all & ~(1u << i);
    Subcomplex big = model.log_forms(all), small = model.log_forms(rest), regular = model.log_forms(0);
    Complex target = model.residue_target(i);
    auto res = model.residue_matrices(i);
    SequenceVerdict v;
    v.exact = degreewise_short_exact(inclusion(a, small, big), restricted(a, big, target, res));

    ChainMap res_all(a, target, res);
    ChainMap gr_res = induced_quotient_map(res_all, big, regular, Subcomplex::whole(target), Subcomplex::zero());
    ChainMap gr_inc = induced_quotient_map(ChainMap::identity(a), small, regular, big, regular);
    v.gr_split = degreewise_short_exact(gr_inc, gr_res) && chain_section(gr_res).has_value();
    return v;
}

bool localization_sequence(const P1Arrangement& arr, std::size_t i) {
    P1Model model(arr);
    const Complex& a = model.ambient();
    Mask all = model.all_points();
    Subcomplex small = model.compact_forms(all), big = model.compact_forms(all & ~(1u << i));
    return degreewise_short_exact(inclusion(a, small, big), restricted(a, big, model.value_target(i), model.value_matrices(i)));
}

std::optional<ChainMap> chain_section(const ChainMap& g) {
    const Complex& x = g.source();
    const Complex& y = g.target();
    const Field& f = x.field();
    HomComplex h = hom_complex(y, x);
    std::size_t unknowns = h.complex.dim(0);
    std::vector<Vec> rows;
    Vec rhs;
    Mat dh = h.complex.d(0);
    for (std::size_t r = 0; r < dh.rows(); ++r) {
        rows.push_back(dh.row(r));
        rhs.push_back(Scalar(0));
    }
    std::map<int, HomBlock> by_degree;
    if (h.blocks.count(0))
        for (const auto& b : h.blocks.at(0)) by_degree.emplace(b.source_degree, b);
    for (int n = y.lo(); n <= y.hi(); ++n) {
        std::size_t yn = y.dim(n);
        if (yn == 0) continue;
        auto it = by_degree.find(n);
        Mat gn = g.at(n);
        // g_n s_n = I, with s_n vectorized row-major.
        Mat k = it == by_degree.end() ? Mat(f, yn * yn, 0) : Mat::kron(gn, Mat::identity(f, yn));
        for (std::size_t r = 0; r < yn * yn; ++r) {
            Vec row = zero_vec(f, unknowns);
            if (it != by_degree.end())
                for (std::size_t c = 0; c < k.cols(); ++c) row[it->second.offset + c] = k(r, c);
            rows.push_back(std::move(row));
            rhs.push_back(r / yn == r % yn ? Scalar(1) : Scalar(0));
        }
    }
    if (rows.empty()) return ChainMap::zero(y, x);
    auto sol = solve(Mat::from_rows(f, rows, unknowns), rhs);
    if (!sol) return std::nullopt;
    std::map<int, Mat> comps;
    for (const auto& [n, b] : by_degree) {
        Mat s(f, b.rows, b.cols);
        for (std::size_t r = 0; r < b.rows; ++r)
            for (std::size_t c = 0; c < b.cols; ++c) s.set(r, c, (*sol)[b.offset + r * b.cols + c]);
        comps.emplace(n, std::move(s));
    }
    return ChainMap(y, x, std::move(comps));
}

PosetPairing p1_pairing(const P1Arrangement& arr) {
    P1Model model(arr);
    const Complex& a = model.ambient();
    std::size_t size = std::size_t{1} << arr.size();
    PosetPairing q;
    q.size = size;
    q.unit_degree = 2;
    q.leq.assign(size, std::vector<bool>(size, false));
    std::vector<Subcomplex> logs, comps;
    for (std::size_t s = 0; s < size; ++s) {
        logs.push_back(model.log_forms(static_cast<Mask>(s)));
        comps.push_back(model.compact_forms(static_cast<Mask>(s)));
        q.f.push_back(realize(a, logs.back()));
        q.g.push_back(realize(a, comps.back()));
    }
    std::map<int, Mat> trace;
    for (int i = 0; i <= 2; ++i) trace.emplace(i, model.trace_form(i));
    for (std::size_t x = 0; x < size; ++x)
        for (std::size_t y = 0; y < size; ++y) {
            if ((x & y) != y) continue;  // x <= y: the open set of x sits inside that of y
            q.leq[x][y] = true;
            if (x != y) {
                q.f_maps.emplace(std::make_pair(x, y), inclusion(a, logs[y], logs[x]));
                q.g_maps.emplace(std::make_pair(x, y), inclusion(a, comps[x], comps[y]));
            }
            for (int i = 0; i <= 2; ++i) {
                Mat left = logs[y].at(a, i).basis();
                Mat right = comps[x].at(a, 2 - i).basis();
                q.forms[{x, y}][i] = left * trace.at(i) * right.transpose();
            }
        }
    return q;
}

PairingVerdict poincare_pairing_check(const P1Arrangement& arr) {
    PosetPairing q = p1_pairing(arr);
    PairingVerdict v;
    v.poset_size = q.size;
    v.chain = q.is_chain_pairing();
    v.natural = q.is_natural();
    if (v.chain && v.natural) v.perfect = is_perfect(pairing_to_dual_transformation(q));
    return v;
}

}  // namespace logwt
