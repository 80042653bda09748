#include "logwt/filtered.hpp"

#include <algorithm>

namespace logwt {

namespace {

// Every degree of the ambient present, so that equality is literal.
Subcomplex normalized(const Complex& c, const Subcomplex& s) {
    Subcomplex out;
    for (int n = c.lo(); n <= c.hi(); ++n) out.spaces.emplace(n, s.at(c, n));
    return out;
}

// Build from internal increasing levels F_a .. F_{a+k}.
FilteredComplex from_levels(const Complex& c, Direction dir, int a, std::vector<Subcomplex> levels) {
    FilteredComplex f(c, Direction::Increasing, a, std::move(levels));
    return dir == Direction::Increasing ? f : f.reversed_direction();
}

// The subspace s of k^m placed at [offset, offset + m) in k^total.
std::vector<Vec> embedded(const Subspace& s, std::size_t total, std::size_t offset) {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        Vec v(total);
        Vec b = s.vector(i);
        for (std::size_t j = 0; j < b.size(); ++j) v[offset + j] = b[j];
        out.push_back(std::move(v));
    }
    return out;
}

Subspace block_sum(const Field& f, const Subspace& x, const Subspace& y) {
    std::size_t total = x.ambient_dim() + y.ambient_dim();
    auto vs = embedded(x, total, 0);
    auto ws = embedded(y, total, x.ambient_dim());
    vs.insert(vs.end(), ws.begin(), ws.end());
    return Subspace::span(f, total, vs);
}

}  // namespace

FilteredComplex::FilteredComplex(Complex ambient, Direction dir, int first, std::vector<Subcomplex> levels)
    : ambient_(std::move(ambient)), dir_(dir) {
    const Complex& c = ambient_;
    if (levels.empty()) levels.push_back(Subcomplex::whole(c));
    if (dir == Direction::Decreasing) std::reverse(levels.begin(), levels.end());
    int lowest = dir == Direction::Increasing ? first : -(first + static_cast<int>(levels.size()) - 1);
    for (auto& l : levels) {
        l = normalized(c, l);
        if (!l.is_closed_in(c)) throw std::invalid_argument("filtration level is not a subcomplex");
    }
    for (std::size_t i = 0; i + 1 < levels.size(); ++i)
        if (!levels[i + 1].contains(c, levels[i])) throw std::invalid_argument("filtration levels are not nested");
    Subcomplex zero = normalized(c, Subcomplex::zero());
    Subcomplex whole = normalized(c, Subcomplex::whole(c));
    if (!(levels.front() == zero)) {
        levels.insert(levels.begin(), zero);
        --lowest;
    }
    if (!(levels.back() == whole)) levels.push_back(whole);
    a_ = lowest;
    b_ = lowest + static_cast<int>(levels.size()) - 1;
    levels_ = std::move(levels);
}

FilteredComplex FilteredComplex::trivial(const Complex& c, int level, Direction dir) {
    if (dir == Direction::Increasing) return FilteredComplex(c, dir, level - 1, {Subcomplex::zero(), Subcomplex::whole(c)});
    return FilteredComplex(c, dir, level, {Subcomplex::whole(c), Subcomplex::zero()});
}

Subcomplex FilteredComplex::level(int p) const {
    if (p <= a_) return levels_.front();
    if (p >= b_) return levels_.back();
    return levels_[static_cast<std::size_t>(p - a_)];
}

std::pair<int, int> FilteredComplex::user_window() const {
    if (dir_ == Direction::Increasing) return {a_, b_};
    return {-b_, -a_};
}

FilteredComplex FilteredComplex::reversed_direction() const {
    FilteredComplex f = *this;
    f.dir_ = dir_ == Direction::Increasing ? Direction::Decreasing : Direction::Increasing;
    return f;
}

FilteredComplex FilteredComplex::shift_levels(int k) const {
    FilteredComplex f = *this;
    f.a_ += k;
    f.b_ += k;
    return f;
}

bool operator==(const FilteredComplex& x, const FilteredComplex& y) {
    if (x.dir_ != y.dir_ || !(x.ambient_ == y.ambient_)) return false;
    int lo = std::min(x.a_, y.a_), hi = std::max(x.b_, y.b_);
    for (int p = lo; p <= hi; ++p)
        if (!(x.level(p) == y.level(p))) return false;
    return true;
}

FilteredMap::FilteredMap(FilteredComplex s, FilteredComplex t, ChainMap m)
    : source(std::move(s)), target(std::move(t)), map(std::move(m)) {
    if (!(map.source() == source.ambient()) || !(map.target() == target.ambient()))
        throw DimensionError("filtered map does not match its filtered complexes");
    if (source.direction() != target.direction()) throw std::invalid_argument("filtered map between opposite directions");
    int lo = std::min(source.window_lo(), target.window_lo());
    int hi = std::max(source.window_hi(), target.window_hi());
    const Complex& S = source.ambient();
    const Complex& T = target.ambient();
    for (int p = lo; p <= hi; ++p) {
        Subcomplex fs = source.level(p), ft = target.level(p);
        for (int n = S.lo(); n <= S.hi(); ++n)
            if (!ft.at(T, n).contains(image(map.at(n), fs.at(S, n))))
                throw std::invalid_argument("map does not preserve filtration level " +
                                            std::to_string(from_internal(source.direction(), p)));
    }
}

// ---------------------------------------------------------------------------

FilteredComplex whitehead_tower(const Complex& c) {
    if (c.is_zero_support()) return FilteredComplex::trivial(c, 0);
    std::vector<Subcomplex> levels;
    for (int j = c.lo() - 1; j <= c.hi(); ++j) levels.push_back(smart_truncate(c, j));
    return FilteredComplex(c, Direction::Increasing, c.lo() - 1, std::move(levels));
}

FilteredComplex decalage(const FilteredComplex& f) {
    const Complex& c = f.ambient();
    if (c.is_zero_support()) return f;
    int a = f.window_lo() + c.lo(), b = f.window_hi() + c.hi() + 1;
    std::vector<Subcomplex> levels;
    for (int p = a; p <= b; ++p) {
        Subcomplex s;
        for (int n = c.lo(); n <= c.hi(); ++n) {
            Subspace here = f.level(p - n).at(c, n);
            Subspace next = f.level(p - n - 1).at(c, n + 1);
            s.spaces.emplace(n, intersection(here, preimage(c.d(n), next)));
        }
        levels.push_back(std::move(s));
    }
    return from_levels(c, f.direction(), a, std::move(levels));
}

std::map<int, Complex> graded_pieces(const FilteredComplex& f) {
    std::map<int, Complex> out;
    for (int p = f.window_lo() + 1; p <= f.window_hi(); ++p)
        out.emplace(from_internal(f.direction(), p), quotient(f.ambient(), f.level(p), f.level(p - 1)));
    return out;
}

// ---------------------------------------------------------------------------

std::size_t BiGradedPages::dim(int r, int p, int q) const {
    auto it = dims.find({r, p, q});
    return it == dims.end() ? 0 : it->second;
}

std::size_t BiGradedPages::rank(int r, int p, int q) const {
    auto it = d_ranks.find({r, p, q});
    return it == d_ranks.end() ? 0 : it->second;
}

namespace {

// Z_r^s C^n = F^s C^n cap d^{-1}(F^{s+r} C^{n+1}) in the decreasing convention.
class PageSpaces {
public:
    explicit PageSpaces(const FilteredComplex& f) : f_(f) {}

    Subspace dec_level(int s, int n) const { return f_.level(-s).at(f_.ambient(), n); }

    const Subspace& z(int r, int s, int n) {
        auto key = std::make_tuple(r, s, n);
        auto it = z_.find(key);
        if (it != z_.end()) return it->second;
        const Complex& c = f_.ambient();
        Subspace v = intersection(dec_level(s, n), preimage(c.d(n), dec_level(s + r, n + 1)));
        return z_.emplace(key, std::move(v)).first->second;
    }

    // Z_{r-1}^{s+1} + d Z_{r-1}^{s-r+1}.
    Subspace boundary(int r, int s, int n) {
        const Complex& c = f_.ambient();
        return sum(z(r - 1, s + 1, n), image(c.d(n - 1), z(r - 1, s - r + 1, n - 1)));
    }

    const QuotientCoords& page(int r, int s, int n) {
        auto key = std::make_tuple(r, s, n);
        auto it = e_.find(key);
        if (it != e_.end()) return it->second;
        return e_.emplace(key, QuotientCoords(z(r, s, n), boundary(r, s, n))).first->second;
    }

private:
    const FilteredComplex& f_;
    std::map<std::tuple<int, int, int>, Subspace> z_;
    std::map<std::tuple<int, int, int>, QuotientCoords> e_;
};

}  // namespace

BiGradedPages spectral_sequence(const FilteredComplex& f, int r_max) {
    BiGradedPages out;
    out.r_max = r_max;
    const Complex& c = f.ambient();
    if (c.is_zero_support()) return out;
    PageSpaces ps(f);
    // Decreasing F^s is whole for s <= -b and zero for s >= -a.
    int s_lo = -f.window_hi(), s_hi = -f.window_lo() - 1;
    for (int r = 1; r <= r_max; ++r) {
        for (int s = s_lo; s <= s_hi; ++s) {
            for (int n = c.lo(); n <= c.hi(); ++n) {
                const QuotientCoords& e = ps.page(r, s, n);
                if (e.dim() == 0) continue;
                out.dims[{r, s, n - s}] = e.dim();
                if (s + r > s_hi || n + 1 > c.hi()) continue;
                const QuotientCoords& t = ps.page(r, s + r, n + 1);
                if (t.dim() == 0) continue;
                Mat d(c.field(), t.dim(), e.dim());
                Mat dn = c.d(n);
                for (std::size_t i = 0; i < e.dim(); ++i) {
                    Vec col = t.project(dn.apply(e.complement()[i]));
                    for (std::size_t j = 0; j < col.size(); ++j) d.set(j, i, col[j]);
                }
                std::size_t rk = logwt::rank(d);
                if (rk > 0) out.d_ranks[{r, s, n - s}] = rk;
            }
        }
    }
    return out;
}

int stabilization_page(const FilteredComplex& f) { return std::max(1, f.window_hi() - f.window_lo()) + 1; }

Table cohomology_graded_table(const FilteredComplex& f) {
    Table out;
    const Complex& c = f.ambient();
    for (int n = c.lo(); n <= c.hi(); ++n) {
        Subspace z = kernel_basis(c.d(n));
        Subspace b = image(c.d(n - 1));
        std::size_t prev = b.dim();
        for (int p = f.window_lo() + 1; p <= f.window_hi(); ++p) {
            std::size_t cur = sum(intersection(z, f.level(p).at(c, n)), b).dim();
            if (cur > prev) out[{from_internal(f.direction(), p), n}] = cur - prev;
            prev = cur;
        }
    }
    return out;
}

Table e1_table(const FilteredComplex& f) {
    Table out;
    for (const auto& [w, g] : graded_pieces(f))
        for (auto [m, d] : cohomology_dims(g)) out[{w, m}] = d;
    return out;
}

std::map<std::tuple<int, int, int>, std::size_t> rank_invariant(const FilteredComplex& f) {
    std::map<std::tuple<int, int, int>, std::size_t> out;
    const Complex& c = f.ambient();
    for (int n = c.lo(); n <= c.hi(); ++n) {
        Subspace z = kernel_basis(c.d(n));
        for (int p = f.window_lo() + 1; p <= f.window_hi(); ++p) {
            Subspace zp = intersection(z, f.level(p).at(c, n));
            for (int q = p; q <= f.window_hi(); ++q) {
                Subspace bq = image(c.d(n - 1), f.level(q).at(c, n - 1));
                std::size_t rk = sum(zp, bq).dim() - bq.dim();
                if (rk > 0) out[{p, q, n}] = rk;
            }
        }
    }
    return out;
}

std::size_t filtered_hom_classes(const FilteredComplex& f, const FilteredComplex& g) {
    if (!(f.field() == g.field())) throw DimensionError("filtered hom between different fields");
    const Complex& C = f.ambient();
    const Complex& D = g.ambient();
    HomComplex h = hom_complex(C, D);
    const Complex& H = h.complex;
    int lo = std::min(f.window_lo(), g.window_lo()), hi = std::max(f.window_hi(), g.window_hi());
    // Filtration-preserving maps of hom degree n: ann(G_p D^{k+n}) f basis(F_p C^k)^T = 0.
    auto preserving = [&](int n) {
        std::vector<Vec> rows;
        auto it = h.blocks.find(n);
        if (it != h.blocks.end()) {
            for (const auto& blk : it->second) {
                int k = blk.source_degree;
                for (int p = lo; p <= hi; ++p) {
                    Subspace src = f.level(p).at(C, k);
                    Subspace tgt = g.level(p).at(D, k + n);
                    if (src.is_zero() || tgt.is_full()) continue;
                    Mat cons = Mat::kron(tgt.annihilator(), src.basis());
                    for (std::size_t i = 0; i < cons.rows(); ++i) {
                        Vec row(H.dim(n));
                        for (std::size_t j = 0; j < cons.cols(); ++j) row[blk.offset + j] = cons(i, j);
                        rows.push_back(std::move(row));
                    }
                }
            }
        }
        if (rows.empty()) return Subspace::full(H.field(), H.dim(n));
        return kernel_basis(Mat::from_rows(H.field(), rows, H.dim(n)));
    };
    Subspace s0 = preserving(0), sm1 = preserving(-1);
    Subspace z0 = intersection(s0, kernel_basis(H.d(0)));
    Subspace b0 = image(H.d(-1), sm1);
    return z0.dim() - b0.dim();
}

FilteredComplex diagonal_connective_cover(const FilteredComplex& f) {
    if (f.direction() != Direction::Decreasing)
        throw std::invalid_argument("diagonal connective cover needs a decreasing filtration");
    const Complex& c = f.ambient();
    if (c.is_zero_support()) return f;
    auto [qlo, qhi] = f.user_window();
    int first = std::min(qlo, -c.hi());
    int last = std::max(qhi, -c.lo() + 1);
    std::vector<Subcomplex> levels;
    for (int q = first; q <= last; ++q) {
        Subcomplex fq = f.at(q), s;
        for (int n = c.lo(); n <= std::min(-q, c.hi()); ++n) {
            Subspace v = fq.at(c, n);
            if (n == -q) v = intersection(v, kernel_basis(c.d(n)));
            s.spaces.emplace(n, v);
        }
        levels.push_back(std::move(s));
    }
    return FilteredComplex(c, Direction::Decreasing, first, std::move(levels));
}

bool filtered_quasi_iso(const FilteredMap& f) {
    int lo = std::min(f.source.window_lo(), f.target.window_lo());
    int hi = std::max(f.source.window_hi(), f.target.window_hi());
    for (int p = lo + 1; p <= hi; ++p) {
        ChainMap gr = induced_quotient_map(f.map, f.source.level(p), f.source.level(p - 1), f.target.level(p),
                                           f.target.level(p - 1));
        if (!is_quasi_iso(gr)) return false;
    }
    return true;
}

FilteredComplex filtered_direct_sum(const FilteredComplex& x, const FilteredComplex& y) {
    if (x.direction() != y.direction()) throw std::invalid_argument("direct sum of opposite filtrations");
    const Complex& X = x.ambient();
    const Complex& Y = y.ambient();
    Complex s = direct_sum(X, Y);
    int lo = std::min(x.window_lo(), y.window_lo()), hi = std::max(x.window_hi(), y.window_hi());
    std::vector<Subcomplex> levels;
    for (int p = lo; p <= hi; ++p) {
        Subcomplex l;
        for (int n = s.lo(); n <= s.hi(); ++n)
            l.spaces.emplace(n, block_sum(s.field(), x.level(p).at(X, n), y.level(p).at(Y, n)));
        levels.push_back(std::move(l));
    }
    return from_levels(s, x.direction(), lo, std::move(levels));
}

FilteredComplex filtered_cone(const FilteredMap& f) {
    const Complex& X = f.source.ambient();
    const Complex& Y = f.target.ambient();
    Complex c = cone(f.map);
    int lo = std::min(f.source.window_lo(), f.target.window_lo());
    int hi = std::max(f.source.window_hi(), f.target.window_hi());
    std::vector<Subcomplex> levels;
    for (int p = lo; p <= hi; ++p) {
        Subcomplex l;
        for (int n = c.lo(); n <= c.hi(); ++n)
            l.spaces.emplace(n, block_sum(c.field(), f.target.level(p).at(Y, n), f.source.level(p).at(X, n + 1)));
        levels.push_back(std::move(l));
    }
    return from_levels(c, f.source.direction(), lo, std::move(levels));
}

FilteredComplex filtered_shift(const FilteredComplex& f, int m) {
    const Complex& c = f.ambient();
    Complex s = shift(c, m);
    std::vector<Subcomplex> levels;
    for (int p = f.window_lo(); p <= f.window_hi(); ++p) {
        Subcomplex l;
        for (int n = s.lo(); n <= s.hi(); ++n) l.spaces.emplace(n, f.level(p).at(c, n + m));
        levels.push_back(std::move(l));
    }
    return from_levels(s, f.direction(), f.window_lo(), std::move(levels));
}

FilteredComplex restrict_filtration(const FilteredComplex& f, const Subcomplex& sub) {
    const Complex& c = f.ambient();
    Complex r = realize(c, sub);
    std::vector<Subcomplex> levels;
    for (int p = f.window_lo(); p <= f.window_hi(); ++p) {
        Subcomplex l;
        for (int n = c.lo(); n <= c.hi(); ++n) {
            Subspace host = sub.at(c, n);
            Subspace v = intersection(f.level(p).at(c, n), host);
            std::vector<Vec> coords;
            for (std::size_t i = 0; i < v.dim(); ++i) coords.push_back(host.coordinates(v.vector(i)));
            l.spaces.emplace(n, Subspace::span(c.field(), host.dim(), coords));
        }
        levels.push_back(std::move(l));
    }
    return from_levels(r, f.direction(), f.window_lo(), std::move(levels));
}

}  // namespace logwt
