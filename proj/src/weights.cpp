#include <algorithm>
#include <sstream>

#include "logwt/loggeom.hpp"

namespace logwt {

HodgeTable Stratum::total() const {
    HodgeTable t;
    for (const auto& c : components)
        for (const auto& [pq, d] : c)
            if (d) t[pq] += d;
    return t;
}

HodgeTable SncdScenario::table(Mask i) const {
    auto it = strata.find(i);
    return it == strata.end() ? HodgeTable{} : it->second.total();
}

namespace {

std::size_t entry(const HodgeTable& t, int p, int q) {
    auto it = t.find({p, q});
    return it == t.end() ? 0 : it->second;
}

std::string subset_name(Mask s) {
    std::ostringstream o;
    o << "{";
    bool first = true;
    for (int i = 0; i < 32; ++i)
        if (has(s, i)) {
            o << (first ? "" : ",") << i;
            first = false;
        }
    o << "}";
    return o.str();
}

}  // namespace

Mat SncdScenario::pullback(Mask from, Mask to, int p, int q) const {
    auto it = pullbacks.find({from, to, p, q});
    if (it != pullbacks.end()) return it->second;
    return Mat(field, entry(table(to), p, q), entry(table(from), p, q));
}

void validate(const SncdScenario& s) {
    if (s.n < 0) throw ScenarioError("n", "dimension must be nonnegative");
    if (s.r < 0 || s.r > 16) throw ScenarioError("components", "between 0 and 16 components supported");
    Mask full = (1u << s.r) - 1;
    if (!s.strata.count(0) || s.strata.at(0).components.empty())
        throw ScenarioError("strata", "the stratum of the empty subset (X itself) is required");
    for (const auto& [i, st] : s.strata) {
        if ((i & ~full) != 0) throw ScenarioError("strata", "subset " + subset_name(i) + " uses an unknown component");
        for (const auto& c : st.components)
            for (const auto& [pq, d] : c)
                if (pq.first < 0 || pq.second < 0)
                    throw ScenarioError("strata" + subset_name(i), "negative Hodge index");
        if (!st.components.empty())
            for (int a = 0; a < s.r; ++a)
                if (has(i, a)) {
                    auto jt = s.strata.find(i & ~(1u << a));
                    if (jt == s.strata.end() || jt->second.components.empty())
                        throw ScenarioError("strata" + subset_name(i), "nonempty stratum inside an empty one");
                }
    }
    auto path = [&](const std::tuple<Mask, Mask, int, int>& key) {
        auto it = s.pullback_index.find(key);
        if (it != s.pullback_index.end()) return "pullbacks[" + std::to_string(it->second) + "]";
        auto [from, to, p, q] = key;
        return "pullbacks(" + subset_name(from) + "->" + subset_name(to) + ",p=" + std::to_string(p) + ",q=" + std::to_string(q) + ")";
    };
    for (const auto& [key, m] : s.pullbacks) {
        auto [from, to, p, q] = key;
        if (((from | to) & ~full) != 0) throw ScenarioError(path(key), "subset uses an unknown component");
        if ((from & to) != from || from == to) throw ScenarioError(path(key) + ".to", "target must strictly contain the source");
        if (m.rows() != entry(s.table(to), p, q) || m.cols() != entry(s.table(from), p, q))
            throw ScenarioError(path(key) + ".matrix", "shape does not match the Hodge tables");
        if (!(m.field() == s.field)) throw ScenarioError(path(key) + ".matrix", "wrong field");
    }
    // Every edge with both ends nonzero needs data.
    std::set<std::pair<int, int>> indices;
    for (const auto& [i, st] : s.strata)
        for (const auto& [pq, d] : st.total()) indices.insert(pq);
    for (Mask from = 0; from <= full; ++from)
        for (int a = 0; a < s.r; ++a) {
            if (has(from, a)) continue;
            Mask to = with(from, a);
            for (auto [p, q] : indices)
                if (entry(s.table(from), p, q) && entry(s.table(to), p, q) && !s.pullbacks.count({from, to, p, q}))
                    throw ScenarioError("pullbacks", "missing " + subset_name(from) + "->" + subset_name(to) + " at (p,q)=(" +
                                                         std::to_string(p) + "," + std::to_string(q) + ")");
        }
    // Strict functoriality: every square commutes, longer pullbacks are composites.
    auto along = [&](Mask from, Mask to, int p, int q) {
        Mat m = Mat::identity(s.field, entry(s.table(from), p, q));
        Mask cur = from;
        for (int a = 0; a < s.r; ++a)
            if (has(to, a) && !has(from, a)) {
                m = s.pullback(cur, with(cur, a), p, q) * m;
                cur = with(cur, a);
            }
        return m;
    };
    for (Mask from = 0; from <= full; ++from)
        for (int a = 0; a < s.r; ++a)
            for (int b = a + 1; b < s.r; ++b) {
                if (has(from, a) || has(from, b)) continue;
                Mask ma = with(from, a), mb = with(from, b), top = with(ma, b);
                for (auto [p, q] : indices) {
                    Mat x = s.pullback(ma, top, p, q) * s.pullback(from, ma, p, q);
                    Mat y = s.pullback(mb, top, p, q) * s.pullback(from, mb, p, q);
                    if (x != y) {
                        std::tuple<Mask, Mask, int, int> key{ma, top, p, q};
                        throw ScenarioError(path(key) + ".matrix", "pullbacks are not functorial on the square " +
                                                                        subset_name(from) + "->" + subset_name(top));
                    }
                }
            }
    for (const auto& [key, m] : s.pullbacks) {
        auto [from, to, p, q] = key;
        if (popcount(to & ~from) >= 2 && m != along(from, to, p, q))
            throw ScenarioError(path(key) + ".matrix", "not the composite of the elementary pullbacks");
    }
    if (s.line) {
        if (!(s.line->field == s.field)) throw ScenarioError("points", "field mismatch");
        if (static_cast<int>(s.line->size()) != s.r || s.n != 1)
            throw ScenarioError("points", "explicit mode needs n = 1 and one component per point");
    }
}

HodgeTable projective_space_table(int n) {
    HodgeTable t;
    for (int p = 0; p <= n; ++p) t[{p, p}] = 1;
    return t;
}

SncdScenario scenario_from_line(const P1Arrangement& arr) {
    SncdScenario s;
    s.field = arr.field;
    s.n = 1;
    s.r = static_cast<int>(arr.size());
    s.strata[0].components.push_back(projective_space_table(1));
    for (int i = 0; i < s.r; ++i) {
        s.strata[1u << i].components.push_back(HodgeTable{{{0, 0}, 1}});
        s.pullbacks.emplace(std::make_tuple(Mask{0}, Mask{1u << i}, 0, 0), Mat::from_ints(arr.field, {{1}}));
    }
    s.line = arr;
    return s;
}

std::string track_name(Track t) {
    switch (t) {
        case Track::DeRham: return "dr";
        case Track::HodgeGraded: return "hodge";
        case Track::HodgeFiltered: return "hodge-filtered";
    }
    return "?";
}

// ---------------------------------------------------------------------------

namespace {

// Which (p, q) classes of a stratum enter a track piece, and in which degree.
struct Selector {
    Track track;
    int index;
    int n;
    std::optional<int> degree(int p, int q) const {
        int j = n - p;
        switch (track) {
            case Track::DeRham: return 2 * n - p - q;
            case Track::HodgeGraded:
                if (j != index) return std::nullopt;
                return n + j - q;
            case Track::HodgeFiltered:
                if (j < index) return std::nullopt;
                return 2 * n - p - q;
        }
        return std::nullopt;
    }
};

// Zero-differential complex of the selected classes; blocks in (p, q) order inside each degree.
struct Layout {
    Complex complex;
    std::map<std::pair<int, int>, std::pair<int, std::size_t>> where;  // (p, q) -> (degree, offset)
};

Layout layout(const Field& f, const HodgeTable& t, const Selector& sel) {
    Layout l;
    std::map<int, std::size_t> dims;
    for (const auto& [pq, d] : t) {
        if (!d) continue;
        auto deg = sel.degree(pq.first, pq.second);
        if (!deg) continue;
        l.where[pq] = {*deg, dims[*deg]};
        dims[*deg] += d;
    }
    if (dims.empty()) {
        l.complex = Complex(f);
        return l;
    }
    int lo = dims.begin()->first, hi = dims.rbegin()->first;
    std::vector<std::size_t> v;
    std::vector<Mat> ds;
    for (int n = lo; n <= hi; ++n) v.push_back(dims.count(n) ? dims[n] : 0);
    for (int n = lo; n < hi; ++n) ds.push_back(Mat(f, v[static_cast<std::size_t>(n + 1 - lo)], v[static_cast<std::size_t>(n - lo)]));
    l.complex = Complex(f, lo, v, ds);
    return l;
}

TrackPiece make_piece(int index, FilteredComplex f) {
    TrackPiece p;
    p.index = index;
    p.graded = cohomology_graded_table(f);
    p.e1 = e1_table(f);
    p.filtered = std::move(f);
    return p;
}

FilteredComplex weight_piece(const SncdScenario& s, const Selector& sel) {
    int r = s.r;
    Mask full = (1u << r) - 1;
    // Vertex S carries the stratum of the complement of S; the terminal vertex is X.
    std::vector<Layout> lay;
    std::vector<Complex> verts;
    for (Mask v = 0; v <= full; ++v) {
        lay.push_back(layout(s.field, s.table(full & ~v), sel));
        verts.push_back(lay.back().complex);
    }
    std::map<std::pair<Mask, int>, ChainMap> edges;
    for (Mask v = 0; v <= full; ++v)
        for (int i = 0; i < r; ++i) {
            if (has(v, i)) continue;
            Mask w = with(v, i);
            Mask big = full & ~v, small = full & ~w;  // stratum I = big maps to I - i = small
            std::map<int, Mat> comps;
            for (int n = verts[v].lo(); n <= verts[v].hi(); ++n) comps.emplace(n, Mat(s.field, verts[w].dim(n), verts[v].dim(n)));
            for (const auto& [pq, at] : lay[v].where) {
                auto jt = lay[w].where.find(pq);
                if (jt == lay[w].where.end()) continue;
                Mat m = s.pullback(small, big, pq.first, pq.second).transpose();
                comps.at(at.first).set_block(jt->second.second, at.second, m);
            }
            edges.emplace(std::make_pair(v, i), ChainMap(verts[v], verts[w], std::move(comps)));
        }
    CubeDiagram cube(r, verts, std::move(edges));
    std::vector<FilteredComplex> towers;
    for (const auto& c : verts) towers.push_back(whitehead_tower(c));
    return filtered_total_cofiber(FilteredCube(std::move(cube), std::move(towers)));
}

}  // namespace

TrackResult weight_side(const SncdScenario& s, Track t) {
    validate(s);
    TrackResult out;
    out.track = t;
    if (t == Track::DeRham) {
        out.pieces.push_back(make_piece(0, weight_piece(s, {t, 0, s.n})));
    } else {
        for (int j = 0; j <= s.n; ++j) out.pieces.push_back(make_piece(j, weight_piece(s, {t, j, s.n})));
    }
    return out;
}

TrackResult pole_order_side(const P1Arrangement& arr, Track t) {
    LogHodgeComplexes lh = p1_log_hodge_complexes(arr);
    TrackResult out;
    out.track = t;
    switch (t) {
        case Track::DeRham: out.pieces.push_back(make_piece(0, decalage(lh.de_rham))); break;
        case Track::HodgeGraded:
            for (std::size_t j = 0; j < lh.hodge_graded.size(); ++j)
                out.pieces.push_back(make_piece(static_cast<int>(j), decalage(lh.hodge_graded[j])));
            break;
        case Track::HodgeFiltered:
            for (std::size_t a = 0; a < lh.hodge_filtered.size(); ++a)
                out.pieces.push_back(make_piece(static_cast<int>(a), decalage(lh.hodge_filtered[a])));
            break;
    }
    return out;
}

TrackResult pole_order_side(const SncdScenario& s, Track t) {
    if (!s.line) throw std::invalid_argument("the pole-order side needs an explicit projective line scenario");
    return pole_order_side(*s.line, t);
}

// ---------------------------------------------------------------------------

SimplicialComplexT dual_complex(const SncdScenario& s) {
    SimplicialComplexT d;
    d.vertices = s.r;
    for (const auto& [i, st] : s.strata)
        if (i != 0 && !st.components.empty()) d.faces.insert(i);
    return d;
}

std::map<int, std::size_t> reduced_cohomology(const SimplicialComplexT& d, const Field& f) {
    // Augmented cochains: degree -1 is the empty face, degree s the faces with s + 1 vertices.
    int top = -1;
    for (Mask x : d.faces) top = std::max(top, popcount(x) - 1);
    std::map<int, std::vector<Mask>> by_dim;
    by_dim[-1] = {0};
    for (Mask x : d.faces) by_dim[popcount(x) - 1].push_back(x);
    std::vector<std::size_t> dims;
    std::vector<Mat> ds;
    for (int s = -1; s <= top; ++s) dims.push_back(by_dim[s].size());
    for (int s = -1; s < top; ++s) {
        const auto& src = by_dim[s];
        const auto& tgt = by_dim[s + 1];
        Mat m(f, tgt.size(), src.size());
        for (std::size_t a = 0; a < tgt.size(); ++a) {
            int t = 0;
            for (int v = 0; v < 32; ++v) {
                if (!has(tgt[a], v)) continue;
                Mask face = tgt[a] & ~(1u << v);
                auto it = std::find(src.begin(), src.end(), face);
                if (it != src.end()) m.set(a, static_cast<std::size_t>(it - src.begin()), t % 2 == 0 ? 1 : -1);
                ++t;
            }
        }
        ds.push_back(m);
    }
    return cohomology_dims(Complex(f, -1, dims, ds));
}

Complex grw0_compactly_supported(const SncdScenario& s) {
    validate(s);
    Mask full = (1u << s.r) - 1;
    std::vector<Complex> verts;
    for (Mask i = 0; i <= full; ++i) verts.push_back(Complex::concentrated(s.field, 0, entry(s.table(i), 0, 0)));
    std::map<std::pair<Mask, int>, ChainMap> edges;
    for (Mask i = 0; i <= full; ++i)
        for (int a = 0; a < s.r; ++a) {
            if (has(i, a)) continue;
            Mask j = with(i, a);
            edges.emplace(std::make_pair(i, a), ChainMap(verts[i], verts[j], {{0, s.pullback(i, j, 0, 0)}}));
        }
    return total_fiber(CubeDiagram(s.r, verts, std::move(edges)));
}

// ---------------------------------------------------------------------------

namespace {

Complex zero_diff(const Field& f, const std::map<int, std::size_t>& dims) {
    if (dims.empty()) return Complex(f);
    int lo = dims.begin()->first, hi = dims.rbegin()->first;
    std::vector<std::size_t> v;
    std::vector<Mat> ds;
    for (int n = lo; n <= hi; ++n) v.push_back(dims.count(n) ? dims.at(n) : 0);
    for (int n = lo; n < hi; ++n) ds.push_back(Mat(f, v[static_cast<std::size_t>(n + 1 - lo)], v[static_cast<std::size_t>(n - lo)]));
    return Complex(f, lo, v, ds);
}

}  // namespace

Table cone_closed_form(const HodgeTable& x) {
    Table t{{{0, 0}, 1}};
    for (const auto& [pq, d] : x)
        if (d) t[{pq.second + 1, pq.first + 1}] += d;
    return t;
}

Table cone_weights(const HodgeTable& x, const Field& base) {
    int n = 0;
    for (const auto& [pq, d] : x)
        if (d) n = std::max({n, pq.first, pq.second});
    if (n < 1) throw std::invalid_argument("the cone needs dim X >= 1");
    if (entry(x, 0, 0) != 1) throw std::invalid_argument("h^{0,0}(X) must be 1");
    Table out;
    for (int j = 0; j <= n + 1; ++j) {
        // Hodge piece j: X, the projective bundle P = X + X(-1), and the vertex point.
        std::map<int, std::size_t> dx, dp;
        for (int q = 0; q <= n + 1; ++q) {
            std::size_t a = entry(x, j, q), b = j >= 1 && q >= 1 ? entry(x, j - 1, q - 1) : 0;
            if (a) dx[j + q] += a;
            if (a + b) dp[j + q] += a + b;
        }
        std::map<int, std::size_t> dpt;
        if (j == 0) dpt[0] = 1;
        Complex cx = zero_diff(base, dx), cp = zero_diff(base, dp), cpt = zero_diff(base, dpt);
        Complex src = direct_sum(cp, cpt);
        // Restriction to the exceptional copy of X: identity on the X part of P,
        // zero on the twist, minus the point class in degree 0.
        std::map<int, Mat> comps;
        for (int m = src.lo(); m <= src.hi(); ++m) {
            Mat r(base, cx.dim(m), src.dim(m));
            for (std::size_t t = 0; t < cx.dim(m); ++t) r.set(t, t, 1);
            if (j == 0 && m == 0) r.set(0, cp.dim(0), -1);
            comps.emplace(m, std::move(r));
        }
        FilteredComplex fsrc = filtered_direct_sum(whitehead_tower(cp), whitehead_tower(cpt));
        FilteredMap fm(fsrc, whitehead_tower(cx), ChainMap(src, cx, std::move(comps)));
        FilteredComplex fib = filtered_shift(filtered_cone(fm), -1);
        for (const auto& [wm, d] : cohomology_graded_table(fib)) {
            if (wm.first != wm.second) throw std::logic_error("cone class off the diagonal");
            out[{wm.second - j, j}] += d;
        }
    }
    return out;
}

}  // namespace logwt
