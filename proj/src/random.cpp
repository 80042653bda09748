#include "logwt/random.hpp"

#include <algorithm>

namespace logwt {

Mat random_matrix(const Field& f, Rng& rng, std::size_t rows, std::size_t cols, int spread) {
    std::uniform_int_distribution<int> dist(-spread, spread);
    Mat m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, f.from_int(dist(rng)));
    return m;
}

Mat random_invertible(const Field& f, Rng& rng, std::size_t n) {
    for (;;) {
        Mat m = random_matrix(f, rng, n, n);
        if (rank(m) == n) return m;
    }
}

namespace {

struct Standard {
    std::map<int, std::size_t> h, in, out;
    std::size_t dim(int n) const { return at(h, n) + at(in, n) + at(out, n); }
    static std::size_t at(const std::map<int, std::size_t>& m, int n) {
        auto it = m.find(n);
        return it == m.end() ? 0 : it->second;
    }
    // Standard differential: outgoing pairs in degree n hit incoming pairs in n + 1.
    Mat d(const Field& f, int n) const {
        Mat m(f, dim(n + 1), dim(n));
        for (std::size_t t = 0; t < at(out, n); ++t) m.set(at(h, n + 1) + t, at(h, n) + at(in, n) + t, 1);
        return m;
    }
};

Standard random_layout(Rng& rng, int lo, int hi, std::size_t max_dim, const std::map<int, std::size_t>* fixed_h) {
    Standard s;
    for (int n = lo; n <= hi; ++n) {
        std::size_t in = Standard::at(s.out, n - 1);
        s.in[n] = in;
        std::size_t room = max_dim > in ? max_dim - in : 0;
        std::size_t want_h = fixed_h ? Standard::at(*fixed_h, n) : rng() % 3;
        std::size_t h = std::min(want_h, room);
        if (fixed_h && h < want_h) throw std::invalid_argument("cohomology does not fit the dimension bound");
        room -= h;
        std::size_t o = n < hi ? std::min<std::size_t>(rng() % 3, room) : 0;
        if (fixed_h) {
            std::size_t next_h = Standard::at(*fixed_h, n + 1);
            o = std::min(o, max_dim > next_h ? max_dim - next_h : 0);
        }
        s.h[n] = h;
        s.out[n] = o;
    }
    return s;
}

SplitComplex disguise(const Field& f, Rng& rng, int lo, int hi, const Standard& s) {
    SplitComplex out;
    std::map<int, Mat> g, ginv;
    for (int n = lo; n <= hi; ++n) {
        g.emplace(n, random_invertible(f, rng, s.dim(n)));
        ginv.emplace(n, *inverse(g.at(n)));
    }
    std::vector<std::size_t> dims;
    std::vector<Mat> ds;
    for (int n = lo; n <= hi; ++n) dims.push_back(s.dim(n));
    for (int n = lo; n < hi; ++n) ds.push_back(g.at(n + 1) * s.d(f, n) * ginv.at(n));
    out.complex = Complex(f, lo, dims, ds);
    for (int n = lo; n <= hi; ++n)
        if (s.h.at(n) > 0) out.h[n] = s.h.at(n);
    out.basis_change = g;
    out.pairs_in = s.in;
    return out;
}

}  // namespace

SplitComplex random_split_complex(const Field& f, Rng& rng, int lo, int hi, std::size_t max_dim) {
    return disguise(f, rng, lo, hi, random_layout(rng, lo, hi, max_dim, nullptr));
}

Complex random_complex(const Field& f, Rng& rng, int lo, int hi, std::size_t max_dim) {
    return random_split_complex(f, rng, lo, hi, max_dim).complex;
}

RandomMapCase random_chain_map(const Field& f, Rng& rng, int lo, int hi, std::size_t max_dim) {
    Standard sx = random_layout(rng, lo, hi, max_dim, nullptr);
    Standard sy = rng() % 2 ? random_layout(rng, lo, hi, max_dim, &sx.h) : random_layout(rng, lo, hi, max_dim, nullptr);
    SplitComplex x = disguise(f, rng, lo, hi, sx);
    SplitComplex y = disguise(f, rng, lo, hi, sy);
    bool qi = true;
    std::map<int, Mat> a, s;
    for (int n = lo; n <= hi; ++n) {
        std::size_t hx = sx.h.at(n), hy = sy.h.at(n);
        Mat an = random_matrix(f, rng, hy, hx);
        if (hx != hy || rank(an) != hx) qi = false;
        a.emplace(n, an);
        s.emplace(n, random_matrix(f, rng, sy.dim(n - 1), sx.dim(n)));
    }
    std::map<int, Mat> comps;
    for (int n = lo; n <= hi; ++n) {
        Mat fn(f, sy.dim(n), sx.dim(n));
        fn.set_block(0, 0, a.at(n));
        if (n > lo) fn = fn + sy.d(f, n - 1) * s.at(n);
        if (n < hi) fn = fn + s.at(n + 1) * sx.d(f, n);
        comps.emplace(n, y.basis_change.at(n) * fn * *inverse(x.basis_change.at(n)));
    }
    return {ChainMap(x.complex, y.complex, std::move(comps)), qi};
}

FilteredComplex random_filtration(const Complex& c, Rng& rng, int steps, int first, Direction dir) {
    const Field& f = c.field();
    std::vector<Subcomplex> levels;
    Subcomplex cur;
    for (int i = 0; i < steps; ++i) {
        if (!c.is_zero_support()) {
            int k = static_cast<int>(rng() % 3);
            for (int t = 0; t < k; ++t) {
                int n = c.lo() + static_cast<int>(rng() % static_cast<unsigned>(c.hi() - c.lo() + 1));
                if (c.dim(n) == 0) continue;
                Vec v = random_matrix(f, rng, 1, c.dim(n)).row(0);
                Vec dv = c.d(n).apply(v);
                cur.spaces[n] = sum(cur.at(c, n), Subspace::span(f, c.dim(n), {v}));
                if (c.dim(n + 1) > 0) cur.spaces[n + 1] = sum(cur.at(c, n + 1), Subspace::span(f, c.dim(n + 1), {dv}));
            }
        }
        levels.push_back(cur);
    }
    if (dir == Direction::Decreasing) std::reverse(levels.begin(), levels.end());
    return FilteredComplex(c, dir, first, std::move(levels));
}

CubeDiagram random_cube(const Field& f, Rng& rng, int r, int lo, int hi, std::size_t max_dim, bool surjective_edges) {
    Mask full = (1u << r) - 1;
    struct Piece {
        SplitComplex c;
        Mask bottom, top;
        std::vector<Scalar> scale;
    };
    std::vector<Piece> pieces;
    int count = 1 + static_cast<int>(rng() % 3);
    for (int j = 0; j < count; ++j) {
        Piece pc{random_split_complex(f, rng, lo, hi, max_dim), 0, 0, {}};
        Mask a = static_cast<Mask>(rng() % (full + 1)), b = static_cast<Mask>(rng() % (full + 1));
        pc.bottom = surjective_edges ? 0 : (a & b);
        pc.top = a | b;
        for (int i = 0; i < r; ++i) {
            int v = static_cast<int>(rng() % 5) - 2;
            Scalar c = f.from_int(v);
            if (surjective_edges && c == 0) c = 1;
            pc.scale.push_back(c);
        }
        pieces.push_back(std::move(pc));
    }
    auto active = [&](const Piece& pc, Mask s) { return (s & pc.bottom) == pc.bottom && (s & ~pc.top) == 0; };
    std::vector<Complex> verts;
    std::vector<std::map<int, Mat>> disguise_g, disguise_inv;
    for (Mask s = 0; s <= full; ++s) {
        std::vector<std::size_t> dims;
        for (int n = lo; n <= hi; ++n) {
            std::size_t d = 0;
            for (const auto& pc : pieces)
                if (active(pc, s)) d += pc.c.complex.dim(n);
            dims.push_back(d);
        }
        std::map<int, Mat> g, gi;
        for (int n = lo; n <= hi; ++n) {
            g.emplace(n, random_invertible(f, rng, dims[static_cast<std::size_t>(n - lo)]));
            gi.emplace(n, *inverse(g.at(n)));
        }
        std::vector<Mat> ds;
        for (int n = lo; n < hi; ++n) {
            Mat m(f, dims[static_cast<std::size_t>(n + 1 - lo)], dims[static_cast<std::size_t>(n - lo)]);
            std::size_t ro = 0, co = 0;
            for (const auto& pc : pieces) {
                if (!active(pc, s)) continue;
                m.set_block(ro, co, pc.c.complex.d(n));
                ro += pc.c.complex.dim(n + 1);
                co += pc.c.complex.dim(n);
            }
            ds.push_back(g.at(n + 1) * m * gi.at(n));
        }
        verts.emplace_back(f, lo, dims, ds);
        disguise_g.push_back(std::move(g));
        disguise_inv.push_back(std::move(gi));
    }
    std::map<std::pair<Mask, int>, ChainMap> edges;
    for (Mask s = 0; s <= full; ++s) {
        for (int i = 0; i < r; ++i) {
            if (has(s, i)) continue;
            Mask t = with(s, i);
            std::map<int, Mat> comps;
            for (int n = lo; n <= hi; ++n) {
                Mat m(f, verts[t].dim(n), verts[s].dim(n));
                std::size_t ro = 0, co = 0;
                for (const auto& pc : pieces) {
                    std::size_t k = pc.c.complex.dim(n);
                    bool in_s = active(pc, s), in_t = active(pc, t);
                    if (in_s && in_t) m.set_block(ro, co, Mat::identity(f, k).scaled(pc.scale[static_cast<std::size_t>(i)]));
                    if (in_s) co += k;
                    if (in_t) ro += k;
                }
                comps.emplace(n, disguise_g[t].at(n) * m * disguise_inv[s].at(n));
            }
            edges.emplace(std::make_pair(s, i), ChainMap(verts[s], verts[t], std::move(comps)));
        }
    }
    return CubeDiagram(r, std::move(verts), std::move(edges));
}

}  // namespace logwt
