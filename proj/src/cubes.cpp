#include "logwt/cubes.hpp"

#include <algorithm>
#include <bit>

namespace logwt {

int popcount(Mask s) { return std::popcount(s); }

namespace {

Scalar sign(int e) { return (e % 2 == 0) ? Scalar(1) : Scalar(-1); }

int count_below(Mask u, int j) { return std::popcount(u & ((1u << j) - 1)); }

std::vector<Mask> submasks(Mask j) {
    std::vector<Mask> out;
    for (Mask u = 0; u <= j; ++u)
        if ((u & ~j) == 0) out.push_back(u);
    return out;
}

// Totalization of the face U -> P(base + U), U inside J.
struct Total {
    const CubeDiagram* p;
    Mask j, base;
    std::vector<Mask> comps;
    Complex complex;

    Total(const CubeDiagram& cube, Mask J, Mask B) : p(&cube), j(J), base(B), comps(submasks(J)) {
        const Field& f = cube.vertex(0).field();
        int lo = 0, hi = -1;
        bool any = false;
        for (Mask u : comps) {
            const Complex& v = cube.vertex(base | u);
            if (v.is_zero_support()) continue;
            int a = v.lo() + popcount(u), b = v.hi() + popcount(u);
            lo = any ? std::min(lo, a) : a;
            hi = any ? std::max(hi, b) : b;
            any = true;
        }
        if (!any) {
            complex = Complex(f);
            return;
        }
        std::vector<std::size_t> dims;
        for (int n = lo; n <= hi; ++n) dims.push_back(offset(n, comps.size()));
        std::vector<Mat> ds;
        for (int n = lo; n < hi; ++n) ds.push_back(differential(n));
        complex = Complex(f, lo, dims, ds);
    }

    std::size_t block(int n, std::size_t k) const { return p->vertex(base | comps[k]).dim(n - popcount(comps[k])); }
    std::size_t offset(int n, std::size_t k) const {
        std::size_t o = 0;
        for (std::size_t t = 0; t < k; ++t) o += block(n, t);
        return o;
    }
    std::size_t index(Mask u) const { return static_cast<std::size_t>(std::find(comps.begin(), comps.end(), u) - comps.begin()); }

    Mat differential(int n) const {
        const Field& f = p->vertex(0).field();
        Mat m(f, offset(n + 1, comps.size()), offset(n, comps.size()));
        for (std::size_t k = 0; k < comps.size(); ++k) {
            Mask u = comps[k];
            int deg = n - popcount(u);
            if (block(n, k) == 0) continue;
            const Complex& v = p->vertex(base | u);
            if (block(n + 1, k) > 0) m.set_block(offset(n + 1, k), offset(n, k), v.d(deg).scaled(sign(popcount(u))));
            for (int a = 0; a < p->arity(); ++a) {
                if (!has(j, a) || has(u, a)) continue;
                std::size_t t = index(with(u, a));
                if (block(n + 1, t) == 0) continue;
                m.set_block(offset(n + 1, t), offset(n, k), p->edge(base | u, a).at(deg).scaled(sign(count_below(u, a))));
            }
        }
        return m;
    }
};

void check_square(const CubeDiagram& c, Mask s, int i, int j) {
    ChainMap a = c.edge(with(s, i), j).compose_after(c.edge(s, i));
    ChainMap b = c.edge(with(s, j), i).compose_after(c.edge(s, j));
    const Complex& src = c.vertex(s);
    for (int n = src.lo(); n <= src.hi(); ++n)
        if (a.at(n) != b.at(n))
            throw std::invalid_argument("cube face at vertex " + std::to_string(s) + " on axes " + std::to_string(i) +
                                        "," + std::to_string(j) + " does not commute");
}

}  // namespace

CubeDiagram::CubeDiagram(int r, std::vector<Complex> vertices, std::map<std::pair<Mask, int>, ChainMap> edges)
    : r_(r), vertices_(std::move(vertices)), edges_(std::move(edges)) {
    if (r < 0 || r > 16) throw DimensionError("cube arity out of range");
    if (vertices_.size() != (std::size_t{1} << r)) throw DimensionError("cube needs 2^r vertices");
    for (Mask s = 0; s <= full(); ++s)
        for (int i = 0; i < r; ++i) {
            if (has(s, i)) continue;
            auto it = edges_.find({s, i});
            if (it == edges_.end()) throw DimensionError("cube edge (" + std::to_string(s) + "," + std::to_string(i) + ") missing");
            if (!(it->second.source() == vertices_[s]) || !(it->second.target() == vertices_[with(s, i)]))
                throw DimensionError("cube edge (" + std::to_string(s) + "," + std::to_string(i) + ") has wrong endpoints");
        }
    for (Mask s = 0; s <= full(); ++s)
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j)
                if (!has(s, i) && !has(s, j)) check_square(*this, s, i, j);
}

ChainMap CubeDiagram::map(Mask s, Mask t) const {
    if ((s & ~t) != 0) throw std::invalid_argument("cube map needs S inside T");
    ChainMap m = ChainMap::identity(vertex(s));
    Mask cur = s;
    for (int i = 0; i < r_; ++i) {
        if (has(t, i) && !has(s, i)) {
            m = edge(cur, i).compose_after(m);
            cur = with(cur, i);
        }
    }
    return m;
}

CubeDiagram CubeDiagram::dual() const {
    std::vector<Complex> v;
    for (Mask s = 0; s <= full(); ++s) v.push_back(logwt::dual(vertex(full() & ~s)));
    std::map<std::pair<Mask, int>, ChainMap> e;
    for (Mask s = 0; s <= full(); ++s)
        for (int i = 0; i < r_; ++i)
            if (!has(s, i)) e.emplace(std::make_pair(s, i), logwt::dual(edge(full() & ~with(s, i), i)));
    return CubeDiagram(r_, std::move(v), std::move(e));
}

FilteredCube::FilteredCube(CubeDiagram c, std::vector<FilteredComplex> f) : cube(std::move(c)), filtrations(std::move(f)) {
    if (filtrations.size() != (std::size_t{1} << cube.arity())) throw DimensionError("filtered cube needs 2^r filtrations");
    for (Mask s = 0; s <= cube.full(); ++s) {
        if (!(filtrations[s].ambient() == cube.vertex(s))) throw DimensionError("filtration does not match its vertex");
        for (int i = 0; i < cube.arity(); ++i)
            if (!has(s, i)) edge(s, i);  // throws if levels are not preserved
    }
}

FilteredMap FilteredCube::edge(Mask s, int i) const {
    return FilteredMap(filtrations[s], filtrations[with(s, i)], cube.edge(s, i));
}

// ---------------------------------------------------------------------------

Complex total_fiber(const CubeDiagram& p) { return Total(p, p.full(), 0).complex; }

CubeDiagram cone_along(const CubeDiagram& p, int axis) {
    int r = p.arity();
    if (axis < 0 || axis >= r) throw DimensionError("cone axis out of range");
    auto expand = [&](Mask s) {
        Mask low = s & ((1u << axis) - 1);
        Mask high = (s >> axis) << (axis + 1);
        return low | high;
    };
    auto old_axis = [&](int i) { return i < axis ? i : i + 1; };
    Mask nfull = (1u << (r - 1)) - 1;
    std::vector<Complex> v;
    for (Mask s = 0; s <= nfull; ++s) v.push_back(cone(p.edge(expand(s), axis)));
    std::map<std::pair<Mask, int>, ChainMap> e;
    for (Mask s = 0; s <= nfull; ++s) {
        for (int i = 0; i < r - 1; ++i) {
            if (has(s, i)) continue;
            Mask big = expand(s);
            int oi = old_axis(i);
            const Complex& src = v[s];
            const Complex& tgt = v[with(s, i)];
            const ChainMap& on_y = p.edge(with(big, axis), oi);
            const ChainMap& on_x = p.edge(big, oi);
            std::map<int, Mat> comps;
            for (int n = src.lo(); n <= src.hi(); ++n) {
                Mat m(src.field(), tgt.dim(n), src.dim(n));
                m.set_block(0, 0, on_y.at(n));
                m.set_block(on_y.target().dim(n), on_y.source().dim(n), on_x.at(n + 1));
                comps.emplace(n, std::move(m));
            }
            e.emplace(std::make_pair(s, i), ChainMap(src, tgt, std::move(comps)));
        }
    }
    return CubeDiagram(r - 1, std::move(v), std::move(e));
}

Complex total_cofiber(const CubeDiagram& p, const std::vector<int>& axis_order) {
    std::vector<int> sorted = axis_order;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < p.arity(); ++i)
        if (static_cast<int>(sorted.size()) != p.arity() || sorted[static_cast<std::size_t>(i)] != i)
            throw std::invalid_argument("axis order must be a permutation");
    std::vector<int> remaining(static_cast<std::size_t>(p.arity()));
    for (int i = 0; i < p.arity(); ++i) remaining[static_cast<std::size_t>(i)] = i;
    CubeDiagram cur = p;
    for (int a : axis_order) {
        auto it = std::find(remaining.begin(), remaining.end(), a);
        cur = cone_along(cur, static_cast<int>(it - remaining.begin()));
        remaining.erase(it);
    }
    return cur.vertex(0);
}

Complex total_cofiber(const CubeDiagram& p) {
    std::vector<int> order(static_cast<std::size_t>(p.arity()));
    for (int i = 0; i < p.arity(); ++i) order[static_cast<std::size_t>(i)] = i;
    return total_cofiber(p, order);
}

// ---------------------------------------------------------------------------

namespace {

FilteredComplex filtration_from_levels(const Complex& c, Direction dir, int a, std::vector<Subcomplex> levels) {
    FilteredComplex f(c, Direction::Increasing, a, std::move(levels));
    return dir == Direction::Increasing ? f : f.reversed_direction();
}

FilteredCube cone_along(const FilteredCube& p, int axis) {
    CubeDiagram c = cone_along(p.cube, axis);
    auto expand = [&](Mask s) {
        Mask low = s & ((1u << axis) - 1);
        Mask high = (s >> axis) << (axis + 1);
        return low | high;
    };
    std::vector<FilteredComplex> f;
    for (Mask s = 0; s <= c.full(); ++s) f.push_back(filtered_cone(p.edge(expand(s), axis)));
    return FilteredCube(std::move(c), std::move(f));
}

}  // namespace

FilteredComplex filtered_total_fiber(const FilteredCube& p) {
    Total t(p.cube, p.cube.full(), 0);
    const Complex& c = t.complex;
    Direction dir = p.filtrations[0].direction();
    int lo = p.filtrations[0].window_lo(), hi = p.filtrations[0].window_hi();
    for (const auto& f : p.filtrations) {
        if (f.direction() != dir) throw std::invalid_argument("filtered cube mixes directions");
        lo = std::min(lo, f.window_lo());
        hi = std::max(hi, f.window_hi());
    }
    std::vector<Subcomplex> levels;
    for (int q = lo; q <= hi; ++q) {
        Subcomplex l;
        for (int n = c.lo(); n <= c.hi(); ++n) {
            std::vector<Vec> gens;
            for (std::size_t k = 0; k < t.comps.size(); ++k) {
                Mask u = t.comps[k];
                const Complex& v = p.cube.vertex(u);
                Subspace piece = p.filtrations[u].level(q).at(v, n - popcount(u));
                for (std::size_t b = 0; b < piece.dim(); ++b) {
                    Vec x(c.dim(n));
                    Vec y = piece.vector(b);
                    std::size_t off = t.offset(n, k);
                    for (std::size_t z = 0; z < y.size(); ++z) x[off + z] = y[z];
                    gens.push_back(std::move(x));
                }
            }
            l.spaces.emplace(n, Subspace::span(c.field(), c.dim(n), gens));
        }
        levels.push_back(std::move(l));
    }
    return filtration_from_levels(c, dir, lo, std::move(levels));
}

FilteredComplex filtered_total_cofiber(const FilteredCube& p) {
    FilteredCube cur = p;
    while (cur.cube.arity() > 0) cur = cone_along(cur, 0);
    return cur.filtrations[0];
}

CubeDiagram cube_shift(const CubeDiagram& p) {
    Mask full = p.full();
    std::vector<Total> totals;
    for (Mask s = 0; s <= full; ++s) totals.emplace_back(p, full & ~s, 0);
    std::vector<Complex> v;
    for (const auto& t : totals) v.push_back(t.complex);
    std::map<std::pair<Mask, int>, ChainMap> e;
    for (Mask s = 0; s <= full; ++s) {
        for (int i = 0; i < p.arity(); ++i) {
            if (has(s, i)) continue;
            const Total& src = totals[s];
            const Total& tgt = totals[with(s, i)];
            std::map<int, Mat> comps;
            for (int n = src.complex.lo(); n <= src.complex.hi(); ++n) {
                Mat m(v[s].field(), tgt.complex.dim(n), src.complex.dim(n));
                for (std::size_t k = 0; k < tgt.comps.size(); ++k) {
                    std::size_t ks = src.index(tgt.comps[k]);
                    std::size_t b = tgt.block(n, k);
                    for (std::size_t z = 0; z < b; ++z) m.set(tgt.offset(n, k) + z, src.offset(n, ks) + z, 1);
                }
                comps.emplace(n, std::move(m));
            }
            e.emplace(std::make_pair(s, i), ChainMap(src.complex, tgt.complex, std::move(comps)));
        }
    }
    return CubeDiagram(p.arity(), std::move(v), std::move(e));
}

CubeDiagram cube_unshift(const CubeDiagram& p) {
    Mask full = p.full();
    std::vector<Total> totals;
    for (Mask s = 0; s <= full; ++s) totals.emplace_back(p, s, full & ~s);
    std::vector<Complex> v;
    for (Mask s = 0; s <= full; ++s) v.push_back(shift(totals[s].complex, popcount(s)));
    std::map<std::pair<Mask, int>, ChainMap> e;
    for (Mask s = 0; s <= full; ++s) {
        for (int i = 0; i < p.arity(); ++i) {
            if (has(s, i)) continue;
            const Total& src = totals[s];
            const Total& tgt = totals[with(s, i)];
            int m = popcount(s);
            std::map<int, Mat> comps;
            // Component U of the source goes to U + i, twisted by the elements of
            // U below i and of S below i (the second factor makes faces commute).
            for (int n = v[s].lo(); n <= v[s].hi(); ++n) {
                int ds = n + m;  // degree inside the source totalization
                Mat mat(v[s].field(), v[with(s, i)].dim(n), v[s].dim(n));
                for (std::size_t k = 0; k < src.comps.size(); ++k) {
                    Mask u = src.comps[k];
                    std::size_t kt = tgt.index(with(u, i));
                    std::size_t b = src.block(ds, k);
                    Scalar eps = sign(count_below(u, i) + count_below(s, i));
                    for (std::size_t z = 0; z < b; ++z) mat.set(tgt.offset(ds + 1, kt) + z, src.offset(ds, k) + z, eps);
                }
                comps.emplace(n, std::move(mat));
            }
            e.emplace(std::make_pair(s, i), ChainMap(v[s], v[with(s, i)], std::move(comps)));
        }
    }
    return CubeDiagram(p.arity(), std::move(v), std::move(e));
}

// ---------------------------------------------------------------------------

namespace {

// Inclusion of the subcomplex `small` into `big` (both inside one ambient),
// in the coordinates of their RREF bases.
ChainMap coordinate_map(const Complex& ambient_src, const Subcomplex& src_sub, const Complex& src,
                        const Complex& ambient_tgt, const Subcomplex& tgt_sub, const Complex& tgt, const ChainMap* along) {
    std::map<int, Mat> comps;
    for (int n = ambient_src.lo(); n <= ambient_src.hi(); ++n) {
        Subspace a = src_sub.at(ambient_src, n);
        Subspace b = tgt_sub.at(ambient_tgt, n);
        Mat m(src.field(), b.dim(), a.dim());
        for (std::size_t k = 0; k < a.dim(); ++k) {
            Vec v = a.vector(k);
            if (along) v = along->at(n).apply(v);
            Vec c = b.coordinates(v);
            for (std::size_t z = 0; z < c.size(); ++z) m.set(z, k, c[z]);
        }
        if (m.rows() > 0 || m.cols() > 0) comps.emplace(n, std::move(m));
    }
    return ChainMap(src, tgt, std::move(comps));
}

std::vector<int> coords_of(int r, Mask minus, Mask plus) {
    std::vector<int> x(static_cast<std::size_t>(r), 0);
    for (int i = 0; i < r; ++i) x[static_cast<std::size_t>(i)] = has(minus, i) ? -1 : (has(plus, i) ? 1 : 0);
    return x;
}

}  // namespace

ExactRows kernel_rows(const CubeDiagram& a) {
    ExactRows rows;
    for (Mask s = 0; s <= a.full(); ++s) {
        for (int i = 0; i < a.arity(); ++i) {
            if (has(s, i)) continue;
            const ChainMap& e = a.edge(s, i);
            const Complex& v = a.vertex(s);
            const Complex& w = a.vertex(with(s, i));
            for (int n = w.lo(); n <= w.hi(); ++n)
                if (rank(e.at(n)) != w.dim(n)) throw std::invalid_argument("edge is not surjective in degree " + std::to_string(n));
            Subcomplex ker;
            for (int n = v.lo(); n <= v.hi(); ++n) ker.spaces.emplace(n, kernel_basis(e.at(n)));
            Complex k = realize(v, ker);
            std::map<int, Mat> inc;
            for (int n = v.lo(); n <= v.hi(); ++n) inc.emplace(n, ker.at(v, n).basis().transpose());
            rows.emplace(std::make_pair(s, i), ChainMap(k, v, std::move(inc)));
        }
    }
    return rows;
}

LatticeDiagram extend_by_exact_rows(const CubeDiagram& a, const ExactRows& rows) {
    int r = a.arity();
    // Row exactness: 0 -> K -> A(S) -> A(S + i) -> 0 degreewise.
    std::map<std::pair<Mask, int>, Subcomplex> kernels;
    for (Mask s = 0; s <= a.full(); ++s) {
        for (int i = 0; i < r; ++i) {
            if (has(s, i)) continue;
            auto it = rows.find({s, i});
            if (it == rows.end()) throw std::invalid_argument("row for axis " + std::to_string(i) + " at vertex " + std::to_string(s) + " missing");
            const ChainMap& inc = it->second;
            const ChainMap& e = a.edge(s, i);
            const Complex& v = a.vertex(s);
            if (!(inc.target() == v)) throw std::invalid_argument("row does not map into its vertex");
            Subcomplex img;
            for (int n = std::min(v.lo(), inc.source().lo()); n <= std::max(v.hi(), inc.source().hi()); ++n) {
                Mat m = inc.at(n);
                if (rank(m) != m.cols()) throw std::invalid_argument("row is not injective in degree " + std::to_string(n));
                if (image(m) != kernel_basis(e.at(n))) throw std::invalid_argument("row is not exact in degree " + std::to_string(n));
                if (rank(e.at(n)) != e.at(n).rows()) throw std::invalid_argument("edge is not surjective in degree " + std::to_string(n));
                if (v.dim(n) > 0) img.spaces.emplace(n, image(m));
            }
            kernels.emplace(std::make_pair(s, i), img);
        }
    }
    auto sub_of = [&](Mask minus, Mask plus) {
        const Complex& v = a.vertex(plus);
        Subcomplex out = Subcomplex::whole(v);
        for (int i = 0; i < r; ++i)
            if (has(minus, i)) out = intersect(v, out, kernels.at({plus, i}));
        return out;
    };
    LatticeDiagram l;
    l.r = r;
    std::map<std::vector<int>, std::pair<Mask, Mask>> where;
    std::map<std::vector<int>, Subcomplex> subs;
    for (Mask minus = 0; minus <= a.full(); ++minus) {
        for (Mask plus = 0; plus <= a.full(); ++plus) {
            if (minus & plus) continue;
            auto x = coords_of(r, minus, plus);
            Subcomplex sc = sub_of(minus, plus);
            l.vertices.emplace(x, realize(a.vertex(plus), sc));
            where.emplace(x, std::make_pair(minus, plus));
            subs.emplace(x, sc);
        }
    }
    for (const auto& [x, mp] : where) {
        auto [minus, plus] = mp;
        for (int i = 0; i < r; ++i) {
            if (has(plus, i)) continue;
            std::vector<int> y = x;
            y[static_cast<std::size_t>(i)] += 1;
            const Complex& amb = a.vertex(plus);
            if (has(minus, i)) {
                l.edges.emplace(std::make_pair(x, i), coordinate_map(amb, subs.at(x), l.vertices.at(x), amb, subs.at(y),
                                                                     l.vertices.at(y), nullptr));
            } else {
                const ChainMap& e = a.edge(plus, i);
                l.edges.emplace(std::make_pair(x, i), coordinate_map(amb, subs.at(x), l.vertices.at(x), a.vertex(with(plus, i)),
                                                                     subs.at(y), l.vertices.at(y), &e));
            }
        }
    }
    // Hypercolumns: x(-1) -> x(0) -> x(1) short exact along every axis.
    for (const auto& [x, mp] : where) {
        for (int i = 0; i < r; ++i) {
            if (x[static_cast<std::size_t>(i)] != -1) continue;
            std::vector<int> y = x, z = x;
            y[static_cast<std::size_t>(i)] = 0;
            z[static_cast<std::size_t>(i)] = 1;
            const ChainMap& f = l.edges.at({x, i});
            const ChainMap& g = l.edges.at({y, i});
            const Complex& mid = l.vertices.at(y);
            for (int n = mid.lo(); n <= mid.hi(); ++n) {
                bool ok = rank(f.at(n)) == f.at(n).cols() && rank(g.at(n)) == g.at(n).rows() &&
                          (g.at(n) * f.at(n)).is_zero() && f.at(n).cols() + g.at(n).rows() == mid.dim(n);
                if (!ok) throw std::invalid_argument("hypercolumn along axis " + std::to_string(i) + " is not exact");
            }
        }
    }
    return l;
}

namespace {

CubeDiagram restrict_part(const LatticeDiagram& l, int low) {
    int r = l.r;
    Mask full = (1u << r) - 1;
    auto pt = [&](Mask s) {
        std::vector<int> x(static_cast<std::size_t>(r));
        for (int i = 0; i < r; ++i) x[static_cast<std::size_t>(i)] = has(s, i) ? low + 1 : low;
        return x;
    };
    std::vector<Complex> v;
    for (Mask s = 0; s <= full; ++s) v.push_back(l.vertices.at(pt(s)));
    std::map<std::pair<Mask, int>, ChainMap> e;
    for (Mask s = 0; s <= full; ++s)
        for (int i = 0; i < r; ++i)
            if (!has(s, i)) e.emplace(std::make_pair(s, i), l.edges.at({pt(s), i}));
    return CubeDiagram(r, std::move(v), std::move(e));
}

}  // namespace

CubeDiagram restrict_unshift(const LatticeDiagram& l) { return restrict_part(l, -1); }
CubeDiagram restrict_upper(const LatticeDiagram& l) { return restrict_part(l, 0); }

// ---------------------------------------------------------------------------

namespace {

Mat form_at(const PosetPairing& q, std::size_t a, std::size_t b, int i) {
    const Complex& fb = q.f[b];
    const Complex& ga = q.g[a];
    auto it = q.forms.find({a, b});
    if (it != q.forms.end()) {
        auto jt = it->second.find(i);
        if (jt != it->second.end()) {
            if (jt->second.rows() != fb.dim(i) || jt->second.cols() != ga.dim(q.unit_degree - i))
                throw DimensionError("pairing form has the wrong shape");
            return jt->second;
        }
    }
    return Mat(fb.field(), fb.dim(i), ga.dim(q.unit_degree - i));
}

ChainMap f_map(const PosetPairing& q, std::size_t a, std::size_t b) {
    if (a == b && !q.f_maps.count({a, b})) return ChainMap::identity(q.f[a]);
    return q.f_maps.at({a, b});
}

ChainMap g_map(const PosetPairing& q, std::size_t a, std::size_t b) {
    if (a == b && !q.g_maps.count({a, b})) return ChainMap::identity(q.g[a]);
    return q.g_maps.at({a, b});
}

int degree_lo(const PosetPairing& q) {
    int lo = 0;
    for (const auto& c : q.f) lo = std::min(lo, c.lo());
    for (const auto& c : q.g) lo = std::min(lo, q.unit_degree - c.hi());
    return lo - 1;
}

int degree_hi(const PosetPairing& q) {
    int hi = 0;
    for (const auto& c : q.f) hi = std::max(hi, c.hi());
    for (const auto& c : q.g) hi = std::max(hi, q.unit_degree - c.lo());
    return hi + 1;
}

}  // namespace

bool PosetPairing::is_chain_pairing() const {
    for (std::size_t a = 0; a < size; ++a)
        for (std::size_t b = 0; b < size; ++b) {
            if (!leq[a][b]) continue;
            for (int i = degree_lo(*this); i <= degree_hi(*this); ++i) {
                Mat lhs = f[b].d(i).transpose() * form_at(*this, a, b, i + 1);
                Mat rhs = (form_at(*this, a, b, i) * g[a].d(unit_degree - i - 1)).scaled((i + 1) % 2 == 0 ? 1 : -1);
                if (lhs != rhs) return false;
            }
        }
    return true;
}

bool PosetPairing::is_natural() const {
    // a' <= a <= b <= b' with a' = a or b = b' generates every case.
    for (std::size_t a = 0; a < size; ++a)
        for (std::size_t b = 0; b < size; ++b) {
            if (!leq[a][b]) continue;
            for (std::size_t x = 0; x < size; ++x) {
                // (a, b) -> (x, b) with x <= a, and (a, b) -> (a, x) with b <= x.
                for (int mode = 0; mode < 2; ++mode) {
                    std::size_t a2 = mode == 0 ? x : a, b2 = mode == 0 ? b : x;
                    if (mode == 0 && !leq[x][a]) continue;
                    if (mode == 1 && !leq[b][x]) continue;
                    ChainMap fm = f_map(*this, b, b2);
                    ChainMap gm = g_map(*this, a2, a);
                    for (int i = degree_lo(*this); i <= degree_hi(*this); ++i) {
                        Mat lhs = form_at(*this, a2, b2, i);
                        Mat rhs = fm.at(i).transpose() * form_at(*this, a, b, i) * gm.at(unit_degree - i);
                        if (lhs != rhs) return false;
                    }
                }
            }
        }
    return true;
}

std::vector<ChainMap> pairing_to_dual_transformation(const PosetPairing& q) {
    if (!q.is_chain_pairing()) throw std::invalid_argument("pairing is not compatible with the differentials");
    if (!q.is_natural()) throw std::invalid_argument("pairing violates naturality");
    std::vector<ChainMap> phi;
    for (std::size_t a = 0; a < q.size; ++a) {
        Complex tgt = shift(dual(q.g[a]), -q.unit_degree);
        std::map<int, Mat> comps;
        for (int i = q.f[a].lo(); i <= q.f[a].hi(); ++i) comps.emplace(i, form_at(q, a, a, i).transpose());
        phi.emplace_back(q.f[a], tgt, std::move(comps));
    }
    for (std::size_t a = 0; a < q.size; ++a)
        for (std::size_t b = 0; b < q.size; ++b) {
            if (a == b || !q.leq[a][b]) continue;
            ChainMap left = phi[a].compose_after(f_map(q, a, b));
            ChainMap right = shift(dual(g_map(q, a, b)), -q.unit_degree).compose_after(phi[b]);
            for (int i = degree_lo(q); i <= degree_hi(q); ++i)
                if (left.at(i) != right.at(i)) throw std::invalid_argument("dual transformation is not natural");
        }
    return phi;
}

bool is_perfect(const std::vector<ChainMap>& phi) {
    return std::all_of(phi.begin(), phi.end(), [](const ChainMap& m) { return is_quasi_iso(m); });
}

}  // namespace logwt
