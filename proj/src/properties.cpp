#include "logwt/properties.hpp"

#include <algorithm>
#include <cmath>

namespace logwt {

namespace {

Field field_for(int t) { return t % 2 == 0 ? Field::rationals() : Field::prime(2); }

}  // namespace

PropertyResult check_decalage_page_shift(Rng& rng, int trials) {
    PropertyResult res{"decalage page shift", 0, 0};
    for (int t = 0; t < trials; ++t) {
        Field f = field_for(t);
        int lo = static_cast<int>(rng() % 3) - 1;
        Complex c = random_complex(f, rng, lo, lo + static_cast<int>(rng() % 4), 6);
        FilteredComplex F = random_filtration(c, rng, 1 + static_cast<int>(rng() % 3), static_cast<int>(rng() % 3) - 1);
        FilteredComplex D = decalage(F);
        int rs = std::max(stabilization_page(F), stabilization_page(D)) + 1;
        BiGradedPages ed = spectral_sequence(D, rs);
        BiGradedPages ef = spectral_sequence(F, rs + 1);
        bool ok = true;
        for (int r = 1; r <= rs && ok; ++r)
            for (int p = -15; p <= 15 && ok; ++p)
                for (int q = -15; q <= 15; ++q)
                    if (ed.dim(r, p, q) != ef.dim(r + 1, 2 * p + q, -p)) {
                        ok = false;
                        break;
                    }
        ++res.trials;
        if (!ok) ++res.failures;
    }
    return res;
}

PropertyResult check_whitehead_hom(Rng& rng, int trials) {
    PropertyResult res{"whitehead full faithfulness", 0, 0};
    for (int t = 0; t < trials; ++t) {
        Field f = field_for(t);
        Complex a = random_complex(f, rng, -1, 1, 4);
        Complex b = random_complex(f, rng, -1, 1, 4);
        auto h = cohomology_dims(hom_complex(a, b).complex);
        std::size_t expect = h.count(0) ? h.at(0) : 0;
        ++res.trials;
        if (filtered_hom_classes(whitehead_tower(a), whitehead_tower(b)) != expect) ++res.failures;
    }
    return res;
}

PropertyResult check_whitehead_essential_image(Rng& rng, int trials) {
    PropertyResult res{"whitehead essential image", 0, 0};
    for (int t = 0; t < trials; ++t) {
        Field f = field_for(t);
        Complex c = random_complex(f, rng, -2, 1, 5);
        std::vector<Subcomplex> levels;
        for (int q = -2; q <= 3; ++q) {
            Subcomplex l = smart_truncate(c, -q);
            int n = -q;
            if (c.dim(n) > 0) {
                Vec x = random_matrix(f, rng, 1, c.dim(n)).row(0);
                l.spaces[n] = sum(l.at(c, n), Subspace::span(f, c.dim(n), {x}));
                if (c.dim(n + 1) > 0) l.spaces[n + 1] = sum(l.at(c, n + 1), Subspace::span(f, c.dim(n + 1), {c.d(n).apply(x)}));
            }
            levels.push_back(l);
        }
        FilteredComplex F(c, Direction::Decreasing, -2, levels);
        FilteredComplex W = whitehead_tower(c).reversed_direction();
        ++res.trials;
        if (!filtered_quasi_iso(FilteredMap(W, F, ChainMap::identity(c)))) ++res.failures;
    }
    return res;
}

PropertyResult check_cube_identities(Rng& rng, int trials) {
    PropertyResult res{"hypercube shift identities", 0, 0};
    const Field fields[] = {Field::rationals(), Field::prime(2), Field::prime(5)};
    for (int t = 0; t < trials; ++t) {
        const Field& f = fields[t % 3];
        int r = 1 + t % 3;
        CubeDiagram p = random_cube(f, rng, r, -1, 1, 3);
        CubeDiagram s = cube_shift(p);
        CubeDiagram u = cube_unshift(p);
        bool ok = quasi_isomorphic(total_cofiber(s), p.vertex(p.full())) &&
                  quasi_isomorphic(shift(s.vertex(0), r), u.vertex(u.full())) &&
                  quasi_isomorphic(shift(total_fiber(p), r), u.vertex(u.full())) &&
                  quasi_isomorphic(total_fiber(u), p.vertex(0));
        CubeDiagram back = cube_unshift(s);
        for (Mask x = 0; x <= p.full() && ok; ++x) ok = quasi_isomorphic(back.vertex(x), p.vertex(x));
        ++res.trials;
        if (!ok) ++res.failures;
    }
    return res;
}

std::vector<PropertyResult> run_property_suites(std::uint64_t seed, double scale) {
    auto n = [&](int base) { return std::max(1, static_cast<int>(std::lround(base * scale))); };
    Rng rng(seed);
    std::vector<PropertyResult> out;
    out.push_back(check_decalage_page_shift(rng, n(200)));
    out.push_back(check_whitehead_hom(rng, n(100)));
    out.push_back(check_whitehead_essential_image(rng, n(20)));
    out.push_back(check_cube_identities(rng, n(50)));
    return out;
}

}  // namespace logwt
