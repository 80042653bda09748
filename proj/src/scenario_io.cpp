#include "logwt/scenario_io.hpp"

#include <fstream>

namespace logwt {

namespace {

const Json& need(const Json& j, const std::string& key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) throw ScenarioError(path.empty() ? key : path + "." + key, "missing");
    return j.at(key);
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

int get_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ScenarioError(path, "expected an integer");
    return j.get<int>();
}

const Json& get_array(const Json& j, const std::string& path) {
    if (!j.is_array()) throw ScenarioError(path, "expected an array");
    return j;
}

Mask get_subset(const Json& j, int r, const std::string& path) {
    Mask m = 0;
    const Json& a = get_array(j, path);
    for (std::size_t i = 0; i < a.size(); ++i) {
        int c = get_int(a[i], at(path, i));
        if (c < 0 || c >= r) throw ScenarioError(at(path, i), "component index out of range");
        if (m & (1u << c)) throw ScenarioError(at(path, i), "repeated component");
        m |= 1u << c;
    }
    return m;
}

Scalar get_scalar(const Field& f, const Json& j, const std::string& path) {
    try {
        if (j.is_number_integer()) return f.from_int(j.get<std::int64_t>());
        if (j.is_string()) return f.parse_scalar(j.get<std::string>());
    } catch (const std::exception& e) {
        throw ScenarioError(path, e.what());
    }
    throw ScenarioError(path, "expected a scalar");
}

Mat get_matrix(const Field& f, const Json& j, const std::string& path) {
    const Json& rows = get_array(j, path);
    std::size_t cols = 0;
    std::vector<Scalar> entries;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Json& row = get_array(rows[i], at(path, i));
        if (i == 0) cols = row.size();
        if (row.size() != cols) throw ScenarioError(at(path, i), "ragged matrix");
        for (std::size_t k = 0; k < row.size(); ++k) entries.push_back(get_scalar(f, row[k], at(at(path, i), k)));
    }
    return Mat(f, rows.size(), cols, std::move(entries));
}

HodgeTable get_hodge(const Json& j, const std::string& path) {
    HodgeTable t;
    const Json& a = get_array(j, path);
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::string pi = at(path, i);
        const Json& e = get_array(a[i], pi);
        if (e.size() != 3) throw ScenarioError(pi, "expected [p, q, dim]");
        int p = get_int(e[0], at(pi, 0)), q = get_int(e[1], at(pi, 1)), d = get_int(e[2], at(pi, 2));
        if (p < 0 || q < 0) throw ScenarioError(pi, "negative Hodge index");
        if (d < 0) throw ScenarioError(at(pi, 2), "negative dimension");
        if (t.count({p, q})) throw ScenarioError(pi, "repeated (p, q)");
        if (d) t[{p, q}] = static_cast<std::size_t>(d);
    }
    return t;
}

Json subset_json(Mask m) {
    Json a = Json::array();
    for (int i = 0; i < 32; ++i)
        if (m & (1u << i)) a.push_back(i);
    return a;
}

}  // namespace

SncdScenario scenario_from_json(const Json& j) {
    if (!j.is_object()) throw ScenarioError("", "scenario must be a JSON object");
    if (get_int(need(j, "version", ""), "version") != 1) throw ScenarioError("version", "unsupported version");
    const Json& fj = need(j, "field", "");
    if (!fj.is_string()) throw ScenarioError("field", "expected \"Q\" or \"F<p>\"");
    Field f = Field::rationals();
    try {
        f = Field::parse(fj.get<std::string>());
    } catch (const std::exception& e) {
        throw ScenarioError("field", e.what());
    }
    std::string mode = "tabulated";
    if (j.contains("mode")) {
        if (!j.at("mode").is_string()) throw ScenarioError("mode", "expected a string");
        mode = j.at("mode").get<std::string>();
    }
    std::string name = j.contains("name") && j.at("name").is_string() ? j.at("name").get<std::string>() : "";

    SncdScenario s;
    if (mode == "explicit") {
        for (const char* key : {"strata", "pullbacks"})
            if (j.contains(key)) throw ScenarioError(key, "derived from the points in explicit mode; remove it");
        const Json& pts = get_array(need(j, "points", ""), "points");
        std::vector<LinePoint> lp;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (!pts[i].is_string() && !pts[i].is_number_integer()) throw ScenarioError(at("points", i), "expected a point");
            try {
                lp.push_back(parse_line_point(f, pts[i].is_string() ? pts[i].get<std::string>() : std::to_string(pts[i].get<std::int64_t>())));
            } catch (const std::exception& e) {
                throw ScenarioError(at("points", i), e.what());
            }
        }
        try {
            s = scenario_from_line(P1Arrangement(f, std::move(lp)));
        } catch (const ScenarioError&) {
            throw;
        } catch (const std::exception& e) {
            throw ScenarioError("points", e.what());
        }
        if (j.contains("n") && get_int(j.at("n"), "n") != 1) throw ScenarioError("n", "explicit mode is the projective line");
        if (j.contains("components") && get_int(j.at("components"), "components") != s.r)
            throw ScenarioError("components", "must equal the number of points");
    } else if (mode == "tabulated") {
        if (j.contains("points")) throw ScenarioError("points", "only used in explicit mode");
        s.field = f;
        s.n = get_int(need(j, "n", ""), "n");
        s.r = get_int(need(j, "components", ""), "components");
        if (s.r < 0 || s.r > 16) throw ScenarioError("components", "between 0 and 16 components supported");
        const Json& strata = get_array(need(j, "strata", ""), "strata");
        for (std::size_t i = 0; i < strata.size(); ++i) {
            std::string pi = at("strata", i);
            Mask m = get_subset(need(strata[i], "subset", pi), s.r, join(pi, "subset"));
            if (s.strata.count(m)) throw ScenarioError(join(pi, "subset"), "repeated subset");
            const Json& comps = get_array(need(strata[i], "components", pi), join(pi, "components"));
            Stratum st;
            for (std::size_t c = 0; c < comps.size(); ++c) {
                std::string pc = at(join(pi, "components"), c);
                st.components.push_back(get_hodge(need(comps[c], "hodge", pc), join(pc, "hodge")));
            }
            s.strata.emplace(m, std::move(st));
        }
        const Json empty = Json::array();
        const Json& pbs = j.contains("pullbacks") ? get_array(j.at("pullbacks"), "pullbacks") : empty;
        for (std::size_t i = 0; i < pbs.size(); ++i) {
            std::string pi = at("pullbacks", i);
            Mask from = get_subset(need(pbs[i], "from", pi), s.r, join(pi, "from"));
            Mask to = get_subset(need(pbs[i], "to", pi), s.r, join(pi, "to"));
            int p = get_int(need(pbs[i], "p", pi), join(pi, "p"));
            int q = get_int(need(pbs[i], "q", pi), join(pi, "q"));
            Mat m = get_matrix(f, need(pbs[i], "matrix", pi), join(pi, "matrix"));
            auto key = std::make_tuple(from, to, p, q);
            if (s.pullbacks.count(key)) throw ScenarioError(pi, "repeated pullback");
            s.pullbacks.emplace(key, std::move(m));
            s.pullback_index.emplace(key, i);
        }
    } else {
        throw ScenarioError("mode", "expected \"tabulated\" or \"explicit\"");
    }
    s.name = name;
    validate(s);
    return s;
}

SncdScenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("", "cannot open " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const std::exception& e) {
        throw ScenarioError("", std::string("not valid JSON: ") + e.what());
    }
    return scenario_from_json(j);
}

Json scalar_to_json(const Field& f, const Scalar& a) {
    if (f.is_prime()) return std::stoll(f.format(a));
    return f.format(a);
}

Json matrix_to_json(const Mat& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(scalar_to_json(m.field(), m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json scenario_to_json(const SncdScenario& s) {
    Json j;
    j["version"] = 1;
    j["name"] = s.name;
    j["field"] = s.field.name();
    j["mode"] = s.line ? "explicit" : "tabulated";
    j["n"] = s.n;
    j["components"] = s.r;
    if (s.line) {
        Json pts = Json::array();
        for (const auto& p : s.line->points) pts.push_back(format_line_point(s.field, p));
        j["points"] = std::move(pts);
        return j;
    }
    Json strata = Json::array();
    for (const auto& [m, st] : s.strata) {
        Json comps = Json::array();
        for (const auto& c : st.components) {
            Json h = Json::array();
            for (const auto& [pq, d] : c) h.push_back({pq.first, pq.second, d});
            comps.push_back({{"hodge", std::move(h)}});
        }
        strata.push_back({{"subset", subset_json(m)}, {"components", std::move(comps)}});
    }
    j["strata"] = std::move(strata);
    Json pbs = Json::array();
    for (const auto& [key, m] : s.pullbacks) {
        auto [from, to, p, q] = key;
        pbs.push_back({{"from", subset_json(from)}, {"to", subset_json(to)}, {"p", p}, {"q", q}, {"matrix", matrix_to_json(m)}});
    }
    j["pullbacks"] = std::move(pbs);
    return j;
}

Json complex_to_json(const Complex& c) {
    Json j;
    j["field"] = c.field().name();
    j["lo"] = c.lo();
    j["hi"] = c.hi();
    Json dims = Json::array(), ds = Json::array();
    for (int n = c.lo(); n <= c.hi(); ++n) dims.push_back(c.dim(n));
    for (int n = c.lo(); n < c.hi(); ++n) ds.push_back(matrix_to_json(c.d(n)));
    j["dims"] = std::move(dims);
    j["differentials"] = std::move(ds);
    return j;
}

Json table_to_json(const Table& t) {
    Json a = Json::array();
    for (const auto& [wm, d] : t) a.push_back({wm.first, wm.second, d});
    return a;
}

Json dims_to_json(const std::map<int, std::size_t>& d) {
    Json a = Json::array();
    for (const auto& [n, k] : d) a.push_back({n, k});
    return a;
}

Json pages_to_json(const BiGradedPages& e) {
    Json j;
    j["r_max"] = e.r_max;
    Json pages = Json::array(), ranks = Json::array();
    for (const auto& [k, d] : e.dims) {
        auto [r, p, q] = k;
        pages.push_back({{"r", r}, {"p", p}, {"q", q}, {"dim", d}});
    }
    for (const auto& [k, d] : e.d_ranks) {
        auto [r, p, q] = k;
        ranks.push_back({{"r", r}, {"p", p}, {"q", q}, {"rank", d}});
    }
    j["pages"] = std::move(pages);
    j["d_ranks"] = std::move(ranks);
    return j;
}

}  // namespace logwt
