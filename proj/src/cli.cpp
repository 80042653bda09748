#include "logwt/cli.hpp"

#include <algorithm>
#include <sstream>

#include "logwt/properties.hpp"

namespace logwt {

namespace {

const char* kVersion = "1.0.0";

std::vector<Track> selected(const RunConfig& cfg) {
    if (cfg.track) return {*cfg.track};
    return {Track::DeRham, Track::HodgeGraded, Track::HodgeFiltered};
}

Json subset_json(Mask m) {
    Json a = Json::array();
    for (int i = 0; i < 32; ++i)
        if (m & (1u << i)) a.push_back(i);
    return a;
}

Json header(const RunConfig& cfg, const SncdScenario* s) {
    Json j;
    j["schema"] = kReportSchema;
    j["tool_version"] = kVersion;
    j["command"] = command_name(cfg.command);
    if (s) {
        j["scenario"] = s->name;
        j["field"] = s->field.name();
        j["mode"] = s->line ? "explicit" : "tabulated";
    }
    return j;
}

Json piece_tables(const TrackPiece& p) {
    Json j;
    j["index"] = p.index;
    j["graded"] = table_to_json(p.graded);
    j["e1"] = table_to_json(p.e1);
    return j;
}

// Entries where two tables disagree.
void table_diff(const Table& a, const Table& b, const std::string& track, int index, const std::string& kind, Json& out) {
    std::set<std::pair<int, int>> keys;
    for (const auto& [k, d] : a) keys.insert(k);
    for (const auto& [k, d] : b) keys.insert(k);
    for (const auto& k : keys) {
        std::size_t x = a.count(k) ? a.at(k) : 0, y = b.count(k) ? b.at(k) : 0;
        if (x != y)
            out.push_back({{"track", track}, {"index", index}, {"table", kind}, {"w", k.first}, {"m", k.second},
                           {"weight_side", x}, {"pole_order_side", y}});
    }
}

RunResult finish(const RunConfig& cfg, int code, Json report) {
    report["status"] = code == kExitOk ? "ok" : code == kExitMismatch ? "mismatch" : "invalid-input";
    report["exit_code"] = code;
    RunResult r;
    r.exit_code = code;
    r.text = cfg.format == OutputFormat::Structured ? report.dump(2) + "\n" : render_human(report);
    r.report = std::move(report);
    return r;
}

RunResult invalid(const RunConfig& cfg, const std::string& path, const std::string& message) {
    Json j = header(cfg, nullptr);
    j["error"] = {{"path", path}, {"message", message}};
    return finish(cfg, kExitInvalid, std::move(j));
}

RunResult compare(const RunConfig& cfg, const SncdScenario& s) {
    if (!s.line) return invalid(cfg, "mode", "compare needs an explicit scenario (a line with points)");
    Json j = header(cfg, &s);
    Json tracks = Json::array(), diff = Json::array();
    for (Track t : selected(cfg)) {
        TrackResult w = weight_side(s, t), p = pole_order_side(s, t);
        Json pieces = Json::array();
        if (w.pieces.size() != p.pieces.size())
            diff.push_back({{"track", track_name(t)}, {"table", "piece count"}, {"weight_side", w.pieces.size()},
                            {"pole_order_side", p.pieces.size()}});
        for (std::size_t i = 0; i < std::min(w.pieces.size(), p.pieces.size()); ++i) {
            const TrackPiece& a = w.pieces[i];
            const TrackPiece& b = p.pieces[i];
            std::size_t before = diff.size();
            table_diff(a.graded, b.graded, track_name(t), a.index, "graded", diff);
            table_diff(a.e1, b.e1, track_name(t), a.index, "e1", diff);
            Json pj;
            pj["index"] = a.index;
            pj["weight_side"] = piece_tables(a);
            pj["pole_order_side"] = piece_tables(b);
            pj["match"] = diff.size() == before;
            pieces.push_back(std::move(pj));
        }
        tracks.push_back({{"track", track_name(t)}, {"pieces", std::move(pieces)}});
    }
    j["tracks"] = std::move(tracks);
    j["diff"] = diff;
    return finish(cfg, diff.empty() ? kExitOk : kExitMismatch, std::move(j));
}

RunResult weights(const RunConfig& cfg, const SncdScenario& s) {
    Json j = header(cfg, &s);
    Json tracks = Json::array();
    for (Track t : selected(cfg)) {
        Json pieces = Json::array();
        for (const auto& p : weight_side(s, t).pieces) pieces.push_back(piece_tables(p));
        tracks.push_back({{"track", track_name(t)}, {"pieces", std::move(pieces)}});
    }
    j["tracks"] = std::move(tracks);
    Complex g = grw0_compactly_supported(s);
    Table grw0;
    for (const auto& [m, d] : cohomology_dims(g)) grw0[{0, m}] = d;
    j["grw0_compact"] = {{"cohomology", dims_to_json(cohomology_dims(g))}, {"table", table_to_json(grw0)}};
    return finish(cfg, kExitOk, std::move(j));
}

Json pages_of(const FilteredComplex& f) { return pages_to_json(spectral_sequence(f, stabilization_page(f))); }

RunResult pages(const RunConfig& cfg, const SncdScenario& s) {
    Json j = header(cfg, &s);
    Json tracks = Json::array();
    for (Track t : selected(cfg)) {
        Json pieces = Json::array();
        TrackResult w = weight_side(s, t);
        std::optional<TrackResult> p;
        if (s.line) p = pole_order_side(s, t);
        for (std::size_t i = 0; i < w.pieces.size(); ++i) {
            Json pj;
            pj["index"] = w.pieces[i].index;
            pj["weight_side"] = pages_of(w.pieces[i].filtered);
            if (p && i < p->pieces.size()) pj["pole_order_side"] = pages_of(p->pieces[i].filtered);
            pieces.push_back(std::move(pj));
        }
        tracks.push_back({{"track", track_name(t)}, {"pieces", std::move(pieces)}});
    }
    j["tracks"] = std::move(tracks);
    return finish(cfg, kExitOk, std::move(j));
}

RunResult dual(const RunConfig& cfg, const SncdScenario& s) {
    Json j = header(cfg, &s);
    SimplicialComplexT d = dual_complex(s);
    Json faces = Json::array();
    for (Mask f : d.faces) faces.push_back(subset_json(f));
    auto red = reduced_cohomology(d, s.field);
    auto g = cohomology_dims(grw0_compactly_supported(s));
    j["vertices"] = d.vertices;
    j["faces"] = std::move(faces);
    j["reduced_cohomology"] = dims_to_json(red);
    j["grw0_compact"] = dims_to_json(g);
    j["offset"] = kDualComplexOffset;
    // The comparison holds when every nonempty stratum is geometrically connected.
    bool applicable = true;
    for (const auto& [m, st] : s.strata) {
        HodgeTable t = st.total();
        bool nonempty = !st.components.empty();
        if (nonempty && (st.components.size() != 1 || !t.count({0, 0}) || t.at({0, 0}) != 1)) applicable = false;
    }
    j["comparison_applicable"] = applicable;
    int code = kExitOk;
    if (applicable) {
        std::map<int, std::size_t> shifted;
        for (const auto& [n, k] : red) shifted[n + kDualComplexOffset] = k;
        bool agree = shifted == g;
        j["agree"] = agree;
        if (!agree) code = kExitMismatch;
    }
    return finish(cfg, code, std::move(j));
}

RunResult cone(const RunConfig& cfg, const SncdScenario& s) {
    Json j = header(cfg, &s);
    HodgeTable x = s.table(0);
    Json xt = Json::array();
    for (const auto& [pq, d] : x) xt.push_back({pq.first, pq.second, d});
    j["base_hodge"] = std::move(xt);
    Table w;
    try {
        w = cone_weights(x, s.field);
    } catch (const std::invalid_argument& e) {
        return invalid(cfg, "strata", e.what());
    }
    Table c = cone_closed_form(x);
    j["weights"] = table_to_json(w);
    j["closed_form"] = table_to_json(c);
    j["match"] = w == c;
    return finish(cfg, w == c ? kExitOk : kExitMismatch, std::move(j));
}

RunResult selftest(const RunConfig& cfg) {
    Json j = header(cfg, nullptr);
    j["seed"] = cfg.seed;
    Json suites = Json::array();
    bool ok = true;
    for (const auto& r : run_property_suites(cfg.seed, cfg.selftest_scale)) {
        suites.push_back({{"name", r.name}, {"trials", r.trials}, {"failures", r.failures}, {"ok", r.ok()}});
        ok = ok && r.ok();
    }
    j["suites"] = std::move(suites);
    return finish(cfg, ok ? kExitOk : kExitMismatch, std::move(j));
}

void render(const Json& v, int indent, std::ostringstream& o) {
    std::string pad(static_cast<std::size_t>(indent), ' ');
    auto scalar_list = [](const Json& a) {
        for (const auto& e : a)
            if (e.is_structured() && !(e.is_array() && std::all_of(e.begin(), e.end(), [](const Json& x) { return !x.is_structured(); })))
                return false;
        return true;
    };
    auto inline_text = [](const Json& e) { return e.is_string() ? e.get<std::string>() : e.dump(); };
    if (v.is_object()) {
        for (const auto& [k, e] : v.items()) {
            if (!e.is_structured()) {
                o << pad << k << ": " << inline_text(e) << "\n";
            } else if (e.empty()) {
                o << pad << k << ": (none)\n";
            } else if (e.is_array() && scalar_list(e)) {
                o << pad << k << ":";
                bool rows = e.front().is_array();
                if (!rows) {
                    for (const auto& x : e) o << " " << inline_text(x);
                    o << "\n";
                } else {
                    o << "\n";
                    for (const auto& x : e) o << pad << "  " << x.dump() << "\n";
                }
            } else {
                o << pad << k << ":\n";
                render(e, indent + 2, o);
            }
        }
    } else if (v.is_array()) {
        for (const auto& e : v) {
            bool flat = e.is_object() && std::none_of(e.begin(), e.end(), [](const Json& x) { return x.is_structured(); });
            if (flat) {
                o << pad << "-";
                for (const auto& [k, x] : e.items()) o << " " << k << "=" << inline_text(x);
                o << "\n";
            } else if (e.is_structured()) {
                o << pad << "-\n";
                render(e, indent + 2, o);
            } else {
                o << pad << "- " << inline_text(e) << "\n";
            }
        }
    } else {
        o << pad << inline_text(v) << "\n";
    }
}

}  // namespace

std::optional<Command> parse_command(const std::string& s) {
    if (s == "compare") return Command::Compare;
    if (s == "weights") return Command::Weights;
    if (s == "ss") return Command::SpectralSequence;
    if (s == "dual-complex") return Command::DualComplex;
    if (s == "cone") return Command::Cone;
    if (s == "selftest") return Command::Selftest;
    return std::nullopt;
}

std::string command_name(Command c) {
    switch (c) {
        case Command::Compare: return "compare";
        case Command::Weights: return "weights";
        case Command::SpectralSequence: return "ss";
        case Command::DualComplex: return "dual-complex";
        case Command::Cone: return "cone";
        case Command::Selftest: return "selftest";
    }
    return "?";
}

std::optional<Track> parse_track(const std::string& s) {
    for (Track t : {Track::DeRham, Track::HodgeGraded, Track::HodgeFiltered})
        if (track_name(t) == s) return t;
    return std::nullopt;
}

RunResult run_on(const RunConfig& cfg, const SncdScenario& s) {
    try {
        switch (cfg.command) {
            case Command::Compare: return compare(cfg, s);
            case Command::Weights: return weights(cfg, s);
            case Command::SpectralSequence: return pages(cfg, s);
            case Command::DualComplex: return dual(cfg, s);
            case Command::Cone: return cone(cfg, s);
            case Command::Selftest: return selftest(cfg);
        }
    } catch (const ScenarioError& e) {
        return invalid(cfg, e.path, e.what());
    }
    return invalid(cfg, "command", "unknown command");
}

RunResult run(const RunConfig& cfg) {
    if (cfg.command == Command::Selftest) return selftest(cfg);
    if (cfg.scenario_path.empty()) return invalid(cfg, "--scenario", "required for " + command_name(cfg.command));
    try {
        return run_on(cfg, load_scenario(cfg.scenario_path));
    } catch (const ScenarioError& e) {
        return invalid(cfg, e.path, e.what());
    }
}

std::string render_human(const Json& report) {
    std::ostringstream o;
    render(report, 0, o);
    return o.str();
}

}  // namespace logwt
