#include "cli.hpp"

#include "arithdyn/cache.hpp"
#include "arithdyn/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

namespace arithdyn::cli {

namespace {

struct Common {
    std::string format = "json";
    unsigned jobs = 1;
    FactorBudget budget;
};

struct Output {
    std::string command;
    Json config;
    Json result;
    /// Key of the row array used by the table and csv renderings.
    std::string rows;
    /// Overrides the generic csv rendering.
    std::string csv;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--format", c.format, "json, table or csv")
        ->check(CLI::IsMember({"json", "table", "csv"}))
        ->capture_default_str();
    sub->add_option("--jobs", c.jobs, "worker threads")->check(CLI::Range(1u, 256u))->capture_default_str();
    sub->add_option("--trial-bound", c.budget.trial_bound, "trial division bound")->capture_default_str();
    sub->add_option("--rho-effort", c.budget.rho_effort, "Pollard rho effort per number")->capture_default_str();
}

Json budget_json(const Common& c) {
    return Json{{"trial_bound", c.budget.trial_bound}, {"rho_effort", c.budget.rho_effort}, {"jobs", c.jobs}};
}

std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    if (v.is_array()) {
        std::string s;
        for (const auto& x : v) {
            if (!s.empty()) s += ", ";
            s += scalar_text(x);
        }
        return s;
    }
    return v.dump();
}

bool is_scalar_like(const Json& v) {
    if (v.is_object()) return false;
    if (v.is_array()) return std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_primitive(); });
    return true;
}

std::vector<std::string> columns_of(const Json& rows) {
    std::vector<std::string> cols;
    for (const auto& r : rows) {
        if (!r.is_object()) continue;
        for (const auto& [k, v] : r.items())
            if (is_scalar_like(v) && std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
    }
    return cols;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string render_csv(const Output& o) {
    if (!o.csv.empty()) return o.csv;
    std::ostringstream os;
    if (o.rows.empty()) {
        os << "key,value\n";
        for (const auto& [k, v] : o.result.items())
            if (is_scalar_like(v)) os << csv_field(k) << ',' << csv_field(scalar_text(v)) << '\n';
        return os.str();
    }
    const Json& rows = o.result.at(o.rows);
    const auto cols = columns_of(rows);
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < cols.size(); ++i)
            os << (i ? "," : "") << csv_field(r.contains(cols[i]) ? scalar_text(r.at(cols[i])) : "");
        os << '\n';
    }
    return os.str();
}

std::string render_table(const Output& o) {
    std::ostringstream os;
    os << o.command << '\n';
    std::size_t width = 0;
    for (const auto& [k, v] : o.result.items())
        if (is_scalar_like(v)) width = std::max(width, k.size());
    for (const auto& [k, v] : o.result.items())
        if (is_scalar_like(v)) os << "  " << std::left << std::setw(static_cast<int>(width)) << k << "  " << scalar_text(v) << '\n';
    for (const auto& [k, v] : o.result.items()) {
        if (!v.is_object()) continue;
        os << "  " << k << ":\n";
        for (const auto& [k2, v2] : v.items())
            if (is_scalar_like(v2)) os << "    " << k2 << ": " << scalar_text(v2) << '\n';
    }
    if (o.rows.empty()) return os.str();

    const Json& rows = o.result.at(o.rows);
    const auto cols = columns_of(rows);
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> w(cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) w[i] = cols[i].size();
    for (const auto& r : rows) {
        std::vector<std::string> line;
        for (std::size_t i = 0; i < cols.size(); ++i) {
            std::string s = r.contains(cols[i]) ? scalar_text(r.at(cols[i])) : "";
            if (s.size() > 40) s = s.substr(0, 18) + "..." + s.substr(s.size() - 18);
            w[i] = std::max(w[i], s.size());
            line.push_back(std::move(s));
        }
        cells.push_back(std::move(line));
    }
    os << '\n';
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "  " : "") << std::left << std::setw(static_cast<int>(w[i])) << cols[i];
    os << '\n';
    for (const auto& line : cells) {
        for (std::size_t i = 0; i < line.size(); ++i)
            os << (i ? "  " : "") << std::left << std::setw(static_cast<int>(w[i])) << line[i];
        os << '\n';
    }
    return os.str();
}

Json values_rows(const std::vector<std::string>& values) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < values.size(); ++i) rows.push_back(Json{{"n", i + 1}, {"value", values[i]}});
    return rows;
}

std::optional<FFElement> parse_ff_point(const std::string& s) {
    if (s == "inf" || s == "infinity" || s == "oo") return std::nullopt;
    return parse_ff(s);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact arithmetic dynamics on the projective line over Q and Q(t)", "arithdyn"};
    app.require_subcommand(1);
    Common common;
    std::function<Output()> action;

    // orbit
    std::string map_text, alpha_text, field = "q";
    unsigned long max_n = 10;
    {
        auto* s = app.add_subcommand("orbit", "phi^1(alpha) .. phi^N(alpha)");
        s->add_option("--map", map_text, "rational map in x (and t for --field qt)")->required();
        s->add_option("--alpha", alpha_text, "starting point")->required();
        s->add_option("--max-n", max_n, "depth")->capture_default_str();
        s->add_option("--field", field, "q or qt")->check(CLI::IsMember({"q", "qt"}))->capture_default_str();
        add_common(s, common);
        s->callback([&] {
            action = [&] {
                Json cfg{{"field", field}, {"map", map_text}, {"alpha", alpha_text}, {"max_n", max_n}};
                if (field == "qt") {
                    const auto rep = ff_zsigmondy_report(FFMap::parse(map_text), parse_ff_point(alpha_text), max_n);
                    std::vector<std::string> vals;
                    for (const auto& r : rep.records) vals.push_back(r.value ? to_string(*r.value) : "inf");
                    return Output{"orbit", cfg,
                                  Json{{"alpha", alpha_text}, {"values", values_rows(vals)},
                                       {"termination", to_json(rep.termination)}},
                                  "values", ""};
                }
                const auto map = RationalMap::parse(map_text);
                const auto o = orbit(map, ExtRational::parse(alpha_text), max_n);
                std::vector<std::string> vals;
                for (const auto& v : o.values) vals.push_back(v.str());
                cfg["map"] = map.str();
                return Output{"orbit", cfg,
                              Json{{"alpha", o.alpha.str()}, {"values", values_rows(vals)},
                                   {"termination", to_json(o.termination)}},
                              "values", ""};
            };
        });
    }

    // zsigmondy
    ZsigmondyOptions zopts;
    std::string cache_path;
    bool no_cache = false;
    {
        auto* s = app.add_subcommand("zsigmondy", "primitive and square-free primitive prime divisors");
        s->add_option("--map", map_text)->required();
        s->add_option("--alpha", alpha_text)->required();
        s->add_option("--max-n", zopts.max_n, "primitivity depth")->capture_default_str();
        s->add_option("--squarefree-max-n", zopts.squarefree_max_n, "square-free depth")->capture_default_str();
        s->add_option("--ramification-depth", zopts.ramification_depth)->capture_default_str();
        s->add_option("--field", field, "q or qt")->check(CLI::IsMember({"q", "qt"}))->capture_default_str();
        s->add_option("--cache", cache_path, "JSON-lines orbit cache (default: $ARITHDYN_CACHE_DIR)");
        s->add_flag("--no-cache", no_cache, "ignore $ARITHDYN_CACHE_DIR");
        add_common(s, common);
        s->callback([&] {
            action = [&] {
                Json cfg{{"field", field},
                         {"map", map_text},
                         {"alpha", alpha_text},
                         {"max_n", zopts.max_n},
                         {"squarefree_max_n", zopts.squarefree_max_n},
                         {"budget", budget_json(common)}};
                if (field == "qt") {
                    const auto rep =
                        ff_zsigmondy_report(FFMap::parse(map_text), parse_ff_point(alpha_text), zopts.max_n);
                    return Output{"zsigmondy", cfg, to_json(rep), "records", ""};
                }
                zopts.budget = common.budget;
                zopts.jobs = common.jobs;
                const auto map = RationalMap::parse(map_text);
                const auto alpha = ExtRational::parse(alpha_text);
                cfg["map"] = map.str();
                cfg["alpha"] = alpha.str();
                std::optional<std::filesystem::path> path;
                if (!cache_path.empty())
                    path = cache_path;
                else if (!no_cache)
                    path = default_cache_path(map, alpha);
                const auto rep = path ? zsigmondy_report_cached(map, alpha, zopts, *path)
                                      : zsigmondy_report(map, alpha, zopts);
                return Output{"zsigmondy", cfg, to_json(rep), "records", ""};
            };
        });
    }

    // height
    std::string value_text;
    {
        auto* s = app.add_subcommand("height", "Weil height of a point of P^1(Q) or of Q(t)");
        s->add_option("--value", value_text)->required();
        s->add_option("--field", field, "q or qt")->check(CLI::IsMember({"q", "qt"}))->capture_default_str();
        add_common(s, common);
        s->callback([&] {
            action = [&] {
                Json cfg{{"field", field}, {"value", value_text}};
                const HeightValue h =
                    field == "qt" ? weil_height(parse_ff(value_text)) : weil_height(ExtRational::parse(value_text));
                return Output{"height", cfg, to_json(h), "", ""};
            };
        });
    }

    // canonical-height
    double tol = 1e-6;
    {
        auto* s = app.add_subcommand("canonical-height", "canonical height with a rigorous error radius");
        s->add_option("--map", map_text)->required();
        s->add_option("--alpha", alpha_text)->required();
        s->add_option("--tol", tol, "target error radius")->check(CLI::PositiveNumber)->capture_default_str();
        add_common(s, common);
        s->callback([&] {
            action = [&] {
                const auto map = RationalMap::parse(map_text);
                const auto alpha = ExtRational::parse(alpha_text);
                const auto bound = phi_height_bound(map);
                Json cfg{{"map", map.str()}, {"alpha", alpha.str()}, {"tol", tol}};
                Json res = to_json(canonical_height(map, alpha, tol, bound));
                res["height_bound"] = to_json(bound);
                return Output{"canonical-height", cfg, res, "", ""};
            };
        });
    }

    // classify
    unsigned long max_steps = 100000;
    {
        auto* s = app.add_subcommand("classify", "wandering or preperiodic");
        s->add_option("--map", map_text)->required();
        s->add_option("--alpha", alpha_text)->required();
        s->add_option("--max-steps", max_steps)->capture_default_str();
        add_common(s, common);
        s->callback([&] {
            action = [&] {
                const auto map = RationalMap::parse(map_text);
                const auto alpha = ExtRational::parse(alpha_text);
                Json cfg{{"map", map.str()}, {"alpha", alpha.str()}, {"max_steps", max_steps}};
                return Output{"classify", cfg, to_json(classify_point(map, alpha, {}, max_steps)), "", ""};
            };
        });
    }

    // map-analyze
    unsigned depth = 3;
    {
        auto* s = app.add_subcommand("map-analyze", "bad reduction, power-map test, ramification verdict");
        s->add_option("--map", map_text)->required();
        s->add_option("--depth", depth, "ramification depth")->check(CLI::Range(1u, 12u))->capture_default_str();
        add_common(s, common);
        s->callback([&] {
            action = [&] {
                const auto map = RationalMap::parse(map_text);
                Json cfg{{"map", map.str()}, {"depth", depth}, {"budget", budget_json(common)}};
                Json exceptional = Json::array();
                for (const auto& beta : {ExtRational(Rat(0)), ExtRational::infinity()})
                    if (is_exceptional(map, beta)) exceptional.push_back(beta.str());
                Json res{{"map", map.str()},
                         {"degree", map.degree()},
                         {"resultant", to_string(map.homogeneous_resultant())},
                         {"bad_reduction", to_json(bad_reduction_primes(map, common.budget))},
                         {"power_map", is_power_map(map)},
                         {"exceptional_among_0_inf", exceptional},
                         {"ramification", to_json(dynamical_ramification_verdict(map, depth))},
                         {"height_bound", to_json(phi_height_bound(map))}};
                return Output{"map-analyze", cfg, res, "", ""};
            };
        });
    }

    // prop-old
    std::string f_text;
    unsigned level = 1;
    double delta = 0.125;
    unsigned screen_depth = 4;
    {
        auto* s = app.add_subcommand("prop-old", "non-primitive mass of F(phi^(n-i)(alpha))");
        s->add_option("--map", map_text)->required();
        s->add_option("--alpha", alpha_text)->required();
        s->add_option("--F", f_text, "polynomial in x dividing P_i")->required();
        s->add_option("--level", level, "i")->check(CLI::Range(1u, 64u))->capture_default_str();
        s->add_option("--max-n", max_n)->capture_default_str();
        s->add_option("--delta", delta)->check(CLI::PositiveNumber)->capture_default_str();
        s->add_option("--screen-depth", screen_depth, "periodicity screen depth")->capture_default_str();
        add_common(s, common);
        s->callback([&] {
            action = [&] {
                const auto map = RationalMap::parse(map_text);
                const auto alpha = ExtRational::parse(alpha_text);
                const QPoly F = parse_polynomial(f_text);
                Json cfg{{"map", map.str()}, {"alpha", alpha.str()}, {"F", to_string(F)}, {"level", level},
                         {"max_n", max_n},   {"delta", delta},       {"budget", budget_json(common)}};
                return Output{"prop-old", cfg,
                              to_json(prop_old_diagnostic(map, alpha, F, level, max_n, delta, common.budget,
                                                          screen_depth)),
                              "rows", ""};
            };
        });
    }

    // abc
    std::string a_text, b_text;
    {
        auto* s = app.add_subcommand("abc", "quality of a + b = c over Q");
        s->add_option("--a", a_text)->required();
        s->add_option("--b", b_text)->required();
        add_common(s, common);
        s->callback([&] {
            action = [&] {
                const Rat a = parse_rational(a_text), b = parse_rational(b_text);
                Json cfg{{"a", to_string(a)}, {"b", to_string(b)}};
                return Output{"abc", cfg, to_json(abc_quality(a, b, common.budget)), "", ""};
            };
        });
    }

    // roth-scan
    double epsilon = 0.1;
    unsigned long H = 20;
    FFSampleFamily family;
    {
        auto* s = app.add_subcommand("roth-scan", "Roth-abc margins over Q or Q(t)");
        s->add_option("--F", f_text, "squarefree polynomial in x of degree >= 3")->required();
        s->add_option("--epsilon", epsilon)->check(CLI::PositiveNumber)->capture_default_str();
        s->add_option("--H", H, "height bound over Q")->capture_default_str();
        s->add_option("--field", field, "q or qt")->check(CLI::IsMember({"q", "qt"}))->capture_default_str();
        s->add_option("--max-degree", family.max_degree, "Q(t) family degree bound")->capture_default_str();
        s->add_option("--coeff-bound", family.coeff_bound, "Q(t) family coefficient bound")->capture_default_str();
        add_common(s, common);
        s->callback([&] {
            action = [&] {
                Json cfg{{"field", field}, {"F", f_text}, {"epsilon", epsilon}};
                RothScanReport rep;
                if (field == "qt") {
                    cfg["max_degree"] = family.max_degree;
                    cfg["coeff_bound"] = family.coeff_bound;
                    rep = roth_scan_ff(parse_ff_xpoly(f_text), epsilon, family, common.jobs);
                } else {
                    cfg["H"] = H;
                    cfg["budget"] = budget_json(common);
                    rep = roth_scan_q(parse_polynomial(f_text), epsilon, H, common.budget, common.jobs);
                }
                return Output{"roth-scan", cfg, to_json(rep), "samples", margins_csv(rep)};
            };
        });
    }

    // mason
    {
        auto* s = app.add_subcommand("mason", "Mason-Stothers check for a + b = c in Q[t]");
        s->add_option("--a", a_text)->required();
        s->add_option("--b", b_text)->required();
        add_common(s, common);
        s->callback([&] {
            action = [&] {
                const QPoly a = parse_qt_poly(a_text), b = parse_qt_poly(b_text);
                Json cfg{{"a", to_string(a, "t")}, {"b", to_string(b, "t")}};
                return Output{"mason", cfg, to_json(mason_check(a, b)), "", ""};
            };
        });
    }

    // galois-tower
    long long a_int = 1;
    unsigned tower_n = 4, disc_levels = 0;
    {
        auto* s = app.add_subcommand("galois-tower", "certificates for x^2 + a");
        s->add_option("--a", a_int)->required();
        s->add_option("--max-n", tower_n)->check(CLI::Range(0u, 12u))->capture_default_str();
        s->add_option("--disc-levels", disc_levels, "also check the discriminant recursion for m = 1..M")
            ->check(CLI::Range(0u, 7u))
            ->capture_default_str();
        add_common(s, common);
        s->callback([&] {
            action = [&] {
                const Int a(std::to_string(a_int));
                Json cfg{{"a", to_string(a)}, {"max_n", tower_n}, {"disc_levels", disc_levels},
                         {"budget", budget_json(common)}};
                Json res = to_json(tower_report(a, tower_n, common.budget, common.jobs));
                Json disc = Json::array();
                for (unsigned m = 1; m <= disc_levels; ++m) disc.push_back(to_json(disc_recursion_check(a, m)));
                res["disc_recursion"] = disc;
                return Output{"galois-tower", cfg, res, "records", ""};
            };
        });
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        const Output o = action();
        if (common.format == "json")
            out << dump(envelope(o.command, o.config, o.result));
        else if (common.format == "csv")
            out << render_csv(o);
        else
            out << render_table(o);
        return kOk;
    } catch (const ResourceCapError& e) {
        err << "resource cap: " << e.what() << '\n';
        return kResourceCap;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InvariantError& e) {
        err << "internal invariant violated: " << e.what() << '\n';
        return kInvariant;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInvariant;
    }
}

}  // namespace arithdyn::cli
