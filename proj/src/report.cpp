#include "arithdyn/report.hpp"

namespace arithdyn {

namespace {

template <class T>
Json list(const std::vector<T>& xs) {
    Json out = Json::array();
    for (const auto& x : xs) out.push_back(to_json(x));
    return out;
}

Json plain_list(const std::vector<unsigned long>& xs) {
    Json out = Json::array();
    for (auto x : xs) out.push_back(x);
    return out;
}

Json optional_int(const std::optional<Int>& n) { return n ? to_json(*n) : Json(nullptr); }

}  // namespace

Json to_json(const Int& n) { return to_string(n); }
Json to_json(const Rat& q) { return to_string(q); }
Json to_json(const ExtRational& z) { return z.str(); }

Json to_json(const FactoredValue& f) {
    Json pp = Json::array();
    for (const auto& p : f.prime_powers) pp.push_back(Json::array({to_string(p.prime), p.exponent}));
    return Json{{"sign", f.sign},
                {"prime_powers", pp},
                {"cofactor", optional_int(f.cofactor)},
                {"primes_certified", f.primes_certified}};
}

Json to_json(const HeightValue& h) {
    Json j{{"field", h.field == FieldTag::Q ? "Q" : "Q(t)"}, {"value", h.value}};
    if (h.field == FieldTag::Q)
        j["argument"] = to_string(h.argument);
    else
        j["degree"] = h.degree;
    return j;
}

Json to_json(const HeightBound& b) {
    return Json{{"c", b.c},
                {"upper_term", b.upper_term},
                {"lower_term", b.lower_term},
                {"resultant", to_string(b.resultant)},
                {"l1_norm", to_string(b.l1_norm)},
                {"nullstellensatz_norm", to_string(b.nullstellensatz_norm)}};
}

Json to_json(const CanonicalHeightEstimate& e) {
    return Json{{"estimate", e.estimate},
                {"error_radius", e.error_radius},
                {"iterations_used", e.iterations_used},
                {"c_phi", e.c_phi},
                {"capped", e.capped}};
}

Json to_json(const PointClassification& c) {
    return Json{{"kind", to_string(c.kind)},         {"tail", c.tail},
                {"period", c.period},                {"witness_index", c.witness_index},
                {"estimate", c.estimate},            {"error_radius", c.error_radius},
                {"height_ceiling", c.height_ceiling}};
}

Json to_json(const RamificationReport& r) {
    return Json{{"verdict", to_string(r.verdict)},
                {"witness_level", r.witness_level ? Json(*r.witness_level) : Json(nullptr)},
                {"threshold", r.threshold},
                {"simple_counts", plain_list(r.simple_counts)},
                {"cumulative_simple", r.cumulative_simple}};
}

Json to_json(const BadReduction& b) {
    return Json{{"primes", list(b.primes)}, {"resultant", to_string(b.resultant)}, {"unresolved", b.unresolved}};
}

Json to_json(const Termination& t) {
    Json j{{"kind", to_string(t.kind)}};
    if (t.kind == TerminationKind::HitZero) j["zero_index"] = t.zero_index;
    if (t.kind == TerminationKind::Preperiodic) {
        j["tail"] = t.tail;
        j["period"] = t.period;
    }
    return j;
}

Json to_json(const Orbit& o) {
    return Json{{"alpha", o.alpha.str()}, {"values", list(o.values)}, {"termination", to_json(o.termination)}};
}

Json to_json(const OrbitRecord& r) {
    Json j{{"n", r.n},
           {"value", r.value.str()},
           {"numerator", r.value.is_infinity() ? "1" : to_string(r.value.numerator())},
           {"defined", r.defined}};
    if (!r.defined) return j;
    j["primitive_part"] = to_string(r.primitive_part);
    j["has_primitive"] = r.has_primitive;
    j["squarefree_checked"] = r.squarefree_checked;
    if (r.squarefree_checked) {
        j["primitive_factored"] = to_json(r.primitive_factored);
        j["primitive_primes"] = list(r.primitive_primes);
        j["squarefree_prime"] = optional_int(r.squarefree_prime);
        j["has_squarefree_primitive"] = r.has_squarefree_primitive;
        j["unresolved"] = r.unresolved;
    }
    return j;
}

Json to_json(const ZsigmondyReport& r) {
    const Hypotheses& h = r.hypotheses;
    Json hyp{{"power_map", h.power_map},
             {"zero_in_orbit", h.zero_in_orbit ? Json(*h.zero_in_orbit) : Json(nullptr)},
             {"classification", to_json(h.classification)},
             {"ramification", to_json(h.ramification)},
             {"warnings", h.warnings}};
    return Json{{"field", "Q"},
                {"map", r.map},
                {"alpha", r.alpha.str()},
                {"max_n", r.max_n},
                {"squarefree_max_n", r.squarefree_max_n},
                {"termination", to_json(r.termination)},
                {"zsigmondy_set", plain_list(r.zsigmondy_set)},
                {"squarefree_zsigmondy_set", plain_list(r.squarefree_zsigmondy_set)},
                {"squarefree_unresolved", plain_list(r.squarefree_unresolved)},
                {"hypotheses", hyp},
                {"records", list(r.records)}};
}

Json to_json(const FFZsigmondyReport& r) {
    Json recs = Json::array();
    for (const auto& x : r.records) {
        Json j{{"n", x.n}, {"value", x.value ? to_string(*x.value) : "inf"}, {"defined", x.defined}};
        if (x.defined) {
            j["numerator"] = to_string(x.value->numer(), "t");
            j["primitive_part"] = to_string(x.primitive_part, "t");
            j["squarefree_primitive_part"] = to_string(x.squarefree_primitive_part, "t");
            j["has_primitive"] = x.has_primitive;
            j["has_squarefree_primitive"] = x.has_squarefree_primitive;
        }
        recs.push_back(j);
    }
    return Json{{"field", "Q(t)"},
                {"max_n", r.max_n},
                {"termination", to_json(r.termination)},
                {"zsigmondy_set", plain_list(r.zsigmondy_set)},
                {"squarefree_zsigmondy_set", plain_list(r.squarefree_zsigmondy_set)},
                {"records", recs}};
}

Json to_json(const PropOldReport& r) {
    Json rows = Json::array();
    for (const auto& x : r.rows)
        rows.push_back(Json{{"n", x.n},
                            {"z_primes", list(x.z_primes)},
                            {"mass", x.mass},
                            {"radical", to_string(x.radical)},
                            {"exact", x.exact},
                            {"height", x.height},
                            {"ratio", x.ratio}});
    return Json{{"F", to_string(r.F)},
                {"level", r.level},
                {"delta", r.delta},
                {"zero_screen_passed", r.zero_screen_passed},
                {"periodic_screen_passed", r.periodic_screen_passed},
                {"periodic_screen_depth", r.periodic_screen_depth},
                {"periodic_screen_heuristic", true},
                {"empirical_constant", r.empirical_constant},
                {"rows", rows}};
}

Json to_json(const AbcTriple& t) {
    return Json{{"a", to_string(t.a)},
                {"b", to_string(t.b)},
                {"c", to_string(t.c)},
                {"height", t.height},
                {"height_arg", to_string(t.height_arg)},
                {"rad_primes", list(t.rad_primes)},
                {"rad_mass", t.rad_mass},
                {"rad_arg", to_string(t.rad_arg)},
                {"rad_exact", t.rad_exact},
                {"quality", t.quality ? Json(*t.quality) : Json(nullptr)}};
}

Json to_json(const RothScanReport& r) {
    Json samples = Json::array();
    for (const auto& s : r.samples)
        samples.push_back(Json{{"z", s.z},
                               {"radsum", s.radsum},
                               {"height", s.height},
                               {"margin", s.margin},
                               {"exact", s.exact}});
    return Json{{"F", r.F},
                {"degree", r.degree},
                {"epsilon", r.epsilon},
                {"sample_description", r.sample_description},
                {"sample_count", r.samples.size()},
                {"skipped_roots", r.skipped_roots},
                {"empirical_constant", r.empirical_constant},
                {"sanity_bound", r.sanity_bound ? Json(*r.sanity_bound) : Json(nullptr)},
                {"sanity_ok", r.sanity_ok},
                {"samples", samples}};
}

Json to_json(const MasonReport& m) {
    return Json{{"a", to_string(m.a, "t")},
                {"b", to_string(m.b, "t")},
                {"c", to_string(m.c, "t")},
                {"max_degree", m.max_degree},
                {"radical_degree", m.radical_degree},
                {"holds", m.holds},
                {"tight", m.tight}};
}

Json to_json(const DiscRecursion& d) {
    return Json{{"a", to_string(d.a)},
                {"m", d.m},
                {"lhs", to_string(d.lhs)},
                {"literal_rhs", to_string(d.literal_rhs)},
                {"squared_rhs", to_string(d.squared_rhs)},
                {"literal_holds", d.literal_holds},
                {"squared_holds", d.squared_holds},
                {"prime_support_agrees", d.prime_support_agrees}};
}

Json to_json(const TowerReport& r) {
    Json recs = Json::array();
    for (const auto& x : r.records)
        recs.push_back(Json{{"n", x.n},
                            {"critical_value", to_string(x.critical_value)},
                            {"certificate", optional_int(x.certificate)},
                            {"status", to_string(x.status)}});
    return Json{{"a", to_string(r.a)},
                {"max_n", r.max_n},
                {"stoll_guarantee", r.stoll_guarantee},
                {"hypotheses_hold", r.hypotheses_hold},
                {"notes", r.notes},
                {"records", recs}};
}

Json envelope(const std::string& command, Json config, Json result) {
    return Json{{"schema_version", kSchemaVersion},
                {"command", command},
                {"config", std::move(config)},
                {"result", std::move(result)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace arithdyn
