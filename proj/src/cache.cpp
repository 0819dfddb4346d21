#include "arithdyn/cache.hpp"

#include "arithdyn/parallel.hpp"
#include "arithdyn/report.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace arithdyn {

std::string map_hash(const RationalMap& map, const ExtRational& alpha) {
    const std::string text = map.str() + "|" + alpha.str();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

std::string cache_line(const std::string& hash, const OrbitRecord& r) {
    Json fd = nullptr;
    if (r.defined) {
        fd = Json{{"primitive_part", to_string(r.primitive_part)}};
        if (r.squarefree_checked) fd["factored"] = to_json(r.primitive_factored);
    }
    const Json j{{"map_hash", hash},
                 {"n", r.n},
                 {"numer", to_string(r.value.numerator())},
                 {"denom", to_string(r.value.denominator())},
                 {"factor_data", fd}};
    return j.dump();
}

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line, const std::string& what) {
    throw CacheError(path.string() + ":" + std::to_string(line) + ": " + what);
}

Int parse_int(const Json& j) {
    if (!j.is_string()) throw std::invalid_argument("expected a decimal string");
    Int n;
    if (n.set_str(j.get<std::string>(), 10) != 0) throw std::invalid_argument("bad integer");
    return n;
}

FactoredValue parse_factored(const Json& j) {
    FactoredValue f;
    f.sign = j.at("sign").get<int>();
    for (const auto& pe : j.at("prime_powers"))
        f.prime_powers.push_back({parse_int(pe.at(0)), pe.at(1).get<unsigned long>()});
    if (!j.at("cofactor").is_null()) f.cofactor = parse_int(j.at("cofactor"));
    f.primes_certified = j.at("primes_certified").get<bool>();
    return f;
}

}  // namespace

std::vector<OrbitRecord> load_cache(const std::filesystem::path& path, const RationalMap& map,
                                    const ExtRational& alpha) {
    std::vector<OrbitRecord> out;
    std::ifstream in(path);
    if (!in) return out;
    const std::string hash = map_hash(map, alpha);

    struct Raw {
        std::size_t line;
        Int primitive;
        std::optional<FactoredValue> factored;
    };
    std::vector<ExtRational> values;
    std::vector<Raw> raws;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (text.empty()) continue;
        Json j;
        try {
            j = Json::parse(text);
        } catch (const std::exception&) {
            fail(path, line, "not valid JSON");
        }
        try {
            if (j.at("map_hash").get<std::string>() != hash)
                fail(path, line,
                     "map hash " + j.at("map_hash").get<std::string>() + " does not match " + hash +
                         "; refusing to resume");
            const auto n = j.at("n").get<unsigned long>();
            if (n != values.size() + 1)
                fail(path, line, "expected n = " + std::to_string(values.size() + 1) + ", found " + std::to_string(n));
            const ExtRational v = ExtRational::from_projective(parse_int(j.at("numer")), parse_int(j.at("denom")));
            const ExtRational expected = map(values.empty() ? alpha : values.back());
            if (!(v == expected))
                fail(path, line, "value " + v.str() + " is not phi of the previous value (expected " +
                                     expected.str() + ")");
            if (v.numerator() != parse_int(j.at("numer")) || v.denominator() != parse_int(j.at("denom")))
                fail(path, line, "value is not in lowest terms");
            values.push_back(v);
            Raw raw{line, 0, std::nullopt};
            const Json& fd = j.at("factor_data");
            if (!fd.is_null()) {
                raw.primitive = parse_int(fd.at("primitive_part"));
                if (fd.contains("factored")) raw.factored = parse_factored(fd.at("factored"));
            }
            raws.push_back(std::move(raw));
        } catch (const CacheError&) {
            throw;
        } catch (const std::exception& e) {
            fail(path, line, std::string("malformed record: ") + e.what());
        }
    }
    for (std::size_t i = 0; i < raws.size(); ++i) {
        const unsigned long n = i + 1;
        const ExtRational& v = values[i];
        try {
            if (v.is_zero() || v.is_infinity()) {
                out.push_back(record_from_parts(values, n, 0, std::nullopt));
                continue;
            }
            if (raws[i].primitive != primitive_part(values, n))
                fail(path, raws[i].line, "primitive part does not match the orbit");
            out.push_back(record_from_parts(values, n, raws[i].primitive, raws[i].factored));
        } catch (const CacheError&) {
            throw;
        } catch (const std::exception& e) {
            fail(path, raws[i].line, e.what());
        }
    }
    return out;
}

void append_cache(const std::filesystem::path& path, const std::string& hash, const std::vector<OrbitRecord>& records) {
    if (records.empty()) return;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::app);
    if (!out) throw InputError("cannot write cache file " + path.string());
    for (const auto& r : records) out << cache_line(hash, r) << '\n';
}

std::optional<std::filesystem::path> default_cache_path(const RationalMap& map, const ExtRational& alpha) {
    const char* dir = std::getenv("ARITHDYN_CACHE_DIR");
    if (!dir || !*dir) return std::nullopt;
    return std::filesystem::path(dir) / ("orbit-" + map_hash(map, alpha) + ".jsonl");
}

ZsigmondyReport zsigmondy_report_cached(const RationalMap& map, const ExtRational& alpha,
                                        const ZsigmondyOptions& opts, const std::filesystem::path& path) {
    std::vector<OrbitRecord> cached = load_cache(path, map, alpha);
    const std::size_t stored = cached.size();
    if (cached.size() > opts.max_n) cached.resize(opts.max_n);
    std::vector<ExtRational> prefix;
    for (const auto& r : cached) prefix.push_back(r.value);
    const Orbit orb = orbit_resume(map, alpha, prefix, opts.max_n, opts.limits);

    const unsigned long sq = std::min(opts.squarefree_max_n, opts.max_n);
    std::vector<OrbitRecord> records(orb.values.size());
    parallel_for(records.size(), opts.jobs, [&](std::size_t i) {
        const unsigned long n = i + 1;
        const bool want_sq = n <= sq;
        if (i < cached.size() && (cached[i].squarefree_checked || !want_sq || !cached[i].defined)) {
            // A cached record may carry more than this run asks for.
            records[i] = cached[i].squarefree_checked && !want_sq
                             ? record_from_parts(orb.values, n, cached[i].primitive_part, std::nullopt)
                             : cached[i];
            return;
        }
        records[i] = make_record(orb.values, n, want_sq, opts.budget);
    });

    // Append only levels beyond what the file already holds, always with the
    // richest data computed in this run.
    std::vector<OrbitRecord> fresh;
    for (std::size_t i = stored; i < records.size(); ++i) fresh.push_back(records[i]);
    append_cache(path, map_hash(map, alpha), fresh);
    return assemble_report(map, alpha, opts, orb, std::move(records));
}

}  // namespace arithdyn
