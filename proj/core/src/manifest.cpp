#include "pairedfd/manifest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <map>
#include <sstream>

#include "pairedfd/error.hpp"
#include "pairedfd/format.hpp"

namespace pairedfd {

namespace {

using Setter = std::function<void(SimConfig&, const std::string&)>;

double real_value(const std::string& key, const std::string& text) {
    const auto v = parse_real(text);
    if (!v) throw ManifestError("key '" + key + "': '" + text + "' is not a number");
    return *v;
}

std::uint64_t unsigned_value(const std::string& key, const std::string& text) {
    const auto t = trim(text);
    if (t.empty() || t.find_first_not_of("0123456789") != std::string_view::npos) {
        throw ManifestError("key '" + key + "': '" + text + "' is not a nonnegative integer");
    }
    try {
        return std::stoull(std::string(t));
    } catch (const std::exception&) {
        throw ManifestError("key '" + key + "': '" + text + "' is out of range");
    }
}

template <class F>
Setter wrap(const std::string& key, F parse) {
    return [key, parse](SimConfig& c, const std::string& v) {
        try {
            parse(c, v);
        } catch (const ManifestError&) {
            throw;
        } catch (const Error& e) {
            throw ManifestError("key '" + key + "': " + e.what());
        }
    };
}

// Fixed expansion order; the last key varies fastest.
const std::vector<std::pair<std::string, Setter>>& config_keys() {
    static const std::vector<std::pair<std::string, Setter>> keys = {
        {"seed", wrap("seed", [](SimConfig& c, const std::string& v) { c.seed = unsigned_value("seed", v); })},
        {"replicates", wrap("replicates", [](SimConfig& c, const std::string& v) { c.replicates = unsigned_value("replicates", v); })},
        {"K", wrap("K", [](SimConfig& c, const std::string& v) { c.truncation = unsigned_value("K", v); })},
        {"ar_corr", wrap("ar_corr", [](SimConfig& c, const std::string& v) { c.ar_corr = real_value("ar_corr", v); })},
        {"ar_var", wrap("ar_var", [](SimConfig& c, const std::string& v) { c.ar_var = real_value("ar_var", v); })},
        {"pve", wrap("pve", [](SimConfig& c, const std::string& v) { c.pve = real_value("pve", v); })},
        {"bandwidth", wrap("bandwidth", [](SimConfig& c, const std::string& v) {
             if (trim(v) == "default") c.bandwidth.reset();
             else c.bandwidth = real_value("bandwidth", v);
         })},
        {"preprocess", wrap("preprocess", [](SimConfig& c, const std::string& v) { c.preprocess = parse_preprocess(std::string(trim(v))); })},
        {"missing_frac", wrap("missing_frac", [](SimConfig& c, const std::string& v) { c.missing_frac = real_value("missing_frac", v); })},
        {"rho", wrap("rho", [](SimConfig& c, const std::string& v) { c.rho = real_value("rho", v); })},
        {"S", wrap("S", [](SimConfig& c, const std::string& v) { c.grid_size = unsigned_value("S", v); })},
        {"score_dist", wrap("score_dist", [](SimConfig& c, const std::string& v) { c.score_dist = parse_score_dist(std::string(trim(v))); })},
        {"delta", wrap("delta", [](SimConfig& c, const std::string& v) { c.delta = parse_delta_shape(std::string(trim(v))); })},
        {"n", wrap("n", [](SimConfig& c, const std::string& v) { c.n = unsigned_value("n", v); })},
        {"xi", wrap("xi", [](SimConfig& c, const std::string& v) { c.xi = real_value("xi", v); })},
    };
    return keys;
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.emplace_back(trim(item));
    return out;
}

}  // namespace

Manifest parse_manifest(std::istream& in) {
    std::map<std::string, std::vector<std::string>> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) {
            throw ManifestError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key(trim(body.substr(0, eq)));
        const std::string value(trim(body.substr(eq + 1)));
        if (key.empty()) throw ManifestError("line " + std::to_string(line_no) + ": empty key");
        if (entries.contains(key)) throw ManifestError("key '" + key + "' given more than once");
        auto levels = split_list(value);
        if (levels.empty() || std::any_of(levels.begin(), levels.end(), [](const auto& s) { return s.empty(); })) {
            throw ManifestError("key '" + key + "' has an empty value");
        }
        entries.emplace(key, std::move(levels));
    }

    Manifest manifest;
    const auto& keys = config_keys();
    for (const auto& [key, levels] : entries) {
        const bool known = key == "method" || key == "alpha" ||
                           std::any_of(keys.begin(), keys.end(), [&](const auto& k) { return k.first == key; });
        if (!known) throw ManifestError("unknown key '" + key + "'");
    }

    if (auto it = entries.find("alpha"); it != entries.end()) {
        if (it->second.size() != 1) throw ManifestError("key 'alpha' takes a single value");
        manifest.alpha = real_value("alpha", it->second.front());
        if (!(manifest.alpha > 0.0 && manifest.alpha <= 1.0)) {
            throw ManifestError("key 'alpha': must lie in (0, 1]");
        }
    }
    if (auto it = entries.find("method"); it != entries.end()) {
        manifest.methods.clear();
        for (const auto& m : it->second) {
            if (m == "all") {
                manifest.methods.assign(std::begin(kAllMethods), std::end(kAllMethods));
                continue;
            }
            try {
                manifest.methods.push_back(parse_method(m));
            } catch (const Error& e) {
                throw ManifestError(std::string("key 'method': ") + e.what());
            }
        }
        std::vector<Method> unique;
        for (Method m : manifest.methods) {
            if (std::find(unique.begin(), unique.end(), m) == unique.end()) unique.push_back(m);
        }
        manifest.methods = std::move(unique);
    }

    std::vector<SimConfig> cells{SimConfig{}};
    for (const auto& [key, setter] : keys) {
        const auto it = entries.find(key);
        if (it == entries.end()) continue;
        std::vector<SimConfig> next;
        next.reserve(cells.size() * it->second.size());
        for (const auto& base : cells) {
            for (const auto& level : it->second) {
                SimConfig c = base;
                setter(c, level);
                next.push_back(std::move(c));
            }
        }
        cells = std::move(next);
    }
    for (const auto& c : cells) c.validate();
    manifest.configs = std::move(cells);
    return manifest;
}

Manifest parse_manifest(const std::string& text) {
    std::istringstream in(text);
    return parse_manifest(in);
}

std::string to_manifest(const SimConfig& c) {
    std::ostringstream out;
    out << "n = " << c.n << '\n'
        << "S = " << c.grid_size << '\n'
        << "rho = " << format_real(c.rho) << '\n'
        << "score_dist = " << to_string(c.score_dist) << '\n'
        << "K = " << c.truncation << '\n'
        << "delta = " << to_string(c.delta) << '\n'
        << "xi = " << format_real(c.xi) << '\n'
        << "ar_corr = " << format_real(c.ar_corr) << '\n'
        << "ar_var = " << format_real(c.ar_var) << '\n'
        << "replicates = " << c.replicates << '\n'
        << "seed = " << c.seed << '\n'
        << "preprocess = " << to_string(c.preprocess) << '\n'
        << "missing_frac = " << format_real(c.missing_frac) << '\n'
        << "pve = " << format_real(c.pve) << '\n'
        << "bandwidth = " << (c.bandwidth ? format_real(*c.bandwidth) : std::string("default")) << '\n';
    return out.str();
}

SimConfig parse_sim_config(const std::string& text) {
    const Manifest m = parse_manifest(text);
    if (m.configs.size() != 1) {
        throw ManifestError("expected a single configuration, manifest expands to " +
                            std::to_string(m.configs.size()));
    }
    return m.configs.front();
}

}  // namespace pairedfd
