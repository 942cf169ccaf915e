#include "edgefutures/config.hpp"

#include "edgefutures/errors.hpp"
#include "edgefutures/format.hpp"
#include "edgefutures/negotiation.hpp"
#include "edgefutures/numerics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace edgefutures {

namespace {

enum class Kind { real, integer, text };

struct KeySpec {
    std::string_view name;
    Kind kind;
};

// Canonical order. Ranges are drawn in this order regardless of document order.
constexpr KeySpec kKeys[] = {
    {"M", Kind::integer},         {"p_l", Kind::real},       {"c_l", Kind::real},
    {"p_min", Kind::real},        {"delta_p", Kind::real},   {"kappa", Kind::integer},
    {"p_max", Kind::real},        {"lambda1_s", Kind::real}, {"lambda2_s", Kind::real},
    {"tau", Kind::real},          {"omega", Kind::real},     {"d", Kind::real},
    {"W", Kind::real},            {"eps1", Kind::real},      {"eps1_db", Kind::real},
    {"eps2", Kind::real},         {"eps2_db", Kind::real},   {"u_min", Kind::real},
    {"lambda1_b", Kind::real},    {"lambda2_b", Kind::real}, {"lambda2", Kind::real},
    {"snr_sampling", Kind::text},
};

const KeySpec* find_key(std::string_view name) {
    for (const auto& k : kKeys) {
        if (k.name == name) return &k;
    }
    return nullptr;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(std::string_view text, int line) {
    text = trim(text);
    double value = 0.0;
    const auto* begin = text.data();
    const auto* end = text.data() + text.size();
    if (!text.empty() && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || text.empty() || !std::isfinite(value)) {
        throw ConfigError("not a number: '" + std::string(text) + "'", line);
    }
    return value;
}

// Keeps parameter draws off the substreams used for environment samples.
constexpr std::uint64_t kConfigStream = 0x636F6E666967ULL;

const std::vector<std::pair<std::string_view, std::string_view>> kExclusive = {
    {"kappa", "p_max"},
    {"eps1", "eps1_db"},
    {"eps2", "eps2_db"},
    {"lambda2", "lambda2_s"},
    {"lambda2", "lambda2_b"},
};

}  // namespace

void ConfigTemplate::put(std::string_view key, std::string_view value, int line) {
    const KeySpec* spec = find_key(key);
    if (!spec) throw ConfigError("unknown key '" + std::string(key) + "'", line);

    Entry entry;
    value = trim(value);
    if (spec->kind == Kind::text) {
        if (value != "linear" && value != "db") {
            throw ConfigError("snr_sampling must be 'linear' or 'db'", line);
        }
        entry.text = std::string(value);
    } else {
        const auto dots = value.find("..");
        if (dots == std::string_view::npos) {
            entry.lo = entry.hi = parse_number(value, line);
        } else {
            entry.lo = parse_number(value.substr(0, dots), line);
            entry.hi = parse_number(value.substr(dots + 2), line);
            if (entry.lo > entry.hi) {
                throw ConfigError("range '" + std::string(value) + "' has lo > hi", line);
            }
        }
        if (spec->kind == Kind::integer &&
            (entry.lo != std::floor(entry.lo) || entry.hi != std::floor(entry.hi))) {
            throw ConfigError("'" + std::string(key) + "' takes integer values", line);
        }
    }

    const std::string name(key);
    if (!entries_.contains(name)) order_.push_back(name);
    entries_[name] = entry;
}

ConfigTemplate ConfigTemplate::parse(std::string_view text) {
    ConfigTemplate tmpl;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
        const auto key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError("missing key", line_no);
        if (tmpl.entries_.contains(key)) {
            throw ConfigError("duplicate key '" + std::string(key) + "'", line_no);
        }
        tmpl.put(key, line.substr(eq + 1), line_no);
    }
    for (const auto& [a, b] : kExclusive) {
        if (tmpl.entries_.contains(a) && tmpl.entries_.contains(b)) {
            throw ConfigError("keys '" + std::string(a) + "' and '" + std::string(b) +
                              "' are mutually exclusive");
        }
    }
    return tmpl;
}

void ConfigTemplate::set(std::string_view key, std::string_view value) {
    // An override replaces whichever spelling of the same parameter the document used.
    for (const auto& [a, b] : kExclusive) {
        const std::string_view other = key == a ? b : (key == b ? a : std::string_view{});
        if (other.empty()) continue;
        if (auto it = entries_.find(other); it != entries_.end()) {
            entries_.erase(it);
            std::erase(order_, std::string(other));
        }
    }
    put(key, value, 0);
}

bool ConfigTemplate::has_ranges() const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [](const auto& kv) { return kv.second.is_range(); });
}

MarketConfig ConfigTemplate::sample(Rng& rng) const {
    std::map<std::string_view, double> value;
    std::string sampling = "linear";
    for (const auto& k : kKeys) {
        const auto it = entries_.find(k.name);
        if (it == entries_.end()) continue;
        const Entry& e = it->second;
        if (k.kind == Kind::text) {
            sampling = e.text;
        } else if (!e.is_range()) {
            value[k.name] = e.lo;
        } else if (k.kind == Kind::integer) {
            value[k.name] = rng.uniform_int(static_cast<int>(e.lo), static_cast<int>(e.hi));
        } else {
            value[k.name] = rng.uniform(e.lo, e.hi);
        }
    }
    const auto get = [&value](std::string_view key, auto& field) {
        if (auto it = value.find(key); it != value.end()) {
            field = static_cast<std::remove_reference_t<decltype(field)>>(it->second);
        }
    };

    MarketConfig cfg;
    auto& s = cfg.seller;
    auto& b = cfg.buyer;
    get("M", s.M);
    get("p_l", s.p_l);
    get("c_l", s.c_l);
    get("p_min", s.p_min);
    get("delta_p", s.delta_p);
    get("kappa", s.kappa);
    get("lambda1_s", s.lambda1);
    get("lambda2_s", s.lambda2);
    get("tau", b.tau);
    get("omega", b.omega);
    get("d", b.d);
    get("W", b.W);
    get("eps1", b.eps1);
    get("eps2", b.eps2);
    get("u_min", b.u_min);
    get("lambda1_b", b.lambda1);
    get("lambda2_b", b.lambda2);
    if (auto it = value.find("eps1_db"); it != value.end()) b.eps1 = db_to_linear(it->second);
    if (auto it = value.find("eps2_db"); it != value.end()) b.eps2 = db_to_linear(it->second);
    if (auto it = value.find("lambda2"); it != value.end()) s.lambda2 = b.lambda2 = it->second;
    if (auto it = value.find("p_max"); it != value.end()) {
        if (!(s.delta_p > 0.0)) throw ValidationError("delta_p must be > 0");
        const double steps = std::floor((it->second - s.p_min) / s.delta_p + 1e-9);
        if (steps < 0.0) throw ValidationError("p_max must be >= p_min");
        s.kappa = static_cast<int>(std::min(steps, 1e9));
    }
    cfg.snr_sampling = sampling == "db" ? SnrSampling::decibel : SnrSampling::linear;
    cfg.validate();
    return cfg;
}

MarketConfig parse_config(std::string_view text, std::uint64_t seed) {
    return draw_config(ConfigTemplate::parse(text), seed, false);
}

std::string emit_config(const MarketConfig& cfg) {
    const auto& s = cfg.seller;
    const auto& b = cfg.buyer;
    std::ostringstream out;
    const auto line = [&out](std::string_view key, const std::string& v) {
        out << key << " = " << v << '\n';
    };
    line("M", std::to_string(s.M));
    line("p_l", format_double(s.p_l));
    line("c_l", format_double(s.c_l));
    line("p_min", format_double(s.p_min));
    line("delta_p", format_double(s.delta_p));
    line("kappa", std::to_string(s.kappa));
    line("lambda1_s", format_double(s.lambda1));
    line("lambda2_s", format_double(s.lambda2));
    line("tau", format_double(b.tau));
    line("omega", format_double(b.omega));
    line("d", format_double(b.d));
    line("W", format_double(b.W));
    line("eps1", format_double(b.eps1));
    line("eps2", format_double(b.eps2));
    line("u_min", format_double(b.u_min));
    line("lambda1_b", format_double(b.lambda1));
    line("lambda2_b", format_double(b.lambda2));
    line("snr_sampling", cfg.snr_sampling == SnrSampling::decibel ? "db" : "linear");
    return out.str();
}

MarketConfig draw_config(const ConfigTemplate& tmpl, std::uint64_t seed, bool require_contract,
                         int max_attempts) {
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        Rng rng(derive_seed(splitmix64(seed ^ kConfigStream), static_cast<std::uint64_t>(attempt)));
        MarketConfig cfg = tmpl.sample(rng);
        if (!require_contract || !negotiate_futures(cfg).failed()) return cfg;
        if (!tmpl.has_ranges()) break;
    }
    throw ValidationError("no parameter draw admits a risk-constrained futures contract");
}

}  // namespace edgefutures
