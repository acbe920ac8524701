#include "cfgn/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <variant>

#include "cfgn/error.hpp"
#include "cfgn/format.hpp"

namespace cfgn {

namespace {

using Value = std::variant<double, std::uint64_t, long, bool, std::string, std::vector<std::string>>;

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw Error(ErrorKind::config_error, "line " + std::to_string(line) + ": " + msg);
}

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Drops a trailing comment that is not inside a string.
std::string_view strip_comment(std::string_view s) {
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') quoted = !quoted;
        if (s[i] == '#' && !quoted) return s.substr(0, i);
    }
    return s;
}

std::string parse_string(std::string_view v, std::size_t line) {
    if (v.size() < 2 || v.front() != '"' || v.back() != '"') fail(line, "expected a quoted string");
    std::string out;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        if (v[i] == '\\' && i + 2 < v.size()) {
            ++i;
            out += v[i] == 'n' ? '\n' : v[i];
        } else if (v[i] == '"') {
            fail(line, "unescaped quote in string");
        } else {
            out += v[i];
        }
    }
    return out;
}

Value parse_value(std::string_view v, std::size_t line) {
    if (v.empty()) fail(line, "missing value");
    if (v == "true") return true;
    if (v == "false") return false;
    if (v.front() == '"') return parse_string(v, line);
    if (v.front() == '[') {
        if (v.back() != ']') fail(line, "unterminated array");
        std::vector<std::string> items;
        auto body = trim(v.substr(1, v.size() - 2));
        while (!body.empty()) {
            const auto comma = body.find(',');
            const auto item = trim(body.substr(0, comma));
            if (!item.empty()) items.push_back(parse_string(item, line));
            if (comma == std::string_view::npos) break;
            body = trim(body.substr(comma + 1));
        }
        return items;
    }
    const char* first = v.data();
    const char* last = v.data() + v.size();
    const bool integral = v.find_first_of(".eE") == std::string_view::npos
                       && v.find("inf") == std::string_view::npos && v.find("nan") == std::string_view::npos;
    if (integral) {
        if (v.front() != '-') {
            std::uint64_t u = 0;
            auto [p, ec] = std::from_chars(first, last, u);
            if (ec == std::errc() && p == last) return u;
        }
        long l = 0;
        auto [p, ec] = std::from_chars(first, last, l);
        if (ec == std::errc() && p == last) return l;
    }
    double d = 0.0;
    auto [p, ec] = std::from_chars(first, last, d);
    if (ec != std::errc() || p != last) fail(line, "cannot parse value '" + std::string(v) + "'");
    return d;
}

double as_double(const Value& v, const std::string& key) {
    if (auto d = std::get_if<double>(&v)) return *d;
    if (auto u = std::get_if<std::uint64_t>(&v)) return static_cast<double>(*u);
    if (auto l = std::get_if<long>(&v)) return static_cast<double>(*l);
    throw Error(ErrorKind::config_error, key + ": expected a number");
}

long as_long(const Value& v, const std::string& key) {
    if (auto u = std::get_if<std::uint64_t>(&v)) {
        if (*u <= static_cast<std::uint64_t>(std::numeric_limits<long>::max())) return static_cast<long>(*u);
    }
    if (auto l = std::get_if<long>(&v)) return *l;
    throw Error(ErrorKind::config_error, key + ": expected an integer");
}

std::uint64_t as_u64(const Value& v, const std::string& key) {
    if (auto u = std::get_if<std::uint64_t>(&v)) return *u;
    throw Error(ErrorKind::config_error, key + ": expected a non-negative integer");
}

bool as_bool(const Value& v, const std::string& key) {
    if (auto b = std::get_if<bool>(&v)) return *b;
    throw Error(ErrorKind::config_error, key + ": expected true or false");
}

const std::string& as_string(const Value& v, const std::string& key) {
    if (auto s = std::get_if<std::string>(&v)) return *s;
    throw Error(ErrorKind::config_error, key + ": expected a string");
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    return out + '"';
}

void assign(ExperimentConfig& c, const std::string& key, const Value& v) {
    if (key == "process.h1") c.h1 = as_double(v, key);
    else if (key == "process.h2") c.h2 = as_double(v, key);
    else if (key == "process.sigma1") c.sigma1 = as_double(v, key);
    else if (key == "process.sigma2") c.sigma2 = as_double(v, key);
    else if (key == "process.rho") c.rho = as_double(v, key);
    else if (key == "process.variant") c.variant = parse_variant(as_string(v, key));
    else if (key == "process.lambda0_over_pi") c.lambda0_over_pi = as_double(v, key);
    else if (key == "process.a1") c.a1 = as_double(v, key);
    else if (key == "process.a2") c.a2 = as_double(v, key);
    else if (key == "process.half_limit") c.half_limit = as_bool(v, key);
    else if (key == "simulation.n_points") c.n_points = as_long(v, key);
    else if (key == "simulation.reps") c.reps = as_long(v, key);
    else if (key == "simulation.asymptote_reps") c.asymptote_reps = as_long(v, key);
    else if (key == "simulation.seed") c.seed = as_u64(v, key);
    else if (key == "simulation.threads") c.threads = as_long(v, key);
    else if (key == "estimation.acvf_n") c.acvf_n = as_long(v, key);
    else if (key == "estimation.h_max") c.h_max = as_long(v, key);
    else if (key == "estimation.spectrum_h_max") c.spectrum_h_max = as_long(v, key);
    else if (key == "estimation.window") {
        const auto& w = as_string(v, key);
        if (w == "none") c.window = LagWindow::none;
        else if (w == "bartlett") c.window = LagWindow::bartlett;
        else throw Error(ErrorKind::config_error, key + ": expected \"none\" or \"bartlett\"");
    }
    else if (key == "estimation.tol") c.tol = as_double(v, key);
    else if (key == "freq_grid.count") c.freq_count = as_long(v, key);
    else if (key == "freq_grid.max_over_pi") c.freq_max_over_pi = as_double(v, key);
    else if (key == "output.dir") c.out_dir = as_string(v, key);
    else if (key == "output.statistics") {
        auto s = std::get_if<std::vector<std::string>>(&v);
        if (!s) throw Error(ErrorKind::config_error, key + ": expected an array of strings");
        c.statistics = *s;
    }
    else throw Error(ErrorKind::config_error, "unknown key '" + key + "'");
}

} // namespace

std::string_view to_string(Variant v) noexcept {
    return v == Variant::causal ? "causal" : "wellbalanced";
}

Variant parse_variant(std::string_view s) {
    if (s == "causal") return Variant::causal;
    if (s == "wellbalanced" || s == "well_balanced") return Variant::well_balanced;
    throw Error(ErrorKind::config_error, "variant must be causal or wellbalanced, got '" + std::string(s) + "'");
}

CfgnParams ExperimentConfig::cfgn_params() const {
    return CfgnParams(ProcessParams(h1, h2, sigma1, sigma2, rho, variant, half_limit),
                      lambda0_over_pi * std::numbers::pi, a1, a2);
}

std::vector<double> ExperimentConfig::freq_grid() const {
    std::vector<double> g(static_cast<std::size_t>(freq_count));
    const double top = freq_max_over_pi * std::numbers::pi;
    for (std::size_t k = 0; k < g.size(); ++k) {
        g[k] = top * static_cast<double>(k + 1) / static_cast<double>(freq_count);
    }
    return g;
}

bool ExperimentConfig::wants(std::string_view statistic) const {
    return std::find(statistics.begin(), statistics.end(), statistic) != statistics.end();
}

void validate(const ExperimentConfig& c) {
    try {
        (void)c.cfgn_params();
    } catch (const Error& e) {
        throw Error(e.kind(), std::string("process: ") + e.what());
    }
    auto require = [](bool ok, const std::string& msg) {
        if (!ok) throw Error(ErrorKind::config_error, msg);
    };
    require(c.n_points >= 2, "simulation.n_points must be >= 2");
    require(c.reps >= 2, "simulation.reps must be >= 2");
    require(c.asymptote_reps >= 2, "simulation.asymptote_reps must be >= 2");
    require(c.threads >= 1, "simulation.threads must be >= 1");
    require(c.acvf_n >= 0, "estimation.acvf_n must be >= 0");
    require(c.h_max >= 0, "estimation.h_max must be >= 0");
    require(c.spectrum_h_max >= 0, "estimation.spectrum_h_max must be >= 0");
    require(c.tol > 0.0, "estimation.tol must be positive");
    require(c.freq_count >= 1, "freq_grid.count must be >= 1");
    require(c.freq_max_over_pi > 0.0 && c.freq_max_over_pi <= 1.0, "freq_grid.max_over_pi must lie in (0, 1]");
    require(!c.out_dir.empty(), "output.dir must not be empty");
    for (const auto& s : c.statistics) {
        require(std::find(known_statistics.begin(), known_statistics.end(), s) != known_statistics.end(),
                "output.statistics: unknown statistic '" + s + "'");
    }
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig cfg;
    std::string table;
    std::map<std::string, std::size_t> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = std::min(text.find('\n', pos), text.size());
        const auto line = trim(strip_comment(text.substr(pos, end - pos)));
        pos = end + 1;
        ++line_no;
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "malformed table header");
            table = std::string(trim(line.substr(1, line.size() - 2)));
            if (table.empty()) fail(line_no, "empty table name");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) fail(line_no, "expected key = value");
        const auto key = std::string(trim(line.substr(0, eq)));
        if (key.empty()) fail(line_no, "empty key");
        const std::string full = table.empty() ? key : table + "." + key;
        if (!seen.emplace(full, line_no).second) fail(line_no, "duplicate key '" + full + "'");
        try {
            assign(cfg, full, parse_value(trim(line.substr(eq + 1)), line_no));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::config_error) throw;
            if (std::string_view(e.what()).starts_with("line ")) throw;
            fail(line_no, e.what());
        }
    }
    validate(cfg);
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error(ErrorKind::config_error, "cannot read config '" + file.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string to_text(const ExperimentConfig& c) {
    auto num = [](double v) { return format_double(v); };
    std::string s;
    s += "[process]\n";
    s += "h1 = " + num(c.h1) + "\n";
    s += "h2 = " + num(c.h2) + "\n";
    s += "sigma1 = " + num(c.sigma1) + "\n";
    s += "sigma2 = " + num(c.sigma2) + "\n";
    s += "rho = " + num(c.rho) + "\n";
    s += "variant = " + quote(std::string(to_string(c.variant))) + "\n";
    s += "lambda0_over_pi = " + num(c.lambda0_over_pi) + "\n";
    s += "a1 = " + num(c.a1) + "\n";
    s += "a2 = " + num(c.a2) + "\n";
    s += std::string("half_limit = ") + (c.half_limit ? "true" : "false") + "\n";
    s += "\n[simulation]\n";
    s += "n_points = " + std::to_string(c.n_points) + "\n";
    s += "reps = " + std::to_string(c.reps) + "\n";
    s += "asymptote_reps = " + std::to_string(c.asymptote_reps) + "\n";
    s += "seed = " + std::to_string(c.seed) + "\n";
    s += "threads = " + std::to_string(c.threads) + "\n";
    s += "\n[estimation]\n";
    s += "acvf_n = " + std::to_string(c.acvf_n) + "\n";
    s += "h_max = " + std::to_string(c.h_max) + "\n";
    s += "spectrum_h_max = " + std::to_string(c.spectrum_h_max) + "\n";
    s += std::string("window = ") + (c.window == LagWindow::bartlett ? "\"bartlett\"" : "\"none\"") + "\n";
    s += "tol = " + num(c.tol) + "\n";
    s += "\n[freq_grid]\n";
    s += "count = " + std::to_string(c.freq_count) + "\n";
    s += "max_over_pi = " + num(c.freq_max_over_pi) + "\n";
    s += "\n[output]\n";
    s += "dir = " + quote(c.out_dir) + "\n";
    s += "statistics = [";
    for (std::size_t i = 0; i < c.statistics.size(); ++i) s += (i ? ", " : "") + quote(c.statistics[i]);
    s += "]\n";
    return s;
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
    ExperimentConfig c = cfg;
    c.threads = 1;
    c.out_dir = "out";
    return Fnv1a().text(to_text(c)).value();
}

} // namespace cfgn
