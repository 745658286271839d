#include "aqg/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "aqg/errors.hpp"

namespace aqg {

namespace {

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

using Table = std::map<std::string, Entry>;  // "section.key" -> entry

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "grid.n1", "grid.n2", "grid.l1", "grid.l2",
        "params.alpha", "params.beta", "params.mu", "params.nu",
        "stepper.dt", "stepper.scheme", "stepper.dealias", "stepper.nonlinearity",
        "init.kind", "init.k1", "init.k2", "init.amplitude", "init.seed",
        "init.shell-min", "init.shell-max", "init.width",
        "init.normalize", "init.normalize-s", "init.target",
        "run.t-end", "run.sample-every", "run.snapshot-every", "run.galerkin",
        "run.seed", "run.output-dir", "run.norm-s", "run.blowup-factor",
        "run.decay-threshold",
    };
    return keys;
}

Table tokenize(const std::string& text) {
    Table table;
    std::istringstream in(text);
    std::string raw, section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string s = trim(raw);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw ConfigError(line, "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            if (section.empty()) throw ConfigError(line, "empty section name");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError(line, "expected key = value");
        if (section.empty()) throw ConfigError(line, "key outside any section");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty()) throw ConfigError(line, "empty key");
        const std::string full = section + "." + key;
        if (!known_keys().count(full)) throw ConfigError(line, "unknown key '" + full + "'");
        if (table.count(full)) throw ConfigError(line, "duplicate key '" + full + "'");
        table[full] = Entry{value, line, false};
    }
    return table;
}

class Reader {
  public:
    explicit Reader(Table table) : table_(std::move(table)) {}

    bool has(const std::string& key) const { return table_.count(key) > 0; }

    std::string get_string(const std::string& key) {
        Entry* e = find(key);
        if (!e) throw ConfigError(0, "missing required key '" + key + "'");
        return e->value;
    }

    std::string get_string(const std::string& key, const std::string& fallback) {
        Entry* e = find(key);
        return e ? e->value : fallback;
    }

    double get_double(const std::string& key) { return to_double(key, require(key)); }
    double get_double(const std::string& key, double fallback) {
        Entry* e = find(key);
        return e ? to_double(key, *e) : fallback;
    }

    long get_long(const std::string& key) { return to_long(key, require(key)); }
    long get_long(const std::string& key, long fallback) {
        Entry* e = find(key);
        return e ? to_long(key, *e) : fallback;
    }

    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) {
        Entry* e = find(key);
        if (!e) return fallback;
        std::uint64_t v{};
        const auto* b = e->value.data();
        auto [p, ec] = std::from_chars(b, b + e->value.size(), v);
        if (ec != std::errc{} || p != b + e->value.size())
            throw ConfigError(e->line, "'" + key + "' must be an unsigned integer");
        return v;
    }

    int line_of(const std::string& key) const {
        auto it = table_.find(key);
        return it == table_.end() ? 0 : it->second.line;
    }

    void reject_unused() const {
        for (const auto& [key, e] : table_)
            if (!e.used) throw ConfigError(e.line, "unknown key '" + key + "'");
    }

  private:
    Entry* find(const std::string& key) {
        auto it = table_.find(key);
        if (it == table_.end()) return nullptr;
        it->second.used = true;
        return &it->second;
    }

    Entry& require(const std::string& key) {
        Entry* e = find(key);
        if (!e) throw ConfigError(0, "missing required key '" + key + "'");
        return *e;
    }

    double to_double(const std::string& key, const Entry& e) {
        double v{};
        const auto* b = e.value.data();
        auto [p, ec] = std::from_chars(b, b + e.value.size(), v);
        if (ec != std::errc{} || p != b + e.value.size())
            throw ConfigError(e.line, "'" + key + "' must be a number, got '" + e.value + "'");
        return v;
    }

    long to_long(const std::string& key, const Entry& e) {
        long v{};
        const auto* b = e.value.data();
        auto [p, ec] = std::from_chars(b, b + e.value.size(), v);
        if (ec != std::errc{} || p != b + e.value.size())
            throw ConfigError(e.line, "'" + key + "' must be an integer, got '" + e.value + "'");
        return v;
    }

    Table table_;
};

[[noreturn]] void fail(Reader& r, const std::string& key, const std::string& msg) {
    throw ConfigError(r.line_of(key), msg);
}

}  // namespace

long RunConfig::steps() const {
    return std::lround(t_end / stepper.dt);
}

RunConfig parse_config(const std::string& text) {
    Reader r(tokenize(text));
    RunConfig cfg;

    const long n1 = r.get_long("grid.n1");
    const long n2 = r.get_long("grid.n2");
    const double l1 = r.get_double("grid.l1", 6.283185307179586);
    const double l2 = r.get_double("grid.l2", 6.283185307179586);
    try {
        cfg.grid = GridSpec(static_cast<int>(n1), static_cast<int>(n2), l1, l2);
    } catch (const std::invalid_argument& e) {
        fail(r, "grid.n1", e.what());
    }

    cfg.params.alpha = r.get_double("params.alpha");
    cfg.params.beta = r.get_double("params.beta");
    cfg.params.mu = r.get_double("params.mu", 1.0);
    cfg.params.nu = r.get_double("params.nu", 1.0);
    if (!(cfg.params.alpha > 0.0 && cfg.params.alpha < 1.0))
        fail(r, "params.alpha", "alpha must lie in (0,1)");
    if (!(cfg.params.beta > 0.0 && cfg.params.beta < 1.0))
        fail(r, "params.beta", "beta must lie in (0,1)");
    if (!(cfg.params.mu > 0.0)) fail(r, "params.mu", "mu must be positive");
    if (!(cfg.params.nu > 0.0)) fail(r, "params.nu", "nu must be positive");

    cfg.stepper.dt = r.get_double("stepper.dt");
    if (!(cfg.stepper.dt > 0.0)) fail(r, "stepper.dt", "dt must be positive");
    const std::string scheme = r.get_string("stepper.scheme", "integrating-factor-rk4");
    if (scheme != "integrating-factor-rk4")
        fail(r, "stepper.scheme", "unknown scheme '" + scheme + "'");
    const std::string dealias = r.get_string("stepper.dealias", "two-thirds");
    if (dealias == "two-thirds")
        cfg.stepper.dealias = Dealias::TwoThirds;
    else if (dealias == "none")
        cfg.stepper.dealias = Dealias::None;
    else
        fail(r, "stepper.dealias", "dealias must be 'two-thirds' or 'none'");
    const std::string nl = r.get_string("stepper.nonlinearity", "full");
    if (nl == "full")
        cfg.stepper.nonlinearity = Nonlinearity::Full;
    else if (nl == "masked")
        cfg.stepper.nonlinearity = Nonlinearity::Masked;
    else
        fail(r, "stepper.nonlinearity", "nonlinearity must be 'full' or 'masked'");

    const std::string kind = r.get_string("init.kind");
    if (kind == "plane-wave") {
        PlaneWave pw;
        pw.k1 = static_cast<int>(r.get_long("init.k1"));
        pw.k2 = static_cast<int>(r.get_long("init.k2"));
        pw.amplitude = r.get_double("init.amplitude");
        cfg.init.kind = pw;
    } else if (kind == "random-bandlimited") {
        RandomBandlimited rb;
        rb.seed = r.get_u64("init.seed", 1);
        rb.shell_min = r.get_double("init.shell-min");
        rb.shell_max = r.get_double("init.shell-max");
        rb.amplitude = r.get_double("init.amplitude");
        if (!(rb.shell_min >= 0.0 && rb.shell_max >= rb.shell_min))
            fail(r, "init.shell-min", "need 0 <= shell-min <= shell-max");
        cfg.init.kind = rb;
    } else if (kind == "gaussian-bump") {
        GaussianBump gb;
        gb.width = r.get_double("init.width");
        gb.amplitude = r.get_double("init.amplitude");
        if (!(gb.width > 0.0)) fail(r, "init.width", "width must be positive");
        cfg.init.kind = gb;
    } else {
        fail(r, "init.kind", "unknown init kind '" + kind + "'");
    }
    const std::string norm = r.get_string("init.normalize", "none");
    if (norm == "none")
        cfg.init.normalize = Normalize::None;
    else if (norm == "l2")
        cfg.init.normalize = Normalize::L2;
    else if (norm == "hs")
        cfg.init.normalize = Normalize::Hs;
    else if (norm == "hs-hom")
        cfg.init.normalize = Normalize::HsHom;
    else
        fail(r, "init.normalize", "normalize must be none, l2, hs or hs-hom");
    cfg.init.normalize_s = r.get_double("init.normalize-s", 0.0);
    cfg.init.target = r.get_double("init.target", 0.0);
    if (cfg.init.normalize != Normalize::None && !(cfg.init.target > 0.0))
        fail(r, "init.target", "normalization needs a positive target");

    cfg.t_end = r.get_double("run.t-end");
    if (!(cfg.t_end > 0.0)) fail(r, "run.t-end", "t-end must be positive");
    cfg.sample_every = r.get_long("run.sample-every", 1);
    if (cfg.sample_every < 1) fail(r, "run.sample-every", "sample-every must be >= 1");
    cfg.snapshot_every = r.get_long("run.snapshot-every", 0);
    if (cfg.snapshot_every < 0) fail(r, "run.snapshot-every", "snapshot-every must be >= 0");

    const std::string gal = r.get_string("run.galerkin", "full");
    if (gal == "full") {
        cfg.galerkin = GalerkinLevel::full();
    } else {
        double radius{};
        const auto* b = gal.data();
        auto [p, ec] = std::from_chars(b, b + gal.size(), radius);
        if (ec != std::errc{} || p != b + gal.size())
            fail(r, "run.galerkin", "galerkin must be 'full' or a cutoff radius");
        if (!(radius > 0.0 && radius <= cfg.grid.max_abs_xi()))
            fail(r, "run.galerkin", "galerkin radius outside the representable band");
        cfg.galerkin = GalerkinLevel::truncated(radius);
    }

    cfg.seed = r.get_u64("run.seed", 1);
    cfg.output_dir = r.get_string("run.output-dir");
    const std::string norm_s = r.get_string("run.norm-s", "auto");
    if (norm_s == "auto") {
        cfg.norm_s_auto = true;
        cfg.norm_s = 0.0;
    } else {
        cfg.norm_s_auto = false;
        const auto* b = norm_s.data();
        auto [p, ec] = std::from_chars(b, b + norm_s.size(), cfg.norm_s);
        if (ec != std::errc{} || p != b + norm_s.size())
            fail(r, "run.norm-s", "norm-s must be 'auto' or a number");
    }
    cfg.blowup_factor = r.get_double("run.blowup-factor", 1e6);
    if (!(cfg.blowup_factor > 0.0)) fail(r, "run.blowup-factor", "blowup-factor must be positive");
    cfg.decay_threshold = r.get_double("run.decay-threshold", 0.1);
    if (!(cfg.decay_threshold > 0.0)) fail(r, "run.decay-threshold", "decay-threshold must be positive");

    const long steps = cfg.steps();
    if (steps < 1) fail(r, "run.t-end", "t-end must cover at least one step");
    if (steps % cfg.sample_every != 0)
        fail(r, "run.sample-every", "sample-every must divide the step count (" +
                                        std::to_string(steps) + ")");

    r.reject_unused();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(0, "cannot open config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string format_double(double v) {
    char buf[40];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, p);
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "[grid]\n";
    out << "n1 = " << cfg.grid.n1 << "\n";
    out << "n2 = " << cfg.grid.n2 << "\n";
    out << "l1 = " << format_double(cfg.grid.l1) << "\n";
    out << "l2 = " << format_double(cfg.grid.l2) << "\n";
    out << "\n[params]\n";
    out << "alpha = " << format_double(cfg.params.alpha) << "\n";
    out << "beta = " << format_double(cfg.params.beta) << "\n";
    out << "mu = " << format_double(cfg.params.mu) << "\n";
    out << "nu = " << format_double(cfg.params.nu) << "\n";
    out << "\n[stepper]\n";
    out << "dt = " << format_double(cfg.stepper.dt) << "\n";
    out << "scheme = integrating-factor-rk4\n";
    out << "dealias = " << (cfg.stepper.dealias == Dealias::TwoThirds ? "two-thirds" : "none") << "\n";
    out << "nonlinearity = " << (cfg.stepper.nonlinearity == Nonlinearity::Full ? "full" : "masked")
        << "\n";
    out << "\n[init]\n";
    if (const auto* pw = std::get_if<PlaneWave>(&cfg.init.kind)) {
        out << "kind = plane-wave\n";
        out << "k1 = " << pw->k1 << "\n";
        out << "k2 = " << pw->k2 << "\n";
        out << "amplitude = " << format_double(pw->amplitude) << "\n";
    } else if (const auto* rb = std::get_if<RandomBandlimited>(&cfg.init.kind)) {
        out << "kind = random-bandlimited\n";
        out << "seed = " << rb->seed << "\n";
        out << "shell-min = " << format_double(rb->shell_min) << "\n";
        out << "shell-max = " << format_double(rb->shell_max) << "\n";
        out << "amplitude = " << format_double(rb->amplitude) << "\n";
    } else {
        const auto& gb = std::get<GaussianBump>(cfg.init.kind);
        out << "kind = gaussian-bump\n";
        out << "width = " << format_double(gb.width) << "\n";
        out << "amplitude = " << format_double(gb.amplitude) << "\n";
    }
    switch (cfg.init.normalize) {
        case Normalize::None: out << "normalize = none\n"; break;
        case Normalize::L2: out << "normalize = l2\n"; break;
        case Normalize::Hs: out << "normalize = hs\n"; break;
        case Normalize::HsHom: out << "normalize = hs-hom\n"; break;
    }
    out << "normalize-s = " << format_double(cfg.init.normalize_s) << "\n";
    out << "target = " << format_double(cfg.init.target) << "\n";
    out << "\n[run]\n";
    out << "t-end = " << format_double(cfg.t_end) << "\n";
    out << "sample-every = " << cfg.sample_every << "\n";
    out << "snapshot-every = " << cfg.snapshot_every << "\n";
    if (cfg.galerkin.is_full())
        out << "galerkin = full\n";
    else
        out << "galerkin = " << format_double(*cfg.galerkin.radius) << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "output-dir = " << cfg.output_dir << "\n";
    if (cfg.norm_s_auto)
        out << "norm-s = auto\n";
    else
        out << "norm-s = " << format_double(cfg.norm_s) << "\n";
    out << "blowup-factor = " << format_double(cfg.blowup_factor) << "\n";
    out << "decay-threshold = " << format_double(cfg.decay_threshold) << "\n";
    return out.str();
}

}  // namespace aqg
