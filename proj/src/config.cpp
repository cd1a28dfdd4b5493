#include "barrier/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace barrier {

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

double parse_double(const std::string& key, std::string_view text)
{
    const std::string s = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw ConfigError(key, "expected a finite number, got '" + s + "'");
    }
    return v;
}

double parse_positive(const std::string& key, std::string_view text)
{
    const double v = parse_double(key, text);
    if (!(v > 0.0)) throw ConfigError(key, "must be positive");
    return v;
}

int parse_int(const std::string& key, std::string_view text)
{
    const std::string s = trim(text);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw ConfigError(key, "expected an integer, got '" + s + "'");
    }
    return v;
}

Vector parse_vector(const std::string& key, std::string_view text, Eigen::Index size = -1)
{
    const auto parts = split(text, ',');
    if (size >= 0 && static_cast<Eigen::Index>(parts.size()) != size) {
        throw ConfigError(key, "expected " + std::to_string(size) + " comma-separated values");
    }
    Vector v(static_cast<Eigen::Index>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_double(key, parts[i]);
    return v;
}

CbfKind parse_kind(const std::string& key, std::string_view text)
{
    const auto kind = parse_cbf_kind(trim(text));
    if (!kind) throw ConfigError(key, "unknown CBF kind '" + trim(text) + "'");
    return *kind;
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(const Vector& v)
{
    std::string out;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += fmt(v(i));
    }
    return out;
}

struct KeyHandler
{
    std::string key;
    std::function<void(ScenarioConfig&, const std::string&, std::string_view)> set;
    // Canonical value; empty optional means the key is not serialized.
    std::function<std::optional<std::string>(const ScenarioConfig&)> get;
};

template <typename Member>
KeyHandler number_key(std::string key, Member member, bool positive)
{
    return {std::move(key),
            [member, positive](ScenarioConfig& c, const std::string& k, std::string_view v) {
                std::invoke(member, c) = positive ? parse_positive(k, v) : parse_double(k, v);
            },
            [member](const ScenarioConfig& c) -> std::optional<std::string> {
                return fmt(std::invoke(member, const_cast<ScenarioConfig&>(c)));
            }};
}

#define PENDULUM(field) [](ScenarioConfig& c) -> double& { return c.pendulum.field; }
#define BICYCLE(field) [](ScenarioConfig& c) -> double& { return c.bicycle.field; }

// Aliases under `cbf.` and `filter.` resolve against the active scenario and
// kind; they are never serialized since the canonical keys carry the values.
double& active_mu(ScenarioConfig& c)
{
    if (c.scenario == Scenario::Bicycle) return c.bicycle.mu;
    switch (c.cbf) {
    case CbfKind::Backstepping: return c.pendulum.mu_backstepping;
    case CbfKind::Recbf: return c.pendulum.mu_recbf;
    default: return c.pendulum.mu_abc;
    }
}

KeyHandler alias_key(std::string key, std::function<double&(ScenarioConfig&)> target)
{
    return {std::move(key),
            [target](ScenarioConfig& c, const std::string& k, std::string_view v) { target(c) = parse_positive(k, v); },
            [](const ScenarioConfig&) -> std::optional<std::string> { return std::nullopt; }};
}

std::string hold_name(InputHold hold) { return hold == InputHold::ZeroOrder ? "zoh" : "stage"; }

const std::vector<KeyHandler>& handlers()
{
    static const std::vector<KeyHandler> table = [] {
        std::vector<KeyHandler> t;
        t.push_back({"scenario",
                     [](ScenarioConfig& c, const std::string& k, std::string_view v) {
                         const std::string s = trim(v);
                         if (s == "pendulum") c.scenario = Scenario::Pendulum;
                         else if (s == "bicycle") c.scenario = Scenario::Bicycle;
                         else throw ConfigError(k, "expected pendulum or bicycle, got '" + s + "'");
                     },
                     [](const ScenarioConfig& c) -> std::optional<std::string> {
                         return std::string(to_string(c.scenario));
                     }});
        t.push_back({"cbf", [](ScenarioConfig& c, const std::string& k, std::string_view v) { c.cbf = parse_kind(k, v); },
                     [](const ScenarioConfig& c) -> std::optional<std::string> {
                         return std::string(to_string(c.cbf));
                     }});

        t.push_back(number_key("pendulum.alpha_c", PENDULUM(alpha_c), true));
        t.push_back(number_key("pendulum.alpha_outer", PENDULUM(alpha_outer), true));
        t.push_back(number_key("pendulum.gamma", PENDULUM(gamma), true));
        t.push_back(number_key("pendulum.epsilon", PENDULUM(epsilon), true));
        t.push_back(number_key("pendulum.K", PENDULUM(K), true));
        t.push_back(number_key("pendulum.mu_backstepping", PENDULUM(mu_backstepping), true));
        t.push_back(number_key("pendulum.mu_abc", PENDULUM(mu_abc), true));
        t.push_back(number_key("pendulum.mu_recbf", PENDULUM(mu_recbf), true));

        t.push_back(number_key("bicycle.L", BICYCLE(L), true));
        t.push_back(number_key("bicycle.v_d", BICYCLE(v_d), false));
        t.push_back(number_key("bicycle.vhat_d", BICYCLE(vhat_d), false));
        t.push_back(number_key("bicycle.xi_o", BICYCLE(xi_o), false));
        t.push_back(number_key("bicycle.eta_o", BICYCLE(eta_o), false));
        t.push_back(number_key("bicycle.r_o", BICYCLE(r_o), true));
        t.push_back(number_key("bicycle.k_eta", BICYCLE(k_eta), false));
        t.push_back(number_key("bicycle.k_theta", BICYCLE(k_theta), false));
        t.push_back(number_key("bicycle.k_v", BICYCLE(k_v), false));
        t.push_back(number_key("bicycle.gamma1", BICYCLE(gamma1), true));
        t.push_back(number_key("bicycle.gamma2", BICYCLE(gamma2), true));
        t.push_back(number_key("bicycle.alphahat_c", BICYCLE(alphahat_c), true));
        t.push_back(number_key("bicycle.sigma", BICYCLE(sigma), true));
        t.push_back(number_key("bicycle.mu", BICYCLE(mu), true));
        t.push_back(number_key("bicycle.alpha_c", BICYCLE(alpha_c), true));
        t.push_back(number_key("bicycle.epsilon", BICYCLE(epsilon), true));

        t.push_back(alias_key("cbf.mu", active_mu));
        t.push_back(alias_key("cbf.alpha", [](ScenarioConfig& c) -> double& {
            return c.scenario == Scenario::Bicycle ? c.bicycle.alpha_c : c.pendulum.alpha_c;
        }));
        t.push_back(alias_key("cbf.epsilon", [](ScenarioConfig& c) -> double& {
            return c.scenario == Scenario::Bicycle ? c.bicycle.epsilon : c.pendulum.epsilon;
        }));
        t.push_back(alias_key("cbf.K", [](ScenarioConfig& c) -> double& { return c.pendulum.K; }));
        t.push_back(alias_key("filter.alpha", [](ScenarioConfig& c) -> double& {
            return c.scenario == Scenario::Bicycle ? c.bicycle.alpha_c : c.pendulum.alpha_outer;
        }));
        t.push_back({"filter.gamma",
                     [](ScenarioConfig& c, const std::string& k, std::string_view v) {
                         if (c.scenario == Scenario::Pendulum) {
                             c.pendulum.gamma = parse_positive(k, v);
                             return;
                         }
                         const Vector g = parse_vector(k, v, 2);
                         if (!(g.minCoeff() > 0.0)) throw ConfigError(k, "weights must be positive");
                         c.bicycle.gamma1 = g(0);
                         c.bicycle.gamma2 = g(1);
                     },
                     [](const ScenarioConfig&) -> std::optional<std::string> { return std::nullopt; }});

        t.push_back({"init.x0",
                     [](ScenarioConfig& c, const std::string& k, std::string_view v) { c.x0 = parse_vector(k, v); },
                     [](const ScenarioConfig& c) -> std::optional<std::string> {
                         if (!c.x0) return std::nullopt;
                         return fmt(*c.x0);
                     }});

        t.push_back(number_key("sim.T", [](ScenarioConfig& c) -> double& { return c.sim.T; }, true));
        t.push_back(number_key("sim.dt", [](ScenarioConfig& c) -> double& { return c.sim.dt; }, true));
        t.push_back(
            number_key("sim.blowup", [](ScenarioConfig& c) -> double& { return c.sim.blowup_threshold; }, true));
        t.push_back({"sim.hold",
                     [](ScenarioConfig& c, const std::string& k, std::string_view v) {
                         const std::string s = trim(v);
                         if (s == "zoh") c.sim.hold = InputHold::ZeroOrder;
                         else if (s == "stage") c.sim.hold = InputHold::PerStage;
                         else throw ConfigError(k, "expected zoh or stage, got '" + s + "'");
                     },
                     [](const ScenarioConfig& c) -> std::optional<std::string> { return hold_name(c.sim.hold); }});

        t.push_back({"scan.lo",
                     [](ScenarioConfig& c, const std::string& k, std::string_view v) { c.scan.lo = parse_vector(k, v, 2); },
                     [](const ScenarioConfig& c) -> std::optional<std::string> {
                         if (!c.scan.lo) return std::nullopt;
                         return fmt(*c.scan.lo);
                     }});
        t.push_back({"scan.hi",
                     [](ScenarioConfig& c, const std::string& k, std::string_view v) { c.scan.hi = parse_vector(k, v, 2); },
                     [](const ScenarioConfig& c) -> std::optional<std::string> {
                         if (!c.scan.hi) return std::nullopt;
                         return fmt(*c.scan.hi);
                     }});
        t.push_back({"scan.res",
                     [](ScenarioConfig& c, const std::string& k, std::string_view v) {
                         const auto parts = split(v, ',');
                         if (parts.size() != 2) throw ConfigError(k, "expected two resolutions");
                         std::vector<int> res;
                         for (const auto& p : parts) {
                             const int r = parse_int(k, p);
                             if (r < 2) throw ConfigError(k, "resolution must be at least 2");
                             res.push_back(r);
                         }
                         c.scan.resolution = res;
                     },
                     [](const ScenarioConfig& c) -> std::optional<std::string> {
                         return std::to_string(c.scan.resolution[0]) + "," + std::to_string(c.scan.resolution[1]);
                     }});
        t.push_back({"scan.slice",
                     [](ScenarioConfig& c, const std::string& k, std::string_view v) {
                         c.scan.slice = parse_vector(k, v, 2);
                     },
                     [](const ScenarioConfig& c) -> std::optional<std::string> { return fmt(c.scan.slice); }});

        t.push_back({"compare.kinds",
                     [](ScenarioConfig& c, const std::string& k, std::string_view v) {
                         std::vector<CbfKind> kinds;
                         for (const auto& p : split(v, ',')) kinds.push_back(parse_kind(k, p));
                         c.compare_kinds = kinds;
                     },
                     [](const ScenarioConfig& c) -> std::optional<std::string> {
                         std::string out;
                         for (std::size_t i = 0; i < c.compare_kinds.size(); ++i) {
                             if (i) out += ',';
                             out += to_string(c.compare_kinds[i]);
                         }
                         return out;
                     }});
        return t;
    }();
    return table;
}

#undef PENDULUM
#undef BICYCLE

}  // namespace

std::string_view to_string(Scenario scenario)
{
    return scenario == Scenario::Pendulum ? "pendulum" : "bicycle";
}

const std::vector<std::string>& config_keys()
{
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& h : handlers()) k.push_back(h.key);
        return k;
    }();
    return keys;
}

void ScenarioConfig::apply(std::string_view key, std::string_view value)
{
    const std::string k = trim(key);
    for (const auto& h : handlers()) {
        if (h.key == k) {
            h.set(*this, k, value);
            return;
        }
    }
    throw ConfigError(k, "unknown key");
}

SimOptions ScenarioConfig::sim_options() const { return sim; }

Vector ScenarioConfig::initial_state() const
{
    const Eigen::Index n = scenario == Scenario::Pendulum ? 2 : 4;
    if (x0) {
        if (x0->size() != n) {
            throw ConfigError("init.x0", "expected " + std::to_string(n) + " values for " +
                                             std::string(to_string(scenario)));
        }
        return *x0;
    }
    return scenario == Scenario::Pendulum ? pendulum.x0 : bicycle.x0;
}

GridSpec ScenarioConfig::grid() const
{
    GridSpec g;
    if (scenario == Scenario::Pendulum) {
        const double half_pi = std::numbers::pi / 2.0;
        g = plane_grid(-half_pi, half_pi, -4.0, 4.0, scan.resolution[0], scan.resolution[1]);
    } else {
        g.axes = {0, 1};
        g.lo = (Vector(2) << 0.0, -10.0).finished();
        g.hi = (Vector(2) << 40.0, 10.0).finished();
        g.resolution = scan.resolution;
        g.base = (Vector(4) << 0.0, 0.0, scan.slice(0), scan.slice(1)).finished();
    }
    if (scan.lo) g.lo = *scan.lo;
    if (scan.hi) g.hi = *scan.hi;
    for (int k = 0; k < 2; ++k) {
        if (!(g.hi(k) > g.lo(k))) throw ConfigError("scan.hi", "window must have hi > lo");
    }
    return g;
}

ClosedLoopSetup ScenarioConfig::setup(CbfKind kind) const
{
    ClosedLoopSetup s = scenario == Scenario::Pendulum ? pendulum_setup(kind, pendulum) : bicycle_setup(kind, bicycle);
    s.x0 = initial_state();
    return s;
}

std::string ScenarioConfig::serialize() const
{
    std::string out;
    for (const auto& h : handlers()) {
        if (auto v = h.get(*this)) out += h.key + " = " + *v + "\n";
    }
    return out;
}

std::pair<std::string, std::string> split_assignment(std::string_view assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError(trim(assignment), "expected key=value");
    }
    std::string key = trim(assignment.substr(0, eq));
    if (key.empty()) throw ConfigError("", "missing key in '" + std::string(assignment) + "'");
    return {std::move(key), trim(assignment.substr(eq + 1))};
}

void parse_config_text(std::string_view text, ScenarioConfig& config)
{
    std::istringstream in{std::string(text)};
    std::string line;
    std::vector<std::pair<std::string, std::string>> deferred;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        auto kv = split_assignment(line);
        // Scenario and kind first so aliases resolve the same regardless of order.
        if (kv.first == "scenario" || kv.first == "cbf") config.apply(kv.first, kv.second);
        else deferred.push_back(std::move(kv));
    }
    for (const auto& [k, v] : deferred) config.apply(k, v);
}

void load_config_file(const std::string& path, ScenarioConfig& config)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    parse_config_text(buf.str(), config);
}

}  // namespace barrier
