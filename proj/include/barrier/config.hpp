#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "barrier/analysis.hpp"
#include "barrier/cbf.hpp"
#include "barrier/sim.hpp"
#include "barrier/systems.hpp"

namespace barrier {

enum class Scenario { Pendulum, Bicycle };

std::string_view to_string(Scenario scenario);

/// Bad configuration input; `key()` names the offending key.
class ConfigError : public std::runtime_error
{
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key))
    {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

struct ScanSettings
{
    std::optional<Vector> lo;
    std::optional<Vector> hi;
    std::vector<int> resolution = {401, 401};
    Vector slice = (Vector(2) << 0.0, 5.0).finished();  // bicycle (theta, v)
};

/// Effective parameters for one CLI invocation. Every field starts at the
/// case-study defaults; `apply` changes one dotted key.
struct ScenarioConfig
{
    Scenario scenario = Scenario::Pendulum;
    CbfKind cbf = CbfKind::Abc;
    PendulumParams pendulum;
    BicycleParams bicycle;
    std::optional<Vector> x0;
    SimOptions sim;
    ScanSettings scan;
    std::vector<CbfKind> compare_kinds = {CbfKind::Hocbf, CbfKind::Recbf, CbfKind::Backstepping, CbfKind::Abc};

    /// Set one key. Throws ConfigError for unknown keys or malformed values.
    void apply(std::string_view key, std::string_view value);

    /// Effective simulation options for the active scenario.
    SimOptions sim_options() const;
    Vector initial_state() const;
    GridSpec grid() const;
    ClosedLoopSetup setup(CbfKind kind) const;
    ClosedLoopSetup setup() const { return setup(cbf); }

    /// Canonical `key = value` text; parsing it back reproduces this config.
    std::string serialize() const;

    bool operator==(const ScenarioConfig& other) const { return serialize() == other.serialize(); }
};

/// Every key `apply` accepts.
const std::vector<std::string>& config_keys();

/// Parses `key = value` lines with `#` comments into `config`.
void parse_config_text(std::string_view text, ScenarioConfig& config);
void load_config_file(const std::string& path, ScenarioConfig& config);

/// Splits a `key=value` override.
std::pair<std::string, std::string> split_assignment(std::string_view assignment);

}  // namespace barrier
