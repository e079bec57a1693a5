#include "symsplit/config.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

#include "symsplit/errors.hpp"

namespace symsplit {

namespace {

std::string trim(const std::string& s)
{
    auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value)
{
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size() || value.empty())
        fail(ErrorCode::Parse, "budget '" + key + "' needs a nonnegative integer, got '" + value + "'");
    return v;
}

} // namespace

const std::vector<std::string>& budget_keys()
{
    static const std::vector<std::string> keys{"node_cap", "factor_bound", "harvest_cap", "unit_radius_cap",
                                               "cell_cap", "hp_cap",       "digits"};
    return keys;
}

void set_budget(Budgets& b, const std::string& key, const std::string& value)
{
    std::uint64_t v = parse_u64(key, value);
    if (key == "node_cap") b.node_cap = v;
    else if (key == "factor_bound") b.factor_bound = v;
    else if (key == "harvest_cap") b.harvest_cap = v;
    else if (key == "unit_radius_cap") b.unit_radius_cap = v;
    else if (key == "cell_cap") b.cell_cap = v;
    else if (key == "hp_cap") b.hp_cap = v;
    else if (key == "digits") {
        if (v < 40 || v > 2000) fail(ErrorCode::Parse, "digits must lie in [40, 2000]");
        b.digits = (unsigned)v;
    } else {
        fail(ErrorCode::Parse, "unknown budget key '" + key + "'");
    }
}

void apply_budget_config(Budgets& b, const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    std::set<std::string> seen;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorCode::Parse, "config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (!seen.insert(key).second)
            fail(ErrorCode::Parse, "config line " + std::to_string(lineno) + ": repeated key '" + key + "'");
        try {
            set_budget(b, key, value);
        } catch (const MathError& e) {
            fail(ErrorCode::Parse, "config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
}

void load_budget_config(Budgets& b, const std::string& path)
{
    std::ifstream in(path);
    if (!in) fail(ErrorCode::Parse, "cannot read config file " + path);
    std::ostringstream os;
    os << in.rdbuf();
    apply_budget_config(b, os.str());
}

} // namespace symsplit
