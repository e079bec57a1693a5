#pragma once

// Budget configuration files: one `key = value` per line, `#` starts a
// comment, blank lines are ignored. Keys are the Budgets field names; an
// unknown key, a repeated key or a malformed value is an error.

#include <string>
#include <vector>

#include "symsplit/budget.hpp"

namespace symsplit {

const std::vector<std::string>& budget_keys();
// Sets one field from its decimal text; throws MathError(Parse) on bad input.
void set_budget(Budgets& b, const std::string& key, const std::string& value);
void apply_budget_config(Budgets& b, const std::string& text);
void load_budget_config(Budgets& b, const std::string& path);

} // namespace symsplit
