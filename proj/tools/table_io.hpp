#ifndef FERMIEOS_TOOLS_TABLE_IO_HPP
#define FERMIEOS_TOOLS_TABLE_IO_HPP

#include "fermieos/dilute_eos.hpp"
#include "fermieos/error_budget.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace cli {

/// Accepts a scalar ("1.5"), a comma list ("0.1,1,10") or "start:stop:count"
/// (inclusive linear grid). Throws fermieos::InvalidInput on malformed text.
std::vector<double> parse_grid(const std::string& text);

std::string format_double(double v);

/// CSV column order is frozen; new fields only append.
extern const char* kEosCsvHeader;
std::string eos_csv_row(const fermieos::eos::EosReport& r);
nlohmann::ordered_json eos_json_row(const fermieos::eos::EosReport& r);

std::string budget_csv_header(const fermieos::budget::BudgetReport& first);
std::string budget_csv_row(const fermieos::budget::BudgetReport& r);
nlohmann::ordered_json budget_json(const fermieos::budget::BudgetReport& r);

/// Least-squares slope of ln|y| vs ln x.
double fit_log_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Writes to the path or stdout when path is empty.
void emit(const std::string& out_path, const std::string& content);

std::string flags_string(const fermieos::eos::EosReport& r);

} // namespace cli

#endif
