#ifndef MAEE_CSV_HPP
#define MAEE_CSV_HPP

#include <string>
#include <string_view>
#include <vector>

namespace maee {

// Locale-independent shortest representation with at most `digits`
// significant digits ('.' decimal separator).
std::string format_number(double value, int digits = 12);

// Exact round-trip representation (shortest form that parses back to value).
std::string format_exact(double value);

double parse_number(std::string_view text);

std::vector<std::string> split(std::string_view text, char sep);

}  // namespace maee

#endif  // MAEE_CSV_HPP
