#pragma once

#include <string>

namespace feemarket {

/// 17 significant digits (%.17g), enough to round-trip any double.
/// Infinities print as "inf" / "-inf", NaN as "nan".
std::string format_number(double x);

/// format_number for finite values; "inf" and "-inf" become JSON strings and
/// NaN becomes null.
std::string json_number(double x);

}  // namespace feemarket
