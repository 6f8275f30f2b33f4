#pragma once

#include <iosfwd>
#include <string>

#include "entrolab/lp/system.hpp"

namespace entrolab::lp {

/// Text form of a system, one row per line:
///
///   vars Y1 Y2 U1
///   1*h{Y1,U1} -1*h{U1} = 0      # optional label
///   1*h{U1} <= 1
///   min 1*h{U1}
///
/// Coefficients and right-hand sides are integers or "a/b". A row with no
/// terms is written as "0 >= 1". Blank lines and "#" comments are ignored.
void write_dump(std::ostream& out, const LinearSystem& sys);
std::string dump_string(const LinearSystem& sys);
LinearSystem read_dump(std::istream& in);

}  // namespace entrolab::lp
