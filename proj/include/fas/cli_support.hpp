#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fas {

// Parses "A:STEP:B" into an inclusive ascending grid (both ends included
// when B - A is an integer multiple of STEP, else the last point is the
// largest A + m*STEP <= B, with a half-ulp-scale tolerance so decimal steps
// like 2.5 behave as written). A bare "A" is the one-point grid {A}.
// Throws std::invalid_argument on malformed input, STEP <= 0, or B < A.
std::vector<double> parse_snr_grid(std::string_view text);

// Worker count resolution: explicit CLI value if > 0, else FAS_LAB_THREADS
// if set and positive, else the hardware default.
int resolve_threads(int cli_value);

} // namespace fas
