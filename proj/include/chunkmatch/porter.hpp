#pragma once

#include <string>
#include <string_view>

namespace chunkmatch {

/// Porter stemming algorithm (M.F. Porter, 1980), matching the reference
/// implementation including its two published departures (step 2 "bli" and
/// "logi"). Input is expected lowercase; words of length <= 2 are returned
/// unchanged. Not idempotent in general.
std::string porter_stem(std::string_view word);

}  // namespace chunkmatch
