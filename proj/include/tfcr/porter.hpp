#pragma once

#include <string>
#include <string_view>

namespace tfcr {

/// Classic Porter (1980) suffix-stripping stemmer. Input must already be
/// lowercase ASCII; words of length <= 2 are returned unchanged.
std::string porter_stem(std::string_view word);

}  // namespace tfcr
