#pragma once

#include <string>
#include <string_view>

namespace lexicluster {

/// Porter (1980) suffix stripper over lowercase ASCII words, following the
/// published rule set (ABLI -> ABLE in step 2, (*v*) Y -> I in step 1c).
/// Words of one or two letters are returned unchanged.
std::string porter_stem(std::string_view word);

}  // namespace lexicluster
