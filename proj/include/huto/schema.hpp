#pragma once

#include <cstddef>

#include "huto/store.hpp"

namespace huto {

/// Inserts the HuTO class and property hierarchy plus the seven base `included`
/// facts into the default graph. Returns the number of new triples.
std::size_t load_schema(Store& store);

}  // namespace huto
