#pragma once

#include <cstddef>

namespace parastat {

/// Upper bound on any operator dimension built by the library. Read once
/// from PARASTAT_MAX_DIM (default 4096); tests may override it.
std::size_t max_dimension();
void set_max_dimension(std::size_t bound);

/// Throws SizingError if `dim` exceeds max_dimension().
void check_dimension(std::size_t dim, const char* what);

}  // namespace parastat
