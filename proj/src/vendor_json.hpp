#pragma once

// Silence the vendored header's warnings once, in one place.
#if defined(__GNUC__)
#pragma GCC system_header
#endif
#include "json.hpp"
