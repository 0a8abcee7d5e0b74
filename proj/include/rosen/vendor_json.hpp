#pragma once

// single include point for the vendored nlohmann/json header
#include "json.hpp"
