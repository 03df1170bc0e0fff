// presets.hpp — named experiment presets shipped as config files under
// presets/ (not compiled-in constants, so users can copy and modify them).
// Search order: $RABISIM_PRESET_DIR, ./presets, <source>/presets.

#pragma once

#include "rabisim/config.hpp"

#include <string>
#include <vector>

namespace rabisim {

// Absolute path of the preset file, or throws ConfigError listing the
// directories searched.
std::string find_preset_file(const std::string& name);

RunConfig load_preset(const std::string& name);

// Preset names available in the searched directories, sorted.
std::vector<std::string> list_presets();

// The directories consulted, in order.
std::vector<std::string> preset_search_dirs();

}  // namespace rabisim
