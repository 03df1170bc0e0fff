#include "rabisim/presets.hpp"

#include "rabisim/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <set>

namespace rabisim {

namespace fs = std::filesystem;

std::vector<std::string> preset_search_dirs() {
    std::vector<std::string> dirs;
    if (const char* env = std::getenv("RABISIM_PRESET_DIR")) {
        if (*env) dirs.push_back(env);
    }
    dirs.push_back("presets");
#ifdef RABISIM_SOURCE_DIR
    dirs.push_back(std::string(RABISIM_SOURCE_DIR) + "/presets");
#endif
    return dirs;
}

std::string find_preset_file(const std::string& name) {
    for (const auto& dir : preset_search_dirs()) {
        const fs::path candidate = fs::path(dir) / (name + ".json");
        std::error_code ec;
        if (fs::exists(candidate, ec)) return candidate.string();
    }
    std::string msg = "preset '" + name + "' not found; searched:";
    for (const auto& dir : preset_search_dirs()) msg += " " + dir;
    throw ConfigError(msg);
}

RunConfig load_preset(const std::string& name) {
    RunConfig config = load_config_file(find_preset_file(name));
    config.preset = name;
    return config;
}

std::vector<std::string> list_presets() {
    std::set<std::string> names;
    for (const auto& dir : preset_search_dirs()) {
        std::error_code ec;
        if (!fs::is_directory(dir, ec)) continue;
        for (const auto& entry : fs::directory_iterator(dir, ec)) {
            if (entry.path().extension() == ".json") {
                names.insert(entry.path().stem().string());
            }
        }
    }
    return {names.begin(), names.end()};
}

}  // namespace rabisim
