#pragma once

#include <filesystem>
#include <string>

namespace tsradar::testing {

/// Fresh directory under the build tree, wiped on construction.
inline std::filesystem::path scratch_dir(const std::string &name) {
	const auto dir = std::filesystem::path(TSRADAR_TEST_TMP) / name;
	std::filesystem::remove_all(dir);
	std::filesystem::create_directories(dir);
	return dir;
}

} // namespace tsradar::testing
