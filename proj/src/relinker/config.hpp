#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "relinker/archive.hpp"

namespace relinker {

struct Config {
  std::size_t min_terms = 50;
  std::vector<std::size_t> ls_k = {5, 7};
  std::size_t shingle_w = 5;
  double quality_threshold = 0.75;
  double minor_change_threshold = 0.3;
  std::size_t max_results = 100;
  std::size_t discovered_depth = 10;
  std::optional<std::uint64_t> index_size_estimate;
  std::optional<std::string> stop_title_path;
  YearMonth window_anchor{2009, 2};
  std::size_t window_count = 27;

  // Sets one key from its textual form. Unknown keys and out-of-range
  // values throw Error(InvalidArgument); constraints between keys are left
  // to validate().
  void set(std::string_view key, std::string_view value);

  // Flat "key = value" lines; '#' starts a comment.
  void load_file(const std::filesystem::path& path);

  void validate() const;
  // Per-key ranges only.
  void check_ranges() const;

  static const std::vector<std::string_view>& keys();
};

void to_json(nlohmann::json& j, const Config& c);

}  // namespace relinker
