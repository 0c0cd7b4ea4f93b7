#pragma once

// JSON persistence: catalogs in, models in and out, drop-rule files.

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "riskstruct/catalog.hpp"
#include "riskstruct/core.hpp"
#include "riskstruct/reduce.hpp"

namespace riskstruct {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

/// Maps JSON pointers to the 1-based source line where the value (or its
/// key) starts. Unknown pointers fall back to their closest known ancestor.
class JsonLineIndex {
 public:
  JsonLineIndex() = default;
  explicit JsonLineIndex(std::string_view text);
  int line_of(std::string_view pointer) const;

 private:
  std::map<std::string, int, std::less<>> lines_;
};

struct CatalogDocument {
  Catalog catalog;
  JsonLineIndex lines;

  /// Semantic issues of the (possibly adjusted) catalog, with source lines.
  std::vector<CatalogInvalid> issues() const;
};

/// Parses catalog JSON. Syntax and shape errors throw CatalogInvalid with a
/// line; semantic validation is left to CatalogDocument::issues().
CatalogDocument read_catalog(std::string_view text);
/// read_catalog followed by validation; throws the first issue.
Catalog parse_catalog(std::string_view text);
Catalog load_catalog(const std::filesystem::path& path);

std::string model_to_json(const RiskStructure& model);
RiskStructure parse_model(std::string_view text);
RiskStructure load_model(const std::filesystem::path& path);
void save_model(const RiskStructure& model, const std::filesystem::path& path);

/// `{"drop": [{"action": ..., "source_region": ..., "source": ..., "self_loop": ...}]}`
std::vector<DropRule> parse_drop_rules(std::string_view text);

/// Probability text for human-facing output: up to 6 significant digits.
std::string format_probability(double p);

}  // namespace riskstruct
