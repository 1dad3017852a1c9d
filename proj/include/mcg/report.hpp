#pragma once

#include <optional>
#include <string>
#include <vector>

namespace mcg {

struct ReportItem {
  std::string id;
  bool ok = false;
  std::string reason;
  std::string value;  // command-specific result text, may be empty
  double elapsed_ms = 0;
};

struct InputDigest {
  std::string path;
  std::string fnv1a;
};

// Items are kept sorted by id; summary counts are derived from them.
class RunReport {
 public:
  explicit RunReport(std::string command) : command_(std::move(command)) {}

  void add(ReportItem item);
  void add_input(std::string path, std::string const& bytes);

  std::vector<ReportItem> const& items() const noexcept { return items_; }
  std::vector<InputDigest> const& inputs() const noexcept { return inputs_; }
  std::size_t passed() const;
  std::size_t failed() const { return items_.size() - passed(); }
  bool ok() const { return failed() == 0; }

  // Timings vary between runs, so they are left out unless asked for.
  std::string to_json(bool timings = false) const;
  std::string to_text(bool timings = false) const;

 private:
  std::string command_;
  std::vector<ReportItem> items_;
  std::vector<InputDigest> inputs_;
};

std::string toolkit_version();

}  // namespace mcg
