#include "mcg/report.hpp"

#include <algorithm>
#include <cstdio>
#include <json.hpp>

#include "mcg/corpus.hpp"

#ifndef MCG_VERSION
#define MCG_VERSION "0.0.0"
#endif

namespace mcg {

std::string toolkit_version() { return MCG_VERSION; }

void RunReport::add(ReportItem item) {
  auto pos = std::upper_bound(
      items_.begin(), items_.end(), item.id,
      [](std::string const& id, ReportItem const& x) { return id < x.id; });
  items_.insert(pos, std::move(item));
}

void RunReport::add_input(std::string path, std::string const& bytes) {
  InputDigest d{std::move(path), fnv1a_hex(bytes)};
  auto pos = std::upper_bound(
      inputs_.begin(), inputs_.end(), d,
      [](auto const& a, auto const& b) { return a.path < b.path; });
  inputs_.insert(pos, std::move(d));
}

std::size_t RunReport::passed() const {
  return static_cast<std::size_t>(
      std::count_if(items_.begin(), items_.end(),
                    [](auto const& i) { return i.ok; }));
}

std::string RunReport::to_json(bool timings) const {
  nlohmann::ordered_json j;
  j["tool"] = "mcg";
  j["version"] = toolkit_version();
  j["command"] = command_;
  j["inputs"] = nlohmann::ordered_json::array();
  for (auto const& d : inputs_) {
    j["inputs"].push_back({{"path", d.path}, {"fnv1a", d.fnv1a}});
  }
  j["items"] = nlohmann::ordered_json::array();
  for (auto const& i : items_) {
    nlohmann::ordered_json x;
    x["id"] = i.id;
    x["status"] = i.ok ? "ok" : "fail";
    if (!i.reason.empty()) {
      x["reason"] = i.reason;
    }
    if (!i.value.empty()) {
      x["value"] = i.value;
    }
    if (timings) {
      x["elapsed_ms"] = i.elapsed_ms;
    }
    j["items"].push_back(std::move(x));
  }
  j["summary"] = {{"total", items_.size()},
                  {"passed", passed()},
                  {"failed", failed()}};
  return j.dump(2) + "\n";
}

std::string RunReport::to_text(bool timings) const {
  std::string out;
  for (auto const& i : items_) {
    out += i.ok ? "PASS " : "FAIL ";
    out += i.id;
    if (!i.value.empty()) {
      out += ": " + i.value;
    }
    if (!i.reason.empty()) {
      out += " (" + i.reason + ")";
    }
    if (timings) {
      char buf[32];
      std::snprintf(buf, sizeof buf, " [%.2f ms]", i.elapsed_ms);
      out += buf;
    }
    out += "\n";
  }
  out += std::to_string(items_.size()) + " items, " +
         std::to_string(passed()) + " passed, " + std::to_string(failed()) +
         " failed\n";
  return out;
}

}  // namespace mcg
