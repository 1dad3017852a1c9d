#include <doctest.h>

#include <json.hpp>

#include "mcg/report.hpp"

using namespace mcg;

TEST_SUITE("report") {
  TEST_CASE("items are sorted and counted") {
    RunReport r("check");
    r.add({"b", false, "broken", "", 1.5});
    r.add({"a", true, "", "42", 0.25});
    r.add({"c", true, "", "", 0});
    REQUIRE(r.items().size() == 3);
    CHECK(r.items()[0].id == "a");
    CHECK(r.items()[1].id == "b");
    CHECK(r.items()[2].id == "c");
    CHECK(r.passed() == 2);
    CHECK(r.failed() == 1);
    CHECK_FALSE(r.ok());
    CHECK(RunReport("empty").ok());
  }

  TEST_CASE("text form") {
    RunReport r("check");
    r.add({"b", false, "broken", "", 1.5});
    r.add({"a", true, "", "42", 0.25});
    CHECK(r.to_text() ==
          "PASS a: 42\nFAIL b (broken)\n2 items, 1 passed, 1 failed\n");
    CHECK(r.to_text(true).find("[1.50 ms]") != std::string::npos);
  }

  TEST_CASE("json form") {
    RunReport r("oracles");
    r.add({"x", true, "", "[10]", 3.0});
    r.add_input("z.pres", "abc");
    r.add_input("a.pres", "");
    auto j = nlohmann::json::parse(r.to_json());
    CHECK(j["tool"] == "mcg");
    CHECK(j["version"] == toolkit_version());
    CHECK(j["command"] == "oracles");
    CHECK(j["inputs"][0]["path"] == "a.pres");
    CHECK(j["inputs"][0]["fnv1a"] == "cbf29ce484222325");
    CHECK(j["items"][0]["status"] == "ok");
    CHECK(j["items"][0]["value"] == "[10]");
    CHECK_FALSE(j["items"][0].contains("elapsed_ms"));
    CHECK_FALSE(j["items"][0].contains("reason"));
    CHECK(j["summary"]["total"] == 1);
    CHECK(j["summary"]["failed"] == 0);
    auto t = nlohmann::json::parse(r.to_json(true));
    CHECK(t["items"][0]["elapsed_ms"] == 3.0);
  }

  TEST_CASE("output does not depend on insertion order") {
    RunReport a("c");
    RunReport b("c");
    a.add({"one", true, "", "", 1});
    a.add({"two", false, "r", "", 2});
    b.add({"two", false, "r", "", 7});
    b.add({"one", true, "", "", 9});
    CHECK(a.to_json() == b.to_json());
    CHECK(a.to_text() == b.to_text());
  }

  TEST_CASE("version") { CHECK(toolkit_version() == "1.0.0"); }
}
