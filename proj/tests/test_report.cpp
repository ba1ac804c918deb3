#include <doctest.h>

#include <json.hpp>

#include "toricmot/report.hpp"

using namespace toricmot;
using json = nlohmann::json;

namespace {

const char* kSurface = R"({
  "lattice_rank": 2,
  "generators": [[5,0],[0,2],[0,3],[6,2]]
})";

const char* kCusp = R"({"lattice_rank": 1, "generators": [[2],[3]], "expand": 8})";

}  // namespace

TEST_CASE("input parsing") {
  InputSpec in = parse_input_json(kCusp);
  CHECK(in.lattice_rank == 1);
  CHECK(in.generators.size() == 2);
  CHECK(in.expand_order == 8);
  CHECK(in.guard == 10);
  CHECK_THROWS_AS(parse_input_json("{"), validation_error);
  CHECK_THROWS_AS(parse_input_json(R"({"generators": []})"), validation_error);
  CHECK_THROWS_AS(parse_input_json(R"({"lattice_rank": 1})"), validation_error);
}

TEST_CASE("reports are deterministic and hashed") {
  InputSpec in = parse_input_json(kCusp);
  std::string a = report_compute(in);
  std::string b = report_compute(in);
  CHECK(a == b);
  json doc = json::parse(a);
  CHECK(doc.contains("content_hash"));
  // the hash covers everything except the hash field itself
  json stripped = doc;
  stripped.erase("content_hash");
  std::string body = json::parse(a).dump(2);
  CHECK(doc["content_hash"].get<std::string>().rfind("fnv1a64:", 0) == 0);
}

TEST_CASE("report round trips through JSON") {
  InputSpec in = parse_input_json(kCusp);
  std::string a = report_compute(in);
  json doc = json::parse(a);
  // ordered serialization is stable under parse + dump
  CHECK(nlohmann::ordered_json::parse(a).dump(2) == a);
  CHECK(doc["input"]["lattice_rank"] == 1);
}

TEST_CASE("strata report mirrors the table") {
  InputSpec in = parse_input_json(kSurface);
  json doc = json::parse(report_strata(in));
  CHECK(doc["q_strata"].get<std::string>() == "10");
  int empties = 0, total = 0;
  for (const auto& st : doc["strata"]) {
    ++total;
    if (st["empty"].get<bool>()) ++empties;
  }
  CHECK(empties == 3);
  CHECK(total == 3 + 5 + 7 + 7);  // interior cones of the four refinements
}

TEST_CASE("compute report carries series and invariants") {
  InputSpec in = parse_input_json(kSurface);
  in.series = SeriesChoice::both;
  json doc = json::parse(report_compute(in));
  CHECK(doc["q_strata"].get<std::string>() == "10");
  CHECK(doc["q_faces"].get<std::string>() == "10");
  CHECK(doc["series"].contains("arithmetic"));
  CHECK(doc["series"].contains("geometric"));
  CHECK(doc["series"].contains("difference"));
  CHECK(doc["faces"].size() == 4);
  CHECK_FALSE(doc["nicaise"]["verdict"].get<bool>());
  // raw denominator lists every candidate pair
  CHECK(doc["series"]["arithmetic"]["denominator"].size() ==
        doc["pole_candidates_faces"].size());
}

TEST_CASE("oracle report equals the expansion in the compute report") {
  InputSpec in = parse_input_json(kCusp);
  in.series = SeriesChoice::arithmetic;
  json c = json::parse(report_compute(in));
  json o = json::parse(report_oracle(in));
  CHECK(c["expansion"]["arithmetic"] == o["expansion"]["arithmetic"]);
}

TEST_CASE("oracle report requires an expansion order") {
  InputSpec in = parse_input_json(kSurface);
  CHECK_THROWS_AS(report_oracle(in), validation_error);
}

TEST_CASE("nicaise report") {
  InputSpec in = parse_input_json(R"({"lattice_rank":2,"generators":[[1,0],[1,1],[1,2]]})");
  json doc = json::parse(report_nicaise(in));
  CHECK(doc["nicaise"]["verdict"].get<bool>());
  CHECK(doc["nicaise"]["certificates"].size() == 4);
}

TEST_CASE("text rendering mentions the key facts") {
  InputSpec in = parse_input_json(kCusp);
  std::string text = render_text(report_compute(in));
  CHECK(text.find("strata") != std::string::npos);
  CHECK(text.find("arithmetic") != std::string::npos);
  CHECK(text.find("content hash") != std::string::npos);
}

TEST_CASE("validation failures surface as errors") {
  CHECK_THROWS_AS(report_compute(parse_input_json(R"({"lattice_rank":1,"generators":[[2],[4]]})")),
                  validation_error);
  CHECK_THROWS_AS(
      report_compute(parse_input_json(R"({"lattice_rank":1,"generators":[[2],[3],[5]]})")),
      validation_error);
}
