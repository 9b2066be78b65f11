#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "alcove/path_io.hpp"
#include "alcove/report.hpp"

using namespace alcove;

TEST(PathIo, CsvRoundTrip) {
  const Path p = sample_brownian(0.3, Grid(0.01, 50), 9);
  std::stringstream ss;
  write_path_csv(p, ss);
  EXPECT_EQ(ss.str().substr(0, 11), "time,value\n");
  const Path q = read_path_csv(ss);
  EXPECT_EQ(q.grid(), p.grid());
  for (std::size_t j = 0; j < p.values().size(); ++j) EXPECT_EQ(q[j], p[j]);
}

TEST(PathIo, CsvRejectsBadInput) {
  std::stringstream a("time,value\n0,0\n0.1,1\n0.3,2\n");
  EXPECT_THROW(read_path_csv(a), std::invalid_argument);
  std::stringstream b("t,v\n0,0\n0.1,1\n");
  EXPECT_THROW(read_path_csv(b), std::invalid_argument);
  std::stringstream c("time,value\n0,0\n0.1,abc\n");
  EXPECT_THROW(read_path_csv(c), std::invalid_argument);
}

TEST(PathIo, JsonRoundTrip) {
  const Path p = sample_brownian(-0.2, Grid(0.02, 30), 10);
  const Path q = path_from_json(nlohmann::json::parse(path_to_json(p).dump()));
  EXPECT_EQ(q.grid(), p.grid());
  for (std::size_t j = 0; j < p.values().size(); ++j) EXPECT_EQ(q[j], p[j]);
  EXPECT_THROW(path_from_json(nlohmann::json{{"step", 0.1}, {"count", 3}, {"values", {0, 1}}}), std::invalid_argument);
}

TEST(StringsIo, JsonRoundTrip) {
  const StringVector s{{1.0, 2.5, 0.125}, StringKind::dihedral, 3};
  const nlohmann::json j = strings_to_json(s);
  EXPECT_EQ(j["kind"], "dihedral");
  const StringVector t = strings_from_json(j);
  EXPECT_EQ(t.xs, s.xs);
  EXPECT_EQ(t.kind, s.kind);
  EXPECT_EQ(t.m, 3);
  EXPECT_THROW(strings_from_json(nlohmann::json{{"kind", "other"}, {"m", 0}, {"xs", {1}}}), std::invalid_argument);
}

TEST(Report, NumbersRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 12345.678, -2.5}) EXPECT_EQ(std::stod(format_number(v)), v);
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_number(NAN), "nan");
}

TEST(Report, Fnv1aKnownValues) {
  EXPECT_EQ(content_hash(""), "cbf29ce484222325");
  EXPECT_EQ(content_hash("a"), "af63dc4c8601ec8c");
  EXPECT_EQ(content_hash("foobar"), "85944171f73967e8");
}

TEST(Report, JsonBodyIsStable) {
  ExperimentReport r;
  r.name = "x";
  r.pass = true;
  r.statistics = {{"b", 2.0}, {"a", std::numeric_limits<double>::infinity()}};
  r.provenance = {{"seed", "7"}};
  r.samples = {{"s", {1.0, 2.0}}};
  const std::string a = report_json(r);
  EXPECT_EQ(a, report_json(r));
  const auto j = nlohmann::json::parse(a);
  EXPECT_EQ(j["statistics"]["a"], "inf");
  EXPECT_EQ(j["samples"]["s"]["count"], 2);
  EXPECT_EQ(j["samples"]["s"]["fnv1a"], content_hash("1\n2\n"));
  std::stringstream ss;
  write_samples_csv(r, ss);
  EXPECT_EQ(ss.str(), "series,index,value\ns,0,1\ns,1,2\n");
}
