#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "twist/json_io.hpp"
#include "twist_cli/cache.hpp"
#include "twist_cli/cli.hpp"

using namespace twist;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("twist-test-" + name);
  std::filesystem::remove(p);
  return p;
}

// Splits one CSV line, honoring quotes.
std::vector<std::string> csv_cells(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

void split_words(const std::string& text, std::vector<std::string>& out) {
  std::istringstream words(text);
  std::string w;
  while (words >> w) out.push_back(w);
}

void json_leaves(const Json& j, std::vector<std::string>& out) {
  if (j.is_structured()) {
    for (const auto& x : j) json_leaves(x, out);
  } else {
    split_words(j.is_string() ? j.get<std::string>() : j.dump(), out);
  }
}

}  // namespace

TEST_CASE("kernel command reproduces tau") {
  const auto r = run({"kernel", "--kind", "product", "--weight", "12", "--ell", "4", "--modulus", "1", "--char", "0",
                      "--terms", "5", "--normalized"});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  const std::vector<std::string> tau{"1", "-24", "252", "-1472", "4830"};
  REQUIRE(j["normalized"].size() == 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(j["normalized"][i]["coeffs"][0] == tau[i]);
}

TEST_CASE("verify and scan exit codes") {
  CHECK(run({"verify", "identities", "--modulus", "7", "--set", "product"}).code == 0);
  CHECK(run({"verify", "identities", "--modulus", "7", "--set", "bracket"}).code == 0);
  CHECK(run({"scan", "--matrix", "C1", "--max-weight", "24", "--max-modulus", "15"}).code == 0);
  CHECK(run({"verify", "zero", "--weight", "14", "--modulus", "3"}).code == 0);
  CHECK(run({"maeda", "--max-modulus", "3", "--max-weight", "40"}).code == 0);
  CHECK(run({"kernel", "--weight", "14", "--ell", "4", "--normalized"}).code == 1);
}

TEST_CASE("usage and parameter errors exit with 2") {
  auto r = run({"kernel", "--weight", "12", "--ell", "4", "--bogus"});
  CHECK(r.code == 2);
  CHECK_FALSE(r.err.empty());
  CHECK(r.out.empty());
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"kernel", "--weight", "12", "--ell", "5"}).code == 2);
  CHECK(run({"chars", "--modulus", "9"}).code == 2);
  CHECK(run({"verify", "identities", "--modulus", "9"}).code == 2);
  CHECK(run({"verify", "zero", "--weight", "12"}).code == 2);
  CHECK(run({"bounds", "--name", "E", "--weight", "16", "--ell", "9"}).code == 2);
  CHECK(run({"--format", "xml", "chars", "--modulus", "3"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("chars and qexp") {
  auto r = run({"chars", "--modulus", "15", "--primitive"});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j.size() == 3);
  for (const auto& c : j) CHECK(c["conductor"] == 15);
  r = run({"qexp", "--kind", "delta", "--terms", "4"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["coeffs"][2]["coeffs"][0] == "-24");
  r = run({"qexp", "--kind", "level1", "--weight", "12", "--terms", "2"});
  CHECK(Json::parse(r.out)["coeffs"][0]["coeffs"][0] == "691/65520");
}

TEST_CASE("bounds command") {
  const auto r = run({"bounds", "--name", "E", "--weight", "16", "--ell", "3", "--n", "1", "--modulus", "1"});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["name"] == "E");
  CHECK(j["value"].get<double>() == doctest::Approx(0.227).epsilon(0.002));
  CHECK(j["certified"] == true);
  const auto m = Json::parse(run({"bounds", "--min-weight", "maeda", "--modulus", "1"}).out);
  CHECK(m["found"] == true);
  CHECK(m["K"].get<int>() <= 12);
}

TEST_CASE("matrix command") {
  const auto r = run({"matrix", "--matrix", "C3", "--weight", "24", "--modulus", "5", "--ells", "3", "--chars", "1,3"});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["nonsingular"] == true);
  CHECK(j["entries"].size() == 2);
}

TEST_CASE("csv and json carry the same numbers") {
  const std::vector<std::vector<std::string>> commands{
      {"kernel", "--weight", "16", "--ell", "3", "--modulus", "7", "--char", "1", "--terms", "6", "--normalized"},
      {"verify", "identities", "--modulus", "5"},
      {"chars", "--modulus", "21", "--values"},
      {"matrix", "--matrix", "M", "--weight", "40", "--ells", "4,6", "--chars", "0"},
      {"scan", "--matrix", "C2", "--max-weight", "20", "--max-modulus", "5"},
  };
  for (const auto& cmd : commands) {
    const auto j = run(cmd);
    auto csv_args = cmd;
    csv_args.insert(csv_args.begin(), {"--format", "csv"});
    const auto c = run(csv_args);
    REQUIRE(j.code == c.code);

    auto doc = Json::parse(j.out);
    if (doc.is_object()) doc.erase("timing_ms");
    // Expected tokens: row leaves once, document-level context once per row.
    std::vector<std::string> from_json;
    if (doc.is_array()) {
      json_leaves(doc, from_json);
    } else {
      std::vector<std::string> row_keys;
      if (doc.contains("witnesses")) {
        row_keys = {"witnesses"};
      } else if (doc.contains("entries")) {
        row_keys = {"entries"};
      } else if (doc.contains("values")) {
        row_keys = {"values", "normalized"};
      }
      Json ctx = doc;
      std::size_t rows = 1;
      for (const auto& k : row_keys) {
        if (!doc.contains(k)) continue;
        json_leaves(doc[k], from_json);
        rows = std::max<std::size_t>(1, doc[k].size());
        ctx.erase(k);
      }
      for (std::size_t r = 0; r < rows; ++r) json_leaves(ctx, from_json);
    }

    std::vector<std::string> from_csv;
    std::istringstream lines(c.out);
    std::string header, line;
    std::getline(lines, header);
    const auto columns = csv_cells(header);
    while (std::getline(lines, line)) {
      const auto cells = csv_cells(line);
      REQUIRE(cells.size() == columns.size());
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (columns[i] != "timing_ms") split_words(cells[i], from_csv);
      }
    }
    std::sort(from_json.begin(), from_json.end());
    std::sort(from_csv.begin(), from_csv.end());
    CHECK(from_json == from_csv);
  }
}

TEST_CASE("coefficient cache round trip") {
  const auto path = temp_file("cache.jsonl");
  const std::vector<std::string> cmd{"--cache", path.string(), "kernel", "--weight", "18", "--ell", "5", "--modulus",
                                     "5", "--char", "1", "--terms", "8"};
  const auto first = run(cmd);
  REQUIRE(first.code == 0);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(Json::parse(header)["schema_version"] == cli::CoeffCache::schema_version);

  {
    cli::CoeffCache cache(path.string());
    CHECK(cache.size() == 9);
    const KernelSpec spec{18, 5, DirichletCharacter::from_label(5, 1), KernelKind::product};
    const auto cached = cache.provider()(spec, 8);
    CHECK(cache.hits() == 1);
    const auto fresh = kernel_coeffs(spec, 8);
    REQUIRE(cached.size() == fresh.size());
    for (std::size_t i = 0; i < fresh.size(); ++i) {
      CHECK(cached[i] == fresh[i]);
      CHECK(to_json(cached[i]).dump() == to_json(fresh[i]).dump());
    }
  }
  const auto second = run(cmd);
  CHECK(second.out == first.out);

  // A damaged line is skipped and the value recomputed.
  {
    std::ofstream app(path, std::ios::app);
    app << "{not json\n";
  }
  cli::CoeffCache cache(path.string());
  CHECK(cache.skipped_lines() == 1);
  CHECK(cache.size() == 9);
  std::filesystem::remove(path);
}

TEST_CASE("cache path from the environment") {
  const auto path = temp_file("env.jsonl");
  setenv("TWIST_CACHE", path.string().c_str(), 1);
  const auto r = run({"kernel", "--weight", "12", "--ell", "4", "--terms", "3"});
  unsetenv("TWIST_CACHE");
  CHECK(r.code == 0);
  CHECK(std::filesystem::exists(path));
  std::filesystem::remove(path);
}
