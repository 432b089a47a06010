#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "epcalc/languages.hpp"
#include "epcalc/successor.hpp"

using namespace epcalc;
namespace fs = std::filesystem;

namespace {

std::string expected_code(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  const std::string tag = "# expect: ";
  return line.rfind(tag, 0) == 0 ? line.substr(tag.size()) : "";
}

std::vector<fs::path> corpus() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(EPCALC_CORPUS_DIR))
    if (e.path().extension() == ".lang") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Corpus, ExpectedDiagnostics) {
  auto files = corpus();
  ASSERT_GE(files.size(), 10u);
  for (const auto& f : files) {
    std::string code = expected_code(f);
    ASSERT_FALSE(code.empty()) << f;
    auto tss = load_language_file(f.string());
    auto ds = tss->check_de_simone();
    auto more = check_de_simone_succ(*tss);
    ds.insert(ds.end(), more.begin(), more.end());
    bool hit = false;
    for (const auto& d : ds) hit = hit || d.code == code;
    std::cout << f.filename().string() << ":";
    for (const auto& d : ds) std::cout << "\n  " << d.str();
    std::cout << "\n";
    EXPECT_TRUE(hit) << f << " expected " << code;
  }
}
