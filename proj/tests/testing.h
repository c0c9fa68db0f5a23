#ifndef KALM_TESTS_TESTING_H_
#define KALM_TESTS_TESTING_H_

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "kalm/cnl_parser.h"
#include "kalm/pipeline.h"

namespace kalm::testing {

inline const std::string kOntologyDir = KALM_TEST_ONTOLOGY;
inline const std::string kCorpusDir = KALM_TEST_CORPUS;
inline const std::string kFixtureDir = KALM_TEST_FIXTURES;

inline std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline const Ontology &bundled() {
  static const Ontology ontology = Ontology::load_dir(kOntologyDir);
  return ontology;
}

inline Drs parse(std::string_view text) {
  return parse_any(tokenize(text, bundled().lexicon));
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("kalm-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;

  std::string file(const std::string &name) const { return (path_ / name).string(); }
  const std::filesystem::path &path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace kalm::testing

#endif  // KALM_TESTS_TESTING_H_
