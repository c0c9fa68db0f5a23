#ifndef KALM_CLI_H_
#define KALM_CLI_H_

// Command-line front end. Commands write to the given streams so tests
// can drive them in-process. Exit codes: 0 success, 1 rejected input or
// parse failure, 2 configuration or I/O failure.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "kalm/synset_graph.h"

namespace kalm {

struct Config {
  std::string ontology_dir;
  std::string kb_path = "kb.ulr";
  double theta = 0.3;
  int depth_bound = 6;
  WeightProfile weights;
  bool explain = false;
  unsigned jobs = 1;

  // Throws ConfigError.
  void validate() const;
};

std::string default_ontology_dir();

// `key = value` lines, '#' comments. Keys: ontology, kb, theta, depth,
// explain, jobs, weight.<relation>. Throws ConfigError.
void apply_config_text(std::string_view text, Config &config);

int cmd_author(const Config &config, const std::vector<std::string> &files,
               std::istream &in, std::ostream &out, std::ostream &err);
int cmd_query(const Config &config, const std::string &question, std::ostream &out,
              std::ostream &err);
int cmd_repl(const Config &config, std::istream &in, std::ostream &out,
             std::ostream &err);
int cmd_eval_author(const Config &config, const std::string &corpus,
                    std::ostream &out, std::ostream &err);
int cmd_eval_qa(const Config &config, const std::string &kb_corpus,
                const std::string &questions, std::ostream &out, std::ostream &err);

// Full argument parsing and dispatch.
int run_cli(int argc, const char *const *argv, std::istream &in, std::ostream &out,
            std::ostream &err);

}  // namespace kalm

#endif  // KALM_CLI_H_
