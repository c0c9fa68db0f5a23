#include "kalm/eval_harness.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <set>
#include <sstream>
#include <thread>

#include "kalm/errors.h"
#include "kalm/term.h"

namespace kalm {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kFrSynC: return "FrSynC";
    case Verdict::kFrC: return "FrC";
    case Verdict::kPFrC: return "PFrC";
    case Verdict::kWrong: return "Wrong";
  }
  return "";
}

Verdict classify(const SentenceResult &result, const GoldAnnotation &gold,
                 std::string *why) {
  auto verdict = [&](Verdict v, std::string reason) {
    if (why) *why = std::move(reason);
    return v;
  };
  // A rejection is the expected outcome when gold lists no frame.
  if (!result.error.empty()) {
    if (gold.expected.empty()) return verdict(Verdict::kFrSynC, "");
    return verdict(Verdict::kWrong, result.error);
  }

  std::vector<bool> used(gold.expected.size(), false);
  bool missing = false;
  bool synsets_ok = true;
  std::string missing_reason;
  for (const auto &inst : result.instances) {
    // Pair with the unused gold frame of the same name agreeing on most fillers.
    int pick = -1;
    int pick_agree = -1;
    for (std::size_t g = 0; g < gold.expected.size(); ++g) {
      if (used[g] || gold.expected[g].frame != inst.frame) continue;
      int agree = 0;
      for (const auto &[role, b] : inst.bindings) {
        auto it = gold.expected[g].roles.find(role);
        if (it != gold.expected[g].roles.end() && it->second.filler == b.filler.surface) {
          ++agree;
        }
      }
      if (agree > pick_agree) {
        pick = static_cast<int>(g);
        pick_agree = agree;
      }
    }
    if (pick < 0) return verdict(Verdict::kWrong, "unexpected frame " + inst.frame);
    used[pick] = true;
    const GoldFrame &g = gold.expected[pick];
    for (const auto &[role, b] : inst.bindings) {
      auto it = g.roles.find(role);
      if (it == g.roles.end()) {
        return verdict(Verdict::kWrong, "unexpected role " + inst.frame + "." + role);
      }
      if (it->second.filler != b.filler.surface) {
        return verdict(Verdict::kWrong, inst.frame + "." + role + " filled by '" +
                                            b.filler.surface + "', expected '" +
                                            it->second.filler + "'");
      }
      if (!b.synset || *b.synset != it->second.synset) {
        if (synsets_ok) {
          missing_reason = inst.frame + "." + role + " sense " +
                           (b.synset ? b.synset->str() : std::string("none")) +
                           ", expected " + it->second.synset.str();
        }
        synsets_ok = false;
      }
    }
    for (const auto &[role, gr] : g.roles) {
      if (!inst.bindings.count(role)) {
        missing = true;
        missing_reason = "missing role " + g.frame + "." + role;
      }
    }
  }
  const bool any_paired = std::find(used.begin(), used.end(), true) != used.end();
  for (std::size_t g = 0; g < used.size(); ++g) {
    if (!used[g]) {
      missing = true;
      missing_reason = "missing frame " + gold.expected[g].frame;
    }
  }
  if (missing) {
    return any_paired ? verdict(Verdict::kPFrC, missing_reason)
                      : verdict(Verdict::kWrong, missing_reason);
  }
  if (!synsets_ok) return verdict(Verdict::kFrC, missing_reason);
  return verdict(Verdict::kFrSynC, "");
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// Non-empty, non-comment lines with their 1-based numbers.
std::vector<std::pair<int, std::string>> content_lines(std::string_view text) {
  std::vector<std::pair<int, std::string>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    out.emplace_back(n, std::move(t));
  }
  return out;
}

struct TokenCursor {
  std::vector<TermToken> tokens;
  std::size_t pos = 0;
  int line;

  const TermToken &peek() const { return tokens[pos]; }
  bool punct(std::string_view p) const {
    return peek().kind == TermToken::Kind::kPunct && peek().text == p;
  }
  void expect(std::string_view p) {
    if (!punct(p)) {
      throw SyntaxError(line, "expected '" + std::string(p) + "' near '" +
                                  peek().text + "'");
    }
    ++pos;
  }
  std::string word(const char *what) {
    if (peek().kind != TermToken::Kind::kAtom) {
      throw SyntaxError(line, std::string("expected ") + what);
    }
    return tokens[pos++].text;
  }
  std::string string(const char *what) {
    if (peek().kind != TermToken::Kind::kString) {
      throw SyntaxError(line, std::string("expected quoted ") + what);
    }
    return tokens[pos++].text;
  }
  bool at_end() const { return peek().kind == TermToken::Kind::kEnd; }
};

std::pair<std::string, std::string> split_arrow(const std::string &line, int n) {
  const auto arrow = line.find("=>");
  if (arrow == std::string::npos) throw SyntaxError(n, "expected '=>'");
  return {trim(line.substr(0, arrow)), trim(line.substr(arrow + 2))};
}

TokenCursor cursor(const std::string &text, int n) {
  try {
    return {lex_terms(text), 0, n};
  } catch (const SyntaxError &e) {
    throw SyntaxError(n, e.detail);
  }
}

}  // namespace

std::vector<GoldAnnotation> parse_gold(std::string_view text) {
  std::vector<GoldAnnotation> out;
  for (const auto &[n, line] : content_lines(text)) {
    auto [sentence, rhs] = split_arrow(line, n);
    GoldAnnotation gold;
    gold.sentence = sentence;
    TokenCursor c = cursor(rhs, n);
    if (c.peek().kind == TermToken::Kind::kAtom && c.peek().text == "none") {
      ++c.pos;
    } else {
      for (;;) {
        GoldFrame f;
        f.frame = c.word("frame name");
        c.expect("{");
        while (!c.punct("}")) {
          std::string role = c.word("role name");
          c.expect(":");
          GoldRole r;
          r.filler = c.string("filler");
          c.expect("@");
          const std::string id = c.word("synset id");
          auto synset = SynsetId::parse(id);
          if (!synset) throw SyntaxError(n, "bad synset id " + id);
          r.synset = *synset;
          if (!f.roles.emplace(role, r).second) {
            throw SyntaxError(n, "role " + role + " given twice");
          }
          if (!c.punct("}")) c.expect(",");
        }
        c.expect("}");
        gold.expected.push_back(std::move(f));
        if (!c.punct(";")) break;
        ++c.pos;
      }
    }
    if (!c.at_end()) throw SyntaxError(n, "trailing text after gold frames");
    out.push_back(std::move(gold));
  }
  return out;
}

void check_gold(const std::vector<GoldAnnotation> &gold, const FrameOnt &ont) {
  for (const auto &g : gold) {
    for (const auto &f : g.expected) {
      const FrameDecl *decl = ont.frame(f.frame);
      if (!decl) throw UnknownFrame(f.frame);
      for (const auto &[role, r] : f.roles) {
        if (!decl->role(role)) throw UnknownRole(f.frame, role);
      }
    }
  }
}

double MetricsReport::percent(std::size_t count, std::size_t total) {
  return total == 0 ? 0.0 : 100.0 * static_cast<double>(count) /
                                static_cast<double>(total);
}

namespace {

std::string format_percent(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", p);
  return buf;
}

std::string row(std::string_view name, std::size_t count, std::size_t total) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%-8s %6zu %8s\n", std::string(name).c_str(), count,
                format_percent(MetricsReport::percent(count, total)).c_str());
  return buf;
}

}  // namespace

std::string MetricsReport::table() const {
  std::string out = "metric    count  percent\n";
  out += row("FrSynC", frsync, total);
  out += row("FrC", frc, total);
  out += row("PFrC", pfrc, total);
  out += row("Wrong", wrong, total);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-8s %6zu\n", "total", total);
  return out + buf;
}

std::string MetricsReport::lines() const {
  std::string out;
  const std::pair<const char *, std::size_t> metrics[] = {
      {"FrSynC", frsync}, {"FrC", frc}, {"PFrC", pfrc}, {"Wrong", wrong}};
  for (const auto &[name, count] : metrics) {
    out += std::string(name) + "\t" + std::to_string(count) + "\t" +
           format_percent(percent(count, total)) + "\n";
  }
  return out;
}

MetricsReport run_authoring(const Pipeline &pipeline,
                            const std::vector<GoldAnnotation> &corpus,
                            unsigned jobs) {
  MetricsReport report;
  report.total = corpus.size();
  report.verdicts.resize(corpus.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < corpus.size(); i = next++) {
      SentenceResult result;
      try {
        auto a = pipeline.analyze(corpus[i].sentence);
        if (a.drs.is_question()) {
          result.error = "not a declarative sentence";
        } else {
          result.instances = std::move(a.kept);
          if (result.instances.empty() && !a.pruned.empty()) {
            result.error = a.pruned.front();
          }
        }
      } catch (const Error &e) {
        result.error = e.what();
      }
      SentenceVerdict &v = report.verdicts[i];
      v.index = i;
      v.sentence = corpus[i].sentence;
      v.verdict = classify(result, corpus[i], &v.reason);
    }
  };
  jobs = std::max(1u, jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto &t : pool) t.join();
  }
  for (const auto &v : report.verdicts) {
    switch (v.verdict) {
      case Verdict::kFrSynC: ++report.frsync; ++report.frc; break;
      case Verdict::kFrC: ++report.frc; break;
      case Verdict::kPFrC: ++report.pfrc; break;
      case Verdict::kWrong: ++report.wrong; break;
    }
  }
  return report;
}

std::vector<QaItem> parse_questions(std::string_view text) {
  std::vector<QaItem> out;
  for (const auto &[n, line] : content_lines(text)) {
    auto [question, rhs] = split_arrow(line, n);
    QaItem item;
    item.question = question;
    TokenCursor c = cursor(rhs, n);
    if (c.peek().kind == TermToken::Kind::kAtom && c.peek().text == "none") {
      ++c.pos;
    } else {
      for (;;) {
        item.answers.push_back(c.string("answer"));
        if (!c.punct(",")) break;
        ++c.pos;
      }
    }
    if (!c.at_end()) throw SyntaxError(n, "trailing text after answers");
    std::sort(item.answers.begin(), item.answers.end());
    item.answers.erase(std::unique(item.answers.begin(), item.answers.end()),
                       item.answers.end());
    out.push_back(std::move(item));
  }
  return out;
}

std::vector<std::string> parse_kb_corpus(std::string_view text) {
  std::vector<std::string> out;
  for (const auto &[n, line] : content_lines(text)) {
    const auto arrow = line.find("=>");
    out.push_back(trim(arrow == std::string::npos ? line : line.substr(0, arrow)));
  }
  return out;
}

double QaReport::accuracy() const { return MetricsReport::percent(correct, total); }

std::string QaReport::table() const {
  std::string out;
  char buf[128];
  std::snprintf(buf, sizeof buf, "kb sentences  %6zu authored, %zu rejected\n",
                authored, rejected.size());
  out += buf;
  std::snprintf(buf, sizeof buf, "questions     %6zu\n", total);
  out += buf;
  std::snprintf(buf, sizeof buf, "correct       %6zu\n", correct);
  out += buf;
  std::snprintf(buf, sizeof buf, "accuracy      %6s%%\n", format_percent(accuracy()).c_str());
  out += buf;
  return out;
}

std::string QaReport::lines() const {
  return "accuracy\t" + std::to_string(correct) + "\t" + format_percent(accuracy()) + "\n";
}

QaReport run_qa(const Pipeline &pipeline, const std::vector<std::string> &kb_sentences,
                const std::vector<QaItem> &questions) {
  QaReport report;
  KnowledgeBase kb;
  for (const auto &s : kb_sentences) {
    auto r = pipeline.author(s, kb);
    if (r.ok) {
      ++report.authored;
    } else {
      report.rejected.push_back(s + " (" + r.reason + ")");
    }
  }
  report.total = questions.size();
  for (const auto &q : questions) {
    QaReport::Item item;
    item.question = q.question;
    item.expected = q.answers;
    try {
      item.got = pipeline.query(q.question, kb).answers;
    } catch (const Error &e) {
      item.error = e.what();
    }
    item.correct = item.error.empty() && item.got == item.expected;
    if (item.correct) ++report.correct;
    report.items.push_back(std::move(item));
  }
  return report;
}

}  // namespace kalm
