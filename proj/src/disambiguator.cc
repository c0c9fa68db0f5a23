#include "kalm/disambiguator.h"

#include <algorithm>
#include <cctype>
#include <limits>
#include <mutex>
#include <queue>
#include <set>
#include <sstream>

#include "kalm/errors.h"

namespace kalm {

std::size_t Scorer::KeyHash::operator()(const Key &k) const noexcept {
  std::size_t h = k.from * 1000003u ^ k.to;
  h = h * 31 + static_cast<std::size_t>(k.depth);
  return h ^ static_cast<std::size_t>(k.profile);
}

Scorer::Scorer(const SynsetGraph &graph, ScoreConfig config)
    : graph_(graph), config_(config), profile_hash_(config.weights.hash()) {
  if (!config_.weights.valid()) throw ConfigError("relation weights must be in (0,1]");
  if (config_.depth_bound < 1) throw ConfigError("depth bound must be >= 1");
  adjacency_.resize(graph_.size());
  for (std::size_t n = 0; n < graph_.size(); ++n) {
    for (const auto &e : graph_.out_edges(n)) {
      adjacency_[n].emplace_back(
          e.to, e.weight ? *e.weight : config_.weights.weight(e.relation));
    }
  }
}

double Scorer::search(std::size_t from, std::size_t to) const {
  if (from == to) return 1.0;
  struct Item {
    double product;
    int depth;
    std::size_t node;
    bool operator<(const Item &o) const {
      if (product != o.product) return product < o.product;
      return depth > o.depth;
    }
  };
  // Smallest depth at which each node was expanded. A later pop has a
  // product no larger, so it only helps if it arrives with fewer edges.
  std::vector<int> settled(graph_.size(), std::numeric_limits<int>::max());
  std::priority_queue<Item> frontier;
  frontier.push({1.0, 0, from});
  while (!frontier.empty()) {
    const Item item = frontier.top();
    frontier.pop();
    if (item.node == to) return item.product;
    if (settled[item.node] <= item.depth) continue;
    settled[item.node] = item.depth;
    if (item.depth == config_.depth_bound) continue;
    for (const auto &[next, w] : adjacency_[item.node]) {
      if (settled[next] <= item.depth + 1) continue;
      frontier.push({item.product * w, item.depth + 1, next});
    }
  }
  return 0.0;
}

double Scorer::path_score(const SynsetId &from, const SynsetId &to) const {
  if (from == to) return 1.0;
  const auto f = graph_.node(from);
  const auto t = graph_.node(to);
  if (!f || !t) return 0.0;
  if (!config_.cache) return search(*f, *t);
  const Key key{*f, *t, config_.depth_bound, profile_hash_};
  {
    std::shared_lock lock(mu_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  const double s = search(*f, *t);
  std::unique_lock lock(mu_);
  memo_.emplace(key, s);
  return s;
}

double Scorer::score(const SynsetId &cand, std::span<const SynsetId> meanings) const {
  double best = 0.0;
  for (const auto &m : meanings) best = std::max(best, path_score(cand, m));
  return best;
}

std::size_t Scorer::cache_size() const {
  std::shared_lock lock(mu_);
  return memo_.size();
}

double score(const Scorer &scorer, const SynsetId &cand,
             std::span<const SynsetId> meanings) {
  return scorer.score(cand, meanings);
}

Disambiguator::Disambiguator(const SynsetGraph &graph, const FrameOnt &ont,
                             const Lexicon *lexicon, DisambiguationConfig config)
    : graph_(graph),
      ont_(ont),
      lexicon_(lexicon),
      config_(std::move(config)),
      scorer_(graph, config_.scoring) {
  if (!(config_.theta > 0.0 && config_.theta < 1.0)) {
    throw ConfigError("theta must be in (0,1)");
  }
}

std::vector<SynsetId> Disambiguator::candidate_synsets(const Filler &filler) const {
  switch (filler.kind) {
    case Filler::Kind::kCommon: {
      const auto &senses = graph_.senses(filler.surface);
      if (senses.empty()) throw NoSenses(filler.surface);
      return senses;
    }
    case Filler::Kind::kNamed: {
      std::string key = filler.surface;
      for (auto &c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      const auto &senses = graph_.senses(key);
      if (!senses.empty()) return senses;
      return {config_.person};
    }
    case Filler::Kind::kNumeric:
      return {config_.quantity};
    case Filler::Kind::kQueryVar:
      break;
  }
  return {};
}

ScoredSense Disambiguator::best_sense(const Filler &filler, const RoleDecl &role) const {
  ScoredSense best;
  bool first = true;
  for (const auto &cand : candidate_synsets(filler)) {
    const double s = scorer_.score(cand, role.meanings);
    if (first || s > best.score) {
      best = {cand, s};
      first = false;
    }
  }
  return best;
}

bool Disambiguator::in_currency_subgraph(const SynsetId &id) const {
  if (id == config_.currency) return true;
  const auto start = graph_.node(id);
  const auto goal = graph_.node(config_.currency);
  if (!start || !goal) return false;
  std::vector<bool> seen(graph_.size(), false);
  std::vector<std::size_t> stack{*start};
  seen[*start] = true;
  while (!stack.empty()) {
    const std::size_t n = stack.back();
    stack.pop_back();
    if (n == *goal) return true;
    for (const auto &e : graph_.out_edges(n)) {
      if (e.relation == SemRelation::kHypernym && !seen[e.to]) {
        seen[e.to] = true;
        stack.push_back(e.to);
      }
    }
  }
  return false;
}

bool Disambiguator::constraint_holds(const std::string &constraint,
                                     const Filler &filler,
                                     const std::optional<SynsetId> &synset) const {
  if (constraint == "currency") {
    if (filler.kind == Filler::Kind::kNumeric) {
      return lexicon_ && !filler.unit.empty() &&
             lexicon_->lemma_has_tag(filler.unit, "currency-unit");
    }
    return synset && in_currency_subgraph(*synset);
  }
  return false;
}

std::optional<DisambiguatedInstance> Disambiguator::disambiguate(
    const FrameInstance &inst, std::string *why) const {
  auto reject = [&](const std::string &reason) -> std::optional<DisambiguatedInstance> {
    if (why) *why = reason;
    return std::nullopt;
  };
  const FrameDecl *frame = ont_.frame(inst.frame);
  if (!frame) return reject("unknown frame " + inst.frame);

  // Required roles come from the source lvp's patterns.
  std::set<std::string> required;
  for (const auto &lvp : ont_.lvps()) {
    if (lvp.id() != inst.provenance) continue;
    for (const auto &p : lvp.patterns) {
      if (p.required()) required.insert(p.role);
    }
  }

  DisambiguatedInstance out;
  out.frame = inst.frame;
  out.lu_ref = inst.lu_ref;
  out.provenance = inst.provenance;
  for (const auto &[role_name, filler] : inst.bindings) {
    const RoleDecl *role = frame->role(role_name);
    if (!role) return reject("unknown role " + role_name);
    if (filler.kind == Filler::Kind::kQueryVar) {
      out.bindings.emplace(role_name, ResolvedBinding{filler, std::nullopt, 0.0});
      continue;
    }
    std::string failure;
    ScoredSense best;
    try {
      best = best_sense(filler, *role);
      if (best.score < config_.theta) {
        std::ostringstream ss;
        ss << "'" << filler.surface << "' is not a plausible " << role_name
           << " (score " << best.score << ")";
        failure = ss.str();
      }
    } catch (const NoSenses &e) {
      failure = e.what();
    }
    if (failure.empty()) {
      for (const auto &c : role->constraints) {
        if (!constraint_holds(c, filler, best.synset)) {
          failure = "'" + filler.surface + "' violates constraint " + c + " of " +
                    role_name;
          break;
        }
      }
    }
    if (!failure.empty()) {
      if (required.count(role_name)) return reject(failure);
      continue;
    }
    out.bindings.emplace(role_name, ResolvedBinding{filler, best.synset, best.score});
  }

  // Roles competing for the same syntactic slot must be resolved by now.
  std::map<Ref, std::vector<std::string>> by_ref;
  for (const auto &[role_name, b] : out.bindings) by_ref[b.filler.ref].push_back(role_name);
  for (const auto &[ref, roles] : by_ref) {
    if (roles.size() > 1) {
      std::string names;
      for (const auto &r : roles) names += (names.empty() ? "" : " and ") + r;
      return reject("roles " + names + " both accept '" +
                    out.bindings.at(roles.front()).filler.surface + "'");
    }
  }
  return out;
}

std::vector<SynsetId> candidate_synsets(const Disambiguator &d, const Filler &filler) {
  return d.candidate_synsets(filler);
}

std::optional<DisambiguatedInstance> disambiguate_instance(
    const Disambiguator &d, const FrameInstance &inst, std::string *why) {
  return d.disambiguate(inst, why);
}

}  // namespace kalm
