#ifndef KALM_FRAME_EXTRACTOR_H_
#define KALM_FRAME_EXTRACTOR_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kalm/drs.h"
#include "kalm/frame_ontology.h"

namespace kalm {

struct Filler {
  enum class Kind { kNamed, kCommon, kNumeric, kQueryVar };

  Ref ref;
  std::string surface;  // proper name, noun lemma, numeric literal or wh-word
  Kind kind = Kind::kCommon;
  std::string unit;  // unit lemma of a numeric filler, may be empty

  friend bool operator==(const Filler &, const Filler &) = default;
};

std::string_view filler_kind_name(Filler::Kind kind);

struct FrameInstance {
  std::string frame;
  Ref lu_ref;
  std::map<std::string, Filler> bindings;  // role -> filler
  std::string provenance;                  // Lvp::id() of the source lvp

  friend bool operator==(const FrameInstance &, const FrameInstance &) = default;
};

// Frame and role->(kind, surface, unit) agree; referents and provenance
// are ignored. This is the equality under which paraphrases coincide.
bool same_reading(const FrameInstance &a, const FrameInstance &b);

// The filler a referent denotes in this DRS.
Filler filler_for(const Drs &drs, Ref ref);

// Follows one grammatical pattern from the lexical-unit referent.
std::optional<Filler> apply_pattern(const Drs &drs, Ref lu_ref,
                                    const PatternPath &path);

// Every lvp whose lexical unit occurs in the DRS, applied in
// (occurrence order, lvp load order). Instances missing a required
// binding are dropped. Throws NoFrameMatched when lexical units with lvps
// occur but none produced an instance.
std::vector<FrameInstance> extract(const Drs &drs, const FrameOnt &ont);

}  // namespace kalm

#endif  // KALM_FRAME_EXTRACTOR_H_
