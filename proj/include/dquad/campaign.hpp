#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dquad/numerics.hpp"

namespace dquad {

enum class BCeilingRule { Lemma31, FixedValue, PerPairFromIneq };
enum class CWindowRule { Thm51, Disabled };

/// Declarative search specification over pairs {a1, a2}. Campaigns are bound
/// to their checkpoint through a digest of the semantic fields only, so a
/// resume with a different worker count or paths stays valid.
struct CampaignConfig {
  // pair source: explicit list, or the rule a1 < a2 <= pair_a2_max
  // (optionally restricted to a2 <= 2*a1)
  std::vector<std::pair<BigInt, BigInt>> explicit_pairs;
  BigInt pair_a2_max = 0;      // rule active when explicit_pairs is empty
  bool pair_rule_a2_le_2a1 = true;

  BigInt b_floor = BigInt(100001);
  BCeilingRule b_ceiling_rule = BCeilingRule::PerPairFromIneq;
  BigInt b_ceiling_value = 0;           // FixedValue rule
  BigInt b_ceiling_cap = pow10(10);     // absolute cap, always applied
  CWindowRule c_window_rule = CWindowRule::Thm51;

  int worker_count = 1;
  std::string checkpoint_path;
  std::string output_path = "hits.jsonl";
  long stop_after_pairs = -1;  // process at most this many pairs, then checkpoint and stop

  static CampaignConfig from_file(const std::string& path);
  /// Semantic fields in a fixed order; input of the digest.
  std::string canonical_text() const;
  std::string digest() const;  // FNV-1a 64 over canonical_text, hex
  /// Materialized pair list, ascending (a1, a2).
  std::vector<std::pair<BigInt, BigInt>> pairs() const;
};

struct HitRecord {
  BigInt a1, a2, b, c;
  BigInt r1, r2, s1, s2, t;
  std::string config_digest;
  std::string ts;

  std::string to_json() const;
  static std::optional<HitRecord> from_json(const std::string& line);
};

struct PairResult {
  BigInt a1, a2;
  bool pruned = false;
  std::string prune_reason;
  std::vector<BigInt> b_candidates;   // b values passing both square conditions
  long c_candidates = 0;              // c values tested against bc+4
  long windows_degenerate = 0;
  std::vector<HitRecord> hits;
};

/// Search one pair through the Pell machinery: enumerate b in
/// [b_floor, ceiling], then c inside the window rule, keeping (b, c) with
/// bc + 4 a perfect square. Pure; no files touched.
PairResult search_pair(const BigInt& a1, const BigInt& a2, const CampaignConfig& cfg);

struct CampaignSummary {
  std::string config_digest;
  long pairs_total = 0;
  long pairs_processed = 0;       // this invocation
  long pairs_from_checkpoint = 0; // skipped as already complete
  long pairs_pruned = 0;
  long b_candidates = 0;
  long c_candidates = 0;
  long hits = 0;
  double wall_seconds = 0;
  bool complete = false;  // all pairs done and output merged
};

/// Run (or resume) a campaign: pair-level parallelism over a pull queue,
/// worker-local spill files, checkpoint appended as pairs complete, final
/// output merged and sorted by (a1, a2, b, c).
CampaignSummary run_campaign(const CampaignConfig& cfg);

struct A1EqualsOneRow {
  int j = 0;
  long k = 0;         // the unique index with y_k^2 inside the window
  bool k_unique = false;
  bool positivity = false;  // y_{3j+1}^2 - 4 > 2.25 (y_j^2 - 4)^3, exact
};

/// For j in [4, j_max]: window search over the y-sequence of x^2 - 3y^2 = -8
/// and the exact-integer positivity check. Throws for j_max < 4.
std::vector<A1EqualsOneRow> analysis_a1_equals_1(int j_max);

/// y_0, y_1, ... y_count-1 of the x^2 - 3y^2 = -8 solution sequence
/// (y: 2, 6, 22, 82, ...).
std::vector<BigInt> a1_equals_1_y_sequence(int count);

}  // namespace dquad
