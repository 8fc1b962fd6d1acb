#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "dquad/campaign.hpp"
#include "dquad/tuples.hpp"

using namespace dquad;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("dquad_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(reinterpret_cast<uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::set<std::array<std::string, 4>> hit_keys(const std::string& path) {
  std::set<std::array<std::string, 4>> keys;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto h = HitRecord::from_json(line);
    REQUIRE(h.has_value());
    keys.insert({h->a1.get_str(), h->a2.get_str(), h->b.get_str(), h->c.get_str()});
  }
  return keys;
}

CampaignConfig small_config(const TempDir& dir) {
  CampaignConfig cfg;
  cfg.explicit_pairs = {{1, 3}, {1, 5}, {2, 4}, {2, 7}, {3, 5}, {3, 8}, {4, 9}};
  cfg.b_floor = 1;
  cfg.b_ceiling_rule = BCeilingRule::FixedValue;
  cfg.b_ceiling_value = 1000;
  cfg.c_window_rule = CWindowRule::Disabled;
  cfg.checkpoint_path = (dir.path / "ckpt").string();
  cfg.output_path = (dir.path / "hits.jsonl").string();
  return cfg;
}

}  // namespace

TEST_CASE("config digest covers semantic fields only") {
  CampaignConfig a;
  a.pair_a2_max = 50;
  CampaignConfig b = a;
  b.worker_count = 8;
  b.checkpoint_path = "/tmp/x";
  b.output_path = "/tmp/y";
  b.stop_after_pairs = 3;
  CHECK(a.digest() == b.digest());
  CampaignConfig c = a;
  c.b_floor = 7;
  CHECK(a.digest() != c.digest());
}

TEST_CASE("config file round trip") {
  TempDir dir;
  auto p = dir.path / "cfg";
  std::ofstream out(p);
  out << "# comment\n";
  out << "pairs = 1,3 ; 2,9\n";
  out << "b_floor = 100001\n";
  out << "b_ceiling_rule = per-pair-ineq\n";
  out << "b_ceiling_cap = 100000000\n";
  out << "c_window = thm51\n";
  out << "workers = 4\n";
  out << "out = hits.jsonl\n";
  out.close();
  auto cfg = CampaignConfig::from_file(p.string());
  CHECK(cfg.explicit_pairs.size() == 2);
  CHECK(cfg.explicit_pairs[1].second == 9);
  CHECK(cfg.b_ceiling_rule == BCeilingRule::PerPairFromIneq);
  CHECK(cfg.worker_count == 4);
  CHECK(cfg.b_ceiling_cap == pow10(8));

  std::ofstream bad(p, std::ios::app);
  bad << "nonsense_key = 1\n";
  bad.close();
  CHECK_THROWS(CampaignConfig::from_file(p.string()));
}

TEST_CASE("pair rule materialization") {
  CampaignConfig cfg;
  cfg.pair_a2_max = 8;
  cfg.pair_rule_a2_le_2a1 = true;
  auto prs = cfg.pairs();
  for (const auto& [a1, a2] : prs) {
    CHECK(a1 < a2);
    CHECK(a2 <= 8);
    CHECK(a2 <= 2 * a1);
  }
  CHECK(!prs.empty());
}

TEST_CASE("search_pair prunes a2 = a1 + 1") {
  TempDir dir;
  auto cfg = small_config(dir);
  auto r = search_pair(3, 4, cfg);
  CHECK(r.pruned);
  CHECK(r.prune_reason == "a2 - a1 < 2");
  CHECK(r.hits.empty());
}

TEST_CASE("search_pair finds the known b=32 candidate for (1,3)") {
  TempDir dir;
  auto cfg = small_config(dir);
  cfg.b_floor = 30;
  cfg.b_ceiling_value = 40;
  auto r = search_pair(1, 3, cfg);
  REQUIRE(r.b_candidates.size() == 1);
  CHECK(r.b_candidates[0] == 32);
  CHECK(r.hits.empty());  // none of the c candidates passes bc+4
}

TEST_CASE("search_pair matches the regular chain for (1,5)") {
  TempDir dir;
  auto cfg = small_config(dir);
  auto r = search_pair(1, 5, cfg);
  // b candidates in [1, 1000]: 12, 96, 672
  REQUIRE(r.b_candidates.size() == 3);
  CHECK(r.b_candidates[0] == 12);
  CHECK(r.b_candidates[1] == 96);
  CHECK(r.b_candidates[2] == 672);
  // hits: consecutive pairs of the extension chain
  std::set<std::pair<std::string, std::string>> keys;
  for (const auto& h : r.hits) {
    keys.insert({h.b.get_str(), h.c.get_str()});
    CHECK(verify_tuple({1, h.b, h.c}, 4).ok);
    CHECK(verify_tuple({5, h.b, h.c}, 4).ok);
  }
  CHECK(keys.count({"12", "96"}) == 1);
  CHECK(keys.count({"96", "672"}) == 1);
}

TEST_CASE("search_pair agrees with a direct double loop at desk scale") {
  TempDir dir;
  auto cfg = small_config(dir);
  for (const auto& [a1l, a2l] : std::vector<std::pair<long, long>>{
           {1, 3}, {1, 5}, {2, 4}, {2, 7}, {3, 5}, {4, 9}, {5, 12}}) {
    BigInt a1 = a1l, a2 = a2l;
    auto r = search_pair(a1, a2, cfg);
    std::set<std::pair<long, long>> got;
    for (const auto& h : r.hits)
      if (h.c <= 1000000) got.insert({h.b.get_si(), h.c.get_si()});
    std::set<std::pair<long, long>> oracle;
    for (long b = 1; b <= 1000; ++b) {
      if (!is_perfect_square(BigInt(a1l * b + 4)) || !is_perfect_square(BigInt(a2l * b + 4)))
        continue;
      for (long c = b + 1; c <= 1000000; ++c) {
        if (is_perfect_square(BigInt(a1l * c + 4)) && is_perfect_square(BigInt(a2l * c + 4)) &&
            is_perfect_square(BigInt(b) * c + 4))
          oracle.insert({b, c});
      }
    }
    CHECK_MESSAGE(got == oracle, "pair ", a1l, ",", a2l);
  }
}

TEST_CASE("run_campaign determinism across workers and resume") {
  TempDir dir;
  auto cfg = small_config(dir);

  auto run_fresh = [&](int workers) {
    fs::remove(cfg.checkpoint_path);
    fs::remove(cfg.output_path);
    CampaignConfig c = cfg;
    c.worker_count = workers;
    auto sum = run_campaign(c);
    CHECK(sum.complete);
    return hit_keys(cfg.output_path);
  };

  auto k1 = run_fresh(1);
  auto k4 = run_fresh(4);
  CHECK(k1 == k4);
  CHECK(!k1.empty());  // the (1,5) chain hits

  // interrupt after 2 pairs, then resume
  fs::remove(cfg.checkpoint_path);
  fs::remove(cfg.output_path);
  CampaignConfig part = cfg;
  part.stop_after_pairs = 2;
  auto sum1 = run_campaign(part);
  CHECK(!sum1.complete);
  CHECK(sum1.pairs_processed == 2);
  CampaignConfig rest = cfg;
  auto sum2 = run_campaign(rest);
  CHECK(sum2.complete);
  CHECK(sum2.pairs_from_checkpoint == 2);
  CHECK(hit_keys(cfg.output_path) == k1);

  // a no-op resume (everything checkpointed) must preserve the output
  auto sum3 = run_campaign(rest);
  CHECK(sum3.complete);
  CHECK(sum3.pairs_processed == 0);
  CHECK(hit_keys(cfg.output_path) == k1);
}

TEST_CASE("checkpoint digest mismatch forces fresh start") {
  TempDir dir;
  auto cfg = small_config(dir);
  cfg.stop_after_pairs = 3;
  run_campaign(cfg);
  CampaignConfig changed = cfg;
  changed.b_ceiling_value = 999;  // semantic change
  changed.stop_after_pairs = -1;
  auto sum = run_campaign(changed);
  CHECK(sum.pairs_from_checkpoint == 0);  // old progress discarded
  CHECK(sum.complete);
}

TEST_CASE("empty pair list yields a zero summary") {
  TempDir dir;
  CampaignConfig cfg;
  cfg.explicit_pairs.clear();
  cfg.pair_a2_max = 0;
  cfg.output_path = (dir.path / "out.jsonl").string();
  auto sum = run_campaign(cfg);
  CHECK(sum.pairs_total == 0);
  CHECK(sum.hits == 0);
  CHECK(sum.complete);
}

TEST_CASE("hit record json round trip") {
  HitRecord h;
  h.a1 = 1;
  h.a2 = 5;
  h.b = 12;
  h.c = 96;
  h.r1 = 4;
  h.r2 = 8;
  h.s1 = 10;
  h.s2 = 22;
  h.t = 34;
  h.config_digest = "deadbeef";
  h.ts = "2026-01-01T00:00:00Z";
  auto parsed = HitRecord::from_json(h.to_json());
  REQUIRE(parsed.has_value());
  CHECK(parsed->a1 == 1);
  CHECK(parsed->c == 96);
  CHECK(parsed->t == 34);
  CHECK(parsed->config_digest == "deadbeef");
  CHECK(!HitRecord::from_json("{not json").has_value());
}

TEST_CASE("analysis_a1_equals_1") {
  auto y = a1_equals_1_y_sequence(7);
  CHECK(y == std::vector<BigInt>{2, 6, 22, 82, 306, 1142, 4262});

  auto rows = analysis_a1_equals_1(8);
  REQUIRE(rows.size() == 5);  // j = 4..8
  for (const auto& r : rows) {
    CHECK(r.k_unique);
    CHECK(r.k == 3L * r.j + 1);
    CHECK(r.positivity);
  }
  CHECK(rows[0].j == 4);
  CHECK(rows[0].k == 13);

  CHECK_THROWS_AS(analysis_a1_equals_1(3), std::domain_error);
}
