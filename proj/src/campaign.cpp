#include "dquad/campaign.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cassert>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "dquad/bounds.hpp"
#include "dquad/pell.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace dquad {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

uint64_t fnv1a(const std::string& data) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(uint64_t v) {
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string iso_now() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  struct tm tmv;
  gmtime_r(&t, &tmv);
  char buf[32];
  strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tmv);
  return buf;
}

BigInt ceil_div(const BigInt& num, const BigInt& den) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

BigInt floor_div(const BigInt& num, const BigInt& den) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

std::string rule_name(BCeilingRule r) {
  switch (r) {
    case BCeilingRule::Lemma31: return "lemma31";
    case BCeilingRule::FixedValue: return "fixed";
    case BCeilingRule::PerPairFromIneq: return "per-pair-ineq";
  }
  return "?";
}

std::string rule_name(CWindowRule r) {
  return r == CWindowRule::Thm51 ? "thm51" : "disabled";
}

}  // namespace

CampaignConfig CampaignConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  CampaignConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: missing '=' at line " + std::to_string(lineno));
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key == "pairs") {
      std::stringstream ss(val);
      std::string item;
      while (std::getline(ss, item, ';')) {
        item = trim(item);
        if (item.empty()) continue;
        auto comma = item.find(',');
        if (comma == std::string::npos)
          throw std::runtime_error("config: bad pair '" + item + "'");
        cfg.explicit_pairs.emplace_back(BigInt(trim(item.substr(0, comma))),
                                        BigInt(trim(item.substr(comma + 1))));
      }
    } else if (key == "pair_a2_max") {
      cfg.pair_a2_max = BigInt(val);
    } else if (key == "pair_rule") {
      if (val == "a2<=2a1") cfg.pair_rule_a2_le_2a1 = true;
      else if (val == "all") cfg.pair_rule_a2_le_2a1 = false;
      else throw std::runtime_error("config: unknown pair_rule '" + val + "'");
    } else if (key == "b_floor") {
      cfg.b_floor = BigInt(val);
    } else if (key == "b_ceiling_rule") {
      if (val == "lemma31") cfg.b_ceiling_rule = BCeilingRule::Lemma31;
      else if (val == "fixed") cfg.b_ceiling_rule = BCeilingRule::FixedValue;
      else if (val == "per-pair-ineq") cfg.b_ceiling_rule = BCeilingRule::PerPairFromIneq;
      else throw std::runtime_error("config: unknown b_ceiling_rule '" + val + "'");
    } else if (key == "b_ceiling_value") {
      cfg.b_ceiling_value = BigInt(val);
    } else if (key == "b_ceiling_cap") {
      cfg.b_ceiling_cap = BigInt(val);
    } else if (key == "c_window") {
      if (val == "thm51") cfg.c_window_rule = CWindowRule::Thm51;
      else if (val == "disabled") cfg.c_window_rule = CWindowRule::Disabled;
      else throw std::runtime_error("config: unknown c_window '" + val + "'");
    } else if (key == "workers") {
      cfg.worker_count = std::stoi(val);
    } else if (key == "checkpoint") {
      cfg.checkpoint_path = val;
    } else if (key == "out") {
      cfg.output_path = val;
    } else if (key == "stop_after_pairs") {
      cfg.stop_after_pairs = std::stol(val);
    } else {
      throw std::runtime_error("config: unknown key '" + key + "'");
    }
  }
  if (cfg.worker_count < 1) throw std::runtime_error("config: workers must be >= 1");
  return cfg;
}

std::string CampaignConfig::canonical_text() const {
  std::ostringstream os;
  os << "schema=1\n";
  if (!explicit_pairs.empty()) {
    os << "pairs=";
    auto sorted = explicit_pairs;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < sorted.size(); ++i) {
      if (i) os << ";";
      os << sorted[i].first << "," << sorted[i].second;
    }
    os << "\n";
  } else {
    os << "pair_a2_max=" << pair_a2_max << "\n";
    os << "pair_rule=" << (pair_rule_a2_le_2a1 ? "a2<=2a1" : "all") << "\n";
  }
  os << "b_floor=" << b_floor << "\n";
  os << "b_ceiling_rule=" << rule_name(b_ceiling_rule) << "\n";
  if (b_ceiling_rule == BCeilingRule::FixedValue)
    os << "b_ceiling_value=" << b_ceiling_value << "\n";
  os << "b_ceiling_cap=" << b_ceiling_cap << "\n";
  os << "c_window=" << rule_name(c_window_rule) << "\n";
  return os.str();
}

std::string CampaignConfig::digest() const { return hex64(fnv1a(canonical_text())); }

std::vector<std::pair<BigInt, BigInt>> CampaignConfig::pairs() const {
  std::vector<std::pair<BigInt, BigInt>> out;
  if (!explicit_pairs.empty()) {
    out = explicit_pairs;
  } else {
    for (BigInt a2 = 3; a2 <= pair_a2_max; ++a2) {
      for (BigInt a1 = 1; a1 < a2; ++a1) {
        if (pair_rule_a2_le_2a1 && a2 > 2 * a1) continue;
        out.emplace_back(a1, a2);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string HitRecord::to_json() const {
  json j;
  j["a1"] = a1.get_str();
  j["a2"] = a2.get_str();
  j["b"] = b.get_str();
  j["c"] = c.get_str();
  j["r1"] = r1.get_str();
  j["r2"] = r2.get_str();
  j["s1"] = s1.get_str();
  j["s2"] = s2.get_str();
  j["t"] = t.get_str();
  j["config_digest"] = config_digest;
  j["ts"] = ts;
  return j.dump();
}

std::optional<HitRecord> HitRecord::from_json(const std::string& line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded()) return std::nullopt;
  try {
    HitRecord h;
    h.a1 = BigInt(j.at("a1").get<std::string>());
    h.a2 = BigInt(j.at("a2").get<std::string>());
    h.b = BigInt(j.at("b").get<std::string>());
    h.c = BigInt(j.at("c").get<std::string>());
    h.r1 = BigInt(j.at("r1").get<std::string>());
    h.r2 = BigInt(j.at("r2").get<std::string>());
    h.s1 = BigInt(j.at("s1").get<std::string>());
    h.s2 = BigInt(j.at("s2").get<std::string>());
    h.t = BigInt(j.at("t").get<std::string>());
    h.config_digest = j.at("config_digest").get<std::string>();
    h.ts = j.at("ts").get<std::string>();
    return h;
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

PairResult search_pair(const BigInt& a1, const BigInt& a2, const CampaignConfig& cfg) {
  if (!(0 < a1 && a1 < a2)) throw std::domain_error("search_pair: need 0 < a1 < a2");
  PairResult res;
  res.a1 = a1;
  res.a2 = a2;

  if (a2 - a1 < 2) {
    // a2 = a1 + 1 cannot occur in a double extension
    res.pruned = true;
    res.prune_reason = "a2 - a1 < 2";
    return res;
  }

  BigInt ceiling;
  switch (cfg.b_ceiling_rule) {
    case BCeilingRule::Lemma31: {
      // b < coeff sqrt(a1 a1') a2^2; squared form keeps it exact:
      // b^2 < coeff^2 a1 a1' a2^4
      Rational coeff = rational_from_decimal("8.4034e13");
      BigInt ap = a2 - a1 > a1 ? BigInt(4 * (a2 - a1)) : BigInt(4 * a1);
      Rational c2 = coeff * coeff * Rational(a1 * ap * a2 * a2 * a2 * a2, 1);
      ceiling = isqrt(c2.get_num() / c2.get_den()) + 1;
      break;
    }
    case BCeilingRule::FixedValue:
      ceiling = cfg.b_ceiling_value;
      break;
    case BCeilingRule::PerPairFromIneq: {
      auto b = per_pair_b_ceiling(a1, a2, cfg.b_ceiling_cap);
      if (!b) {
        res.pruned = true;
        res.prune_reason = "per-pair b inequality never holds";
        return res;
      }
      ceiling = *b;
      break;
    }
  }
  if (ceiling > cfg.b_ceiling_cap) ceiling = cfg.b_ceiling_cap;
  if (ceiling < cfg.b_floor) {
    res.pruned = true;
    res.prune_reason = "empty b window";
    return res;
  }

  std::string ts = iso_now();
  std::string digest = cfg.digest();
  for (const auto& bv : pair_extension_values(a1, a2, cfg.b_floor, ceiling)) {
    const BigInt& b = bv.value;
    res.b_candidates.push_back(b);
    BigInt c_lo, c_hi;
    BigInt quartic = 39247 * b * b * b * b - 1;  // c < 39247 b^4
    if (cfg.c_window_rule == CWindowRule::Thm51) {
      c_lo = floor_div(a1 * a1 * b * b * b, 4) + 1;           // c > 0.25 a1^2 b^3
      c_hi = ceil_div(a2 * a2 * b * b * b, 4) - 1;            // c < 0.25 a2^2 b^3
      if (quartic < c_hi) c_hi = quartic;
    } else {
      c_lo = b + 1;
      c_hi = quartic;
    }
    if (c_lo <= b) c_lo = b + 1;
    if (c_lo > c_hi) {
      ++res.windows_degenerate;
      continue;
    }
    for (const auto& cv : pair_extension_values(a1, a2, c_lo, c_hi)) {
      ++res.c_candidates;
      auto t = is_perfect_square(b * cv.value + 4);
      if (!t) continue;
      HitRecord h;
      h.a1 = a1;
      h.a2 = a2;
      h.b = b;
      h.c = cv.value;
      h.r1 = bv.r1;
      h.r2 = bv.r2;
      h.s1 = cv.r1;
      h.s2 = cv.r2;
      h.t = *t;
      h.config_digest = digest;
      h.ts = ts;
      // soundness: all five witness squares re-verified
      assert(h.r1 * h.r1 == a1 * b + 4 && h.r2 * h.r2 == a2 * b + 4);
      assert(h.s1 * h.s1 == a1 * h.c + 4 && h.s2 * h.s2 == a2 * h.c + 4);
      assert(h.t * h.t == b * h.c + 4);
      res.hits.push_back(std::move(h));
    }
  }
  return res;
}

namespace {

struct Checkpoint {
  std::string digest;
  std::set<std::pair<std::string, std::string>> done;  // decimal (a1, a2)
};

std::optional<Checkpoint> read_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  Checkpoint cp;
  std::string line;
  if (!std::getline(in, line) || trim(line) != "# dquad checkpoint v1") return std::nullopt;
  if (!std::getline(in, line)) return std::nullopt;
  {
    std::istringstream ss(line);
    std::string tag;
    ss >> tag >> cp.digest;
    if (tag != "digest" || cp.digest.empty()) return std::nullopt;
  }
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string tag, a1, a2;
    ss >> tag >> a1 >> a2;
    if (tag != "pair" || a1.empty() || a2.empty()) return std::nullopt;
    cp.done.insert({a1, a2});
  }
  return cp;
}

bool hit_key_less(const HitRecord& x, const HitRecord& y) {
  if (x.a1 != y.a1) return x.a1 < y.a1;
  if (x.a2 != y.a2) return x.a2 < y.a2;
  if (x.b != y.b) return x.b < y.b;
  return x.c < y.c;
}

}  // namespace

CampaignSummary run_campaign(const CampaignConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  CampaignSummary sum;
  sum.config_digest = cfg.digest();

  auto all_pairs = cfg.pairs();
  sum.pairs_total = static_cast<long>(all_pairs.size());

  std::set<std::pair<std::string, std::string>> done;
  if (!cfg.checkpoint_path.empty() && fs::exists(cfg.checkpoint_path)) {
    auto cp = read_checkpoint(cfg.checkpoint_path);
    if (!cp) {
      std::cerr << "warning: unreadable checkpoint " << cfg.checkpoint_path
                << "; starting fresh\n";
      fs::remove(cfg.checkpoint_path);
    } else if (cp->digest != sum.config_digest) {
      std::cerr << "warning: checkpoint digest mismatch (" << cp->digest
                << " != " << sum.config_digest << "); starting fresh\n";
      fs::remove(cfg.checkpoint_path);
    } else {
      done = cp->done;
    }
  }

  std::vector<std::pair<BigInt, BigInt>> queue;
  for (const auto& pr : all_pairs) {
    if (done.count({pr.first.get_str(), pr.second.get_str()})) {
      ++sum.pairs_from_checkpoint;
    } else {
      queue.push_back(pr);
    }
  }
  long budget = cfg.stop_after_pairs >= 0 ? cfg.stop_after_pairs
                                          : static_cast<long>(queue.size());
  if (budget > static_cast<long>(queue.size())) budget = static_cast<long>(queue.size());

  // checkpoint writer: create with header when absent
  std::ofstream cpout;
  std::mutex cp_mu;
  if (!cfg.checkpoint_path.empty()) {
    bool fresh = !fs::exists(cfg.checkpoint_path);
    cpout.open(cfg.checkpoint_path, std::ios::app);
    if (!cpout) throw std::runtime_error("cannot open checkpoint " + cfg.checkpoint_path);
    if (fresh) {
      cpout << "# dquad checkpoint v1\n";
      cpout << "digest " << sum.config_digest << "\n";
      cpout.flush();
    }
  }

  int workers = std::max(1, cfg.worker_count);
  std::vector<PairResult> results(static_cast<size_t>(budget));
  std::atomic<long> next{0};

  auto spill_name = [&](int w) {
    return cfg.output_path + ".spill." + std::to_string(w);
  };

  auto work = [&](int w) {
    std::ofstream spill;
    for (;;) {
      long i = next.fetch_add(1);
      if (i >= budget) break;
      const auto& [a1, a2] = queue[static_cast<size_t>(i)];
      PairResult r = search_pair(a1, a2, cfg);
      if (!r.hits.empty()) {
        if (!spill.is_open()) spill.open(spill_name(w), std::ios::app);
        for (const auto& h : r.hits) spill << h.to_json() << "\n";
        spill.flush();
      }
      {
        std::lock_guard<std::mutex> lk(cp_mu);
        if (cpout.is_open()) {
          cpout << "pair " << a1 << " " << a2 << "\n";
          cpout.flush();
          if (!cpout) throw std::runtime_error("checkpoint write failure");
        }
      }
      results[static_cast<size_t>(i)] = std::move(r);  // distinct slot per task
    }
  };

  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
  for (auto& th : pool) th.join();

  for (const auto& r : results) {
    if (r.pruned) ++sum.pairs_pruned;
    sum.b_candidates += static_cast<long>(r.b_candidates.size());
    sum.c_candidates += r.c_candidates;
  }
  sum.pairs_processed = budget;
  sum.complete = (budget == static_cast<long>(queue.size()));

  if (sum.complete) {
    // merge the existing output (earlier completed merges) with every spill
    // produced by this and earlier invocations; idempotent across resumes
    std::vector<HitRecord> hits;
    fs::path outp(cfg.output_path.empty() ? "hits.jsonl" : cfg.output_path);
    fs::path dir = outp.parent_path().empty() ? "." : outp.parent_path();
    std::string prefix = outp.filename().string() + ".spill.";
    std::vector<fs::path> sources;
    if (fs::exists(outp)) sources.push_back(outp);
    std::vector<fs::path> spills;
    if (fs::exists(dir)) {
      for (const auto& e : fs::directory_iterator(dir)) {
        if (e.path().filename().string().rfind(prefix, 0) == 0) spills.push_back(e.path());
      }
    }
    sources.insert(sources.end(), spills.begin(), spills.end());
    for (const auto& sp : sources) {
      std::ifstream in(sp);
      std::string line;
      while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        auto h = HitRecord::from_json(line);
        if (h && h->config_digest == sum.config_digest) hits.push_back(*h);
      }
    }
    std::sort(hits.begin(), hits.end(), hit_key_less);
    hits.erase(std::unique(hits.begin(), hits.end(),
                           [](const HitRecord& x, const HitRecord& y) {
                             return x.a1 == y.a1 && x.a2 == y.a2 && x.b == y.b && x.c == y.c;
                           }),
               hits.end());
    std::ofstream out(outp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output " + outp.string());
    for (const auto& h : hits) out << h.to_json() << "\n";
    out.flush();
    sum.hits = static_cast<long>(hits.size());
    for (const auto& sp : spills) fs::remove(sp);
  } else {
    long n = 0;
    for (const auto& r : results) n += static_cast<long>(r.hits.size());
    sum.hits = n;
  }

  sum.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return sum;
}

std::vector<BigInt> a1_equals_1_y_sequence(int count) {
  std::vector<BigInt> y;
  if (count <= 0) return y;
  y.push_back(2);
  if (count == 1) return y;
  y.push_back(6);
  for (int i = 2; i < count; ++i) y.push_back(4 * y[i - 1] - y[i - 2]);
  return y;
}

std::vector<A1EqualsOneRow> analysis_a1_equals_1(int j_max) {
  if (j_max < 4) throw std::domain_error("analysis_a1_equals_1: j_max must be >= 4");
  auto y = a1_equals_1_y_sequence(3 * j_max + 3);
  std::vector<A1EqualsOneRow> rows;
  for (int j = 4; j <= j_max; ++j) {
    BigInt yj6;
    mpz_pow_ui(yj6.get_mpz_t(), y[static_cast<size_t>(j)].get_mpz_t(), 6);
    A1EqualsOneRow row;
    row.j = j;
    std::vector<long> ks;
    for (size_t k = 0; k < y.size(); ++k) {
      BigInt yk2 = y[k] * y[k];
      // 0.24 y_j^6 < y_k^2 < 2.25 y_j^6, exact: 25 y_k^2 > 6 y_j^6, 4 y_k^2 < 9 y_j^6
      if (25 * yk2 > 6 * yj6 && 4 * yk2 < 9 * yj6) ks.push_back(static_cast<long>(k));
    }
    row.k_unique = (ks.size() == 1);
    row.k = ks.size() == 1 ? ks[0] : -1;
    if (row.k_unique && row.k == 3L * j + 1) {
      const BigInt& yk = y[static_cast<size_t>(row.k)];
      BigInt lhs = 4 * (yk * yk - 4);
      BigInt base = y[static_cast<size_t>(j)] * y[static_cast<size_t>(j)] - 4;
      BigInt rhs = 9 * base * base * base;
      row.positivity = lhs > rhs;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace dquad
