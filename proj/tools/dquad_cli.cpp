// Command-line front end: tuple verification, d+- extensions, Pell solving,
// sequence intersections, the inequality registry, and search campaigns.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "dquad/bounds.hpp"
#include "dquad/campaign.hpp"
#include "dquad/guarded.hpp"
#include "dquad/numerics.hpp"
#include "dquad/pell.hpp"
#include "dquad/sequences.hpp"
#include "dquad/tuples.hpp"

using namespace dquad;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUndecided = 3;

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rational q(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    q.canonicalize();
    return q;
  }
  return rational_from_decimal(s);
}

int cmd_verify(const std::vector<std::string>& elems, long n) {
  std::vector<BigInt> v;
  for (const auto& e : elems) v.emplace_back(e);
  auto res = verify_tuple(v, BigInt(n));
  if (!res.ok) {
    std::cout << "not a D(" << n << ")-tuple\n";
    return kExitDomain;
  }
  std::cout << "D(" << n << ")-tuple of size " << v.size() << "\n";
  for (const auto& [pair, root] : res.witnesses.roots) {
    std::cout << "  " << v[pair.first] << " * " << v[pair.second] << " + " << n << " = "
              << root << "^2\n";
  }
  return kExitOk;
}

int cmd_extend(const std::string& a, const std::string& b, const std::string& c) {
  TripleContext ctx{BigInt(a), BigInt(b), BigInt(c)};
  std::cout << "d+ = " << d_plus(ctx) << "\n";
  std::cout << "d- = " << d_minus(ctx) << "\n";
  return kExitOk;
}

int cmd_classify(const std::string& a, const std::string& b, const std::string& c,
                 const std::string& d) {
  auto cls = classify_quadruple(BigInt(a), BigInt(b), BigInt(c), BigInt(d));
  std::cout << (cls == QuadrupleClass::Regular ? "regular" : "irregular") << "\n";
  return kExitOk;
}

int cmd_pell_solve(const std::string& Ds, const std::string& Ns) {
  BigInt D(Ds), N(Ns);
  if (auto k = is_perfect_square(D)) {
    auto sols = solve_square_d(*k, N);
    std::cout << "square D = " << *k << "^2; " << sols.size() << " solution(s)\n";
    for (const auto& [x, y] : sols) std::cout << "  x=" << x << " y=" << y << "\n";
    return kExitOk;
  }
  auto unit = fundamental_unit(D);
  std::cout << "fundamental unit: (" << unit.x << ", " << unit.y << ")\n";
  auto classes = solution_classes({D, N});
  std::cout << classes.size() << " solution class(es)\n";
  for (const auto& c : classes) std::cout << "  x0=" << c.x0 << " y0=" << c.y0 << "\n";
  return kExitOk;
}

int cmd_pell_enumerate(const std::string& Ds, const std::string& Ns,
                       const std::string& ymaxs) {
  auto sols = enumerate_solutions({BigInt(Ds), BigInt(Ns)}, BigInt(ymaxs));
  for (const auto& [x, y] : sols) std::cout << "x=" << x << " y=" << y << "\n";
  std::cout << sols.size() << " solution(s)\n";
  return kExitOk;
}

int cmd_intersect(const std::string& a, const std::string& b, const std::string& c,
                  int m_max, int n_max) {
  auto hits = find_intersections(BigInt(a), BigInt(b), BigInt(c), m_max, n_max);
  for (const auto& h : hits)
    std::cout << "m=" << h.m << " n=" << h.n << " z=" << h.z << " d=" << h.d << "\n";
  std::cout << hits.size() << " intersection(s)\n";
  return kExitOk;
}

int cmd_bounds_eval(const std::string& name, const std::string& ks, const std::string& vs) {
  auto id = ineq_from_name(name);
  if (!id) {
    std::cerr << "unknown inequality '" << name << "'\n";
    return kExitUsage;
  }
  bool holds = inequality_holds(*id, BigInt(vs), parse_rational(ks));
  std::cout << ineq_info(*id).name << " at " << ineq_info(*id).variable << "=" << vs
            << ", k=" << ks << ": " << (holds ? "holds" : "fails") << "\n";
  return kExitOk;
}

int cmd_bounds_iterate(const std::string& name) {
  auto id = ineq_from_name(name);
  if (!id) {
    std::cerr << "unknown inequality '" << name << "'\n";
    return kExitUsage;
  }
  auto seq = iterate_a2_bound(*id);
  for (size_t i = 0; i < seq.size(); ++i)
    std::cout << "iteration " << i + 1 << ": " << ineq_info(*id).variable << " <= "
              << seq[i] << "\n";
  if (!seq.empty()) std::cout << "fixpoint " << seq.back() << "\n";
  return kExitOk;
}

int cmd_bounds_mbound() {
  auto r = solve_m_bound();
  std::cout << "m_max = " << r.m_max << "\n";
  std::cout << "c < 10^" << r.c_log10_max + 1 << " (100 log10 m_max = " << r.c_log10_max
            << ".x)\n";
  std::cout << "d < 10^10^" << r.d_log10_log10 << "\n";
  return kExitOk;
}

void print_summary(const CampaignSummary& s) {
  std::cout << "config digest:        " << s.config_digest << "\n";
  std::cout << "pairs total:          " << s.pairs_total << "\n";
  std::cout << "pairs processed:      " << s.pairs_processed << "\n";
  std::cout << "pairs from ckpt:      " << s.pairs_from_checkpoint << "\n";
  std::cout << "pairs pruned:         " << s.pairs_pruned << "\n";
  std::cout << "b candidates tested:  " << s.b_candidates << "\n";
  std::cout << "c candidates tested:  " << s.c_candidates << "\n";
  std::cout << "hits:                 " << s.hits << "\n";
  std::cout << "wall seconds:         " << s.wall_seconds << "\n";
  std::cout << "status:               " << (s.complete ? "complete" : "partial") << "\n";
}

int cmd_campaign_run(const std::string& config_path, int workers_override,
                     const std::string& checkpoint_override, const std::string& out_override,
                     bool require_checkpoint) {
  CampaignConfig cfg = CampaignConfig::from_file(config_path);
  if (workers_override > 0) cfg.worker_count = workers_override;
  if (!checkpoint_override.empty()) cfg.checkpoint_path = checkpoint_override;
  if (!out_override.empty()) cfg.output_path = out_override;
  if (require_checkpoint) {
    if (cfg.checkpoint_path.empty()) {
      std::cerr << "resume: config has no checkpoint path\n";
      return kExitUsage;
    }
  }
  auto sum = run_campaign(cfg);
  print_summary(sum);
  return kExitOk;
}

int cmd_campaign_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << path << "\n";
    return kExitDomain;
  }
  long count = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto h = HitRecord::from_json(line);
    if (!h) {
      std::cerr << "bad record: " << line << "\n";
      return kExitDomain;
    }
    std::cout << "a1=" << h->a1 << " a2=" << h->a2 << " b=" << h->b << " c=" << h->c << "\n";
    ++count;
  }
  std::cout << count << " hit record(s)\n";
  return kExitOk;
}

int cmd_analysis_a1(int j_max) {
  auto rows = analysis_a1_equals_1(j_max);
  bool all_ok = true;
  for (const auto& r : rows) {
    bool ok = r.k_unique && r.k == 3L * r.j + 1 && r.positivity;
    all_ok = all_ok && ok;
    std::cout << "j=" << r.j << " k=" << r.k << (r.k_unique ? "" : " (not unique)")
              << " positivity=" << (r.positivity ? "yes" : "no")
              << (ok ? "" : "  <-- unexpected") << "\n";
  }
  std::cout << (all_ok ? "all rows confirm k = 3j+1 with positivity" : "ANOMALY FOUND")
            << "\n";
  return all_ok ? kExitOk : kExitDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"D(4)-quadruple extension toolkit"};
  app.require_subcommand(1);

  long precision_bits = GuardedReal::kDefaultPrec;
  int workers = 0;
  std::string checkpoint, out;
  app.add_option("--precision-bits", precision_bits, "starting mantissa bits");
  app.add_option("--workers", workers, "campaign worker threads");
  app.add_option("--checkpoint", checkpoint, "campaign checkpoint path override");
  app.add_option("--out", out, "campaign output path override");

  // verify
  auto* verify = app.add_subcommand("verify", "check the D(n) property");
  long verify_n = 4;
  std::vector<std::string> verify_elems;
  verify->add_option("--n", verify_n, "the D(n) parameter");
  verify->add_option("elements", verify_elems, "tuple elements")->required()->expected(-2);

  // extend
  auto* extend = app.add_subcommand("extend", "d+ and d- of a D(4)-triple");
  std::vector<std::string> triple(3);
  extend->add_option("a", triple[0])->required();
  extend->add_option("b", triple[1])->required();
  extend->add_option("c", triple[2])->required();

  // classify
  auto* classify = app.add_subcommand("classify", "regular or irregular quadruple");
  std::vector<std::string> quad(4);
  classify->add_option("a", quad[0])->required();
  classify->add_option("b", quad[1])->required();
  classify->add_option("c", quad[2])->required();
  classify->add_option("d", quad[3])->required();

  // pell
  auto* pell = app.add_subcommand("pell", "generalized Pell equations");
  pell->require_subcommand(1);
  auto* psolve = pell->add_subcommand("solve", "unit and solution classes");
  std::string pd, pn, pymax;
  psolve->add_option("D", pd)->required();
  psolve->add_option("N", pn)->required();
  auto* penum = pell->add_subcommand("enumerate", "solutions with y <= y_max");
  penum->add_option("D", pd)->required();
  penum->add_option("N", pn)->required();
  penum->add_option("y_max", pymax)->required();

  // sequences
  auto* seqs = app.add_subcommand("sequences", "recurrence sequences");
  seqs->require_subcommand(1);
  auto* inter = seqs->add_subcommand("intersect", "coincidences v_m = w_n");
  std::vector<std::string> itriple(3);
  int m_max = 4, n_max = 4;
  inter->add_option("a", itriple[0])->required();
  inter->add_option("b", itriple[1])->required();
  inter->add_option("c", itriple[2])->required();
  inter->add_option("--m-max", m_max);
  inter->add_option("--n-max", n_max);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "inequality registry");
  bounds->require_subcommand(1);
  auto* beval = bounds->add_subcommand("eval", "evaluate one inequality");
  std::string ineq_name, kval = "1", vval;
  beval->add_option("inequality", ineq_name)->required();
  beval->add_option("--k", kval, "the b > k a2 parameter (rational)");
  beval->add_option("--a2,--value", vval, "registry variable value")->required();
  auto* biter = bounds->add_subcommand("iterate", "k-refinement loop");
  biter->add_option("inequality", ineq_name)->required();
  auto* bm = bounds->add_subcommand("m-bound", "numeric m, c, d bounds");

  // campaign
  auto* camp = app.add_subcommand("campaign", "exhaustive pair searches");
  camp->require_subcommand(1);
  std::string cfg_path, report_path;
  auto* crun = camp->add_subcommand("run", "run (or resume) a campaign");
  crun->add_option("--config", cfg_path)->required();
  auto* cresume = camp->add_subcommand("resume", "resume from checkpoint");
  cresume->add_option("--config", cfg_path)->required();
  auto* creport = camp->add_subcommand("report", "summarize an output file");
  creport->add_option("file", report_path)->required();

  // analysis
  auto* analysis = app.add_subcommand("analysis", "fixed-parameter analyses");
  analysis->require_subcommand(1);
  auto* a1eq1 = analysis->add_subcommand("a1-eq-1", "window analysis over x^2-3y^2=-8");
  int j_max = 30;
  a1eq1->add_option("--j-max", j_max);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  GuardedReal::set_start_precision(static_cast<mpfr_prec_t>(precision_bits));

  try {
    if (*verify) return cmd_verify(verify_elems, verify_n);
    if (*extend) return cmd_extend(triple[0], triple[1], triple[2]);
    if (*classify) return cmd_classify(quad[0], quad[1], quad[2], quad[3]);
    if (*psolve) return cmd_pell_solve(pd, pn);
    if (*penum) return cmd_pell_enumerate(pd, pn, pymax);
    if (*inter) return cmd_intersect(itriple[0], itriple[1], itriple[2], m_max, n_max);
    if (*beval) return cmd_bounds_eval(ineq_name, kval, vval);
    if (*biter) return cmd_bounds_iterate(ineq_name);
    if (*bm) return cmd_bounds_mbound();
    if (*crun) return cmd_campaign_run(cfg_path, workers, checkpoint, out, false);
    if (*cresume) return cmd_campaign_run(cfg_path, workers, checkpoint, out, true);
    if (*creport) return cmd_campaign_report(report_path);
    if (*a1eq1) return cmd_analysis_a1(j_max);
  } catch (const UndecidedError& e) {
    std::cerr << "undecided: " << e.what() << "\n";
    return kExitUndecided;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}
