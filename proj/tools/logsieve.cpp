// logsieve CLI: validated enclosures for the logarithmic-sieve constants.
//
// Subcommands: constant, sum, scan, hq, sigma, pipeline, bt, verify.
// Exit codes: 0 success, 2 domain/config error, 3 resource error,
// 64 usage error.

#include <logsieve/euler.hpp>
#include <logsieve/hq.hpp>
#include <logsieve/mobius.hpp>
#include <logsieve/pipeline.hpp>
#include <logsieve/report.hpp>
#include <logsieve/sigma.hpp>
#include <logsieve/verification.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

using namespace logsieve;

namespace {

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int run(int argc, char** argv) {
  CLI::App app{"validated enclosures for logarithmic sieve sums and constants"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "thread budget (reserved; runs are deterministic)");

  run_config cfg;
  cfg.command = join_args(argc, argv);
  cfg.threads = threads;
  if (const char* dir = std::getenv("LOGSIEVE_CACHE_DIR")) cfg.checkpoint = dir;

  // constant <id> [--cutoff N] [--json]
  auto* c_cmd = app.add_subcommand("constant", "evaluate a catalog prime product/sum");
  std::string c_id;
  u64 c_cutoff = default_product_cutoff;
  bool c_json = false;
  c_cmd->add_option("id", c_id, "catalog id")->required();
  c_cmd->add_option("--cutoff", c_cutoff, "prime cutoff P0");
  c_cmd->add_flag("--json", c_json, "JSON output");
  c_cmd->callback([&] {
    auto r = eval_catalog(c_id, c_cutoff);
    cfg.cutoff = c_cutoff;
    if (c_json) {
      json j{{"id", c_id},
             {"lo", r.total.lo},
             {"hi", r.total.hi},
             {"cutoff", r.cutoff},
             {"tail_width", width(r.tail)}};
      j["config"] = cfg.header();
      emit(j);
    } else {
      std::printf("%s = [%.17g, %.17g]  (cutoff %llu, tail width %.3g)\n", c_id.c_str(),
                  r.total.lo, r.total.hi, (unsigned long long)r.cutoff, width(r.tail));
    }
  });

  // sum <spec-id> --X <real> [--q N]
  auto* s_cmd = app.add_subcommand("sum", "evaluate a squarefree weighted sum or m-family value");
  std::string s_id;
  double s_X = 0;
  u64 s_q = 1;
  int s_logpow = 0;
  bool s_json = false;
  s_cmd->add_option("spec", s_id, "weight id or one of m, m_check, m_checkcheck, m_tilde, m_tildetilde")
      ->required();
  s_cmd->add_option("--X", s_X, "upper limit (real)")->required();
  s_cmd->add_option("--q", s_q, "coprimality modulus");
  s_cmd->add_option("--log-power", s_logpow, "log(X/l) power for weighted sums");
  s_cmd->add_flag("--json", s_json, "JSON output");
  s_cmd->callback([&] {
    interval r;
    if (s_id == "m")
      r = m_family(MKind::m, s_X, s_q);
    else if (s_id == "m_check")
      r = m_family(MKind::m_check, s_X, s_q);
    else if (s_id == "m_checkcheck")
      r = m_family(MKind::m_checkcheck, s_X, s_q);
    else if (s_id == "m_tilde")
      r = m_family(MKind::m_tilde, s_X, s_q);
    else if (s_id == "m_tildetilde")
      r = m_family(MKind::m_tildetilde, s_X, s_q);
    else
      r = weighted_sum(s_id, interval(s_X), s_q, s_logpow);
    if (s_json) {
      json j{{"spec", s_id}, {"X", s_X}, {"q", s_q}, {"lo", r.lo}, {"hi", r.hi}};
      j["config"] = cfg.header();
      emit(j);
    } else {
      std::printf("X,lo,hi\n%.17g,%.17g,%.17g\n", s_X, r.lo, r.hi);
    }
  });

  // scan <spec-id> --range a:b [--q N]
  auto* sc_cmd = app.add_subcommand("scan", "certified sup of a normalized sum over an X range");
  std::string sc_id, sc_range;
  u64 sc_q = 1;
  double sc_cap = default_scan_cap;
  bool sc_deflate = false, sc_json = false;
  sc_cmd->add_option("spec", sc_id, "scan id")->required();
  sc_cmd->add_option("--range", sc_range, "a:b")->required();
  sc_cmd->add_option("--q", sc_q, "coprimality modulus");
  sc_cmd->add_option("--cap", sc_cap, "desk-scale cap");
  sc_cmd->add_flag("--deflate-mass-band", sc_deflate,
                   "tail form: use the lower endpoint of the infinite mass");
  sc_cmd->add_flag("--json", sc_json, "JSON output");
  sc_cmd->callback([&] {
    auto colon = sc_range.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("scan range must be a:b");
    double a = std::stod(sc_range.substr(0, colon));
    double b = std::stod(sc_range.substr(colon + 1));
    auto r = threshold_scan(sc_id, sc_q, a, b, sc_cap, sc_deflate);
    if (sc_json) {
      json j{{"spec", sc_id}, {"q", sc_q}, {"from", a}, {"to", b},
             {"sup_lo", r.lo},  {"sup_hi", r.hi}};
      j["config"] = cfg.header();
      emit(j);
    } else {
      std::printf("X,lo,hi\n%s,%.17g,%.17g\n", sc_range.c_str(), r.lo, r.hi);
    }
  });

  // hq {integral|eval|tail|sv}
  auto* hq_cmd = app.add_subcommand("hq", "kernel evaluations and the log integral");
  double hq_X = 1e6, hq_s = 100, hq_cap = 1e8;
  unsigned hq_v = 1;
  std::string hq_ckpt, hq_resume;
  u64 hq_every = 0;
  auto* hqi = hq_cmd->add_subcommand("integral", "int_1^X h_v(s)/s ds by event sweep");
  hqi->add_option("--X", hq_X, "upper limit")->required();
  hqi->add_option("--v", hq_v, "modulus (1 or 2)")->required();
  hqi->add_option("--checkpoint", hq_ckpt, "write final state here");
  hqi->add_option("--resume", hq_resume, "resume from a saved state");
  hqi->add_option("--checkpoint-every", hq_every, "also save every N events");
  hqi->callback([&] {
    sweep_options opt;
    opt.checkpoint_save = hq_ckpt;
    opt.checkpoint_load = hq_resume;
    opt.checkpoint_every_events = hq_every;
    if (hq_ckpt.empty() && !cfg.checkpoint.empty())
      opt.checkpoint_save = cfg.checkpoint + "/hq_v" + std::to_string(hq_v) + ".state";
    auto r = hq_integral(hq_X, hq_v, opt);
    json j{{"X", hq_X},
           {"v", hq_v},
           {"lo", r.integral.lo},
           {"hi", r.integral.hi},
           {"events", r.events},
           {"seconds", r.seconds}};
    j["config"] = cfg.header();
    emit(j);
  });
  auto* hqe = hq_cmd->add_subcommand("eval", "pointwise h_v(s) by the direct double sum");
  hqe->add_option("--s", hq_s, "evaluation point")->required();
  hqe->add_option("--v", hq_v, "modulus")->required();
  hqe->callback([&] {
    auto r = hq_eval(hq_s, hq_v);
    json j{{"s", hq_s}, {"v", hq_v}, {"lo", r.lo}, {"hi", r.hi}};
    j["config"] = cfg.header();
    emit(j);
  });
  auto* hqt = hq_cmd->add_subcommand("tail", "bound on |int_X^inf h_v/s ds|");
  hqt->add_option("--X", hq_X, "lower limit")->required();
  hqt->add_option("--v", hq_v, "modulus")->required();
  hqt->callback([&] {
    auto r = hq_tail_bound(hq_X, hq_v);
    json j{{"X", hq_X}, {"v", hq_v}, {"bound", r.hi}};
    j["config"] = cfg.header();
    emit(j);
  });
  auto* hqs = hq_cmd->add_subcommand("sv", "the constant s_v from a fresh sweep");
  hqs->add_option("--X-cap", hq_cap, "sweep cap (1e6..1e8)");
  hqs->add_option("--v", hq_v, "modulus")->required();
  hqs->callback([&] {
    auto r = sv_constant(hq_cap, hq_v);
    json j{{"X_cap", hq_cap}, {"v", hq_v}, {"lo", r.lo}, {"hi", r.hi}};
    j["config"] = cfg.header();
    emit(j);
  });

  // sigma
  auto* sg_cmd = app.add_subcommand("sigma", "the headline double sum and its residual");
  double sg_U = 100;
  unsigned sg_v = 1;
  std::string sg_method = "decomposition";
  bool sg_res = false;
  double sg_svcap = 1e6;
  sg_cmd->add_option("--U", sg_U, "upper limit (real)");
  sg_cmd->add_option("--v", sg_v, "modulus (1 or 2)");
  sg_cmd->add_option("--method", sg_method, "pairwise|decomposition");
  sg_cmd->add_flag("--residual", sg_res, "also check against the cube-root barrier");
  sg_cmd->add_option("--sv-cap", sg_svcap, "sweep cap for s_v in residual mode");
  sg_cmd->fallthrough();  // --v etc. may follow the sweep subcommand
  auto* sg_sweep = sg_cmd->add_subcommand("sweep", "CSV over a log-spaced U grid");
  double sw_from = 10, sw_to = 1e4;
  int sw_points = 20;
  sg_sweep->add_option("--from", sw_from, "grid start")->required();
  sg_sweep->add_option("--to", sw_to, "grid end")->required();
  sg_sweep->add_option("--points", sw_points, "grid size")->required();
  sg_sweep->callback([&] {
    interval sv = sv_for_residuals(sg_v, sg_svcap);
    std::printf("U,lo,hi,residual_lo,residual_hi,bound,pass\n");
    for (int i = 0; i < sw_points; ++i) {
      double U = sw_from * std::pow(sw_to / sw_from, sw_points == 1 ? 0.0 : double(i) / (sw_points - 1));
      auto r = residual_check(U, sg_v, sv);
      std::printf("%.10g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", U, r.sigma.lo, r.sigma.hi,
                  r.residual.lo, r.residual.hi, r.bound.lo, int(r.pass));
    }
  });
  sg_cmd->callback([&] {
    if (*sg_sweep) return;
    SigmaMethod m = sg_method == "pairwise" ? SigmaMethod::pairwise : SigmaMethod::decomposition;
    if (sg_method != "pairwise" && sg_method != "decomposition")
      throw std::invalid_argument("method must be pairwise or decomposition");
    if (sg_res) {
      auto r = residual_check(sg_U, sg_v, sv_for_residuals(sg_v, sg_svcap), m);
      json j{{"U", sg_U},
             {"v", sg_v},
             {"sigma", to_json(r.sigma)},
             {"residual", to_json(r.residual)},
             {"bound", r.bound.lo},
             {"pass", r.pass}};
      j["config"] = cfg.header();
      emit(j);
    } else {
      auto r = sigma_direct(sg_U, sg_v, m);
      json j{{"U", sg_U}, {"v", sg_v}, {"method", sg_method}, {"lo", r.value.lo},
             {"hi", r.value.hi}};
      j["config"] = cfg.header();
      emit(j);
    }
  });

  // pipeline
  auto* p_cmd = app.add_subcommand("pipeline", "assemble the derived constants");
  unsigned p_v = 2;
  std::string p_regime = "1e12.5";
  double p_c = 16;
  u64 p_cutoff = default_product_cutoff;
  std::string p_hq_json;
  bool p_json = false;
  p_cmd->add_option("--v", p_v, "modulus (1 or 2)")->required();
  p_cmd->add_option("--regime", p_regime, "1e7 or 1e12.5");
  p_cmd->add_option("--c", p_c, "split parameter c");
  p_cmd->add_option("--cutoff", p_cutoff, "catalog cutoff");
  p_cmd->add_option("--hq-json", p_hq_json,
                    "JSON file with fresh 1e8 kernel integrals {v1:{lo,hi},v2:{lo,hi}}");
  p_cmd->add_flag("--json", p_json, "JSON output (default)");
  p_cmd->callback([&] {
    double regime = (p_regime == "1e7" || p_regime == "7") ? 7.0 : 12.5;
    if (p_regime != "1e7" && p_regime != "7" && p_regime != "1e12.5" && p_regime != "12.5")
      throw std::invalid_argument("regime must be 1e7 or 1e12.5");
    pipeline_options opt;
    opt.cutoff = p_cutoff;
    if (!p_hq_json.empty()) {
      std::ifstream f(p_hq_json);
      if (!f) throw std::invalid_argument("cannot open " + p_hq_json);
      json h = json::parse(f);
      opt.hq_1e8_v1 = interval(h.at("v1").at("lo"), h.at("v1").at("hi"));
      opt.hq_1e8_v2 = interval(h.at("v2").at("lo"), h.at("v2").at("hi"));
    }
    auto rep = assemble(p_v, regime, p_c, opt);
    cfg.cutoff = p_cutoff;
    if (p_json) {
      json j{{"v", rep.v}, {"regime_exponent", rep.regime_exponent}, {"c", rep.c}};
      json entries = json::object();
      for (const auto& [name, val] : rep.entries) {
        entries[name] = to_json(val);
        json prov = json::array();
        for (const auto& p : rep.provenance.at(name)) prov.push_back(p);
        entries[name]["provenance"] = prov;
      }
      j["entries"] = entries;
      j["config"] = cfg.header();
      emit(j);
    } else {
      std::printf("v=%u regime=1e%g c=%g cutoff=%llu\n", rep.v, rep.regime_exponent,
                  rep.c, (unsigned long long)p_cutoff);
      for (const auto& [name, val] : rep.entries)
        std::printf("%-16s [%.12g, %.12g]\n", name.c_str(), val.lo, val.hi);
    }
  });

  // bt
  auto* b_cmd = app.add_subcommand("bt", "explicit Brun-Titchmarsh bound");
  double b_Y = 1e25;
  u64 b_q = 1;
  b_cmd->add_option("--Y", b_Y, "interval length")->required();
  b_cmd->add_option("--q", b_q, "modulus")->required();
  b_cmd->callback([&] {
    auto r = brun_titchmarsh(b_Y, b_q);
    json j{{"Y", b_Y},
           {"q", b_q},
           {"iota", to_json(r.iota)},
           {"coefficient", to_json(r.coefficient)},
           {"bound", to_json(r.bound)}};
    j["config"] = cfg.header();
    emit(j);
  });

  // verify
  auto* v_cmd = app.add_subcommand("verify", "run the regression suite");
  std::string v_suite = "desk";
  v_cmd->add_option("--suite", v_suite, "desk or nightly");
  v_cmd->callback([&] {
    if (v_suite != "desk" && v_suite != "nightly")
      throw std::invalid_argument("suite must be desk or nightly");
    auto lines = run_suite(v_suite == "nightly");
    int fails = 0;
    for (const auto& l : lines) {
      std::printf("[%s] %s%s%s\n", l.pass ? "PASS" : "FAIL", l.name.c_str(),
                  l.detail.empty() ? "" : ": ", l.detail.c_str());
      fails += !l.pass;
    }
    std::printf("%zu checks, %d failures\n", lines.size(), fails);
    if (fails) throw resource_error("verification failed");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::ParseError&) {
    return 64;
  } catch (const resource_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
