// qmlab: command-line front end for the library.
// Exit codes: 0 all checks passed, 1 a check failed, 2 usage error,
// 3 budget or precision error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "minkowski/minkowski.hpp"

using namespace minkowski;

namespace {

enum Exit { ok = 0, check_failed = 1, usage = 2, budget = 3 };

struct Globals {
  std::string out;
  std::string format = "csv";
  unsigned threads = default_threads();
  long precision_bits = 256;
  double tol = 0;  // 0: per-command default
};

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    const double x = std::stod(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad number '" + item + "'");
    v.push_back(x);
  }
  if (v.empty()) throw std::invalid_argument("empty list '" + s + "'");
  return v;
}

cplx parse_complex(const std::string& s) {
  const auto v = parse_list(s);
  if (v.size() > 2) throw std::invalid_argument("expected RE or RE,IM");
  return {v[0], v.size() == 2 ? v[1] : 0.0};
}

double pick_tol(const Globals& g, double dflt) { return g.tol > 0 ? g.tol : dflt; }

ordered_json header(const Globals& g, const std::string& command, ordered_json extra = ordered_json::object()) {
  ordered_json h = {{"command", command},
                    {"format", g.format},
                    {"threads", g.threads},
                    {"precision_bits", g.precision_bits},
                    {"tol_override", g.tol}};
  for (auto it = extra.begin(); it != extra.end(); ++it) h[it.key()] = it.value();
  return h;
}

// table to --out (with a one-line note on stdout) or to stdout
void emit(const Globals& g, const ordered_json& h, const std::vector<ordered_json>& rows,
          const std::string& human = "") {
  const auto fmt = parse_format(g.format);
  emit_table(g.out, fmt, h, rows);
  if (!g.out.empty()) std::cout << (human.empty() ? "wrote " + g.out : human) << '\n';
}

int emit_reports_and_judge(const Globals& g, const std::string& command, const std::vector<ResidualReport>& reps,
                           ordered_json extra = ordered_json::object()) {
  const auto fmt = parse_format(g.format);
  emit_reports(g.out, fmt, header(g, command, std::move(extra)), reps);
  bool pass = true;
  for (const auto& r : reps) {
    pass = pass && r.within_bound();
    if (!g.out.empty())
      std::cout << (r.within_bound() ? "PASS " : "FAIL ") << r.identity << " residual " << fmt17(r.residual)
                << " bound " << fmt17(r.bound()) << '\n';
  }
  return pass ? ok : check_failed;
}

CoefficientTable load_or_build(const std::string& path, long max_n, const Globals& g) {
  if (!path.empty()) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot read coefficient file '" + path + "'");
    auto t = read_coefficients(f);
    if (t.max_n() < max_n)
      throw std::invalid_argument("coefficient file holds n <= " + std::to_string(t.max_n()) + ", need " +
                                  std::to_string(max_n));
    return t;
  }
  return build_coefficient_table(max_n, pick_tol(g, 1e-10), g.threads);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qmlab: the Minkowski question mark function, its measure and its identities"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand; inherited by subcommands
  Globals g;
  app.add_option("--out", g.out, "write the machine-readable table here (default: stdout)");
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", g.threads, "parallelism degree")->check(CLI::PositiveNumber);
  app.add_option("--precision-bits", g.precision_bits, "significand bits for K_{i tau}")->check(CLI::Range(53L, 100000L));
  app.add_option("--tol", g.tol, "tolerance override for the command's main quadrature");

  int code = ok;

  // qm eval|inverse|cf
  auto* qm = app.add_subcommand("qm", "?(x), its inverse, continued fractions");
  qm->require_subcommand(1);
  double qx = 0;
  auto* qm_eval = qm->add_subcommand("eval", "?(x)");
  qm_eval->add_option("x", qx)->required();
  qm_eval->callback([&] { std::cout << fmt17(question_mark(qx)) << '\n'; });
  auto* qm_inv = qm->add_subcommand("inverse", "?^{-1}(u)");
  qm_inv->add_option("u", qx)->required();
  qm_inv->callback([&] { std::cout << fmt17(box_inverse(qx)) << '\n'; });
  auto* qm_cf = qm->add_subcommand("cf", "continued fraction [0; a1, a2, ...]");
  qm_cf->add_option("x", qx)->required();
  qm_cf->callback([&] {
    const auto cf = cf_from_real(qx);
    std::cout << "[0;";
    for (std::size_t i = 0; i < cf.terms.size(); ++i) std::cout << (i ? "," : " ") << cf.terms[i];
    std::cout << "]" << (cf.truncated ? " (truncated)" : "") << '\n';
  });

  // coeffs
  long max_n = 4096;
  auto* coeffs = app.add_subcommand("coeffs", "Fourier-Stieltjes coefficients d_n, n = 0..max-n");
  coeffs->add_option("--max-n", max_n)->check(CLI::NonNegativeNumber);
  coeffs->callback([&] {
    const double tol = pick_tol(g, 1e-10);
    const auto t = build_coefficient_table(max_n, tol, g.threads);
    emit(g, header(g, "coeffs", {{"max_n", max_n}, {"tol", tol}}), coefficient_rows(t));
  });

  // transform
  std::string tstr = "0";
  auto* transform = app.add_subcommand("transform", "m(t) = int e^{xt} d?");
  transform->add_option("--t", tstr, "RE or RE,IM")->required();
  transform->callback([&] {
    const cplx t = parse_complex(tstr);
    const auto r = laplace_transform(t, pick_tol(g, 1e-13));
    emit(g, header(g, "transform"),
         {{{"re_t", t.real()}, {"im_t", t.imag()}, {"re_m", r.value.real()}, {"im_m", r.value.imag()},
           {"error_estimate", r.error_estimate}, {"nodes", r.nodes_used}}});
  });

  // verify ...
  auto* verify = app.add_subcommand("verify", "residual checks of the identities");
  verify->require_subcommand(1);
  double vs = two_pi, vX = 1e4, vx = 1.0 / 3, veta = 0.1, vC = 0;
  long vm = 1, vN = 4096;
  std::string vt = "5", coeff_file;

  auto* thm1 = verify->add_subcommand("thm1", "integral functional equation");
  thm1->add_option("--s", vs)->check(CLI::PositiveNumber);
  thm1->add_option("--X", vX)->check(CLI::Range(1.0, 1e6));
  thm1->callback([&] { code = emit_reports_and_judge(g, "verify thm1", {theorem1_residual(vs, vX)}); });

  auto* thm2 = verify->add_subcommand("thm2", "discrete functional equation");
  thm2->add_option("--m", vm)->check(CLI::PositiveNumber);
  thm2->add_option("--N", vN)->check(CLI::PositiveNumber);
  thm2->add_option("--coeffs", coeff_file, "coefficient table written by 'coeffs'");
  thm2->add_option("--lemma-C", vC, "tail-bound constant (default: empirical scan)");
  thm2->callback([&] {
    const auto t = load_or_build(coeff_file, std::max(vN, vm), g);
    double C = vC;
    if (!(C > 0)) {
      AcceptanceContext ctx(AcceptanceConfig{g.threads});
      C = ctx.lemma_constant();
    }
    const double tail_tol = g.tol > 0 ? g.tol : std::numeric_limits<double>::infinity();
    code = emit_reports_and_judge(g, "verify thm2", {theorem2_residual(vm, t, vN, C, tail_tol, g.threads)},
                                  {{"lemma_C", C}});
  });

  auto* fourier = verify->add_subcommand("fourier", "Fourier series of ?(x) - x");
  fourier->add_option("--x", vx)->check(CLI::Range(0.0, 1.0));
  fourier->add_option("--N", vN)->check(CLI::PositiveNumber);
  fourier->add_option("--coeffs", coeff_file, "coefficient table written by 'coeffs'");
  fourier->callback([&] {
    const auto t = load_or_build(coeff_file, vN, g);
    code = emit_reports_and_judge(g, "verify fourier", {fourier_series_residual(vx, t, vN)});
  });

  auto* sym = verify->add_subcommand("symmetry", "m(t) = e^t m(-t)");
  sym->add_option("--t", vt, "RE or RE,IM");
  sym->callback([&] {
    const auto r = symmetry_residual(parse_complex(vt));
    // the bound here is the stated 1e-10 e^{|t|}
    auto rr = r;
    rr.truncation.tail_bound = r.diagnostic("bound_1e-10_e^|t|");
    code = emit_reports_and_judge(g, "verify symmetry", {rr});
  });

  auto* bes = verify->add_subcommand("bessel", "regularized classical Bessel integral");
  bes->add_option("--x", vx)->check(CLI::PositiveNumber);
  bes->add_option("--s", vs)->check(CLI::NonNegativeNumber);
  bes->add_option("--eta", veta)->check(CLI::PositiveNumber);
  bes->callback([&] {
    auto r = bessel_identity_residual(vx, vs, veta);
    code = emit_reports_and_judge(g, "verify bessel", {r});
  });

  // lemma scan
  auto* lemma = app.add_subcommand("lemma", "oscillatory tail-integral bounds");
  lemma->require_subcommand(1);
  std::string a_grid = "0.25,0.5,1,2,5,10", b_grid, eps_grid;
  int per_octave = 8;
  auto* lscan = lemma->add_subcommand("scan", "empirical constants over (a, b) grids");
  lscan->add_option("--a-grid", a_grid, "comma list");
  lscan->add_option("--b-grid", b_grid, "comma list, |b| >= 2 pi (default: +-[2 pi, 1e5] log grid)");
  lscan->add_option("--eps-grid", eps_grid, "comma list (default: exact sup over eps)");
  lscan->add_option("--per-octave", per_octave, "density of the default b grid")->check(CLI::PositiveNumber);
  lscan->callback([&] {
    const auto as = parse_list(a_grid);
    const auto bs = b_grid.empty() ? detail::lemma_b_grid(per_octave) : parse_list(b_grid);
    const auto es = eps_grid.empty() ? std::vector<double>{} : parse_list(eps_grid);
    const unsigned th = g.threads;
    const auto rep = lemma_scan(as, bs, es, pick_tol(g, 1e-10), [th](std::size_t n, auto&& f) { parallel_for(n, th, f); });
    std::vector<ordered_json> rows;
    for (const auto& r : rep.rows) rows.push_back({{"a", r.a}, {"b", r.b}, {"eps", r.eps}, {"ratio", r.ratio}});
    std::ostringstream hs;
    hs << "C_pos " << fmt17(rep.empirical_C_pos) << " at (a,b,eps)=(" << rep.worst_pos.a << "," << rep.worst_pos.b
       << "," << rep.worst_pos.eps << "); C_neg " << fmt17(rep.empirical_C_neg) << " at (" << rep.worst_neg.a << ","
       << rep.worst_neg.b << "," << rep.worst_neg.eps << ")";
    emit(g,
         header(g, "lemma scan",
                {{"empirical_C_pos", rep.empirical_C_pos}, {"empirical_C_neg", rep.empirical_C_neg},
                 {"max_error_estimate", rep.max_error_estimate}}),
         rows, hs.str());
  });

  // oscillatory p
  auto* osc = app.add_subcommand("oscillatory", "P(a,b) = int_0^1 cos(a/x + b x) dx");
  osc->require_subcommand(1);
  double oa = 1, ob = 100;
  auto* op = osc->add_subcommand("p", "P(a,b) and, for b > a, its stationary-phase estimate");
  op->add_option("--a", oa)->check(CLI::NonNegativeNumber);
  op->add_option("--b", ob);
  op->callback([&] {
    const auto r = p_integral(oa, ob, pick_tol(g, 1e-10));
    ordered_json row = {{"a", oa},
                        {"b", ob},
                        {"value", r.value},
                        {"error_estimate", r.error_estimate},
                        {"method", to_string(r.method)},
                        {"stationary_point", r.stationary_point ? ordered_json(*r.stationary_point) : ordered_json()}};
    if (oa > 0 && ob > oa) row["stationary_phase"] = stationary_phase_estimate(oa, ob).value;
    emit(g, header(g, "oscillatory p"), {row});
  });

  // appendix scan
  auto* appx = app.add_subcommand("appendix", "decay of int_0^1 K_{i tau}(x) f(x) dx/x");
  appx->require_subcommand(1);
  std::string windows = "10,20", fname = "cutoff";
  int samples = 64, power = 2;
  auto* ascan = appx->add_subcommand("scan", "window maxima of e^{pi tau/2} tau^N |I(tau)|");
  ascan->add_option("--windows", windows, "window starts T (windows [T, 2T])");
  ascan->add_option("--samples", samples, "tau samples per window")->check(CLI::PositiveNumber);
  ascan->add_option("--function", fname, "cutoff or bump")->check(CLI::IsMember({"cutoff", "bump"}));
  ascan->add_option("--power", power, "cutoff exponent")->check(CLI::PositiveNumber);
  ascan->callback([&] {
    const auto f = fname == "bump" ? TestFunction::bump() : TestFunction::cutoff(power);
    const auto rep = decay_scan(f, parse_list(windows), samples, Precision(g.precision_bits), g.threads);
    std::vector<ordered_json> rows;
    for (std::size_t i = 0; i < rep.tau.size(); ++i)
      rows.push_back({{"tau", rep.tau[i]}, {"I", rep.values[i]}, {"error", rep.errors[i]},
                      {"I_asymptotic", rep.asymptotic[i]}});
    ordered_json w = ordered_json::array();
    std::ostringstream hs;
    for (std::size_t k = 0; k < rep.windows.size(); ++k) {
      const auto& x = rep.windows[k];
      w.push_back({{"T", x.T}, {"max_n32", x.max_n32}, {"max_n2", x.max_n2}});
      hs << "[" << x.T << "," << 2 * x.T << "] tau^1.5 max " << fmt17(x.max_n32) << ", tau^2 max "
         << fmt17(x.max_n2) << (k ? ", growth " + fmt17(rep.growth_n2[k - 1]) : "") << '\n';
    }
    emit(g, header(g, "appendix scan", {{"function", to_string(f.tag)}, {"samples", samples}, {"windows", w}}),
         rows, hs.str());
  });

  // suite
  std::string only;
  auto* suite = app.add_subcommand("suite", "run the acceptance criteria and print a pass/fail table");
  suite->add_option("--only", only, "comma list of criterion ids (default: all)");
  suite->callback([&] {
    AcceptanceConfig cfg;
    cfg.threads = g.threads;
    cfg.precision_bits = g.precision_bits;
    AcceptanceContext ctx(cfg);
    std::vector<int> ids;
    if (only.empty())
      for (int i = 1; i <= 14; ++i) ids.push_back(i);
    else
      for (double d : parse_list(only)) ids.push_back(static_cast<int>(d));
    std::vector<ordered_json> rows;
    bool all = true;
    for (int id : ids) {
      const auto r = run_criterion(id, ctx);
      all = all && r.pass;
      std::cout << format_line(r) << '\n' << std::flush;
      rows.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"summary", r.summary},
                      {"seconds", r.seconds}, {"detail", r.detail}});
    }
    if (!g.out.empty()) emit_table(g.out, parse_format(g.format), header(g, "suite", {{"config", cfg.to_json()}}), rows);
    code = all ? ok : check_failed;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? ok : usage;
  } catch (const BudgetError& e) {
    std::cerr << "budget: " << e.what() << " (best estimate " << fmt17(e.best_estimate.real()) << ", error "
              << fmt17(e.error_estimate) << ")\n";
    return budget;
  } catch (const PrecisionError& e) {
    std::cerr << "precision: " << e.what() << '\n';
    return budget;
  } catch (const QuadratureDisagreement& e) {
    std::cerr << "quadrature: " << e.what() << '\n';
    return budget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return usage;
  } catch (const std::domain_error& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return usage;
  } catch (const std::out_of_range& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return budget;
  }
  return code;
}
