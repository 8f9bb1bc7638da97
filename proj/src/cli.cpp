#include "scenred/cli.hpp"

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "scenred/exact.hpp"
#include "scenred/heuristics.hpp"
#include "scenred/io.hpp"
#include "scenred/limits.hpp"
#include "scenred/quantize.hpp"
#include "scenred/transport.hpp"

namespace scenred {
namespace {

// Options shared by every subcommand taking a metric.
struct MetricArgs {
  double l = 1.0;
  std::string norm = "2";
  Metric get() const { return Metric(l, parse_norm(norm)); }
};

void add_metric(CLI::App* cmd, MetricArgs& m) {
  cmd->add_option("--l", m.l, "Wasserstein order")->check(CLI::IsMember({1.0, 2.0}));
  cmd->add_option("--norm", m.norm, "ground norm")->check(CLI::IsMember({"1", "2", "inf"}));
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text(path, text);
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wasserstein scenario reduction"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "all subcommands");

  // distance
  std::string p_file, q_file, plan_file;
  MetricArgs dist_metric;
  auto* distance = app.add_subcommand("distance", "Wasserstein distance between two files");
  distance->add_option("--p", p_file, "first distribution")->required();
  distance->add_option("--q", q_file, "second distribution")->required();
  distance->add_option("--plan", plan_file, "write the optimal plan as CSV");
  add_metric(distance, dist_metric);

  // reduce
  std::string input, out_file, algo, strategy = "best";
  std::size_t m = 1;
  std::uint64_t seed = 0;
  double epsilon = 0.0, budget = 1e7;
  MetricArgs red_metric;
  auto* reduce = app.add_subcommand("reduce", "reduce a distribution to m atoms");
  reduce->add_option("--input", input)->required();
  reduce->add_option("--m", m)->required()->check(CLI::PositiveNumber);
  reduce->add_option("--algo", algo)
      ->required()
      ->check(CLI::IsMember({"dupacova", "kmeans", "local", "local-warm", "exact-discrete",
                             "exact-continuous"}));
  reduce->add_option("--seed", seed, "seed for randomized initialization");
  reduce->add_option("--epsilon", epsilon, "relative improvement threshold of local search")
      ->check(CLI::NonNegativeNumber);
  reduce->add_option("--strategy", strategy)->check(CLI::IsMember({"best", "first"}));
  reduce->add_option("--budget", budget, "enumeration budget of the exact solvers");
  reduce->add_option("--out", out_file, "result JSON (stdout if omitted)");
  add_metric(reduce, red_metric);

  // bounds
  std::size_t bn = 0, bm = 0;
  double bl = 2.0;
  auto* bounds = app.add_subcommand("bounds", "closed-form worst-case and ratio bounds");
  bounds->add_option("--n", bn)->required();
  bounds->add_option("--m", bm)->required();
  bounds->add_option("--l", bl)->required()->check(CLI::IsMember({1.0, 2.0}));

  // gen
  std::string family, gen_out;
  std::optional<std::size_t> gn, gm, gd, gz;
  std::optional<double> g_big_m;
  double geps = 1e-3;
  auto* gen = app.add_subcommand("gen", "generate a tight or adversarial instance");
  gen->add_option("--family", family)
      ->required()
      ->check(CLI::IsMember({"worst-case", "kappa2", "kappa1", "dupacova-adv", "kmeans-adv"}));
  gen->add_option("--n", gn);
  gen->add_option("--m", gm);
  gen->add_option("--d", gd);
  gen->add_option("--M", g_big_m, "separation of the far blocks");
  gen->add_option("--z", gz, "cluster size of the adversarial families");
  gen->add_option("--eps", geps, "cluster radius of the adversarial families");
  gen->add_option("--out", gen_out, "output file (stdout if omitted)");

  // export-milp
  std::string milp_in, milp_out, formulation;
  std::size_t milp_m = 1;
  MetricArgs milp_metric;
  auto* export_milp = app.add_subcommand("export-milp", "write the mixed-integer model");
  export_milp->add_option("--input", milp_in)->required();
  export_milp->add_option("--m", milp_m)->required()->check(CLI::PositiveNumber);
  export_milp->add_option("--formulation", formulation)
      ->required()
      ->check(CLI::IsMember({"discrete", "continuous"}));
  export_milp->add_option("--out", milp_out, "LP file (stdout if omitted)");
  add_metric(export_milp, milp_metric);

  // quantize
  std::string image_file, image_out, report_file, q_algo = "loc1", reference = "auto";
  std::size_t colors = 8, pre = 64;
  double q_budget = 1e7;
  auto* quantize = app.add_subcommand("quantize", "color quantization of a PPM image");
  quantize->add_option("--image", image_file)->required();
  quantize->add_option("--colors", colors)->required()->check(CLI::PositiveNumber);
  quantize->add_option("--algo", q_algo)->check(CLI::IsMember({"dpcv", "loc1", "loc2", "exact"}));
  quantize->add_option("--pre", pre, "colors kept by median cut")->check(CLI::PositiveNumber);
  quantize->add_option("--out", image_out, "remapped PPM");
  quantize->add_option("--report", report_file, "gap report JSON");
  quantize->add_option("--reference", reference)
      ->check(CLI::IsMember({"auto", "exact", "best_known"}));
  quantize->add_option("--budget", q_budget, "subset budget of the exact reference");

  // experiment normal
  std::size_t en = 100, trials = 100, restarts = 10;
  std::vector<std::size_t> e_m, e_d;
  double ec = 2.97;
  std::uint64_t e_seed = 0;
  std::string e_out;
  auto* experiment = app.add_subcommand("experiment", "numerical experiments");
  experiment->require_subcommand(1);
  auto* normal = experiment->add_subcommand("normal", "worst-case bound versus normal samples");
  normal->add_option("--n", en);
  normal->add_option("--m", e_m)->required()->delimiter(',');
  normal->add_option("--d", e_d)->required()->delimiter(',');
  normal->add_option("--c", ec);
  normal->add_option("--trials", trials);
  normal->add_option("--seed", e_seed);
  normal->add_option("--restarts", restarts, "k-means restarts per estimate");
  normal->add_option("--out", e_out, "CSV file (stdout if omitted)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "usage error: " << msg << '\n';
    return kExitUsage;
  }

  try {
    if (distance->parsed()) {
      const Distribution p = read_distribution(p_file);
      const Distribution q = read_distribution(q_file);
      const WassersteinResult w = wasserstein(p, q, dist_metric.get());
      out << format_number(w.value) << '\n';
      if (!plan_file.empty()) write_text(plan_file, plan_to_csv(w.plan));
    } else if (reduce->parsed()) {
      const Distribution p = read_distribution(input);
      const Metric metric = red_metric.get();
      ReductionResult r;
      if (algo == "dupacova") {
        r = dupacova_greedy(p, m, metric);
      } else if (algo == "kmeans") {
        r = k_means_generalized(p, m, metric, seed);
      } else if (algo == "local" || algo == "local-warm") {
        LocalSearchOptions lo;
        lo.epsilon = epsilon;
        lo.strategy = strategy == "first" ? SwapStrategy::FirstFit : SwapStrategy::BestFit;
        LocalSearchInit init;
        if (algo == "local-warm") init = dupacova_greedy(p, m, metric).selected;
        r = local_search(p, m, metric, init, lo);
      } else if (algo == "exact-discrete") {
        DiscreteExactOptions eo;
        eo.budget = budget;
        r = discrete_exact(p, m, metric, eo);
      } else {
        ContinuousExactOptions eo;
        eo.budget = budget;
        r = continuous_exact(p, m, metric, eo);
      }
      emit(out_file, result_to_json(r, {m, metric, seed, epsilon}), out);
      if (!out_file.empty()) out << format_number(r.value) << '\n';
    } else if (bounds->parsed()) {
      out << bounds_to_json(limit_bounds(bn, bm, bl));
    } else if (gen->parsed()) {
      auto need = [&](const auto& opt, const char* name) {
        if (!opt) throw CLI::RequiredError(std::string("--") + name);
        return *opt;
      };
      Distribution d;
      if (family == "worst-case") {
        const std::size_t n = need(gn, "n");
        d = gen_worst_case(n, gd.value_or(n));
      } else if (family == "kappa2") {
        d = gen_kappa_tight(2.0, need(gn, "n"), need(gm, "m"), gd, g_big_m);
      } else if (family == "kappa1") {
        d = gen_kappa_tight(1.0, need(gn, "n"), need(gm, "m"), gd, g_big_m);
      } else if (family == "dupacova-adv") {
        d = gen_adversarial(AdversarialFamily::Dupacova, need(gz, "z"), geps, gd.value_or(2));
      } else {
        d = gen_adversarial(AdversarialFamily::KMeans, need(gz, "z"), geps, gd.value_or(1));
      }
      if (gen_out.empty()) {
        out << distribution_to_json(d);
      } else {
        write_distribution(gen_out, d);
      }
    } else if (export_milp->parsed()) {
      const Distribution p = read_distribution(milp_in);
      const Metric metric = milp_metric.get();
      const MilpModel model = formulation == "discrete" ? milp_discrete(p, milp_m, metric)
                                                        : milp_continuous(p, milp_m, metric);
      emit(milp_out, to_lp_format(model), out);
    } else if (quantize->parsed()) {
      QuantizeOptions qo;
      qo.n_pre = pre;
      qo.exact_budget = q_budget;
      qo.reference = reference == "exact"        ? ReferenceMode::Exact
                     : reference == "best_known" ? ReferenceMode::BestKnown
                                                 : ReferenceMode::Auto;
      const QuantizeResult res =
          quantize_image(read_ppm(image_file), colors, parse_palette_algorithm(q_algo), qo);
      if (!image_out.empty()) write_ppm(image_out, res.remapped);
      emit(report_file, gap_report_to_json(res.report), out);
      if (res.report.m_clamped) {
        err << "warning: only " << res.report.m << " distinct colors after pre-reduction\n";
      }
    } else if (normal->parsed()) {
      NormalExperimentOptions no;
      no.restarts = restarts;
      const ExperimentTable t = normal_experiment(en, e_m, e_d, ec, trials, e_seed, no);
      emit(e_out, t.to_csv(), out);
      if (!e_out.empty()) {
        out << "n=" << t.n << " c=" << format_number(t.c) << " seed=" << t.seed
            << " restarts=" << t.restarts << " (C2 estimated by the best k-means restart)\n";
      }
    }
  } catch (const CLI::RequiredError& e) {
    err << "usage error: " << e.what() << " is required for this family\n";
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace scenred
