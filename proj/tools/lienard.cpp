// Command-line front end: bounds tables, abelian integrals, Melnikov profiles,
// the composition step and ODE cycle counts.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lienard/abelian.hpp"
#include "lienard/bounds.hpp"
#include "lienard/constructor.hpp"
#include "lienard/error.hpp"
#include "lienard/serialize.hpp"
#include "lienard/verifier.hpp"

using namespace lienard;

namespace {

Polynomial coefficients_flag(const std::string& text, const char* flag) {
  try {
    return parse_coefficients(text);
  } catch (const DomainError& e) {
    throw CLI::ValidationError(flag, e.what());
  }
}

const PeriodAnnulus& pick_annulus(const std::vector<PeriodAnnulus>& all, std::optional<int> id) {
  if (!id) return outer_annulus(all);
  if (*id < 0 || *id >= static_cast<int>(all.size()))
    throw DomainError("annulus " + std::to_string(*id) + " does not exist (" + std::to_string(all.size()) +
                      " annuli)");
  return all[static_cast<std::size_t>(*id)];
}

void print_number(double v) { std::printf("%.17g\n", v); }

void emit(const Json& j) { std::cout << dump(j) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lower bounds and numerical constructions for limit cycles of polynomial Lienard systems"};
  app.require_subcommand(1);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Closed-form lower bounds on H(n, m)");
  bounds->require_subcommand(1);
  int n_max = 0, m_max = 0, bn = 0, bm = 0;
  std::string table_format = "csv";
  auto* table = bounds->add_subcommand("table", "Best bound for every 1 <= n <= n-max, 1 <= m <= m-max");
  table->add_option("--n-max", n_max)->required()->check(CLI::Range(1, 4096));
  table->add_option("--m-max", m_max)->required()->check(CLI::Range(1, 4096));
  table->add_option("--format", table_format)->check(CLI::IsMember({"csv", "json"}));
  auto* best = bounds->add_subcommand("best", "Best bound for one (n, m)");
  best->add_option("--n", bn)->required()->check(CLI::PositiveNumber);
  best->add_option("--m", bm)->required()->check(CLI::PositiveNumber);

  // abelian
  auto* abelian = app.add_subcommand("abelian", "I_j(h) on a period annulus of g");
  std::string g_text;
  int j = 0;
  double h = 0.0, h_lo = 0.0, h_hi = 0.0;
  std::optional<int> annulus_id;
  abelian->add_option("--g", g_text, "coefficients c0,c1,... of g");
  abelian->add_option("--j", j)->check(CLI::NonNegativeNumber);
  abelian->set_help_flag("--help", "Print this help message and exit");
  abelian->add_option("--h", h);
  abelian->add_option("--annulus", annulus_id, "annulus id (default: outer)");
  auto* fit = abelian->add_subcommand("fit", "Fitted growth exponent of |I_j| on the outer annulus");
  fit->add_option("--g", g_text)->required();
  fit->add_option("--j", j)->required()->check(CLI::NonNegativeNumber);
  fit->add_option("--h-lo", h_lo)->required();
  fit->add_option("--h-hi", h_hi)->required();

  // melnikov
  auto* melnikov_cmd = app.add_subcommand("melnikov", "Melnikov function profiles");
  melnikov_cmd->require_subcommand(1);
  auto* prof_cmd = melnikov_cmd->add_subcommand("profile", "Sample M(h) and locate its sign changes");
  std::string system_path, prof_format = "json", out_prefix;
  int points = 64;
  prof_cmd->add_option("--system", system_path)->required();
  prof_cmd->add_option("--annulus", annulus_id, "annulus id (default: outer)");
  prof_cmd->add_option("--h-lo", h_lo)->required();
  prof_cmd->add_option("--h-hi", h_hi)->required();
  prof_cmd->add_option("--points", points)->check(CLI::Range(8, 1 << 20));
  prof_cmd->add_option("--format", prof_format)->check(CLI::IsMember({"json", "csv"}));
  prof_cmd->add_option("--out", out_prefix, "write PREFIX.csv and PREFIX.json instead of printing");

  // construct
  auto* construct = app.add_subcommand("construct", "Composition step and recursion plans");
  construct->require_subcommand(1);
  auto* step = construct->add_subcommand("step", "Double a realized seed and place the outer zeros");
  std::string seed_path, parity_text, x0_text = "auto";
  std::optional<double> lambda;
  double mu_ratio = 1e-2;
  step->add_option("--seed", seed_path)->required();
  step->add_option("--parity", parity_text)->required()->check(CLI::IsMember({"odd", "even"}));
  step->add_option("--x0", x0_text, "shift, or 'auto'")->check([](const std::string& s) -> std::string {
    if (s == "auto") return {};
    try {
      std::size_t used = 0;
      (void)std::stod(s, &used);
      return used == s.size() ? std::string{} : "expected a number or 'auto'";
    } catch (const std::exception&) {
      return "expected a number or 'auto'";
    }
  });
  step->add_option("--lambda", lambda)->check(CLI::PositiveNumber);
  step->add_option("--mu-ratio", mu_ratio)->check(CLI::PositiveNumber);
  auto* plan = construct->add_subcommand("plan", "Certificates reachable from a seed triple");
  std::int64_t n0 = 0, m0 = 0, k0 = 0;
  int depth = 1;
  plan->add_option("--n0", n0)->required()->check(CLI::PositiveNumber);
  plan->add_option("--m0", m0)->required()->check(CLI::PositiveNumber);
  plan->add_option("--k0", k0)->required()->check(CLI::NonNegativeNumber);
  plan->add_option("--depth", depth)->required()->check(CLI::Range(1, 30));

  // verify
  auto* verify = app.add_subcommand("verify", "Direct ODE verification");
  verify->require_subcommand(1);
  auto* cycles = verify->add_subcommand("cycles", "Count sign changes of the return-map displacement");
  double epsilon = 0.0, a_lo = 0.0, a_hi = 0.0;
  int grid = 32;
  bool stabilize = false;
  cycles->add_option("--system", system_path)->required();
  cycles->add_option("--epsilon", epsilon)->required()->check(CLI::NonNegativeNumber);
  cycles->add_option("--a-lo", a_lo)->required();
  cycles->add_option("--a-hi", a_hi)->required();
  cycles->add_option("--grid", grid)->check(CLI::Range(2, 1 << 16));
  cycles->add_flag("--stabilize", stabilize, "halve epsilon until three counts agree");

  Polynomial g_poly;
  try {
    app.parse(argc, argv);
    if (*abelian && !*fit && (abelian->count("--g") == 0 || abelian->count("--h") == 0))
      throw CLI::RequiredError("abelian needs --g and --h");
    if (*abelian) g_poly = coefficients_flag(g_text, "--g");
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*table) {
      const auto rows = bounds_table(n_max, m_max);
      if (table_format == "csv") {
        std::cout << bounds_csv(rows);
      } else {
        Json out = Json::array();
        for (const auto& r : rows) out.push_back(to_json(r));
        emit(out);
      }
    } else if (*best) {
      emit(to_json(best_bound(bn, bm)));
    } else if (*fit) {
      const Potential P = potential_of(g_poly);
      const auto P_annuli = annuli(P);
      print_number(fit_growth_exponent(P, outer_annulus(P_annuli), j, h_lo, h_hi));
    } else if (*abelian) {
      const Potential P = potential_of(g_poly);
      print_number(abelian_integral(P, pick_annulus(annuli(P), annulus_id), j, h));
    } else if (*prof_cmd) {
      const ConstructedSystem sys = load_system(system_path);
      const Potential P = potential_of(sys.g);
      const auto prof = profile(sys.F, P, pick_annulus(annuli(P), annulus_id), h_lo, h_hi, points);
      if (!out_prefix.empty()) {
        write_text(out_prefix + ".csv", profile_csv(prof));
        write_text(out_prefix + ".json", dump(to_json(prof)) + "\n");
      } else if (prof_format == "csv") {
        std::cout << profile_csv(prof);
      } else {
        emit(to_json(prof));
      }
    } else if (*step) {
      ConstructedSystem seed = load_system(seed_path);
      if (!seed.certificate.windows.empty()) realize(seed);
      ComposeOptions options;
      options.lambda = lambda;
      options.mu_ratio = mu_ratio;
      if (x0_text != "auto") options.x0 = std::stod(x0_text);
      emit(to_json(compose_step(seed, parse_parity(parity_text), options)));
    } else if (*plan) {
      if (depth > 20) throw DomainError("plan: refusing to list 2^" + std::to_string(depth) + " leaves");
      const RecursionPlan rp = plan_recursion({n0, m0, k0}, depth);
      Json leaves = Json::array();
      for (const auto& t : rp.level(depth)) leaves.push_back(to_json(t));
      emit(Json{{"seed", to_json(rp.seed())}, {"depth", depth}, {"leaves", leaves}});
    } else if (*cycles) {
      const ConstructedSystem sys = load_system(system_path);
      if (stabilize) {
        if (!(epsilon > 0.0)) throw DomainError("--stabilize needs a positive --epsilon");
        const StableCount st = shrink_until_stable(sys, a_lo, a_hi, epsilon, grid);
        Json out = to_json(count_limit_cycles(sys, a_lo, a_hi, st.epsilon, grid));
        out["history"] = to_json(st)["history"];
        emit(out);
      } else {
        emit(to_json(count_limit_cycles(sys, a_lo, a_hi, epsilon, grid)));
      }
    }
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
