#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "toricsyz/cli.hpp"

using toricsyz::Command;
using toricsyz::JobConfig;

namespace {

// Accepts "3" or "1,2,-4".
std::vector<long> parse_list(const std::string& text) {
  std::vector<long> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(item, &used);
    } catch (const std::exception&) {
      throw CLI::ValidationError("bad integer list: " + text);
    }
    if (used != item.size()) throw CLI::ValidationError("bad integer list: " + text);
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Syzygies of toric varieties from lattice polytopes"};
  app.require_subcommand(1);
  JobConfig cfg;
  std::string format = "json", product, twist;
  std::optional<long> d;
  std::map<CLI::App*, Command> commands;

  auto add = [&](const char* name, const char* help, Command cmd, bool needs_polytope) {
    auto* sub = app.add_subcommand(name, help);
    commands[sub] = cmd;
    if (needs_polytope) sub->add_option("polytope", cfg.polytope_path, "polytope JSON file")->required();
    return sub;
  };
  auto window = [&](CLI::App* sub) {
    sub->add_option("--c", cfg.dilation, "work with L^c");
    sub->add_option("--max-slope", cfg.max_slope, "largest j - i in the window");
    sub->add_flag("--certify", cfg.certify, "compute every rank over Q");
    sub->add_option("--threads", cfg.threads, "worker threads");
    sub->add_option("--cache-dir", cfg.cache_dir, "cache directory (default $TORICSYZ_CACHE_DIR)");
  };

  auto* count = add("count", "lattice points of dP", Command::Count, true);
  count->add_option("--d", d, "dilation");
  count->add_flag("--points", cfg.list_points, "list the points");
  add("ehrhart", "Ehrhart polynomial", Command::Ehrhart, true);
  add("roots", "integer roots of the Ehrhart polynomial and r(P)", Command::Roots, true);
  add("normality", "normality check with witness", Command::Normality, true)
      ->add_option("--mmax", cfg.mmax, "largest m checked");
  auto* betti = add("betti", "graded Betti table of the section ring of L^c", Command::Betti, true);
  window(betti);
  betti->add_option("--max-i", cfg.max_i, "largest homological degree");
  betti->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  auto* np = add("np", "(N_p) verdicts for L^c", Command::Np, true);
  window(np);
  np->add_option("--pmax", cfg.pmax, "largest p");
  np->add_flag("--with-criteria", cfg.with_criteria, "upgrade verdicts covered by a criterion");

  for (auto [name, help, cmd] : {std::tuple{"cohomology", "cohomology of L^d or O(a_1,...,a_l)", Command::Cohomology},
                                 std::tuple{"regularity", "Castelnuovo-Mumford regularity check", Command::Regularity},
                                 std::tuple{"predict", "(N_p) prediction from regularity", Command::Predict}}) {
    auto* sub = app.add_subcommand(name, help);
    commands[sub] = cmd;
    sub->add_option("polytope", cfg.polytope_path, "polytope JSON file (omit with --product)");
    sub->add_option("--product", product, "factor dimensions n_1,...,n_l");
    sub->add_option("--twist", twist, "twist d or a_1,...,a_l (predict: first weight)");
    sub->add_option("--p", cfg.p, "syzygy level");
  }
  auto* criteria = app.add_subcommand("criteria", "(N_p) criteria for L^d or O(d_1,...,d_l)");
  commands[criteria] = Command::Criteria;
  criteria->add_option("polytope", cfg.polytope_path, "polytope JSON file (omit with --product)");
  criteria->add_option("--d", d, "power of L");
  criteria->add_option("--p", cfg.p, "syzygy level");
  criteria->add_option("--product", product, "factor dimensions n_1,...,n_l");
  criteria->add_option("--twist", twist, "degrees d_1,...,d_l");
  criteria->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

  auto* corpus = app.add_subcommand("corpus", "write a reproducible random polytope corpus");
  commands[corpus] = Command::Corpus;
  corpus->add_option("--seed", cfg.seed);
  corpus->add_option("--count", cfg.count);
  corpus->add_option("--dim", cfg.dim);
  corpus->add_option("--bound", cfg.coord_bound, "coordinates in [0, bound]");
  corpus->add_option("--out", cfg.out_dir, "output directory");

  auto* report = app.add_subcommand("report", "markdown table of the worked examples");
  commands[report] = Command::Report;
  report->add_option("--examples", cfg.examples)->required();
  report->add_option("--threads", cfg.threads, "worker threads");
  report->add_option("--cache-dir", cfg.cache_dir, "cache directory");

  try {
    app.parse(argc, argv);
    cfg.command = commands.at(app.get_subcommands().front());
    cfg.format = format == "text" ? toricsyz::OutputFormat::Text : toricsyz::OutputFormat::Json;
    if (d) cfg.d = *d;
    if (!product.empty())
      for (long n : parse_list(product)) {
        if (n < 0) throw CLI::ValidationError("factor dimensions must be nonnegative");
        cfg.product.push_back(static_cast<std::size_t>(n));
      }
    if (!twist.empty()) cfg.twist = parse_list(twist);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : toricsyz::kExitInput;
  }
  return toricsyz::run(cfg, std::cout, std::cerr);
}
