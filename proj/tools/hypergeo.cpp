#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hypergeo/cli.hpp"

namespace {

void add_param_flags(CLI::App* cmd, hypergeo::cli::CliRequest& req) {
  cmd->add_option("-p,--upper", req.upper, "upper parameters, e.g. 10/3,10/3");
  cmd->add_option("-q,--lower", req.lower, "lower parameters, e.g. 7/2");
  cmd->add_option("-d,--digits", req.digits, "decimal digits")->check(CLI::PositiveNumber);
  cmd->add_option("-n,--terms", req.terms, "truncation order");
  cmd->add_option("--format", req.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option("--leading-digits", req.leading_significant_digits,
                  "round leading coefficients to this many significant digits");
}

}  // namespace

int main(int argc, char** argv) {
  hypergeo::cli::CliRequest req;
  if (const char* env = std::getenv("HYPERGEO_DIGITS")) req.digits = std::atol(env);

  CLI::App app{"Arbitrary-precision evaluation of pFp-1(z) off the unit circle"};
  app.require_subcommand(1);

  auto* eval = app.add_subcommand("eval", "evaluate the function at z");
  add_param_flags(eval, req);
  eval->add_option("-z", req.z, "argument, e.g. 13+13i or 1/3-2/5i");
  eval->add_option("--method", req.method, "auto, taylor, binary_splitting, connection or euler_integral");
  eval->add_option("--expansion", req.expansion_file, "evaluate a dumped expansion (JSON or CSV)");

  auto* expand = app.add_subcommand("expand", "print the coefficients of the expansion at infinity");
  add_param_flags(expand, req);

  auto* bench = app.add_subcommand("bench", "rerun the example cases or emit a difference grid");
  add_param_flags(bench, req);
  std::vector<std::string> named;
  bench->add_option("case", named, "cases to run (example1, example2, example3)");
  bench->add_option("--cases", req.cases, "comma-separated cases");
  bench->add_flag("--grid", req.grid, "emit |r20 - r10| over a grid as x,y,diff");
  bench->add_option("--xrange,-x", req.xrange, "grid range for Re z, a:b");
  bench->add_option("--yrange,-y", req.yrange, "grid range for Im z, a:b");
  bench->add_option("--step", req.step, "grid step");

  auto* selftest = app.add_subcommand("selftest", "run the built-in consistency suites");
  selftest->add_option("-d,--digits", req.digits, "decimal digits")->check(CLI::PositiveNumber);
  selftest->add_flag("--inject-corruption", req.inject_corruption, "corrupt one coefficient (test hook)");

  // -xrange / -yrange are accepted as long options
  std::vector<std::string> args(argv + 1, argv + argc);
  for (auto& a : args)
    if (a == "-xrange" || a == "-yrange") a = "-" + a;
  std::reverse(args.begin(), args.end());

  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : hypergeo::cli::exit_parse;
  }
  req.subcommand = app.get_subcommands().front()->get_name();
  for (const auto& n : named) req.cases = req.cases && !req.cases->empty() ? *req.cases + "," + n : n;
  return hypergeo::cli::dispatch(req, std::cout, std::cerr);
}
