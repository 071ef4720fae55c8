#include <CLI11.hpp>

#include <iostream>

#include "hopfforge/cli.hpp"

namespace fs = std::filesystem;
using namespace hopfforge;

int main(int argc, char** argv) {
  CLI::App app{"Exact constructions and checks for Hopf algebras with a projection"};
  app.require_subcommand(1);

  std::string check_path;
  auto* check = app.add_subcommand("check", "verify the axioms of a structure file");
  check->add_option("file", check_path)->required();

  std::string base, g, chi, lambda = "0", stem = "O";
  std::optional<int> N;
  std::optional<std::string> ore_out;
  auto* ore = app.add_subcommand("ore", "build the Ore extension O(H, g, chi, lambda)");
  ore->add_option("--base", base, "Hopf algebra file")->required();
  ore->add_option("--g", g, "group-like: declared name, basis label or index")->required();
  ore->add_option("--chi", chi, "declared character name")->required();
  ore->add_option("--lambda", lambda, "scalar at the base file's conductor");
  ore->add_option("--N", N, "expected order of q");
  ore->add_option("--name", stem, "output stem");
  ore->add_option("--out", ore_out, "output directory (default: print the algebra)");

  std::string R_path, xi_path, bstem = "B";
  std::optional<std::string> bos_out;
  auto* bos = app.add_subcommand("bosonize", "form R #_xi H");
  bos->add_option("R", R_path)->required();
  bos->add_option("xi", xi_path)->required();
  bos->add_option("--name", bstem, "output stem");
  bos->add_option("--out", bos_out, "output directory (default: print the algebra)");

  std::string A_path, H_path, sigma_path, pi_path;
  auto* an = app.add_subcommand("analyze", "analyze a projection (A, H, sigma, pi)");
  an->add_option("--A", A_path)->required();
  an->add_option("--H", H_path)->required();
  an->add_option("--sigma", sigma_path)->required();
  an->add_option("--pi", pi_path)->required();

  std::string example;
  std::string ex_out = ".";
  auto* ex = app.add_subcommand("example", "write a catalog example and run its checks");
  ex->add_option("name", example)->required()->check(CLI::IsMember(cli::example_names()));
  ex->add_option("--out", ex_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (check->parsed()) return cli::finish([&] { return cli::Output{{}, cli::cmd_check(check_path)}; }, std::nullopt, std::cout, std::cerr);
  if (ore->parsed()) {
    fs::path dir = ore_out ? fs::path(*ore_out) : fs::current_path();
    auto out = ore_out ? std::optional<fs::path>(dir) : std::nullopt;
    return cli::finish([&] { return cli::cmd_ore(base, g, chi, lambda, N, stem, dir); }, out, std::cout, std::cerr, true);
  }
  if (bos->parsed()) {
    fs::path dir = bos_out ? fs::path(*bos_out) : fs::current_path();
    auto out = bos_out ? std::optional<fs::path>(dir) : std::nullopt;
    return cli::finish([&] { return cli::cmd_bosonize(R_path, xi_path, bstem, dir); }, out, std::cout, std::cerr, true);
  }
  if (an->parsed()) return cli::finish([&] { return cli::cmd_analyze(A_path, H_path, sigma_path, pi_path); }, std::nullopt, std::cout, std::cerr);
  return cli::finish([&] { return cli::cmd_example(example); }, fs::path(ex_out), std::cout, std::cerr);
}
