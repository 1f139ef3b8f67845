#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "qmp/errors.hpp"

using namespace qmp::cli;

int main(int argc, char** argv) {
  CLI::App app{"q-deformed Marchenko-Pastur law: moments, densities, zeros and checks"};
  app.require_subcommand(1);

  std::string format = "csv";
  std::string output;
  const std::map<std::string, Format> formats{{"csv", Format::Csv}, {"json", Format::Json}};
  auto add_io = [&](CLI::App* sub) {
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", output, "write to this file instead of stdout");
  };

  MomentsArgs ma;
  auto* moments = app.add_subcommand("moments", "exact spectral moments against the large-N expansion");
  moments->add_option("--N", ma.N, "matrix size");
  moments->add_option("--p-max", ma.p_max, "largest moment order");
  moments->add_option("--lambda", ma.lambda, "lambda = -N log q; 0 gives the classical ensemble");
  moments->add_option("--c", ma.c, "alpha = cN + d");
  moments->add_option("--d", ma.d, "alpha = cN + d");
  add_io(moments);

  DensityArgs da;
  auto* dens = app.add_subcommand("density", "limiting density on a uniform grid");
  dens->add_option("--lambda", da.lambda);
  dens->add_option("--c", da.c);
  dens->add_option("--grid", da.grid, "number of cell midpoints");
  add_io(dens);

  ZerosArgs za;
  auto* zer = app.add_subcommand("zeros", "zeros of the normalized little q-Laguerre polynomial");
  zer->add_option("--n", za.n, "degree (default N)");
  zer->add_option("--N", za.N);
  zer->add_option("--lambda", za.lambda);
  zer->add_option("--c", za.c);
  zer->add_option("--d", za.d);
  zer->add_option("--bins", za.bins, "histogram bins on [0,1]; 0 lists the zeros");
  add_io(zer);

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "combinatorial oracle checks");
  ver->add_option("--max-p", va.max_p);
  ver->add_option("--max-j", va.max_j);
  ver->add_option("--max-alpha", va.max_alpha);
  ver->add_flag("--inject-fault", va.inject_fault)->group("");
  add_io(ver);

  EquilibriumArgs ea;
  auto* eq = app.add_subcommand("equilibrium", "Euler-Lagrange checks for the limiting law");
  eq->add_option("--lambda", ea.lambda);
  eq->add_option("--c", ea.c);
  add_io(eq);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CommandResult res;
  try {
    if (*moments) res = cmd_moments(ma);
    else if (*dens) res = cmd_density(da);
    else if (*zer) res = cmd_zeros(za);
    else if (*ver) res = cmd_verify(va);
    else res = cmd_equilibrium(ea);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const qmp::Error& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  }

  std::ostringstream buf;
  write_table(buf, res.table, formats.at(format));
  if (output.empty()) {
    std::cout << buf.str();
  } else {
    std::ofstream f(output, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot open " << output << "\n";
      return 2;
    }
    f << buf.str();
  }
  return res.status;
}
