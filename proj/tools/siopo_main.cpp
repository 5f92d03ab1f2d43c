// Command-line front end.  Talks to the shared library strictly through the
// public C interface.
#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "siopo/siopo.h"

namespace {

int exit_code_for(siopo_status status) {
  switch (status) {
    case SIOPO_OK:
      return 0;
    case SIOPO_ERR_NUMERIC:
      return 2;
    case SIOPO_ERR_REPRODUCTION:
      return 3;
    default:
      return 1;
  }
}

void print_error(siopo_status status) {
  std::fprintf(stderr, "error code=%d message=\"%s\"\n",
               static_cast<int>(status), siopo_last_error());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"siopo: multimode OPO design and squeezing simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool seed_given = false;
  int truncation = -1;
  bool quiet = false;

  app.add_option("--config", config_path, "experiment description file")
      ->required();
  app.add_option("--out", out_dir, "output directory (default: out)");
  app.add_option("--seed", seed, "override the homodyne RNG seed")
      ->each([&](const std::string&) { seed_given = true; });
  app.add_option("--truncation", truncation,
                 "override the HG truncation order");
  app.add_flag("--quiet", quiet, "suppress the summary on stdout");

  const char* names[] = {"design", "spectrum", "modes", "homodyne",
                         "reproduce-paper"};
  const char* briefs[] = {
      "cavity geometry, degeneracy scan and resonance offsets",
      "squeezed eigenmode gains and quadrature noise spectra",
      "transverse profiles of the squeezed eigenmodes",
      "Monte Carlo homodyne trace with a swept local oscillator",
      "run the quantitative reference-reproduction report"};
  for (int i = 0; i < 5; ++i) app.add_subcommand(names[i], briefs[i]);

  CLI11_PARSE(app, argc, argv);
  const std::string subcommand = app.get_subcommands().front()->get_name();

  siopo_config* cfg = nullptr;
  siopo_status st = siopo_config_load(config_path.c_str(), &cfg);
  if (st != SIOPO_OK) {
    print_error(st);
    return exit_code_for(st);
  }
  if (seed_given) siopo_config_set_seed(cfg, seed);
  if (truncation >= 0) {
    st = siopo_config_set_truncation(cfg, truncation);
    if (st != SIOPO_OK) {
      print_error(st);
      siopo_config_free(cfg);
      return exit_code_for(st);
    }
  }

  if (!quiet) {
    char* warnings = nullptr;
    if (siopo_config_warnings(cfg, &warnings) == SIOPO_OK && warnings) {
      if (warnings[0] != '\0')
        std::fprintf(stderr, "warning: %s", warnings);
      siopo_string_free(warnings);
    }
  }

  char* summary = nullptr;
  st = siopo_run(cfg, subcommand.c_str(), out_dir.c_str(), &summary);
  if (summary) {
    if (!quiet) std::fputs(summary, stdout);
    siopo_string_free(summary);
  }
  siopo_config_free(cfg);

  if (st != SIOPO_OK) {
    print_error(st);
    return exit_code_for(st);
  }
  return 0;
}
