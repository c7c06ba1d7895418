#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sojourn/sojourn.h"

namespace {

struct Options {
  std::string config;
  bool plots = false;
  int workers = 0;
  std::uint64_t seed = 0;
  bool has_seed = false;
};

int fail(const char* what) {
  std::fprintf(stderr, "error: %s: %s\n", what, sj_last_error());
  return 2;
}

void print_gates(const std::string& result_json) {
  const auto j = nlohmann::json::parse(result_json);
  if (!j.contains("gates")) return;
  for (const auto& g : j["gates"]) {
    std::printf("gate %-40s %s\n", g.value("name", "?").c_str(),
                g.value("passed", false) ? "pass" : "FAIL");
  }
}

int run_common(const Options& opt, bool audit_only, bool predict_only) {
  sj_experiment* exp = sj_experiment_load(opt.config.c_str());
  if (!exp) return fail("load");
  if (opt.has_seed && sj_experiment_set_seed(exp, opt.seed) != SJ_OK) {
    sj_experiment_free(exp);
    return fail("seed");
  }
  const std::string study = sj_experiment_study(exp);
  if (audit_only && study != "coefficient_audit" && study != "asymptote_audit") {
    std::fprintf(stderr,
                 "error: 'audit' expects an audit study, config has '%s'\n",
                 study.c_str());
    sj_experiment_free(exp);
    return 2;
  }
  int rc;
  if (predict_only) {
    rc = sj_experiment_predict(exp);
  } else {
    rc = sj_experiment_run(exp, opt.workers, opt.plots ? 1 : 0);
  }
  if (rc != SJ_OK) {
    sj_experiment_free(exp);
    return fail(predict_only ? "predict" : "run");
  }
  if (sj_experiment_write(exp, nullptr) != SJ_OK) {
    sj_experiment_free(exp);
    return fail("write");
  }
  const std::string result = sj_experiment_result_json(exp);
  if (predict_only) {
    std::printf("%s\n", result.c_str());
    sj_experiment_free(exp);
    return 0;
  }
  print_gates(result);
  const bool passed = sj_experiment_gates_passed(exp) != 0;
  std::printf("study %s: %s\n", study.c_str(), passed ? "all gates passed" : "gate failures");
  sj_experiment_free(exp);
  return passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo studies of sojourn functionals of chi-square "
               "random fields"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool with_run_flags) {
    sub->add_option("--config", opt.config, "path to the JSON config")
        ->required();
    if (with_run_flags) {
      sub->add_flag("--plots", opt.plots, "also write SVG plots");
      sub->add_option("--workers", opt.workers,
                      "worker threads (default: hardware)");
      sub->add_option("--seed", opt.seed, "override the config master seed")
          ->each([&](const std::string&) { opt.has_seed = true; });
    }
  };

  CLI::App* run = app.add_subcommand("run", "run the configured study");
  add_common(run, true);
  CLI::App* audit = app.add_subcommand("audit", "run an audit study");
  add_common(audit, true);
  CLI::App* predict =
      app.add_subcommand("predict", "print theoretical predictions only");
  add_common(predict, false);

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return run_common(opt, false, false);
  if (audit->parsed()) return run_common(opt, true, false);
  return run_common(opt, false, true);
}
