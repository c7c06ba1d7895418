#include "sojourn/sojourn.h"

#include <memory>
#include <string>

#include "sojourn/chaos.hpp"
#include "sojourn/errors.hpp"
#include "sojourn/experiments.hpp"

namespace {

thread_local std::string g_last_error;

int code_for(const sojourn::Error& e) {
  switch (e.kind()) {
    case sojourn::ErrorKind::Config:
      return SJ_ERR_CONFIG;
    case sojourn::ErrorKind::InvalidSpace:
    case sojourn::ErrorKind::DegreeNotInLambda:
    case sojourn::ErrorKind::UnsupportedFamily:
    case sojourn::ErrorKind::Domain:
      return SJ_ERR_DOMAIN;
    case sojourn::ErrorKind::Regime:
      return SJ_ERR_REGIME;
    case sojourn::ErrorKind::Factorization:
    case sojourn::ErrorKind::Convergence:
      return SJ_ERR_NUMERIC;
    case sojourn::ErrorKind::Io:
      return SJ_ERR_IO;
  }
  return SJ_ERR_UNKNOWN;
}

template <typename F>
int guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return SJ_OK;
  } catch (const sojourn::Error& e) {
    g_last_error = e.what();
    return code_for(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SJ_ERR_UNKNOWN;
  }
}

}  // namespace

struct sj_experiment {
  sojourn::ExperimentConfig config;
  std::unique_ptr<sojourn::Experiment> exp;
  std::string json_cache;
};

extern "C" {

const char* sj_last_error(void) { return g_last_error.c_str(); }

sj_experiment* sj_experiment_load(const char* config_path) {
  if (!config_path) {
    g_last_error = "config path is null";
    return nullptr;
  }
  auto handle = std::make_unique<sj_experiment>();
  const int rc = guarded([&] {
    handle->config = sojourn::load_config(config_path);
    handle->exp = std::make_unique<sojourn::Experiment>(handle->config);
  });
  if (rc != SJ_OK) return nullptr;
  return handle.release();
}

int sj_experiment_set_seed(sj_experiment* exp, uint64_t seed) {
  if (!exp) {
    g_last_error = "null experiment handle";
    return SJ_ERR_DOMAIN;
  }
  return guarded([&] {
    exp->config.master_seed = seed;
    exp->exp = std::make_unique<sojourn::Experiment>(exp->config);
  });
}

const char* sj_experiment_study(const sj_experiment* exp) {
  if (!exp) return "";
  static thread_local std::string name;
  name = sojourn::study_name(exp->config.study);
  return name.c_str();
}

int sj_experiment_run(sj_experiment* exp, int workers, int plots) {
  if (!exp) {
    g_last_error = "null experiment handle";
    return SJ_ERR_DOMAIN;
  }
  return guarded([&] { exp->exp->run(workers, plots != 0); });
}

int sj_experiment_predict(sj_experiment* exp) {
  if (!exp) {
    g_last_error = "null experiment handle";
    return SJ_ERR_DOMAIN;
  }
  return guarded([&] { exp->exp->predict(); });
}

int sj_experiment_write(sj_experiment* exp, const char* dir) {
  if (!exp) {
    g_last_error = "null experiment handle";
    return SJ_ERR_DOMAIN;
  }
  return guarded([&] { exp->exp->write_outputs(dir ? dir : ""); });
}

const char* sj_experiment_result_json(sj_experiment* exp) {
  if (!exp) return "";
  exp->json_cache = exp->exp->result().dump(2);
  return exp->json_cache.c_str();
}

int sj_experiment_gates_passed(const sj_experiment* exp) {
  if (!exp) return 0;
  return exp->exp->gates_passed() ? 1 : 0;
}

void sj_experiment_free(sj_experiment* exp) { delete exp; }

int sj_chi2_tail(int k, double u, double* out) {
  if (!out) {
    g_last_error = "null output pointer";
    return SJ_ERR_DOMAIN;
  }
  return guarded([&] { *out = sojourn::chi2_tail(k, u); });
}

int sj_noncentral_chi2_tail(int k, double lambda_sq, double u, double* out) {
  if (!out) {
    g_last_error = "null output pointer";
    return SJ_ERR_DOMAIN;
  }
  return guarded([&] { *out = sojourn::noncentral_chi2_tail(k, lambda_sq, u); });
}

int sj_alpha_coefficient(int k, const int* multi_index, double u, double* out) {
  if (!out || !multi_index) {
    g_last_error = "null pointer argument";
    return SJ_ERR_DOMAIN;
  }
  return guarded([&] {
    std::vector<int> idx(multi_index, multi_index + k);
    *out = sojourn::alpha_closed(k, idx, u);
  });
}

}  // extern "C"
