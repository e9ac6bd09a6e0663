#ifndef HOLO_H
#define HOLO_H

/* C interface to the gate simulator. Every call returns a holo_status; on
 * failure the thread's last error message is available from holo_last_error()
 * and out-parameters are left untouched. Handles are opaque and must be
 * released with their matching *_free function (NULL is accepted). */

#include <stddef.h>
#include <stdint.h>

#if defined(HOLO_BUILDING_LIBRARY)
#define HOLO_API __attribute__((visibility("default")))
#else
#define HOLO_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum holo_status {
  HOLO_OK = 0,
  HOLO_ERR_INVALID = 1,  /* bad argument, config or range */
  HOLO_ERR_DOMAIN = 2,   /* well formed but undefined (ratio at theta = pi, ...) */
  HOLO_ERR_NUMERIC = 3,  /* invariant violated during computation */
  HOLO_ERR_IO = 4,
  HOLO_ERR_INTERNAL = 5
} holo_status;

typedef enum holo_gate_kind { HOLO_GATE_GEOMETRIC = 0, HOLO_GATE_DYNAMICAL = 1 } holo_gate_kind;
typedef enum holo_average_method { HOLO_AVG_QUADRATURE = 0, HOLO_AVG_MONTE_CARLO = 1 } holo_average_method;
typedef enum holo_format { HOLO_FORMAT_CSV = 0, HOLO_FORMAT_JSON = 1 } holo_format;
typedef enum holo_sweep_axis {
  HOLO_AXIS_THETA = 0,
  HOLO_AXIS_REL_OMEGA = 1,
  HOLO_AXIS_D_THETA = 2,
  HOLO_AXIS_D_PHI = 3
} holo_sweep_axis;
typedef enum holo_error_term {
  HOLO_TERM_GEOMETRIC_OMEGA = 0,
  HOLO_TERM_GEOMETRIC_THETA = 1,
  HOLO_TERM_GEOMETRIC_PHI = 2,
  HOLO_TERM_DYNAMICAL_OMEGA = 3,
  HOLO_TERM_DYNAMICAL_PHI = 4
} holo_error_term;
typedef enum holo_verdict { HOLO_CONSISTENT = 0, HOLO_DISCREPANT = 1 } holo_verdict;

typedef struct holo_complex {
  double re;
  double im;
} holo_complex;

typedef struct holo_error {
  double rel_omega; /* dOmega / Omega, |.| <= 1 */
  double d_theta;
  double d_phi;
} holo_error;

typedef struct holo_gate_params {
  holo_gate_kind kind;
  double theta;
  double phi;
  double omega; /* > 0 */
} holo_gate_params;

typedef struct holo_average_config {
  holo_average_method method;
  size_t nodes_alpha;
  size_t nodes_beta;
  size_t samples;
  uint64_t seed;
  unsigned threads; /* 0 = hardware concurrency; results do not depend on it */
} holo_average_config;

typedef struct holo_average_result {
  double mean;
  double std_error;
  double infidelity;
  double leakage;
} holo_average_result;

typedef struct holo_sweep_row {
  double axis;
  double exact_avg;
  double formula_avg;
  double leakage_avg;
  double mc_std_error;
} holo_sweep_row;

typedef struct holo_term_verdict {
  holo_error_term term;
  double theta;
  double closed_form_coefficient;
  double formula_quadrature;
  double exact_coefficient;
  double residual_slope; /* NaN when exact_match */
  double residual_r_squared;
  int exact_match;
  holo_verdict verdict;
  holo_verdict per_state_verdict;
} holo_term_verdict;

typedef struct holo_comparison_row {
  double theta;
  double geometric_formula;
  double dynamical_formula;
  double formula_ratio;
  double geometric_exact;
  double dynamical_exact;
  double exact_ratio;
  double duration_ratio;
} holo_comparison_row;

typedef struct holo_comparison_summary {
  double half_ratio_check;
  double hadamard_ratio;
  size_t rows;
} holo_comparison_summary;

typedef struct holo_sweep_plan holo_sweep_plan;
typedef struct holo_table holo_table;
typedef struct holo_adjudication holo_adjudication;
typedef struct holo_comparison holo_comparison;
typedef struct holo_text holo_text;

HOLO_API const char* holo_last_error(void);
HOLO_API const char* holo_version(void);
HOLO_API void holo_average_config_default(holo_average_config* cfg);

/* Row-major gate matrices. *dim receives 2 or 3; out must hold 9 entries.
 * which: 0 ideal, 1 exact, 2 closed form. */
HOLO_API holo_status holo_gate_matrix(const holo_gate_params* params, const holo_error* err,
                                      int which, holo_complex out[9], size_t* dim);

HOLO_API holo_status holo_state_fidelity(const holo_gate_params* params, const holo_error* err,
                                         double alpha, double beta, double* exact, double* order2,
                                         double* leakage);

HOLO_API holo_status holo_average_fidelity(const holo_gate_params* params, const holo_error* err,
                                           const holo_average_config* cfg, holo_average_result* out);

HOLO_API holo_status holo_closed_form_average_fidelity(const holo_gate_params* params,
                                                 const holo_error* err, double* out);

HOLO_API holo_status holo_sweep_plan_create(const holo_gate_params* params, const holo_error* err,
                                            holo_sweep_axis axis, const double* grid, size_t n,
                                            const holo_average_config* cfg, holo_sweep_plan** out);
HOLO_API holo_status holo_sweep_plan_from_json(const char* json, holo_sweep_plan** out);
HOLO_API void holo_sweep_plan_free(holo_sweep_plan* plan);

HOLO_API holo_status holo_sweep_run(const holo_sweep_plan* plan, unsigned threads, holo_table** out);
HOLO_API size_t holo_table_size(const holo_table* table);
HOLO_API holo_status holo_table_row(const holo_table* table, size_t i, holo_sweep_row* out);
HOLO_API holo_status holo_table_render(const holo_table* table, holo_format format, holo_text** out);
HOLO_API void holo_table_free(holo_table* table);

/* theta_grid may be NULL (n = 0) for the default grid. */
HOLO_API holo_status holo_adjudicate(const double* theta_grid, size_t n,
                                     const holo_average_config* cfg, holo_adjudication** out);
HOLO_API size_t holo_adjudication_size(const holo_adjudication* report);
HOLO_API holo_status holo_adjudication_entry(const holo_adjudication* report, size_t i,
                                             holo_term_verdict* out);
HOLO_API holo_status holo_adjudication_render(const holo_adjudication* report, holo_format format,
                                              holo_text** out);
HOLO_API void holo_adjudication_free(holo_adjudication* report);

HOLO_API holo_status holo_compare(const double* theta_grid, size_t n, const holo_error* err,
                                  const holo_average_config* cfg, holo_comparison** out);
HOLO_API holo_status holo_comparison_summary_get(const holo_comparison* report,
                                                 holo_comparison_summary* out);
HOLO_API holo_status holo_comparison_row_get(const holo_comparison* report, size_t i,
                                             holo_comparison_row* out);
HOLO_API holo_status holo_comparison_render(const holo_comparison* report, holo_format format,
                                            holo_text** out);
HOLO_API void holo_comparison_free(holo_comparison* report);

/* Rendering of single results, for the CLI. */
HOLO_API holo_status holo_render_gate(const holo_gate_params* params, const holo_error* err,
                                      holo_format format, holo_text** out);
HOLO_API holo_status holo_render_state_fidelity(const holo_gate_params* params,
                                                const holo_error* err, double alpha, double beta,
                                                holo_format format, holo_text** out);
HOLO_API holo_status holo_render_average(const holo_gate_params* params, const holo_error* err,
                                         const holo_average_config* cfg, holo_format format,
                                         holo_text** out);

HOLO_API const char* holo_text_data(const holo_text* text);
HOLO_API size_t holo_text_size(const holo_text* text);
HOLO_API void holo_text_free(holo_text* text);

#ifdef __cplusplus
}
#endif

#endif
