/* SPDX-License-Identifier: Apache-2.0 */
/*
 * C interface to the freeconv library: exact classical and free additive
 * convolution of finitely supported measures, and the comparison measure
 * whose moments encode the gap between the two convolutions.
 *
 * Conventions:
 *   - Measures are handled through the opaque fc_measure type; owners must
 *     release handles with fc_measure_free.
 *   - Every function that can fail returns an fc_status; on failure a
 *     human-readable message is available from fc_last_error() on the same
 *     thread until the next API call.
 *   - Functions returning text allocate with malloc and hand ownership to
 *     the caller; release with fc_string_free.
 *   - Exact rational scalars cross this interface as decimal strings,
 *     either "p" or "p/q".
 */
#ifndef FREECONV_FREECONV_H
#define FREECONV_FREECONV_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fc_status {
  FC_OK = 0,
  FC_ERR_INPUT = 1,   /* malformed or invalid input (parse errors included) */
  FC_ERR_NUMERIC = 2, /* a numerical routine failed to converge to tolerance */
  FC_ERR_INTERNAL = 3 /* unexpected internal failure */
} fc_status;

typedef struct fc_measure fc_measure;

/* Library version as "major.minor.patch". Static storage; do not free. */
const char* fc_version(void);

/* Message for the most recent failure on this thread. Static storage. */
const char* fc_last_error(void);

/* Releases a string returned by this API. NULL is ignored. */
void fc_string_free(char* s);

/* --- measure construction and inspection -------------------------------- */

/* Parses {"atoms":[{"x":"-1","p":"1/2"}, ...]}; weights must be positive
 * and sum to exactly 1. */
fc_status fc_measure_parse_json(const char* json_text, fc_measure** out);

/* Builds a measure from parallel arrays of rational strings. Duplicate
 * locations are merged and the weights are normalized to total mass 1. */
fc_status fc_measure_create(const char* const* xs, const char* const* ps, size_t n,
                            fc_measure** out);

void fc_measure_free(fc_measure* m);

/* Serializes back to the canonical JSON object form. */
fc_status fc_measure_to_json(const fc_measure* m, char** out);

/* One-line form "x1:p1 x2:p2 ..." with atoms in increasing location. */
fc_status fc_measure_atoms_text(const fc_measure* m, char** out);

/* Space-separated raw moments "m_1 ... m_order" as rational strings. */
fc_status fc_measure_moments(const fc_measure* m, long order, char** out);

/* Space-separated free cumulants "k_1 ... k_order". */
fc_status fc_measure_cumulants(const fc_measure* m, long order, char** out);

/* --- convolutions -------------------------------------------------------- */

/* Law of X + Y for independent X ~ mu, Y ~ nu (exact atomic measure). */
fc_status fc_classical_convolve(const fc_measure* mu, const fc_measure* nu, fc_measure** out);

/* Raw moments "m_1 ... m_order" of the free additive convolution, via
 * cumulant additivity. */
fc_status fc_free_convolve_moments(const fc_measure* mu, const fc_measure* nu, long order,
                                   char** out);

/* --- convolution comparison measure -------------------------------------- */

/* Single mixed moment of the comparison measure as a rational string. */
fc_status fc_ccm_moment(const fc_measure* mu, const fc_measure* nu, long nmu, long nnu,
                        char** out);

/* All mixed moments with nmu + nnu <= order, as the JSON object
 * {"order":N,"entries":[{"nmu":i,"nnu":j,"value":"p/q"}, ...]}. */
fc_status fc_ccm_moments_json(const fc_measure* mu, const fc_measure* nu, long order, char** out);

/* Density of the comparison measure sampled on an na x nb cell-center grid
 * over the product of the support hulls, as CSV "t_mu,t_nu,w" with the
 * second coordinate varying fastest. threads <= 0 selects single-threaded
 * evaluation. */
fc_status fc_ccm_grid_csv(const fc_measure* mu, const fc_measure* nu, int na, int nb, double tol,
                          int threads, char** out);

/* Pointwise density of the comparison measure at (s, t). */
fc_status fc_w_density(const fc_measure* mu, const fc_measure* nu, double s, double t, double tol,
                       double* out);

/* --- spectral density of the embedded pair ------------------------------- */

/* Defect density of the measure embedding sampled on an na x nb grid over
 * hull(mu) x [0, 1], as CSV "a,b,omega" with b varying fastest. */
fc_status fc_omega_grid_csv(const fc_measure* mu, int na, int nb, char** out);

/* Pointwise defect density at (a, b) for the embedding of mu. */
fc_status fc_omega_density(const fc_measure* mu, double a, double b, double* out);

/* --- self verification ---------------------------------------------------- */

/* Runs a named cross-check suite ("identities", "spectral", "ccm" or
 * "all"); the [PASS]/[FAIL] report is returned through *report and the
 * number of failed checks through *failures. Returns FC_OK whenever the
 * suite ran to completion, regardless of the tally. */
fc_status fc_verify(const char* suite, uint64_t seed, char** report, int* failures);

#ifdef __cplusplus
}
#endif

#endif /* FREECONV_FREECONV_H */
