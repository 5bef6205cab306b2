#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "unmix/types.hpp"

namespace unmix {

struct McrConstraints {
  bool nonneg_C = true;
  bool nonneg_S = true;
  bool closure_C = false;
};

enum class McrInit { simplisma, provided, random };

struct McrConfig {
  int n_components = 1;
  McrConstraints constraints;
  int max_iterations = 500;
  double tol = 1e-8;           // relative lack-of-fit change
  McrInit init = McrInit::simplisma;
  Matrix s0;                   // initial spectra (rows), init == provided
  std::uint64_t seed = 0;      // init == random
  double simplisma_alpha = 0.05;
};

struct McrResult {
  Matrix C;                    // n_samples x k concentration profiles
  Matrix S;                    // k x n_wavelengths spectra (rows)
  std::vector<double> lof_trace;  // percent lack of fit per kept iteration
  bool converged = false;
  bool rank_collapse = false;
  int iterations = 0;
  std::string diagnostic;
};

// SIMPLISMA purest-variable initial spectra. Purity of column j is
// sigma_j / (mu_j + alpha) with alpha = alpha_fraction * max(mu); later picks
// are weighted by the determinant of the correlation-around-origin submatrix
// of the candidate plus the variables already chosen, which suppresses
// columns dependent on earlier picks. The selected pure-variable columns act
// as concentration profiles and the returned S0 (n x p rows) is their
// least-squares spectra arrangement pinv(C0) * A.
Matrix simplisma(const SpectraMatrix& a, int n, double alpha_fraction = 0.05);

// Applies the constraint set to a half-step result. nonneg clips negative
// entries to zero; closure then divides each row by its sum (rows-as-C only).
// Closure on an all-zero row is rejected.
Matrix apply_constraints(const Matrix& m, const McrConstraints& which,
                         bool rows_are_concentrations);

// 100 * ||A - C*S||_F / ||A||_F.
double lack_of_fit(const Matrix& a, const Matrix& c, const Matrix& s);

// Alternating least squares on A ~ C*S with pseudoinverse half-steps and
// constraint application after each one. Stops on relative lack-of-fit
// change below tol, on the iteration cap, or when an iteration would raise
// the lack of fit (the previous iterate is kept, so the reported trace is
// non-increasing). Component collapse is flagged and stops the run.
McrResult mcr_als(const SpectraMatrix& a, const McrConfig& config);

}  // namespace unmix
