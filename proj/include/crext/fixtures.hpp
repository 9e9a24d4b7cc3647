#ifndef CREXT_FIXTURES_HPP
#define CREXT_FIXTURES_HPP

#include "crext/extend.hpp"

namespace crext {

struct FixtureOutcome {
  bool passed = false;
  std::string details;
};

// A bundled example model with its designated check (verdict, topology,
// divergence, or locus).
struct Fixture {
  std::string id;
  std::string title;
  std::function<FixtureOutcome(const Config&)> run;
  std::optional<QuadricModel> model;  // absent for the numeric-only example
};

const std::vector<Fixture>& bundled_fixtures();

// Bundled models, also used by the acceptance suite.
QuadricModel model_parabolic_n2();   // s = |z1|^2 + |z2|^2 + Re(z1^2) + Re(z2^2)
QuadricModel model_hyperbolic_11();  // s = |z1|^2 - |z2|^2
QuadricModel model_sig_21();         // s = |z1|^2 + |z2|^2 - |z3|^2
QuadricModel model_degenerate_cube();  // s = (|z1|^2 - |z2|^2)^3
QuadricModel model_bishop_n1(double lambda);  // s = |z|^2 + lambda (z^2 + zbar^2)
QuadricModel model_split_boundary(double lambda);  // s = |z1|^2 - |z2|^2 + lambda (z1^2+zbar1^2)

// Data of the bundled counterexamples.
BoundaryData data_hyperbolic_11();   // e^{-1/s^2}/z1 (s>0), 0 (s=0), e^{-1/s^2}/z2 (s<0)
BoundaryData data_sig_21();          // 0 (s>=0), e^{-1/s^2}/z3 (s<0)
BoundaryData data_quadrant_bump(double amplitude);  // n=1, zero on the first quadrant
BoundaryData data_sheet_indicator();  // 0 on the x1>0 sheet, 1 on the x1<0 sheet

// The oscillating numeric model rho = sin(1/||z||^2) e^{-1/||z||^2} (n = 1).
double oscillating_model_rho(const Eigen::VectorXcd& z);

}  // namespace crext

#endif
