#include "crext/crfields.hpp"

namespace crext {

std::vector<CRField> cr_basis(const QuadricModel& model) {
  if (model.n < 2) throw Error(Errc::hypothesis_fail, "cr_basis needs n >= 2");
  CPoly rho = model.rho_poly();
  std::vector<CPoly> d(model.n);
  for (int j = 0; j < model.n; ++j) d[j] = rho.wirtinger(j, true);
  std::vector<CRField> fields;
  for (int j = 0; j < model.n; ++j)
    for (int k = j + 1; k < model.n; ++k) fields.push_back({j, k, d[j], d[k]});
  return fields;
}

CrCheck is_cr(const CPoly& f, const QuadricModel& model, const Config& cfg) {
  CrCheck out{true, std::nullopt};
  double scale = std::max(f.max_abs_coeff(), 1.0);
  for (const auto& x : cr_basis(model)) {
    CPoly xf = x.apply(f);
    if (!xf.is_zero(cfg.coeff_tol * scale)) {
      out.is_cr = false;
      out.witness = xf;
      out.witness_j = x.j;
      out.witness_k = x.k;
      return out;
    }
  }
  return out;
}

}  // namespace crext
