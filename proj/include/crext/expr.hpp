#ifndef CREXT_EXPR_HPP
#define CREXT_EXPR_HPP

#include <memory>

#include <nlohmann/json_fwd.hpp>

#include "crext/common.hpp"

#include <Eigen/Dense>

namespace crext {

// Safe expression tree over (Re z_j, Im z_j, s) with complex constants,
// arithmetic, exp, and the smooth half-cutoff cut_exp(t) = [t>0] e^{-1/t}.
// Division by a near-zero denominator raises DATA_DOMAIN instead of
// returning garbage.
class Expr {
 public:
  enum class Op { constant, var_x, var_y, var_s, add, sub, mul, div, neg, exp_op, cut_exp };

  static Expr constant(cplx c);
  static Expr x(int j);
  static Expr y(int j);
  static Expr s();
  static Expr unary(Op op, Expr a);
  static Expr binary(Op op, Expr a, Expr b);

  cplx eval(const Eigen::VectorXcd& z, double s_value) const;

  static Expr from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
};

}  // namespace crext

#endif
