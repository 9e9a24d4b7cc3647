#include "crext/expr.hpp"

#include <nlohmann/json.hpp>

namespace crext {

struct Expr::Node {
  Op op;
  cplx value;  // constant
  int index = 0;
  std::shared_ptr<const Node> a, b;
};

Expr Expr::constant(cplx c) {
  Expr e;
  auto n = std::make_shared<Node>();
  n->op = Op::constant;
  n->value = c;
  e.root_ = n;
  return e;
}

Expr Expr::x(int j) {
  Expr e;
  auto n = std::make_shared<Node>();
  n->op = Op::var_x;
  n->index = j;
  e.root_ = n;
  return e;
}

Expr Expr::y(int j) {
  Expr e;
  auto n = std::make_shared<Node>();
  n->op = Op::var_y;
  n->index = j;
  e.root_ = n;
  return e;
}

Expr Expr::s() {
  Expr e;
  auto n = std::make_shared<Node>();
  n->op = Op::var_s;
  e.root_ = n;
  return e;
}

Expr Expr::unary(Op op, Expr a) {
  Expr e;
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = a.root_;
  e.root_ = n;
  return e;
}

Expr Expr::binary(Op op, Expr a, Expr b) {
  Expr e;
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = a.root_;
  n->b = b.root_;
  e.root_ = n;
  return e;
}

namespace {

cplx eval_node(const Expr::Node* n, const Eigen::VectorXcd& z, double s);

}  // namespace

cplx Expr::eval(const Eigen::VectorXcd& z, double s_value) const {
  if (!root_) throw Error(Errc::internal, "empty expression");
  return eval_node(root_.get(), z, s_value);
}

namespace {

cplx eval_node(const Expr::Node* n, const Eigen::VectorXcd& z, double s) {
  using Op = Expr::Op;
  switch (n->op) {
    case Op::constant: return n->value;
    case Op::var_x:
      if (n->index < 0 || n->index >= z.size())
        throw Error(Errc::data_domain, "variable index out of range");
      return z(n->index).real();
    case Op::var_y:
      if (n->index < 0 || n->index >= z.size())
        throw Error(Errc::data_domain, "variable index out of range");
      return z(n->index).imag();
    case Op::var_s: return s;
    case Op::add: return eval_node(n->a.get(), z, s) + eval_node(n->b.get(), z, s);
    case Op::sub: return eval_node(n->a.get(), z, s) - eval_node(n->b.get(), z, s);
    case Op::mul: return eval_node(n->a.get(), z, s) * eval_node(n->b.get(), z, s);
    case Op::div: {
      cplx num = eval_node(n->a.get(), z, s), den = eval_node(n->b.get(), z, s);
      if (std::abs(den) < 1e-14)
        throw Error(Errc::data_domain, "division by a near-zero value on the contour");
      return num / den;
    }
    case Op::neg: return -eval_node(n->a.get(), z, s);
    case Op::exp_op: return std::exp(eval_node(n->a.get(), z, s));
    case Op::cut_exp: {
      double t = eval_node(n->a.get(), z, s).real();
      return t > 0 ? std::exp(-1.0 / t) : 0.0;
    }
  }
  throw Error(Errc::internal, "bad expression node");
}

const char* op_name(Expr::Op op) {
  using Op = Expr::Op;
  switch (op) {
    case Op::constant: return "const";
    case Op::var_x: return "x";
    case Op::var_y: return "y";
    case Op::var_s: return "s";
    case Op::add: return "add";
    case Op::sub: return "sub";
    case Op::mul: return "mul";
    case Op::div: return "div";
    case Op::neg: return "neg";
    case Op::exp_op: return "exp";
    case Op::cut_exp: return "cutexp";
  }
  return "?";
}

}  // namespace

Expr Expr::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("op"))
    throw Error(Errc::schema_error, "expression node needs an \"op\" field");
  std::string op = j.at("op").get<std::string>();
  if (op == "const") {
    auto v = j.at("value");
    if (!v.is_array() || v.size() != 2)
      throw Error(Errc::schema_error, "const value must be [re, im]");
    return constant(cplx(v[0].get<double>(), v[1].get<double>()));
  }
  if (op == "x") return x(j.at("index").get<int>());
  if (op == "y") return y(j.at("index").get<int>());
  if (op == "s") return s();
  if (op == "neg" || op == "exp" || op == "cutexp") {
    Expr a = from_json(j.at("arg"));
    if (op == "neg") return unary(Op::neg, a);
    if (op == "exp") return unary(Op::exp_op, a);
    return unary(Op::cut_exp, a);
  }
  if (op == "add" || op == "sub" || op == "mul" || op == "div") {
    Expr a = from_json(j.at("lhs")), b = from_json(j.at("rhs"));
    if (op == "add") return binary(Op::add, a, b);
    if (op == "sub") return binary(Op::sub, a, b);
    if (op == "mul") return binary(Op::mul, a, b);
    return binary(Op::div, a, b);
  }
  throw Error(Errc::schema_error, "unknown expression op: " + op);
}

nlohmann::json Expr::to_json() const {
  if (!root_) throw Error(Errc::internal, "empty expression");
  std::function<nlohmann::json(const Node*)> rec = [&](const Node* n) -> nlohmann::json {
    nlohmann::json j;
    j["op"] = op_name(n->op);
    switch (n->op) {
      case Op::constant: j["value"] = {n->value.real(), n->value.imag()}; break;
      case Op::var_x:
      case Op::var_y: j["index"] = n->index; break;
      case Op::var_s: break;
      case Op::neg:
      case Op::exp_op:
      case Op::cut_exp: j["arg"] = rec(n->a.get()); break;
      default:
        j["lhs"] = rec(n->a.get());
        j["rhs"] = rec(n->b.get());
    }
    return j;
  };
  return rec(root_.get());
}

}  // namespace crext
