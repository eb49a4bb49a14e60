#include "liemetric/catalog.hpp"

#include "liemetric/connection.hpp"
#include "liemetric/linalg.hpp"
#include "liemetric/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace liemetric {

bool ParamSpec::admits(double v) const {
  if (!std::isfinite(v)) return false;
  if (lower && (lower_inclusive ? v < *lower : v <= *lower)) return false;
  if (upper && (upper_inclusive ? v > *upper : v >= *upper)) return false;
  if (integer && v != std::floor(v)) return false;
  return true;
}

std::string ParamSpec::range_text() const {
  std::ostringstream os;
  if (lower && upper) {
    os << *lower << (lower_inclusive ? " <= " : " < ") << name
       << (upper_inclusive ? " <= " : " < ") << *upper;
  } else if (lower) {
    os << name << (lower_inclusive ? " >= " : " > ") << *lower;
  } else if (upper) {
    os << name << (upper_inclusive ? " <= " : " < ") << *upper;
  } else {
    os << name << " real";
  }
  if (integer) os << ", integer";
  return os.str();
}

namespace {

using Builder = std::function<CatalogBuild(const ParamMap&)>;

struct Registered {
  CatalogEntry entry;
  Builder build;
};

ParamSpec positive(const std::string& name, double def = 1.0) {
  return {name, def, 0.0, false, std::nullopt, true, false};
}

ParamSpec at_least(const std::string& name, double bound, double def) {
  return {name, def, bound, true, std::nullopt, true, false};
}

ParamSpec real(const std::string& name, double def) {
  return {name, def, std::nullopt, false, std::nullopt, true, false};
}

ParamSpec nonzero(const std::string& name, double def) {
  // Stored as an unrestricted real; zero is rejected in the builder.
  return real(name, def);
}

// Matrix of the skew endomorphism with J e_a = e_b (and J e_b = -e_a).
void set_rotation(Matrix& m, int a, int b, double sign = 1.0) {
  m(b, a) = sign;
  m(a, b) = -sign;
}

Matrix blocks(double s, double t) { return two_block_rotation(s, t); }

Matrix j_antidiagonal() {
  Matrix j(4, 4);
  j << 0, 0, 0, -1,
       0, 0, -1, 0,
       0, 1, 0, 0,
       1, 0, 0, 0;
  return j;
}

CatalogBuild make(const std::string& name, const ParamMap& p, int n,
                  const std::vector<Bracket>& brackets, const Matrix& gram,
                  std::vector<DesignatedTensor> tensors = {}) {
  return {name, p, MetricLieAlgebra(make_lie_algebra(n, brackets), gram), std::move(tensors)};
}

Matrix scaled_identity(int n, double t) { return t * Matrix::Identity(n, n); }

std::vector<DesignatedTensor> table2_tensors(const ParamMap& p) {
  return {{"H", blocks(p.at("a1"), p.at("a2"))}, {"G1", blocks(1.0, 0.0)}, {"G2", blocks(0.0, 1.0)}};
}

double nonzero_param(const ParamMap& p, const std::string& key) {
  const double v = p.at(key);
  if (v == 0.0) throw ParamOutOfRange(key + " must be nonzero");
  return v;
}

std::vector<Registered> make_registry() {
  std::vector<Registered> r;
  const auto add = [&r](std::string name, std::string symbol, std::string desc, TableKind kind,
                        std::vector<ParamSpec> params, Builder b) {
    r.push_back({{std::move(name), std::move(symbol), std::move(desc), kind, std::move(params)},
                 std::move(b)});
  };

  add("abelian", "R^n", "abelian algebra with the identity metric", TableKind::None,
      {{"n", 4.0, 1.0, true, 12.0, true, true}}, [](const ParamMap& p) {
        const int n = static_cast<int>(p.at("n"));
        return make("abelian", p, n, {}, Matrix::Identity(n, n));
      });

  // Low-dimensional non-abelian solvable algebras, identity metric.
  add("aff", "aff(R)", "[e1,e2]=e2", TableKind::None, {}, [](const ParamMap& p) {
    return make("aff", p, 2, {{0, 1, 1, 1.0}}, Matrix::Identity(2, 2));
  });
  add("h3", "h_3", "[e1,e2]=e3", TableKind::None, {}, [](const ParamMap& p) {
    return make("h3", p, 3, {{0, 1, 2, 1.0}}, Matrix::Identity(3, 3));
  });
  add("r3_lambda", "r_{3,lambda}", "[e1,e2]=e2, [e1,e3]=lambda e3", TableKind::None,
      {real("lambda", 1.0)}, [](const ParamMap& p) {
        const double l = p.at("lambda");
        return make("r3_lambda", p, 3, {{0, 1, 1, 1.0}, {0, 2, 2, l}}, Matrix::Identity(3, 3));
      });
  add("r3p_lambda", "r'_{3,lambda}", "[e1,e2]=lambda e2 - e3, [e1,e3]=e2 + lambda e3",
      TableKind::None, {real("lambda", 0.0)}, [](const ParamMap& p) {
        const double l = p.at("lambda");
        return make("r3p_lambda", p, 3, {{0, 1, 1, l}, {0, 1, 2, -1.0}, {0, 2, 1, 1.0}, {0, 2, 2, l}},
                    Matrix::Identity(3, 3));
      });

  // 4-dimensional families in the basis e1..e4, identity metric.
  add("r4p_lambda_0_family", "r'_{4,lambda,0}",
      "[e4,e1]=lambda e1, [e4,e2]=-e3, [e4,e3]=e2", TableKind::None, {positive("lambda")},
      [](const ParamMap& p) {
        const double l = p.at("lambda");
        return make("r4p_lambda_0_family", p, 4, {{0, 3, 0, -l}, {1, 3, 2, 1.0}, {2, 3, 1, -1.0}},
                    Matrix::Identity(4, 4));
      });
  add("d4lambda", "d_{4,lambda}",
      "[e4,e1]=lambda e1, [e4,e2]=(1-lambda) e2, [e4,e3]=e3, [e1,e2]=e3", TableKind::None,
      {at_least("lambda", 0.5, 1.0)}, [](const ParamMap& p) {
        const double l = p.at("lambda");
        return make("d4lambda", p, 4,
                    {{0, 1, 2, 1.0}, {0, 3, 0, -l}, {1, 3, 1, l - 1.0}, {2, 3, 2, -1.0}},
                    Matrix::Identity(4, 4));
      });
  add("d4p_lambda_family", "d'_{4,lambda}",
      "[e4,e1]=lambda e1 - e2, [e4,e2]=e1 + lambda e2, [e4,e3]=2 lambda e3, [e1,e2]=e3",
      TableKind::None, {at_least("lambda", 0.0, 1.0)}, [](const ParamMap& p) {
        const double l = p.at("lambda");
        return make("d4p_lambda_family", p, 4,
                    {{0, 1, 2, 1.0}, {0, 3, 0, -l}, {0, 3, 1, 1.0}, {1, 3, 0, -1.0},
                     {1, 3, 1, -l}, {2, 3, 2, -2.0 * l}},
                    Matrix::Identity(4, 4));
      });

  // Kähler table: orthonormal basis e1..e4, brackets scaled by t.
  add("kahler_R2_x_aff", "R^2 x aff(R)", "[e1,e2]=t e2; J e1=e2, J e3=e4", TableKind::Kahler,
      {positive("t")}, [](const ParamMap& p) {
        const double t = p.at("t");
        Matrix j = Matrix::Zero(4, 4);
        set_rotation(j, 0, 1);
        set_rotation(j, 2, 3);
        return make("kahler_R2_x_aff", p, 4, {{0, 1, 1, t}}, Matrix::Identity(4, 4), {{"J", j}});
      });
  add("kahler_R_x_e2", "R x e(2)", "[e1,e2]=-t e3, [e1,e3]=t e2; J e1=e4, J e2=e3",
      TableKind::Kahler, {positive("t")}, [](const ParamMap& p) {
        const double t = p.at("t");
        Matrix j = Matrix::Zero(4, 4);
        set_rotation(j, 0, 3);
        set_rotation(j, 1, 2);
        return make("kahler_R_x_e2", p, 4, {{0, 1, 2, -t}, {0, 2, 1, t}}, Matrix::Identity(4, 4),
                    {{"J", j}});
      });
  add("kahler_aff_x_aff", "aff(R) x aff(R)", "[e1,e2]=t e2, [e3,e4]=s e4; J e1=e2, J e3=e4",
      TableKind::Kahler, {positive("t"), positive("s")}, [](const ParamMap& p) {
        Matrix j = Matrix::Zero(4, 4);
        set_rotation(j, 0, 1);
        set_rotation(j, 2, 3);
        return make("kahler_aff_x_aff", p, 4, {{0, 1, 1, p.at("t")}, {2, 3, 3, p.at("s")}},
                    Matrix::Identity(4, 4), {{"J", j}});
      });
  add("kahler_r4p", "r'_{4,lambda,0}",
      "[e4,e1]=t e1, [e4,e2]=-(t/lambda) e3, [e4,e3]=(t/lambda) e2; "
      "J1 e1=-e4, J1 e2=e3; J2 e1=-e4, J2 e2=-e3",
      TableKind::Kahler, {positive("lambda"), positive("t")}, [](const ParamMap& p) {
        const double t = p.at("t");
        const double q = t / p.at("lambda");
        Matrix j1 = Matrix::Zero(4, 4);
        set_rotation(j1, 0, 3, -1.0);
        set_rotation(j1, 1, 2);
        Matrix j2 = Matrix::Zero(4, 4);
        set_rotation(j2, 0, 3, -1.0);
        set_rotation(j2, 1, 2, -1.0);
        return make("kahler_r4p", p, 4, {{0, 3, 0, -t}, {1, 3, 2, q}, {2, 3, 1, -q}},
                    Matrix::Identity(4, 4), {{"J1", j1}, {"J2", j2}});
      });
  add("kahler_d4.2", "d_{4,2}",
      "[e1,e2]=t e3, [e4,e3]=(t/2) e3, [e4,e1]=t e1, [e4,e2]=-(t/2) e2; J e4=-e1, J e2=e3",
      TableKind::Kahler, {positive("t")}, [](const ParamMap& p) {
        const double t = p.at("t");
        Matrix j = Matrix::Zero(4, 4);
        set_rotation(j, 3, 0, -1.0);
        set_rotation(j, 1, 2);
        return make("kahler_d4.2", p, 4,
                    {{0, 1, 2, t}, {2, 3, 2, -0.5 * t}, {0, 3, 0, -t}, {1, 3, 1, 0.5 * t}},
                    Matrix::Identity(4, 4), {{"J", j}});
      });
  add("kahler_d4half", "d_{4,1/2}",
      "[e1,e2]=t e3, [e4,e3]=t e3, [e4,e1]=(t/2) e1, [e4,e2]=(t/2) e2; J e1=e2, J e4=e3",
      TableKind::Kahler, {positive("t")}, [](const ParamMap& p) {
        const double t = p.at("t");
        Matrix j = Matrix::Zero(4, 4);
        set_rotation(j, 0, 1);
        set_rotation(j, 3, 2);
        return make("kahler_d4half", p, 4,
                    {{0, 1, 2, t}, {2, 3, 2, -t}, {0, 3, 0, -0.5 * t}, {1, 3, 1, -0.5 * t}},
                    Matrix::Identity(4, 4), {{"J", j}});
      });
  add("kahler_d4p", "d'_{4,delta/2}",
      "[e1,e2]=t e3, [e4,e1]=(t/2) e1 - (t/delta) e2, [e4,e3]=t e3, "
      "[e4,e2]=(t/delta) e1 + (t/2) e2; J1 e1=e2, J1 e4=e3; J2 e1=-e2, J2 e4=-e3",
      TableKind::Kahler, {positive("delta"), positive("t")}, [](const ParamMap& p) {
        const double t = p.at("t");
        const double q = t / p.at("delta");
        Matrix j1 = Matrix::Zero(4, 4);
        set_rotation(j1, 0, 1);
        set_rotation(j1, 3, 2);
        return make("kahler_d4p", p, 4,
                    {{0, 1, 2, t}, {0, 3, 0, -0.5 * t}, {0, 3, 1, q}, {2, 3, 2, -t},
                     {1, 3, 0, -q}, {1, 3, 1, -0.5 * t}},
                    Matrix::Identity(4, 4), {{"J1", j1}, {"J2", Matrix(-j1)}});
      });

  // Parallel tensors not multiple of a complex structure: basis {e1,f1,e2,f2}.
  const std::vector<ParamSpec> t_a = {positive("t"), real("a1", 1.0), real("a2", 2.0)};
  add("R_x_e2", "R x e(2)", "[e1,e2]=-f2, [e1,f2]=e2; metric t I", TableKind::NonComplex, t_a,
      [](const ParamMap& p) {
        return make("R_x_e2", p, 4, {{0, 2, 3, -1.0}, {0, 3, 2, 1.0}},
                    scaled_identity(4, p.at("t")), table2_tensors(p));
      });
  add("R2_x_aff", "R^2 x aff(R)", "[e2,f2]=f2; metric t I", TableKind::NonComplex, t_a,
      [](const ParamMap& p) {
        return make("R2_x_aff", p, 4, {{2, 3, 3, 1.0}}, scaled_identity(4, p.at("t")),
                    table2_tensors(p));
      });
  add("r4p_lambda_0", "r'_{4,lambda,0}",
      "[e1,f1]=lambda f1, [e1,f2]=e2, [e1,e2]=-f2; metric t I", TableKind::NonComplex,
      {positive("lambda"), positive("t"), real("a1", 1.0), real("a2", 2.0)},
      [](const ParamMap& p) {
        return make("r4p_lambda_0", p, 4,
                    {{0, 1, 1, p.at("lambda")}, {0, 3, 2, 1.0}, {0, 2, 3, -1.0}},
                    scaled_identity(4, p.at("t")), table2_tensors(p));
      });
  add("aff_x_aff", "aff(R) x aff(R)", "[e1,f1]=f1, [e2,f2]=f2; metric diag(t, t, ts, ts)",
      TableKind::NonComplex,
      {positive("t"), {"s", 1.0, 0.0, false, 1.0, true, false}, real("a1", 1.0), real("a2", 2.0)},
      [](const ParamMap& p) {
        const double t = p.at("t");
        const double s = p.at("s");
        Matrix g = Matrix::Zero(4, 4);
        g.diagonal() << t, t, t * s, t * s;
        return make("aff_x_aff", p, 4, {{0, 1, 1, 1.0}, {2, 3, 3, 1.0}}, g, table2_tensors(p));
      });

  // Parallel complex structures J_c on the d-algebras: basis e0..e3, metric t I.
  add("d4half", "d_{4,1/2}", "[e1,e2]=e3, [e0,e1]=e1/2, [e0,e2]=e2/2, [e0,e3]=e3; metric t I",
      TableKind::Complex, {positive("t"), nonzero("c", 1.0)}, [](const ParamMap& p) {
        const double c = nonzero_param(p, "c");
        return make("d4half", p, 4, {{1, 2, 3, 1.0}, {0, 1, 1, 0.5}, {0, 2, 2, 0.5}, {0, 3, 3, 1.0}},
                    scaled_identity(4, p.at("t")), {{"J", c * j_antidiagonal()}});
      });
  add("d4.2", "d_{4,2}", "[e1,e2]=e3, [e0,e1]=-e1, [e0,e2]=e2/2, [e0,e3]=-e3/2; metric t I",
      TableKind::Complex, {positive("t"), nonzero("c", 1.0)}, [](const ParamMap& p) {
        const double c = nonzero_param(p, "c");
        return make("d4.2", p, 4, {{1, 2, 3, 1.0}, {0, 1, 1, -1.0}, {0, 2, 2, 0.5}, {0, 3, 3, -0.5}},
                    scaled_identity(4, p.at("t")), {{"J", c * blocks(1.0, 1.0)}});
      });
  add("d4p", "d'_{4,lambda}",
      "[e1,e2]=e3, [e0,e1]=e1/2 - e2/(2 lambda), [e0,e2]=e1/(2 lambda) + e2/2, [e0,e3]=e3; "
      "metric t I",
      TableKind::Complex, {positive("lambda"), positive("t"), nonzero("c", 1.0)},
      [](const ParamMap& p) {
        const double c = nonzero_param(p, "c");
        const double q = 0.5 / p.at("lambda");
        return make("d4p", p, 4,
                    {{1, 2, 3, 1.0}, {0, 1, 1, 0.5}, {0, 1, 2, -q}, {0, 2, 1, q}, {0, 2, 2, 0.5},
                     {0, 3, 3, 1.0}},
                    scaled_identity(4, p.at("t")), {{"J", c * j_antidiagonal()}});
      });
  return r;
}

const std::vector<Registered>& registry() {
  static const std::vector<Registered> r = make_registry();
  return r;
}

const Registered& lookup(const std::string& name) {
  for (const auto& reg : registry()) {
    if (reg.entry.name == name) return reg;
  }
  throw UnknownEntry("unknown catalog entry '" + name + "'");
}

}  // namespace

std::optional<int> CatalogEntry::expected_parallel_dim(const ParamMap& resolved) const {
  switch (table) {
    case TableKind::NonComplex:
      return 2;
    case TableKind::Complex:
      return 1;
    case TableKind::Kahler:
      // The first four Kähler rows are the algebras of the non-complex table.
      if (name == "kahler_d4.2" || name == "kahler_d4half" || name == "kahler_d4p") return 1;
      return 2;
    case TableKind::None:
      if (name == "abelian") {
        const int n = static_cast<int>(resolved.at("n"));
        return n * (n - 1) / 2;
      }
      return std::nullopt;
  }
  return std::nullopt;
}

const std::vector<CatalogEntry>& catalog_list() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> out;
    for (const auto& reg : registry()) out.push_back(reg.entry);
    return out;
  }();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) { return lookup(name).entry; }

ParamMap resolve_params(const CatalogEntry& entry, const ParamMap& params) {
  ParamMap out;
  for (const auto& [key, value] : params) {
    const bool known = std::any_of(entry.params.begin(), entry.params.end(),
                                   [&](const ParamSpec& s) { return s.name == key; });
    if (!known) {
      throw ParamOutOfRange("entry '" + entry.name + "' has no parameter '" + key + "'");
    }
  }
  for (const auto& spec : entry.params) {
    const auto it = params.find(spec.name);
    const double v = it == params.end() ? spec.default_value : it->second;
    if (!spec.admits(v)) {
      std::ostringstream os;
      os << "parameter " << spec.name << " = " << v << " outside admissible range ("
         << spec.range_text() << ") for entry '" << entry.name << "'";
      throw ParamOutOfRange(os.str());
    }
    out[spec.name] = v;
  }
  return out;
}

CatalogBuild catalog_build(const std::string& name, const ParamMap& params) {
  const auto& reg = lookup(name);
  return reg.build(resolve_params(reg.entry, params));
}

TableVerification verify_table_entry(const std::string& name, const ParamMap& params) {
  const auto build = catalog_build(name, params);
  const auto& entry = catalog_entry(name);
  const auto conn = levi_civita(build.mla);
  const auto& tol = conn.tol;

  TableVerification out;
  out.name = name;
  out.params = build.params;
  out.parallel_dim = parallel_space(conn).dim();
  out.expected_dim = entry.expected_parallel_dim(build.params);
  out.ok = !out.expected_dim || *out.expected_dim == out.parallel_dim;
  for (const auto& t : build.tensors) {
    const Matrix h = to_frame(t.matrix, conn.frame);
    const double scale = std::max(1.0, linalg::max_abs(h));
    TensorCheck check;
    check.name = t.name;
    check.residual = parallel_residual(conn, h);
    check.parallel = is_parallel(conn, h);
    check.skew = linalg::max_abs(h + h.transpose()) <= tol.threshold(scale);
    if (check.skew) check.complex_structure = classify_element(h, tol).is_complex_structure;
    out.ok = out.ok && check.parallel && check.skew &&
             (entry.table != TableKind::Kahler || check.complex_structure);
    out.tensors.push_back(std::move(check));
  }
  return out;
}

}  // namespace liemetric
