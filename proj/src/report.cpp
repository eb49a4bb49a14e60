#include "liemetric/report.hpp"

#include "liemetric/connection.hpp"
#include "liemetric/curvature.hpp"
#include "liemetric/holonomy.hpp"
#include "liemetric/linalg.hpp"
#include "liemetric/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace nlohmann {

template <typename T>
struct adl_serializer<std::optional<T>> {
  static void to_json(json& j, const std::optional<T>& v) {
    if (v) {
      j = *v;
    } else {
      j = nullptr;
    }
  }
  static void from_json(const json& j, std::optional<T>& v) {
    if (j.is_null()) {
      v.reset();
    } else {
      v = j.get<T>();
    }
  }
};

}  // namespace nlohmann

namespace liemetric {

using nlohmann::json;

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(InputEcho, source, entry, params, file, digest)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(BracketRecord, i, j, k, value)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(AlgebraSection, dim, brackets, gram, valid, violations,
                                   max_antisymmetry_residual, max_jacobi_residual, derived_dim,
                                   center_dim)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ConnectionSection, frame, gamma, metric_residual,
                                   torsion_residual)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SpectralRecord, angles, kernel_dim, complex_multiple,
                                   complex_structure)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(TensorRecord, name, matrix, residual, parallel,
                                   complex_structure)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ParallelSection, dim, basis, spectral, has_non_complex_multiple,
                                   designated, expected_dim)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PairOperatorRecord, i, j, op, two_form)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(DerivativeRecord, k, i, j, two_form)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CurvatureSection, operators, derivatives, ricci, scalar,
                                   sectional, bianchi_residual, pair_symmetry_residual)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(FingerprintRecord, tensor, ric_charpoly, h_charpoly,
                                   h_on_derived_charpoly, h_on_center_charpoly, killing_charpoly,
                                   dims)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(HolonomySection, dim, level_reached, stabilized, basis,
                                   closure_residual)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(DerhamFactorRecord, kind, dim, curvature, basis)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(DerhamSection, factors, summary, note)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Diagnostics, warnings, residuals)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(AnalysisReport, input, tol_rel, tol_abs, algebra, connection,
                                   parallel, curvature, fingerprints, holonomy, derham,
                                   diagnostics)

std::string digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Rows to_rows(const Matrix& m) {
  Rows out(static_cast<size_t>(m.rows()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out[static_cast<size_t>(r)].push_back(m(r, c));
  }
  return out;
}

namespace {

Matrix read_square(const json& j, int n, const std::string& what) {
  Matrix m(n, n);
  if (j.is_array() && static_cast<int>(j.size()) == n && n > 0 && j[0].is_array()) {
    for (int r = 0; r < n; ++r) {
      if (!j[r].is_array() || static_cast<int>(j[r].size()) != n) {
        throw SpecError(what + ": row " + std::to_string(r) + " must have " + std::to_string(n) +
                        " entries");
      }
      for (int c = 0; c < n; ++c) m(r, c) = j[r][c].get<double>();
    }
    return m;
  }
  if (j.is_array() && static_cast<int>(j.size()) == n * n) {
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m(r, c) = j[r * n + c].get<double>();
    return m;
  }
  throw SpecError(what + " must be an " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
}

}  // namespace

AlgebraInput parse_algebra_spec(const std::string& text) {
  AlgebraInput in;
  try {
    const json doc = json::parse(text);
    if (!doc.is_object()) throw SpecError("specification must be a JSON object");
    if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<int>() < 1) {
      throw SpecError("field 'dim' must be a positive integer");
    }
    const int n = doc["dim"].get<int>();
    in.dim = n;

    for (const auto& b : doc.value("brackets", json::array())) {
      Bracket br{b.at("i").get<int>(), b.at("j").get<int>(), b.at("k").get<int>(),
                 b.at("value").get<double>()};
      if (br.i < 0 || br.j < 0 || br.k < 0 || br.i >= n || br.j >= n || br.k >= n) {
        throw SpecError("bracket index out of range 0.." + std::to_string(n - 1));
      }
      if (br.i >= br.j) throw SpecError("bracket entries require i < j");
      in.brackets.push_back(br);
    }

    const json metric = doc.value("metric", json("identity"));
    if (metric.is_string()) {
      if (metric.get<std::string>() != "identity") {
        throw SpecError("metric string must be \"identity\"");
      }
      in.gram = Matrix::Identity(n, n);
    } else if (metric.is_array() && static_cast<int>(metric.size()) == n && n > 0 &&
               metric[0].is_number()) {
      in.gram = Matrix::Zero(n, n);
      for (int i = 0; i < n; ++i) in.gram(i, i) = metric[i].get<double>();
    } else {
      in.gram = read_square(metric, n, "metric");
    }

    if (doc.contains("tolerance")) {
      Tolerance tol;
      tol.rel = doc["tolerance"].value("rel", tol.rel);
      tol.abs = doc["tolerance"].value("abs", tol.abs);
      try {
        tol.check();
      } catch (const std::invalid_argument& e) {
        throw SpecError(std::string("tolerance: ") + e.what());
      }
      in.tolerance = tol;
    }

    for (const auto& t : doc.value("tensors", json::array())) {
      in.tensors.push_back({t.at("name").get<std::string>(),
                            read_square(t.at("matrix"), n, "tensor matrix")});
    }
  } catch (const json::exception& e) {
    throw SpecError(std::string("malformed specification: ") + e.what());
  }

  // Metric invariants are checked up front so a bad metric is a parse error.
  const Tolerance tol = in.tolerance.value_or(Tolerance{});
  const double scale = std::max(1.0, linalg::max_abs(in.gram));
  if (linalg::max_abs(in.gram - in.gram.transpose()) > tol.threshold(scale)) {
    throw SpecError("metric is not symmetric (G != G^T)");
  }
  try {
    MetricLieAlgebra(LieAlgebra::trusted(StructureConstants(in.dim)), in.gram, tol);
  } catch (const Error& e) {
    throw SpecError(std::string("metric is not positive definite: ") + e.what());
  }
  return in;
}

AlgebraInput algebra_input_from_catalog(const CatalogBuild& build) {
  AlgebraInput in;
  in.dim = build.mla.dim();
  in.brackets = build.mla.algebra().constants().to_brackets();
  in.gram = build.mla.gram();
  in.tensors = build.tensors;
  return in;
}

namespace {

std::string kind_name(FactorKind k) {
  switch (k) {
    case FactorKind::Flat:
      return "Flat";
    case FactorKind::Surface:
      return "Surface";
    case FactorKind::Irreducible:
      return "Irreducible";
  }
  return "?";
}

void note_residual(Diagnostics& d, const std::string& key, double v) {
  auto [it, inserted] = d.residuals.emplace(key, v);
  if (!inserted) it->second = std::max(it->second, v);
}

void add_warning(Diagnostics& d, const std::string& w) {
  if (std::find(d.warnings.begin(), d.warnings.end(), w) == d.warnings.end()) {
    d.warnings.push_back(w);
  }
}

}  // namespace

AnalysisReport analyze(const AlgebraInput& input, const InputEcho& echo, const Sections& sections,
                       const AnalysisOptions& opts) {
  AnalysisReport r;
  r.input = echo;
  const Tolerance tol = opts.tolerance ? *opts.tolerance : input.tolerance.value_or(Tolerance{});
  tol.check();
  r.tol_rel = tol.rel;
  r.tol_abs = tol.abs;
  auto& diag = r.diagnostics;

  AlgebraSection alg;
  alg.dim = input.dim;
  for (const auto& b : input.brackets) alg.brackets.push_back({b.i, b.j, b.k, b.value});
  alg.gram = to_rows(input.gram);
  const auto constants = StructureConstants::from_brackets(input.dim, input.brackets);
  const auto validation = validate_lie_algebra(constants, tol);
  alg.valid = validation.ok();
  for (const auto& v : validation.violations) alg.violations.push_back(v.describe());
  alg.max_antisymmetry_residual = validation.max_antisymmetry_residual;
  alg.max_jacobi_residual = validation.max_jacobi_residual;
  note_residual(diag, "jacobi", validation.max_jacobi_residual);
  if (!validation.ok()) {
    r.algebra = std::move(alg);
    return r;
  }
  const auto& lie = *validation.algebra;
  alg.derived_dim = derived_subalgebra(lie, tol).dim();
  alg.center_dim = center(lie, tol).dim();
  r.algebra = std::move(alg);

  const MetricLieAlgebra mla(lie, input.gram, tol);
  const auto conn = levi_civita(mla);
  note_residual(diag, "metric", metric_residual(conn));
  note_residual(diag, "torsion", torsion_residual(conn));

  if (sections.connection) {
    ConnectionSection c;
    c.frame = to_rows(conn.frame.matrix());
    for (const auto& g : conn.gamma) c.gamma.push_back(to_rows(g));
    c.metric_residual = metric_residual(conn);
    c.torsion_residual = torsion_residual(conn);
    r.connection = std::move(c);
  }

  const bool need_parallel = sections.parallel || sections.fingerprint;
  ParallelBasis pbasis;
  std::vector<std::pair<std::string, Matrix>> designated;
  for (const auto& t : input.tensors) designated.emplace_back(t.name, to_frame(t.matrix, conn.frame));
  if (need_parallel) {
    pbasis = parallel_space(conn);
    note_residual(diag, "parallel_commutator", pbasis.max_commutator_residual);
  }

  if (sections.parallel) {
    ParallelSection p;
    p.dim = pbasis.dim();
    for (const auto& h : pbasis.elements) {
      p.basis.push_back(to_rows(h));
      const auto cls = classify_element(h, tol);
      SpectralRecord s;
      for (const auto& pair : cls.rotation_pairs) s.angles.push_back(pair.angle);
      s.kernel_dim = cls.kernel.dim();
      s.complex_multiple = cls.is_complex_multiple;
      s.complex_structure = cls.is_complex_structure;
      p.spectral.push_back(std::move(s));
    }
    p.has_non_complex_multiple = contains_non_complex_multiple(pbasis, opts.seed, tol).found;
    for (const auto& [name, h] : designated) {
      TensorRecord t;
      t.name = name;
      t.matrix = to_rows(h);
      t.residual = parallel_residual(conn, h);
      t.parallel = is_parallel(conn, h);
      const double scale = std::max(1.0, linalg::max_abs(h));
      if (linalg::max_abs(h + h.transpose()) <= tol.threshold(scale)) {
        t.complex_structure = classify_element(h, tol).is_complex_structure;
      } else {
        add_warning(diag, "designated tensor " + name + " is not skew for the metric");
      }
      if (!t.parallel) add_warning(diag, "designated tensor " + name + " is not parallel");
      p.designated.push_back(std::move(t));
    }
    if (!echo.entry.empty()) {
      p.expected_dim = catalog_entry(echo.entry).expected_parallel_dim(echo.params);
    }
    r.parallel = std::move(p);
  }

  const auto curv = curvature(conn);
  note_residual(diag, "bianchi", bianchi_residual(curv));
  note_residual(diag, "pair_symmetry", pair_symmetry_residual(curv));
  if (sections.curvature) {
    const int n = conn.dim();
    CurvatureSection c;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const Matrix& op = curv.at(i, j);
        c.operators.push_back({i, j, to_rows(op), {}});
        const auto w = matrix_to_two_form(op, tol).coeffs;
        c.operators.back().two_form.assign(w.data(), w.data() + w.size());
      }
    }
    for (int k = 0; k < n; ++k) {
      const auto& g = conn.gamma[static_cast<size_t>(k)];
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          const Matrix d = g * curv.at(i, j) - curv.at(i, j) * g;
          const auto w = matrix_to_two_form(d, tol).coeffs;
          c.derivatives.push_back({k, i, j, std::vector<double>(w.data(), w.data() + w.size())});
        }
      }
    }
    const auto ric = ricci(curv);
    c.ricci = to_rows(ric.op);
    c.scalar = ric.scalar;
    Matrix sec = Matrix::Zero(n, n);
    const Matrix id = Matrix::Identity(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) sec(i, j) = sectional(curv, id.col(i), id.col(j), tol);
    c.sectional = to_rows(sec);
    c.bianchi_residual = bianchi_residual(curv);
    c.pair_symmetry_residual = pair_symmetry_residual(curv);
    r.curvature = std::move(c);
  }

  if (sections.fingerprint) {
    std::vector<std::pair<std::string, Matrix>> tensors = designated;
    if (tensors.empty()) {
      for (int b = 0; b < pbasis.dim(); ++b) {
        tensors.emplace_back("parallel[" + std::to_string(b) + "]",
                             pbasis.elements[static_cast<size_t>(b)]);
      }
    }
    std::vector<FingerprintRecord> fps;
    for (const auto& [name, h] : tensors) {
      if (!is_parallel(conn, h)) {
        add_warning(diag, "fingerprint skipped for non-parallel tensor " + name);
        continue;
      }
      const auto fp = fingerprint(mla, h);
      fps.push_back({name, fp.ric_charpoly, fp.h_charpoly, fp.h_on_derived_charpoly,
                     fp.h_on_center_charpoly, fp.killing_charpoly,
                     {fp.dims.algebra, fp.dims.derived, fp.dims.center, fp.dims.derived_of_derived,
                      fp.dims.parallel}});
    }
    r.fingerprints = std::move(fps);
  }

  if (sections.holonomy || sections.derham) {
    const auto dr = derham_report(mla, {opts.max_level, opts.seed});
    for (const auto& w : dr.warnings) add_warning(diag, w);
    note_residual(diag, "holonomy_closure", bracket_closure_residual(dr.holonomy));
    if (sections.holonomy) {
      HolonomySection h;
      h.dim = dr.holonomy.dim();
      h.level_reached = dr.holonomy.level_reached;
      h.stabilized = dr.holonomy.stabilized;
      for (const auto& b : dr.holonomy.basis) h.basis.push_back(to_rows(b));
      h.closure_residual = bracket_closure_residual(dr.holonomy);
      r.holonomy = std::move(h);
    }
    if (sections.derham) {
      DerhamSection d;
      for (const auto& f : dr.factors) {
        note_residual(diag, "factor_invariance", invariance_residual(dr.holonomy, f.subspace));
        DerhamFactorRecord rec{kind_name(f.kind), f.subspace.dim(), std::nullopt,
                               to_rows(f.subspace.basis())};
        if (f.kind == FactorKind::Surface) rec.curvature = f.curvature;
        d.factors.push_back(std::move(rec));
      }
      d.summary = describe(dr);
      d.note =
          "surface curvature is evaluated at the identity; left-invariant metrics are "
          "homogeneous, so it is constant on the factor";
      r.derham = std::move(d);
    }
  }
  return r;
}

std::string serialize(const AnalysisReport& report) { return json(report).dump(); }

AnalysisReport parse_report(const std::string& text) {
  try {
    return json::parse(text).get<AnalysisReport>();
  } catch (const json::exception& e) {
    throw SpecError(std::string("malformed report: ") + e.what());
  }
}

std::string format_number(double x) {
  if (std::abs(x) < 1e-12) x = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

namespace {

void put_rows(std::ostream& os, const Rows& rows, const std::string& indent) {
  for (const auto& row : rows) {
    os << indent;
    for (size_t c = 0; c < row.size(); ++c) {
      const auto s = format_number(row[c]);
      os << (c ? " " : "") << std::string(s.size() < 11 ? 11 - s.size() : 0, ' ') << s;
    }
    os << "\n";
  }
}

void put_list(std::ostream& os, const std::vector<double>& v) {
  os << "[";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << format_number(v[i]);
  os << "]";
}

std::string pair_label(int i, int j) {
  return std::to_string(i) + std::to_string(j);
}

void put_two_form(std::ostream& os, const std::vector<double>& w, int n) {
  bool any = false;
  size_t p = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++p) {
      if (std::abs(w[p]) < 1e-12) continue;
      if (any) os << (w[p] < 0 ? " - " : " + ");
      os << format_number(any ? std::abs(w[p]) : w[p]) << " e^" << pair_label(i, j);
      any = true;
    }
  }
  if (!any) os << "0";
}

}  // namespace

std::string render_text(const AnalysisReport& r) {
  std::ostringstream os;
  os << "input: ";
  if (r.input.source == "entry") {
    os << r.input.entry;
    for (const auto& [k, v] : r.input.params) os << " " << k << "=" << format_number(v);
  } else {
    os << r.input.file << " (digest " << r.input.digest << ")";
  }
  os << "\ntolerance: rel=" << format_number(r.tol_rel) << " abs=" << format_number(r.tol_abs)
     << "\n";

  if (r.algebra) {
    const auto& a = *r.algebra;
    os << "\n[algebra]\ndimension: " << a.dim << "\nvalid: " << (a.valid ? "yes" : "no") << "\n";
    for (const auto& v : a.violations) os << "  " << v << "\n";
    os << "max antisymmetry residual: " << format_number(a.max_antisymmetry_residual)
       << "\nmax jacobi residual: " << format_number(a.max_jacobi_residual) << "\n";
    if (a.valid) {
      os << "derived algebra dimension: " << a.derived_dim << "\ncenter dimension: "
         << a.center_dim << "\n";
    }
  }

  if (r.connection) {
    const auto& c = *r.connection;
    os << "\n[connection]\northonormal frame:\n";
    put_rows(os, c.frame, "  ");
    for (size_t i = 0; i < c.gamma.size(); ++i) {
      os << "nabla_" << i << ":\n";
      put_rows(os, c.gamma[i], "  ");
    }
    os << "metric residual: " << format_number(c.metric_residual)
       << "\ntorsion residual: " << format_number(c.torsion_residual) << "\n";
  }

  if (r.parallel) {
    const auto& p = *r.parallel;
    os << "\n[parallel]\ndimension: " << p.dim;
    if (p.expected_dim) os << " (expected " << *p.expected_dim << ")";
    os << "\n";
    for (size_t b = 0; b < p.basis.size(); ++b) {
      const auto& s = p.spectral[b];
      os << "H_" << b << ": angles ";
      put_list(os, s.angles);
      os << ", kernel " << s.kernel_dim << ", complex multiple " << (s.complex_multiple ? "yes" : "no")
         << "\n";
      put_rows(os, p.basis[b], "  ");
    }
    os << "contains non-complex-multiple: " << (p.has_non_complex_multiple ? "yes" : "no") << "\n";
    for (const auto& t : p.designated) {
      os << "designated " << t.name << ": " << (t.parallel ? "parallel" : "NOT parallel")
         << ", residual " << format_number(t.residual)
         << (t.complex_structure ? ", complex structure" : "") << "\n";
    }
  }

  if (r.curvature) {
    const auto& c = *r.curvature;
    const int n = c.ricci.empty() ? 0 : static_cast<int>(c.ricci.size());
    os << "\n[curvature]\n";
    for (const auto& op : c.operators) {
      os << "R(" << op.i << "," << op.j << ") = ";
      put_two_form(os, op.two_form, n);
      os << "\n";
      put_rows(os, op.op, "  ");
    }
    os << "covariant derivatives [nabla_k, R(i,j)]:\n";
    for (const auto& d : c.derivatives) {
      os << "  nabla_" << d.k << " R^" << pair_label(d.i, d.j) << " = ";
      put_two_form(os, d.two_form, n);
      os << "\n";
    }
    os << "ricci:\n";
    put_rows(os, c.ricci, "  ");
    os << "scalar curvature: " << format_number(c.scalar) << "\nsectional K(f_i, f_j):\n";
    put_rows(os, c.sectional, "  ");
    os << "bianchi residual: " << format_number(c.bianchi_residual)
       << "\npair symmetry residual: " << format_number(c.pair_symmetry_residual) << "\n";
  }

  if (r.fingerprints) {
    os << "\n[fingerprint]\n";
    for (const auto& f : *r.fingerprints) {
      os << f.tensor << ":\n  ric charpoly ";
      put_list(os, f.ric_charpoly);
      os << "\n  H charpoly ";
      put_list(os, f.h_charpoly);
      os << "\n  H on [g,g] ";
      if (f.h_on_derived_charpoly) {
        put_list(os, *f.h_on_derived_charpoly);
      } else {
        os << "(not invariant)";
      }
      os << "\n  H on center ";
      if (f.h_on_center_charpoly) {
        put_list(os, *f.h_on_center_charpoly);
      } else {
        os << "(not invariant)";
      }
      os << "\n  killing charpoly ";
      put_list(os, f.killing_charpoly);
      os << "\n  dims (g, [g,g], z, [[g,g],[g,g]], parallel):";
      for (int d : f.dims) os << " " << d;
      os << "\n";
    }
  }

  if (r.holonomy) {
    const auto& h = *r.holonomy;
    os << "\n[holonomy]\ndimension: " << h.dim << "\nlevel reached: " << h.level_reached
       << "\nstabilized: " << (h.stabilized ? "yes" : "no") << "\n";
    for (size_t b = 0; b < h.basis.size(); ++b) {
      os << "B_" << b << ":\n";
      put_rows(os, h.basis[b], "  ");
    }
    os << "closure residual: " << format_number(h.closure_residual) << "\n";
  }

  if (r.derham) {
    const auto& d = *r.derham;
    os << "\n[derham]\n" << d.summary << "\n";
    for (const auto& f : d.factors) {
      os << f.kind << " dim " << f.dim;
      if (f.curvature) os << " K=" << format_number(*f.curvature);
      os << "\n";
      put_rows(os, f.basis, "  ");
    }
    os << "note: " << d.note << "\n";
  }

  if (!r.diagnostics.warnings.empty() || !r.diagnostics.residuals.empty()) {
    os << "\n[diagnostics]\n";
    for (const auto& w : r.diagnostics.warnings) os << "warning: " << w << "\n";
    for (const auto& [k, v] : r.diagnostics.residuals) {
      os << "residual " << k << ": " << format_number(v) << "\n";
    }
  }
  return os.str();
}

}  // namespace liemetric
