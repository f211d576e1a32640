#pragma once

// Cone input files, the aggregated analysis report, and their JSON forms.
// Integers are written as JSON numbers when they fit in 64 bits and as
// decimal strings otherwise; rationals as {"num": "...", "den": "..."}.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "toric/cone.hpp"
#include "toric/families.hpp"
#include "toric/hilbert_basis.hpp"
#include "toric/invariants.hpp"
#include "toric/lattice.hpp"
#include "toric/monomial_ideal.hpp"

namespace toric {

using Json = nlohmann::json;

/// Malformed input files or arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

// JSON encoding of exact values -----------------------------------------------

inline Json to_json(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

inline Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    const bool ok = !s.empty() && std::all_of(s.begin() + (s[0] == '-' ? 1 : 0), s.end(),
                                              [](char ch) { return ch >= '0' && ch <= '9'; }) &&
                    s != "-";
    if (!ok) throw InputError("not an integer: \"" + s + "\"");
    return Integer(s);
  }
  throw InputError("expected an integer, got " + j.dump());
}

inline Json to_json(const Rational& q) {
  return Json{{"num", boost::multiprecision::numerator(q).str()}, {"den", boost::multiprecision::denominator(q).str()}};
}

inline Rational rational_from_json(const Json& j) {
  Integer den = integer_from_json(j.at("den"));
  if (den == 0) throw InputError("rational with zero denominator");
  return Rational(integer_from_json(j.at("num")), den);
}

inline Json to_json(const LatticeVector& v) {
  Json a = Json::array();
  for (const auto& c : v) a.push_back(to_json(c));
  return a;
}

inline LatticeVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected an integer list, got " + j.dump());
  LatticeVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = integer_from_json(j[i]);
  return v;
}

inline Json to_json(const std::vector<LatticeVector>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

inline std::vector<LatticeVector> vectors_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected a list of vectors");
  std::vector<LatticeVector> out;
  for (const auto& x : j) out.push_back(vector_from_json(x));
  return out;
}

inline Json to_json(const std::vector<Integer>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(to_json(x));
  return a;
}

inline std::vector<Integer> integers_from_json(const Json& j) {
  std::vector<Integer> out;
  for (const auto& x : j) out.push_back(integer_from_json(x));
  return out;
}

inline Json to_json(const IntegerMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

inline IntegerMatrix matrix_from_json(const Json& j) {
  auto rows = vectors_from_json(j);
  if (rows.empty()) return {};
  return IntegerMatrix::from_rows(rows, rows.front().rank());
}

inline Json optional_json(const std::optional<Integer>& x) {
  return x ? to_json(*x) : Json(nullptr);
}

inline std::optional<Integer> optional_integer(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return integer_from_json(j.at(key));
}

// Cone files -------------------------------------------------------------------

struct ConeSpecFile {
  std::size_t rank = 0;
  std::vector<LatticeVector> generators;
  std::optional<std::string> name;

  friend bool operator==(const ConeSpecFile&, const ConeSpecFile&) = default;
};

inline Json to_json(const ConeSpecFile& f) {
  Json j{{"rank", f.rank}, {"generators", to_json(f.generators)}};
  if (f.name) j["name"] = *f.name;
  return j;
}

inline ConeSpecFile cone_file_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("cone file: top level must be an object");
  if (!j.contains("rank") || !j.at("rank").is_number_integer() || j.at("rank").get<std::int64_t>() <= 0)
    throw InputError("cone file: \"rank\" must be a positive integer");
  if (!j.contains("generators") || !j.at("generators").is_array() || j.at("generators").empty())
    throw InputError("cone file: \"generators\" must be a nonempty list");
  ConeSpecFile f;
  f.rank = j.at("rank").get<std::size_t>();
  const auto& gens = j.at("generators");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    LatticeVector v = vector_from_json(gens[i]);
    if (v.rank() != f.rank)
      throw InputError("cone file: generator " + std::to_string(i) + " has " + std::to_string(v.rank()) +
                       " entries, expected " + std::to_string(f.rank));
    f.generators.push_back(std::move(v));
  }
  if (j.contains("name")) {
    if (!j.at("name").is_string()) throw InputError("cone file: \"name\" must be a string");
    f.name = j.at("name").get<std::string>();
  }
  return f;
}

/// Parses JSON text, reporting syntax errors with line and column.
inline Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON (" +
                     e.what() + ")");
  }
}

inline ConeSpecFile parse_cone_file(const std::string& text, const std::string& origin = "<input>") {
  return cone_file_from_json(parse_json_text(text, origin));
}

// Analysis report --------------------------------------------------------------

struct FaceMultiplier {
  std::vector<std::size_t> rays;  // indices into the report's ray list
  std::size_t dim = 0;
  Integer Dprime;

  friend bool operator==(const FaceMultiplier&, const FaceMultiplier&) = default;
};

struct OracleCheck {
  std::uint64_t seed = 0;
  Integer search_degree_override = 0;  // 0 = default bound
  std::size_t checked = 0;
  std::size_t brute_force_conclusive = 0;
  std::size_t disagreements = 0;

  friend bool operator==(const OracleCheck&, const OracleCheck&) = default;
};

struct VerificationReport {
  long long r_max = 0;
  std::optional<Integer> multiplier_override;
  std::vector<ContainmentVerdict> verdicts;
  std::optional<SharpnessWitness> sharpness;
  std::optional<OracleCheck> oracle;
  bool all_passed = false;
};

struct AnalysisReport {
  std::optional<std::string> name;
  std::size_t ambient_rank = 0;
  std::size_t rank = 0;  // rank of the full cone that was analysed
  std::size_t laurent_rank = 0;
  std::optional<IntegerMatrix> embedding;
  ConeClassification classification;
  std::vector<LatticeVector> rays;
  std::vector<LatticeVector> dual_rays;
  std::vector<LatticeVector> hilbert_basis;
  LatticeVector grading;
  Integer D;
  std::vector<FaceMultiplier> per_face_Dprime;
  std::optional<Integer> T;
  std::optional<Integer> U;
  Integer B;
  ClassGroupReport class_group;
  Rational f_signature;
  std::vector<std::size_t> faces_by_dim;
  std::optional<VerificationReport> verification;
};

inline const char* kMultiplierNote =
    "T = max{D, exponent of Cl} and U = lcm{D, #Cl}; both are reported, neither is preferred";

inline Json to_json(const ContainmentVerdict& v) {
  Json j{{"face", v.face_index}, {"r", v.r},          {"multiplier", to_json(v.multiplier)},
         {"exponent", to_json(v.exponent)}, {"label", v.label}, {"passed", v.passed}};
  j["witness"] = v.witness ? to_json(*v.witness) : Json(nullptr);
  j["witness_in_symbolic_power"] = v.witness_in_symbolic_power;
  return j;
}

inline ContainmentVerdict verdict_from_json(const Json& j) {
  ContainmentVerdict v;
  v.face_index = j.at("face").get<std::size_t>();
  v.r = j.at("r").get<long long>();
  v.multiplier = integer_from_json(j.at("multiplier"));
  v.exponent = integer_from_json(j.at("exponent"));
  v.label = j.at("label").get<std::string>();
  v.passed = j.at("passed").get<bool>();
  if (!j.at("witness").is_null()) v.witness = vector_from_json(j.at("witness"));
  v.witness_in_symbolic_power = j.at("witness_in_symbolic_power").get<bool>();
  return v;
}

inline Json to_json(const SharpnessWitness& s) {
  return Json{{"ray_index", s.ray_index},
              {"ray", to_json(s.ray)},
              {"dual_ray", to_json(s.dual_ray)},
              {"B", to_json(s.B)},
              {"in_symbolic_power", s.in_symbolic_power},
              {"in_square", s.in_square},
              {"valid", s.valid()}};
}

inline SharpnessWitness sharpness_from_json(const Json& j) {
  SharpnessWitness s;
  s.ray_index = j.at("ray_index").get<std::size_t>();
  s.ray = vector_from_json(j.at("ray"));
  s.dual_ray = vector_from_json(j.at("dual_ray"));
  s.B = integer_from_json(j.at("B"));
  s.in_symbolic_power = j.at("in_symbolic_power").get<bool>();
  s.in_square = j.at("in_square").get<bool>();
  return s;
}

inline Json to_json(const AnalysisReport& r) {
  Json j;
  j["name"] = r.name ? Json(*r.name) : Json(nullptr);
  j["ambient_rank"] = r.ambient_rank;
  j["rank"] = r.rank;
  j["laurent_rank"] = r.laurent_rank;
  j["embedding"] = r.embedding ? to_json(*r.embedding) : Json(nullptr);
  j["classification"] = Json{{"pointed", r.classification.pointed},
                             {"full", r.classification.full},
                             {"simplicial", r.classification.simplicial},
                             {"smooth", r.classification.smooth}};
  j["rays"] = to_json(r.rays);
  j["dual_rays"] = to_json(r.dual_rays);
  j["hilbert_basis"] = Json{{"elements", to_json(r.hilbert_basis)}, {"size", r.hilbert_basis.size()}};
  j["v_C"] = to_json(r.grading);

  Json faces = Json::array();
  for (const auto& f : r.per_face_Dprime)
    faces.push_back(Json{{"rays", f.rays}, {"dim", f.dim}, {"D_prime", to_json(f.Dprime)}});
  j["multipliers"] = Json{{"D", to_json(r.D)},
                          {"per_face_D_prime", faces},
                          {"T", optional_json(r.T)},
                          {"U", optional_json(r.U)},
                          {"B", to_json(r.B)},
                          {"note", kMultiplierNote}};

  Json orders = Json::array();
  for (const auto& o : r.class_group.ray_orders) orders.push_back(optional_json(o));
  j["class_group"] = Json{{"free_rank", r.class_group.free_rank},
                          {"invariant_factors", to_json(r.class_group.invariant_factors)},
                          {"order", optional_json(r.class_group.order)},
                          {"exponent", optional_json(r.class_group.exponent())},
                          {"ray_orders", orders}};
  j["f_signature"] = to_json(r.f_signature);
  j["faces_by_dim"] = r.faces_by_dim;

  if (r.verification) {
    const auto& v = *r.verification;
    Json verdicts = Json::array();
    for (const auto& x : v.verdicts) verdicts.push_back(to_json(x));
    Json vj{{"r_max", v.r_max},
            {"multiplier_override", optional_json(v.multiplier_override)},
            {"verdicts", verdicts},
            {"sharpness", v.sharpness ? to_json(*v.sharpness) : Json(nullptr)},
            {"all_passed", v.all_passed}};
    if (v.oracle) {
      vj["oracle"] = Json{{"seed", v.oracle->seed},
                          {"search_degree_override", to_json(v.oracle->search_degree_override)},
                          {"checked", v.oracle->checked},
                          {"brute_force_conclusive", v.oracle->brute_force_conclusive},
                          {"disagreements", v.oracle->disagreements}};
    } else {
      vj["oracle"] = nullptr;
    }
    j["verification"] = vj;
  } else {
    j["verification"] = nullptr;
  }
  return j;
}

inline AnalysisReport report_from_json(const Json& j) {
  AnalysisReport r;
  if (!j.at("name").is_null()) r.name = j.at("name").get<std::string>();
  r.ambient_rank = j.at("ambient_rank").get<std::size_t>();
  r.rank = j.at("rank").get<std::size_t>();
  r.laurent_rank = j.at("laurent_rank").get<std::size_t>();
  if (!j.at("embedding").is_null()) r.embedding = matrix_from_json(j.at("embedding"));
  const auto& k = j.at("classification");
  r.classification = {k.at("pointed").get<bool>(), k.at("full").get<bool>(), k.at("simplicial").get<bool>(),
                      k.at("smooth").get<bool>()};
  r.rays = vectors_from_json(j.at("rays"));
  r.dual_rays = vectors_from_json(j.at("dual_rays"));
  r.hilbert_basis = vectors_from_json(j.at("hilbert_basis").at("elements"));
  r.grading = vector_from_json(j.at("v_C"));
  const auto& mj = j.at("multipliers");
  r.D = integer_from_json(mj.at("D"));
  for (const auto& f : mj.at("per_face_D_prime"))
    r.per_face_Dprime.push_back(
        {f.at("rays").get<std::vector<std::size_t>>(), f.at("dim").get<std::size_t>(), integer_from_json(f.at("D_prime"))});
  r.T = optional_integer(mj, "T");
  r.U = optional_integer(mj, "U");
  r.B = integer_from_json(mj.at("B"));
  const auto& cg = j.at("class_group");
  r.class_group.free_rank = cg.at("free_rank").get<std::size_t>();
  r.class_group.invariant_factors = integers_from_json(cg.at("invariant_factors"));
  r.class_group.order = optional_integer(cg, "order");
  for (const auto& o : cg.at("ray_orders"))
    r.class_group.ray_orders.push_back(o.is_null() ? std::nullopt : std::optional<Integer>(integer_from_json(o)));
  r.f_signature = rational_from_json(j.at("f_signature"));
  r.faces_by_dim = j.at("faces_by_dim").get<std::vector<std::size_t>>();
  if (!j.at("verification").is_null()) {
    const auto& vj = j.at("verification");
    VerificationReport v;
    v.r_max = vj.at("r_max").get<long long>();
    v.multiplier_override = optional_integer(vj, "multiplier_override");
    for (const auto& x : vj.at("verdicts")) v.verdicts.push_back(verdict_from_json(x));
    if (!vj.at("sharpness").is_null()) v.sharpness = sharpness_from_json(vj.at("sharpness"));
    if (!vj.at("oracle").is_null()) {
      const auto& o = vj.at("oracle");
      v.oracle = OracleCheck{o.at("seed").get<std::uint64_t>(), integer_from_json(o.at("search_degree_override")),
                             o.at("checked").get<std::size_t>(), o.at("brute_force_conclusive").get<std::size_t>(),
                             o.at("disagreements").get<std::size_t>()};
    }
    v.all_passed = vj.at("all_passed").get<bool>();
    r.verification = std::move(v);
  }
  return r;
}

// Pipeline -----------------------------------------------------------------------

struct AnalyzeOptions {
  std::optional<long long> r_max;  // run verification when set
  std::optional<Integer> multiplier_override;
  std::optional<OracleCheck> oracle;  // seed / search bound; run the oracle cross-check when set
  std::size_t oracle_samples = 20;
};

/// Samples semigroup points of v_C-degree <= 10 and exponents E <= r_max + 1,
/// comparing the symbolic membership test with the saturation search.
inline OracleCheck run_oracle_check(const Cone& c, const SemigroupBasis& basis, const std::vector<FaceDescriptor>& faces,
                                    OracleCheck cfg, std::size_t samples, long long max_e) {
  std::mt19937_64 rng(cfg.seed);
  auto points = enumerate_semigroup(basis, 10);
  std::vector<std::size_t> prime_faces;
  for (std::size_t i = 0; i < faces.size(); ++i)
    if (!faces[i].is_zero_face()) prime_faces.push_back(i);
  for (std::size_t s = 0; s < samples && !points.empty(); ++s) {
    const auto& f = faces[prime_faces[rng() % prime_faces.size()]];
    const auto& ell = points[rng() % points.size()];
    const long long e = 1 + static_cast<long long>(rng() % static_cast<std::uint64_t>(max_e));
    MonomialPrime p = monomial_prime(c, basis, f);
    Integer bound = cfg.search_degree_override > 0 ? cfg.search_degree_override : default_search_degree(p, e);
    const bool fast = symbolic_membership(p, e, ell);
    const auto brute = SaturationSearch(p, bound).find(e, ell);
    ++cfg.checked;
    if (brute.found) ++cfg.brute_force_conclusive;
    if ((brute.found && !fast) || (fast && !brute.found)) ++cfg.disagreements;
  }
  return cfg;
}

/// Full pipeline on a cone file: reduction to a full cone when needed, Hilbert
/// basis, multipliers, class group, F-signature, faces and (optionally)
/// verification.
inline AnalysisReport analyze(const ConeSpecFile& file, const AnalyzeOptions& opts = {}) {
  AnalysisReport r;
  r.name = file.name;
  r.ambient_rank = file.rank;
  Cone input = make_cone(file.rank, file.generators);
  r.classification = classify(input);
  Cone c = input;
  if (!input.is_full()) {
    auto red = reduce_to_full_pointed(file.rank, file.generators);
    c = red.cone;
    r.laurent_rank = red.laurent_rank;
    r.embedding = red.embedding;
  }
  r.rank = c.ambient_rank();
  r.rays = c.rays();
  r.dual_rays = c.dual_rays();
  SemigroupBasis basis = hilbert_basis(c);
  r.hilbert_basis = basis.elements;
  r.grading = basis.grading;
  r.D = compute_D(basis);
  auto faces = enumerate_faces(c);
  r.faces_by_dim.assign(c.ambient_rank() + 1, 0);
  for (const auto& f : faces) {
    ++r.faces_by_dim[f.dim];
    if (f.is_zero_face()) continue;
    r.per_face_Dprime.push_back({to_indices(f.ray_indices), f.dim, compute_Dprime(basis, f)});
  }
  r.class_group = class_group(c);
  r.T = compute_T(basis, r.class_group);
  r.U = compute_U(basis, r.class_group);
  r.B = compute_B_sharp(c);
  r.f_signature = f_signature(c).value;

  if (opts.r_max) {
    VerificationReport v;
    v.r_max = *opts.r_max;
    v.multiplier_override = opts.multiplier_override;
    bool ok = true;
    for (std::size_t i = 0; i < faces.size(); ++i) {
      if (faces[i].is_zero_face()) continue;
      for (auto& verdict : verify_containment(c, basis, faces[i], i, v.r_max, opts.multiplier_override)) {
        ok = ok && verdict.passed;
        v.verdicts.push_back(std::move(verdict));
      }
    }
    if (r.classification.simplicial) {
      v.sharpness = verify_sharpness(c, basis);
      ok = ok && v.sharpness->valid();
    }
    if (opts.oracle) v.oracle = run_oracle_check(c, basis, faces, *opts.oracle, opts.oracle_samples, v.r_max + 1);
    v.all_passed = ok;
    r.verification = std::move(v);
  }
  return r;
}

// Family predictions -------------------------------------------------------------

inline Json to_json(const Prediction& p) {
  Json j = Json::object();
  if (p.hilbert_basis) j["hilbert_basis"] = to_json(*p.hilbert_basis);
  if (p.hilbert_basis_size) j["hilbert_basis_size"] = to_json(*p.hilbert_basis_size);
  if (p.grading) j["v_C"] = to_json(*p.grading);
  if (p.D) j["D"] = to_json(*p.D);
  if (p.T) j["T"] = to_json(*p.T);
  if (p.class_group_invariant_factors) j["class_group_invariant_factors"] = to_json(*p.class_group_invariant_factors);
  if (p.class_group_order) j["class_group_order"] = to_json(*p.class_group_order);
  if (p.f_signature) j["f_signature"] = to_json(*p.f_signature);
  if (p.smooth) j["smooth"] = *p.smooth;
  return j;
}

inline Prediction prediction_from_json(const Json& j) {
  Prediction p;
  if (j.contains("hilbert_basis")) p.hilbert_basis = vectors_from_json(j.at("hilbert_basis"));
  p.hilbert_basis_size = optional_integer(j, "hilbert_basis_size");
  if (j.contains("v_C")) p.grading = vector_from_json(j.at("v_C"));
  p.D = optional_integer(j, "D");
  p.T = optional_integer(j, "T");
  if (j.contains("class_group_invariant_factors"))
    p.class_group_invariant_factors = integers_from_json(j.at("class_group_invariant_factors"));
  p.class_group_order = optional_integer(j, "class_group_order");
  if (j.contains("f_signature")) p.f_signature = rational_from_json(j.at("f_signature"));
  if (j.contains("smooth")) p.smooth = j.at("smooth").get<bool>();
  return p;
}

/// One line per predicted field that disagrees with the report. Empty = match.
inline std::vector<std::string> diff_predictions(const Prediction& p, const AnalysisReport& r) {
  std::vector<std::string> out;
  auto mismatch = [&](const std::string& field, const Json& want, const Json& got) {
    if (want != got) out.push_back(field + ": predicted " + want.dump() + ", computed " + got.dump());
  };
  if (p.hilbert_basis) {
    auto got = r.hilbert_basis;
    std::sort(got.begin(), got.end());
    auto want = *p.hilbert_basis;
    std::sort(want.begin(), want.end());
    mismatch("hilbert_basis", to_json(want), to_json(got));
  }
  if (p.hilbert_basis_size) mismatch("hilbert_basis_size", to_json(*p.hilbert_basis_size), to_json(Integer(r.hilbert_basis.size())));
  if (p.grading) mismatch("v_C", to_json(*p.grading), to_json(r.grading));
  if (p.D) mismatch("D", to_json(*p.D), to_json(r.D));
  if (p.T) mismatch("T", to_json(*p.T), optional_json(r.T));
  if (p.class_group_invariant_factors)
    mismatch("class_group_invariant_factors", to_json(*p.class_group_invariant_factors),
             to_json(r.class_group.invariant_factors));
  if (p.class_group_order) mismatch("class_group_order", to_json(*p.class_group_order), optional_json(r.class_group.order));
  if (p.f_signature) mismatch("f_signature", to_json(*p.f_signature), to_json(r.f_signature));
  if (p.smooth) mismatch("smooth", Json(*p.smooth), Json(r.classification.smooth));
  return out;
}

inline ConeSpecFile cone_file_of(const FamilyInstance& inst) {
  return ConeSpecFile{inst.cone.ambient_rank(), inst.cone.generators(), inst.spec.name()};
}

}  // namespace toric
