#pragma once

// Command implementations behind the `toric` executable. Each returns the
// process exit code and writes its report to `out`, diagnostics to `err`.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "toric/errors.hpp"
#include "toric/families.hpp"
#include "toric/report.hpp"

namespace toric::cli {

enum ExitCode : int { ok = 0, verification_failed = 1, input_error = 2, internal_error = 3 };

enum class Format { text, json, pretty };

struct AnalyzeArgs {
  std::string path;
  Format format = Format::text;
};

struct VerifyArgs {
  std::string path;
  long long r_max = 3;
  std::optional<std::string> multiplier;
  std::optional<std::string> search_degree;
  std::optional<std::uint64_t> seed;  // enables the oracle cross-check
  std::size_t samples = 20;
  Format format = Format::text;
};

struct FamilyArgs {
  std::string kind;
  std::vector<long long> E;
  std::optional<long long> n;
  std::vector<long long> m;
  std::optional<std::string> out;
  bool check = false;
  Format format = Format::text;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

inline std::string dump(const Json& j, Format f) {
  return f == Format::pretty ? j.dump(2) : j.dump();
}

inline std::string join(const std::vector<LatticeVector>& vs) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? " " : "") + vs[i].str();
  return s;
}

inline std::string opt_str(const std::optional<Integer>& x) {
  return x ? x->str() : std::string("infinite");
}

inline void print_text(const AnalysisReport& r, std::ostream& out) {
  if (r.name) out << "name: " << *r.name << "\n";
  out << "ambient rank: " << r.ambient_rank << "\n";
  if (r.embedding) out << "reduced to rank " << r.rank << " (Laurent factor of rank " << r.laurent_rank << ")\n";
  const auto& k = r.classification;
  out << "pointed: " << k.pointed << "  full: " << k.full << "  simplicial: " << k.simplicial
      << "  smooth: " << k.smooth << "\n";
  out << "rays: " << join(r.rays) << "\n";
  out << "dual rays: " << join(r.dual_rays) << "\n";
  out << "hilbert basis (" << r.hilbert_basis.size() << "): " << join(r.hilbert_basis) << "\n";
  out << "v_C: " << r.grading << "\n";
  out << "D = " << r.D << "  B = " << r.B << "  T = " << opt_str(r.T) << "  U = " << opt_str(r.U) << "\n";
  out << "  (" << kMultiplierNote << ")\n";
  for (const auto& f : r.per_face_Dprime) {
    out << "  face {";
    for (std::size_t i = 0; i < f.rays.size(); ++i) out << (i ? "," : "") << f.rays[i];
    out << "} dim " << f.dim << ": D' = " << f.Dprime << "\n";
  }
  out << "class group: Z^" << r.class_group.free_rank;
  for (const auto& d : r.class_group.invariant_factors) out << " + Z/" << d;
  out << "  order " << opt_str(r.class_group.order) << "\n";
  out << "f-signature: " << r.f_signature << "\n";
  out << "faces by dimension:";
  for (auto n : r.faces_by_dim) out << " " << n;
  out << "\n";
  if (r.verification) {
    const auto& v = *r.verification;
    std::size_t failed = 0;
    for (const auto& x : v.verdicts) {
      if (x.passed) continue;
      ++failed;
      out << "FAIL face " << x.face_index << " r=" << x.r << " " << x.label << "=" << x.multiplier
          << ": I_F(" << x.exponent << ") not in P^" << x.r << ", witness " << *x.witness
          << (x.witness_in_symbolic_power ? " (in the symbolic power)" : "") << "\n";
    }
    out << "containment checks: " << v.verdicts.size() - failed << "/" << v.verdicts.size() << " passed (r <= "
        << v.r_max << ")\n";
    if (v.sharpness) {
      const auto& s = *v.sharpness;
      out << "sharpness: ray " << s.ray << ", w = " << s.dual_ray << ", B = " << s.B
          << (s.valid() ? ": w in P^(B), not in P^2" : ": NOT a witness") << "\n";
    }
    if (v.oracle)
      out << "oracle cross-check (seed " << v.oracle->seed << "): " << v.oracle->checked << " samples, "
          << v.oracle->disagreements << " disagreements\n";
    out << (v.all_passed ? "verification passed" : "verification FAILED") << "\n";
  }
}

inline void emit(const AnalysisReport& r, Format f, std::ostream& out) {
  if (f == Format::text)
    print_text(r, out);
  else
    out << dump(to_json(r), f) << "\n";
}

/// Maps library exceptions to exit codes around a command body.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << "\n";
    return internal_error;
  } catch (const NotPointedError& e) {
    err << "error: " << e.what() << " (lineality direction " << e.lineality() << ")\n";
    return input_error;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  }
}

inline Integer parse_integer_arg(const std::string& s, const char* flag) {
  try {
    return integer_from_json(Json(s));
  } catch (const InputError&) {
    throw InputError(std::string(flag) + ": not an integer: " + s);
  }
}

inline int run_analyze(const AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    AnalysisReport r = analyze(parse_cone_file(read_file(a.path), a.path));
    emit(r, a.format, out);
    return static_cast<int>(ok);
  });
}

inline int run_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (a.r_max < 1) throw InputError("--rmax must be at least 1");
    AnalyzeOptions opts;
    opts.r_max = a.r_max;
    if (a.multiplier) {
      opts.multiplier_override = parse_integer_arg(*a.multiplier, "--multiplier");
      if (*opts.multiplier_override < 1) throw InputError("--multiplier must be positive");
    }
    if (a.seed || a.search_degree) {
      OracleCheck cfg;
      cfg.seed = a.seed.value_or(0);
      if (a.search_degree) {
        cfg.search_degree_override = parse_integer_arg(*a.search_degree, "--search-degree");
        if (cfg.search_degree_override < 1) throw InputError("--search-degree must be positive");
      }
      opts.oracle = cfg;
      opts.oracle_samples = a.samples;
    }
    AnalysisReport r = analyze(parse_cone_file(read_file(a.path), a.path), opts);
    emit(r, a.format, out);
    const auto& v = *r.verification;
    if (v.oracle && v.oracle->disagreements > 0) {
      err << "internal error: symbolic membership disagrees with the saturation search\n";
      return static_cast<int>(internal_error);
    }
    return static_cast<int>(v.all_passed ? ok : verification_failed);
  });
}

inline FamilyInstance build_family(const FamilyArgs& a) {
  auto single = [&](const char* what) {
    if (a.E.size() != 1) throw InputError(std::string(what) + ": --E takes one value");
    if (!a.n) throw InputError(std::string(what) + ": --n is required");
    return std::pair{a.E[0], *a.n};
  };
  if (a.kind == "hypersurface") {
    auto [e, n] = single("hypersurface");
    return hypersurface_cone(n, e);
  }
  if (a.kind == "veronese") {
    auto [e, n] = single("veronese");
    return veronese_cone(e, n);
  }
  if (a.kind == "segre-veronese") {
    if (a.m.empty()) throw InputError("segre-veronese: --m is required");
    return segre_veronese_cone(a.E, a.m);
  }
  throw InputError("unknown family '" + a.kind + "' (hypersurface, veronese, segre-veronese)");
}

inline int run_family(const FamilyArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    FamilyInstance inst = build_family(a);
    ConeSpecFile file = cone_file_of(inst);
    const Json cone_json = to_json(file);
    const Json pred_json = to_json(inst.spec.predicted);
    const Format f = a.format == Format::text ? Format::pretty : a.format;
    if (a.out) {
      write_file(*a.out, dump(cone_json, f) + "\n");
      write_file(*a.out + ".predictions.json", dump(pred_json, f) + "\n");
    }
    if (!a.check) {
      if (!a.out) out << dump(Json{{"cone", cone_json}, {"predictions", pred_json}}, f) << "\n";
      return static_cast<int>(ok);
    }
    AnalysisReport r = analyze(file);
    auto diffs = diff_predictions(inst.spec.predicted, r);
    if (a.format == Format::text) {
      out << inst.spec.name() << ": " << (diffs.empty() ? "all predictions match" : "predictions differ") << "\n";
      for (const auto& d : diffs) out << "  " << d << "\n";
    } else {
      out << dump(Json{{"family", inst.spec.name()}, {"match", diffs.empty()}, {"differences", diffs}}, a.format)
          << "\n";
    }
    return static_cast<int>(diffs.empty() ? ok : verification_failed);
  });
}

}  // namespace toric::cli
