#pragma once

// Text input for systems (JSON) and CSV output for solutions, traces and
// experiment reports. Floats are written with 17 significant digits.

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "certhom/experiments.hpp"
#include "certhom/poly_core.hpp"
#include "certhom/start_systems.hpp"
#include "certhom/tracker.hpp"

namespace certhom {

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A parsed system in homogeneous form; `affine` records whether the input
/// used n exponents per term and was homogenized.
struct LoadedSystem {
  PolySystem system;
  bool affine = false;
};

/// Reads {"degrees": [d_1..d_n], "terms": [[{"exponents": [...], "re": x,
/// "im": y}, ...] per equation]}. Exponent lists of length n + 1 are
/// homogeneous, of length n affine (total degree at most d_i). The choice
/// must be the same for every term. Repeated monomials are summed. An
/// optional "variables" list of names is checked against the exponent length.
inline LoadedSystem parse_system(const nlohmann::json& doc) {
  try {
    if (!doc.is_object() || !doc.contains("degrees") || !doc.contains("terms")) {
      throw ParseError("system needs \"degrees\" and \"terms\"");
    }
    const auto degrees = doc.at("degrees").get<std::vector<int>>();
    const auto& terms = doc.at("terms");
    if (degrees.empty()) throw ParseError("empty degree list");
    if (!terms.is_array() || terms.size() != degrees.size()) {
      throw ParseError("need one term list per equation");
    }
    const int n = static_cast<int>(degrees.size());
    const DegreeVector dv(degrees);

    int layout = 0;  // 0 unknown, n + 1 homogeneous, n affine
    for (const auto& equation : terms) {
      for (const auto& term : equation) {
        const auto size = static_cast<int>(term.at("exponents").size());
        if (size != n && size != n + 1) throw ParseError("exponent list has the wrong length");
        if (layout != 0 && layout != size) throw ParseError("mixed affine and homogeneous terms");
        layout = size;
      }
    }

    if (doc.contains("variables") && layout != 0 && static_cast<int>(doc.at("variables").size()) != layout) {
      throw ParseError("variable list does not match the exponent length");
    }

    auto coefficient = [](const nlohmann::json& term) {
      const double re = term.value("re", 0.0);
      const double im = term.value("im", 0.0);
      return Complex(re, im);
    };

    if (layout == n) {
      AffineSystem f(dv);
      for (int i = 0; i < n; ++i) {
        for (const auto& term : terms[static_cast<std::size_t>(i)]) {
          const auto alpha = term.at("exponents").get<std::vector<int>>();
          int sum = 0;
          for (int a : alpha) {
            if (a < 0) throw ParseError("negative exponent");
            sum += a;
          }
          if (sum > degrees[static_cast<std::size_t>(i)]) throw ParseError("term degree exceeds equation degree");
          f.coeff(i, alpha) += coefficient(term);
        }
      }
      return {homogenize(f), true};
    }

    PolySystem h(dv);
    for (int i = 0; i < n; ++i) {
      for (const auto& term : terms[static_cast<std::size_t>(i)]) {
        const auto alpha = term.at("exponents").get<std::vector<int>>();
        int sum = 0;
        for (int a : alpha) {
          if (a < 0) throw ParseError("negative exponent");
          sum += a;
        }
        if (sum != degrees[static_cast<std::size_t>(i)]) throw ParseError("homogeneous term of the wrong degree");
        h.coeff(i, alpha) += coefficient(term);
      }
    }
    return {std::move(h), false};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed system: ") + e.what());
  }
}

inline LoadedSystem parse_system(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return parse_system(doc);
}

inline LoadedSystem load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_system(in);
}

/// Inverse of parse_system for homogeneous systems; zero coefficients are skipped.
inline nlohmann::json to_json(const PolySystem& h) {
  nlohmann::json doc;
  doc["degrees"] = h.degrees().values();
  doc["terms"] = nlohmann::json::array();
  for (int i = 0; i < h.num_equations(); ++i) {
    nlohmann::json eq = nlohmann::json::array();
    const auto& basis = h.basis(i);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const Complex c = h.coeffs(i)(static_cast<Eigen::Index>(k));
      if (c == Complex(0.0)) continue;
      const auto alpha = basis.exponents(k);
      eq.push_back({{"exponents", std::vector<int>(alpha.begin(), alpha.end())}, {"re", c.real()}, {"im", c.imag()}});
    }
    doc["terms"].push_back(std::move(eq));
  }
  return doc;
}

// ---------------------------------------------------------------------------
// CSV

inline std::string format_double(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

inline void write_coordinate_header(std::ostream& out, Eigen::Index size) {
  for (Eigen::Index j = 0; j < size; ++j) out << ",z" << j << "_re,z" << j << "_im";
}

inline void write_coordinates(std::ostream& out, const CVector& z) {
  for (Eigen::Index j = 0; j < z.size(); ++j) out << ',' << format_double(z(j).real()) << ',' << format_double(z(j).imag());
}

/// Columns: step,s,t,phi,chi1,chi2[,accepted],z0_re,z0_im,...
/// One row per recorded step with the iterate after it; the last row holds
/// the endpoint. Heuristic traces have NaN phi/chi columns.
inline void write_trace_csv(std::ostream& out, const TrackResult& result, bool with_accepted) {
  const Eigen::Index size = result.endpoint.size();
  out << "step,s,t,phi,chi1,chi2";
  if (with_accepted) out << ",accepted";
  write_coordinate_header(out, size);
  out << '\n';
  for (std::size_t k = 0; k < result.trace.size(); ++k) {
    const StepRecord& r = result.trace[k];
    out << k + 1 << ',' << format_double(r.s) << ',' << format_double(r.t) << ',' << format_double(r.phi) << ','
        << format_double(r.chi1) << ',' << format_double(r.chi2);
    if (with_accepted) out << ',' << (r.accepted ? 1 : 0);
    write_coordinates(out, r.point.size() == size ? r.point : result.endpoint.coords());
    out << '\n';
  }
}

/// Columns: path,status,steps,refined,certified,mu,distance,z0_re,z0_im,...
/// with z the refined root (or raw endpoint when refinement failed).
inline void write_solutions_csv(std::ostream& out, const std::vector<PathSolution>& paths) {
  if (paths.empty()) {
    out << "path,status,steps,refined,certified,mu,distance\n";
    return;
  }
  out << "path,status,steps,refined,certified,mu,distance";
  write_coordinate_header(out, paths.front().root.size());
  out << '\n';
  for (const auto& p : paths) {
    out << p.start_index << ',' << to_string(p.track.status) << ',' << p.track.num_steps << ',' << (p.refined ? 1 : 0)
        << ',' << (p.refined && p.certificate.certified ? 1 : 0) << ','
        << format_double(p.refined ? p.certificate.zero.mu : std::numeric_limits<double>::quiet_NaN()) << ','
        << format_double(p.refined ? p.certificate.distance : std::numeric_limits<double>::quiet_NaN());
    write_coordinates(out, p.root.coords());
    out << '\n';
  }
}

/// Columns: trial,path,kind,steps,status.
inline void write_paths_csv(std::ostream& out, const std::vector<const ExperimentReport*>& reports) {
  out << "trial,path,kind,steps,status\n";
  for (const auto* report : reports) {
    for (const auto& p : report->per_path) {
      out << p.trial << ',' << p.path << ',' << p.kind << ',' << p.steps << ',' << to_string(p.status) << '\n';
    }
  }
}

/// Columns: label,kind,paths,failures,mean_steps,variance_steps.
inline void write_summary_header(std::ostream& out) { out << "label,kind,paths,failures,mean_steps,variance_steps\n"; }

inline void write_summary_row(std::ostream& out, const std::string& label, const ExperimentReport& r) {
  out << label << ',' << r.kind << ',' << r.per_path.size() << ',' << r.failures << ',' << format_double(r.mean_steps)
      << ',' << format_double(r.variance_steps) << '\n';
}

/// Columns: n,kind,trials,failures,mean_steps,variance_steps,bound.
inline void write_conjecture_csv(std::ostream& out, const ConjectureReport& report) {
  out << "n,kind,trials,failures,mean_steps,variance_steps,bound\n";
  for (const ExperimentReport* r : {&report.good, &report.total, &report.random}) {
    out << report.degrees.num_equations() << ',' << r->kind << ',' << r->per_path.size() << ',' << r->failures << ','
        << format_double(r->mean_steps) << ',' << format_double(r->variance_steps) << ','
        << format_double(report.bound) << '\n';
  }
}

/// Columns: root,hits,z0_re,z0_im,... (one row per reference root).
inline void write_entropy_csv(std::ostream& out, const EntropyReport& report) {
  out << "root,hits";
  if (!report.references.empty()) write_coordinate_header(out, report.references.front().size());
  out << '\n';
  for (std::size_t r = 0; r < report.references.size(); ++r) {
    out << r << ',' << report.root_hits[r];
    write_coordinates(out, report.references[r].coords());
    out << '\n';
  }
}

}  // namespace certhom
