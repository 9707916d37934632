#include "msfuzzy/catalog.hpp"

#include <array>
#include <sstream>

#include "msfuzzy/errors.hpp"

namespace msfuzzy {

namespace {

TransitionMatrix two_state_transition() {
  Eigen::MatrixXd p(2, 2);
  p << 0.9, 0.1,
       0.2, 0.8;
  return TransitionMatrix(p);
}

TransitionMatrix three_state_transition() {
  Eigen::MatrixXd p(3, 3);
  p << 0.90, 0.07, 0.03,
       0.15, 0.80, 0.05,
       0.10, 0.20, 0.70;
  return TransitionMatrix(p);
}

std::vector<DGPCatalogEntry> build_catalog() {
  std::vector<DGPCatalogEntry> entries;
  entries.reserve(32);

  const std::array<double, 8> deltas2 = {1, 2, 3, 4, 1, 2, 3, 4};
  const std::array<double, 8> sigmas = {0.5,  0.5,  0.5,  0.5,
                                        0.25, 0.25, 0.25, 0.25};
  const std::vector<double> ar{0.7};

  for (bool with_ar : {false, true}) {
    for (int i = 0; i < 8; ++i) {
      const std::string label =
          std::string("MS2") + (with_ar ? "AR" : "") + "--" + std::to_string(i + 1);
      entries.push_back(
          {label, MSModelSpec({0.0, deltas2[static_cast<std::size_t>(i)]},
                              with_ar ? ar : std::vector<double>{},
                              sigmas[static_cast<std::size_t>(i)],
                              two_state_transition())});
    }
  }
  for (bool with_ar : {false, true}) {
    for (int i = 0; i < 8; ++i) {
      const double d = deltas2[static_cast<std::size_t>(i)];
      const std::string label =
          std::string("MS3") + (with_ar ? "AR" : "") + "--" + std::to_string(i + 1);
      entries.push_back(
          {label, MSModelSpec({0.0, d, 2.0 * d},
                              with_ar ? ar : std::vector<double>{},
                              sigmas[static_cast<std::size_t>(i)],
                              three_state_transition())});
    }
  }
  return entries;
}

std::string normalize_label(const std::string& label) {
  // Canonical labels use a double dash; accept the single-dash spelling too.
  const auto pos = label.find("--");
  if (pos != std::string::npos) return label;
  const auto dash = label.rfind('-');
  if (dash == std::string::npos) return label;
  return label.substr(0, dash) + "--" + label.substr(dash + 1);
}

} // namespace

const std::vector<DGPCatalogEntry>& dgp_catalog() {
  static const std::vector<DGPCatalogEntry> catalog = build_catalog();
  return catalog;
}

const DGPCatalogEntry& dgp_by_label(const std::string& label) {
  const std::string wanted = normalize_label(label);
  for (const auto& entry : dgp_catalog()) {
    if (entry.label == wanted) return entry;
  }
  throw UnknownLabel("unknown DGP label: " + label);
}

std::string dgp_catalog_csv() {
  std::ostringstream out;
  out << "label,k,p,sigma,phi,mu1,mu2,mu3,"
         "p11,p12,p13,p21,p22,p23,p31,p32,p33\n";
  for (const auto& entry : dgp_catalog()) {
    const auto& spec = entry.spec;
    const int k = spec.states();
    out << entry.label << ',' << k << ',' << spec.ar_order() << ','
        << spec.sigma() << ',';
    if (spec.ar_order() > 0) out << spec.ar_coeffs()[0];
    for (int j = 0; j < 3; ++j) {
      out << ',';
      if (j < k) out << spec.means()[static_cast<std::size_t>(j)];
    }
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        out << ',';
        if (i < k && j < k) out << spec.transition()(i, j);
      }
    }
    out << '\n';
  }
  return out.str();
}

} // namespace msfuzzy
