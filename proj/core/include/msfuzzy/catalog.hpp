#pragma once

#include <string>
#include <vector>

#include "msfuzzy/types.hpp"

namespace msfuzzy {

// One entry of the benchmark model catalog used by the simulation harness.
struct DGPCatalogEntry {
  std::string label;
  MSModelSpec spec;
};

// The 32 benchmark data-generating processes: four families (2- and 3-state,
// with and without an AR(1) term), eight parameterizations each. Labels look
// like "MS2--3" or "MS3AR--8".
const std::vector<DGPCatalogEntry>& dgp_catalog();

// Catalog lookup; accepts the canonical label as well as the single-dash
// spelling ("MS2-3"). Throws UnknownLabel.
const DGPCatalogEntry& dgp_by_label(const std::string& label);

// Serializes the catalog as CSV (label, k, p, means, phi, sigma, transition
// rows), one record per DGP.
std::string dgp_catalog_csv();

} // namespace msfuzzy
