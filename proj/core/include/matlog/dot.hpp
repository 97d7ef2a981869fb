#pragma once

#include <string>

#include "matlog/kripke.hpp"
#include "matlog/lindenbaum.hpp"

namespace matlog {

/// Hasse diagram of a finite algebra under x ≤ y ⟺ x∧y = x, unit on top;
/// labels override element names when supplied.
std::string hasse_dot(const finite_algebra& a,
                      const std::vector<std::string>& labels = {});

std::string hasse_dot(const quotient_algebra& q);
std::string hasse_dot(const rn_lattice_result& lattice);

/// Pointed countermodel: worlds with their cover edges, the extensions per
/// variable, and the refuting world marked.
std::string model_dot(const kripke_model& m, int marked_world = -1);

}  // namespace matlog
