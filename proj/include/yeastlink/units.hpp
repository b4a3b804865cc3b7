#pragma once

#include <string>

namespace yeastlink {

// Concentration units used across the toolkit. Internally everything runs in
// nM and minutes; the channel code works in SI (m, s, mol/m^3) and converts
// at the interface (see harness/units_bridge.hpp).
enum class Unit { nM, uM, M };

struct Concentration {
  double value = 0.0;
  Unit unit = Unit::nM;
};

// Throws std::domain_error for negative values.
Concentration make_concentration(double value, Unit unit);

// Exact power-of-ten scale factor from `unit` to nM.
double unit_factor_to_nM(Unit unit);

// Exact conversion; round trips are identities to machine precision.
Concentration convert(const Concentration& c, Unit target);

double to_nM(const Concentration& c);

// Parses "nM", "uM" (or the UTF-8 micro sign) and "M"; throws config_error.
Unit parse_unit(const std::string& name);
std::string unit_name(Unit unit);

}  // namespace yeastlink
