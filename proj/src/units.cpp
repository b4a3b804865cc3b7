#include "yeastlink/units.hpp"

#include <stdexcept>

#include "yeastlink/errors.hpp"

namespace yeastlink {

Concentration make_concentration(double value, Unit unit) {
  if (!(value >= 0.0))
    throw std::domain_error("concentration must be non-negative, got " +
                            std::to_string(value));
  return Concentration{value, unit};
}

double unit_factor_to_nM(Unit unit) {
  switch (unit) {
    case Unit::nM: return 1.0;
    case Unit::uM: return 1.0e3;
    case Unit::M: return 1.0e9;
  }
  throw config_error("unknown concentration unit");
}

Concentration convert(const Concentration& c, Unit target) {
  if (c.unit == target) return c;
  const double in_nM = c.value * unit_factor_to_nM(c.unit);
  return Concentration{in_nM / unit_factor_to_nM(target), target};
}

double to_nM(const Concentration& c) {
  return c.value * unit_factor_to_nM(c.unit);
}

Unit parse_unit(const std::string& name) {
  if (name == "nM") return Unit::nM;
  if (name == "uM" || name == "µM" || name == "μM") return Unit::uM;
  if (name == "M") return Unit::M;
  throw config_error("unknown concentration unit '" + name + "'");
}

std::string unit_name(Unit unit) {
  switch (unit) {
    case Unit::nM: return "nM";
    case Unit::uM: return "uM";
    case Unit::M: return "M";
  }
  return "?";
}

}  // namespace yeastlink
