#ifndef MAEE_UNITS_HPP
#define MAEE_UNITS_HPP

#include <cmath>

namespace maee {

template <typename Scalar>
Scalar dbm_to_watt(Scalar dbm) {
  using std::pow;
  return pow(Scalar(10), (dbm - Scalar(30)) / Scalar(10));
}

template <typename Scalar>
Scalar watt_to_dbm(Scalar watt) {
  using std::log10;
  return Scalar(10) * log10(watt) + Scalar(30);
}

template <typename Scalar>
Scalar db_to_linear(Scalar db) {
  using std::pow;
  return pow(Scalar(10), db / Scalar(10));
}

template <typename Scalar>
Scalar linear_to_db(Scalar ratio) {
  using std::log10;
  return Scalar(10) * log10(ratio);
}

}  // namespace maee

#endif  // MAEE_UNITS_HPP
