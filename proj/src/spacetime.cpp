#include "wavemaps/spacetime.hpp"

namespace wavemaps {

template struct LorentzBoostT<double>;
template LorentzBoostT<double> boost_matrix<double>(double);
template SpacetimePointT<double> apply_boost<double>(const LorentzBoostT<double>&,
                                                     const SpacetimePointT<double>&);
template DiskSpecT<double> disk_at<double>(const ConeSpecT<double>&, double);

}  // namespace wavemaps
