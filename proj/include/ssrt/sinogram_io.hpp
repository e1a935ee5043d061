#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ssrt/transforms.hpp"

namespace ssrt {

// Text form: "theta_deg,<angles>" line, "rho,<offsets>" line, then one line
// per rho bin holding that row's values for every angle. Numbers use the
// shortest repr that round-trips a double.
std::string sinogram_to_csv(const Sinogram& sino);

// Binary form, all integers and floats little-endian:
//   "SSRT1"  magic, 5 bytes
//   u32 n_rho, u32 n_theta, u32 kind (0 radon, 1 ssrt)
//   f64 rho_step, f64 theta_step (radians), f64 sigma (0 for radon)
//   f64 values[n_rho * n_theta], row-major by rho
std::vector<std::uint8_t> sinogram_to_binary(const Sinogram& sino);
Sinogram sinogram_from_binary(const std::vector<std::uint8_t>& bytes);

}  // namespace ssrt
